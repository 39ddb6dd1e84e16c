"""Units x journals count matrix and the unit-to-unit similarity matrices."""
import logging
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError

log = logging.getLogger(__name__)

KINDS = ("cosine", "cooccurrence")


@dataclass(frozen=True)
class PortfolioMatrix:
    """Record counts indexed ``(journal, unit)``.

    The journal axis always spans the whole base map, in base-map order, so
    ledgers from separate sessions stay conformable. ``counts`` is int64 with
    shape ``(len(journal_ids), len(unit_labels))``.
    """

    journal_ids: np.ndarray
    unit_labels: tuple
    counts: np.ndarray

    @classmethod
    def empty(cls, journal_ids):
        ids = np.array(journal_ids, dtype=np.int64)
        return cls(ids, (), np.zeros((ids.size, 0), dtype=np.int64))

    @classmethod
    def for_basemap(cls, basemap):
        return cls.empty(basemap.ids)

    def column(self, label):
        return self.counts[:, self.unit_labels.index(label)]

    def __eq__(self, other):
        if not isinstance(other, PortfolioMatrix):
            return NotImplemented
        return (self.unit_labels == other.unit_labels
                and np.array_equal(self.journal_ids, other.journal_ids)
                and np.array_equal(self.counts, other.counts))

    __hash__ = None


@dataclass(frozen=True)
class SimilarityMatrix:
    unit_labels: tuple
    values: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        n = len(self.unit_labels)
        if self.values.shape != (n, n):
            raise ValueError(f"values must be {n}x{n}, got {self.values.shape}")

    def value(self, a, b):
        return self.values[self.unit_labels.index(a), self.unit_labels.index(b)]


def upsert_unit(matrix, dist):
    """New matrix with ``dist``'s counts as the column for its unit label."""
    row = {int(jid): r for r, jid in enumerate(matrix.journal_ids)}
    col = np.zeros(matrix.journal_ids.size, dtype=np.int64)
    for jid, count in dist.entries.items():
        try:
            col[row[jid]] = count
        except KeyError:
            raise DomainError(
                f"journal {jid} of unit {dist.unit_label!r} is not on the matrix's journal axis "
                "(distribution matched against a different base map?)"
            ) from None
    labels = matrix.unit_labels
    if dist.unit_label in labels:
        counts = matrix.counts.copy()
        counts[:, labels.index(dist.unit_label)] = col
    else:
        labels = labels + (dist.unit_label,)
        counts = np.column_stack([matrix.counts, col]) if matrix.counts.size else col[:, None]
    counts.setflags(write=False)
    return PortfolioMatrix(matrix.journal_ids, labels, counts)


def _require_units(matrix):
    if len(matrix.unit_labels) < 2:
        raise DomainError(f"need at least 2 units to compare, have {len(matrix.unit_labels)}")


def cooccurrence_matrix(matrix):
    """Inner products of the unit count columns (one-mode projection M^T M)."""
    _require_units(matrix)
    m = matrix.counts.astype(np.int64)
    return SimilarityMatrix(matrix.unit_labels, m.T @ m, "cooccurrence")


def cosine_matrix(matrix):
    """Cosine of the angle between unit count vectors.

    Units with an all-zero column get 0 everywhere, including the diagonal.
    """
    _require_units(matrix)
    m = matrix.counts.astype(np.float64)
    dots = m.T @ m
    sq_norms = np.diag(dots).copy()
    zero = sq_norms == 0.0
    if zero.any():
        log.warning("units with no matched records get cosine 0: %s",
                    ", ".join(lab for lab, z in zip(matrix.unit_labels, zero) if z))
    safe = np.where(zero, 1.0, sq_norms)
    # one sqrt of the product of squared norms: identical integer columns give exactly 1
    values = dots / np.sqrt(np.outer(safe, safe))
    values = np.clip(values, 0.0, 1.0)
    # mirror the upper triangle so the result is exactly symmetric
    upper = np.triu(values, 1)
    values = upper + upper.T
    np.fill_diagonal(values, np.where(zero, 0.0, 1.0))
    values[zero, :] = 0.0
    values[:, zero] = 0.0
    return SimilarityMatrix(matrix.unit_labels, values, "cosine")


# -- matrix.tsv ledger -------------------------------------------------------------

def write_matrix_ledger(matrix, sink):
    sink.write("\t".join(("journal_id",) + tuple(matrix.unit_labels)) + "\n")
    for jid, row in zip(matrix.journal_ids, matrix.counts):
        sink.write("\t".join([str(int(jid))] + [str(int(v)) for v in row]) + "\n")


def read_matrix_ledger(source, journal_ids=None):
    """Parse a matrix ledger. When ``journal_ids`` is given the journal axis must match it exactly."""
    header = None
    ids, rows = [], []
    for lineno, line in enumerate(source, start=1):
        line = line.rstrip("\r\n")
        if header is None:
            header = line.split("\t")
            if not header or header[0] != "journal_id":
                raise ParseError("not a matrix ledger (first header cell must be 'journal_id')", lineno)
            if len(set(header[1:])) != len(header) - 1:
                raise ParseError("duplicate unit labels in header", lineno)
            continue
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != len(header):
            raise ParseError(f"expected {len(header)} columns, got {len(fields)}", lineno)
        try:
            ids.append(int(fields[0]))
            rows.append([int(v) for v in fields[1:]])
        except ValueError:
            raise ParseError("non-integer cell", lineno) from None
        if any(v < 0 for v in rows[-1]):
            raise ParseError("negative count", lineno)
    if header is None:
        raise ParseError("empty matrix ledger")
    ids = np.array(ids, dtype=np.int64)
    if journal_ids is not None and not np.array_equal(ids, np.asarray(journal_ids, dtype=np.int64)):
        raise ParseError("matrix ledger journal axis does not match the base map")
    counts = np.array(rows, dtype=np.int64).reshape(len(ids), len(header) - 1)
    counts.setflags(write=False)
    return PortfolioMatrix(ids, tuple(header[1:]), counts)
