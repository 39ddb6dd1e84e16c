"""Rao-Stirling diversity and its true-diversity transform."""
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, ParseError

LEDGER_HEADER = ("unit", "delta", "true_diversity", "n_journals", "matched_records", "total_records", "coverage")


@dataclass(frozen=True)
class DiversityReport:
    unit_label: str
    delta: float
    true_diversity: float
    n_journals: int
    matched_records: int
    coverage: float
    total_records: int = 0


def rao_stirling(dist, basemap):
    """Rao-Stirling diversity of a portfolio over the base map.

    Sums ``p_i * p_j * d_ij`` over all ordered pairs of matched journals,
    where ``d_ij`` is the map distance divided by the map diameter. Only the
    journals the portfolio touches are visited, so the cost is O(k^2) in the
    number of matched journals rather than in the size of the map.

    Parameters
    ----------
    dist : PortfolioDistribution
        Must contain at least one matched journal.
    basemap : BaseMap
        Must have a positive diameter.

    Returns
    -------
    float
        Value in [0, 1).
    """
    if not dist.entries:
        raise DomainError(f"unit {dist.unit_label!r} has no matched journals; diversity is undefined")
    basemap.require_nondegenerate()
    ids = sorted(dist.proportions)
    xs, ys = basemap.coordinates(ids)
    p = np.array([dist.proportions[i] for i in ids], dtype=np.float64)
    if p.size == 1:
        return 0.0
    return kernels.rao_pair_sum(xs, ys, p, basemap.diameter)


def true_diversity(delta):
    """``1 / (1 - delta)``; defined for 0 <= delta < 1."""
    if not (0.0 <= delta < 1.0):
        raise DomainError(f"true diversity needs 0 <= delta < 1, got {delta!r}")
    return 1.0 / (1.0 - delta)


def delta_from_true_diversity(d2s):
    """Inverse of :func:`true_diversity`."""
    if not (d2s >= 1.0 and math.isfinite(d2s)):
        raise DomainError(f"true diversity must be a finite value >= 1, got {d2s!r}")
    return 1.0 - 1.0 / d2s


def diversity_report(dist, basemap):
    delta = rao_stirling(dist, basemap)
    return DiversityReport(
        unit_label=dist.unit_label,
        delta=delta,
        true_diversity=true_diversity(delta),
        n_journals=dist.n_journals,
        matched_records=dist.matched_records,
        coverage=dist.coverage,
        total_records=dist.total_records,
    )


# -- rao.tsv ledger ------------------------------------------------------------

def write_diversity_ledger(reports, sink):
    sink.write("\t".join(LEDGER_HEADER) + "\n")
    for r in reports:
        sink.write(
            f"{r.unit_label}\t{r.delta!r}\t{r.true_diversity!r}\t{r.n_journals}\t"
            f"{r.matched_records}\t{r.total_records}\t{r.coverage!r}\n"
        )


def read_diversity_ledger(source):
    reports = []
    for lineno, line in enumerate(source, start=1):
        line = line.rstrip("\r\n")
        if lineno == 1:
            if tuple(line.split("\t")) != LEDGER_HEADER:
                raise ParseError("not a diversity ledger (bad header)", lineno)
            continue
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != len(LEDGER_HEADER):
            raise ParseError(f"expected {len(LEDGER_HEADER)} columns, got {len(fields)}", lineno)
        try:
            reports.append(DiversityReport(
                unit_label=fields[0],
                delta=float(fields[1]),
                true_diversity=float(fields[2]),
                n_journals=int(fields[3]),
                matched_records=int(fields[4]),
                total_records=int(fields[5]),
                coverage=float(fields[6]),
            ))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    return reports
