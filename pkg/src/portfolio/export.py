"""Writers for VOSviewer, Pajek, UCINET DL and CSV, plus a Pajek reader.

All writers emit LF line endings and fixed numeric precision so identical
inputs give byte-identical files.
"""
import csv
import logging
import re
from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .matrix import PortfolioMatrix, SimilarityMatrix

log = logging.getLogger(__name__)

VOS_MAP_HEADER = "id\tlabel\tx\ty\tcluster\tweight\n"


@dataclass(frozen=True)
class OverlayEntry:
    journal_id: int
    label: str
    x: float
    y: float
    cluster: int
    weight: int


@dataclass(frozen=True)
class OverlayMap:
    entries: tuple


def build_overlay(basemap, dist):
    """One overlay entry per base-map journal, weighted by the unit's matched counts."""
    return OverlayMap(tuple(
        OverlayEntry(j.journal_id, j.full_title, j.x, j.y, j.cluster, int(dist.entries.get(j.journal_id, 0)))
        for j in basemap.journals
    ))


def units_overlay(matrix):
    """Unit nodes for a VOSviewer map file: no layout (x = y = 0, cluster 0), weight = column total."""
    totals = matrix.counts.sum(axis=0)
    return OverlayMap(tuple(
        OverlayEntry(i, label, 0.0, 0.0, 0, int(t))
        for i, (label, t) in enumerate(zip(matrix.unit_labels, totals), start=1)
    ))


def _check_label(label, what):
    if any(c in label for c in "\t\r\n"):
        raise ValueError(f"{what} label {label!r} contains a tab or newline")


def write_vos_map(overlay, sink):
    sink.write(VOS_MAP_HEADER)
    if not overlay.entries:
        log.warning("no journals: VOSviewer map has a header only")
        return
    for e in overlay.entries:
        _check_label(e.label, "map")
        sink.write(f"{e.journal_id}\t{e.label}\t{e.x:.4f}\t{e.y:.4f}\t{e.cluster}\t{e.weight}\n")


def _positive_pairs(sim):
    v = sim.values
    n = len(sim.unit_labels)
    for i in range(n):
        for j in range(i + 1, n):
            if v[i, j] > 0:
                yield i, j, float(v[i, j])


def write_vos_network(sim, sink):
    for i, j, w in _positive_pairs(sim):
        sink.write(f"{i + 1}\t{j + 1}\t{w:.6f}\n")


def write_pajek(sim, sink):
    for label in sim.unit_labels:
        if '"' in label:
            raise ValueError(f"Pajek vertex label {label!r} contains a double quote")
        _check_label(label, "Pajek vertex")
    sink.write(f"*Vertices {len(sim.unit_labels)}\n")
    for i, label in enumerate(sim.unit_labels, start=1):
        sink.write(f'{i} "{label}"\n')
    sink.write("*Edges\n")
    for i, j, w in _positive_pairs(sim):
        sink.write(f"{i + 1} {j + 1} {w:.6f}\n")


_VERTEX = re.compile(r'^\s*(\d+)\s+(?:"([^"]*)"|(\S+))')


def read_pajek(source, kind="cosine"):
    """Read a Pajek ``.net`` file into a symmetric :class:`SimilarityMatrix`.

    ``*Arcs`` are symmetrized; a pair listed twice keeps the later weight.
    Pairs not listed are 0.
    """
    n = None
    labels = None
    values = None
    section = None
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("*"):
            head = line.split()
            key = head[0].lower()
            if key == "*vertices":
                if len(head) < 2 or not head[1].isdigit():
                    raise ParseError("malformed *Vertices header", lineno)
                n = int(head[1])
                labels = [str(i) for i in range(1, n + 1)]
                values = np.zeros((n, n))
                section = "vertices"
            elif key in ("*edges", "*arcs"):
                if n is None:
                    raise ParseError(f"{head[0]} before *Vertices", lineno)
                section = "edges"
            else:
                raise ParseError(f"unsupported section {head[0]!r}", lineno)
            continue
        if section == "vertices":
            m = _VERTEX.match(line)
            if not m:
                raise ParseError("malformed vertex line", lineno)
            idx = int(m.group(1))
            if not 1 <= idx <= n:
                raise ParseError(f"vertex index {idx} out of range 1..{n}", lineno)
            labels[idx - 1] = m.group(2) if m.group(2) is not None else m.group(3)
        elif section == "edges":
            parts = line.split()
            if len(parts) < 2:
                raise ParseError("malformed edge line", lineno)
            try:
                a, b = int(parts[0]), int(parts[1])
                w = float(parts[2]) if len(parts) > 2 else 1.0
            except ValueError:
                raise ParseError("malformed edge line", lineno) from None
            for idx in (a, b):
                if not 1 <= idx <= n:
                    raise ParseError(f"vertex index {idx} out of range 1..{n}", lineno)
            values[a - 1, b - 1] = values[b - 1, a - 1] = w
        else:
            raise ParseError("data before *Vertices header", lineno)
    if n is None:
        raise ParseError("missing *Vertices header")
    return SimilarityMatrix(tuple(labels), values, kind)


def _dl_label(label):
    if re.search(r'[\s,"]', label):
        return '"' + label.replace('"', '""') + '"'
    return label


def _cell(value, kind):
    if kind == "cooccurrence":
        return str(int(value))
    return f"{float(value):.6f}"


def write_ucinet_dl(sim, sink):
    n = len(sim.unit_labels)
    sink.write(f"dl n={n} format=fullmatrix\n")
    sink.write("labels:\n")
    sink.write(",".join(_dl_label(lab) for lab in sim.unit_labels) + "\n")
    sink.write("data:\n")
    for row in sim.values:
        sink.write(" ".join(_cell(v, sim.kind) for v in row) + "\n")


def write_csv_matrix(m, sink):
    """CSV rendering of a similarity matrix or of the units x journals matrix."""
    writer = csv.writer(sink, lineterminator="\n")
    if isinstance(m, SimilarityMatrix):
        writer.writerow(["unit", *m.unit_labels])
        for label, row in zip(m.unit_labels, m.values):
            writer.writerow([label, *(_cell(v, m.kind) for v in row)])
    elif isinstance(m, PortfolioMatrix):
        writer.writerow(["journal_id", *m.unit_labels])
        for jid, row in zip(m.journal_ids, m.counts):
            writer.writerow([int(jid), *(int(v) for v in row)])
    else:
        raise TypeError(f"cannot write {type(m).__name__} as a CSV matrix")
