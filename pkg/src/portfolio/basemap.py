"""Base journal map: loading, title lookup, and normalized map distances."""
import logging
import math
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from . import kernels
from .errors import DegenerateMapError, ParseError, UnknownJournalError
from .textnorm import normalize_title

log = logging.getLogger(__name__)

BASEMAP_HEADER = ("id", "full_title", "abbrev_title", "x", "y", "cluster")


@dataclass(frozen=True)
class JournalEntry:
    journal_id: int
    full_title: str
    abbrev_title: str
    x: float
    y: float
    cluster: int


def compute_diameter(points):
    """Exact maximum pairwise Euclidean distance of a 2-D point collection.

    Uses a convex hull followed by an antipodal-pair scan, so the cost is
    dominated by the O(n log n) sort. ``points`` is anything convertible to an
    ``(n, 2)`` float array; a single point gives 0.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if pts.shape[0] == 0:
        raise ValueError("compute_diameter needs at least one point")
    return math.sqrt(kernels.diameter_sq(pts[:, 0], pts[:, 1]))


class BaseMap:
    """Immutable journal universe with coordinates and cluster ids.

    ``journals`` keeps file order. Titles are indexed in normalized form;
    full titles take priority over abbreviations when both would match.
    """

    def __init__(self, journals, warnings=()):
        self.journals = tuple(journals)
        if not self.journals:
            raise ValueError("a base map needs at least one journal")
        warnings = list(warnings)

        self._row = {}
        for row, j in enumerate(self.journals):
            if j.journal_id in self._row:
                raise ValueError(f"duplicate journal id {j.journal_id}")
            self._row[j.journal_id] = row

        full, abbrev = {}, {}
        for j in self.journals:
            for index, title in ((full, j.full_title), (abbrev, j.abbrev_title)):
                if not title:
                    continue
                key = normalize_title(title)
                if not key:
                    continue
                if key in index and index[key] != j.journal_id:
                    msg = (f"title {key!r} of journal {j.journal_id} collides with journal "
                           f"{index[key]}; keeping the first")
                    log.warning(msg)
                    warnings.append(msg)
                    continue
                index.setdefault(key, j.journal_id)
        self._full_index = full
        self._abbrev_index = abbrev
        merged = dict(abbrev)
        merged.update(full)
        self.title_index = MappingProxyType(merged)

        self.ids = np.array([j.journal_id for j in self.journals], dtype=np.int64)
        self.xs = np.array([j.x for j in self.journals], dtype=np.float64)
        self.ys = np.array([j.y for j in self.journals], dtype=np.float64)
        for a in (self.ids, self.xs, self.ys):
            a.setflags(write=False)
        self.diameter = math.sqrt(kernels.diameter_sq(self.xs, self.ys))
        if self.diameter == 0.0:
            msg = "degenerate base map: fewer than two distinct coordinate points, diversity is undefined"
            log.warning(msg)
            warnings.append(msg)
        self.warnings = tuple(warnings)

    def __len__(self):
        return len(self.journals)

    def __contains__(self, journal_id):
        return journal_id in self._row

    def __repr__(self):
        return f"BaseMap({len(self.journals)} journals, diameter={self.diameter:.6g})"

    def row_of(self, journal_id):
        try:
            return self._row[journal_id]
        except KeyError:
            raise UnknownJournalError(journal_id) from None

    def journal(self, journal_id):
        return self.journals[self.row_of(journal_id)]

    def lookup(self, title):
        """Journal id for ``title`` (full titles first, then abbreviations), or None."""
        key = normalize_title(title)
        if key in self._full_index:
            return self._full_index[key]
        return self._abbrev_index.get(key)

    def coordinates(self, journal_ids):
        rows = np.fromiter((self.row_of(int(i)) for i in journal_ids), dtype=np.int64)
        return self.xs[rows], self.ys[rows]

    def require_nondegenerate(self):
        if not self.diameter > 0.0:
            raise DegenerateMapError(
                "base map has zero diameter (fewer than two distinct points); "
                "disparities and Rao-Stirling diversity are undefined"
            )


def disparity(basemap, i, j):
    """Map distance between journals ``i`` and ``j`` divided by the map diameter."""
    a = basemap.journal(i)
    b = basemap.journal(j)
    basemap.require_nondegenerate()
    if i == j:
        return 0.0
    dx = a.x - b.x
    dy = a.y - b.y
    return math.sqrt(dx * dx + dy * dy) / basemap.diameter


def load_basemap(source):
    """Parse the base-map TSV from a text stream (header line required)."""
    journals = []
    seen_ids = {}
    header_seen = False
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\r\n")
        if lineno == 1:
            line = line.lstrip("\ufeff")
        if not header_seen:
            if tuple(f.strip().lower() for f in line.split("\t")) != BASEMAP_HEADER:
                raise ParseError(f"expected header {chr(9).join(BASEMAP_HEADER)!r}", lineno)
            header_seen = True
            continue
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != len(BASEMAP_HEADER):
            raise ParseError(f"expected {len(BASEMAP_HEADER)} tab-separated columns, got {len(fields)}", lineno)
        raw_id, full, abbrev, raw_x, raw_y, raw_cluster = fields
        try:
            journal_id = int(raw_id)
        except ValueError:
            raise ParseError(f"journal id {raw_id!r} is not an integer", lineno) from None
        if journal_id <= 0:
            raise ParseError(f"journal id must be positive, got {journal_id}", lineno)
        if journal_id in seen_ids:
            raise ParseError(f"duplicate journal id {journal_id} (first on line {seen_ids[journal_id]})", lineno)
        seen_ids[journal_id] = lineno
        try:
            x, y = float(raw_x), float(raw_y)
        except ValueError:
            raise ParseError(f"non-numeric coordinate in {raw_x!r}, {raw_y!r}", lineno) from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ParseError("coordinates must be finite", lineno)
        try:
            cluster = int(raw_cluster)
        except ValueError:
            raise ParseError(f"cluster {raw_cluster!r} is not an integer", lineno) from None
        if cluster < 0:
            raise ParseError("cluster must be non-negative", lineno)
        full_title = normalize_title(full)
        if not full_title:
            raise ParseError("empty full title", lineno)
        journals.append(JournalEntry(journal_id, full_title, normalize_title(abbrev), x, y, cluster))
    if not header_seen:
        raise ParseError("empty base-map file")
    if not journals:
        raise ParseError("base-map file has no data rows")
    return BaseMap(journals)


def read_basemap(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return load_basemap(fh)


def write_basemap(basemap, sink):
    sink.write("\t".join(BASEMAP_HEADER) + "\n")
    for j in basemap.journals:
        sink.write(f"{j.journal_id}\t{j.full_title}\t{j.abbrev_title}\t{j.x!r}\t{j.y!r}\t{j.cluster}\n")
