"""Web-of-Science "Analyze Results" (source titles) export parsing and matching."""
import codecs
import io
import logging
import re
from dataclasses import dataclass, field

from .errors import ParseError
from .textnorm import normalize_title

log = logging.getLogger(__name__)

# a count-looking field: optional sign, digits with optional thousands separators, optional decimals
_NUMERIC = re.compile(r"^[+-]?\d[\d,'\u00a0\u202f ]*(\.\d+)?$")
_SEPARATORS = str.maketrans("", "", ",'\u00a0\u202f ")


@dataclass(frozen=True)
class RawPortfolio:
    unit_label: str
    rows: tuple  # ((source_title, record_count), ...) in file order

    @property
    def total_records(self):
        return sum(c for _, c in self.rows)


@dataclass(frozen=True)
class PortfolioDistribution:
    """A unit's record counts over matched base-map journals.

    ``entries`` and ``proportions`` are keyed by journal id in ascending id
    order. Proportions are taken over matched records only; the unmatched
    remainder is kept in ``unmatched`` and summarized by ``coverage``.
    """

    unit_label: str
    entries: dict
    proportions: dict
    matched_records: int
    total_records: int
    unmatched: tuple = ()
    warnings: tuple = field(default=(), compare=False)

    @property
    def coverage(self):
        if self.total_records == 0:
            return 0.0
        return self.matched_records / self.total_records

    @property
    def n_journals(self):
        return len(self.entries)


def decode_export(data):
    """Decode raw export bytes: UTF-16 or UTF-8 BOMs honored, UTF-8 otherwise."""
    if data.startswith(codecs.BOM_UTF16_LE) or data.startswith(codecs.BOM_UTF16_BE):
        return data.decode("utf-16")
    if data.startswith(codecs.BOM_UTF8):
        return data[len(codecs.BOM_UTF8):].decode("utf-8")
    return data.decode("utf-8")


def _parse_count(text):
    return int(text.translate(_SEPARATORS))


def parse_analyze_export(source, unit_label):
    """Parse an ``analyze.txt`` source-title export.

    ``source`` may be a text stream, a binary stream, ``str`` or ``bytes``.
    Lines whose second field is not a number are headers when they precede
    the first data row; after that they are an error. Lines with fewer than
    two fields (blank lines, WoS trailer notes) are skipped.
    """
    if isinstance(source, (bytes, bytearray)):
        text = decode_export(bytes(source))
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = decode_export(data) if isinstance(data, bytes) else data
    text = text.lstrip("\ufeff")

    rows = []
    for lineno, line in enumerate(io.StringIO(text, newline=None), start=1):
        line = line.rstrip("\n")
        fields = line.split("\t")
        if len(fields) < 2:
            continue
        title, raw_count = fields[0].strip(), fields[1].strip()
        if not _NUMERIC.match(raw_count):
            if rows:
                raise ParseError(f"non-numeric record count {raw_count!r}", lineno)
            continue  # header
        if not title:
            raise ParseError("empty source title", lineno)
        if "." in raw_count:
            raise ParseError(f"record count {raw_count!r} is not an integer", lineno)
        count = _parse_count(raw_count)
        if count < 0:
            raise ParseError(f"negative record count {count}", lineno)
        if count == 0:
            log.warning("line %d: %r has zero records, skipped", lineno, title)
            continue
        rows.append((title, count))
    if not rows:
        raise ParseError("no data rows")
    return RawPortfolio(unit_label, tuple(rows))


def read_analyze_export(path, unit_label):
    with open(path, "rb") as fh:
        return parse_analyze_export(fh.read(), unit_label)


def match_portfolio(raw, basemap):
    """Reconcile export titles against ``basemap`` into a distribution."""
    counts = {}
    unmatched = []
    for title, count in raw.rows:
        jid = basemap.lookup(title)
        if jid is None:
            unmatched.append((title, count))
        else:
            counts[jid] = counts.get(jid, 0) + count
    entries = {jid: counts[jid] for jid in sorted(counts)}
    matched = sum(entries.values())
    proportions = {jid: c / matched for jid, c in entries.items()}
    warnings = []
    if not entries:
        msg = f"unit {raw.unit_label!r}: no source title matched the base map"
        log.warning(msg)
        warnings.append(msg)
    return PortfolioDistribution(
        unit_label=raw.unit_label,
        entries=entries,
        proportions=proportions,
        matched_records=matched,
        total_records=raw.total_records,
        unmatched=tuple(sorted(unmatched)),
        warnings=tuple(warnings),
    )
