import codecs
import io

import pytest
from hypothesis import given, strategies as st

from conftest import make_basemap
from portfolio.errors import ParseError
from portfolio.ingest import match_portfolio, parse_analyze_export, RawPortfolio


def test_two_rows_with_percentages():
    raw = parse_analyze_export("PLOS ONE\t1203\t2.455%\nNATURE\t310\t0.633%\n", "NL")
    assert raw.rows == (("PLOS ONE", 1203), ("NATURE", 310))
    assert raw.total_records == 1513
    assert raw.unit_label == "NL"


def test_header_skipped():
    raw = parse_analyze_export("Source Titles\trecord count\t% of N\nNATURE\t310\t0.6%\n", "X")
    assert raw.rows == (("NATURE", 310),)


def test_empty_file():
    with pytest.raises(ParseError, match="no data rows"):
        parse_analyze_export("", "X")


def test_wos_trailer_and_thousands_separator():
    text = ("Source Titles\trecords\t% of 49000\t\n"
            "PLOS ONE\t1,203\t2.455 %\t\n"
            "\n"
            "(12 Source Titles value(s) outside display options.)\n"
            "(0 records (0.000%) do not contain data in the field being analyzed.)\n")
    raw = parse_analyze_export(text, "NL")
    assert raw.rows == (("PLOS ONE", 1203),)


@pytest.mark.parametrize("bad, line", [
    ("NATURE\t310\nSCIENCE\t-4\n", 2),
    ("NATURE\t310\nSCIENCE\tmany\n", 2),
    ("NATURE\t3.5\n", 1),
])
def test_bad_counts_report_line(bad, line):
    with pytest.raises(ParseError) as exc:
        parse_analyze_export(bad, "X")
    assert exc.value.line == line


def test_utf16_bom_and_crlf():
    data = codecs.BOM_UTF16_LE + "Source Titles\trecords\r\nLÄKARTIDNINGEN\t7\r\n".encode("utf-16-le")
    raw = parse_analyze_export(io.BytesIO(data), "SE")
    assert raw.rows == (("LÄKARTIDNINGEN", 7),)


def test_utf8_bom():
    raw = parse_analyze_export(codecs.BOM_UTF8 + b"NATURE\t3\n", "X")
    assert raw.rows == (("NATURE", 3),)


@pytest.fixture
def small_map():
    return make_basemap([
        (12, "NATURE", "NATURE", 0.5, -0.3, 4),
        (13, "JOURNAL OF PHYSICAL CHEMISTRY B", "J PHYS CHEM B", 1.0, 2.0, 1),
        (14, "SCIENCE", "", -1.0, 0.0, 2),
    ])


def test_single_match(small_map):
    dist = match_portfolio(RawPortfolio("X", (("Nature", 310),)), small_map)
    assert dist.entries == {12: 310}
    assert dist.proportions == {12: 1.0}
    assert dist.coverage == 1.0


def test_partial_match(small_map):
    dist = match_portfolio(RawPortfolio("X", (("NATURE", 300), ("UNKNOWN JNL", 100))), small_map)
    assert dist.matched_records == 300
    assert dist.coverage == 0.75
    assert dist.unmatched == (("UNKNOWN JNL", 100),)


def test_duplicates_merge(small_map):
    dist = match_portfolio(RawPortfolio("X", (("Nature", 2), ("NATURE.", 3))), small_map)
    assert dist.entries == {12: 5}


def test_abbreviation_lookup(small_map):
    dist = match_portfolio(RawPortfolio("X", (("J. Phys. Chem. B", 4), ("Science", 4))), small_map)
    assert dist.entries == {13: 4, 14: 4}
    assert dist.proportions == {13: 0.5, 14: 0.5}


def test_no_match_warns(small_map):
    dist = match_portfolio(RawPortfolio("X", (("FOO", 1),)), small_map)
    assert dist.entries == {}
    assert dist.coverage == 0.0
    assert dist.warnings


rows_strategy = st.lists(
    st.tuples(st.sampled_from(["NATURE", "Science", "J PHYS CHEM B", "nope", "Other Jnl"]),
              st.integers(1, 10_000)),
    min_size=1, max_size=20,
)


@given(rows_strategy, st.randoms())
def test_match_properties(rows, rnd):
    m = make_basemap([
        (12, "NATURE", "NATURE", 0.5, -0.3, 4),
        (13, "JOURNAL OF PHYSICAL CHEMISTRY B", "J PHYS CHEM B", 1.0, 2.0, 1),
        (14, "SCIENCE", "", -1.0, 0.0, 2),
    ])
    dist = match_portfolio(RawPortfolio("U", tuple(rows)), m)
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    assert match_portfolio(RawPortfolio("U", tuple(shuffled)), m) == dist
    if dist.matched_records:
        assert abs(sum(dist.proportions.values()) - 1.0) <= 1e-12
    assert dist.matched_records + sum(c for _, c in dist.unmatched) == dist.total_records
    assert dist.matched_records == sum(dist.entries.values())
