import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import brute_cooccurrence, brute_cosine
from portfolio.errors import DomainError, ParseError
from portfolio.ingest import PortfolioDistribution
from portfolio.matrix import (PortfolioMatrix, cooccurrence_matrix, cosine_matrix, read_matrix_ledger,
                              upsert_unit, write_matrix_ledger)

IDS = [1, 2, 3]


def dist(label, entries):
    total = sum(entries.values())
    return PortfolioDistribution(label, dict(entries), {k: v / total for k, v in entries.items()}, total, total)


def matrix_of(columns, labels=None):
    labels = labels or [f"U{i}" for i in range(len(columns))]
    m = PortfolioMatrix.empty(range(1, len(columns[0]) + 1))
    for lab, col in zip(labels, columns):
        m = upsert_unit(m, dist(lab, {i + 1: c for i, c in enumerate(col) if c}) if any(col)
                        else PortfolioDistribution(lab, {}, {}, 0, 0))
    return m


def test_first_column():
    m = upsert_unit(PortfolioMatrix.empty(IDS), dist("NL", {1: 3, 3: 4}))
    assert m.unit_labels == ("NL",)
    assert m.counts.sum() == 7
    assert m.column("NL").tolist() == [3, 0, 4]


def test_replace_column():
    m = upsert_unit(PortfolioMatrix.empty(IDS), dist("NL", {1: 3}))
    m = upsert_unit(m, dist("NL", {2: 8}))
    assert m.unit_labels == ("NL",)
    assert m.column("NL").tolist() == [0, 8, 0]


def test_insertion_order_and_idempotence():
    m = PortfolioMatrix.empty(IDS)
    for lab in ("B", "A", "C"):
        m = upsert_unit(m, dist(lab, {1: 1}))
    assert m.unit_labels == ("B", "A", "C")
    d = dist("A", {2: 2})
    once = upsert_unit(m, d)
    assert upsert_unit(once, d) == once


def test_dimension_mismatch():
    with pytest.raises(DomainError):
        upsert_unit(PortfolioMatrix.empty(IDS), dist("X", {99: 1}))


def test_examples():
    m = matrix_of([[1, 2, 0], [2, 1, 0]])
    cos = cosine_matrix(m)
    assert cos.values[0, 1] == pytest.approx(0.8, abs=1e-15)
    assert cos.values[0, 0] == 1.0
    co = cooccurrence_matrix(m)
    assert co.values.tolist() == [[5, 4], [4, 5]]
    assert co.kind == "cooccurrence"


def test_identical_and_disjoint():
    cos = cosine_matrix(matrix_of([[1, 2, 0], [1, 2, 0], [0, 0, 5]]))
    assert cos.values[0, 1] == 1.0
    assert cos.values[0, 2] == 0.0
    assert cooccurrence_matrix(matrix_of([[1, 0, 0], [0, 0, 5]])).values[0, 1] == 0


def test_zero_column():
    cos = cosine_matrix(matrix_of([[1, 2, 0], [0, 0, 0]]))
    assert cos.values[1].tolist() == [0.0, 0.0]
    assert cos.values[0, 0] == 1.0


def test_needs_two_units():
    m = matrix_of([[1, 2, 3]])
    with pytest.raises(DomainError):
        cosine_matrix(m)
    with pytest.raises(DomainError):
        cooccurrence_matrix(m)


small_matrices = st.integers(2, 5).flatmap(
    lambda u: st.integers(1, 10).flatmap(
        lambda j: st.lists(st.lists(st.integers(0, 50), min_size=j, max_size=j), min_size=u, max_size=u)))


@given(small_matrices)
def test_against_brute_force(columns):
    m = matrix_of(columns)
    assert cooccurrence_matrix(m).values.tolist() == brute_cooccurrence(columns)
    cos = cosine_matrix(m).values
    assert np.array_equal(cos, cos.T)
    assert ((cos >= 0) & (cos <= 1)).all()
    brute = brute_cosine(columns)
    for i in range(len(columns)):
        for j in range(len(columns)):
            if i == j:
                assert cos[i, j] == (1.0 if any(columns[i]) else 0.0)
            else:
                assert cos[i, j] == pytest.approx(brute[i][j], abs=1e-15)


@given(small_matrices, st.integers(2, 100))
def test_scaling_one_unit(columns, k):
    base = matrix_of(columns)
    scaled_cols = [list(c) for c in columns]
    scaled_cols[0] = [v * k for v in scaled_cols[0]]
    scaled = matrix_of(scaled_cols)
    np.testing.assert_allclose(cosine_matrix(scaled).values[0], cosine_matrix(base).values[0], rtol=0, atol=1e-12)
    co_b, co_s = cooccurrence_matrix(base).values, cooccurrence_matrix(scaled).values
    assert co_s[0, 1:].tolist() == (co_b[0, 1:] * k).tolist()


def test_ledger_round_trip():
    m = matrix_of([[1, 2, 0], [0, 7, 1]], ["NL", "São Paulo"])
    buf = io.StringIO()
    write_matrix_ledger(m, buf)
    assert buf.getvalue().splitlines()[0] == "journal_id\tNL\tSão Paulo"
    back = read_matrix_ledger(io.StringIO(buf.getvalue()), IDS)
    assert back == m
    with pytest.raises(ParseError):
        read_matrix_ledger(io.StringIO(buf.getvalue()), [1, 2, 4])


def test_column_sums_equal_matched_records():
    d1, d2 = dist("A", {1: 3, 2: 4}), dist("B", {3: 9})
    m = upsert_unit(upsert_unit(PortfolioMatrix.empty(IDS), d1), d2)
    assert m.counts.sum(axis=0).tolist() == [d1.matched_records, d2.matched_records]
