from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from srm.core import build_code
from srm.errors import NotDeltaPreserving, ParamDomain, Singular
from srm.flinalg import FqMatrix, rank
from srm.invariance import (
    InvarianceVerdict,
    LinearMap,
    alternating_characterization_oracle,
    build_conjectured_set,
    build_K,
    build_M,
    check_group,
    code_invariant_under,
    codeword_verdict,
    conjecture_census,
    induced_monomial_map,
    is_delta_preserving,
    lemma_alpha_oracle,
    lemma_det_oracle,
    monomial_verdict,
    permutation_maps,
    preserves,
)
from srm.mpoly import MultiPoly, antisymmetrize, compose_linear, det_poly, render

Q5_SOLUTIONS = [
    [[a, b], [b, a]] for a, b in product(range(5), repeat=2) if a != b and (a + b) % 5
]


def dense_preserves(code, M):
    """Oracle: stack coefficient rows over a shared monomial list and compare ranks."""
    images = [compose_linear(f, M) for f in code.polys]
    monos = sorted({m for p in code.polys + images for m in p.terms})
    base = [[p.terms.get(m, 0) for m in monos] for p in code.polys]
    k = rank(FqMatrix.from_rows(base, code.q))
    for g in images:
        row = [g.terms.get(m, 0) for m in monos]
        if rank(FqMatrix.from_rows(base + [row], code.q)) > k:
            return False
    return True


def rand_maps(q, n, count, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        try:
            out.append(LinearMap.from_rows(rng.integers(0, q, (n, n)).tolist(), q))
        except Singular:
            pass
    return out


def test_linear_map_rejects_singular():
    with pytest.raises(Singular):
        LinearMap.from_rows([[1, 4], [4, 1]], 5)


def test_q5_example_matrix_preserves():
    code = build_code(5, 2, 4)
    assert preserves(code, LinearMap.from_rows([[2, 1], [1, 2]], 5))


def test_witness_is_first_failing_generator():
    code = build_code(5, 2, 4)
    v = preserves(code, LinearMap.from_rows([[1, 1], [0, 1]], 5))
    assert not v
    idx, residual = v.witness
    assert idx == 0 and render(residual) == "-x1"
    # the quadratic generator fails too, with a residual off the span
    g = compose_linear(det_poly(5, (0, 2)), [[1, 1], [0, 1]])
    assert render(g) == "-x1^2 - 2*x1*x2"


def test_verdict_witness_invariant():
    with pytest.raises(ValueError):
        InvarianceVerdict(True, (0, None))
    with pytest.raises(ValueError):
        InvarianceVerdict(False)


def test_build_M_is_the_q5_list():
    assert sorted(m.rows() for m in build_M(5)) == sorted(Q5_SOLUTIONS)
    assert [[1, 4], [4, 1]] not in [m.rows() for m in build_M(5)]


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_M_size(q):
    assert len(build_M(q)) == (q - 1) ** 2


@pytest.mark.parametrize("q", [5, 7, 11])
def test_K_size(q):
    assert len(build_K(q)) == 6 * (q - 1) ** 2


def test_K_needs_q5():
    with pytest.raises(ParamDomain):
        build_K(3)


def test_conjectured_set_specialises():
    assert [m.key for m in build_conjectured_set(2, 7)] == [m.key for m in build_M(7)]
    assert [m.key for m in build_conjectured_set(3, 7)] == [m.key for m in build_K(7)]


def test_census_two_readings_differ():
    c = conjecture_census(3, 5)
    assert (c.pairs_literal, c.pairs_invertible, c.literal_but_singular, c.invertible_but_excluded) == (16, 16, 4, 4)
    assert len(build_conjectured_set(3, 5, "literal")) == 6 * (16 - 4)
    c4 = conjecture_census(4, 11)
    assert c4.pairs_invertible == 100 and c4.literal_but_singular == 10


@pytest.mark.parametrize("q", [5, 7])
def test_sets_are_groups(q):
    assert check_group(build_M(q)) and check_group(build_K(q))


def test_check_group_negatives():
    M = build_M(5)
    assert not check_group(M[:-1])
    assert not check_group([LinearMap.from_rows([[2, 0], [0, 2]], 5)])
    assert check_group(permutation_maps(3, 5))


@pytest.mark.parametrize("q,r", [(5, 4), (7, 5)])
def test_K_members_preserve(q, r):
    code = build_code(q, 3, r)
    assert all(preserves(code, m) for m in build_K(q))


def test_preserves_matches_dense_oracle_n2():
    code = build_code(5, 2, 4)
    for rows in product(range(5), repeat=4):
        M = FqMatrix(5, 2, 2, rows)
        assert bool(preserves(code, M)) == dense_preserves(code, M)


def test_preserves_matches_dense_oracle_n3():
    code = build_code(7, 3, 5)
    for m in rand_maps(7, 3, 60, seed=3) + build_K(7)[:20]:
        assert bool(preserves(code, m)) == dense_preserves(code, m.A)


def test_monomial_map_of_swap():
    code = build_code(5, 2, 4)
    mm = induced_monomial_map(code, LinearMap.from_rows([[0, 1], [1, 0]], 5))
    assert mm.perm == tuple(range(code.length))
    assert set(mm.signs) == {4}
    assert code_invariant_under(code, mm)


def test_not_delta_preserving():
    code = build_code(5, 2, 4)
    A = LinearMap.from_rows([[1, 1], [0, 1]], 5)
    assert not is_delta_preserving(code, A)
    with pytest.raises(NotDeltaPreserving):
        induced_monomial_map(code, A)
    assert not monomial_verdict(code, A)


@given(st.integers(0, 10**6))
def test_three_verdicts_agree_on_random_maps(seed):
    code = build_code(7, 3, 5)
    (m,) = rand_maps(7, 3, 1, seed)
    poly = bool(preserves(code, m))
    assert codeword_verdict(code, m) == poly
    if is_delta_preserving(code, m):
        assert monomial_verdict(code, m) == poly


def test_lemma_oracle_examples():
    f = det_poly(7, (0, 1))
    assert lemma_alpha_oracle(7, 1, 1, 0, 1, f)
    assert lemma_alpha_oracle(7, 1, 0, 0, 2, f)
    assert lemma_alpha_oracle(11, 1, 3, 5, 2, det_poly(11, (0, 1)))
    assert lemma_det_oracle(7, 2, 5, 4)
    assert lemma_det_oracle(7, 3, 3, 2)
    assert lemma_det_oracle(5, 1, 2, 1)


def test_lemma_oracle_domains():
    f = det_poly(7, (0, 1))
    with pytest.raises(ParamDomain):
        lemma_alpha_oracle(7, 5, 1, 1, 4, f)  # 1 + 8 > 7
    with pytest.raises(ParamDomain):
        lemma_alpha_oracle(7, 3, 1, 1, 1, MultiPoly.var(2, 7, 0))
    with pytest.raises(ParamDomain):
        lemma_det_oracle(7, 1, 2, 7)
    with pytest.raises(ParamDomain):
        lemma_det_oracle(7, 1, 2, 0)


def test_lemma_alpha_breaks_when_degree_reaches_q():
    # x1^7 appears and no generator carries a pure seventh power
    assert not lemma_alpha_oracle(7, 1, 1, 0, 3, det_poly(7, (0, 1)))


@given(st.sampled_from([7, 11]), st.integers(0, 10), st.integers(0, 10), st.integers(1, 3), st.data())
def test_lemma_alpha_property(q, alpha, beta, t, data):
    top = q - 1 - 2 * t
    pairs = [(i, j) for i in range(q) for j in range(i + 1, q) if i + j <= top]
    if not pairs:
        return
    coeffs = data.draw(st.lists(st.integers(0, q - 1), min_size=len(pairs), max_size=len(pairs)))
    f = MultiPoly.zero(2, q)
    for c, ij in zip(coeffs, pairs):
        f = f + det_poly(q, ij).scale(c)
    assert lemma_alpha_oracle(q, max(f.degree(), 1), alpha, beta, t, f)


@given(st.sampled_from([7, 11]), st.integers(0, 10), st.integers(0, 10), st.integers(1, 3))
def test_lemma_det_property(q, a, b, t):
    assert lemma_det_oracle(q, a, b, t)


@st.composite
def trivariate(draw, q, r):
    mono = st.tuples(*[st.integers(0, r)] * 3).filter(lambda m: sum(m) <= r)
    return MultiPoly(3, q, draw(st.dictionaries(mono, st.integers(1, q - 1), max_size=5)))


@given(st.sampled_from([5, 7]), st.data())
def test_alternating_characterization(q, data):
    r = data.draw(st.integers(3, q - 1))
    p = data.draw(trivariate(q, r))
    assert alternating_characterization_oracle(q, r, antisymmetrize(p))
    assert alternating_characterization_oracle(q, r, p)


def test_alternating_characterization_trivial():
    assert alternating_characterization_oracle(5, 4, MultiPoly.zero(3, 5))
    assert alternating_characterization_oracle(5, 4, MultiPoly.var(3, 5, 0))
