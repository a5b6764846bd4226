import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cayleygap.errors import CapExceededError, DegreeMismatchError
from cayleygap.perms import (
    GeneratingSet,
    GroupAlgebraElement,
    Permutation,
    adjacent_transpositions_element,
    all_transpositions_element,
    compose,
    enumerate_group,
    generates_symmetric_group,
    random_symmetric_element,
    reversal_element,
    star_transpositions_element,
)
from cayleygap.spectra import (
    Spectrum,
    cayley_gap_dense,
    cayley_gap_irrep,
    cayley_laplacian_dense,
    dense_spectrum,
    full_spectrum_irrep,
    integer_check,
    lambda_max,
    psi,
    schreier_graph_n22,
    schreier_spectrum,
    spectrum_subset,
    sym_eigenvalues,
)
from cayleygap.young import build_orthogonal_rep, partitions_of, rep_apply

FAMILIES = {
    "reversals": reversal_element,
    "adjacent": adjacent_transpositions_element,
    "all-transpositions": all_transpositions_element,
    "star": star_transpositions_element,
}


def family_suite(n, seed=0):
    rng = np.random.default_rng(seed + n)
    suite = {name: make(n) for name, make in FAMILIES.items()}
    for k in range(3):
        suite[f"random-{k}"] = random_symmetric_element(n, rng, terms=3 + k)
    return suite


def test_sym_eigenvalues_examples():
    assert sym_eigenvalues(np.eye(3)).values == (1.0, 1.0, 1.0)
    assert sym_eigenvalues(np.zeros((2, 2))).values == (0.0, 0.0)
    assert sym_eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]])).as_array() == pytest.approx([-1, 1])


def test_sym_eigenvalues_rejects_asymmetric():
    with pytest.raises(ValueError):
        sym_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        sym_eigenvalues(np.ones((2, 3)))


def test_lambda_max_examples():
    w = random_symmetric_element(5, np.random.default_rng(3))
    assert lambda_max(rep_apply(build_orthogonal_rep((5,)), w)) == pytest.approx(sum(w.weights.values()))
    assert lambda_max(rep_apply(build_orthogonal_rep((4, 1)), reversal_element(5))) == pytest.approx(4, abs=1e-10)
    for alpha in partitions_of(4):
        assert lambda_max(rep_apply(build_orthogonal_rep(alpha), reversal_element(4))) <= 4 + 1e-10


def test_psi_examples():
    for n in range(2, 7):
        w = random_symmetric_element(n, np.random.default_rng(n))
        assert psi((n,), w) == pytest.approx(0, abs=1e-12)
    assert psi((1, 1), reversal_element(2)) == 2
    w2 = GroupAlgebraElement(2, {Permutation((1, 2)): 0.3, Permutation((2, 1)): 0.7})
    assert psi((1, 1), w2) == pytest.approx(1.4)
    for n in range(3, 9):
        assert psi((n - 1, 1), reversal_element(n)) == pytest.approx(1, abs=1e-9)
    with pytest.raises(DegreeMismatchError):
        psi((2, 1), reversal_element(4))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_psi_nonnegative(n, seed, terms):
    w = random_symmetric_element(n, np.random.default_rng(seed), terms=terms)
    for alpha in partitions_of(n):
        assert psi(alpha, w) >= -1e-9


def test_cayley_gap_irrep_examples():
    for n in range(3, 9):
        res = cayley_gap_irrep(reversal_element(n))
        assert res.gap == pytest.approx(1, abs=1e-7)
        assert res.argmin == (n - 1, 1)
        assert res.generates
    assert cayley_gap_irrep(reversal_element(2)).gap == 2
    w = all_transpositions_element(4)
    assert cayley_gap_irrep(w).gap == pytest.approx(cayley_gap_dense(w), abs=1e-7)


def test_cayley_gap_irrep_flags_non_generating():
    w = GroupAlgebraElement(4, {Permutation((2, 1, 3, 4)): 1, Permutation((1, 2, 4, 3)): 1})
    with pytest.warns(UserWarning):
        res = cayley_gap_irrep(w)
    assert not res.generates
    assert res.gap == pytest.approx(0, abs=1e-9)
    assert cayley_gap_dense(w) == pytest.approx(0, abs=1e-9)


def test_dense_laplacian_examples():
    assert np.array_equal(cayley_laplacian_dense(GroupAlgebraElement.zero(3)), np.zeros((6, 6)))
    lap = cayley_laplacian_dense(reversal_element(4))
    assert np.allclose(lap.sum(axis=1), 0) and np.allclose(lap, lap.T)
    assert sym_eigenvalues(cayley_laplacian_dense(reversal_element(3))).gap == pytest.approx(1, abs=1e-10)
    with pytest.raises(CapExceededError):
        cayley_laplacian_dense(reversal_element(8))


def test_dense_laplacian_matches_definition():
    # entry (h', h) carries w_g when g∘h = h'; checked with an explicit dictionary lookup
    w = random_symmetric_element(4, np.random.default_rng(11), terms=3)
    group = enumerate_group(4)
    index = {p: k for k, p in enumerate(group)}
    reg = np.zeros((24, 24))
    for h in group:
        for g, v in w.items():
            reg[index[compose(g, h)], index[h]] += v
    assert np.allclose(cayley_laplacian_dense(w), sum(w.weights.values()) * np.eye(24) - reg)


def test_full_spectrum_examples():
    spec = full_spectrum_irrep(reversal_element(4))
    assert len(spec) == 24
    assert spec.multiset_equal(dense_spectrum(reversal_element(4)), 1e-7)
    assert spec.multiplicity(0.0) == 1


@pytest.mark.parametrize("n", range(2, 6))
def test_irrep_route_matches_dense_oracle(n):
    for name, w in family_suite(n).items():
        dense = dense_spectrum(w)
        irrep = full_spectrum_irrep(w)
        assert len(irrep) == math.factorial(n)
        assert irrep.multiset_equal(dense, 1e-7), name
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            assert cayley_gap_irrep(w).gap == pytest.approx(dense.gap, abs=1e-7), name
        assert dense.values[0] >= -1e-8 and irrep.values[0] >= -1e-8
        if generates_symmetric_group(w):
            assert dense.multiplicity(0.0) == 1 and irrep.multiplicity(0.0) == 1


def test_irrep_route_matches_dense_oracle_n6():
    for name, w in family_suite(6).items():
        assert full_spectrum_irrep(w).multiset_equal(dense_spectrum(w), 1e-7), name


@pytest.mark.slow
def test_irrep_route_matches_dense_oracle_n7():
    w = reversal_element(7)
    assert full_spectrum_irrep(w).multiset_equal(dense_spectrum(w), 1e-7)


def explicit_schreier_adjacency(w, n):
    """Adjacency on left cosets of S_(n-2,2), cosets enumerated as explicit sets."""
    group = enumerate_group(n)
    young = [h for h in group if set(h.images[n - 2:]) == {n - 1, n}]
    cosets = {}
    for g in group:
        key = frozenset(compose(g, h) for h in young)
        cosets.setdefault(key, g)
    keys = list(cosets)
    coset_of = {g: k for k, key in enumerate(keys) for g in key}
    a = np.zeros((len(keys), len(keys)))
    for k, key in enumerate(keys):
        g = cosets[key]
        for z, v in w.items():
            a[coset_of[compose(z, g)], k] += v
    labels = [tuple(sorted((cosets[key](n - 1), cosets[key](n)))) for key in keys]
    return a, labels


@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("family", ["reversals", "random"])
def test_pair_model_matches_explicit_cosets(n, family):
    w = reversal_element(n) if family == "reversals" else random_symmetric_element(n, np.random.default_rng(n), 3)
    a, labels = explicit_schreier_adjacency(w, n)
    graph = schreier_graph_n22(w)
    assert sorted(labels) == list(graph.vertices)
    perm = [graph.vertices.index(lab) for lab in labels]
    model = graph.adjacency()[np.ix_(perm, perm)]
    assert np.allclose(model, a)


def test_schreier_graph_examples():
    g = schreier_graph_n22(GeneratingSet.reversals(5))
    assert len(g.vertices) == 10
    for action in g.actions:
        assert sorted(action) == list(range(10))
    for n in range(3, 9):
        g = schreier_graph_n22(GeneratingSet.reversals(n))
        rn = g.generators.index(Permutation(tuple(range(n, 0, -1))))
        assert g.vertices[g.actions[rn][g.vertices.index((1, 2))]] == (n - 1, n)
    with pytest.raises(ValueError):
        schreier_graph_n22(reversal_element(2))


def test_schreier_accepts_generating_set_and_element():
    a = schreier_graph_n22(GeneratingSet.reversals(6)).laplacian()
    b = schreier_graph_n22(reversal_element(6)).laplacian()
    assert np.array_equal(a, b)


@pytest.mark.parametrize("n", range(3, 13))
def test_schreier_spectrum_integral_with_unit_gap(n):
    spec = schreier_spectrum(schreier_graph_n22(GeneratingSet.reversals(n)))
    assert len(spec) == n * (n - 1) // 2
    ok, ints = integer_check(spec, n)
    assert ok
    assert spec.gap == pytest.approx(1, abs=1e-6)
    if n >= 8:
        assert ints == list(range(n + 1))


def test_schreier_spectrum_n8_is_all_integers():
    _, ints = integer_check(schreier_spectrum(schreier_graph_n22(GeneratingSet.reversals(8))), 8)
    assert ints == list(range(9))


def test_spectrum_subset_examples():
    cayley = full_spectrum_irrep(reversal_element(4))
    schreier = schreier_spectrum(schreier_graph_n22(GeneratingSet.reversals(4)))
    assert spectrum_subset(schreier, cayley)
    assert spectrum_subset(Spectrum((0.0,)), cayley)
    assert not spectrum_subset(Spectrum((-1.0,)), cayley)
    assert spectrum_subset(Spectrum(()), cayley)


@pytest.mark.parametrize("n", range(3, 7))
def test_schreier_subset_of_cayley(n):
    for w in (reversal_element(n), all_transpositions_element(n), random_symmetric_element(n, np.random.default_rng(n))):
        assert spectrum_subset(schreier_spectrum(schreier_graph_n22(w)), full_spectrum_irrep(w), 1e-7)


def test_spectrum_helpers():
    s = Spectrum((2.0, 0.0, 1.0, 1.0 + 1e-9))
    assert s.values == (0.0, 1.0, 1.0 + 1e-9, 2.0)
    assert s.distinct() == [0.0, 1.0, 2.0]
    assert s.multiplicity(1.0) == 2
    assert s.gap == 1.0
    assert not s.multiset_equal(Spectrum((0.0, 1.0, 2.0)))
