import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from yoneda.keller import (
    KellerError,
    SequenceLengths,
    build_b,
    check_m_ell_identity,
    check_vanishing_groups,
    enumerate_lengths,
    eta_classes,
    eta_sequence,
    gamma_class,
    generation_closure,
    kupisch_from_sequence,
    realize_sequence,
    unfold_sequence,
)
from yoneda.quiveralg import (
    ExactSequence,
    IntervalModule,
    Module,
    ModuleMap,
    interval_map,
    make_nakayama_linear,
    make_nakayama_cyclic,
    short_exact,
    truncated_polynomial,
)
from yoneda.resolution import ext_table, yoneda_class_of_exact_sequence
from yoneda.transfer import PIVOT_RULES, transfer_minimal_model

from conftest import GF

LENGTHS = list(enumerate_lengths(3, 5))


def test_kupisch_examples():
    assert kupisch_from_sequence([2, 2]) == (kupisch_from_sequence([2, 2])[0], 3)
    assert kupisch_from_sequence([2, 2])[0].c == (1, 2, 2)
    s, p = kupisch_from_sequence([3, 3, 2])
    assert s.c == (1, 2, 3, 3, 2) and p == 5
    assert SequenceLengths((3, 3, 2)).lengths_N == (2, 1)


@pytest.mark.parametrize("bad, msg", [
    ([1, 1], "len N_1"),
    ([3, 2, 2], "len N_2"),
    ([3, 3, 3], "len M_3"),
    ([4], "two interior"),
])
def test_kupisch_errors(bad, msg):
    with pytest.raises(KellerError, match=msg):
        kupisch_from_sequence(bad)


def test_lengths_sweep_size():
    assert len(LENGTHS) == 44
    assert {s.d for s in LENGTHS} == {1, 2, 3}


@pytest.mark.parametrize("s", LENGTHS, ids=lambda s: "-".join(map(str, s.lengths_M)))
def test_series_length_is_p(s):
    series, p = kupisch_from_sequence(s)
    assert len(series.c) == p == sum(s.lengths_M) - sum(s.lengths_N)
    series.validate()


def test_unfold_122():
    alg = make_nakayama_linear([1, 2, 2])
    I = [IntervalModule.closed(1, 1), IntervalModule.closed(1, 2), IntervalModule.closed(2, 3), IntervalModule.closed(3, 3)]
    mods = [x.to_module(alg) for x in I]
    seq = ExactSequence(mods, [interval_map(alg, I[k], I[k + 1], 1, mods[k], mods[k + 1]) for k in range(3)])
    s, bottom = unfold_sequence(alg, seq)
    assert s.lengths_M == (2, 2) and bottom == [1, 2, 3]


def test_unfold_rejects_split_extension():
    alg = make_nakayama_linear([1, 2, 2])
    S1, S2 = Module.simple(alg, 1), Module.simple(alg, 2)
    D = Module.direct_sum(alg, [S1, S2])
    F = alg.field
    inc = ModuleMap(S1, D, [F.array([[1]]), F.zeros((1, 0)), F.zeros((0, 0))])
    proj = ModuleMap(D, S2, [F.zeros((0, 1)), F.array([[1]]), F.zeros((0, 0))])
    with pytest.raises(KellerError):
        unfold_sequence(alg, short_exact(inc, proj))


def test_unfold_d2_instance():
    B = build_b([3, 3, 2])
    s, bottom = unfold_sequence(B.alg, realize_sequence(B))
    assert s.lengths_M == (3, 3, 2) and len(bottom) == 5


@pytest.mark.parametrize("s", LENGTHS, ids=lambda s: "-".join(map(str, s.lengths_M)))
def test_round_trip_and_bottom_row(s):
    B = build_b(s)
    got, bottom = unfold_sequence(B.alg, realize_sequence(B))
    assert got == s
    assert bottom == list(range(1, B.p + 1))


def test_eta_classes():
    ext = ext_table(make_nakayama_linear([1, 2, 2]), 2)
    etas = eta_classes(ext.alg, ext)
    assert [(e.src, e.tgt) for e in etas] == [(2, 1), (3, 2)]
    assert eta_classes(make_nakayama_linear([1]), ext_table(make_nakayama_linear([1]), 1)) == []
    ext5 = ext_table(make_nakayama_linear([1, 2, 3, 3, 2]), 3)
    assert len(eta_classes(ext5.alg, ext5)) == 4


def test_gamma_examples():
    ext = ext_table(make_nakayama_linear([1, 2, 2]), 2)
    g, t = gamma_class(ext.alg, ext, 1)
    assert (g.n, g.src, g.tgt, t) == (2, 3, 1, 1)
    ext5 = ext_table(make_nakayama_linear([1, 2, 3, 3, 2]), 3)
    g, t = gamma_class(ext5.alg, ext5, 2)
    assert (g.n, g.src, t) == (3, 5, 1) and ext5.dim(3, 5, 1) == 1
    with pytest.raises(KellerError):
        gamma_class(make_nakayama_linear([1]), ext_table(make_nakayama_linear([1]), 1), 0)


@pytest.mark.parametrize("s", LENGTHS, ids=lambda s: "-".join(map(str, s.lengths_M)))
def test_realized_sequence_is_gamma(s):
    B = build_b(s)
    ext = ext_table(B.alg, B.d + 1)
    gamma, _ = gamma_class(B.alg, ext, B.d)
    cls = yoneda_class_of_exact_sequence(B.alg, realize_sequence(B), ext)
    assert not cls.is_zero() and np.array_equal(cls.coords != 0, gamma.coords != 0)
    eta = yoneda_class_of_exact_sequence(B.alg, eta_sequence(B), ext)
    assert (eta.n, eta.src, eta.tgt) == (B.d, B.p, B.ell) and not eta.is_zero()
    for e in eta_classes(B.alg, ext):
        assert ext.dim(1, e.src, e.tgt) == 1


@pytest.mark.parametrize("lengths", [[2, 2], [3, 3, 2], [4, 4, 2], [5, 5, 2], [3, 4, 3, 2]])
def test_m_ell_examples(lengths):
    B = build_b(lengths)
    for rule in PIVOT_RULES:
        A = transfer_minimal_model(B.alg, B.d + 1, B.ell if B.ell > 1 else 2, pivot_rule=rule)
        rep = check_m_ell_identity(B, A)
        assert rep.passed and rep.scalar % GF.p != 0


def test_m_ell_needs_enough_arity():
    B = build_b([3, 3, 2])
    A = transfer_minimal_model(B.alg, 3, 2)
    with pytest.raises(KellerError, match="k_max"):
        check_m_ell_identity(B, A)


def test_vanishing_examples():
    B = build_b([2, 2])
    rep = check_vanishing_groups(B, ext_table(B.alg, 2))
    assert rep.passed and rep.checked == 0
    B = build_b([3, 3, 2])
    ext = ext_table(B.alg, 3)
    assert ext.dim(2, 3, 1) == 0
    assert check_vanishing_groups(B, ext).passed
    # the same group is nonzero over the (1,2,2) algebra
    assert ext_table(make_nakayama_linear([1, 2, 2]), 2).dim(2, 3, 1) == 1


def test_generation_semisimple_vacuous():
    A = transfer_minimal_model(make_nakayama_linear([1, 1]), 3, 3)
    g = generation_closure(A)
    assert g.passed and all(g.dim_ext[n] == 0 for n in range(1, 4))


@pytest.mark.parametrize("ell", [3, 4, 5])
def test_generation_poly_witness(ell):
    A = transfer_minimal_model(truncated_polynomial(ell), 6, ell)
    g = generation_closure(A)
    assert g.passed
    (w,) = g.witnesses[2]
    (scalar, tree), = w["tree"]
    assert tree == {"op": f"m{ell}", "inputs": [{"class": "e1:1->1#0"}] * ell}


def test_generation_fails_without_higher_operations():
    A = transfer_minimal_model(truncated_polynomial(3), 4, 2)
    g = generation_closure(A)
    assert not g.passed and g.dim_closure[2] == 0
    assert g.to_json()["pass"] is False


@pytest.mark.parametrize("c, shape", [((1, 2, 3, 3, 2), "linear"), ((3, 2, 3), "cyclic"), ((4, 4), "cyclic")])
def test_generation_monotone(c, shape):
    alg = make_nakayama_linear(c) if shape == "linear" else make_nakayama_cyclic(c)
    A = transfer_minimal_model(alg, 5, 6)
    g = generation_closure(A)
    assert g.passed
    for a, b in zip(g.history, g.history[1:]):
        assert all(b[n] >= a[n] for n in a)
    assert g.iterations <= 5


def test_generation_witness_sample_is_seeded():
    A = transfer_minimal_model(make_nakayama_cyclic([3, 3, 3]), 5, 6)
    a = generation_closure(A, seed=11, sample=1).to_json()
    b = generation_closure(A, seed=11, sample=1).to_json()
    assert a == b


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=2, max_size=5))
def test_random_lengths_valid_iff_recurrences(M):
    N = [M[0] - 1]
    for i in range(1, len(M) - 1):
        N.append(M[i] - N[-1])
    ok = all(n >= 1 for n in N) and M[-1] == N[-1] + 1
    try:
        s = SequenceLengths(tuple(M))
    except KellerError:
        assert not ok
        return
    assert ok
    B = build_b(s)
    assert unfold_sequence(B.alg, realize_sequence(B))[0] == s
