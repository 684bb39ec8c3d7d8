import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from yoneda.exactla import FieldSpec
from yoneda.quiveralg import (
    AlgebraError,
    IntervalModule,
    KupischSeries,
    Module,
    ModuleError,
    Quiver,
    algebra_from_json,
    algebra_to_json,
    ar_translate_sequence,
    composition_series,
    interval_map,
    make_monomial,
    make_nakayama_cyclic,
    make_nakayama_linear,
    projective_module,
    truncated_polynomial,
)
from yoneda.resolution import ext_table, yoneda_class_of_exact_sequence
from yoneda.suites import enumerate_cyclic, enumerate_kupisch


def test_semisimple_linear():
    alg = make_nakayama_linear([1])
    assert alg.n == 1 and alg.quiver.arrows == () and alg.relations == ()
    assert alg.is_semisimple()
    assert projective_module(alg, 1).dims == (1,)


def test_linear_122_relation():
    alg = make_nakayama_linear([1, 2, 2])
    assert alg.quiver.arrows == ((1, 2), (2, 3))
    assert alg.relations == ((0, 1),)
    assert projective_module(alg, 3).dims == (0, 1, 1)


def test_linear_12332_two_relations():
    alg = make_nakayama_linear([1, 2, 3, 3, 2])
    assert len(alg.relations) == 2


def test_gabriel_quiver_drops_arrow_when_c_is_one():
    alg = make_nakayama_linear([1, 1, 2])
    assert alg.quiver.arrows == ((2, 3),)


@pytest.mark.parametrize("bad, index", [([2], 1), ([1, 3], 2), ([1, 2, 0], 3)])
def test_invalid_linear_series_names_index(bad, index):
    with pytest.raises(AlgebraError, match=f"offending index {index}"):
        make_nakayama_linear(bad)


def test_cyclic_examples():
    A3 = make_nakayama_cyclic([3])
    assert A3.quiver.arrows == ((1, 1),) and A3.relations == ((0, 0, 0),)
    assert projective_module(A3, 1).dims == (3,)
    assert make_nakayama_cyclic([2]).dim == 2
    C22 = make_nakayama_cyclic([2, 2])
    assert len(C22.relations) == 2 and all(len(r) == 2 for r in C22.relations)
    with pytest.raises(AlgebraError):
        make_nakayama_cyclic([2, 4])


def test_make_monomial_examples():
    A2 = make_monomial(Quiver(2, ((1, 2),)), [])
    assert A2.dim == 3
    loop = make_monomial(Quiver(1, ((1, 1),)), [[0, 0, 0]])
    assert loop == truncated_polynomial(3)
    with pytest.raises(AlgebraError, match="infinite"):
        make_monomial(Quiver(1, ((1, 1),)), [])
    with pytest.raises(AlgebraError):
        make_monomial(Quiver(2, ((1, 2),)), [[0]])


def test_make_monomial_minimalizes():
    alg = make_monomial(Quiver(1, ((1, 1),)), [[0, 0, 0], [0, 0, 0, 0]])
    assert alg.relations == ((0, 0, 0),)


def test_composition_series_examples():
    assert composition_series(make_nakayama_linear([1, 2, 2]), IntervalModule.closed(2, 2)) == [2]
    assert composition_series(make_nakayama_linear([1, 2, 2]), IntervalModule.closed(2, 3)) == [3, 2]
    assert composition_series(make_nakayama_linear([1, 2, 3]), IntervalModule.closed(1, 3)) == [3, 2, 1]


def test_interval_too_long_is_rejected():
    with pytest.raises(ModuleError):
        IntervalModule.closed(1, 3).to_module(make_nakayama_linear([1, 2, 2]))


def test_ar_sequences_over_122():
    alg = make_nakayama_linear([1, 2, 2])
    ext = ext_table(alg, 2)
    seq = ar_translate_sequence(alg, Module.simple(alg, 2))
    assert seq.modules[0].simple_vertex() == 1
    assert seq.modules[1].composition_series() == [2, 1]
    assert not yoneda_class_of_exact_sequence(alg, seq, ext).is_zero()
    seq = ar_translate_sequence(alg, Module.simple(alg, 3))
    assert seq.modules[0].simple_vertex() == 2
    assert seq.modules[1].composition_series() == [3, 2]


def test_ar_sequence_selfinjective():
    alg = truncated_polynomial(3)
    seq = ar_translate_sequence(alg, Module.simple(alg, 1))
    assert [m.total_dim for m in seq.modules] == [1, 2, 1]


def test_ar_sequence_of_projective_fails():
    alg = make_nakayama_linear([1, 2, 2])
    with pytest.raises(ModuleError, match="projective"):
        ar_translate_sequence(alg, Module.simple(alg, 1))


def test_ar_sequence_of_length_two_module():
    alg = truncated_polynomial(3)
    M = IntervalModule(1, 2).to_module(alg)
    seq = ar_translate_sequence(alg, M)
    assert [m.total_dim for m in seq.modules] == [2, 4, 2]


def test_interval_map_composes_to_exact_pair():
    alg = make_nakayama_linear([1, 2, 2])
    f = interval_map(alg, IntervalModule.closed(1, 2), IntervalModule.closed(2, 3), 1)
    assert f.ranks() == [0, 1, 0]
    with pytest.raises(ModuleError):
        interval_map(alg, IntervalModule.closed(1, 2), IntervalModule.closed(3, 3), 1)


@pytest.mark.parametrize("series", list(enumerate_kupisch(5)) + list(enumerate_cyclic(3, 4)),
                         ids=lambda s: f"{s.shape}-{''.join(map(str, s.c))}")
def test_projective_lengths_and_dimension(series):
    make = make_nakayama_linear if series.shape == "linear" else make_nakayama_cyclic
    alg = make(series)
    dims = [projective_module(alg, i).total_dim for i in alg.vertices]
    assert dims == list(series.c)
    assert sum(dims) == alg.dim == int(alg.cartan.sum())
    assert make_monomial(alg.quiver, alg.relations, alg.field) == alg


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=5))
def test_random_series_accepted_iff_valid(c):
    series = KupischSeries(tuple(c), "linear")
    try:
        series.validate()
        valid = True
    except AlgebraError:
        valid = False
    expected = c[0] == 1 and all(1 <= c[i + 1] <= c[i] + 1 for i in range(len(c) - 1))
    assert valid == expected


def test_spec_json_round_trip():
    docs = [
        {"field": {"kind": "prime", "p": 32003}, "algebra": {"kind": "kupisch_linear", "c": [1, 2, 2]}},
        {"field": {"kind": "rational"}, "algebra": {"kind": "kupisch_cyclic", "c": [3]}},
        {"field": {"kind": "prime", "p": 7},
         "algebra": {"kind": "monomial", "vertices": 2, "arrows": [[1, 2], [2, 1]], "relations": [[0, 1], [1, 0]]}},
    ]
    for doc in docs:
        alg = algebra_from_json(doc)
        assert algebra_to_json(alg) == doc
    with pytest.raises(AlgebraError):
        algebra_from_json({"algebra": {"kind": "weird"}})


def test_rational_field_algebra():
    alg = make_nakayama_linear([1, 2, 2], FieldSpec.rational())
    assert alg.field.kind == "rational"
    assert np.array_equal(alg.cartan, make_nakayama_linear([1, 2, 2]).cartan)
