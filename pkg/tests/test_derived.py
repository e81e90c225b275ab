import json

import numpy as np
import pytest

from conftest import QUIVERS, category, hall
from hallforge import (
    Category,
    DerivedGrading,
    MultipleEdges,
    NotASink,
    NotASource,
    Reflection,
    UngradedClass,
    reflection_pair,
)
from hallforge import suites
from hallforge.derived import (
    DerivedObjectClass,
    cartan_reflection_matrix,
    double_generators,
    grading_json,
    verify_f_star_homomorphism,
)


def _size(c):
    return sum(c.dim)


def _indec(cat, total=3):
    return [c for c in cat.classes_up_to(total) if _size(c) and cat.is_indecomposable(c)]


def _proj(cat):
    (P,) = [c for c in cat.enumerate_classes((1, 1)) if cat.is_indecomposable(c)]
    return P


def test_source_reflection_on_a2():
    cat = category("a2", 2)
    R = Reflection(cat, 0)
    T = R.target
    assert T.quiver.arrows == ((1, 0),)
    S0, S1, P = cat.simple_class(0), cat.simple_class(1), _proj(cat)
    assert R(S0).as_dict() == {1: T.simple_class(0)}
    assert R(S1).as_dict() == {0: _proj(T)}
    assert R(P).as_dict() == {0: T.simple_class(1)}


def test_sink_reflection_on_a2():
    cat = category("a2", 2)
    R = Reflection(cat, 1, "sink")
    T = R.target
    S0, S1, P = cat.simple_class(0), cat.simple_class(1), _proj(cat)
    assert R(S1).as_dict() == {-1: T.simple_class(1)}
    assert R(S0).as_dict() == {0: _proj(T)}
    assert R(P).as_dict() == {0: T.simple_class(0)}


@pytest.mark.parametrize("name,alpha,kind", [
    ("a2", 0, "source"), ("a2", 1, "sink"), ("a2op", 1, "source"), ("a2op", 0, "sink"),
    ("a3", 0, "source"), ("a3", 2, "sink"),
])
def test_inverse_reflection_undoes_reflection(name, alpha, kind):
    cat = category(name, 2)
    R = Reflection(cat, alpha, kind)
    back = R.inverse()
    for c in _indec(cat):
        ((n, N),) = R(c).parts
        assert back(N).as_dict() == {-n: c}


@pytest.mark.parametrize("name,alpha,kind", [("a2", 0, "source"), ("a3", 0, "source"), ("a3", 2, "sink")])
def test_reflected_dimensions_follow_the_root_reflection(name, alpha, kind):
    cat = category(name, 2)
    R = Reflection(cat, alpha, kind)
    s = cartan_reflection_matrix(cat.quiver, alpha)
    for c in _indec(cat):
        assert R(c).k0() == tuple(int(x) for x in np.array(c.dim) @ s)


def test_reflection_argument_errors():
    cat = category("a2", 2)
    with pytest.raises(NotASource):
        Reflection(cat, 1, "source")
    with pytest.raises(NotASink):
        Reflection(cat, 0, "sink")
    with pytest.raises(MultipleEdges):
        Reflection(category("kronecker", 2), 0)
    with pytest.raises(ValueError):
        Reflection(cat, 5)


def test_grading_examples():
    cat = category("a2", 2)
    g = DerivedGrading(Reflection(cat, 0))
    S0, S1, P = cat.simple_class(0), cat.simple_class(1), _proj(cat)
    assert [g.shift(c) for c in (S0, S1, P)] == [1, 0, 0]
    SS = cat.direct_sum_class([S0, S1])
    assert g.graded(SS) is None
    with pytest.raises(UngradedClass):
        g.image(SS)
    assert g.shift(cat.direct_sum_class([S1, P])) == 0
    a3 = category("a3", 2)
    g3 = DerivedGrading(Reflection(a3, 0))
    shifts = {c.dim: g3.shift(c) for c in _indec(a3)}
    assert shifts[(1, 0, 0)] == 1
    assert all(n == 0 for d, n in shifts.items() if d != (1, 0, 0))


def test_normal_form_of_split_extension():
    cat = category("a2", 2)
    H = hall("a2", 2)
    g = DerivedGrading(Reflection(cat, 0))
    S0, S1 = cat.simple_class(0), cat.simple_class(1)
    scalar, comps = g.normal_form(cat.direct_sum_class([S0, S1]), H)
    assert scalar == H.v.inverse()
    assert comps == [S1, S0]


@pytest.mark.parametrize("name,alpha,kind,expected", [
    ("a2", 0, "source", [[-1, 0], [1, 1]]),
    ("a2", 1, "sink", [[1, 1], [0, -1]]),
    ("a3", 1, None, None),
])
def test_k0_matrix(name, alpha, kind, expected):
    cat = category(name, 2)
    if expected is None:
        # the middle vertex of linear A3 is neither a source nor a sink
        with pytest.raises(NotASink):
            Reflection(cat, alpha, kind)
        return
    M = DerivedGrading(Reflection(cat, alpha, kind)).k0_matrix()
    assert M.tolist() == expected
    assert np.array_equal(M @ M, np.eye(2, dtype=np.int64))


def test_derived_object_k0_is_signed():
    cat = category("a2", 2)
    obj = DerivedObjectClass.from_dict({1: cat.simple_class(0), 0: cat.simple_class(1)})
    assert obj.shifts() == [0, 1]
    assert obj.k0() == (-1, 1)
    assert DerivedObjectClass.from_dict({}).k0() is None


def test_f_star_on_generators():
    fs, gs = reflection_pair(category("a2", 2), 0)
    D, E = fs.D, fs.E
    H, K = D.H, E.H
    cat, T = D.cat, E.cat
    S0, S1, P = cat.simple_class(0), cat.simple_class(1), _proj(cat)
    # k's follow the K_0 map
    assert fs(D.left(H.k((1, 0)))) == E.left(K.k((-1, 0)))
    assert fs(D.left(H.k((0, 1)))) == E.left(K.k((1, 1)))
    # shift 0 pieces keep their side
    assert fs(D.right(H.cls(S1))) == E.right(K.cls(_proj(T)))
    assert fs(D.left(H.cls(P))) == E.left(K.cls(T.simple_class(1)))
    # the shift 1 piece changes side: [S0] (x) 1 -> <S,S> (1 (x) [S'] k_S')
    S = T.simple_class(0)
    assert fs(D.left(H.cls(S0))) == E.right(K.cls(S) * K.k((1, 0))).scale(K.v)
    assert fs(D.right(H.cls(S0))) == E.left(K.k((1, 0)) * K.cls(S)).scale(K.v.inverse())
    for _, x, _, _ in double_generators(D, 2):
        assert gs(fs(x)) == x


def test_f_star_is_a_homomorphism_on_small_generators():
    fs, gs = reflection_pair(category("a2", 2), 0)
    reports = verify_f_star_homomorphism(fs, gs, total=2)
    assert reports and all(r.passed for r in reports)


def test_structure_suite_on_a2op():
    cat = category("a2op", 2)
    g = DerivedGrading(Reflection(cat, 1))
    assert all(r.passed for r in suites.structure(g, hall("a2op", 2), 3))


def test_grading_json_is_stable():
    g = DerivedGrading(Reflection(category("a2", 2), 0))
    text = grading_json(g, 1)
    assert json.loads(text) == {
        "[0,0#0]": {"shift": 0, "image": "[0,0#0]"},
        "[0,1#0]": {"shift": 0, "image": "[1,1#1]"},
        "[1,0#0]": {"shift": 1, "image": "[1,0#0]"},
    }
    assert grading_json(g, 1) == text


def test_reflection_of_a_target_mismatch():
    cat = category("a2", 2)
    with pytest.raises(ValueError):
        Reflection(cat, 0, target=Category(QUIVERS["a2"], 2))
