from fractions import Fraction

import pytest

from conftest import double
from hallforge import DoubleAlgebra, HallAlgebra, Scalar
from hallforge import suites


def _failures(reports):
    return [r for r in reports if not r.passed]


@pytest.mark.parametrize("q", [2, 3])
def test_one_vertex_commutator_by_hand(q):
    # expanding the cross relation for a = b = [S] leaves only the two
    # k-terms with the pairing value q/(q-1)
    D = double("point", q)
    H = D.H
    S = H.simple(0)
    z = D.cat.zero_class()
    c = Scalar(Fraction(q, q - 1), 0, q)
    expected = D.element({((-1,), z, z): c, ((1,), z, z): -c})
    comm = D.left(S) * D.right(S) - D.right(S) * D.left(S)
    assert comm == expected
    assert all(not any(A.dim) and not any(B.dim) for (_, A, B) in comm.terms)


def test_reduced_double_identifies_k():
    D = double("a2", 2)
    H = D.H
    for a in [(1, 0), (0, -1), (2, 1)]:
        assert D.left(H.k(a)) == D.right(H.k(tuple(-x for x in a)))
        assert D.left(H.k(a)) * D.right(H.k(a)) == D.one()


def test_k_commutes_past_right_classes_with_form():
    D = double("a2", 2)
    H = D.H
    for B in D.cat.classes_up_to(2):
        for g in [(1, 0), (0, 1), (-1, 1)]:
            lhs = D.right(H.cls(B)) * D.left(H.k(g))
            rhs = (D.left(H.k(g)) * D.right(H.cls(B))).scale(H.sym(g, B.dim))
            assert lhs == rhs


def test_left_and_right_embeddings_are_algebra_maps():
    D = double("a2", 2)
    H = D.H
    classes = D.cat.classes_up_to(2)
    for A in classes:
        for B in classes:
            x, y = H.cls(A), H.cls(B)
            assert D.left(x * y) == D.left(x) * D.left(y)
            assert D.right(x * y) == D.right(x) * D.right(y)
            # the normal form is left factor times right factor
            assert D.left(x) * D.right(y) == D.basis(H.zero_k(), A, B)


@pytest.mark.parametrize("name,q,total", [("a2", 2, 2), ("point", 2, 3), ("point", 3, 2)])
def test_cross_relation_and_straightening_identity(name, q, total):
    reports = suites.double(double(name, q), total, samples=25)
    assert not _failures(reports)
    counted = [r for r in reports if r.relation == "straightening-count"]
    assert counted and all(r.extra["matches_cross_relation"] for r in counted)


def test_double_associativity_with_k_on_a2():
    D = double("a2", 2)
    H = D.H
    cat = D.cat
    S0, S1 = cat.simple_class(0), cat.simple_class(1)
    z = cat.zero_class()
    elems = [
        D.basis((1, 0), S0, z),
        D.basis((0, 0), z, S1),
        D.basis((0, -1), S1, S0),
        D.basis((0, 0), S0, S0),
    ]
    for x in elems:
        for y in elems:
            for w in elems:
                assert (x * y) * w == x * (y * w)


def test_four_term_counts_on_point():
    D = double("point", 3)
    cat = D.cat
    z = cat.zero_class()
    (S,) = cat.enumerate_classes((1,))
    # isomorphisms S -> S: (q-1) of them, normalized by |Aut S|^2
    assert D.four_term_count(S, S, z, z) == Fraction(2, 4) * 1
    # the zero map has kernel S and cokernel S
    assert D.four_term_count(S, S, S, S) == Fraction(1 * 2 * 2, 2 * 2)
    assert D.middle_sum(S, S, z, z) == Fraction(2, 4)


@pytest.mark.parametrize("name,q", [("point", 3), ("a2", 2)])
def test_middle_sum_matches_morphism_count(name, q):
    assert not _failures(suites.middle_sums(double(name, q), 2))


@pytest.mark.parametrize("name,q", [("a2", 2), ("point", 2)])
def test_defining_relations_with_trivial_grading(name, q):
    reports = suites.defining_relations(double(name, q), 2)
    assert reports and not _failures(reports)
    assert {"left-product", "left-k-commute", "right-class-k", "right-k-commute", "k-identification", "straightening"} <= {r.relation for r in reports}


def test_descending_antipode_order_breaks_cross_relation_consistency():
    D = DoubleAlgebra(HallAlgebra(double("a2", 2).cat, antipode_order="descending"))
    assert _failures(suites.double(D, 2, samples=0))


def test_crossed_leg_pairing_breaks_cross_relation():
    D = DoubleAlgebra(double("a2", 2).H, leg_pairing="crossed")
    assert _failures(suites.double(D, 2, samples=0))
    with pytest.raises(ValueError):
        DoubleAlgebra(D.H, leg_pairing="diagonal")


def test_report_json_shape():
    D = double("point", 2)
    r = D.verify_cross_relation(D.H.simple(0), D.H.simple(0))
    rec = r.to_json()
    assert rec["relation"] == "cross-relation" and rec["pass"] is True
    assert "diff" not in rec
    bad = suites.Report("x", {}, False, D.one(), D.zero()).to_json()
    assert bad["pass"] is False and bad["diff"] == bad["lhs"]
