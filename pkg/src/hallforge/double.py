"""Reduced Drinfeld double of the extended Hall algebra.

The double is ``H (x) H^coop`` with the cross relation

    (1 (x) b)(a (x) 1) = sum phi(a1, sigma^-1(b1)) a2 (x) b2 phi(a3, b3),

(Sweedler legs of ``b`` taken for the co-opposite coproduct), modulo
``k_a (x) 1 = 1 (x) k_-a``.  Elements are kept in the normal form
``(k_a [A]) (x) [B]``: all Cartan symbols live in the left factor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .arith import Scalar
from .hall import HallAlgebra, HallElement, TensorElement, _accumulate, _Linear, _fmt_basis, kadd, kneg
from .quivercat import IsoClass


class DoubleElement(_Linear):
    """``sum c * (k_alpha [A]) (x) [B]`` with keys ``(alpha, A, B)``."""

    __slots__ = ()

    @staticmethod
    def _fmt(key):
        a, A, B = key
        return f"({_fmt_basis(a, A)} (x) {B!r})"

    def __mul__(self, other):
        if isinstance(other, DoubleElement):
            return self.algebra.mul(self, other)
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented


@dataclass
class Report:
    """Outcome of one relation instance; ``lhs``/``rhs`` are the two evaluated sides."""

    relation: str
    instance: dict
    passed: bool
    lhs: object = None
    rhs: object = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        self.passed = bool(self.passed)

    def diff(self):
        if self.lhs is None or self.rhs is None or isinstance(self.lhs, (bool, Scalar)):
            return None
        return self.lhs - self.rhs

    def to_json(self) -> dict:
        from .serialize import value_json

        out = {
            "relation": self.relation,
            "instance": self.instance,
            "pass": self.passed,
            "lhs": value_json(self.lhs),
            "rhs": value_json(self.rhs),
        }
        if not self.passed:
            d = self.diff()
            if d is not None:
                out["diff"] = value_json(d)
        out.update(self.extra)
        return out


# A relation side is a linear combination of words; each word is a product of
# generators of the free algebra on H (x) H, i.e. TensorElements.
Word = Sequence[TensorElement]
Side = list[tuple[Scalar, Word]]


@dataclass
class RelationInstance:
    relation: str
    instance: dict
    lhs: Side
    rhs: Side


class DoubleAlgebra:
    """Reduced double on H (x) H in the normal form k_a[A] (x) [B].

    ``leg_pairing`` picks which Sweedler legs meet under the pairing in the
    cross relation: "direct" pairs first with first and third with third,
    "crossed" pairs first with third.  Only "direct" makes the
    cross relation hold.
    """

    def __init__(self, hall: HallAlgebra, leg_pairing: str = "direct"):
        if leg_pairing not in ("direct", "crossed"):
            raise ValueError(f"unknown leg pairing {leg_pairing!r}")
        self.leg_pairing = leg_pairing
        self.H = hall
        self.cat = hall.cat
        self.q = hall.q
        self._d2: dict = {}
        self._sinv: dict = {}
        self._st: dict = {}

    # -- construction -----------------------------------------------------------

    def element(self, terms: dict) -> DoubleElement:
        return DoubleElement(self, terms)

    def zero(self) -> DoubleElement:
        return DoubleElement(self, {})

    def one(self) -> DoubleElement:
        z = self.cat.zero_class()
        return DoubleElement(self, {(self.H.zero_k(), z, z): Scalar(1, 0, self.q)})

    def left(self, x: HallElement) -> DoubleElement:
        """x (x) 1."""
        z = self.cat.zero_class()
        return DoubleElement(self, {(a, A, z): c for (a, A), c in x.terms.items()})

    def right(self, y: HallElement) -> DoubleElement:
        """1 (x) y, using 1 (x) k_b[B] = k_-b (x) [B]."""
        z = self.cat.zero_class()
        return DoubleElement(self, {(kneg(b), z, B): c for (b, B), c in y.terms.items()})

    def embed(self, t: TensorElement) -> DoubleElement:
        """Normal form of a tensor: x (x) k_b[B] = (x k_-b) (x) [B]."""
        H = self.H
        terms: dict = {}
        for (a, A, b, B), c in t.terms.items():
            nb = kneg(b)
            _accumulate(terms, (kadd(a, nb), A, B), c * H.sym(nb, A.dim).inverse())
        return DoubleElement(self, terms)

    def basis(self, alpha, A: IsoClass, B: IsoClass, coeff=1) -> DoubleElement:
        c = coeff if isinstance(coeff, Scalar) else Scalar(coeff, 0, self.q)
        return DoubleElement(self, {(tuple(alpha), A, B): c})

    # -- iterated coproduct -------------------------------------------------------

    def _delta2_class(self, A: IsoClass) -> dict:
        out = self._d2.get(A)
        if out is not None:
            return out
        H = self.H
        out = {}
        for Q, L, c in H.coproduct_class(A):
            # Delta(k_L[Q]) (x) [L]
            for Q2, L2, c2 in H.coproduct_class(Q):
                key = ((kadd(L.dim, L2.dim), Q2), (L.dim, L2), (H.zero_k(), L))
                _accumulate(out, key, c * c2)
        self._d2[A] = out
        return out

    def delta2(self, x: HallElement) -> dict:
        """(Delta (x) id) Delta(x) as {((a1,A1),(a2,A2),(a3,A3)): coeff}."""
        terms: dict = {}
        for (a, A), c0 in x.terms.items():
            for ((a1, A1), (a2, A2), (a3, A3)), c in self._delta2_class(A).items():
                key = ((kadd(a, a1), A1), (kadd(a, a2), A2), (kadd(a, a3), A3))
                _accumulate(terms, key, c0 * c)
        return terms

    # -- the cross relation ---------------------------------------------------

    def _sigma_inv(self, beta, B: IsoClass) -> dict:
        key = (beta, B)
        out = self._sinv.get(key)
        if out is None:
            s = self.H.inverse_antipode(self.H.basis(beta, B))
            out = {}
            for (g, C), c in s.terms.items():
                out.setdefault(C, []).append((g, c))
            self._sinv[key] = out
        return out

    def straighten(self, b: HallElement, a: HallElement) -> DoubleElement:
        """(1 (x) b)(a (x) 1) in normal form, evaluated directly from the cross relation."""
        H = self.H
        a_terms: dict = {}
        crossed = self.leg_pairing == "crossed"
        for ((a1, A1), (a2, A2), (a3, A3)), c in self.delta2(a).items():
            if crossed:
                a1, A1, a3, A3 = a3, A3, a1, A1
            a_terms.setdefault((A1, A3), []).append((a1, a3, a2, A2, c))
        out: dict = {}
        for (bb1, bb2, bb3), cb in self.delta2(b).items():
            # co-opposite Sweedler legs are the reversed triple
            (b1, B1), (b2, B2), (b3, B3) = bb3, bb2, bb1
            for C, parts in self._sigma_inv(b1, B1).items():
                for a1, a3, a2, A2, ca in a_terms.get((C, B3), ()):
                    p1 = Scalar(0, 0, self.q)
                    for g, cg in parts:
                        p1 = p1 + cg * H.pairing_basis(a1, C, g, C)
                    if not p1:
                        continue
                    p3 = H.pairing_basis(a3, B3, b3, B3)
                    if not p3:
                        continue
                    coeff = ca * cb * p1 * p3
                    nb = kneg(b2)
                    _accumulate(out, (kadd(a2, nb), A2, B2), coeff * H.sym(nb, A2.dim).inverse())
        return DoubleElement(self, out)

    def straighten_classes(self, B: IsoClass, C: IsoClass) -> DoubleElement:
        key = (B, C)
        out = self._st.get(key)
        if out is None:
            out = self.straighten(self.H.cls(B), self.H.cls(C))
            self._st[key] = out
        return out

    # -- product --------------------------------------------------------------

    def mul(self, x: DoubleElement, y: DoubleElement) -> DoubleElement:
        """Product in the reduced double.

        (k_a[A] (x) [B])(k_g[C] (x) [D]) = (g|B) (k_a[A] k_g (x) 1)(1 (x) [B])([C] (x) 1)(1 (x) [D]).
        """
        H = self.H
        terms: dict = {}
        for (a, A, B), c1 in x.terms.items():
            for (g, C, D), c2 in y.terms.items():
                c = c1 * c2 * H.sym(g, B.dim)
                for (m, C2, B2), s in self.straighten_classes(B, C).terms.items():
                    left = H.mul_basis(a, A, kadd(g, m), C2)
                    right = H.class_product(B2, D)
                    cs = c * s
                    for (ka, KA), t in left.items():
                        ct = cs * t
                        for KB, u in right.items():
                            _accumulate(terms, (ka, KA, KB), ct * u)
        return DoubleElement(self, terms)

    def evaluate(self, side: Side) -> DoubleElement:
        out = self.zero()
        for c, word in side:
            prod = self.one()
            for factor in word:
                prod = prod * self.embed(factor)
            out = out + prod.scale(c)
        return out

    # -- generators as tensors ------------------------------------------------

    def t_left(self, alpha, A: IsoClass, coeff=1) -> TensorElement:
        """k_alpha[A] (x) 1 as a generator of the free algebra."""
        c = coeff if isinstance(coeff, Scalar) else Scalar(coeff, 0, self.q)
        z = self.cat.zero_class()
        return self.H.tensor({(tuple(alpha), A, self.H.zero_k(), z): c})

    def t_right(self, beta, B: IsoClass, coeff=1) -> TensorElement:
        c = coeff if isinstance(coeff, Scalar) else Scalar(coeff, 0, self.q)
        z = self.cat.zero_class()
        return self.H.tensor({(self.H.zero_k(), z, tuple(beta), B): c})

    # -- relation verifiers -----------------------------------------------------

    def cross_relation_sides(self, a: HallElement, b: HallElement) -> tuple[DoubleElement, DoubleElement]:
        H = self.H
        Da = H.coproduct(a)
        Db = H.coproduct(b).flip()  # co-opposite coproduct of b
        lhs = self.zero()
        rhs = self.zero()
        for (a1, A1, a2, A2), ca in Da.terms.items():
            for (b1, B1, b2, B2), cb in Db.terms.items():
                p = H.pairing_basis(a2, A2, b2, B2)
                if p:
                    t = H.tensor({(a1, A1, b1, B1): ca * cb * p})
                    lhs = lhs + self.embed(t)
                p = H.pairing_basis(a1, A1, b1, B1)
                if p:
                    prod = self.right(H.basis(b2, B2)) * self.left(H.basis(a2, A2))
                    rhs = rhs + prod.scale(ca * cb * p)
        return lhs, rhs

    def verify_cross_relation(self, a: HallElement, b: HallElement) -> Report:
        lhs, rhs = self.cross_relation_sides(a, b)
        inst = {"a": _basis_desc(a), "b": _basis_desc(b)}
        return Report("cross-relation", inst, lhs == rhs, lhs, rhs)

    def four_term_count(self, B: IsoClass, A: IsoClass, N: IsoClass, L: IsoClass) -> Fraction:
        """|{phi: B -> A | Ker ~ N, Coker ~ L}| |Aut N||Aut L| / (|Aut A||Aut B|)."""
        cat = self.cat
        count = cat.hom_with_ker_coker_count(B, A, N, L)
        if not count:
            return Fraction(0)
        return Fraction(count * cat.aut_order(N) * cat.aut_order(L), cat.aut_order(A) * cat.aut_order(B))

    def triangle_hall_number(self, B: IsoClass, A: IsoClass, N: IsoClass, L: IsoClass) -> Scalar:
        """g_{B[1],A}^{N[1]+L} = |Ext^1(L,N)| times the four-term count."""
        val = self.four_term_count(B, A, N, L) * self.cat.ext1_count(L, N)
        return Scalar(val, 0, self.q)

    def middle_sum(self, A: IsoClass, B: IsoClass, N: IsoClass, L: IsoClass) -> Fraction:
        """sum_M |SES(M -> A -> L)| |SES(N -> B -> M)| / (|Aut A||Aut B||Aut M|).

        Independent of Hom enumeration: built from subobject censuses only.
        """
        cat = self.cat
        mdim = tuple(a - l for a, l in zip(A.dim, L.dim))
        if mdim != tuple(b - n for b, n in zip(B.dim, N.dim)) or min(mdim) < 0:
            return Fraction(0)
        total = Fraction(0)
        for M in cat.enumerate_classes(mdim):
            gA = cat.hall_number(L, M, A)
            gB = cat.hall_number(M, N, B)
            if gA and gB:
                aM = cat.aut_order(M)
                ses_a = gA * cat.aut_order(L) * aM
                ses_b = gB * aM * cat.aut_order(N)
                total += Fraction(ses_a * ses_b, cat.aut_order(A) * cat.aut_order(B) * aM)
        return total

    def straightening_relation(self, A: IsoClass, B: IsoClass) -> RelationInstance:
        """The straightening identity for ([A], [B]) as two sides over generator words."""
        H, cat = self.H, self.cat
        lhs: Side = []
        rhs: Side = []
        for (N, L), _ in sorted(cat.kernel_cokernel_census(B, A).items()):
            w = self.four_term_count(B, A, N, L)
            c = (
                H.euler(A.dim, B.dim) * H.euler(B.dim, B.dim)
                / (H.euler(L.dim, N.dim) * H.euler(N.dim, N.dim))
            ) * w
            m = tuple(a - l for a, l in zip(A.dim, L.dim))
            lhs.append((c, [self.t_left(m, L), self.t_right(H.zero_k(), N)]))
        for (L, N), _ in sorted(cat.kernel_cokernel_census(A, B).items()):
            w = self.four_term_count(A, B, L, N)
            c = (
                H.euler(B.dim, A.dim) * H.euler(A.dim, A.dim)
                / (H.euler(N.dim, L.dim) * H.euler(L.dim, L.dim))
            ) * w
            m = tuple(a - l for a, l in zip(A.dim, L.dim))
            rhs.append((c, [self.t_right(m, N), self.t_left(H.zero_k(), L)]))
        return RelationInstance("straightening", {"A": _cref(A), "B": _cref(B)}, lhs, rhs)

    def verify_straightening(self, A: IsoClass, B: IsoClass) -> Report:
        rel = self.straightening_relation(A, B)
        lhs, rhs = self.evaluate(rel.lhs), self.evaluate(rel.rhs)
        cross_l, cross_r = self.cross_relation_sides(self.H.cls(A), self.H.cls(B))
        consistent = lhs == cross_l and rhs == cross_r
        return Report("straightening-count", rel.instance, lhs == rhs and consistent, lhs, rhs, {"matches_cross_relation": consistent})

    def defining_relations(self, A: IsoClass, B: IsoClass) -> list[RelationInstance]:
        """Instances of the defining relations of the double for the pair (A, B)."""
        H, cat = self.H, self.cat
        one = Scalar(1, 0, self.q)
        z = H.zero_k()
        zc = cat.zero_class()
        a, b = A.dim, B.dim
        inst = {"A": _cref(A), "B": _cref(B)}
        prod = [(c, [self.t_left(z, C)]) for C, c in sorted(H.class_product(A, B).items())]
        prod_r = [(c, [self.t_right(z, C)]) for C, c in sorted(H.class_product(A, B).items())]
        # [A] k_B in basis form is (B|A)^-1 k_B [A]
        a_kb = self.t_right(b, A, H.sym(b, a).inverse())
        out = [
            RelationInstance("left-product", inst, [(one, [self.t_left(z, A), self.t_left(z, B)])], prod),
            RelationInstance("left-k-product", inst, [(one, [self.t_left(a, zc), self.t_left(b, zc)])], [(one, [self.t_left(kadd(a, b), zc)])]),
            RelationInstance("left-k-class", inst, [(one, [self.t_left(a, zc), self.t_left(z, B)])], [(one, [self.t_left(a, B)])]),
            RelationInstance("left-k-commute", inst, [(one, [self.t_left(a, B)])], [(H.sym(a, b), [self.t_left(z, B), self.t_left(a, zc)])]),
            RelationInstance("right-product", inst, [(one, [self.t_right(z, A), self.t_right(z, B)])], prod_r),
            RelationInstance("right-k-product", inst, [(one, [self.t_right(a, zc), self.t_right(b, zc)])], [(one, [self.t_right(kadd(a, b), zc)])]),
            RelationInstance("right-class-k", inst, [(one, [self.t_right(z, A), self.t_right(b, zc)])], [(one, [a_kb])]),
            # [A] k_B = (A|B)^-1 k_B [A] in H; the right factor has the same product
            RelationInstance("right-k-commute", inst, [(one, [a_kb])], [(H.sym(a, b).inverse(), [self.t_right(b, zc), self.t_right(z, A)])]),
            RelationInstance("factor-exchange", inst, [(one, [self.t_left(z, A), self.t_right(z, B)])], [(one, [H.tensor({(z, A, z, B): one})])]),
            RelationInstance("k-identification", {"A": _cref(A)}, [(one, [self.t_left(a, zc)])], [(one, [self.t_right(kneg(a), zc)])]),
            self.straightening_relation(A, B),
        ]
        return out

    def verify_defining_relations(
        self, classes: Iterable[IsoClass], shift_of: Callable[[IsoClass], int | None]
    ) -> list[Report]:
        """Check every relation instance for pairs of classes each lying in one graded piece."""
        graded = [c for c in classes if shift_of(c) is not None]
        reports = []
        for A in graded:
            for B in graded:
                for rel in self.defining_relations(A, B):
                    lhs, rhs = self.evaluate(rel.lhs), self.evaluate(rel.rhs)
                    inst = dict(rel.instance, i=shift_of(A), j=shift_of(B))
                    reports.append(Report(rel.relation, inst, lhs == rhs, lhs, rhs))
        return reports


def _cref(c: IsoClass) -> dict:
    return {"dim": list(c.dim), "index": c.index}


def _basis_desc(x: HallElement):
    return [{"k": list(a), "cls": _cref(A), "coeff": str(c)} for (a, A), c in sorted(x.terms.items())]
