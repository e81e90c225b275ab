"""The extended Ringel-Hall algebra and its Hopf structure.

Elements are finite sums of basis symbols ``k_alpha [A]`` (Cartan part on the
left).  Structure constants come from the subobject census of the category.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .arith import Scalar
from .quivercat import Category, IsoClass


def kadd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def kneg(a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in a)


def _accumulate(terms: dict, key, value: Scalar) -> None:
    prev = terms.get(key)
    if prev is None:
        terms[key] = value
    else:
        s = prev + value
        if s:
            terms[key] = s
        else:
            del terms[key]


class _Linear:
    """Shared bookkeeping for finite linear combinations with Scalar coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms: dict | None = None):
        self.algebra = algebra
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def _new(self, terms):
        return type(self)(self.algebra, terms)

    def _scalar(self, c) -> Scalar:
        return c if isinstance(c, Scalar) else Scalar(c, 0, self.algebra.q)

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        terms = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(terms, k, v)
        return self._new(terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def scale(self, c):
        c = self._scalar(c)
        if not c:
            return self._new({})
        return self._new({k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction, Scalar)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: repr(kv[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*{self._fmt(k)}" for k, v in self.items())


def _fmt_basis(alpha, cls) -> str:
    k = f"k{list(alpha)}" if any(alpha) else ""
    return f"{k}{cls!r}"


class HallElement(_Linear):
    """``sum c * k_alpha [A]`` with keys ``(alpha, A)``."""

    __slots__ = ()

    @staticmethod
    def _fmt(key):
        return _fmt_basis(*key)

    def __mul__(self, other):
        if isinstance(other, HallElement):
            return self.algebra.mul(self, other)
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented


class TensorElement(_Linear):
    """``sum c * (k_alpha [A]) (x) (k_beta [B])`` with keys ``(alpha, A, beta, B)``."""

    __slots__ = ()

    @staticmethod
    def _fmt(key):
        a, A, b, B = key
        return f"({_fmt_basis(a, A)} (x) {_fmt_basis(b, B)})"

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return self.algebra.tensor_mul(self, other)
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def flip(self) -> TensorElement:
        return self._new({(b, B, a, A): c for (a, A, b, B), c in self.terms.items()})

    def left_leg(self, key) -> HallElement:
        return HallElement(self.algebra, {(key[0], key[1]): Scalar(1, 0, self.algebra.q)})


class HallAlgebra:
    """Extended Ringel-Hall algebra of a :class:`Category`.

    ``antipode_order`` fixes how the unordered class product in the antipode
    formula is read: "ascending" multiplies subquotients L_1/L_2, L_2/L_3, ...
    left to right; "descending" reverses that.
    """

    def __init__(self, category: Category, antipode_order: str = "ascending"):
        if antipode_order not in ("ascending", "descending"):
            raise ValueError(f"unknown antipode order {antipode_order!r}")
        self.cat = category
        self.q = category.q
        self.n = category.n
        self.antipode_order = antipode_order
        self._one = Scalar(1, 0, self.q)
        self._prod: dict = {}
        self._cop: dict = {}
        self._T: dict = {}
        self._U: dict = {}
        self.euler = lru_cache(maxsize=None)(self._euler)
        self.sym = lru_cache(maxsize=None)(self._sym)

    # -- forms ---------------------------------------------------------------

    def _euler(self, m: tuple, n: tuple) -> Scalar:
        """Multiplicative Euler form v**<m,n>."""
        return Scalar.v_power(self.cat.euler_form_additive(m, n), self.q)

    def _sym(self, m: tuple, n: tuple) -> Scalar:
        """Symmetrized form (m|n) = <m,n><n,m>."""
        e = self.cat.euler_form_additive(m, n) + self.cat.euler_form_additive(n, m)
        return Scalar.v_power(e, self.q)

    def sym_form(self, m, n) -> Scalar:
        return self.sym(tuple(m), tuple(n))

    @property
    def v(self) -> Scalar:
        return Scalar.v_power(1, self.q)

    # -- constructors --------------------------------------------------------

    def zero_k(self) -> tuple[int, ...]:
        return (0,) * self.n

    def element(self, terms: dict) -> HallElement:
        return HallElement(self, terms)

    def one(self) -> HallElement:
        return self.basis(self.zero_k(), self.cat.zero_class())

    def zero(self) -> HallElement:
        return HallElement(self, {})

    def basis(self, alpha, cls: IsoClass, coeff=1) -> HallElement:
        c = coeff if isinstance(coeff, Scalar) else Scalar(coeff, 0, self.q)
        return HallElement(self, {(tuple(alpha), cls): c})

    def cls(self, c: IsoClass) -> HallElement:
        return self.basis(self.zero_k(), c)

    def k(self, alpha) -> HallElement:
        return self.basis(tuple(alpha), self.cat.zero_class())

    def simple(self, v: int) -> HallElement:
        return self.cls(self.cat.simple_class(v))

    def tensor(self, terms: dict) -> TensorElement:
        return TensorElement(self, terms)

    def tensor_of(self, x: HallElement, y: HallElement) -> TensorElement:
        terms = {}
        for (a, A), c1 in x.terms.items():
            for (b, B), c2 in y.terms.items():
                _accumulate(terms, (a, A, b, B), c1 * c2)
        return TensorElement(self, terms)

    # -- product -------------------------------------------------------------

    def class_product(self, A: IsoClass, B: IsoClass) -> dict[IsoClass, Scalar]:
        """[A]*[B] = <B,A>^-1 sum_C g_{A,B}^C [C]."""
        key = (A, B)
        out = self._prod.get(key)
        if out is not None:
            return out
        cat = self.cat
        dim = kadd(A.dim, B.dim)
        twist = self.euler(B.dim, A.dim).inverse()
        out = {}
        for C in cat.enumerate_classes(dim):
            g = cat.hall_number(A, B, C)
            if g:
                out[C] = twist * g
        self._prod[key] = out
        return out

    def mul_basis(self, alpha, A, beta, B) -> dict:
        """k_alpha[A] * k_beta[B] = (beta|A)^-1 k_{alpha+beta} [A]*[B]."""
        twist = self.sym(beta, A.dim).inverse()
        gamma = kadd(alpha, beta)
        return {(gamma, C): twist * c for C, c in self.class_product(A, B).items()}

    def mul(self, x: HallElement, y: HallElement) -> HallElement:
        terms: dict = {}
        for (a, A), c1 in x.terms.items():
            for (b, B), c2 in y.terms.items():
                c = c1 * c2
                for key, s in self.mul_basis(a, A, b, B).items():
                    _accumulate(terms, key, c * s)
        return HallElement(self, terms)

    def right_k(self, x: HallElement, gamma) -> HallElement:
        """x * k_gamma, rewritten with the Cartan part on the left."""
        gamma = tuple(gamma)
        terms = {}
        for (a, A), c in x.terms.items():
            _accumulate(terms, (kadd(a, gamma), A), c * self.sym(gamma, A.dim).inverse())
        return HallElement(self, terms)

    def left_k(self, gamma, x: HallElement) -> HallElement:
        gamma = tuple(gamma)
        return HallElement(self, {(kadd(gamma, a), A): c for (a, A), c in x.terms.items()})

    def tensor_mul(self, x: TensorElement, y: TensorElement) -> TensorElement:
        terms: dict = {}
        for (a1, A1, b1, B1), c1 in x.terms.items():
            for (a2, A2, b2, B2), c2 in y.terms.items():
                left = self.mul_basis(a1, A1, a2, A2)
                right = self.mul_basis(b1, B1, b2, B2)
                c = c1 * c2
                for (ka, KA), s in left.items():
                    for (kb, KB), t in right.items():
                        _accumulate(terms, (ka, KA, kb, KB), c * s * t)
        return TensorElement(self, terms)

    # -- coproduct and counit ------------------------------------------------

    def coproduct_class(self, A: IsoClass) -> list[tuple[IsoClass, IsoClass, Scalar]]:
        """Terms (A', A'', c) of Delta([A]) = sum c k_{A''}[A'] (x) [A''].

        Computed by iterating subobjects L of A: A'' = L, A' = A/L.
        """
        out = self._cop.get(A)
        if out is not None:
            return out
        cat = self.cat
        autA = cat.aut_order(A)
        out = []
        for (Q, L), count in sorted(cat.census(A).items()):
            c = self.euler(Q.dim, L.dim) * Fraction(count * cat.aut_order(Q) * cat.aut_order(L), autA)
            out.append((Q, L, c))
        self._cop[A] = out
        return out

    def coproduct(self, x: HallElement) -> TensorElement:
        """Delta(k_a[A]) = sum c k_{a+A''}[A'] (x) k_a[A'']."""
        terms: dict = {}
        for (a, A), c0 in x.terms.items():
            for Q, L, c in self.coproduct_class(A):
                _accumulate(terms, (kadd(a, L.dim), Q, a, L), c0 * c)
        return TensorElement(self, terms)

    def counit(self, x: HallElement) -> Scalar:
        zero = self.cat.zero_dim()
        out = Scalar(0, 0, self.q)
        for (_, A), c in x.terms.items():
            if A.dim == zero:
                out = out + c
        return out

    # -- antipode ------------------------------------------------------------

    def _filtration_sum(self, A: IsoClass, inverse: bool) -> HallElement:
        """Signed sum over strict filtrations of A of the weighted subquotient products.

        Returned without the 1/|Aut A| and k_A^{-1} factors.  Memoized per class;
        the recursion peels off the top subquotient L_1/L_2.
        """
        memo = self._U if inverse else self._T
        out = memo.get(A)
        if out is not None:
            return out
        cat = self.cat
        acc = self.zero()
        for (Q, L), count in sorted(cat.census(A).items()):
            if sum(Q.dim) == 0:
                continue
            w = self.euler(Q.dim, L.dim) * (count * cat.aut_order(Q))
            if not inverse:
                w = w * self.sym(Q.dim, L.dim)
            tail = self.one() if sum(L.dim) == 0 else self._filtration_sum(L, inverse)
            top = self.cls(Q)
            # sigma reads the subquotients top-down; sigma^-1 reads them bottom-up
            top_first = (self.antipode_order == "ascending") != inverse
            prod = top * tail if top_first else tail * top
            acc = acc - prod.scale(w)
        memo[A] = acc
        return acc

    def antipode(self, x: HallElement) -> HallElement:
        """sigma(k_a[A]) = sigma([A]) k_{-a}, with sigma([A]) from the filtration formula."""
        terms: dict = {}
        for (a, A), c0 in x.terms.items():
            if sum(A.dim) == 0:
                _accumulate(terms, (kneg(a), A), c0)
                continue
            base = self._filtration_sum(A, inverse=False)
            scale = c0 * Fraction(1, self.cat.aut_order(A))
            shift = kneg(kadd(A.dim, a))
            for (b, C), c in base.terms.items():
                # k_{-A} [C] k_{-a} = (-a|C)^-1 k_{-A-a} [C]
                _accumulate(terms, (shift, C), scale * c * self.sym(kneg(a), C.dim).inverse())
        return HallElement(self, terms)

    def inverse_antipode(self, x: HallElement) -> HallElement:
        """sigma^-1(k_a[A]) = sigma^-1([A]) k_{-a}; sigma^-1([A]) carries k_A^{-1} on the right."""
        terms: dict = {}
        for (a, A), c0 in x.terms.items():
            if sum(A.dim) == 0:
                _accumulate(terms, (kneg(a), A), c0)
                continue
            base = self._filtration_sum(A, inverse=True)
            scale = c0 * Fraction(1, self.cat.aut_order(A))
            gamma = kneg(kadd(A.dim, a))
            for (b, C), c in base.terms.items():
                _accumulate(terms, (gamma, C), scale * c * self.sym(gamma, C.dim).inverse())
        return HallElement(self, terms)

    # -- pairing -------------------------------------------------------------

    def pairing_basis(self, alpha, M: IsoClass, beta, M2: IsoClass) -> Scalar:
        if M != M2:
            return Scalar(0, 0, self.q)
        d = M.dim
        return (
            self.sym(alpha, d) * self.sym(d, d) * self.sym(d, beta) * self.sym(alpha, beta)
        ) * Fraction(1, self.cat.aut_order(M))

    def pairing(self, x: HallElement, y: HallElement) -> Scalar:
        out = Scalar(0, 0, self.q)
        by_class: dict = {}
        for (b, B), c in y.terms.items():
            by_class.setdefault(B, []).append((b, c))
        for (a, A), c1 in x.terms.items():
            for b, c2 in by_class.get(A, ()):
                out = out + c1 * c2 * self.pairing_basis(a, A, b, A)
        return out

    def pairing_tensor(self, x: TensorElement, y: TensorElement) -> Scalar:
        """phi(a (x) a', b (x) b') = phi(a, b) phi(a', b')."""
        out = Scalar(0, 0, self.q)
        for (a1, A1, a2, A2), c1 in x.terms.items():
            for (b1, B1, b2, B2), c2 in y.terms.items():
                if A1 == B1 and A2 == B2:
                    out = out + c1 * c2 * self.pairing_basis(a1, A1, b1, B1) * self.pairing_basis(a2, A2, b2, B2)
        return out

    # -- helpers used by the verifiers ----------------------------------------

    def basis_elements(self, classes: Iterable[IsoClass], ks: Iterable = ((),)) -> list[HallElement]:
        out = []
        for alpha in ks:
            alpha = tuple(alpha) or self.zero_k()
            for c in classes:
                out.append(self.basis(alpha, c))
        return out

    def apply_legs(self, x: TensorElement, f=None, g=None) -> TensorElement:
        """(f (x) g)(x) for linear maps f, g on HallElements (None = identity)."""
        terms: dict = {}
        for (a, A, b, B), c in x.terms.items():
            left = f(self.basis(a, A)) if f else self.basis(a, A)
            right = g(self.basis(b, B)) if g else self.basis(b, B)
            for (ka, KA), s in left.terms.items():
                for (kb, KB), t in right.terms.items():
                    _accumulate(terms, (ka, KA, kb, KB), c * s * t)
        return TensorElement(self, terms)

    def multiply_legs(self, x: TensorElement) -> HallElement:
        out = self.zero()
        for (a, A, b, B), c in x.terms.items():
            out = out + (self.basis(a, A) * self.basis(b, B)).scale(c)
        return out
