"""Exact arithmetic: the prime field F_q, matrices over it, and Q(sqrt q).

Matrices are plain ``numpy`` integer arrays with entries in ``[0, q)``; every
routine takes the modulus explicitly.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def primitive_root(q: int) -> int:
    """Smallest generator of the multiplicative group of F_q."""
    if q == 2:
        return 1
    order = q - 1
    factors = {p for p in range(2, order + 1) if order % p == 0 and is_prime(p)}
    for g in range(2, q):
        if all(pow(g, order // p, q) != 1 for p in factors):
            return g
    raise ValueError(f"no primitive root mod {q}")


def as_matrix(rows, q: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    m = np.array(rows, dtype=np.int64) % q
    if shape is not None:
        m = m.reshape(shape)
    return m


def rref(M: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_q.

    Pivots are taken leftmost-column first; within a column the smallest
    eligible row is used.  Returns the reduced matrix and its pivot columns.
    """
    R = np.array(M, dtype=np.int64) % q
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, q)) % q
        col = R[:, c].copy()
        col[r] = 0
        if col.any():
            R = (R - np.outer(col, R[r])) % q
        pivots.append(c)
        r += 1
    return R, pivots


def mat_rank(M: np.ndarray, q: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, q)[1])


def solve_linear_space(constraints: np.ndarray, m: int, q: int) -> np.ndarray:
    """Basis (as rows) of the solution space of ``constraints @ x = 0``.

    ``constraints`` has ``m`` columns, one per unknown; it may have zero rows.
    """
    C = np.asarray(constraints, dtype=np.int64).reshape(-1, m) % q
    if C.shape[0] == 0:
        return np.eye(m, dtype=np.int64)
    R, pivots = rref(C, q)
    free = [j for j in range(m) if j not in pivots]
    basis = np.zeros((len(free), m), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, p in enumerate(pivots):
            basis[k, p] = (-R[i, f]) % q
    return basis


def mat_inverse(M: np.ndarray, q: int) -> np.ndarray:
    n = M.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    R, pivots = rref(np.hstack([M % q, np.eye(n, dtype=np.int64)]), q)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:]


def complete_basis(B: np.ndarray, q: int) -> np.ndarray:
    """Extend the independent columns of ``B`` (n x k) to an invertible n x n matrix.

    Added columns are standard basis vectors, chosen greedily in index order.
    """
    n, k = B.shape
    cols = [B[:, j] for j in range(k)]
    rank = k
    for i in range(n):
        if rank == n:
            break
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        trial = np.column_stack(cols + [e])
        if mat_rank(trial, q) > rank:
            cols.append(e)
            rank += 1
    if not cols:
        return np.zeros((n, 0), dtype=np.int64)
    return np.column_stack(cols) % q


@lru_cache(maxsize=None)
def gl_order(n: int, q: int) -> int:
    """|GL(n, F_q)|."""
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspaces(n: int, k: int, q: int) -> Iterator[np.ndarray]:
    """Yield every k-dimensional subspace of F_q^n once, as a k x n RREF matrix.

    Order: pivot sets lexicographically, then free entries lexicographically.
    """
    if k == 0:
        yield np.zeros((0, n), dtype=np.int64)
        return
    for pivots in itertools.combinations(range(n), k):
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            M = np.zeros((k, n), dtype=np.int64)
            for i, p in enumerate(pivots):
                M[i, p] = 1
            for (i, j), x in zip(free, values):
                M[i, j] = x
            yield M


_V_CACHE: dict[tuple[int, int], "Scalar"] = {}


class Scalar:
    """Exact element ``a + b*v`` of Q(v) with ``v = +sqrt(q)``."""

    __slots__ = ("a", "b", "q")

    def __init__(self, a, b=0, q: int = 2):
        self.a = a if isinstance(a, Fraction) else Fraction(a)
        self.b = b if isinstance(b, Fraction) else Fraction(b)
        self.q = q

    @classmethod
    def v_power(cls, n: int, q: int) -> Scalar:
        """v**n; odd powers land in the b-slot."""
        key = (n, q)
        cached = _V_CACHE.get(key)
        if cached is not None:
            return cached
        half, odd = divmod(n, 2)
        r = Fraction(q) ** half
        out = cls(0, r, q) if odd else cls(r, 0, q)
        _V_CACHE[key] = out
        return out

    def _coerce(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other.q != self.q:
                raise ValueError(f"mixing scalars over q={self.q} and q={other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other, 0, self.q)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, other):
        return -self + other

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.q)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(self.a * other, self.b * other, self.q)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.a, self.b, o.a, o.b
        if not b and not d:
            return Scalar(a * c, 0, self.q)
        return Scalar(a * c + b * d * self.q, a * d + b * c, self.q)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        norm = self.a * self.a - self.b * self.b * self.q
        if norm == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar(1, 0, self.q)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, Scalar):
            return self.q == other.q and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    def __repr__(self):
        if not self.b:
            return f"{self.a}"
        if not self.a:
            return f"{self.b}*v"
        return f"({self.a} + {self.b}*v)"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}

    @classmethod
    def from_json(cls, obj: dict, q: int) -> Scalar:
        return cls(Fraction(obj["a"]), Fraction(obj["b"]), q)
