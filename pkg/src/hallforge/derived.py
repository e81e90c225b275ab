"""BGP reflections as mapping cones, the induced grading, and the map F* between doubles.

For a source ``alpha`` the cone of ``f: M_alpha -> (+)_beta M_beta`` has
cohomology ``ker f`` (placed at shift 1, supported at alpha) and ``coker f``
(shift 0).  At a sink the dual cone of ``g: (+)_beta M_beta -> M_alpha`` gives
``ker g`` at shift 0 and ``coker g`` at shift -1, so the two constructions
invert each other.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .arith import Scalar, mat_rank, rref, solve_linear_space
from .double import DoubleAlgebra, DoubleElement, Report
from .errors import MixedShift, MultipleEdges, NotASink, NotASource, UngradedClass
from .hall import HallAlgebra, TensorElement, kadd, kneg
from .quivercat import Category, IsoClass, Quiver, Rep


@dataclass(frozen=True)
class DerivedObjectClass:
    """A split complex: ``parts`` lists (shift, class) for the summands X[shift]."""

    parts: tuple[tuple[int, IsoClass], ...]

    @classmethod
    def from_dict(cls, d: dict) -> DerivedObjectClass:
        return cls(tuple(sorted((i, c) for i, c in d.items() if sum(c.dim))))

    def as_dict(self) -> dict[int, IsoClass]:
        return dict(self.parts)

    def shifts(self) -> list[int]:
        return [i for i, _ in self.parts]

    def k0(self) -> tuple[int, ...] | None:
        if not self.parts:
            return None
        n = len(self.parts[0][1].dim)
        out = [0] * n
        for i, c in self.parts:
            sign = -1 if i % 2 else 1
            for v in range(n):
                out[v] += sign * c.dim[v]
        return tuple(out)

    def __repr__(self):
        return "{" + ", ".join(f"{i}: {c!r}" for i, c in self.parts) + "}"


def _column_basis(M: np.ndarray, q: int) -> np.ndarray:
    """Columns spanning the column space of M."""
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return np.zeros((rows, 0), dtype=np.int64)
    R, piv = rref(M.T, q)
    return R[: len(piv)].T.copy()


class Reflection:
    """BGP reflection at ``alpha``: ``R^+`` at a source, ``R^-`` at a sink.

    ``kind`` is "source" or "sink"; by default a source reading is preferred.
    """

    def __init__(
        self,
        source: Category,
        alpha: int,
        kind: str | None = None,
        target: Category | None = None,
        target_caps: tuple[int, int] | None = None,
    ):
        Q = source.quiver
        if not 0 <= alpha < Q.vertex_count:
            raise ValueError(f"no vertex {alpha}")
        if kind is None:
            kind = "source" if Q.is_source(alpha) else "sink"
        if kind == "source" and not Q.is_source(alpha):
            raise NotASource(f"vertex {alpha} is not a source")
        if kind == "sink" and not Q.is_sink(alpha):
            raise NotASink(f"vertex {alpha} is not a sink")
        if kind not in ("source", "sink"):
            raise ValueError(f"unknown reflection kind {kind!r}")
        if Q.has_multiple_edges():
            raise MultipleEdges("BGP reflection needs a quiver without multiple edges")
        self.source = source
        self.alpha = alpha
        self.kind = kind
        self.q = source.q
        rq = Q.reflect(alpha)
        if target is None:
            vcap, tcap = target_caps or (source.vertex_cap, source.total_cap)
            target = Category(
                rq,
                source.q,
                vertex_cap=vcap,
                total_cap=tcap,
                hom_budget=source.hom_budget,
                orbit_budget=source.orbit_budget,
                cache_dir=source.cache_dir,
            )
        elif target.quiver != rq or target.q != source.q:
            raise ValueError("target category does not match the reflected quiver")
        self.target = target
        self._memo: dict[IsoClass, DerivedObjectClass] = {}

    def inverse(self) -> Reflection:
        return Reflection(self.target, self.alpha, "sink" if self.kind == "source" else "source", self.source)

    def __call__(self, M) -> DerivedObjectClass:
        if isinstance(M, IsoClass):
            out = self._memo.get(M)
            if out is None:
                out = self._apply(self.source.canonical_rep(M))
                self._memo[M] = out
            return out
        return self._apply(M)

    def _apply(self, M: Rep) -> DerivedObjectClass:
        return self._at_source(M) if self.kind == "source" else self._at_sink(M)

    def _at_source(self, M: Rep) -> DerivedObjectClass:
        q, a, T = self.q, self.alpha, self.target
        arrows = self.source.quiver.arrows
        out_arrows = [(i, t) for i, (s, t) in enumerate(arrows) if s == a]
        total = sum(M.dim[t] for _, t in out_arrows)
        f = (
            np.vstack([M.maps[i] for i, _ in out_arrows])
            if out_arrows
            else np.zeros((0, M.dim[a]), dtype=np.int64)
        )
        kdim = M.dim[a] - (mat_rank(f, q) if f.size else 0)
        # B over the reflected quiver: B_alpha = (+) M_beta, reversed arrows are inclusions
        dimB = list(M.dim)
        dimB[a] = total
        maps, off = [], 0
        for i, (s, t) in enumerate(arrows):
            if s == a:
                m = np.zeros((total, M.dim[t]), dtype=np.int64)
                m[off : off + M.dim[t], :] = np.eye(M.dim[t], dtype=np.int64)
                off += M.dim[t]
                maps.append(m)
            else:
                maps.append(M.maps[i])
        B = Rep(tuple(dimB), tuple(maps))
        bases = [np.zeros((d, 0), dtype=np.int64) for d in dimB]
        bases[a] = _column_basis(f, q)
        _, coker = T.sub_quotient_reps(B, bases)
        kdims = [0] * T.n
        kdims[a] = kdim
        parts = {0: T.iso_class_of(coker)}
        if kdim:
            parts[1] = T.iso_class_of(T.rep(kdims))
        return DerivedObjectClass.from_dict(parts)

    def _at_sink(self, M: Rep) -> DerivedObjectClass:
        q, a, T = self.q, self.alpha, self.target
        arrows = self.source.quiver.arrows
        in_arrows = [(i, s) for i, (s, t) in enumerate(arrows) if t == a]
        total = sum(M.dim[s] for _, s in in_arrows)
        g = (
            np.hstack([M.maps[i] for i, _ in in_arrows])
            if in_arrows
            else np.zeros((M.dim[a], 0), dtype=np.int64)
        )
        rank = mat_rank(g, q) if g.size else 0
        # A' over the reflected quiver: A'_alpha = (+) M_beta, reversed arrows are projections
        dimA = list(M.dim)
        dimA[a] = total
        maps, off = [], 0
        for i, (s, t) in enumerate(arrows):
            if t == a:
                m = np.zeros((M.dim[s], total), dtype=np.int64)
                m[:, off : off + M.dim[s]] = np.eye(M.dim[s], dtype=np.int64)
                off += M.dim[s]
                maps.append(m)
            else:
                maps.append(M.maps[i])
        A = Rep(tuple(dimA), tuple(maps))
        bases = [np.eye(d, dtype=np.int64) for d in dimA]
        if total == 0:
            bases[a] = np.zeros((0, 0), dtype=np.int64)
        elif M.dim[a] == 0:
            bases[a] = np.eye(total, dtype=np.int64)
        else:
            bases[a] = solve_linear_space(g, total, q).T.copy()
        ker, _ = T.sub_quotient_reps(A, bases)
        cdims = [0] * T.n
        cdims[a] = M.dim[a] - rank
        parts = {0: T.iso_class_of(ker)}
        if cdims[a]:
            parts[-1] = T.iso_class_of(T.rep(cdims))
        return DerivedObjectClass.from_dict(parts)


def reflect_object(cat: Category, alpha: int, M, target: Category | None = None) -> DerivedObjectClass:
    return Reflection(cat, alpha, "source", target)(M)


def reflect_object_inverse(cat: Category, alpha: int, M, target: Category | None = None) -> DerivedObjectClass:
    return Reflection(cat, alpha, "sink", target)(M)


def cartan_reflection_matrix(quiver: Quiver, alpha: int) -> np.ndarray:
    """Simple reflection s(x) = x - (x|e_alpha) e_alpha; row i is the image of e_i."""
    n = quiver.vertex_count
    S = np.eye(n, dtype=np.int64)
    e = [1 if v == alpha else 0 for v in range(n)]
    for i in range(n):
        x = [1 if v == i else 0 for v in range(n)]
        pair = quiver.euler_form(x, e) + quiver.euler_form(e, x)
        S[i, alpha] -= pair
    return S


class DerivedGrading:
    """Shift n(M) and image N = F(M)[-n] for classes lying in a single graded piece.

    Everything is computed from the cone on demand and memoized.
    """

    def __init__(self, reflection: Reflection):
        self.reflection = reflection
        self.source = reflection.source
        self.target = reflection.target
        self._graded: dict[IsoClass, tuple[int, IsoClass] | None] = {}
        self._nf: dict[IsoClass, tuple] = {}

    def _indecomposable(self, M: IsoClass) -> tuple[int, IsoClass]:
        img = self.reflection(M)
        if len(img.parts) != 1:
            raise MixedShift(f"indecomposable {M!r} reflects to {img!r}")
        return img.parts[0]

    def graded(self, M: IsoClass) -> tuple[int, IsoClass] | None:
        """(n, N) when every summand of M sits in the same piece, otherwise None."""
        if M in self._graded:
            return self._graded[M]
        shifts = {self._indecomposable(c)[0] for c in self.source.decompose(M)}
        out = None
        if len(shifts) == 1:
            img = self.reflection(M)
            n, N = img.parts[0]
            out = (n, N)
        elif not shifts:
            out = (0, self.target.zero_class())
        self._graded[M] = out
        return out

    def shift(self, M: IsoClass) -> int | None:
        g = self.graded(M)
        return None if g is None else g[0]

    def image(self, M: IsoClass) -> IsoClass:
        g = self.graded(M)
        if g is None:
            raise UngradedClass(f"{M!r} has summands in several graded pieces")
        return g[1]

    def components(self, A: IsoClass) -> list[tuple[int, IsoClass]]:
        """Krull-Schmidt split of A into graded components, by ascending shift."""
        groups: dict[int, list[IsoClass]] = {}
        for c in self.source.decompose(A):
            groups.setdefault(self._indecomposable(c)[0], []).append(c)
        return [(i, self.source.direct_sum_class(groups[i])) for i in sorted(groups)]

    def normal_form(self, A: IsoClass, hall: HallAlgebra) -> tuple[Scalar, list[IsoClass]]:
        """[A] = scalar * prod [A_i] (ascending i); scalar = prod_{i<j} <A_j, A_i>."""
        out = self._nf.get(A)
        if out is None:
            comps = [c for _, c in self.components(A)]
            scalar = Scalar(1, 0, hall.q)
            for x in range(len(comps)):
                for y in range(x + 1, len(comps)):
                    scalar = scalar * hall.euler(comps[y].dim, comps[x].dim)
            out = (scalar, comps)
            self._nf[A] = out
        return out

    def k0_map(self, d) -> tuple[int, ...]:
        return tuple(int(x) for x in np.asarray(d, dtype=np.int64) @ self.k0_matrix())

    def k0_matrix(self) -> np.ndarray:
        """Matrix of the induced map on K_0; row v is the image of the simple at v."""
        cached = getattr(self, "_k0", None)
        if cached is None:
            n = self.source.n
            cached = np.zeros((n, n), dtype=np.int64)
            for v in range(n):
                cached[v, :] = self.reflection(self.source.simple_class(v)).k0()
            self._k0 = cached
        return cached

    def to_json(self, classes: Iterable[IsoClass]) -> dict:
        out = {}
        for c in classes:
            g = self.graded(c)
            if g is not None:
                out[repr(c)] = {"shift": g[0], "image": repr(g[1])}
        return out


def build_grading(cat: Category, alpha: int, kind: str | None = None, total: int | None = None,
                  target: Category | None = None) -> DerivedGrading:
    """Grading for the reflection at alpha; eagerly checks every indecomposable up to ``total``."""
    grading = DerivedGrading(Reflection(cat, alpha, kind, target))
    if total is not None:
        for c in cat.classes_up_to(total):
            if sum(c.dim) and cat.is_indecomposable(c):
                grading._indecomposable(c)
    return grading


def k0_reflection_matrix(cat: Category, alpha: int, kind: str | None = None) -> np.ndarray:
    """Induced K_0 map of the reflection, read off from the cones of the simples."""
    return DerivedGrading(Reflection(cat, alpha, kind)).k0_matrix()


class FStar:
    """The map F*: D(source) -> D(target) induced by a graded derived equivalence."""

    def __init__(self, grading: DerivedGrading, source: DoubleAlgebra, target: DoubleAlgebra):
        if source.cat is not grading.source or target.cat is not grading.target:
            raise ValueError("double algebras do not match the grading")
        self.grading = grading
        self.D, self.E = source, target
        self.H, self.K = source.H, target.H
        self._left: dict = {}
        self._right: dict = {}

    def k_image(self, alpha) -> tuple[int, ...]:
        return self.grading.k0_map(alpha)

    def _piece(self, M: IsoClass, on_left: bool) -> DoubleElement:
        """Image of [M] (x) 1 (on_left) or 1 (x) [M] for M in a single piece."""
        n, N = self.grading.graded(M)
        K = self.K
        x = K.right_k(K.cls(N), tuple(n * d for d in N.dim)).scale(K.euler(N.dim, N.dim) ** n)
        stays = (n % 2 == 0) == on_left
        return self.E.left(x) if stays else self.E.right(x)

    def _classes(self, A: IsoClass, on_left: bool) -> DoubleElement:
        memo = self._left if on_left else self._right
        out = memo.get(A)
        if out is None:
            scalar, comps = self.grading.normal_form(A, self.H)
            out = self.E.one().scale(scalar)
            for c in comps:
                out = out * self._piece(c, on_left)
            memo[A] = out
        return out

    def k_left(self, alpha) -> DoubleElement:
        """F*(k_alpha (x) 1) = k_{F alpha} (x) 1."""
        return self.E.left(self.K.k(self.k_image(alpha)))

    def of_basis(self, alpha, A: IsoClass, B: IsoClass) -> DoubleElement:
        return self.k_left(alpha) * self._classes(A, True) * self._classes(B, False)

    def __call__(self, x: DoubleElement) -> DoubleElement:
        out = self.E.zero()
        for (a, A, B), c in x.terms.items():
            out = out + self.of_basis(a, A, B).scale(c)
        return out

    def on_tensor(self, t: TensorElement) -> DoubleElement:
        """F*(k_a[A] (x) k_b[B]) = F*(k_a[A] (x) 1) F*(1 (x) k_b) F*(1 (x) [B])."""
        out = self.E.zero()
        for (a, A, b, B), c in t.terms.items():
            img = self.k_left(a) * self._classes(A, True)
            img = img * self.E.right(self.K.k(self.k_image(b))) * self._classes(B, False)
            out = out + img.scale(c)
        return out

    def evaluate(self, side) -> DoubleElement:
        out = self.E.zero()
        for c, word in side:
            prod = self.E.one()
            for factor in word:
                prod = prod * self.on_tensor(factor)
            out = out + prod.scale(c)
        return out


def _size(c: IsoClass) -> int:
    return sum(c.dim)


def double_generators(D: DoubleAlgebra, total: int) -> list[tuple[str, DoubleElement, int, int]]:
    """(label, generator, left size, right size) for k_{+-e_i} (x) 1, [A] (x) 1 and 1 (x) [B]."""
    H, cat = D.H, D.cat
    out = []
    for v in range(cat.n):
        for sign in (1, -1):
            e = tuple(sign if j == v else 0 for j in range(cat.n))
            out.append((f"k{list(e)}", D.left(H.k(e)), 0, 0))
    classes = [c for c in cat.classes_up_to(total) if _size(c)]
    for c in classes:
        out.append((f"{c!r}(x)1", D.left(H.cls(c)), _size(c), 0))
    for c in classes:
        out.append((f"1(x){c!r}", D.right(H.cls(c)), 0, _size(c)))
    return out


def verify_f_star_homomorphism(fs: FStar, gs: FStar | None = None, total: int = 3) -> list[Report]:
    """Homomorphism on generator pairs, G* F* = id, and images of the defining relations.

    A pair is checked when the left legs and the right legs of the two
    generators each add up to at most ``total``.
    """
    D = fs.D
    reports = []
    gens = double_generators(D, total)
    for lx, x, xl, xr in gens:
        for ly, y, yl, yr in gens:
            if xl + yl > total or xr + yr > total:
                continue
            lhs = fs(x * y)
            rhs = fs(x) * fs(y)
            reports.append(Report("fstar-hom", {"x": lx, "y": ly}, lhs == rhs, lhs, rhs))
    if gs is not None:
        for lx, x, _, _ in gens:
            back = gs(fs(x))
            reports.append(Report("gstar-fstar", {"x": lx}, back == x, back, x))
    graded = [c for c in D.cat.classes_up_to(total) if fs.grading.graded(c) is not None]
    for A in graded:
        for B in graded:
            if _size(A) + _size(B) > total:
                continue
            for rel in D.defining_relations(A, B):
                lhs, rhs = fs.evaluate(rel.lhs), fs.evaluate(rel.rhs)
                inst = dict(rel.instance, i=fs.grading.shift(A), j=fs.grading.shift(B))
                reports.append(Report(f"fstar-{rel.relation}", inst, lhs == rhs, lhs, rhs))
    return reports


def reflection_pair(
    cat: Category,
    alpha: int,
    kind: str | None = None,
    antipode_order: str = "ascending",
    target_caps: tuple[int, int] | None = None,
):
    """F* for the reflection at alpha together with G* for the inverse reflection.

    Images of products grow under reflection, so the reflected category gets
    doubled caps unless ``target_caps`` says otherwise.
    """
    caps = target_caps or (2 * cat.vertex_cap, 2 * cat.total_cap)
    grading = DerivedGrading(Reflection(cat, alpha, kind, target_caps=caps))
    inverse = DerivedGrading(grading.reflection.inverse())
    D = DoubleAlgebra(HallAlgebra(cat, antipode_order))
    E = DoubleAlgebra(HallAlgebra(grading.target, antipode_order))
    return FStar(grading, D, E), FStar(inverse, E, D)


def hom_ext_pattern(grading: DerivedGrading, total: int) -> list[Report]:
    """Hom(M, M') = 0 unless j in {i, i+1}; Ext^1(M, M') = 0 unless j in {i-1, i}."""
    cat = grading.source
    ind = [c for c in cat.classes_up_to(total) if _size(c) and cat.is_indecomposable(c)]
    reports = []
    for M in ind:
        for M2 in ind:
            i, j = grading.shift(M), grading.shift(M2)
            hom, ext = cat.hom_dim(M, M2), cat.ext1_dim(M, M2)
            ok = (hom == 0 or j in (i, i + 1)) and (ext == 0 or j in (i - 1, i))
            inst = {"M": repr(M), "M2": repr(M2), "i": i, "j": j, "hom": hom, "ext1": ext}
            reports.append(Report("hom-ext-pattern", inst, ok))
    return reports


def grading_json(grading: DerivedGrading, total: int) -> str:
    return json.dumps(grading.to_json(grading.source.classes_up_to(total)), sort_keys=True)
