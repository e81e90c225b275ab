"""Representations of acyclic quivers over F_q.

The :class:`Category` object is the registry: it enumerates isomorphism
classes per dimension vector (orbits of the base-change group acting on all
tuples of arrow matrices), memoizes |Aut| and Krull-Schmidt decompositions,
and answers Hom/Ext/subobject/filtration questions.  Everything the Hall
algebra layers need from "the category" goes through this class, so another
finitary hereditary backend would have to provide the same methods.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import logging
import threading
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, NamedTuple, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .arith import (
    complete_basis,
    gl_order,
    mat_inverse,
    mat_rank,
    primitive_root,
    rref,
    solve_linear_space,
    subspaces,
)
from .errors import CapExceeded, ConfigError, InternalInconsistency

log = logging.getLogger(__name__)

CACHE_FORMAT = 1


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        if self.vertex_count < 1:
            raise ConfigError("a quiver needs at least one vertex")
        for s, t in self.arrows:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise ConfigError(f"arrow {(s, t)} references a missing vertex")
            if s == t:
                raise ConfigError("loops are not allowed")
        if self.topological_order() is None:
            raise ConfigError("quiver has an oriented cycle")

    def topological_order(self) -> list[int] | None:
        indeg = [0] * self.vertex_count
        for _, t in self.arrows:
            indeg[t] += 1
        ready = [v for v in range(self.vertex_count) if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
        return order if len(order) == self.vertex_count else None

    def is_source(self, v: int) -> bool:
        return all(t != v for _, t in self.arrows)

    def is_sink(self, v: int) -> bool:
        return all(s != v for s, _ in self.arrows)

    def has_multiple_edges(self) -> bool:
        edges = [frozenset(a) for a in self.arrows]
        return len(edges) != len(set(edges))

    def neighbours(self, v: int) -> list[int]:
        return sorted({t for s, t in self.arrows if s == v} | {s for s, t in self.arrows if t == v})

    def reflect(self, v: int) -> Quiver:
        """The quiver with every arrow at ``v`` reversed (arrow order kept)."""
        arrows = tuple((t, s) if v in (s, t) else (s, t) for s, t in self.arrows)
        return Quiver(self.vertex_count, arrows)

    def euler_form(self, m: Sequence[int], n: Sequence[int]) -> int:
        """Additive Euler form: sum m_i n_i - sum over arrows i->j of m_i n_j."""
        out = sum(a * b for a, b in zip(m, n))
        for s, t in self.arrows:
            out -= m[s] * n[t]
        return out

    def digest(self) -> str:
        payload = json.dumps({"vertices": self.vertex_count, "arrows": self.arrows})
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


class IsoClass(NamedTuple):
    """Isomorphism class: dimension vector plus index into that dimension's registry."""

    dim: tuple[int, ...]
    index: int

    def __repr__(self):
        return f"[{','.join(map(str, self.dim))}#{self.index}]"


@dataclass(frozen=True, eq=False)
class Rep:
    dim: tuple[int, ...]
    maps: tuple[np.ndarray, ...]

    def encode(self, q: int) -> int:
        """Index of this rep among all reps of its dimension (big-endian base q)."""
        out = 0
        for m in self.maps:
            for x in m.reshape(-1):
                out = out * q + int(x)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Rep)
            and self.dim == other.dim
            and all(np.array_equal(a, b) for a, b in zip(self.maps, other.maps))
        )

    def __repr__(self):
        return f"Rep(dim={self.dim}, maps={[m.tolist() for m in self.maps]})"


@dataclass(frozen=True, eq=False)
class SubobjectWitness:
    """Arrow-stable subspaces of ``parent``; ``bases[i]`` has basis vectors as columns."""

    parent: Rep
    bases: tuple[np.ndarray, ...]

    @property
    def dim(self) -> tuple[int, ...]:
        return tuple(b.shape[1] for b in self.bases)


@dataclass
class _DimTable:
    classes: list[IsoClass]
    canon: list[int]
    aut: list[int]
    labels: np.ndarray
    decomposition: list[tuple[IsoClass, ...]]


def _digits(m: np.ndarray, q: int) -> int:
    out = 0
    for x in m.reshape(-1):
        out = out * q + int(x)
    return out


@dataclass(frozen=True, eq=False)
class _Subspace:
    """A subspace in reduced echelon form, with the projector onto the quotient.

    ``basis`` has the echelon rows as columns, so its rows at ``pivots`` form an
    identity; ``proj`` maps x to the coordinates of x + U on the free columns.
    """

    basis: np.ndarray
    pivots: list[int]
    free: list[int]
    proj: np.ndarray

    @property
    def k(self) -> int:
        return len(self.pivots)

    @classmethod
    def from_rref(cls, S: np.ndarray, d: int, q: int) -> _Subspace:
        pivots = [int(np.nonzero(row)[0][0]) for row in S]
        free = [j for j in range(d) if j not in pivots]
        B = S.T.copy()
        P = np.zeros((len(free), d), dtype=np.int64)
        for r, j in enumerate(free):
            P[r, j] = 1
            for i, p in enumerate(pivots):
                P[r, p] = (-B[j, i]) % q
        return cls(B, pivots, free, P)


def _gl_generators(d: int, q: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Generators of GL(d, F_q) with their inverses: transvections and one scaling."""
    gens = []
    g = primitive_root(q)
    if g != 1:
        m = np.eye(d, dtype=np.int64)
        m[0, 0] = g
        mi = np.eye(d, dtype=np.int64)
        mi[0, 0] = pow(g, -1, q)
        gens.append((m, mi))
    for r in range(d):
        for s in range(d):
            if r != s:
                m = np.eye(d, dtype=np.int64)
                m[r, s] = 1
                mi = np.eye(d, dtype=np.int64)
                mi[r, s] = q - 1
                gens.append((m, mi))
    return gens


class Category:
    """Registry and homological toolkit for ``Rep_{F_q}(quiver)``."""

    def __init__(
        self,
        quiver: Quiver,
        q: int,
        vertex_cap: int = 4,
        total_cap: int = 6,
        hom_budget: int = 2**20,
        orbit_budget: int = 2**22,
        cache_dir: str | Path | None = None,
    ):
        from .arith import is_prime

        if not is_prime(q):
            raise ConfigError(f"q={q} is not prime")
        if vertex_cap < 1 or total_cap < 1 or hom_budget < 1:
            raise ConfigError("caps must be positive")
        self.quiver = quiver
        self.q = q
        self.vertex_cap = vertex_cap
        self.total_cap = total_cap
        self.hom_budget = hom_budget
        self.orbit_budget = orbit_budget
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._tables: dict[tuple[int, ...], _DimTable] = {}
        self._lock = threading.RLock()
        self._hom: dict = {}
        self._census: dict[IsoClass, Counter] = {}
        self._kc: dict = {}
        self._reps: dict[IsoClass, Rep] = {}
        self._spaces: dict[int, list[_Subspace]] = {}

    def __repr__(self):
        return f"Category(n={self.quiver.vertex_count}, arrows={self.quiver.arrows}, q={self.q})"

    # -- dimension vectors -------------------------------------------------

    @property
    def n(self) -> int:
        return self.quiver.vertex_count

    def check_dim(self, dim: Sequence[int]) -> tuple[int, ...]:
        dim = tuple(int(x) for x in dim)
        if len(dim) != self.n or any(x < 0 for x in dim):
            raise ValueError(f"bad dimension vector {dim}")
        if any(x > self.vertex_cap for x in dim) or sum(dim) > self.total_cap:
            raise CapExceeded(f"dimension vector {dim} exceeds caps ({self.vertex_cap}, {self.total_cap})")
        return dim

    def zero_dim(self) -> tuple[int, ...]:
        return (0,) * self.n

    def dims_up_to(self, total: int) -> list[tuple[int, ...]]:
        """All dimension vectors with sum <= total, by total then lexicographically."""
        out = []
        for t in range(total + 1):
            for d in itertools.product(range(t + 1), repeat=self.n):
                if sum(d) == t:
                    out.append(d)
        return out

    # -- registry ----------------------------------------------------------

    def _cache_path(self, dim) -> Path | None:
        if self.cache_dir is None:
            return None
        name = f"{self.quiver.digest()}_q{self.q}_{'-'.join(map(str, dim))}.npz"
        return self.cache_dir / name

    def _load_cached(self, dim) -> _DimTable | None:
        path = self._cache_path(dim)
        if path is None or not path.exists():
            return None
        try:
            with np.load(path, allow_pickle=False) as data:
                meta = json.loads(str(data["meta"]))
                if meta != {"format": CACHE_FORMAT, "quiver": self.quiver.digest(), "q": self.q, "dim": list(dim)}:
                    log.info("cache mismatch for %s, recomputing", path)
                    return None
                labels = data["labels"]
                canon = [int(x) for x in data["canon"]]
                aut = [int(x) for x in json.loads(str(data["aut"]))]
                decomp = json.loads(str(data["decomposition"]))
        except (OSError, KeyError, ValueError):
            log.warning("unreadable cache file %s, recomputing", path)
            return None
        classes = [IsoClass(dim, i) for i in range(len(canon))]
        decomposition = [tuple(IsoClass(tuple(d), i) for d, i in parts) for parts in decomp]
        return _DimTable(classes, canon, aut, labels, decomposition)

    def _store_cached(self, dim, table: _DimTable) -> None:
        path = self._cache_path(dim)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        meta = {"format": CACHE_FORMAT, "quiver": self.quiver.digest(), "q": self.q, "dim": list(dim)}
        tmp = path.with_suffix(".tmp.npz")
        np.savez(
            tmp,
            meta=json.dumps(meta),
            labels=table.labels,
            canon=np.array(table.canon, dtype=np.int64),
            aut=json.dumps([str(a) for a in table.aut]),
            decomposition=json.dumps([[[list(c.dim), c.index] for c in parts] for parts in table.decomposition]),
        )
        tmp.replace(path)

    def _table(self, dim) -> _DimTable:
        dim = self.check_dim(dim)
        table = self._tables.get(dim)
        if table is not None:
            return table
        with self._lock:
            table = self._tables.get(dim)
            if table is not None:
                return table
            table = self._load_cached(dim)
            if table is None:
                table = self._enumerate(dim)
                self._tables[dim] = table
                self._decompose_all(dim, table)
                self._store_cached(dim, table)
            self._tables[dim] = table
            return table

    def _arrow_layout(self, dim):
        layout = []
        off = 0
        for s, t in self.quiver.arrows:
            size = dim[t] * dim[s]
            layout.append((s, t, off, size))
            off += size
        return layout, off

    def _enumerate(self, dim) -> _DimTable:
        q = self.q
        layout, E = self._arrow_layout(dim)
        N = q**E
        if N > self.orbit_budget:
            raise CapExceeded(f"{N} representations of dimension {dim} exceed the orbit budget")
        group_order = 1
        for d in dim:
            group_order *= gl_order(d, q)
        if E == 0:
            labels = np.zeros(1, dtype=np.int32)
            return _DimTable([IsoClass(dim, 0)], [0], [group_order], labels, [])
        idx = np.arange(N, dtype=np.int64)
        powers = q ** np.arange(E - 1, -1, -1, dtype=np.int64)
        digits = (idx[:, None] // powers) % q
        rows, cols = [idx], [idx]
        for v, d in enumerate(dim):
            if d == 0:
                continue
            touching = [a for a in layout if v in (a[0], a[1]) and a[3] > 0]
            if not touching:
                continue
            for g, gi in _gl_generators(d, q):
                new = digits.copy()
                for s, t, off, size in touching:
                    block = digits[:, off : off + size].reshape(N, dim[t], dim[s])
                    block = np.matmul(g, block) if t == v else np.matmul(block, gi)
                    new[:, off : off + size] = block.reshape(N, size) % q
                rows.append(idx)
                cols.append(new @ powers)
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(N, N)).tocsr()
        ncomp, comp = connected_components(graph, directed=True, connection="weak")
        mins = np.full(ncomp, N, dtype=np.int64)
        np.minimum.at(mins, comp, idx)
        order = np.argsort(mins, kind="stable")
        rank_of = np.empty(ncomp, dtype=np.int64)
        rank_of[order] = np.arange(ncomp)
        labels = rank_of[comp].astype(np.int32)
        sizes = np.bincount(labels, minlength=ncomp)
        aut = []
        for s in sizes:
            a, rem = divmod(group_order, int(s))
            if rem:
                raise InternalInconsistency(f"orbit size {s} does not divide |G|={group_order}")
            aut.append(a)
        classes = [IsoClass(dim, i) for i in range(ncomp)]
        return _DimTable(classes, [int(m) for m in mins[order]], aut, labels, [])

    def _decompose_all(self, dim, table: _DimTable) -> None:
        found: dict[int, tuple[IsoClass, ...]] = {}
        if sum(dim) > 0:
            for d1 in itertools.product(*(range(x + 1) for x in dim)):
                d2 = tuple(a - b for a, b in zip(dim, d1))
                if sum(d1) == 0 or sum(d2) == 0 or d1 > d2:
                    continue
                for x in self.enumerate_classes(d1):
                    for y in self.enumerate_classes(d2):
                        if len(found) == len(table.classes):
                            break
                        c = self.iso_class_of(self.direct_sum(self.canonical_rep(x), self.canonical_rep(y)))
                        if c.index not in found:
                            found[c.index] = tuple(sorted(self.decompose(x) + self.decompose(y)))
        table.decomposition = [
            () if sum(dim) == 0 else found.get(c.index, (c,)) for c in table.classes
        ]

    # -- public registry API -----------------------------------------------

    def enumerate_classes(self, dim) -> list[IsoClass]:
        return list(self._table(dim).classes)

    def classes_up_to(self, total: int) -> list[IsoClass]:
        out = []
        for d in self.dims_up_to(total):
            out.extend(self.enumerate_classes(d))
        return out

    def classes_within_caps(self, total: int | None = None) -> list[IsoClass]:
        """Classes up to ``total`` (default: the total cap), skipping dims over the vertex cap."""
        total = self.total_cap if total is None else min(total, self.total_cap)
        out = []
        for d in self.dims_up_to(total):
            if max(d, default=0) <= self.vertex_cap:
                out.extend(self.enumerate_classes(d))
        return out

    def decode(self, dim, index: int) -> Rep:
        layout, E = self._arrow_layout(dim)
        digits = []
        x = index
        for _ in range(E):
            x, r = divmod(x, self.q)
            digits.append(r)
        digits.reverse()
        maps = []
        for s, t, off, size in layout:
            maps.append(np.array(digits[off : off + size], dtype=np.int64).reshape(dim[t], dim[s]))
        return Rep(tuple(dim), tuple(maps))

    def canonical_rep(self, c: IsoClass) -> Rep:
        rep = self._reps.get(c)
        if rep is None:
            table = self._table(c.dim)
            rep = self.decode(c.dim, table.canon[c.index])
            self._reps[c] = rep
        return rep

    def iso_class_of(self, rep: Rep) -> IsoClass:
        table = self._table(rep.dim)
        return IsoClass(rep.dim, int(table.labels[rep.encode(self.q)]))

    def aut_order(self, c: IsoClass) -> int:
        return self._table(c.dim).aut[c.index]

    def decompose(self, c: IsoClass) -> tuple[IsoClass, ...]:
        """Krull-Schmidt decomposition as a sorted tuple of indecomposable classes."""
        return self._table(c.dim).decomposition[c.index]

    def is_indecomposable(self, c: IsoClass) -> bool:
        return self.decompose(c) == (c,)

    def zero_class(self) -> IsoClass:
        return IsoClass(self.zero_dim(), 0)

    # -- constructions -----------------------------------------------------

    def rep_from_maps(self, maps) -> Rep:
        """Build a rep from arrow matrices; dimensions are read off the shapes."""
        dim = [None] * self.n
        arrays = []
        for (s, t), m in zip(self.quiver.arrows, maps):
            m = np.asarray(m, dtype=np.int64) % self.q
            if m.ndim != 2:
                raise ValueError("arrow matrices must be 2-dimensional")
            for v, size in ((t, m.shape[0]), (s, m.shape[1])):
                if dim[v] is not None and dim[v] != size:
                    raise ValueError(f"inconsistent dimension at vertex {v}")
                dim[v] = size
            arrays.append(m)
        if any(d is None for d in dim):
            raise ValueError("isolated vertex: use rep(dim, maps)")
        return Rep(tuple(dim), tuple(arrays))

    def rep(self, dim, maps=None) -> Rep:
        dim = tuple(dim)
        if maps is None:
            maps = [np.zeros((dim[t], dim[s]), dtype=np.int64) for s, t in self.quiver.arrows]
        arrays = []
        for (s, t), m in zip(self.quiver.arrows, maps):
            m = np.asarray(m, dtype=np.int64).reshape(dim[t], dim[s]) % self.q
            arrays.append(m)
        return Rep(dim, tuple(arrays))

    def simple(self, v: int) -> Rep:
        dim = [0] * self.n
        dim[v] = 1
        return self.rep(dim)

    def simple_class(self, v: int) -> IsoClass:
        return self.iso_class_of(self.simple(v))

    def direct_sum(self, x: Rep, y: Rep) -> Rep:
        dim = tuple(a + b for a, b in zip(x.dim, y.dim))
        maps = []
        for (s, t), m1, m2 in zip(self.quiver.arrows, x.maps, y.maps):
            m = np.zeros((dim[t], dim[s]), dtype=np.int64)
            m[: x.dim[t], : x.dim[s]] = m1
            m[x.dim[t] :, x.dim[s] :] = m2
            maps.append(m)
        return Rep(dim, tuple(maps))

    def direct_sum_class(self, parts: Sequence[IsoClass]) -> IsoClass:
        rep = self.rep(self.zero_dim())
        for c in parts:
            rep = self.direct_sum(rep, self.canonical_rep(c))
        return self.iso_class_of(rep)

    def _as_rep(self, x) -> Rep:
        return self.canonical_rep(x) if isinstance(x, IsoClass) else x

    # -- Hom / Ext -----------------------------------------------------------

    def euler_form_additive(self, m, n) -> int:
        return self.quiver.euler_form(m, n)

    def hom_basis(self, A, B) -> list[tuple[np.ndarray, ...]]:
        """Basis of Hom(A, B); each morphism is a tuple of per-vertex matrices."""
        key = (A, B) if isinstance(A, IsoClass) and isinstance(B, IsoClass) else None
        if key is not None and key in self._hom:
            return self._hom[key]
        A, B = self._as_rep(A), self._as_rep(B)
        q = self.q
        offsets = []
        m = 0
        for i in range(self.n):
            offsets.append(m)
            m += B.dim[i] * A.dim[i]
        eqs = []
        for (s, t), Aa, Ba in zip(self.quiver.arrows, A.maps, B.maps):
            for x in range(B.dim[t]):
                for y in range(A.dim[s]):
                    row = np.zeros(m, dtype=np.int64)
                    for p in range(B.dim[s]):
                        row[offsets[s] + p * A.dim[s] + y] += Ba[x, p]
                    for r in range(A.dim[t]):
                        row[offsets[t] + x * A.dim[t] + r] -= Aa[r, y]
                    eqs.append(row % q)
        basis = solve_linear_space(np.array(eqs).reshape(-1, m), m, q) if m else np.zeros((0, 0), dtype=np.int64)
        out = []
        for vec in basis:
            out.append(
                tuple(
                    vec[offsets[i] : offsets[i] + B.dim[i] * A.dim[i]].reshape(B.dim[i], A.dim[i])
                    for i in range(self.n)
                )
            )
        if key is not None:
            self._hom[key] = out
        return out

    def hom_dim(self, A, B) -> int:
        return len(self.hom_basis(A, B))

    def hom_count(self, A, B) -> int:
        return self.q ** self.hom_dim(A, B)

    def ext1_dim(self, A, B) -> int:
        A, B = self._as_rep(A), self._as_rep(B)
        e = self.hom_dim(A, B) - self.euler_form_additive(A.dim, B.dim)
        if e < 0:
            raise InternalInconsistency(f"negative Ext exponent {e}")
        return e

    def ext1_count(self, A, B) -> int:
        return self.q ** self.ext1_dim(A, B)

    # -- subobjects ----------------------------------------------------------

    def _vertex_spaces(self, d: int) -> list[_Subspace]:
        out = self._spaces.get(d)
        if out is None:
            out = []
            for k in range(d + 1):
                for S in subspaces(d, k, self.q):
                    out.append(_Subspace.from_rref(S, d, self.q))
            self._spaces[d] = out
        return out

    def _stable_choices(self, C: Rep) -> Iterator[tuple[int, ...]]:
        """Indices (into the per-vertex subspace lists) of every arrow-stable choice."""
        q = self.q
        spaces = [self._vertex_spaces(d) for d in C.dim]
        compat = []
        for (s, t), M in zip(self.quiver.arrows, C.maps):
            tgt = spaces[t]
            P_all = np.vstack([sp.proj for sp in tgt]) if C.dim[t] else np.zeros((0, 0), dtype=np.int64)
            starts = np.cumsum([0] + [sp.proj.shape[0] for sp in tgt])[:-1]
            full = np.array([sp.proj.shape[0] == 0 for sp in tgt])
            table = np.zeros((len(spaces[s]), len(tgt)), dtype=bool)
            for i, sp in enumerate(spaces[s]):
                image = (M @ sp.basis) % q
                if not image.any():
                    table[i] = True
                    continue
                bad_rows = ((P_all @ image) % q).any(axis=1)
                # reduceat on an empty block returns the next row; full subspaces never fail
                bad = np.logical_or.reduceat(np.append(bad_rows, False), np.minimum(starts, len(bad_rows)))
                table[i] = np.where(full, True, ~bad[: len(tgt)])
            compat.append((s, t, table))
        order = list(range(self.n))
        choice = [0] * self.n

        def rec(pos):
            if pos == len(order):
                yield tuple(choice)
                return
            v = order[pos]
            mask = np.ones(len(spaces[v]), dtype=bool)
            for s, t, table in compat:
                if t == v and s < v:
                    mask &= table[choice[s]]
                elif s == v and t < v:
                    mask &= table[:, choice[t]]
            for i in np.nonzero(mask)[0]:
                choice[v] = int(i)
                yield from rec(pos + 1)

        yield from rec(0)

    def subobjects(self, C) -> Iterator[SubobjectWitness]:
        """Every arrow-stable tuple of subspaces of ``C``, including 0 and C."""
        C = self._as_rep(C)
        self.check_dim(C.dim)
        spaces = [self._vertex_spaces(d) for d in C.dim]
        for choice in self._stable_choices(C):
            yield SubobjectWitness(C, tuple(spaces[v][i].basis for v, i in enumerate(choice)))

    def sub_quotient_reps(self, C: Rep, bases: Sequence[np.ndarray]) -> tuple[Rep, Rep]:
        """Restrict to the stable subspaces ``bases`` and pass to the quotient."""
        q = self.q
        frames, inverses = [], []
        for d, B in zip(C.dim, bases):
            T = complete_basis(B, q) if d else np.zeros((0, 0), dtype=np.int64)
            frames.append(T)
            inverses.append(mat_inverse(T, q))
        k = [B.shape[1] for B in bases]
        sub_maps, quot_maps = [], []
        for (s, t), M in zip(self.quiver.arrows, C.maps):
            X = (inverses[t] @ M @ frames[s]) % q
            if X[k[t] :, : k[s]].any():
                raise InternalInconsistency("subspaces are not arrow-stable")
            sub_maps.append(X[: k[t], : k[s]])
            quot_maps.append(X[k[t] :, k[s] :])
        sub = Rep(tuple(k), tuple(sub_maps))
        quot = Rep(tuple(d - x for d, x in zip(C.dim, k)), tuple(quot_maps))
        return sub, quot

    def sub_quotient_classes(self, w: SubobjectWitness) -> tuple[IsoClass, IsoClass]:
        sub, quot = self.sub_quotient_reps(w.parent, w.bases)
        return self.iso_class_of(sub), self.iso_class_of(quot)

    def census(self, C: IsoClass) -> Counter:
        """Counter of (quotient class, subobject class) over all subobjects of C."""
        out = self._census.get(C)
        if out is not None:
            return out
        q = self.q
        rep = self.canonical_rep(C)
        spaces = [self._vertex_spaces(d) for d in rep.dim]
        blocks: dict = {}
        out = Counter()
        for choice in self._stable_choices(rep):
            sub_code = quot_code = 0
            for a, ((s, t), M) in enumerate(zip(self.quiver.arrows, rep.maps)):
                key = (a, choice[s], choice[t])
                blk = blocks.get(key)
                if blk is None:
                    Ss, St = spaces[s][choice[s]], spaces[t][choice[t]]
                    sub = (M @ Ss.basis)[St.pivots] % q
                    quot = (St.proj @ M[:, Ss.free]) % q
                    blk = (_digits(sub, q), sub.size, _digits(quot, q), quot.size)
                    blocks[key] = blk
                sub_code = sub_code * q ** blk[1] + blk[0]
                quot_code = quot_code * q ** blk[3] + blk[2]
            sdim = tuple(spaces[v][i].k for v, i in enumerate(choice))
            qdim = tuple(d - k for d, k in zip(rep.dim, sdim))
            sub_cls = IsoClass(sdim, int(self._table(sdim).labels[sub_code]))
            quot_cls = IsoClass(qdim, int(self._table(qdim).labels[quot_code]))
            out[(quot_cls, sub_cls)] += 1
        self._census[C] = out
        return out

    def hall_number(self, A: IsoClass, B: IsoClass, C: IsoClass) -> int:
        """Number of subobjects M of C with M ~ B and C/M ~ A."""
        if tuple(a + b for a, b in zip(A.dim, B.dim)) != C.dim:
            return 0
        return self.census(C).get((A, B), 0)

    def strict_filtrations(self, A, n: int) -> Iterator[list[IsoClass]]:
        """Subquotient sequences (L_1/L_2, ..., L_n) over strict chains 0 < L_n < ... < L_1 = A."""
        rep = self._as_rep(A)
        if n < 1 or sum(rep.dim) == 0:
            return
        if n == 1:
            yield [self.iso_class_of(rep)]
            return
        total = sum(rep.dim)
        for w in self.subobjects(rep):
            k = sum(w.dim)
            if k == 0 or k == total:
                continue
            sub, quot = self.sub_quotient_reps(rep, w.bases)
            top = self.iso_class_of(quot)
            for tail in self.strict_filtrations(sub, n - 1):
                yield [top] + tail

    # -- morphisms with prescribed kernel and cokernel -----------------------

    def kernel_cokernel_census(self, B: IsoClass, A: IsoClass) -> Counter:
        """Counter of (Ker, Coker) classes over every morphism B -> A."""
        key = (B, A)
        out = self._kc.get(key)
        if out is not None:
            return out
        q = self.q
        basis = self.hom_basis(B, A)
        if q ** len(basis) > self.hom_budget:
            raise CapExceeded(f"|Hom| = {q}^{len(basis)} exceeds the enumeration budget")
        Brep, Arep = self.canonical_rep(B), self.canonical_rep(A)
        out = Counter()
        for coeffs in itertools.product(range(q), repeat=len(basis)):
            phi = []
            for i in range(self.n):
                m = np.zeros((A.dim[i], B.dim[i]), dtype=np.int64)
                for c, f in zip(coeffs, basis):
                    if c:
                        m = m + c * f[i]
                phi.append(m % q)
            out[self.kernel_cokernel(Brep, Arep, phi)] += 1
        self._kc[key] = out
        return out

    def kernel_cokernel(self, B: Rep, A: Rep, phi) -> tuple[IsoClass, IsoClass]:
        q = self.q
        ker_bases, im_bases = [], []
        for i, f in enumerate(phi):
            if B.dim[i] == 0:
                ker_bases.append(np.zeros((0, 0), dtype=np.int64))
            else:
                ker_bases.append(solve_linear_space(f, B.dim[i], q).T.copy())
            if A.dim[i] == 0 or B.dim[i] == 0:
                im_bases.append(np.zeros((A.dim[i], 0), dtype=np.int64))
            else:
                R, piv = rref(f.T, q)
                im_bases.append(R[: len(piv)].T.copy())
        ker, _ = self.sub_quotient_reps(B, ker_bases)
        _, coker = self.sub_quotient_reps(A, im_bases)
        return self.iso_class_of(ker), self.iso_class_of(coker)

    def hom_with_ker_coker_count(self, B: IsoClass, A: IsoClass, N: IsoClass, L: IsoClass) -> int:
        return self.kernel_cokernel_census(B, A).get((N, L), 0)
