"""Silting mutation through minimal approximation triangles, and bounded interval enumeration."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import gf
from .complexes import (
    ChainMap,
    HomSpace,
    ProjComplex,
    cocone,
    compose,
    cone,
    direct_sum,
    indecomposables_isomorphic,
    minimize,
    shift,
    stalk,
)
from .krull_schmidt import decompose, end_algebra
from .silting import g_matrix, integer_det, silting_geq

log = logging.getLogger(__name__)


class BoundExceeded(RuntimeError):
    def __init__(self, message: str, graph=None):
        super().__init__(message)
        self.graph = graph


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# radical morphisms between indecomposable summands


class RadicalCache:
    """Bases of rad(Y_k, Y_j) for indecomposable, pairwise non-isomorphic Y's."""

    def __init__(self):
        self._end: dict[int, list[ChainMap]] = {}
        self._hom: dict[tuple[int, int], list[ChainMap]] = {}

    def radical(self, Yk: ProjComplex, Yj: ProjComplex) -> list[ChainMap]:
        if Yk is Yj:
            key = id(Yk)
            if key not in self._end:
                E = end_algebra(Yk)
                self._end[key] = [_combine_maps(E.maps, E.radical[:, c], Yk, Yk) for c in range(E.radical.shape[1])]
            return self._end[key]
        key = (id(Yk), id(Yj))
        if key not in self._hom:
            self._hom[key] = HomSpace(Yk, Yj, 0).basis
        return self._hom[key]


def _combine_maps(maps, coeffs, X, Y) -> ChainMap:
    out = ChainMap(X, Y, {})
    for f, c in zip(maps, coeffs):
        if c:
            out = out + f.scale(int(c))
    return out


def _stack_rows(X: ProjComplex, Ys: list[ProjComplex], maps: list[ChainMap]) -> ChainMap:
    """(f_1; ...; f_k): X -> Y_1 + ... + Y_k."""
    target = direct_sum(Ys, algebra=X.algebra)
    d = X.algebra.dim
    comps = {}
    for t in X.degrees:
        rows = len(target.term(t))
        if not rows:
            continue
        m = np.zeros((rows, len(X.term(t)), d), dtype=np.int64)
        r0 = 0
        for Y, f in zip(Ys, maps):
            h = len(Y.term(t))
            if h:
                m[r0 : r0 + h] = f.comp(t)
            r0 += h
        comps[t] = m
    return ChainMap(X, target, comps)


def _stack_cols(Ys: list[ProjComplex], X: ProjComplex, maps: list[ChainMap]) -> ChainMap:
    """(g_1, ..., g_k): Y_1 + ... + Y_k -> X."""
    source = direct_sum(Ys, algebra=X.algebra)
    d = X.algebra.dim
    comps = {}
    for t in source.degrees:
        rows = len(X.term(t))
        if not rows:
            continue
        m = np.zeros((rows, len(source.term(t)), d), dtype=np.int64)
        c0 = 0
        for Y, g in zip(Ys, maps):
            w = len(Y.term(t))
            if w:
                m[:, c0 : c0 + w] = g.comp(t)
            c0 += w
        comps[t] = m
    return ChainMap(source, X, comps)


@dataclass
class Approximation:
    map: ChainMap
    multiplicities: list[int]  # copies of each Y_j used


def _quotient_basis(H: HomSpace, sub: list[ChainMap]) -> list[ChainMap]:
    p = H.source.algebra.p
    if H.dim == 0:
        return []
    if sub:
        S = np.stack([H.coords(f) for f in sub], axis=1)
    else:
        S = np.zeros((H.dim, 0), dtype=np.int64)
    keep = gf.complement_columns(S, np.eye(H.dim, dtype=np.int64), p)
    basis = H.basis
    return [basis[k] for k in keep]


def left_approximation(X: ProjComplex, Ys: list[ProjComplex], minimal: bool = True, cache: RadicalCache | None = None) -> Approximation:
    """f: X -> Y' in add(Y) with Hom(f, Y) onto; minimal uses Hom(X, Y_j) modulo radical composites."""
    cache = cache or RadicalCache()
    homs = [HomSpace(X, Y, 0) for Y in Ys]
    chosen_maps, targets, mult = [], [], []
    for j, Yj in enumerate(Ys):
        if not minimal:
            picks = homs[j].basis
        else:
            sub = []
            for k, Yk in enumerate(Ys):
                if homs[k].dim == 0:
                    continue
                rads = cache.radical(Yk, Yj)
                for h in homs[k].basis:
                    for g in rads:
                        sub.append(compose(g, h))
            picks = _quotient_basis(homs[j], sub)
        mult.append(len(picks))
        for f in picks:
            chosen_maps.append(f)
            targets.append(Yj)
    return Approximation(_stack_rows(X, targets, chosen_maps), mult)


def right_approximation(X: ProjComplex, Ys: list[ProjComplex], minimal: bool = True, cache: RadicalCache | None = None) -> Approximation:
    """g: Y'' -> X in add(Y) with Hom(Y, g) onto; minimal uses Hom(Y_j, X) modulo radical composites."""
    cache = cache or RadicalCache()
    homs = [HomSpace(Y, X, 0) for Y in Ys]
    chosen_maps, sources, mult = [], [], []
    for j, Yj in enumerate(Ys):
        if not minimal:
            picks = homs[j].basis
        else:
            sub = []
            for k, Yk in enumerate(Ys):
                if homs[k].dim == 0:
                    continue
                rads = cache.radical(Yj, Yk)
                for h in homs[k].basis:
                    for g in rads:
                        sub.append(compose(h, g))
            picks = _quotient_basis(homs[j], sub)
        mult.append(len(picks))
        for g in picks:
            chosen_maps.append(g)
            sources.append(Yj)
    return Approximation(_stack_cols(sources, X, chosen_maps), mult)


# ---------------------------------------------------------------------------
# mutation


@dataclass
class MutationStep:
    source: list[ProjComplex]
    index: tuple[int, ...]
    side: str
    approximation: ChainMap
    exchanged: list[ProjComplex]  # the new summands replacing the mutated ones
    result: list[ProjComplex]

    @property
    def complex(self) -> ProjComplex:
        return direct_sum(self.result, algebra=self.source[0].algebra)


def as_summands(T, seed: int = 0) -> list[ProjComplex]:
    if isinstance(T, ProjComplex):
        return decompose(T, seed=seed).summands()
    return list(T)


def mutate(T, index, side: str = "left", minimal: bool = True, cache: RadicalCache | None = None, seed: int = 0) -> MutationStep:
    """Mutate the basic silting object T (a complex or its list of indecomposable summands) at ``index``.

    ``index`` is a summand position (irreducible mutation) or a collection of
    positions, in which case X is their direct sum.
    """
    summands = as_summands(T, seed=seed)
    idx = (index,) if isinstance(index, (int, np.integer)) else tuple(sorted(set(index)))
    if not idx or any(not 0 <= i < len(summands) for i in idx):
        raise UsageError(f"summand index {index} out of range 1..{len(summands)}")
    if side not in ("left", "right"):
        raise UsageError("side must be 'left' or 'right'")
    X = direct_sum([summands[i] for i in idx])
    Ys = [Y for k, Y in enumerate(summands) if k not in idx]
    if side == "left":
        approx = left_approximation(X, Ys, minimal, cache)
        new = minimize(cone(approx.map).cone)
    else:
        approx = right_approximation(X, Ys, minimal, cache)
        new = minimize(cocone(approx.map))
    exchanged = [new] if len(idx) == 1 else decompose(new, seed=seed, minimal=True).summands()
    result = list(summands)
    if len(idx) == 1:
        result[idx[0]] = new
    else:
        result = Ys + exchanged
    return MutationStep(summands, idx, side, approx.map, exchanged, result)


def irreducible_mutations(T, side: str = "left", cache: RadicalCache | None = None, seed: int = 0) -> list[MutationStep]:
    summands = as_summands(T, seed=seed)
    cache = cache or RadicalCache()
    return [mutate(summands, i, side, cache=cache) for i in range(len(summands))]


def check_triangle(step: MutationStep) -> bool:
    """The composite X -> Y' -> cone is null-homotopic and the cone is the exchanged summand."""
    from .complexes import is_null_homotopic, iso_in_homotopy

    f = step.approximation
    tri = cone(f)
    if not is_null_homotopic(compose(tri.g, f)):
        return False
    target = direct_sum(step.exchanged)
    if step.side == "left":
        return iso_in_homotopy(tri.cone, target)
    return iso_in_homotopy(shift(tri.cone, -1), target)


# ---------------------------------------------------------------------------
# interval enumeration


@dataclass
class Node:
    key: tuple
    summands: list[ProjComplex] = field(repr=False)
    depth: int
    tilting: bool | None = None

    @property
    def g_vectors(self) -> list[list[int]]:
        return [list(map(int, g)) for g in g_matrix(self.summands)]


@dataclass
class MutationGraph:
    nodes: list[Node]
    edges: list[tuple[int, int, int]]  # (source node, target node, summand index)
    lower_shift: int
    complete: bool
    collisions: list[tuple[int, int]] = field(default_factory=list)

    def tilting_count(self) -> int:
        return sum(1 for v in self.nodes if v.tilting)


def _key(summands) -> tuple:
    return tuple(sorted(tuple(int(x) for x in g) for g in g_matrix(summands)))


def _same_object(a: list[ProjComplex], b: list[ProjComplex]) -> bool:
    if len(a) != len(b):
        return False
    used = set()
    for X in a:
        hit = None
        for k, Y in enumerate(b):
            if k in used or not np.array_equal(X.g_vector(), Y.g_vector()):
                continue
            if indecomposables_isomorphic(X, Y):
                hit = k
                break
        if hit is None:
            return False
        used.add(hit)
    return True


def interval_enumerate(
    P=None,
    algebra=None,
    node_bound: int = 10000,
    depth_bound: int = 64,
    tilting: bool = False,
    nu=None,
    seed: int = 0,
    raise_on_bound: bool = False,
) -> MutationGraph:
    """Breadth-first irreducible left mutation from P, keeping T with P >= T >= P[1].

    Nodes are keyed by the multiset of summand g-vectors; a key collision is
    resolved by an isomorphism test, and non-isomorphic collisions are recorded.
    """
    from .silting import tilting_check

    if P is None:
        P = [stalk(algebra, [i]) for i in range(algebra.n)]
    summands = as_summands(P, seed=seed)
    top = direct_sum(summands)
    bottom = shift(top, 1)
    cache = RadicalCache()
    nodes = [Node(_key(summands), summands, 0)]
    index = {nodes[0].key: [0]}
    edges, collisions = [], []
    queue = deque([0])
    complete = True
    while queue:
        u = queue.popleft()
        node = nodes[u]
        if node.depth >= depth_bound:
            complete = False
            continue
        for i in range(len(node.summands)):
            step = mutate(node.summands, i, "left", cache=cache)
            new = step.result
            whole = direct_sum(new)
            if not (silting_geq(top, whole) and silting_geq(whole, bottom)):
                continue
            key = _key(new)
            target = None
            for v in index.get(key, []):
                if _same_object(nodes[v].summands, new):
                    target = v
                    break
                collisions.append((v, len(nodes)))
            if target is None:
                if len(nodes) >= node_bound:
                    complete = False
                    graph = MutationGraph(nodes, edges, 1, False, collisions)
                    if raise_on_bound:
                        raise BoundExceeded(f"more than {node_bound} nodes", graph)
                    return graph
                target = len(nodes)
                nodes.append(Node(key, new, node.depth + 1))
                index.setdefault(key, []).append(target)
                queue.append(target)
                log.debug("node %d depth %d key %s", target, node.depth + 1, key)
            edges.append((u, target, i))
    if tilting:
        for v in nodes:
            whole = direct_sum(v.summands)
            v.tilting = tilting_check(whole, nu=nu, seed=seed).tilting
    return MutationGraph(nodes, edges, 1, complete, collisions)


def neighborhood_graph(T, depth: int, side: str = "left", seed: int = 0) -> MutationGraph:
    """Objects reachable by at most ``depth`` irreducible mutations, deduplicated by isomorphism.

    ``side`` is "left", "right" or "both".  No interval restriction is applied.
    """
    if side not in ("left", "right", "both"):
        raise UsageError("side must be 'left', 'right' or 'both'")
    sides = ("left", "right") if side == "both" else (side,)
    start = as_summands(T, seed=seed)
    cache = RadicalCache()
    nodes = [Node(_key(start), start, 0)]
    edges = []
    frontier = [0]
    for d in range(1, depth + 1):
        nxt = []
        for u in frontier:
            S = nodes[u].summands
            for i in range(len(S)):
                for sd in sides:
                    new = mutate(S, i, sd, cache=cache).result
                    key = _key(new)
                    hit = next((k for k, v in enumerate(nodes) if v.key == key and _same_object(v.summands, new)), None)
                    if hit is None:
                        hit = len(nodes)
                        nodes.append(Node(key, new, d))
                        nxt.append(hit)
                    edges.append((u, hit, i))
        frontier = nxt
    return MutationGraph(nodes, edges, 0, False)


def neighborhood(T, depth: int, side: str = "left", seed: int = 0) -> list[tuple[int, list[ProjComplex]]]:
    """(depth, summands) for every object within ``depth`` irreducible mutations of T."""
    g = neighborhood_graph(T, depth, side, seed)
    return [(v.depth, v.summands) for v in g.nodes]


def unimodular(summands) -> bool:
    return abs(integer_det(g_matrix(summands))) == 1


def regular_summands(algebra) -> list[ProjComplex]:
    return [stalk(algebra, [i]) for i in range(algebra.n)]
