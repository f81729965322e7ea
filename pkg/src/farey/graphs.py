"""
Modular graphs: bipartite ribbon graphs realizing quotients of the Farey tree.

A graph lives on half-edges. ``alpha`` pairs the two half-edges of an edge,
``sigma`` rotates the half-edges around each vertex, and ``vtype`` marks the
side of each half-edge: ``circle`` (the order-2 end) or ``bullet`` (the
order-3 end). Every constructor here numbers edge e with half-edges 2e
(circle) and 2e+1 (bullet).

Infinite-index quotients are stored as their finite core. A vertex missing
slots carries one stub half-edge; the missing slots follow the stub in the
rotation and stand for the Farey tree branches attached there.

Turn convention: at a bullet, leaving through sigma(entry) reads L and through
sigma²(entry) reads LL. Faces are the orbits of sigma∘alpha.
"""

from __future__ import annotations
import json
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from sympy.combinatorics import Permutation, PermutationGroup

from farey.errors import (
    HasStubs,
    NotAdjacent,
    NotAnAction,
    NotClosed,
    NotTransitive,
    ParseError,
)
from farey.words import IDENTITY, L, LL, S, Word, invert, normalize

logger = logging.getLogger(__name__)

CIRCLE = "circle"
BULLET = "bullet"

# Slots of a saturated vertex
FULL_DEGREE = {CIRCLE: 2, BULLET: 3}

SCHEMA_VERSION = 1

PermutationLike = Union[Permutation, Sequence[int]]


@dataclass
class _Layout:
    """Vertex rotations of a graph in slot order."""
    cycles: List[Tuple[int, ...]]
    full: List[int]
    vertex: List[int]
    position: List[int]
    edges: List[Tuple[int, int]]  # (circle half-edge, bullet half-edge)
    edge_of: List[int]


@dataclass(frozen=True)
class RibbonGraph:
    """
    A modular graph on half-edges 0..n-1.

    Construct through from_permutation_pair(), fold_subgroup_graph(),
    farey_ball() or from_json(); the constructor validates the covering
    conditions and raises ValueError when they fail.
    """
    alpha: Tuple[int, ...]
    sigma: Tuple[int, ...]
    vtype: Tuple[str, ...]
    base: Optional[int] = None
    stubs: FrozenSet[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "vtype", tuple(self.vtype))
        object.__setattr__(self, "stubs", frozenset(self.stubs))
        _validate(self)

    @property
    def half_edges(self) -> int:
        return len(self.alpha)

    @property
    def edge_count(self) -> int:
        return len(self.alpha) // 2

    @property
    def is_finite(self) -> bool:
        return not self.stubs

    @cached_property
    def layout(self) -> _Layout:
        n = len(self.sigma)
        vertex = [-1] * n
        position = [0] * n
        cycles: List[Tuple[int, ...]] = []
        full: List[int] = []
        for h in range(n):
            if vertex[h] != -1:
                continue
            cycle = [h]
            x = self.sigma[h]
            while x != h:
                cycle.append(x)
                x = self.sigma[x]
            stub = next((x for x in cycle if x in self.stubs), None)
            if stub is not None:
                # slot order starts right after the gap
                i = cycle.index(stub)
                cycle = cycle[i + 1:] + cycle[:i + 1]
                full.append(FULL_DEGREE[self.vtype[h]])
            else:
                full.append(len(cycle))
            for pos, x in enumerate(cycle):
                vertex[x] = len(cycles)
                position[x] = pos
            cycles.append(tuple(cycle))

        edges: List[Tuple[int, int]] = []
        edge_of = [-1] * n
        for h in range(n):
            if edge_of[h] != -1:
                continue
            pair = (h, self.alpha[h]) if self.vtype[h] == CIRCLE else (self.alpha[h], h)
            edge_of[h] = edge_of[self.alpha[h]] = len(edges)
            edges.append(pair)
        return _Layout(cycles, full, vertex, position, edges, edge_of)

    def vertices(self) -> List[Tuple[int, ...]]:
        """Vertex rotations, each listed in slot order."""
        return list(self.layout.cycles)

    def vertex_type(self, v: int) -> str:
        return self.vtype[self.layout.cycles[v][0]]

    def advance(self, h: int, k: int) -> Optional[int]:
        """The half-edge k slots after h at its vertex, or None inside a gap."""
        lay = self.layout
        v = lay.vertex[h]
        pos = (lay.position[h] + k) % lay.full[v]
        cycle = lay.cycles[v]
        return cycle[pos] if pos < len(cycle) else None

    @property
    def base_edge(self) -> int:
        return self.layout.edge_of[self.base] if self.base is not None else 0

    def edge_tables(self) -> Tuple[List[Optional[int]], List[Optional[int]]]:
        """
        Right action of S and L on edges.

        Returns:
            (s, l) where s[e] and l[e] are edge indices, or None when the step
            leaves the core
        """
        lay = self.layout
        s: List[Optional[int]] = []
        l: List[Optional[int]] = []
        for circle, bullet in lay.edges:
            hs = self.advance(circle, 1)
            hl = self.advance(bullet, 1)
            s.append(lay.edge_of[hs] if hs is not None else None)
            l.append(lay.edge_of[hl] if hl is not None else None)
        return s, l


def _validate(g: RibbonGraph):
    n = len(g.alpha)
    if n == 0 or n % 2:
        raise ValueError("a modular graph needs at least one edge")
    if len(g.sigma) != n or len(g.vtype) != n:
        raise ValueError("alpha, sigma and vtype must have the same length")
    if sorted(g.sigma) != list(range(n)):
        raise ValueError("sigma is not a permutation")
    for h in range(n):
        a = g.alpha[h]
        if not 0 <= a < n or a == h or g.alpha[a] != h:
            raise ValueError("alpha is not a fixed-point-free involution")
        if g.vtype[h] not in FULL_DEGREE:
            raise ValueError(f"unknown vertex type {g.vtype[h]!r}")
        if g.vtype[h] == g.vtype[a]:
            raise ValueError(f"edge at half-edge {h} joins two {g.vtype[h]} vertices")
        if g.vtype[g.sigma[h]] != g.vtype[h]:
            raise ValueError(f"vertex through half-edge {h} mixes types")
    if any(not 0 <= x < n for x in g.stubs):
        raise ValueError("stub outside the half-edge range")
    if g.base is not None and not 0 <= g.base < n:
        raise ValueError("base outside the half-edge range")

    lay = g.layout
    for v, cycle in enumerate(lay.cycles):
        kind = g.vtype[cycle[0]]
        stubs = [x for x in cycle if x in g.stubs]
        if len(stubs) > 1:
            raise ValueError(f"vertex {v} carries more than one stub")
        if stubs:
            if len(cycle) >= FULL_DEGREE[kind]:
                raise ValueError(f"saturated {kind} vertex {v} carries a stub")
        elif len(cycle) not in (1, FULL_DEGREE[kind]):
            raise ValueError(f"{kind} vertex {v} has degree {len(cycle)}")

    seen = {0}
    queue = deque([0])
    while queue:
        h = queue.popleft()
        for x in (g.alpha[h], g.sigma[h]):
            if x not in seen:
                seen.add(x)
                queue.append(x)
    if len(seen) != n:
        raise ValueError("graph is not connected")


def _from_tables(s: Sequence[Optional[int]], l: Sequence[Optional[int]], base_edge: int = 0) -> RibbonGraph:
    """Build the standard half-edge layout from partial S and L tables on edges."""
    n = len(s)
    alpha = [h ^ 1 for h in range(2 * n)]
    sigma = [0] * (2 * n)
    vtype = [CIRCLE, BULLET] * n
    stubs = set()
    inverse_l = {y: x for x, y in enumerate(l) if y is not None}
    for e in range(n):
        if s[e] is None:
            sigma[2 * e] = 2 * e
            stubs.add(2 * e)
        else:
            sigma[2 * e] = 2 * s[e]
        if l[e] is not None:
            sigma[2 * e + 1] = 2 * l[e] + 1
        else:
            # e ends an open chain; close the rotation back to its start
            a = e
            while a in inverse_l:
                a = inverse_l[a]
            sigma[2 * e + 1] = 2 * a + 1
            stubs.add(2 * e + 1)
    return RibbonGraph(alpha, sigma, vtype, base=2 * base_edge, stubs=frozenset(stubs))


def _array_form(p: PermutationLike) -> List[int]:
    if isinstance(p, Permutation):
        return list(p.array_form)
    return [int(x) for x in p]


def from_permutation_pair(sigma_s: PermutationLike, sigma_l: PermutationLike) -> RibbonGraph:
    """
    Modular graph of a transitive action of PSL(2,Z) on d points.

    Point i becomes edge i; circles are the orbits of sigma_s and bullets the
    orbits of sigma_l. The base is edge 0.

    Raises:
        NotAnAction: If sigma_s² or sigma_l³ is not the identity
        NotTransitive: If the two permutations do not act transitively
    """
    s = _array_form(sigma_s)
    l = _array_form(sigma_l)
    d = len(s)
    if d == 0 or len(l) != d:
        raise NotAnAction("permutations must act on the same nonempty set")
    if sorted(s) != list(range(d)) or sorted(l) != list(range(d)):
        raise NotAnAction("input is not a pair of permutations")
    if any(s[s[i]] != i for i in range(d)):
        raise NotAnAction("sigmaS does not square to the identity")
    if any(l[l[l[i]]] != i for i in range(d)):
        raise NotAnAction("sigmaL does not cube to the identity")
    if d > 1 and not PermutationGroup([Permutation(s), Permutation(l)]).is_transitive():
        raise NotTransitive(f"action on {d} points is not transitive")
    return _from_tables(s, l)


def parse_permutation(text: str, degree: Optional[int] = None) -> List[int]:
    """
    Parse 1-based cycle notation such as "(1 2)(3 4)" into 0-based array form.

    "()", "1" and the empty string denote the identity.

    Raises:
        ParseError: On malformed text or repeated points
    """
    body = text.strip()
    cycles: List[List[int]] = []
    if body not in ("", "1", "()"):
        if not (body.startswith("(") and body.endswith(")")):
            raise ParseError(f"permutation must be in cycle notation: {text!r}", token=body[:1])
        for chunk in body[1:-1].split(")("):
            points = chunk.replace(",", " ").split()
            try:
                cycles.append([int(x) - 1 for x in points])
            except ValueError:
                bad = next(x for x in points if not x.lstrip("-").isdigit())
                raise ParseError(f"not a point: {bad!r}", token=bad)
    flat = [x for c in cycles for x in c]
    if len(flat) != len(set(flat)) or any(x < 0 for x in flat):
        raise ParseError(f"cycles must hold distinct positive points: {text!r}", token=text)
    size = max([degree or 0] + [x + 1 for x in flat] + [1])
    return list(Permutation(cycles, size=size).array_form)


def faces(g: RibbonGraph) -> List[Tuple[int, ...]]:
    """
    Orbits of sigma∘alpha, each starting at its least half-edge.

    Raises:
        HasStubs: If the graph carries Farey branch stubs
    """
    if g.stubs:
        raise HasStubs("faces need a finite graph")
    seen = set()
    result = []
    for h in range(g.half_edges):
        if h in seen:
            continue
        orbit = [h]
        seen.add(h)
        x = g.sigma[g.alpha[h]]
        while x != h:
            orbit.append(x)
            seen.add(x)
            x = g.sigma[g.alpha[x]]
        result.append(tuple(orbit))
    return result


def face_degree(g: RibbonGraph, face: Sequence[int]) -> int:
    """Number of bullet visits along a face."""
    return sum(1 for h in face if g.vtype[h] == BULLET)


@dataclass(frozen=True)
class Passport:
    """Combinatorial invariants of a finite modular graph."""
    edge_count: int
    genus: int
    punctures: int
    circ_degrees: Tuple[int, ...]
    bullet_degrees: Tuple[int, ...]
    face_degrees: Tuple[int, ...]
    monodromy_order: int
    circ_orbifolds: int = 0
    bullet_orbifolds: int = 0

    @property
    def euler_characteristic(self) -> int:
        return len(self.circ_degrees) + len(self.bullet_degrees) - self.edge_count + len(self.face_degrees)

    def as_dict(self) -> Dict[str, object]:
        return {
            "edgeCount": self.edge_count,
            "genus": self.genus,
            "punctures": self.punctures,
            "circDegrees": list(self.circ_degrees),
            "bulletDegrees": list(self.bullet_degrees),
            "faceDegrees": list(self.face_degrees),
            "monodromyOrder": self.monodromy_order,
            "circOrbifolds": self.circ_orbifolds,
            "bulletOrbifolds": self.bullet_orbifolds,
        }


def _degrees(g: RibbonGraph, kind: str) -> Tuple[int, ...]:
    return tuple(sorted((len(c) for c in g.vertices() if g.vtype[c[0]] == kind), reverse=True))


def monodromy_order(g: RibbonGraph) -> int:
    """Order of the group generated by the S and L actions on edges."""
    if g.stubs:
        raise HasStubs("monodromy needs a finite graph")
    s, l = g.edge_tables()
    if g.edge_count == 1:
        return 1
    return int(PermutationGroup([Permutation(s), Permutation(l)]).order())


def passport(g: RibbonGraph) -> Passport:
    """
    Passport of a finite graph; genus comes from V - E + F = 2 - 2g.

    Raises:
        HasStubs: If the graph carries Farey branch stubs
    """
    fs = faces(g)
    circ = _degrees(g, CIRCLE)
    bullet = _degrees(g, BULLET)
    chi = len(circ) + len(bullet) - g.edge_count + len(fs)
    return Passport(
        edge_count=g.edge_count,
        genus=(2 - chi) // 2,
        punctures=len(fs),
        circ_degrees=circ,
        bullet_degrees=bullet,
        face_degrees=tuple(sorted((face_degree(g, f) for f in fs), reverse=True)),
        monodromy_order=monodromy_order(g),
        circ_orbifolds=circ.count(1),
        bullet_orbifolds=bullet.count(1),
    )


@dataclass(frozen=True)
class GraphSummary:
    """Shape of any modular graph, finite or a core with stubs."""
    edge_count: int
    circ_vertices: int
    bullet_vertices: int
    stub_count: int
    circ_orbifolds: int
    bullet_orbifolds: int
    betti: int

    @property
    def is_tree(self) -> bool:
        return self.betti == 0

    def as_dict(self) -> Dict[str, int]:
        return {
            "edgeCount": self.edge_count,
            "circVertices": self.circ_vertices,
            "bulletVertices": self.bullet_vertices,
            "stubs": self.stub_count,
            "circOrbifolds": self.circ_orbifolds,
            "bulletOrbifolds": self.bullet_orbifolds,
            "betti": self.betti,
        }


def summarize(g: RibbonGraph) -> GraphSummary:
    """Vertex counts, orbifold points and first Betti number of g."""
    counts = {CIRCLE: 0, BULLET: 0}
    orbifolds = {CIRCLE: 0, BULLET: 0}
    for cycle in g.vertices():
        kind = g.vtype[cycle[0]]
        counts[kind] += 1
        if len(cycle) == 1 and cycle[0] not in g.stubs:
            orbifolds[kind] += 1
    vertices = counts[CIRCLE] + counts[BULLET]
    return GraphSummary(
        edge_count=g.edge_count,
        circ_vertices=counts[CIRCLE],
        bullet_vertices=counts[BULLET],
        stub_count=len(g.stubs),
        circ_orbifolds=orbifolds[CIRCLE],
        bullet_orbifolds=orbifolds[BULLET],
        betti=g.edge_count - vertices + 1,
    )


class _Folder:
    """
    Partial S and L tables on edges, folded through union-find.

    Edge 0 is the base. Unions keep the smaller index as representative, so
    the base never moves.
    """

    def __init__(self):
        self.parent: List[int] = []
        self.s_rel: List[Tuple[int, int]] = []
        self.l_rel: List[Tuple[int, int]] = []
        self.s_map: Dict[int, int] = {}
        self.l_map: Dict[int, int] = {}
        self.li_map: Dict[int, int] = {}
        self.removed: set = set()
        self.base = self._new_edge()

    def _new_edge(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        lo, hi = min(rx, ry), max(rx, ry)
        self.parent[hi] = lo
        return True

    def _link_s(self, x: int, y: int):
        self.s_rel.append((x, y))
        self.s_map[x] = y
        self.s_map[y] = x

    def _link_l(self, x: int, y: int):
        self.l_rel.append((x, y))
        self.l_map[x] = y
        self.li_map[y] = x

    def trace(self, w: Word) -> int:
        """Follow w from the base, growing new edges where a slot is empty."""
        e = self.find(self.base)
        for letter in w:
            if letter == S:
                nxt = self.s_map.get(e)
                if nxt is None:
                    nxt = self._new_edge()
                    self._link_s(e, nxt)
            elif letter == L:
                nxt = self.l_map.get(e)
                if nxt is None:
                    nxt = self._new_edge()
                    self._link_l(e, nxt)
            else:
                nxt = self.li_map.get(e)
                if nxt is None:
                    nxt = self._new_edge()
                    self._link_l(nxt, e)
            e = nxt
        return e

    def settle(self):
        """Merge edges until S is an involution and L has order 3 where defined."""
        passes = 0
        while True:
            passes += 1
            merged = False
            s_map: Dict[int, int] = {}
            for x, y in self.s_rel:
                x, y = self.find(x), self.find(y)
                for a, b in ((x, y), (y, x)):
                    old = s_map.get(a)
                    if old is None:
                        s_map[a] = b
                    elif old != b:
                        merged |= self.union(old, b)
            if merged:
                continue

            l_map: Dict[int, int] = {}
            li_map: Dict[int, int] = {}
            for x, y in self.l_rel:
                x, y = self.find(x), self.find(y)
                old = l_map.get(x)
                if old is None:
                    l_map[x] = y
                elif old != y:
                    merged |= self.union(old, y)
                old = li_map.get(y)
                if old is None:
                    li_map[y] = x
                elif old != x:
                    merged |= self.union(old, x)
            if merged:
                continue

            added = False
            for e in sorted(l_map):
                e2 = l_map.get(l_map[e])
                if e2 is None:
                    continue
                e3 = l_map.get(e2)
                if e3 is not None:
                    if e3 != e:
                        merged |= self.union(e3, e)
                elif e in li_map:
                    merged |= self.union(li_map[e], e2)
                else:
                    l_map[e2] = e
                    li_map[e] = e2
                    self.l_rel.append((e2, e))
                    added = True

            self.s_map, self.l_map, self.li_map = s_map, l_map, li_map
            self.s_rel = [(a, b) for a, b in s_map.items() if a <= b]
            self.l_rel = list(l_map.items())
            if not merged and not added:
                break
        logger.debug("settled after %d passes", passes)

    def _remove(self, e: int):
        t = self.s_map.pop(e, None)
        if t is not None and t != e:
            self.s_map.pop(t, None)
        y = self.l_map.pop(e, None)
        if y is not None:
            self.li_map.pop(y, None)
        x = self.li_map.pop(e, None)
        if x is not None:
            self.l_map.pop(x, None)
        self.removed.add(e)

    def roots(self) -> List[int]:
        return [i for i in range(len(self.parent)) if self.parent[i] == i and i not in self.removed]

    def prune(self):
        """Drop hanging edges: an open circle, or an open bullet of degree 1."""
        changed = True
        while changed:
            changed = False
            for e in self.roots():
                if e == self.base:
                    continue
                if e not in self.s_map or (e not in self.l_map and e not in self.li_map):
                    self._remove(e)
                    changed = True

    def tables(self) -> Tuple[List[Optional[int]], List[Optional[int]]]:
        keep = self.roots()
        index = {e: i for i, e in enumerate(keep)}
        s = [index[self.s_map[e]] if e in self.s_map else None for e in keep]
        l = [index[self.l_map[e]] if e in self.l_map else None for e in keep]
        return s, l


def fold_subgroup_graph(gens: Sequence[Word]) -> RibbonGraph:
    """
    Core of the quotient of the Farey tree by the subgroup generated by gens.

    Each generator is spelled as a path from the base edge and closed up onto
    it; edges sharing a slot are then merged until the S and L actions are
    consistent, and hanging edges are pruned. Empty slots become stubs.
    """
    folder = _Folder()
    for w in gens:
        end = folder.trace(w)
        folder.union(end, folder.base)
        folder.settle()
    folder.prune()
    s, l = folder.tables()
    logger.debug("folded %d generators into %d edges", len(gens), len(s))
    return _from_tables(s, l)


def _turn(g: RibbonGraph, entry: int, exit_: int) -> List[str]:
    lay = g.layout
    v = lay.vertex[entry]
    full = lay.full[v]
    k = (lay.position[exit_] - lay.position[entry]) % full
    if g.vtype[entry] == CIRCLE:
        return [S] if k == 1 or full == 1 else []
    if k == 2:
        return [LL]
    return [L] if k == 1 or full == 1 else []


def loop_to_word(g: RibbonGraph, loop: Sequence[int]) -> Word:
    """
    Element of PSL(2,Z) read along a closed path from the base edge.

    The loop lists exit half-edges: each entry names the half-edge through
    which the path leaves the vertex it crosses. Crossing a degree-2 circle
    adds S; turning at a bullet adds L or LL; orbifold points fold back onto
    themselves and add S or L.

    Raises:
        NotAdjacent: If an exit half-edge is not at the vertex being crossed
        NotClosed: If the path does not end on the base edge
    """
    if g.base is None:
        raise NotClosed("graph has no base half-edge")
    if not loop:
        return IDENTITY
    lay = g.layout
    raw: List[str] = []
    candidates: Tuple[int, ...] = (g.base, g.alpha[g.base])
    for step, exit_ in enumerate(loop):
        if not 0 <= exit_ < g.half_edges:
            raise NotAdjacent(f"step {step}: no half-edge {exit_}")
        v = lay.vertex[exit_]
        entry = next((h for h in candidates if lay.vertex[h] == v), None)
        if entry is None:
            raise NotAdjacent(f"step {step}: half-edge {exit_} is not at the current vertex")
        raw.extend(_turn(g, entry, exit_))
        candidates = (g.alpha[exit_],)
    if lay.edge_of[loop[-1]] != lay.edge_of[g.base]:
        raise NotClosed("path does not return to the base edge")
    return normalize(raw)


def word_to_loop(g: RibbonGraph, w: Word) -> List[int]:
    """
    Exit half-edges of the path that spells w from the base edge.

    Raises:
        NotClosed: If the path leaves the core into a Farey branch
    """
    lay = g.layout
    circle, bullet = lay.edges[g.base_edge]
    exits: List[int] = []
    for i, letter in enumerate(w):
        if letter == S:
            h = g.advance(circle, 1)
        else:
            h = g.advance(bullet, 1 if letter == L else 2)
        if h is None:
            raise NotClosed(f"{w} leaves the core at letter {i}")
        exits.append(h)
        circle, bullet = lay.edges[lay.edge_of[h]]
    return exits


def trace_word(g: RibbonGraph, w: Word, start: Optional[int] = None) -> Optional[int]:
    """Edge reached by acting with w on the base edge, or None off the core."""
    s, l = g.edge_tables()
    inverse_l = {y: x for x, y in enumerate(l) if y is not None}
    e = g.base_edge if start is None else start
    for letter in w:
        if letter == S:
            e = s[e]
        elif letter == L:
            e = l[e]
        else:
            e = inverse_l.get(e)
        if e is None:
            return None
    return e


def contains(g: RibbonGraph, w: Word) -> bool:
    """Whether w lies in the subgroup whose graph is g."""
    return trace_word(g, w) == g.base_edge


def subgroup_generators(g: RibbonGraph) -> List[Word]:
    """
    Generators of the subgroup read off g.

    A breadth-first spanning tree from the base edge gives a path word for
    every edge; each S or L step outside the tree closes a loop.
    """
    s, l = g.edge_tables()
    inverse_l: Dict[int, int] = {y: x for x, y in enumerate(l) if y is not None}
    base = g.base_edge
    paths: Dict[int, Word] = {base: IDENTITY}
    queue = deque([base])
    while queue:
        e = queue.popleft()
        for letter, target in ((S, s[e]), (L, l[e]), (LL, inverse_l.get(e))):
            if target is None or target in paths:
                continue
            paths[target] = paths[e] * Word((letter,))
            queue.append(target)

    gens: List[Word] = []
    for e in sorted(paths):
        for letter, target in ((S, s[e]), (L, l[e])):
            if target is None:
                continue
            w = paths[e] * Word((letter,)) * invert(paths[target])
            if not w.is_identity and w not in gens and invert(w) not in gens:
                gens.append(w)
    return gens


def _relabel(s: Sequence[Optional[int]], l: Sequence[Optional[int]], start: int):
    inverse_l = {y: x for x, y in enumerate(l) if y is not None}
    order = {start: 0}
    queue = deque([start])
    while queue:
        e = queue.popleft()
        for target in (s[e], l[e], inverse_l.get(e)):
            if target is not None and target not in order:
                order[target] = len(order)
                queue.append(target)
    by_new = sorted(order, key=order.get)
    new_s = [order[s[e]] if s[e] is not None else None for e in by_new]
    new_l = [order[l[e]] if l[e] is not None else None for e in by_new]
    return new_s, new_l


def _code(s, l) -> Tuple[Tuple[int, int], ...]:
    return tuple((-1 if a is None else a, -1 if b is None else b) for a, b in zip(s, l))


def canonical_form(g: RibbonGraph, based: bool = False) -> RibbonGraph:
    """
    Least breadth-first relabeling of g.

    With based=True only the base edge may start the search, so equal results
    mean equal subgroups; otherwise every edge is tried and equal results
    mean conjugate subgroups.
    """
    s, l = g.edge_tables()
    starts = [g.base_edge] if based else range(g.edge_count)
    best = None
    for start in starts:
        new_s, new_l = _relabel(s, l, start)
        code = _code(new_s, new_l)
        if best is None or code < best[0]:
            best = (code, new_s, new_l)
    return _from_tables(best[1], best[2])


def is_isomorphic(g1: RibbonGraph, g2: RibbonGraph, based: bool = False) -> bool:
    """Whether g1 and g2 agree up to relabeling (and base, when based)."""
    if g1.edge_count != g2.edge_count or len(g1.stubs) != len(g2.stubs):
        return False
    return canonical_form(g1, based) == canonical_form(g2, based)


def farey_ball(radius: int) -> RibbonGraph:
    """
    Ball of the given radius in the Farey tree around the base edge.

    Edges are base·w for normalized words w of length at most radius that do
    not start with S, so the ball grows through the bullet end of the base.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    s: List[Optional[int]] = [None]
    l: List[Optional[int]] = [None]
    layer: List[Tuple[int, Optional[str]]] = [(0, None)]
    for _ in range(radius):
        nxt = []
        for e, last in layer:
            if last == S or last is None:
                e_l, e_ll = len(s), len(s) + 1
                s.extend([None, None])
                l.extend([e_ll, e])
                l[e] = e_l
                nxt.extend([(e_l, L), (e_ll, LL)])
            else:
                f = len(s)
                s.append(None)
                l.append(None)
                s[e] = f
                s[f] = e
                nxt.append((f, S))
        layer = nxt
    return _from_tables(s, l)


def to_dict(g: RibbonGraph) -> Dict[str, object]:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "halfEdges": g.half_edges,
        "alpha": list(g.alpha),
        "sigma": list(g.sigma),
        "vtype": list(g.vtype),
        "base": g.base,
        "stubs": sorted(g.stubs),
    }


def to_json(g: RibbonGraph) -> str:
    return json.dumps(to_dict(g), sort_keys=True)


def from_json(text: str) -> RibbonGraph:
    """
    Read a graph written by to_json().

    Raises:
        ParseError: If the text is not a valid graph document
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", token=text[e.pos:e.pos + 1])
    if not isinstance(data, dict):
        raise ParseError("graph document must be a JSON object")
    version = data.get("schemaVersion", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schemaVersion {version}", token=str(version))
    try:
        g = RibbonGraph(
            alpha=data["alpha"],
            sigma=data["sigma"],
            vtype=data["vtype"],
            base=data.get("base"),
            stubs=frozenset(data.get("stubs", [])),
        )
    except KeyError as e:
        raise ParseError(f"missing field {e.args[0]!r}", token=str(e.args[0]))
    except (TypeError, ValueError) as e:
        raise ParseError(str(e))
    if data.get("halfEdges", g.half_edges) != g.half_edges:
        raise ParseError("halfEdges does not match alpha")
    return g
