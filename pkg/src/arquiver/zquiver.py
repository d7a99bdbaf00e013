"""Repetition quivers, their orbit quotients, and type identification.

ZDelta itself is never materialised; every query is a function of (p, q).
Finite quotients ZDelta/<g> are built on orbit representatives, the
representative of an orbit being its lexicographically smallest element
with p >= 0.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .automorphism import (SlicedAutomorphism, ZVertex, check_vertex,
                           enumerate_weakly_admissible, is_weakly_admissible,
                           orbit_window, predecessors, rho, successors)
from .dynkin import MAX_RANK, DynkinTree, build_tree
from .errors import (IdentityInput, InfiniteQuotient, NotDynkinType,
                     NotWeaklyAdmissible, ParseError, TreeMismatch)
from .linalg import solve_rational


def neighbors(tree: DynkinTree, v) -> tuple:
    """``(successors, predecessors)`` of a vertex of ZDelta."""
    v = check_vertex(tree, v)
    return successors(tree, v), predecessors(tree, v)


@dataclass(frozen=True)
class OrbitQuiver:
    """Finite valued translation quiver.

    ``arrows`` is a sorted tuple of ``(src, dst, valuation)`` with at most one
    entry per ordered pair; ``tau`` a sorted tuple of ``(x, tau x)``.
    """
    vertices: tuple
    arrows: tuple
    tau: tuple
    origin: tuple | None = None

    @classmethod
    def from_raw(cls, vertices, arrows, tau, origin=None) -> "OrbitQuiver":
        vals = Counter()
        for s, t, *rest in arrows:
            vals[(s, t)] += rest[0] if rest else 1
        tau = dict(tau)
        return cls(tuple(_sorted(vertices)),
                   tuple(_sorted((s, t, a) for (s, t), a in vals.items())),
                   tuple(_sorted(tau.items())),
                   origin)

    @cached_property
    def valuation(self) -> dict:
        return {(s, t): a for s, t, a in self.arrows}

    @cached_property
    def tau_map(self) -> dict:
        return dict(self.tau)

    @cached_property
    def tau_inverse(self) -> dict:
        return {y: x for x, y in self.tau}

    @cached_property
    def out_arrows(self) -> dict:
        out = defaultdict(list)
        for s, t, a in self.arrows:
            out[s].append((t, a))
        return out

    @cached_property
    def in_arrows(self) -> dict:
        inc = defaultdict(list)
        for s, t, a in self.arrows:
            inc[t].append((s, a))
        return inc

    def a(self, x, y) -> int:
        return self.valuation.get((x, y), 0)

    @property
    def has_loops(self) -> bool:
        return any(s == t for s, t, _ in self.arrows)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = defaultdict(set)
        for s, t, _ in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        for x, y in self.tau:
            adj[x].add(y)
            adj[y].add(x)
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def raw(self) -> tuple:
        return list(self.vertices), [list(a) for a in self.arrows], list(self.tau)

    def to_json(self) -> str:
        return json.dumps({
            "vertices": [_label(v) for v in self.vertices],
            "arrows": [{"src": _label(s), "dst": _label(t), "val": a}
                       for s, t, a in self.arrows],
            "tau": [[_label(x), _label(y)] for x, y in self.tau],
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "OrbitQuiver":
        try:
            d = json.loads(text)
            return cls.from_raw(d["vertices"],
                                [(a["src"], a["dst"], a.get("val", 1)) for a in d["arrows"]],
                                [tuple(p) for p in d["tau"]])
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"not an orbit quiver document: {exc}") from None

    def to_dot(self, name: str = "Gamma") -> str:
        ids = {v: f"v{i}" for i, v in enumerate(self.vertices)}
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  {ids[v]} [label="{_label(v)}"];')
        for s, t, a in self.arrows:
            extra = f' [label="{a}"]' if a != 1 else ""
            lines.append(f"  {ids[s]} -> {ids[t]}{extra};")
        for x, y in self.tau:
            lines.append(f"  {ids[x]} -> {ids[y]} [style=dashed, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _label(v) -> str:
    return str(v) if isinstance(v, ZVertex) else str(v)


def _sorted(items):
    items = list(items)
    try:
        return sorted(items)
    except TypeError:
        return sorted(items, key=repr)


# --- quotients ---------------------------------------------------------------

def orbit_representative(g: SlicedAutomorphism, v: ZVertex) -> ZVertex:
    _, s = g.period
    return min(w for _, w in orbit_window(g, ZVertex(*v), 0, abs(s) - 1))


def orbit_count(g: SlicedAutomorphism) -> int:
    """Number of <g>-orbits; the action is free for weakly admissible g."""
    c, s = g.period
    return len(g.tree.vertices) * abs(s) // c


def orbit_quotient(tree: DynkinTree, g: SlicedAutomorphism) -> OrbitQuiver:
    if g.tree != tree:
        raise TreeMismatch(f"{g!r} does not act on Z{tree.name}")
    if g.is_identity:
        raise IdentityInput("the trivial group has infinitely many orbits")
    if not is_weakly_admissible(g):
        raise NotWeaklyAdmissible(f"{g!r} does not generate a weakly admissible group")
    _, s = g.period
    if s == 0:
        raise InfiniteQuotient(f"{g!r} has finite order")
    rep = {}
    for p in range(abs(s)):
        for q in tree.vertices:
            v = ZVertex(p, q)
            rep[v] = orbit_representative(g, v)
    verts = sorted(set(rep.values()))
    arrows = Counter()
    tau = {}
    for x in verts:
        for y in successors(tree, x):
            arrows[(x, orbit_representative(g, y))] += 1
        tau[x] = orbit_representative(g, ZVertex(x.p - 1, x.q))
    return OrbitQuiver(tuple(verts),
                       tuple(sorted((s_, t, a) for (s_, t), a in arrows.items())),
                       tuple(sorted(tau.items())),
                       (tree, g))


# --- validation --------------------------------------------------------------

def validate_translation_quiver(quiver, arrows=None, tau=None) -> list:
    """List every violated translation-quiver law; empty means valid.

    Accepts an :class:`OrbitQuiver` or raw ``(vertices, arrows, tau)`` where
    arrows are ``(src, dst)`` or ``(src, dst, valuation)``.
    """
    if isinstance(quiver, OrbitQuiver):
        vertices, arrows, tau = quiver.raw()
    else:
        vertices = quiver
    vertices = list(vertices)
    vset = set(vertices)
    problems = []
    if len(vset) != len(vertices):
        problems.append("repeated vertex")

    val = {}
    for arrow in arrows:
        s, t, *rest = arrow
        a = rest[0] if rest else 1
        if s not in vset or t not in vset:
            problems.append(f"arrow {s}->{t} uses an unknown vertex")
            continue
        if not isinstance(a, int) or a < 1:
            problems.append(f"bad valuation {a!r} on {s}->{t}")
            continue
        if (s, t) in val:
            problems.append(f"double arrow {s}->{t}")
            val[(s, t)] += a
        else:
            val[(s, t)] = a
        if s == t and a >= 2:
            problems.append(f"loop valuation >= 2 at {s}")

    tau = dict(tau)
    if set(tau) != vset or set(tau.values()) != vset:
        problems.append("tau is not a bijection of the vertex set")
        return problems

    succ = defaultdict(set)
    pred = defaultdict(set)
    for s, t in val:
        succ[s].add(t)
        pred[t].add(s)
    for x in vertices:
        if succ[tau[x]] != pred[x]:
            problems.append(f"translation law at {x}")
    for (s, t), a in sorted(val.items(), key=repr):
        if val.get((tau[t], s), 0) != a:
            problems.append(f"valuation symmetry at {s}->{t}")
        if s == t and tau[s] != s:
            problems.append(f"loop at non-tau-fixed vertex {s}")
    return problems


# --- identification ----------------------------------------------------------

def subadditive_function(quiver: OrbitQuiver):
    """Solve 2 l(x) - sum_y a_xy l(y) = 2 for a tau-invariant ``l``.

    Returns a dict vertex -> Fraction, ``None`` when the system has no
    solution, or ``"singular"`` when it does not determine ``l``.
    """
    orbit_of, orbits = {}, []
    for v in quiver.vertices:
        if v in orbit_of:
            continue
        k = len(orbits)
        w = v
        while w not in orbit_of:
            orbit_of[w] = k
            w = quiver.tau_map[w]
        orbits.append(v)
    n = len(orbits)
    mat = [[Fraction(2 if i == j else 0) for j in range(n)] for i in range(n)]
    for i, x in enumerate(orbits):
        for y, a in quiver.out_arrows.get(x, ()):
            mat[i][orbit_of[y]] -= a
    sol = solve_rational(mat, [Fraction(2)] * n)
    if sol is None or sol == "singular":
        return sol
    return {v: sol[orbit_of[v]] for v in quiver.vertices}


def _signature(q: OrbitQuiver, v):
    orbit_len, w = 1, q.tau_map[v]
    while w != v:
        orbit_len += 1
        w = q.tau_map[w]
    return (tuple(sorted(a for t, a in q.out_arrows.get(v, ()) if t != v)),
            tuple(sorted(a for s, a in q.in_arrows.get(v, ()) if s != v)),
            q.a(v, v), orbit_len)


def _relations(q: OrbitQuiver, v):
    """Labelled links of ``v``: arrows both ways and tau both ways."""
    rel = [("out", a, t) for t, a in q.out_arrows.get(v, ()) if t != v]
    rel += [("in", a, s) for s, a in q.in_arrows.get(v, ()) if s != v]
    rel.append(("tau", 0, q.tau_map[v]))
    rel.append(("taui", 0, q.tau_inverse[v]))
    return rel


def find_isomorphism(q1: OrbitQuiver, q2: OrbitQuiver):
    """An isomorphism of valued translation quivers ``q1 -> q2``, or ``None``.

    Anchored backtracking: fix the image of one vertex, then extend along
    arrows and tau, checking all links to already placed vertices.
    """
    if len(q1.vertices) != len(q2.vertices):
        return None
    if sorted(a for *_, a in q1.arrows) != sorted(a for *_, a in q2.arrows):
        return None
    sig1 = {v: _signature(q1, v) for v in q1.vertices}
    sig2 = {v: _signature(q2, v) for v in q2.vertices}
    if Counter(sig1.values()) != Counter(sig2.values()):
        return None
    if not q1.vertices:
        return {}
    if not q1.is_connected():
        raise ValueError("find_isomorphism expects a connected quiver")

    # BFS order on q1 with the link used to reach each vertex
    start = q1.vertices[0]
    order, link, seen = [start], {}, {start}
    todo = deque([start])
    while todo:
        u = todo.popleft()
        for kind, a, w in _relations(q1, u):
            if w not in seen:
                seen.add(w)
                link[w] = (u, kind, a)
                order.append(w)
                todo.append(w)

    rel2 = {v: defaultdict(list) for v in q2.vertices}
    for v in q2.vertices:
        for kind, a, w in _relations(q2, v):
            rel2[v][(kind, a)].append(w)

    def consistent(v, w, m):
        if q1.a(v, v) != q2.a(w, w):
            return False
        for kind, a, x in _relations(q1, v):
            if x in m and m[x] not in rel2[w][(kind, a)]:
                return False
        # links of w into placed images must come from links of v
        placed = {m[x]: x for x in m}
        for kind, a, y in _relations(q2, w):
            if y in placed and (kind, a, placed[y]) not in _relations(q1, v):
                return False
        return True

    def extend(i, m, used):
        if i == len(order):
            return dict(m)
        v = order[i]
        u, kind, a = link[v]
        for w in rel2[m[u]][(kind, a)]:
            if w in used or sig2[w] != sig1[v] or not consistent(v, w, m):
                continue
            m[v] = w
            used.add(w)
            found = extend(i + 1, m, used)
            if found is not None:
                return found
            del m[v]
            used.discard(w)
        return None

    for w0 in q2.vertices:
        if sig2[w0] == sig1[start] and q1.a(start, start) == q2.a(w0, w0):
            found = extend(1, {start: w0}, {w0})
            if found is not None:
                return found
    return None


def _candidates(n_vertices: int, has_loops: bool):
    if has_loops:
        if 2 * n_vertices <= MAX_RANK:
            t = build_tree("A", 2 * n_vertices)
            yield t, rho(t)
        return
    trees = [build_tree("A", n) for n in range(1, min(2 * n_vertices, MAX_RANK) + 1)]
    trees += [build_tree("D", n) for n in range(4, min(n_vertices, MAX_RANK) + 1)]
    trees += [build_tree("E", n) for n in range(6, min(n_vertices, 8) + 1)]
    for t in trees:
        n = len(t.vertices)
        r_max = 2 * n_vertices // n + 1
        for g in enumerate_weakly_admissible(t, r_max):
            if orbit_count(g) == n_vertices:
                yield t, g


def identify_type(quiver: OrbitQuiver) -> tuple:
    """Find ``(Delta, g)`` with ``ZDelta/<g>`` isomorphic to ``quiver``.

    The tau-invariant subadditive function is computed first; a quiver with
    no positive integral solution cannot be the AR-quiver of a finite
    triangulated category and is rejected without search.  Quivers with
    loops are only compared against A_{2n}/rho, the one quotient carrying
    loops.
    """
    problems = validate_translation_quiver(quiver)
    if problems:
        raise NotDynkinType("not a valid translation quiver: " + "; ".join(problems))
    if not quiver.vertices or not quiver.is_connected():
        raise NotDynkinType("quiver is empty or not connected")
    ell = subadditive_function(quiver)
    if ell is None:
        raise NotDynkinType("no tau-invariant subadditive function exists")
    if ell != "singular" and any(x <= 0 or x.denominator != 1 for x in ell.values()):
        raise NotDynkinType("subadditive function is not positive integral")
    for tree, g in _candidates(len(quiver.vertices), quiver.has_loops):
        cand = orbit_quotient(tree, g)
        if find_isomorphism(quiver, cand) is not None:
            return tree, g
    raise NotDynkinType("no quotient ZDelta/G matches this quiver")
