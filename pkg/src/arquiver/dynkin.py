"""Simply laced Dynkin trees and the generalized type L.

Numbering and orientation are fixed once and for all; the automorphism
formulas elsewhere in the package depend on them:

    A_n : 1 -> 2 -> ... -> n
    D_n : 1 -> 2 -> ... -> n-2 <- n-1,  n -> n-2
    E_n : 1 <- 2 <- 3 -> 5 -> ... -> n,  3 -> 4
    L_n : 0 -> 1 -> ... -> n-1, with a loop flag on vertex 0
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import RankOutOfRange, UnsupportedFamily

FAMILIES = ("A", "D", "E", "L")

# enumeration bound for the infinite families
MAX_RANK = 64


@dataclass(frozen=True)
class DynkinTree:
    family: str
    rank: int
    vertices: tuple
    arrows: tuple
    loop_vertices: tuple = ()

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __repr__(self) -> str:
        return f"DynkinTree({self.name})"

    @cached_property
    def index(self) -> dict:
        """Position of each vertex label in ``vertices``."""
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def out_neighbors(self) -> dict:
        out = {v: [] for v in self.vertices}
        for s, t in self.arrows:
            out[s].append(t)
        return {v: tuple(sorted(ts)) for v, ts in out.items()}

    @cached_property
    def in_neighbors(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for s, t in self.arrows:
            inc[t].append(s)
        return {v: tuple(sorted(ss)) for v, ss in inc.items()}

    @cached_property
    def topological_order(self) -> tuple:
        # Kahn's algorithm; ties broken by label so the order is deterministic
        indeg = {v: len(self.in_neighbors[v]) for v in self.vertices}
        ready = sorted(v for v, d in indeg.items() if d == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for w in self.out_neighbors[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
                    ready.sort()
        return tuple(order)

    def adjacent(self, x, y) -> bool:
        return (x, y) in self.arrows or (y, x) in self.arrows

    def to_json(self) -> str:
        return json.dumps({
            "family": self.family,
            "rank": self.rank,
            "arrows": [list(a) for a in self.arrows],
            "loop_vertices": list(self.loop_vertices),
        }, sort_keys=True)

    def to_dot(self) -> str:
        lines = [f"digraph {self.name} {{"]
        for v in self.vertices:
            lines.append(f'  {v} [label="{v}"];')
        for s, t in self.arrows:
            lines.append(f"  {s} -> {t};")
        for v in self.loop_vertices:
            lines.append(f"  {v} -> {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _check_rank(family: str, rank: int) -> None:
    if family not in FAMILIES:
        raise UnsupportedFamily(f"unknown family {family!r}")
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise RankOutOfRange(f"rank must be an integer, got {rank!r}")
    lo, hi = {"A": (1, MAX_RANK), "D": (4, MAX_RANK),
              "E": (6, 8), "L": (1, MAX_RANK)}[family]
    if not lo <= rank <= hi:
        raise RankOutOfRange(f"{family}_{rank}: rank must lie in [{lo}, {hi}]")


@lru_cache(maxsize=None)
def build_tree(family: str, rank: int) -> DynkinTree:
    """Return the tree of the given family and rank.

    >>> build_tree("A", 3).arrows
    ((1, 2), (2, 3))
    """
    _check_rank(family, rank)
    n = rank
    loops = ()
    if family == "A":
        verts = tuple(range(1, n + 1))
        arrows = tuple((i, i + 1) for i in range(1, n))
    elif family == "D":
        verts = tuple(range(1, n + 1))
        arrows = tuple((i, i + 1) for i in range(1, n - 2))
        arrows += ((n - 1, n - 2), (n, n - 2))
    elif family == "E":
        verts = tuple(range(1, n + 1))
        arrows = ((2, 1), (3, 2), (3, 4), (3, 5))
        arrows += tuple((i, i + 1) for i in range(5, n))
    else:
        verts = tuple(range(n))
        arrows = tuple((i, i + 1) for i in range(n - 1))
        loops = (0,)
    return DynkinTree(family, n, verts, tuple(sorted(arrows)), loops)


def _require_ade(tree: DynkinTree) -> None:
    if tree.family not in ("A", "D", "E"):
        raise UnsupportedFamily(f"{tree.name}: only A, D and E are supported here")


def coxeter_number(tree: DynkinTree) -> int:
    """Coxeter number h, characterised by S o S = tau^(-h) on ZDelta."""
    _require_ade(tree)
    n = tree.rank
    if tree.family == "A":
        return n + 1
    if tree.family == "D":
        return 2 * n - 2
    return {6: 12, 7: 18, 8: 30}[n]


def positive_root_count(tree: DynkinTree) -> int:
    """Number of indecomposable kDelta-modules, i.e. of positive roots."""
    _require_ade(tree)
    return tree.rank * coxeter_number(tree) // 2


def cartan_matrix(tree: DynkinTree) -> np.ndarray:
    """Symmetric Cartan matrix 2I - adjacency, indexed like ``tree.vertices``."""
    n = len(tree.vertices)
    c = 2 * np.eye(n, dtype=np.int64)
    for s, t in tree.arrows:
        i, j = tree.index[s], tree.index[t]
        c[i, j] -= 1
        c[j, i] -= 1
    for v in tree.loop_vertices:
        c[tree.index[v], tree.index[v]] -= 1
    return c


def ade_trees(max_rank: int = 8):
    """All A, D, E trees of rank at most ``max_rank`` in a fixed order."""
    out = [build_tree("A", n) for n in range(1, max_rank + 1)]
    out += [build_tree("D", n) for n in range(4, max_rank + 1)]
    out += [build_tree("E", n) for n in range(6, min(max_rank, 8) + 1)]
    return out
