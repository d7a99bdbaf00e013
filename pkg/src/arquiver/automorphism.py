"""Automorphisms of the repetition quiver ZDelta in sliced form.

An automorphism is stored as a per-tree-vertex slice shift ``m`` and a
permutation ``pi`` of the tree vertices, acting by

    g(p, q) = (p + m[q], pi(q)).

The translation tau, the suspension S, tree automorphisms and every group
generator that occurs for weakly admissible groups fit this form, so no
special cases (half shifts, folding) are needed anywhere.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import lcm
from typing import NamedTuple

from .dynkin import DynkinTree, build_tree
from .errors import (IdentityInput, InvalidAutomorphism, InvalidVertex,
                     ParseError, TreeMismatch, UndefinedSymbolForFamily,
                     UnsupportedFamily)


class ZVertex(NamedTuple):
    """Vertex (p, q) of ZDelta: slice ``p``, tree vertex ``q``."""
    p: int
    q: int

    def __str__(self) -> str:
        return f"{self.p},{self.q}"


def parse_vertex(text: str) -> ZVertex:
    try:
        p, q = (int(s) for s in text.split(","))
    except ValueError:
        raise ParseError(f"expected a vertex 'p,q', got {text!r}") from None
    return ZVertex(p, q)


def check_vertex(tree: DynkinTree, v) -> ZVertex:
    v = ZVertex(*v)
    if v.q not in tree.index or not isinstance(v.p, int):
        raise InvalidVertex(f"{tuple(v)} is not a vertex of Z{tree.name}")
    return v


def successors(tree: DynkinTree, v: ZVertex) -> list:
    # arrow x -> y of Delta gives (p,x) -> (p,y) and (p,y) -> (p+1,x)
    p, q = v
    out = [ZVertex(p, y) for y in tree.out_neighbors[q]]
    out += [ZVertex(p + 1, x) for x in tree.in_neighbors[q]]
    return sorted(out)


def predecessors(tree: DynkinTree, v: ZVertex) -> list:
    p, q = v
    out = [ZVertex(p, x) for x in tree.in_neighbors[q]]
    out += [ZVertex(p - 1, y) for y in tree.out_neighbors[q]]
    return sorted(out)


@dataclass(frozen=True)
class SlicedAutomorphism:
    tree: DynkinTree
    shift: tuple
    perm: tuple
    label: str = field(default="", compare=False)

    def __post_init__(self):
        t = self.tree
        if len(self.shift) != len(t.vertices) or len(self.perm) != len(t.vertices):
            raise InvalidAutomorphism("shift/perm length does not match the tree")
        if sorted(self.perm) != sorted(t.vertices):
            raise InvalidAutomorphism("perm is not a bijection of the tree vertices")
        # automorphisms commute with tau, so one slice suffices
        for q in t.vertices:
            x = ZVertex(0, q)
            image = {self(w) for w in successors(t, x)}
            if image != set(successors(t, self(x))):
                raise InvalidAutomorphism(
                    f"{self.label or 'map'} does not preserve the arrows at {x}")

    def __call__(self, v) -> ZVertex:
        p, q = v
        i = self.tree.index[q]
        return ZVertex(p + self.shift[i], self.perm[i])

    def __mul__(self, other: "SlicedAutomorphism") -> "SlicedAutomorphism":
        return compose(self, other)

    def __pow__(self, k: int) -> "SlicedAutomorphism":
        return power(self, k)

    def __repr__(self) -> str:
        name = self.label or f"shift={self.shift}, perm={self.perm}"
        return f"<{self.tree.name}: {name}>"

    @classmethod
    def _trusted(cls, tree, shift, perm, label=""):
        # skips the arrow check; only for results of group operations
        obj = object.__new__(cls)
        object.__setattr__(obj, "tree", tree)
        object.__setattr__(obj, "shift", shift)
        object.__setattr__(obj, "perm", perm)
        object.__setattr__(obj, "label", label)
        return obj

    def with_label(self, label: str) -> "SlicedAutomorphism":
        return SlicedAutomorphism._trusted(self.tree, self.shift, self.perm, label)

    @property
    def is_identity(self) -> bool:
        return all(m == 0 for m in self.shift) and self.perm == self.tree.vertices

    @cached_property
    def perm_order(self) -> int:
        """Order of the tree permutation."""
        idx = self.tree.index
        seen, order = set(), 1
        for start in self.tree.vertices:
            if start in seen:
                continue
            n, q = 0, start
            while True:
                seen.add(q)
                q = self.perm[idx[q]]
                n += 1
                if q == start:
                    break
            order = lcm(order, n)
        return order

    @cached_property
    def period(self) -> tuple:
        """``(c, s)`` with ``g^c = tau^(-s)``, ``c`` the order of the permutation.

        The shift of ``g^c`` is uniform because an automorphism fixing every
        tau-orbit moves all vertices of a connected tree by the same amount.
        """
        c = self.perm_order
        gc = power(self, c)
        assert len(set(gc.shift)) == 1, gc
        return c, gc.shift[0]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "shift": {str(q): m for q, m in zip(self.tree.vertices, self.shift)},
            "perm": {str(q): r for q, r in zip(self.tree.vertices, self.perm)},
        }


def _same_tree(g1, g2):
    if g1.tree != g2.tree:
        raise TreeMismatch(f"{g1.tree.name} vs {g2.tree.name}")


def compose(g1: SlicedAutomorphism, g2: SlicedAutomorphism) -> SlicedAutomorphism:
    """``g1 o g2`` (apply ``g2`` first)."""
    _same_tree(g1, g2)
    t = g1.tree
    shift, perm = [], []
    for i, _ in enumerate(t.vertices):
        q2 = g2.perm[i]
        j = t.index[q2]
        shift.append(g2.shift[i] + g1.shift[j])
        perm.append(g1.perm[j])
    label = "*".join(s for s in (g1.label, g2.label) if s and s != "id")
    return SlicedAutomorphism._trusted(t, tuple(shift), tuple(perm), label)


def inverse(g: SlicedAutomorphism) -> SlicedAutomorphism:
    t = g.tree
    shift = [0] * len(t.vertices)
    perm = [None] * len(t.vertices)
    for i, q in enumerate(t.vertices):
        j = t.index[g.perm[i]]
        shift[j] = -g.shift[i]
        perm[j] = q
    label = f"{g.label}^-1" if g.label else ""
    return SlicedAutomorphism._trusted(t, tuple(shift), tuple(perm), label)


def identity(tree: DynkinTree) -> SlicedAutomorphism:
    return SlicedAutomorphism(tree, (0,) * len(tree.vertices), tree.vertices, "id")


def power(g: SlicedAutomorphism, k: int) -> SlicedAutomorphism:
    k0 = k
    base = g if k >= 0 else inverse(g)
    result = identity(g.tree)
    k = abs(k)
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result.with_label(f"{g.label}^{k0}" if g.label else "")


def equals(g1: SlicedAutomorphism, g2: SlicedAutomorphism) -> bool:
    _same_tree(g1, g2)
    return g1.shift == g2.shift and g1.perm == g2.perm


# --- the named automorphisms -------------------------------------------------

def translation(tree: DynkinTree) -> SlicedAutomorphism:
    """tau(p, q) = (p - 1, q)."""
    return SlicedAutomorphism(tree, (-1,) * len(tree.vertices), tree.vertices, "tau")


def tau_power(tree: DynkinTree, k: int) -> SlicedAutomorphism:
    return SlicedAutomorphism(tree, (-k,) * len(tree.vertices), tree.vertices,
                              f"tau^{k}")


def tree_automorphism(tree: DynkinTree, mapping: dict, label: str = "") -> SlicedAutomorphism:
    perm = tuple(mapping.get(q, q) for q in tree.vertices)
    return SlicedAutomorphism(tree, (0,) * len(tree.vertices), perm, label)


def _require_ade(tree):
    if tree.family not in ("A", "D", "E"):
        raise UnsupportedFamily(f"{tree.name}: suspension is defined for A, D, E only")


@lru_cache(maxsize=None)
def suspension(tree: DynkinTree) -> SlicedAutomorphism:
    _require_ade(tree)
    n = tree.rank
    if tree.family == "A":
        return SlicedAutomorphism(tree, tree.vertices,
                                  tuple(n + 1 - q for q in tree.vertices), "S")
    if tree.family == "D":
        mapping = {} if n % 2 == 0 else {n - 1: n, n: n - 1}
        return compose(tau_power(tree, -(n - 1)), tree_automorphism(tree, mapping)).with_label("S")
    if n == 6:
        return compose(_e6_flip(tree), tau_power(tree, -6)).with_label("S")
    return tau_power(tree, -{7: 9, 8: 15}[n]).with_label("S")


def serre_nu(tree: DynkinTree) -> SlicedAutomorphism:
    """Serre translation nu = S o tau."""
    return compose(suspension(tree), translation(tree)).with_label("nu")


def _e6_flip(tree):
    return tree_automorphism(tree, {2: 5, 5: 2, 1: 6, 6: 1}, "phi")


def _d4_leaf_perm(tree, cycle: str) -> SlicedAutomorphism:
    """Element of S_3 on the D_4 leaves, written as one cycle of leaf positions.

    Leaves are numbered 1, 2, 3 in the order of vertices 1, 3, 4.
    """
    leaves = {1: 1, 2: 3, 3: 4}
    digits = [int(c) for c in cycle]
    if not digits or len(set(digits)) != len(digits) or any(d not in leaves for d in digits):
        raise ParseError(f"bad D4 leaf cycle {cycle!r}")
    mapping = {}
    for a, b in zip(digits, digits[1:] + digits[:1]):
        mapping[leaves[a]] = leaves[b]
    return tree_automorphism(tree, mapping, f"phi({cycle})" if len(digits) > 1 else "id")


def phi(tree: DynkinTree, cycle: str | None = None) -> SlicedAutomorphism:
    """The family-dependent automorphism called phi in the generator list."""
    fam, n = tree.family, tree.rank
    if cycle is not None and (fam, n) != ("D", 4):
        raise UndefinedSymbolForFamily(f"phi({cycle}) only exists for D4")
    if fam == "A" and n % 2 == 1:
        return compose(tau_power(tree, (n + 1) // 2), suspension(tree)).with_label("phi")
    if fam == "D":
        if cycle is not None:
            return _d4_leaf_perm(tree, cycle)
        return tree_automorphism(tree, {n - 1: n, n: n - 1}, "phi")
    if fam == "E" and n == 6:
        return _e6_flip(tree)
    raise UndefinedSymbolForFamily(f"phi is not defined for {tree.name}")


def rho(tree: DynkinTree) -> SlicedAutomorphism:
    """rho = tau^(n/2) S for A_n, n even; rho^2 = tau^(-1)."""
    if tree.family != "A" or tree.rank % 2:
        raise UndefinedSymbolForFamily(f"rho is not defined for {tree.name}")
    return compose(tau_power(tree, tree.rank // 2), suspension(tree)).with_label("rho")


def d4_leaf_permutations(tree: DynkinTree) -> list:
    """The six elements of S_3 acting on the D_4 leaves, identity first."""
    return [identity(tree)] + [_d4_leaf_perm(tree, c) for c in ("12", "13", "23", "123", "132")]


def orientation_preserving_tree_automorphisms(tree: DynkinTree) -> list:
    if tree.family == "D" and tree.rank == 4:
        return d4_leaf_permutations(tree)
    if tree.family == "D":
        return [identity(tree), phi(tree)]
    if tree.family == "E" and tree.rank == 6:
        return [identity(tree), phi(tree)]
    return [identity(tree)]


# --- orbit arithmetic --------------------------------------------------------

def orbit_window(g: SlicedAutomorphism, v: ZVertex, lo: int, hi: int) -> list:
    """All ``(k, g^k v)`` with slice in ``[lo, hi]``.

    Requires a nonzero net shift so that the answer is finite.
    """
    c, s = g.period
    if s == 0:
        raise ValueError("orbit_window needs an automorphism of infinite order")
    out = []
    gj = identity(g.tree)
    for j in range(c):
        w = gj(v)
        # slices of g^(a*c + j) v are w.p + a*s
        a_lo, a_hi = sorted(((lo - w.p) / s, (hi - w.p) / s))
        for a in range(_ceil(a_lo), _floor(a_hi) + 1):
            out.append((a * c + j, ZVertex(w.p + a * s, w.q)))
        gj = compose(g, gj)
    out.sort()
    return out


def _ceil(x):
    return -int(-x // 1)


def _floor(x):
    return int(x // 1)


def orbit_exponent(g: SlicedAutomorphism, u: ZVertex, v: ZVertex):
    """Some ``k`` with ``g^k u = v``, or ``None``."""
    c, s = g.period
    gj = identity(g.tree)
    for j in range(c):
        w = gj(u)
        if w.q == v.q:
            d = v.p - w.p
            if s == 0 and d == 0:
                return j
            if s != 0 and d % s == 0:
                return (d // s) * c + j
        gj = compose(g, gj)
    return None


# --- admissibility -----------------------------------------------------------

def _nontrivial_powers_near_slice_zero(g: SlicedAutomorphism, q, span: int):
    """Powers ``g^k != id`` moving ``(0, q)`` to a slice within ``span`` of 0.

    Only these can make a successor or predecessor set overlap, because all
    arrows of ZDelta advance the slice by 0 or 1.
    """
    c, s = g.period
    x = ZVertex(0, q)
    if s == 0:
        for k in range(1, c):
            h = power(g, k)
            if not h.is_identity:
                yield k, h
        return
    for k, w in orbit_window(g, x, -span, span):
        if k != 0:
            yield k, power(g, k)


@lru_cache(maxsize=4096)
def is_weakly_admissible(g: SlicedAutomorphism) -> bool:
    """x^+ and (hx)^+ are disjoint for every ``h != 1`` in <g> and every x."""
    if g.is_identity:
        raise IdentityInput("the identity generates the trivial group")
    t = g.tree
    for q in t.vertices:
        x = ZVertex(0, q)
        succ = set(successors(t, x))
        if not succ:
            continue
        for _, h in _nontrivial_powers_near_slice_zero(g, q, 1):
            if succ & set(successors(t, h(x))):
                return False
    return True


@lru_cache(maxsize=4096)
def is_admissible(g: SlicedAutomorphism) -> bool:
    """No <g>-orbit meets {x} u x^+ or {x} u x^- in more than one point."""
    if g.is_identity:
        raise IdentityInput("the identity generates the trivial group")
    t = g.tree
    c, s = g.period
    for q in t.vertices:
        x = ZVertex(0, q)
        for nbhd in (successors(t, x), predecessors(t, x)):
            pts = [x] + nbhd
            for u, v in itertools.combinations(pts, 2):
                k = orbit_exponent(g, u, v)
                if k is not None:
                    return False
    return True


def enumerate_weakly_admissible(tree: DynkinTree, r_max: int) -> list:
    """Generators of the weakly admissible groups, exponent at most ``r_max``.

    One generator per listed family member; generators that coincide
    (phi is trivial on A_1) are reported once.
    """
    _require_ade(tree)
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    fam, n = tree.family, tree.rank
    out = []
    for r in range(1, r_max + 1):
        t_r = tau_power(tree, r).with_label(f"tau^{r}")
        if fam == "A" and n % 2 == 0:
            cands = [power(rho(tree), r).with_label(f"rho^{r}")]
        elif fam == "A" or (fam == "D" and n >= 5) or (fam == "E" and n == 6):
            cands = [t_r, compose(phi(tree), t_r).with_label(f"phi*tau^{r}")]
        elif fam == "D":
            cands = [compose(psi, t_r).with_label(
                        f"{psi.label}*tau^{r}" if psi.label != "id" else f"tau^{r}")
                     for psi in d4_leaf_permutations(tree)]
        else:
            cands = [t_r]
        for g in cands:
            if any(equals(g, h) for h in out):
                continue
            if not is_weakly_admissible(g):
                raise AssertionError(f"listed generator {g!r} is not weakly admissible")
            out.append(g)
    return out


def conjugacy_equal(g: SlicedAutomorphism, h: SlicedAutomorphism) -> bool:
    """Whether <g> and <h> are conjugate in Aut(ZDelta).

    Aut(ZDelta) is generated by tau, S and the orientation preserving tree
    automorphisms; tau and S^2 are central, so conjugating by S^b psi with
    b in {0, 1} exhausts all conjugates.
    """
    _same_tree(g, h)
    t = g.tree
    targets = (h, inverse(h))
    conjugators = list(orientation_preserving_tree_automorphisms(t))
    if t.family in ("A", "D", "E"):
        s = suspension(t)
        conjugators += [compose(s, psi) for psi in conjugators]
    for c in conjugators:
        conj = compose(compose(c, g), inverse(c))
        if any(equals(conj, x) for x in targets):
            return True
    return False


# --- generator grammar -------------------------------------------------------

_TERM = re.compile(r"\s*(tau|S|phi|rho|id)(?:\(([0-9]+)\))?(?:\s*\^\s*(-?\s*[0-9]+))?\s*")


def parse_generator(tree: DynkinTree, text: str) -> SlicedAutomorphism:
    """Parse expressions such as ``"phi*tau^3"`` or ``"phi(123)*tau^-2"``.

    Terms are composed left to right as functions, so the rightmost term is
    applied first.
    """
    if not text or not text.strip():
        raise ParseError("empty generator expression")
    result = identity(tree)
    for part in text.split("*"):
        m = _TERM.fullmatch(part)
        if m is None:
            raise ParseError(f"cannot parse term {part.strip()!r} in {text!r}")
        name, arg, exp = m.groups()
        if arg is not None and name != "phi":
            raise ParseError(f"only phi takes an argument, got {part.strip()!r}")
        if name == "tau":
            base = translation(tree)
        elif name == "S":
            base = suspension(tree)
        elif name == "phi":
            base = phi(tree, arg)
        elif name == "rho":
            base = rho(tree)
        else:
            base = identity(tree)
        k = int(exp.replace(" ", "")) if exp is not None else 1
        result = compose(result, power(base, k))
    return result.with_label(text.strip())
