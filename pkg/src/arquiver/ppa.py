"""Deformed preprojective algebras of generalized Dynkin type over GF(p).

Paths are written left to right: ``a0.abar0`` first follows ``a0`` and then
``abar0``.  The partner of ``a_i`` is called ``abar_i`` and the loop at the
exceptional vertex of L_n is ``eps`` (its own partner).

Two engines compute a basis of normal forms:

* the graded engine handles homogeneous relations (every ``f = 0`` case).
  Level ``l`` is spanned by (basis of level ``l-1``) x arrows, so only the
  algebra itself is ever stored;
* the truncated engine handles a genuine deformation ``f``.  It closes the
  ideal inside the space of all paths of length at most ``N`` and raises
  ``N`` until every path of length ``N`` lies in the ideal.  It enumerates
  paths, so it is meant for small ranks.
"""

from __future__ import annotations

import re
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property

from .dynkin import build_tree
from .errors import (DegreeCapExceeded, DeformationArityMismatch,
                     InvalidCharacteristic, NotInRadicalSquare,
                     NotSelfinjective, ParseError, UnsupportedFamily)
from .linalg import Echelon, rank

DEFAULT_PRIME = 32003

EXCEPTIONAL_VERTEX = {"A": 0, "D": 2, "E": 3, "L": 0}


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise InvalidCharacteristic(f"{p!r} is not a prime")


# --- quivers -----------------------------------------------------------------

@dataclass(frozen=True)
class DoubleQuiver:
    family: str
    rank: int
    vertices: tuple
    arrows: tuple  # (name, source, target)
    partner: dict = field(hash=False, compare=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @cached_property
    def index(self) -> dict:
        return {a[0]: i for i, a in enumerate(self.arrows)}

    def source(self, name: str) -> int:
        return self.arrows[self.index[name]][1]

    def target(self, name: str) -> int:
        return self.arrows[self.index[name]][2]

    @cached_property
    def out_arrows(self) -> dict:
        out = defaultdict(list)
        for name, s, _ in self.arrows:
            out[s].append(name)
        return out


def build_double_quiver(family: str, rank: int) -> DoubleQuiver:
    build_tree(family, rank)  # rank checks
    n = rank
    edges = []  # (name of a_i, source, target)
    if family in ("A", "L"):
        edges = [(i, i, i + 1) for i in range(n - 1)]
    elif family == "D":
        edges = [(0, 0, 2), (1, 1, 2)] + [(i, i, i + 1) for i in range(2, n - 1)]
    elif family == "E":
        edges = [(0, 0, 3), (1, 1, 2), (2, 2, 3)] + [(i, i, i + 1) for i in range(3, n - 1)]
    arrows, partner = [], {}
    if family == "L":
        arrows.append(("eps", 0, 0))
        partner["eps"] = "eps"
    for i, s, t in edges:
        arrows += [(f"a{i}", s, t), (f"abar{i}", t, s)]
        partner[f"a{i}"] = f"abar{i}"
        partner[f"abar{i}"] = f"a{i}"
    return DoubleQuiver(family, n, tuple(range(n)), tuple(arrows), partner)


# --- noncommutative polynomials ----------------------------------------------

@dataclass(frozen=True)
class NCPolynomial:
    """``sum coefficient * word`` in the free algebra on ``x`` (and ``y``)."""
    terms: tuple  # ((coefficient, word tuple), ...)

    @classmethod
    def zero(cls) -> "NCPolynomial":
        return cls(())

    def is_zero(self, p: int | None = None) -> bool:
        return not self.combined(p)

    def combined(self, p: int | None = None) -> dict:
        acc = defaultdict(int)
        for c, w in self.terms:
            acc[w] += c
        return {w: (c % p if p else c) for w, c in acc.items() if (c % p if p else c)}

    @property
    def variables(self) -> set:
        return {v for _, w in self.terms for v in w}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{'*'.join(w)}" if w else str(c) for c, w in self.terms)


_POLY_TERM = re.compile(r"([+-]?)\s*([^+-]+)")


def parse_polynomial(text: str) -> NCPolynomial:
    """Parse ``"1*x*y + 1*y*x"``, ``"x^3 - 2*y*x"`` or ``"0"``."""
    if text is None or not text.strip():
        raise ParseError("empty polynomial")
    s = text.replace(" ", "")
    if not re.fullmatch(r"[+-]?[^+-]+([+-][^+-]+)*", s):
        raise ParseError(f"cannot parse polynomial {text!r}")
    terms = []
    for sign, body in _POLY_TERM.findall(s):
        coef, word = 1, []
        for factor in body.split("*"):
            if re.fullmatch(r"\d+", factor):
                coef *= int(factor)
                continue
            m = re.fullmatch(r"([a-z])(?:\^(\d+))?", factor)
            if m is None:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
            word += [m.group(1)] * int(m.group(2) or 1)
        if sign == "-":
            coef = -coef
        if coef:
            terms.append((coef, tuple(word)))
    return NCPolynomial(tuple(terms))


# --- graded engine -----------------------------------------------------------

def _graded_engine(vertices, arrows, relations, p, cap):
    """Normal-form basis for homogeneous relations.

    ``arrows`` is a list of ``(name, s, t)``; each relation is a dict
    ``word -> coefficient`` (words are tuples of arrow names, all of one
    length, source and target).  Returns ``(basis, right)`` where ``basis``
    is a list of ``(source, target, word)`` and ``right[(i, a)]`` the normal
    form of ``basis[i] . a`` as a dict ``index -> coefficient``.
    """
    src = {a: s for a, s, _ in arrows}
    tgt = {a: t for a, _, t in arrows}
    out = defaultdict(list)
    for a, s, _ in arrows:
        out[s].append(a)
    by_degree = defaultdict(list)
    for r in relations:
        lens = {len(w) for w in r}
        assert len(lens) == 1, "graded engine needs homogeneous relations"
        by_degree[lens.pop()].append(r)

    basis = [(v, v, ()) for v in vertices]
    levels = [list(range(len(basis)))]
    right = {}

    def times_word(i, word):
        vec = {i: 1}
        for a in word:
            new = defaultdict(int)
            for j, c in vec.items():
                for k, d in right.get((j, a), {}).items():
                    new[k] = (new[k] + c * d) % p
            vec = {k: c for k, c in new.items() if c}
        return vec

    level = 0
    while levels[-1]:
        level += 1
        if level > cap:
            raise DegreeCapExceeded(
                f"paths of length {cap} survive; raise degree_cap or check the relations")
        prev = levels[-1]
        ech = Echelon(p)
        for d, rels in by_degree.items():
            if d > level:
                continue
            for r in rels:
                r_src = src[next(iter(r))[0]]
                for i in levels[level - d]:
                    if basis[i][1] != r_src:
                        continue
                    vec = defaultdict(int)
                    for word, c in r.items():
                        for j, cc in times_word(i, word[:-1]).items():
                            vec[(j, word[-1])] += c * cc
                    ech.add(vec)
        cols = [(i, a) for i in prev for a in out[basis[i][1]]]
        fresh = {}
        for col in cols:
            if col not in ech.rows:
                i, a = col
                fresh[col] = len(basis)
                basis.append((basis[i][0], tgt[a], basis[i][2] + (a,)))
        for col in cols:
            red = ech.reduce({col: 1})
            right[col] = {fresh[k]: c for k, c in red.items()}
        levels.append(list(fresh.values()))
    return basis, right


# --- truncated engine --------------------------------------------------------

def _truncated_engine(vertices, arrows, relations, p, n_start, cap):
    src = {a: s for a, s, _ in arrows}
    tgt = {a: t for a, _, t in arrows}
    out = defaultdict(list)
    inc = defaultdict(list)
    for a, s, t in arrows:
        out[s].append(a)
        inc[t].append(a)
    for n in range(max(1, n_start), cap + 1):
        # every path of length <= n, keyed by (length, source, word)
        paths = [(0, v, ()) for v in vertices]
        frontier = list(paths)
        for _ in range(n):
            frontier = [(l + 1, s, w + (a,)) for l, s, w in frontier
                        for a in out[tgt[w[-1]] if w else s]]
            paths += frontier

        def key(word, start):
            return (len(word), start, word)

        def mult(vec, a, left):
            res = defaultdict(int)
            for (l, s, w), c in vec.items():
                end = tgt[w[-1]] if w else s
                if left:
                    if tgt[a] != s or l + 1 > n:
                        continue
                    res[(l + 1, src[a], (a,) + w)] += c
                elif end == src[a] and l + 1 <= n:
                    res[(l + 1, s, w + (a,))] += c
            return res

        ech = Echelon(p)
        queue = deque()
        for r in relations:
            start = src[next(iter(r))[0]]
            queue.append({key(w, start): c for w, c in r.items() if len(w) <= n})
        while queue:
            v = ech.add(queue.popleft())
            if v:
                for a, _, _ in arrows:
                    queue.append(mult(v, a, True))
                    queue.append(mult(v, a, False))
        if all(k in ech.rows for k in paths if k[0] == n):
            free = [k for k in paths if k not in ech.rows]
            pos = {k: i for i, k in enumerate(free)}
            basis = [(s, tgt[w[-1]] if w else s, w) for _, s, w in free]
            right = {}
            for i, (l, s, w) in enumerate(free):
                end = basis[i][1]
                for a in out[end]:
                    red = ech.reduce({(l + 1, s, w + (a,)): 1})
                    right[(i, a)] = {pos[k]: c for k, c in red.items()}
            return basis, right
    raise DegreeCapExceeded(f"paths of length {cap} are not all in the ideal")


# --- algebras ----------------------------------------------------------------

@dataclass
class PathQuotientAlgebra:
    quiver: DoubleQuiver
    characteristic: int
    relations: list
    basis: list  # (source, target, word)
    right: dict = field(repr=False)
    f: NCPolynomial = field(default_factory=NCPolynomial.zero)
    f_reduced: NCPolynomial = field(default_factory=NCPolynomial.zero)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def max_length(self) -> int:
        return max(len(w) for *_, w in self.basis)

    @cached_property
    def _index(self) -> dict:
        return {(s, w): i for i, (s, _, w) in enumerate(self.basis)}

    def normal_form(self, start: int, word) -> dict:
        """Normal form of a path as ``basis index -> coefficient``."""
        p = self.characteristic
        vec = {self._index[(start, ())]: 1}
        for a in word:
            new = defaultdict(int)
            for j, c in vec.items():
                for k, d in self.right.get((j, a), {}).items():
                    new[k] = (new[k] + c * d) % p
            vec = {k: c for k, c in new.items() if c}
        return vec

    def times_arrow(self, i: int, a: str) -> dict:
        return self.right.get((i, a), {})

    def arrow_times(self, a: str, i: int) -> dict:
        s, _, w = self.basis[i]
        if self.quiver.target(a) != s:
            return {}
        return self.normal_form(self.quiver.source(a), (a,) + w)

    def word_string(self, i: int) -> str:
        s, _, w = self.basis[i]
        return ".".join(w) if w else f"e{s}"

    def basis_tsv(self) -> str:
        rows = ["source\ttarget\tlength\tword"]
        for i, (s, t, w) in enumerate(self.basis):
            rows.append(f"{s}\t{t}\t{len(w)}\t{self.word_string(i)}")
        return "\n".join(rows) + "\n"


def _relation_string(rel: dict) -> str:
    parts = []
    for w, c in sorted(rel.items(), key=lambda kv: (len(kv[0]), kv[0])):
        word = ".".join(w)
        parts.append(word if c == 1 else f"{c}*{word}")
    return " + ".join(parts) if parts else "0"


def _add(acc, word, c):
    acc[word] = acc.get(word, 0) + c
    if not acc[word]:
        del acc[word]


def _power_words(words: list, m: int):
    """Expansion of ``(sum words)^m`` as word -> coefficient.

    For D_n the two loops square to zero modulo the other relations, so for
    large ``m`` only alternating products are kept; the ideal is the same.
    """
    if len(words) ** m <= 1024:
        acc = {(): 1}
        for _ in range(m):
            new = {}
            for w, c in acc.items():
                for x in words:
                    _add(new, w + x, c)
            acc = new
        return acc
    out = {}
    for first in range(len(words)):
        w = ()
        for k in range(m):
            w += words[(first + k) % len(words)]
        _add(out, w, 1)
    return out


_LOOPS = {
    "D": {"x": ("abar0", "a0"), "y": ("abar1", "a1")},
    "E": {"x": ("abar0", "a0"), "y": ("abar2", "a2")},
    "L": {"x": ("eps",)},
}


def r_relations(family: str, rank: int) -> list:
    """Relations of R(Delta) on the loops ``x`` (and ``y``), as word dicts."""
    n = rank
    if family == "D":
        return [{("x", "x"): 1}, {("y", "y"): 1}, _power_words([("x",), ("y",)], n - 2)]
    if family == "E":
        return [{("x", "x"): 1}, {("y", "y", "y"): 1},
                _power_words([("x",), ("y",)], n - 3)]
    if family == "L":
        return [{("x",) * (2 * n): 1}]
    return []


def reduce_deformation(family: str, rank: int, f: NCPolynomial, p: int) -> NCPolynomial:
    """Check ``f`` against R(Delta) and return its normal form there."""
    comb = f.combined(p)
    if family == "A":
        if comb:
            raise DeformationArityMismatch("A_n admits no deformation: f must be 0")
        return NCPolynomial.zero()
    allowed = {"x", "y"} if family in ("D", "E") else {"x"}
    extra = {v for w in comb for v in w} - allowed
    if extra:
        raise DeformationArityMismatch(
            f"{family}{rank}: f may only use {sorted(allowed)}, got {sorted(extra)}")
    short = [w for w in comb if len(w) < 2]
    if short:
        raise NotInRadicalSquare(f"terms of length < 2 in f: {short}")
    if not comb:
        return NCPolynomial.zero()
    gens = sorted(allowed)
    basis, right = _graded_engine([0], [(g, 0, 0) for g in gens],
                                  r_relations(family, rank), p, 8 * rank + 8)
    idx = {w: i for i, (_, _, w) in enumerate(basis)}
    acc = defaultdict(int)
    for w, c in comb.items():
        vec = {idx[()]: 1}
        for a in w:
            new = defaultdict(int)
            for j, cj in vec.items():
                for k, d in right.get((j, a), {}).items():
                    new[k] = (new[k] + cj * d) % p
            vec = new
        for k, ck in vec.items():
            acc[basis[k][2]] = (acc[basis[k][2]] + c * ck) % p
    terms = tuple((c, w) for w, c in sorted(acc.items(), key=lambda kv: (len(kv[0]), kv[0])) if c)
    return NCPolynomial(terms)


def deformed_relations(family: str, rank: int, f: NCPolynomial | None = None,
                       p: int = DEFAULT_PRIME) -> list:
    """Relations of P^f(Delta) as ``(label, word -> coefficient)`` pairs."""
    f = f or NCPolynomial.zero()
    q = build_double_quiver(family, rank)
    fr = reduce_deformation(family, rank, f, p)
    ex = EXCEPTIONAL_VERTEX[family]
    rels = []
    for i in q.vertices:
        if i == ex:
            continue
        acc = {}
        for a in q.out_arrows[i]:
            _add(acc, (a, q.partner[a]), 1)
        rels.append((f"vertex {i}", acc))

    if family == "A":
        rels.insert(0, ("vertex 0", {("a0", "abar0"): 1} if rank > 1 else {}))
        rels = [r for r in rels if r[1]]
        return rels

    sub = _LOOPS[family]
    acc = {}
    if family == "D":
        mesh = [("abar0", "a0"), ("abar1", "a1"), ("a2", "abar2")]
        loops = [sub["x"], sub["y"]]
        m = rank - 2
    elif family == "E":
        mesh = [("abar0", "a0"), ("abar2", "a2"), ("a3", "abar3")]
        loops = [sub["x"], sub["y"]]
        m = rank - 3
    else:
        mesh = [("eps", "eps")] + ([("a0", "abar0")] if rank > 1 else [])
        loops = None
        m = 2 * rank
    for w in mesh:
        _add(acc, w, 1)
    for c, w in fr.terms:
        word = sum((sub[v] for v in w), ())
        if family == "L":
            word = ("eps",) + word
        _add(acc, word, c)
    rels.insert(0, (f"vertex {ex}", acc))
    if loops is None:
        rels.insert(1, ("nilpotency", {("eps",) * m: 1}))
    else:
        rels.insert(1, ("nilpotency", _power_words(loops, m)))
    return rels


def build_algebra(family: str, rank: int, f: NCPolynomial | None = None,
                  p: int = DEFAULT_PRIME, degree_cap: int | None = None,
                  engine: str = "auto") -> PathQuotientAlgebra:
    """Normal-form basis of P^f(Delta) over GF(p).

    ``engine`` is ``"graded"``, ``"truncated"`` or ``"auto"`` (graded when
    the relations are homogeneous, which is exactly the case ``f = 0``).
    """
    _check_prime(p)
    if family not in EXCEPTIONAL_VERTEX:
        raise UnsupportedFamily(f"unknown family {family!r}")
    f = f or NCPolynomial.zero()
    cap = degree_cap if degree_cap is not None else 4 * rank + 8
    q = build_double_quiver(family, rank)
    rels = deformed_relations(family, rank, f, p)
    fr = reduce_deformation(family, rank, f, p)
    words = [{w: c % p for w, c in r.items() if c % p} for _, r in rels]
    words = [r for r in words if r]
    homogeneous = all(len({len(w) for w in r}) == 1 for r in words)
    if engine == "auto":
        engine = "graded" if homogeneous else "truncated"
    if engine == "graded":
        if not homogeneous:
            raise ValueError("the graded engine needs f = 0")
        basis, right = _graded_engine(q.vertices, q.arrows, words, p, cap)
    elif engine == "truncated":
        start = 1
        if not homogeneous:
            # the undeformed algebra has the same size; start just above it
            start = build_algebra(family, rank, None, p, cap).max_length + 1
        basis, right = _truncated_engine(q.vertices, q.arrows, words, p, start, cap)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return PathQuotientAlgebra(q, p, [(lab, _relation_string(r)) for lab, r in rels],
                               basis, right, f, fr)


# --- invariants --------------------------------------------------------------

def cartan_matrix(alg: PathQuotientAlgebra) -> list:
    n = len(alg.quiver.vertices)
    c = [[0] * n for _ in range(n)]
    for s, t, _ in alg.basis:
        c[s][t] += 1
    return c


def _socle_blocks(alg: PathQuotientAlgebra) -> dict:
    """``(i, j) -> dim`` of the part of soc(e_i A) ending at ``j``."""
    p = alg.characteristic
    blocks = defaultdict(list)
    for k, (s, t, _) in enumerate(alg.basis):
        blocks[(s, t)].append(k)
    out = {}
    for (i, j), ks in blocks.items():
        arrows = alg.quiver.out_arrows[j]
        images = []
        for k in ks:
            vec = {}
            for a in arrows:
                for m, c in alg.times_arrow(k, a).items():
                    vec[(a, m)] = c
            images.append(vec)
        dim = len(ks) - rank(images, p)
        if dim:
            out[(i, j)] = dim
    return out


def socle_dims(alg: PathQuotientAlgebra) -> list:
    blocks = _socle_blocks(alg)
    return [sum(d for (i, _), d in blocks.items() if i == v) for v in alg.quiver.vertices]


def nakayama_permutation(alg: PathQuotientAlgebra) -> list:
    """``nu`` with soc(e_i A) isomorphic to top(e_nu(i) A), as a list.

    The socle of e_i A is spanned by elements ending at ``nu(i)``.
    """
    blocks = _socle_blocks(alg)
    nu = []
    for v in alg.quiver.vertices:
        parts = [(j, d) for (i, j), d in blocks.items() if i == v]
        if len(parts) != 1 or parts[0][1] != 1:
            raise NotSelfinjective(f"soc(e_{v} A) is not simple: {sorted(parts)}")
        nu.append(parts[0][0])
    if sorted(nu) != list(alg.quiver.vertices):
        raise NotSelfinjective(f"socle targets {nu} are not a permutation")
    return nu


def center_dim(alg: PathQuotientAlgebra) -> int:
    """Dimension of {z : z e_i = e_i z, z a = a z for every arrow a}."""
    p = alg.characteristic
    cycles = [k for k, (s, t, _) in enumerate(alg.basis) if s == t]
    images = []
    for k in cycles:
        vec = defaultdict(int)
        for a, _, _ in alg.quiver.arrows:
            for m, c in alg.times_arrow(k, a).items():
                vec[(a, m)] += c
            for m, c in alg.arrow_times(a, k).items():
                vec[(a, m)] -= c
        images.append(vec)
    return len(cycles) - rank(images, p)


def invariants(alg: PathQuotientAlgebra) -> dict:
    try:
        nu = nakayama_permutation(alg)
    except NotSelfinjective:
        nu = None
    return {
        "dim": alg.dim,
        "cartan": cartan_matrix(alg),
        "nakayama": nu,
        "socle_dims": socle_dims(alg),
        "center_dim": center_dim(alg),
    }


def invariant_report(family: str, rank: int, f: NCPolynomial | None = None,
                     p: int = DEFAULT_PRIME, degree_cap: int | None = None) -> dict:
    """Invariants of P^f(Delta), with the keys that differ from P(Delta)."""
    alg = build_algebra(family, rank, f, p, degree_cap)
    inv = invariants(alg)
    if alg.f_reduced.is_zero():
        base = inv
    else:
        base = invariants(build_algebra(family, rank, None, p, degree_cap))
    return {
        "family": family,
        "rank": rank,
        "characteristic": p,
        "f": str(alg.f),
        "f_reduced": str(alg.f_reduced),
        **inv,
        "max_length": alg.max_length,
        "relations": [f"{lab}: {r}" for lab, r in alg.relations],
        "differs_from_undeformed": sorted(k for k in inv if inv[k] != base[k]),
    }
