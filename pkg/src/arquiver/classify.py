"""Standardness criteria and quiver-level Calabi-Yau dimension of ZDelta/<g>."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .automorphism import (SlicedAutomorphism, ZVertex, compose,
                           conjugacy_equal, enumerate_weakly_admissible,
                           identity, inverse, is_weakly_admissible,
                           orbit_window, power, serre_nu, successors,
                           suspension, tau_power)
from .dynkin import DynkinTree, coxeter_number, positive_root_count
from .errors import (DOutOfRange, IdentityInput, InfiniteQuotient,
                     NotWeaklyAdmissible, TreeMismatch,
                     UnrecognizedGenerator)
from .mesh import hom_knit
from .zquiver import orbit_count

# smallest exponent r for which the listed generator is known to give a
# standard category; A_n with tau^r is standard for every r >= 1
_THRESHOLDS = {("D", 4): 2, ("E", 6): 5, ("E", 7): 8, ("E", 8): 14}


def _threshold(tree: DynkinTree) -> int:
    fam, n = tree.family, tree.rank
    if fam == "A":
        return n - 1 if n % 2 == 0 else (n - 1) // 2
    if fam == "D" and n >= 5:
        return n - 2
    return _THRESHOLDS[(fam, n)]


@dataclass(frozen=True)
class StandardnessVerdict:
    by_table: bool
    by_hom_condition: bool
    by_vertex_count: bool
    table_case: str | None = None
    details: list = field(default_factory=list, compare=False)


def _check(g: SlicedAutomorphism):
    if g.is_identity:
        raise IdentityInput("the identity generates the trivial group")
    if not is_weakly_admissible(g):
        raise NotWeaklyAdmissible(f"{g!r} does not generate a weakly admissible group")
    if g.period[1] == 0:
        raise InfiniteQuotient(f"{g!r} has finite order")


_LABEL = re.compile(r"(?:(phi(?:\(\d+\))?)\*)?(tau|rho)\^(\d+)")


def recognize_generator(tree: DynkinTree, g: SlicedAutomorphism) -> dict:
    """Match ``<g>`` with a listed generator, up to conjugacy and inversion.

    Returns ``{"kind": "tau" | "phi*tau" | "rho", "phi": label or None,
    "r": exponent, "generator": listed automorphism}``.
    """
    if g.tree != tree:
        raise TreeMismatch(f"{g!r} does not act on Z{tree.name}")
    if tree.family not in ("A", "D", "E"):
        raise UnrecognizedGenerator(f"no generator list for {tree.name}")
    _check(g)
    count = orbit_count(g)
    for h in enumerate_weakly_admissible(tree, max(1, count)):
        if orbit_count(h) != count or not conjugacy_equal(g, h):
            continue
        m = _LABEL.fullmatch(h.label)
        ph, base, r = m.groups()
        kind = base if ph is None else "phi*tau"
        return {"kind": kind, "phi": ph, "r": int(r), "generator": h}
    raise UnrecognizedGenerator(f"{g!r} is not conjugate to a listed generator")


def _is_tau_power(g: SlicedAutomorphism) -> bool:
    return g.perm == g.tree.vertices and len(set(g.shift)) == 1


def table_case(tree: DynkinTree, g: SlicedAutomorphism):
    """Which listed sufficient case covers ``<g>``: ``"threshold"`` (exponent at
    or above the family threshold), ``"cylindric"`` (a power of tau on A_n),
    or ``None``.

    The threshold cases satisfy the Hom condition except A_2 with rho^1,
    where rho sends (0,1) to its own successor.  The cylindric case also
    covers small exponents where that condition fails.
    """
    rec = recognize_generator(tree, g)
    if rec["r"] >= _threshold(tree):
        return "threshold"
    if tree.family == "A" and _is_tau_power(g):
        # tau^r is central, so no conjugate needs to be considered
        return "cylindric"
    return None


def standard_by_table(tree: DynkinTree, g: SlicedAutomorphism) -> bool:
    """Whether ``(Delta, <g>)`` is one of the listed sufficient cases."""
    return table_case(tree, g) is not None


def _arrow_report(tree, g, h):
    out = []
    for q in tree.vertices:
        x = ZVertex(0, q)
        d = hom_knit(tree, x)
        for y in successors(tree, x):
            here = d(y)
            other = sum(d(w) for k, w in orbit_window(g, y, 0, 2 * h) if k != 0)
            out.append({"src": str(x), "dst": str(y), "hom": here,
                        "other_translates": other, "ok": here == 1 and other == 0})
    return out


def standard_by_hom_condition(tree: DynkinTree, g: SlicedAutomorphism):
    """For every arrow ``x -> y`` out of slice 0, ``Hom(x, y) = k`` and
    ``Hom(x, g^r y) = 0`` for ``r != 0``.  Returns ``(verdict, details)``."""
    _check(g)
    details = _arrow_report(tree, g, coxeter_number(tree))
    return all(a["ok"] for a in details), details


def vertex_count_criterion(tree: DynkinTree, g: SlicedAutomorphism) -> bool:
    _check(g)
    return orbit_count(g) > positive_root_count(tree)


def standardness(tree: DynkinTree, g: SlicedAutomorphism) -> StandardnessVerdict:
    ok, details = standard_by_hom_condition(tree, g)
    case = table_case(tree, g)
    return StandardnessVerdict(case is not None, ok,
                               vertex_count_criterion(tree, g), case, details)


# --- Calabi-Yau --------------------------------------------------------------

def group_exponent(h: SlicedAutomorphism, g: SlicedAutomorphism):
    """``k`` with ``g^k = h``, or ``None`` if ``h`` is not in ``<g>``."""
    c, s = g.period
    gj = identity(g.tree)
    for j in range(c):
        # h = tau^(-s a) g^j  iff  h g^-j is a uniform shift by -s a
        rest = compose(h, inverse(gj))
        if _is_tau_power(rest):
            m = rest.shift[0]
            if s == 0:
                if m == 0:
                    return j
            elif m % s == 0:
                return (m // s) * c + j
        gj = compose(g, gj)
    return None


def cy_dimension(tree: DynkinTree, g: SlicedAutomorphism, d_max: int = 24):
    """Smallest ``d`` in ``[1, d_max]`` with ``S^d nu^-1`` in ``<g>``, else None."""
    _check(g)
    s = suspension(tree)
    nu_inv = inverse(serre_nu(tree))
    sd = identity(tree)
    for d in range(1, d_max + 1):
        sd = compose(s, sd)
        if group_exponent(compose(sd, nu_inv), g) is not None:
            return d
    return None


def maximal_cy_generator(tree: DynkinTree, d: int) -> SlicedAutomorphism:
    """``tau^-1 S^(d-1)``."""
    if d < 2:
        raise DOutOfRange(f"d must be at least 2, got {d}")
    g = compose(tau_power(tree, -1), power(suspension(tree), d - 1))
    return g.with_label(f"tau^-1*S^{d - 1}")


def classify_summary(tree: DynkinTree, g: SlicedAutomorphism, d_max: int = 24) -> dict:
    """Every criterion for ``ZDelta/<g>`` in one JSON-ready dict."""
    verdict = standardness(tree, g)
    rec = recognize_generator(tree, g)
    return {
        "tree": tree.name,
        "generator": g.label,
        "recognized_as": rec["generator"].label,
        "by_table": verdict.by_table,
        "table_case": verdict.table_case,
        "by_hom_condition": verdict.by_hom_condition,
        "by_vertex_count": verdict.by_vertex_count,
        "cy_dimension": cy_dimension(tree, g, d_max),
        "vertex_count": orbit_count(g),
        "root_count": positive_root_count(tree),
        "details": verdict.details,
    }
