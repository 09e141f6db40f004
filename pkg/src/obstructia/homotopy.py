"""Zeroth and first homotopy posets of a pointed finite category.

pi0 is computed by the pipeline "reflect, then collapse the lower set of the
chosen object's class"; pi1 is pi0 of the category of parallel arrows over
the object, pointed at the pair of identities.  Non-basepoint elements rank
the obstructions: to weak terminality for pi0, to subterminality for pi1.

The induced maps (along a morphism, along a functor, and along a natural
transformation over a morphism of the domain) are computed on class
representatives and then *checked* to be monotone and basepoint-preserving,
so a broken table shows up as an error instead of a silently wrong poset.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from . import fincat, order
from .errors import OracleMismatch, UnknownMorphism, UnknownObject


@dataclass(frozen=True)
class ObstructionReport:
    invariant: order.PointedPoset
    minimal: frozenset
    trivial: bool
    context: str


@dataclass(frozen=True)
class MorphismAnalysis:
    pi0: ObstructionReport
    pi1: ObstructionReport
    split_epi: bool
    mono: bool
    iso: bool


def report_from_pointed(pp: order.PointedPoset, context: str) -> ObstructionReport:
    bp = pp.basepoint
    for e in pp.poset.elements:
        if e != bp and pp.poset.le(e, bp):
            raise OracleMismatch(f"basepoint fails minimality below {e!r}")
    return ObstructionReport(pp, order.minimal_obstructions(pp), order.is_trivial(pp), context)


# -- the two invariants ------------------------------------------------------


def _collapse_at(p: order.Poset, class_of: dict, target: str, label: str, context: str) -> ObstructionReport:
    lower = order.lower_closure(p, {class_of[target]})
    pp = order.collapse_lower(p, lower, label)
    return report_from_pointed(pp, context)


def pi0(c: fincat.FinCat, x: str) -> ObstructionReport:
    """Pointed poset of obstructions to weak terminality of x."""
    if not c.has_object(x):
        raise UnknownObject(x)
    p, class_of = order.poset_reflection(c)
    return _collapse_at(p, class_of, x, f"[{x}]", f"pi0 at object {x!r}")


def _pi1_data(c: fincat.FinCat, x: str, caps: fincat.SizeCaps):
    par = fincat.parallel_arrows(c, x, caps)
    p, class_of = order.poset_reflection(par.cat)
    base = fincat.pair_name(c.id_of(x), c.id_of(x))
    report = _collapse_at(p, class_of, base, f"[{x}]", f"pi1 at object {x!r}")
    return report, par, p, class_of


def pi1(c: fincat.FinCat, x: str, caps: fincat.SizeCaps = fincat.DEFAULT_CAPS) -> ObstructionReport:
    """Pointed poset of obstructions to subterminality of x."""
    if not c.has_object(x):
        raise UnknownObject(x)
    return _pi1_data(c, x, caps)[0]


# -- terminality oracles (independent of the poset machinery) ----------------


def is_weak_terminal(c: fincat.FinCat, x: str) -> bool:
    if not c.has_object(x):
        raise UnknownObject(x)
    return all(c.hom(y, x) for y in c.objects)


def is_subterminal(c: fincat.FinCat, x: str) -> bool:
    if not c.has_object(x):
        raise UnknownObject(x)
    return all(len(c.hom(y, x)) <= 1 for y in c.objects)


def is_terminal(c: fincat.FinCat, x: str) -> bool:
    if not c.has_object(x):
        raise UnknownObject(x)
    return all(len(c.hom(y, x)) == 1 for y in c.objects)


# -- induced maps -------------------------------------------------------------


def _checked_map(src: ObstructionReport, dst: ObstructionReport, mapping: dict) -> order.PointedMap:
    return order.make_pointed(src.invariant, dst.invariant, mapping)


def pi_object_action(c: fincat.FinCat, f: str, i: int, caps: fincat.SizeCaps = fincat.DEFAULT_CAPS) -> order.PointedMap:
    """Covariant action of a morphism f: x -> y on pi_i(-, x) -> pi_i(-, y).

    For i = 0 a surviving class keeps its name unless it acquires a morphism
    into y, in which case it lands on the basepoint.  For i = 1 a pair class
    maps to the class of the postcomposed pair.
    """
    if not c.has_morphism(f):
        raise UnknownMorphism(f)
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    x, y = c.dom(f), c.cod(f)
    if i == 0:
        src, dst = pi0(c, x), pi0(c, y)
        targets = set(dst.invariant.poset.elements)
        mapping = {src.invariant.basepoint: dst.invariant.basepoint}
        for e in src.invariant.poset.elements:
            if e == src.invariant.basepoint:
                continue
            mapping[e] = e if e in targets else dst.invariant.basepoint
        return _checked_map(src, dst, mapping)

    src, par_x, _, _ = _pi1_data(c, x, caps)
    dst, par_y, _, class_of_y = _pi1_data(c, y, caps)
    targets = set(dst.invariant.poset.elements)
    mapping = {src.invariant.basepoint: dst.invariant.basepoint}
    for e in src.invariant.poset.elements:
        if e == src.invariant.basepoint:
            continue
        g, h = par_x.pairs[e]  # class names are least member objects
        image = fincat.pair_name(c.comp[(g, f)], c.comp[(h, f)])
        cls = class_of_y[image]
        mapping[e] = cls if cls in targets else dst.invariant.basepoint
    return _checked_map(src, dst, mapping)


def pi_functor_map(functor: fincat.FunctorData, x: str, i: int, caps: fincat.SizeCaps = fincat.DEFAULT_CAPS) -> order.PointedMap:
    """Component at x of the transformation pi_i(C, -) => pi_i(D, F-)."""
    c, d = functor.source, functor.target
    if not c.has_object(x):
        raise UnknownObject(x)
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    fx = functor.obj_map[x]
    if i == 0:
        src, dst = pi0(c, x), pi0(d, fx)
        _, class_of_d = order.poset_reflection(d)
        targets = set(dst.invariant.poset.elements)
        mapping = {src.invariant.basepoint: dst.invariant.basepoint}
        for e in src.invariant.poset.elements:
            if e == src.invariant.basepoint:
                continue
            cls = class_of_d[functor.obj_map[e]]
            mapping[e] = cls if cls in targets else dst.invariant.basepoint
        return _checked_map(src, dst, mapping)

    src, par_c, _, _ = _pi1_data(c, x, caps)
    dst, par_d, _, class_of_d = _pi1_data(d, fx, caps)
    targets = set(dst.invariant.poset.elements)
    mapping = {src.invariant.basepoint: dst.invariant.basepoint}
    for e in src.invariant.poset.elements:
        if e == src.invariant.basepoint:
            continue
        g, h = par_c.pairs[e]
        image = fincat.pair_name(functor.mor_map[g], functor.mor_map[h])
        cls = class_of_d[image]
        mapping[e] = cls if cls in targets else dst.invariant.basepoint
    return _checked_map(src, dst, mapping)


def covariance_map(alpha: fincat.NatTransData, f: str, i: int, caps: fincat.SizeCaps = fincat.DEFAULT_CAPS) -> order.PointedMap:
    """Flow of obstructions of a natural transformation along f: x -> y.

    Maps pi_i(D/Gx, alpha_x) to pi_i(D/Gy, alpha_y) by postcomposition with
    Gf on slice objects (componentwise with Ff on parallel pairs of slice
    morphisms when i = 1).  Naturality of alpha is what makes the basepoint
    land on the basepoint; the construction re-checks that instead of
    assuming it.
    """
    F, G = alpha.source, alpha.target
    c, d = F.source, F.target
    if not c.has_morphism(f):
        raise UnknownMorphism(f)
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    x, y = c.dom(f), c.cod(f)
    gx, gy = G.obj_map[x], G.obj_map[y]
    ax, ay = alpha.components[x], alpha.components[y]
    gf, ff = G.mor_map[f], F.mor_map[f]
    sx = fincat.slice_category(d, gx, caps)
    sy = fincat.slice_category(d, gy, caps)

    if i == 0:
        src = pi0(sx.cat, ax)
        dst = pi0(sy.cat, ay)
        _, class_of_sy = order.poset_reflection(sy.cat)
        targets = set(dst.invariant.poset.elements)
        mapping = {src.invariant.basepoint: dst.invariant.basepoint}
        for e in src.invariant.poset.elements:
            if e == src.invariant.basepoint:
                continue
            image = d.comp[(e, gf)]  # slice objects are morphism ids into gx
            cls = class_of_sy[image]
            mapping[e] = cls if cls in targets else dst.invariant.basepoint
        return _checked_map(src, dst, mapping)

    src, par_x, _, _ = _pi1_data(sx.cat, ax, caps)
    dst, par_y, _, class_of_y = _pi1_data(sy.cat, ay, caps)
    sy_by_key = {
        (m.dom, sy.projection.mor_map[m.name], m.cod): m.name for m in sy.cat.morphisms
    }
    targets = set(dst.invariant.poset.elements)
    mapping = {src.invariant.basepoint: dst.invariant.basepoint}
    for e in src.invariant.poset.elements:
        if e == src.invariant.basepoint:
            continue
        p0, p1 = par_x.pairs[e]  # parallel slice morphisms into alpha_x
        images = []
        for p in (p0, p1):
            h = sx.cat.dom(p)  # slice object: a morphism of D into gx
            k = sx.projection.mor_map[p]  # witness k: dom h -> Fx with k;ax = h
            images.append(sy_by_key[(d.comp[(h, gf)], d.comp[(k, ff)], ay)])
        image = fincat.pair_name(images[0], images[1])
        cls = class_of_y[image]
        mapping[e] = cls if cls in targets else dst.invariant.basepoint
    return _checked_map(src, dst, mapping)


# -- morphism classification ---------------------------------------------------


def brute_split_epi(c: fincat.FinCat, f: str) -> bool:
    x, y = c.dom(f), c.cod(f)
    return any(c.comp[(s, f)] == c.id_of(y) for s in c.hom(y, x))


def brute_mono(c: fincat.FinCat, f: str) -> bool:
    x = c.dom(f)
    for w in c.objects:
        hom = c.hom(w, x)
        for g, h in combinations(hom, 2):
            if c.comp[(g, f)] == c.comp[(h, f)]:
                return False
    return True


def analyze_morphism(c: fincat.FinCat, f: str, caps: fincat.SizeCaps = fincat.DEFAULT_CAPS) -> MorphismAnalysis:
    """Classify f through the homotopy posets of its slice over cod f, and
    cross-check the verdicts against direct split-epi / mono searches.
    A disagreement raises OracleMismatch: it can only mean a bug."""
    if not c.has_morphism(f):
        raise UnknownMorphism(f)
    sl = fincat.slice_category(c, c.cod(f), caps)
    r0 = pi0(sl.cat, f)
    r1 = pi1(sl.cat, f, caps)
    split_epi = r0.trivial
    mono = r1.trivial
    if split_epi != brute_split_epi(c, f):
        raise OracleMismatch(f"split-epi flag disagrees with search at {f!r}")
    if mono != brute_mono(c, f):
        raise OracleMismatch(f"mono flag disagrees with search at {f!r}")
    return MorphismAnalysis(r0, r1, split_epi, mono, split_epi and mono)


# -- powerset-shaped reports and interchange -----------------------------------


def subset_name(items: Iterable[str]) -> str:
    return "{" + ",".join(sorted(items)) + "}"


def powerset_elements(universe: Iterable[str], collapsed: Iterable[str]) -> dict:
    """Subsets of the universe that are not contained in the collapsed part,
    keyed by canonical name.  These are exactly the non-basepoint elements of
    a powerset poset after collapsing the lower set of the collapsed subset."""
    uni = sorted(set(universe))
    coll = set(collapsed)
    out: dict[str, frozenset] = {}
    for r in range(1, len(uni) + 1):
        for items in combinations(uni, r):
            if not set(items) <= coll:
                out[subset_name(items)] = frozenset(items)
    return out


def powerset_report(universe: Iterable[str], collapsed: Iterable[str], basepoint: str, context: str) -> ObstructionReport:
    """Inclusion-ordered report: basepoint below everything, survivors are
    the subsets with something outside the collapsed set.

    Bitmask representation keeps the order construction at 3^n steps (one
    per subset-superset pair) instead of comparing all subset pairs.
    """
    uni = sorted(set(universe))
    n = len(uni)
    index = {u: i for i, u in enumerate(uni)}
    coll_mask = 0
    for c in set(collapsed):
        coll_mask |= 1 << index[c]
    full = (1 << n) - 1
    free = full & ~coll_mask

    name_of: dict[int, str] = {}
    for mask in range(1, full + 1):
        if mask & free:
            name_of[mask] = subset_name(uni[i] for i in range(n) if mask >> i & 1)

    elems = [basepoint] + list(name_of.values())
    leq = {(basepoint, e) for e in elems}
    for mask, nm in name_of.items():
        leq.add((nm, nm))
        rest = full & ~mask
        s = rest
        while s:
            leq.add((nm, name_of[mask | s]))
            s = (s - 1) & rest
    pp = order.PointedPoset(order.make_poset(elems, leq), basepoint)
    return report_from_pointed(pp, context)


def report_to_dict(r: ObstructionReport) -> dict:
    p = r.invariant.poset
    return {
        "version": 1,
        "kind": "obstruction-report",
        "context": r.context,
        "basepoint": r.invariant.basepoint,
        "elements": sorted(p.elements),
        "element_count": len(p.elements),
        "leq": sorted([a, b] for (a, b) in p.leq),
        "covers": sorted([a, b] for (a, b) in order.hasse(p)),
        "minimal": sorted(r.minimal),
        "trivial": r.trivial,
    }
