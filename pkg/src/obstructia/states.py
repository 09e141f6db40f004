"""State-functor laxators for two concrete monoidal contexts.

Cartesian finite sets: tensoring states is pairing, the laxator is a
bijection, and both obstruction posets are trivial.  GF(2) vector spaces
with the tensor product: the laxator is the outer product, which from
dimension 2x2 on is neither surjective (non-separable vectors exist) nor
injective (anything tensored with zero is zero), and the minimal
obstructions are exactly the non-separable states respectively the
colliding input pairs.

Posets are materialised in full while the tensor state space stays small;
past the powerset cap the reports keep the exact basepoint-plus-minimal
sub-poset (which carries the whole separability story), with the elision
recorded in the report context.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import homotopy, order, setcat
from .errors import DimensionCap, ParseError, WrongContext

Matrix = tuple  # rows of 0/1 ints; rows = target dim, columns = source dim


@dataclass(frozen=True)
class StateContext:
    kind: str  # "cartesian" | "gf2"
    dim_cap: int = 6

    def __post_init__(self):
        if self.kind not in ("cartesian", "gf2"):
            raise WrongContext(f"unknown context kind {self.kind!r}")


@dataclass(frozen=True)
class StateSet:
    obj: object
    states: tuple[str, ...]


def _pair(a: str, b: str) -> str:
    return f"({a},{b})"


# -- GF(2) vectors -----------------------------------------------------------


def vec_name(bits: tuple[int, ...]) -> str:
    return "".join(str(b) for b in bits) if bits else "_"


def all_vectors(dim: int) -> list[tuple[int, ...]]:
    return [tuple(reversed(bits)) for bits in product((0, 1), repeat=dim)] if dim else [()]


def tensor_bits(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # Row-major flattening, first factor on the slow index.
    return tuple(x & y for x in a for y in b)


def check_matrix(m: Matrix, rows: int, cols: int):
    if len(m) != rows:
        raise ParseError(f"matrix needs {rows} rows, has {len(m)}")
    for row in m:
        if len(row) != cols:
            raise ParseError(f"matrix row {row!r} needs {cols} columns")
        if any(x not in (0, 1) for x in row):
            raise ParseError(f"matrix row {row!r} is not over GF(2)")


def apply_matrix(m: Matrix, v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(r * x for r, x in zip(row, v)) % 2 for row in m)


def _check_dim(ctx: StateContext, dim: int):
    if dim < 0:
        raise DimensionCap(f"negative dimension {dim}")
    if dim > ctx.dim_cap:
        raise DimensionCap(f"dimension {dim} exceeds cap {ctx.dim_cap}")


# -- state enumeration ---------------------------------------------------------


def states_of(ctx: StateContext, obj) -> StateSet:
    """All morphisms from the unit into the object, enumerated explicitly:
    elements for a finite set, vectors for a GF(2) space."""
    if ctx.kind == "cartesian":
        labels = tuple(obj)
        if len(set(labels)) != len(labels):
            raise ParseError(f"duplicate element labels in {labels!r}")
        return StateSet(labels, labels)
    dim = int(obj)
    _check_dim(ctx, dim)
    return StateSet(dim, tuple(vec_name(v) for v in all_vectors(dim)))


def _gf2_payload(dim: int) -> dict[str, tuple[int, ...]]:
    return {vec_name(v): v for v in all_vectors(dim)}


def _key(ctx: StateContext, obj):
    return (ctx.kind, tuple(obj) if ctx.kind == "cartesian" else int(obj))


_LAXATOR_CACHE: dict = {}
_OBSTRUCTION_CACHE: dict = {}


def laxator(ctx: StateContext, a, b) -> setcat.FiniteFunction:
    """The structural map from pairs of states to states of the tensor:
    pairing for cartesian sets, outer product for GF(2).  Results are cached
    per (context, objects); everything involved is immutable."""
    key = (_key(ctx, a), _key(ctx, b), ctx.dim_cap)
    if key in _LAXATOR_CACHE:
        return _LAXATOR_CACHE[key]
    _LAXATOR_CACHE[key] = _laxator(ctx, a, b)
    return _LAXATOR_CACHE[key]


def _laxator(ctx: StateContext, a, b) -> setcat.FiniteFunction:
    sa, sb = states_of(ctx, a), states_of(ctx, b)
    dom = tuple(_pair(x, y) for x in sa.states for y in sb.states)
    if ctx.kind == "cartesian":
        cod = dom  # product set states are exactly the pairs
        mapping = {p: p for p in dom}
        return setcat.FiniteFunction(dom, cod, mapping)
    m, n = int(a), int(b)
    _check_dim(ctx, m * n)
    va, vb = _gf2_payload(m), _gf2_payload(n)
    cod = tuple(vec_name(v) for v in all_vectors(m * n))
    mapping = {
        _pair(x, y): vec_name(tensor_bits(va[x], vb[y]))
        for x in sa.states
        for y in sb.states
    }
    return setcat.FiniteFunction(dom, cod, mapping)


def separable_states(ctx: StateContext, a, b) -> frozenset:
    return laxator(ctx, a, b).image()


def oplaxator_cartesian(ctx: StateContext, a, b) -> setcat.FiniteFunction:
    """Componentwise projections; a two-sided inverse of the laxator.  Only
    the cartesian context is semicartesian here, anything else refuses."""
    if ctx.kind != "cartesian":
        raise WrongContext("oplaxator requires the cartesian context")
    lax = laxator(ctx, a, b)
    return setcat.FiniteFunction(lax.cod_set, lax.dom_set, {p: p for p in lax.cod_set})


# -- obstruction reports ---------------------------------------------------------


ELIDED_MARK = "full powerset elided"


def _summary_report(missing, context: str) -> homotopy.ObstructionReport:
    """Exact basepoint + minimal-obstruction sub-poset, for state spaces too
    large to materialise the full powerset poset."""
    bp = "{}"
    names = sorted(homotopy.subset_name([y]) for y in missing)
    elements = [bp] + names
    leq = {(bp, e) for e in elements} | {(e, e) for e in elements}
    pp = order.PointedPoset(order.make_poset(elements, leq), bp)
    return homotopy.report_from_pointed(pp, context + f" (minimal sub-poset; {ELIDED_MARK})")


def obstructions(ctx: StateContext, a, b) -> tuple[homotopy.ObstructionReport, homotopy.ObstructionReport]:
    """(pi0, pi1) of the laxator at (a, b).  Minimal pi0 obstructions are the
    non-separable states; minimal pi1 obstructions are the distinct input
    pairs with equal tensor.  Cached like the laxator."""
    key = (_key(ctx, a), _key(ctx, b), ctx.dim_cap)
    if key in _OBSTRUCTION_CACHE:
        return _OBSTRUCTION_CACHE[key]
    _OBSTRUCTION_CACHE[key] = _obstructions(ctx, a, b)
    return _OBSTRUCTION_CACHE[key]


def _obstructions(ctx: StateContext, a, b) -> tuple[homotopy.ObstructionReport, homotopy.ObstructionReport]:
    lax = laxator(ctx, a, b)
    ctx0 = f"pi0 of state laxator at {lax_context(ctx, a, b)}"
    ctx1 = f"pi1 of state laxator at {lax_context(ctx, a, b)}"
    if len(lax.cod_set) <= setcat.DEFAULT_POWERSET_CAP:
        pi0 = setcat.pi0_function(lax)
        pi0 = homotopy.ObstructionReport(pi0.invariant, pi0.minimal, pi0.trivial, ctx0)
    else:
        pi0 = _summary_report(set(lax.cod_set) - lax.image(), ctx0)
    kp = setcat.kernel_pair(lax)
    if len(kp.pairs) <= setcat.DEFAULT_POWERSET_CAP:
        pi1 = setcat.pi1_function(lax)
        pi1 = homotopy.ObstructionReport(pi1.invariant, pi1.minimal, pi1.trivial, ctx1)
    else:
        off = sorted(setcat.pair_label(*p) for p in kp.off_diagonal())
        pi1 = _summary_report(off, ctx1)
    return pi0, pi1


def lax_context(ctx: StateContext, a, b) -> str:
    if ctx.kind == "cartesian":
        return f"sets ({','.join(a)}|{','.join(b)})"
    return f"gf2 dims ({int(a)},{int(b)})"


# -- covariance under local actions ------------------------------------------------


def _pi0_element_subsets(ctx: StateContext, a, b, report: homotopy.ObstructionReport) -> dict:
    lax = laxator(ctx, a, b)
    if ELIDED_MARK in report.context:
        return {e: frozenset([e[1:-1]]) for e in report.invariant.poset.elements if e != report.invariant.basepoint}
    return homotopy.powerset_elements(lax.cod_set, lax.image())


def local_action(ctx: StateContext, f, g) -> order.PointedMap:
    """Pointed map on pi0 obstruction posets induced by acting on the two
    factors separately.

    For cartesian contexts f and g are FiniteFunctions; for GF(2) they are
    bit matrices (rows = target dimension).  A class of states maps to the
    class of its image under the tensored action, collapsing to the
    basepoint exactly when every member becomes separable.  Separability of
    images of separable states is what makes this well-defined, and the
    construction re-checks it via the pointed-map validator.
    """
    if ctx.kind == "cartesian":
        if not isinstance(f, setcat.FiniteFunction) or not isinstance(g, setcat.FiniteFunction):
            raise WrongContext("cartesian local actions are finite functions")
        a, b = f.dom_set, g.dom_set
        a2, b2 = f.cod_set, g.cod_set

        def image_of(name: str, payload=None) -> str:
            x, y = payload
            return _pair(f.mapping[x], g.mapping[y])

        payloads = {
            _pair(x, y): (x, y) for x in a for y in b
        }
    else:
        fm, gm = tuple(tuple(r) for r in f), tuple(tuple(r) for r in g)
        if not fm or not gm:
            raise ParseError("empty matrix")
        a, b = len(fm[0]), len(gm[0])
        a2, b2 = len(fm), len(gm)
        check_matrix(fm, a2, a)
        check_matrix(gm, b2, b)
        _check_dim(ctx, a * b)
        _check_dim(ctx, a2 * b2)
        n, n2 = b, b2

        def image_of(name: str, payload=None) -> str:
            v = payload
            # v is the row-major matrix of the tensor state; act by f V g^T.
            rows = [v[i * n:(i + 1) * n] for i in range(a)]
            mid = [apply_matrix(gm, tuple(r)) for r in rows]  # each length b2
            cols = list(zip(*mid)) if mid else [() for _ in range(n2)]
            out_cols = [apply_matrix(fm, tuple(c)) for c in cols]
            flat = tuple(out_cols[j][i] for i in range(a2) for j in range(n2))
            return vec_name(flat)

        payloads = {vec_name(v): v for v in all_vectors(a * b)}

    src0, _ = obstructions(ctx, a, b)
    dst0, _ = obstructions(ctx, a2, b2)
    subsets = _pi0_element_subsets(ctx, a, b, src0)
    dst_separable = separable_states(ctx, a2, b2)
    dst_elements = set(dst0.invariant.poset.elements)

    mapping = {src0.invariant.basepoint: dst0.invariant.basepoint}
    for e in src0.invariant.poset.elements:
        if e == src0.invariant.basepoint:
            continue
        members = subsets[e]
        image = frozenset(image_of(y, payloads[y]) for y in members)
        if image <= dst_separable:
            mapping[e] = dst0.invariant.basepoint
            continue
        name = homotopy.subset_name(image)
        if name not in dst_elements:
            raise WrongContext(
                "image class not representable in the target report; "
                "matching materialisation levels are required"
            )
        mapping[e] = name
    return order.make_pointed(src0.invariant, dst0.invariant, mapping)
