"""Open graphs: directed graphs with input and output boundary legs.

Composition glues the outputs of the left graph onto the inputs of the right
one (a pushout over the shared boundary).  Reachability sends an open graph
to the relation pairing boundary labels connected by a directed path; it is
lax with respect to gluing, and the gap between "compose the relations" and
"relation of the composite" is measured by the same powerset-collapse
obstruction posets used for functions.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import homotopy, order
from .errors import (
    BoundaryMismatch,
    CapExceeded,
    DanglingReference,
    LaxityViolation,
    NotAGraphHom,
    OracleMismatch,
    ParseError,
    TypeMismatch,
)

# Guard for the obstruction posets: subsets of the composite reachability.
DEFAULT_PAIR_CAP = 12


@dataclass(frozen=True)
class OpenGraph:
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    vertices: tuple[str, ...]
    edges: frozenset
    in_leg: dict[str, str]
    out_leg: dict[str, str]

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        vs = set(self.vertices)
        for u, v in self.edges:
            if u not in vs or v not in vs:
                raise DanglingReference(f"edge ({u!r}, {v!r}) uses unknown vertex")
        for x in self.inputs:
            if x not in self.in_leg:
                raise DanglingReference(f"input {x!r} has no leg")
            if self.in_leg[x] not in vs:
                raise DanglingReference(f"input leg of {x!r} lands outside the graph")
        for y in self.outputs:
            if y not in self.out_leg:
                raise DanglingReference(f"output {y!r} has no leg")
            if self.out_leg[y] not in vs:
                raise DanglingReference(f"output leg of {y!r} lands outside the graph")


@dataclass(frozen=True)
class Relation:
    dom_set: tuple[str, ...]
    cod_set: tuple[str, ...]
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "dom_set", tuple(sorted(set(self.dom_set))))
        object.__setattr__(self, "cod_set", tuple(sorted(set(self.cod_set))))
        for x, y in self.pairs:
            if x not in self.dom_set or y not in self.cod_set:
                raise TypeMismatch(f"pair ({x!r}, {y!r}) outside carrier")


@dataclass(frozen=True)
class GraphHom:
    """Interface-preserving graph homomorphism between open graphs sharing
    boundaries: edges map to edges and both legs commute."""

    source: OpenGraph
    target: OpenGraph
    vertex_map: dict[str, str]

    def __post_init__(self):
        s, t = self.source, self.target
        if set(s.inputs) != set(t.inputs) or set(s.outputs) != set(t.outputs):
            raise BoundaryMismatch("graph homomorphism must preserve the boundary sets")
        tv = set(t.vertices)
        for v in s.vertices:
            if v not in self.vertex_map:
                raise NotAGraphHom(f"vertex {v!r} not mapped")
            if self.vertex_map[v] not in tv:
                raise NotAGraphHom(f"image of {v!r} is not a target vertex")
        for u, v in s.edges:
            if (self.vertex_map[u], self.vertex_map[v]) not in t.edges:
                raise NotAGraphHom(f"edge ({u!r}, {v!r}) has no image edge")
        for x in s.inputs:
            if self.vertex_map[s.in_leg[x]] != t.in_leg[x]:
                raise NotAGraphHom(f"input leg {x!r} does not commute")
        for y in s.outputs:
            if self.vertex_map[s.out_leg[y]] != t.out_leg[y]:
                raise NotAGraphHom(f"output leg {y!r} does not commute")


# -- reachability and relation composition ------------------------------------


def _reachable_from(g: OpenGraph, start: str) -> set:
    seen = {start}
    stack = [start]
    succ: dict[str, list[str]] = {}
    for u, v in g.edges:
        succ.setdefault(u, []).append(v)
    while stack:
        u = stack.pop()
        for v in succ.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def reach(g: OpenGraph) -> Relation:
    """(x, y) related iff a directed path (length >= 0) runs from the vertex
    under input x to the vertex under output y."""
    pairs = set()
    for x in g.inputs:
        seen = _reachable_from(g, g.in_leg[x])
        for y in g.outputs:
            if g.out_leg[y] in seen:
                pairs.add((x, y))
    return Relation(g.inputs, g.outputs, frozenset(pairs))


def compose_rel(r: Relation, s: Relation) -> Relation:
    if set(r.cod_set) != set(s.dom_set):
        raise TypeMismatch("relations not composable")
    pairs = frozenset(
        (x, z) for (x, y) in r.pairs for (y2, z) in s.pairs if y == y2
    )
    return Relation(r.dom_set, s.cod_set, pairs)


def identity_graph(boundary: tuple[str, ...]) -> OpenGraph:
    legs = {x: x for x in boundary}
    return OpenGraph(tuple(boundary), tuple(boundary), tuple(boundary), frozenset(), dict(legs), dict(legs))


# -- gluing composition ----------------------------------------------------------


def compose(g: OpenGraph, h: OpenGraph) -> OpenGraph:
    """Glue outputs of g to the equally-named inputs of h.

    Vertices of the composite are classes of the equivalence generated by
    out_leg_g(y) ~ in_leg_h(y); a class is named by the sorted, side-qualified
    names it merges, so composites are reproducible."""
    if set(g.outputs) != set(h.inputs):
        raise BoundaryMismatch(
            f"outputs {sorted(g.outputs)} do not match inputs {sorted(h.inputs)}"
        )

    def q(side: str, v: str) -> str:
        return f"{side}.{v}"

    parent: dict[str, str] = {}

    def find(a: str) -> str:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: str, b: str):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for v in g.vertices:
        parent[q("L", v)] = q("L", v)
    for v in h.vertices:
        parent[q("R", v)] = q("R", v)
    for y in g.outputs:
        union(q("L", g.out_leg[y]), q("R", h.in_leg[y]))

    members: dict[str, list[str]] = {}
    for a in parent:
        members.setdefault(find(a), []).append(a)
    cls_name = {root: "+".join(sorted(ms)) for root, ms in members.items()}

    def cl(side: str, v: str) -> str:
        return cls_name[find(q(side, v))]

    vertices = sorted(set(cls_name.values()))
    edges = set()
    for u, v in g.edges:
        edges.add((cl("L", u), cl("L", v)))
    for u, v in h.edges:
        edges.add((cl("R", u), cl("R", v)))
    in_leg = {x: cl("L", g.in_leg[x]) for x in g.inputs}
    out_leg = {z: cl("R", h.out_leg[z]) for z in h.outputs}
    return OpenGraph(g.inputs, h.outputs, tuple(vertices), frozenset(edges), in_leg, out_leg)


# -- obstruction posets of the reachability laxator -------------------------------


def _rel_pair_labels(pairs) -> list[str]:
    return [setlabel for setlabel in sorted(f"({x},{y})" for (x, y) in pairs)]


def laxator_obstructions(g: OpenGraph, h: OpenGraph, cap: int = DEFAULT_PAIR_CAP) -> homotopy.ObstructionReport:
    """pi0 of the slice of inclusion-ordered relations over reach(g . h),
    pointed at the composite-of-parts relation.  Non-basepoint elements are
    the sub-relations of the composite's reachability that are not accounted
    for by composing the parts."""
    composed = compose_rel(reach(g), reach(h))
    whole = reach(compose(g, h))
    if not composed.pairs <= whole.pairs:
        raise LaxityViolation("composite of parts exceeds reachability of the composite")
    if len(whole.pairs) > cap:
        raise CapExceeded(f"composite reachability has {len(whole.pairs)} pairs, cap {cap}")
    universe = _rel_pair_labels(whole.pairs)
    collapsed = _rel_pair_labels(composed.pairs)
    basepoint = "[" + homotopy.subset_name(collapsed) + "]"
    return homotopy.powerset_report(
        universe, collapsed, basepoint, "pi0 of reachability laxator"
    )


DEFAULT_PI1_PAIR_CAP = 8


def pi1_laxator(g: OpenGraph, h: OpenGraph, cap: int = DEFAULT_PI1_PAIR_CAP) -> homotopy.ObstructionReport:
    """pi1 at the same point, computed honestly through the thin category of
    sub-relations.  Hom-categories of relations are posets, so this is
    always trivial; the computation serves as the check.  The cap is tighter
    than for pi0 because the thin category carries 3^n morphisms."""
    composed = compose_rel(reach(g), reach(h))
    whole = reach(compose(g, h))
    if not composed.pairs <= whole.pairs:
        raise LaxityViolation("composite of parts exceeds reachability of the composite")
    if len(whole.pairs) > cap:
        raise CapExceeded(f"composite reachability has {len(whole.pairs)} pairs, cap {cap}")
    labels = _rel_pair_labels(whole.pairs)
    n = len(labels)
    full = (1 << n) - 1
    names = {
        m: homotopy.subset_name(l for i, l in enumerate(labels) if m >> i & 1)
        for m in range(full + 1)
    }
    leq = set()
    for m, nm in names.items():
        rest = full & ~m
        s = rest
        leq.add((nm, nm))
        while s:
            leq.add((nm, names[m | s]))
            s = (s - 1) & rest
    downset = order.make_poset(names.values(), leq)
    thin = order.thin_category(downset)
    point = homotopy.subset_name(_rel_pair_labels(composed.pairs))
    report = homotopy.pi1(thin, point)
    if not report.trivial:
        raise OracleMismatch("pi1 of a posetal laxator component must be trivial")
    return report


def act(hom: GraphHom, h: OpenGraph, cap: int = DEFAULT_PAIR_CAP) -> tuple[OpenGraph, order.PointedMap]:
    """Flow of laxator obstructions induced by acting on the left part with
    a 2-morphism.  Returns the acted-on graph and the pointed map from the
    obstruction poset of (source, h) to that of (target, h); obstructions
    may trivialise, the basepoint never moves."""
    g, g2 = hom.source, hom.target
    if set(g.outputs) != set(h.inputs):
        raise BoundaryMismatch("homomorphism target not composable with the right part")
    if not reach(g).pairs <= reach(g2).pairs:
        raise OracleMismatch("reachability must grow along a graph homomorphism")

    src = laxator_obstructions(g, h, cap)
    dst = laxator_obstructions(g2, h, cap)

    whole_src = reach(compose(g, h))
    composed_dst = compose_rel(reach(g2), reach(h))
    subsets = homotopy.powerset_elements(
        _rel_pair_labels(whole_src.pairs), _rel_pair_labels(composed_dst.pairs)
    )
    # The composite reachability only grows, so every source subset is still
    # a subset on the target side; it collapses exactly when the grown
    # composite-of-parts covers it.
    mapping = {src.invariant.basepoint: dst.invariant.basepoint}
    for e in src.invariant.poset.elements:
        if e == src.invariant.basepoint:
            continue
        mapping[e] = e if e in subsets else dst.invariant.basepoint
    return g2, order.make_pointed(src.invariant, dst.invariant, mapping)


# -- text formats -------------------------------------------------------------------
#
#   inputs a,b          outputs c
#   vertex v1           edge v1 -> v2
#   in a = v1           out c = v2


def parse_open_graph(text: str) -> OpenGraph:
    inputs: list[str] = []
    outputs: list[str] = []
    vertices: list[str] = []
    edges = set()
    in_leg: dict[str, str] = {}
    out_leg: dict[str, str] = {}
    saw_inputs = saw_outputs = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "inputs":
            saw_inputs = True
            if len(parts) > 1:
                inputs.extend(x.strip() for x in " ".join(parts[1:]).split(",") if x.strip())
        elif parts[0] == "outputs":
            saw_outputs = True
            if len(parts) > 1:
                outputs.extend(x.strip() for x in " ".join(parts[1:]).split(",") if x.strip())
        elif parts[0] == "vertex" and len(parts) >= 2:
            vertices.extend(parts[1:])
        elif parts[0] == "edge" and len(parts) == 4 and parts[2] == "->":
            edges.add((parts[1], parts[3]))
        elif parts[0] == "in" and len(parts) == 4 and parts[2] == "=":
            in_leg[parts[1]] = parts[3]
        elif parts[0] == "out" and len(parts) == 4 and parts[2] == "=":
            out_leg[parts[1]] = parts[3]
        else:
            raise ParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if not saw_inputs or not saw_outputs:
        raise ParseError("open graph needs 'inputs' and 'outputs' lines")
    return OpenGraph(tuple(inputs), tuple(outputs), tuple(vertices), frozenset(edges), in_leg, out_leg)


def serialize_open_graph(g: OpenGraph) -> str:
    lines = ["inputs " + ",".join(g.inputs), "outputs " + ",".join(g.outputs)]
    lines += [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {u} -> {v}" for u, v in sorted(g.edges)]
    lines += [f"in {x} = {g.in_leg[x]}" for x in g.inputs]
    lines += [f"out {y} = {g.out_leg[y]}" for y in g.outputs]
    return "\n".join(lines) + "\n"


def parse_graph_hom(text: str, source: OpenGraph, target: OpenGraph) -> GraphHom:
    """Vertex-map format: 'map <source vertex> = <target vertex>' lines.
    Unmentioned vertices map to their own name."""
    vmap = {v: v for v in source.vertices}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "map" and len(parts) == 4 and parts[2] == "=":
            vmap[parts[1]] = parts[3]
        else:
            raise ParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
    return GraphHom(source, target, vmap)


def relation_text(r: Relation) -> str:
    return homotopy.subset_name(f"({x},{y})" for (x, y) in r.pairs)


def open_graph_dot(g: OpenGraph) -> str:
    """DOT drawing with boundary legs as labelled half-edges."""

    def quote(s: str) -> str:
        return '"' + s.replace('"', '\\"') + '"'

    lines = ["digraph opengraph {", "  rankdir=LR;"]
    for x in g.inputs:
        lines.append(f"  {quote('in:' + x)} [shape=none];")
    for y in g.outputs:
        lines.append(f"  {quote('out:' + y)} [shape=none];")
    for v in g.vertices:
        lines.append(f"  {quote(v)} [shape=circle];")
    for x in g.inputs:
        lines.append(f"  {quote('in:' + x)} -> {quote(g.in_leg[x])} [style=dashed];")
    for u, v in sorted(g.edges):
        lines.append(f"  {quote(u)} -> {quote(v)};")
    for y in g.outputs:
        lines.append(f"  {quote(g.out_leg[y])} -> {quote('out:' + y)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
