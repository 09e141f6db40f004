"""Finite categories as validated composition tables, plus derived categories.

A category is given extensionally: object ids, morphism ids with domain and
codomain, an identity table, and a composition table that is total exactly on
composable pairs.  ``comp[(f, g)]`` is the diagrammatic composite "f then g",
so it requires ``cod f == dom g`` and has domain ``dom f`` and codomain
``cod g``.  Everything is immutable after validation and safe to share.

Derived constructions (opposite, slice, parallel arrows, arrow category) name
their objects and morphisms canonically so outputs are reproducible byte for
byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    BadCompositionTyping,
    DanglingReference,
    MissingIdentity,
    NonAssociative,
    NotAFunctor,
    NotNatural,
    ParseError,
    SizeCapExceeded,
    UnknownMorphism,
    UnknownObject,
)


@dataclass(frozen=True)
class MorDecl:
    """A morphism declaration: name, domain object, codomain object."""

    name: str
    dom: str
    cod: str


@dataclass(frozen=True)
class SizeCaps:
    """Guards for derived-category construction.

    ``objects`` bounds the object count, ``morphisms`` the morphism count and
    ``comp_entries`` the number of composable pairs (the composition table
    size).  All three are predicted from hom-set cardinalities before any
    table is materialised, so hitting a cap is cheap.
    """

    objects: int = 20_000
    morphisms: int = 50_000
    comp_entries: int = 600_000


DEFAULT_CAPS = SizeCaps()


@dataclass(frozen=True)
class FinCat:
    """Storage is canonical (objects and morphisms sorted by id), so two
    categories with the same tables compare equal however they were built."""

    objects: tuple[str, ...]
    morphisms: tuple[MorDecl, ...]
    identity: dict[str, str]
    comp: dict[tuple[str, str], str]
    _dom: dict[str, str] = field(init=False, repr=False, compare=False)
    _cod: dict[str, str] = field(init=False, repr=False, compare=False)
    _hom: dict[tuple[str, str], tuple[str, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        dom = {m.name: m.dom for m in self.morphisms}
        cod = {m.name: m.cod for m in self.morphisms}
        hom: dict[tuple[str, str], list[str]] = {}
        for m in self.morphisms:
            hom.setdefault((m.dom, m.cod), []).append(m.name)
        object.__setattr__(self, "_dom", dom)
        object.__setattr__(self, "_cod", cod)
        object.__setattr__(self, "_hom", {k: tuple(v) for k, v in hom.items()})

    # -- lookups ---------------------------------------------------------

    def dom(self, m: str) -> str:
        if m not in self._dom:
            raise UnknownMorphism(m)
        return self._dom[m]

    def cod(self, m: str) -> str:
        if m not in self._cod:
            raise UnknownMorphism(m)
        return self._cod[m]

    def has_object(self, x: str) -> bool:
        return x in self.identity

    def has_morphism(self, m: str) -> bool:
        return m in self._dom

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._hom.get((x, y), ())

    def compose(self, f: str, g: str) -> str:
        """Diagrammatic composite f;g."""
        return self.comp[(f, g)]

    def id_of(self, x: str) -> str:
        if x not in self.identity:
            raise UnknownObject(x)
        return self.identity[x]

    def morphism_names(self) -> tuple[str, ...]:
        return tuple(m.name for m in self.morphisms)


def validate_category(
    objects: Iterable[str],
    morphisms: Iterable[tuple[str, str, str]],
    identity: Mapping[str, str],
    comp: Mapping[tuple[str, str], str],
) -> FinCat:
    """Check every categorical law on the given tables and build a FinCat.

    Raises the first failed law with a witness: DanglingReference for unknown
    ids, BadCompositionTyping when comp is partial / overfull / mistyped,
    MissingIdentity for identity failures, NonAssociative with the witness
    triple.
    """
    objs = tuple(objects)
    seen = set()
    for x in objs:
        if x in seen:
            raise DanglingReference(f"duplicate object id {x!r}")
        seen.add(x)
    obj_set = set(objs)

    mors = tuple(MorDecl(*m) for m in morphisms)
    dom = {}
    cod = {}
    for m in mors:
        if m.name in dom:
            raise DanglingReference(f"duplicate morphism id {m.name!r}")
        if m.dom not in obj_set:
            raise DanglingReference(f"morphism {m.name!r} has unknown domain {m.dom!r}")
        if m.cod not in obj_set:
            raise DanglingReference(f"morphism {m.name!r} has unknown codomain {m.cod!r}")
        dom[m.name] = m.dom
        cod[m.name] = m.cod

    ident = dict(identity)
    for x, i in ident.items():
        if x not in obj_set:
            raise DanglingReference(f"identity declared for unknown object {x!r}")
        if i not in dom:
            raise DanglingReference(f"identity of {x!r} is unknown morphism {i!r}")
    for x in objs:
        if x not in ident:
            raise MissingIdentity(x, "no identity declared")
        i = ident[x]
        if dom[i] != x or cod[i] != x:
            raise MissingIdentity(x, f"identity {i!r} is not an endomorphism of {x!r}")

    table = dict(comp)
    for (f, g), h in table.items():
        if f not in dom:
            raise DanglingReference(f"composition entry uses unknown morphism {f!r}")
        if g not in dom:
            raise DanglingReference(f"composition entry uses unknown morphism {g!r}")
        if h not in dom:
            raise DanglingReference(f"composite {h!r} is not a declared morphism")
        if cod[f] != dom[g]:
            raise BadCompositionTyping(f"entry ({f!r}, {g!r}) is not a composable pair")
        if dom[h] != dom[f] or cod[h] != cod[g]:
            raise BadCompositionTyping(
                f"composite of ({f!r}, {g!r}) must go {dom[f]!r} -> {cod[g]!r}, got {h!r}"
            )
    for f in dom:
        for g in dom:
            if cod[f] == dom[g] and (f, g) not in table:
                raise BadCompositionTyping(f"missing composite for composable pair ({f!r}, {g!r})")

    for m in dom:
        left = table[(ident[dom[m]], m)]
        if left != m:
            raise MissingIdentity(m, f"comp(id, {m!r}) = {left!r}")
        right = table[(m, ident[cod[m]])]
        if right != m:
            raise MissingIdentity(m, f"comp({m!r}, id) = {right!r}")

    # Associativity over composable triples, walked through adjacency so the
    # cost is proportional to the number of actual triples.
    out_of: dict[str, list[str]] = {x: [] for x in objs}
    for m in dom:
        out_of[dom[m]].append(m)
    for f in dom:
        for g in out_of[cod[f]]:
            fg = table[(f, g)]
            for h in out_of[cod[g]]:
                if table[(fg, h)] != table[(f, table[(g, h)])]:
                    raise NonAssociative(f, g, h)

    return FinCat(tuple(sorted(objs)), tuple(sorted(mors, key=lambda m: m.name)), ident, table)


def _build(objects, morphisms, identity, comp) -> FinCat:
    """Construct without re-running the validator (derived categories are
    correct by construction; tests re-validate small instances)."""
    mors = tuple(sorted((MorDecl(*m) for m in morphisms), key=lambda m: m.name))
    return FinCat(tuple(sorted(objects)), mors, dict(identity), dict(comp))


# -- functors and natural transformations --------------------------------


@dataclass(frozen=True)
class FunctorData:
    source: FinCat
    target: FinCat
    obj_map: dict[str, str]
    mor_map: dict[str, str]

    def apply_obj(self, x: str) -> str:
        return self.obj_map[x]

    def apply_mor(self, m: str) -> str:
        return self.mor_map[m]


def validate_functor(source: FinCat, target: FinCat, obj_map: Mapping[str, str], mor_map: Mapping[str, str]) -> FunctorData:
    """Exhaustively check that the maps preserve dom, cod, identities and
    composition; NotAFunctor carries the first witness otherwise."""
    om = dict(obj_map)
    mm = dict(mor_map)
    for x in source.objects:
        if x not in om:
            raise NotAFunctor(x, "object not mapped")
        if not target.has_object(om[x]):
            raise NotAFunctor(x, f"image object {om[x]!r} not in target")
    for m in source.morphisms:
        if m.name not in mm:
            raise NotAFunctor(m.name, "morphism not mapped")
        fm = mm[m.name]
        if not target.has_morphism(fm):
            raise NotAFunctor(m.name, f"image morphism {fm!r} not in target")
        if target.dom(fm) != om[m.dom] or target.cod(fm) != om[m.cod]:
            raise NotAFunctor(m.name, "image morphism mistyped")
    for x in source.objects:
        if mm[source.id_of(x)] != target.id_of(om[x]):
            raise NotAFunctor(x, "identity not preserved")
    for (f, g), h in source.comp.items():
        if target.comp[(mm[f], mm[g])] != mm[h]:
            raise NotAFunctor((f, g), "composition not preserved")
    return FunctorData(source, target, om, mm)


def identity_functor(c: FinCat) -> FunctorData:
    return FunctorData(c, c, {x: x for x in c.objects}, {m.name: m.name for m in c.morphisms})


def compose_functors(first: FunctorData, second: FunctorData) -> FunctorData:
    if first.target is not second.source and first.target != second.source:
        raise NotAFunctor("composite", "middle categories differ")
    return FunctorData(
        first.source,
        second.target,
        {x: second.obj_map[y] for x, y in first.obj_map.items()},
        {m: second.mor_map[n] for m, n in first.mor_map.items()},
    )


@dataclass(frozen=True)
class NatTransData:
    source: FunctorData
    target: FunctorData
    components: dict[str, str]


def validate_nat_trans(source: FunctorData, target: FunctorData, components: Mapping[str, str]) -> NatTransData:
    if source.source != target.source or source.target != target.target:
        raise NotNatural("functor boundaries differ")
    c = source.source
    d = source.target
    comps = dict(components)
    for x in c.objects:
        if x not in comps:
            raise NotNatural(x)
        a = comps[x]
        if not d.has_morphism(a):
            raise NotNatural(x)
        if d.dom(a) != source.obj_map[x] or d.cod(a) != target.obj_map[x]:
            raise NotNatural(x)
    for m in c.morphisms:
        # F f ; alpha_y  ==  alpha_x ; G f
        left = d.comp[(source.mor_map[m.name], comps[m.cod])]
        right = d.comp[(comps[m.dom], target.mor_map[m.name])]
        if left != right:
            raise NotNatural(m.name)
    return NatTransData(source, target, comps)


# -- derived categories ---------------------------------------------------


def opposite(c: FinCat) -> FinCat:
    """Reverse every arrow; an involution on the nose."""
    mors = tuple((m.name, m.cod, m.dom) for m in c.morphisms)
    comp = {(g, f): h for (f, g), h in c.comp.items()}
    return _build(c.objects, mors, c.identity, comp)


def _fresh_name(base: str, used: set) -> str:
    name = base
    n = 1
    while name in used:
        n += 1
        name = f"{base}#{n}"
    used.add(name)
    return name


class SliceCategory(NamedTuple):
    cat: FinCat
    projection: FunctorData


class ParallelArrowCategory(NamedTuple):
    cat: FinCat
    projection: FunctorData
    pairs: dict[str, tuple[str, str]]


def _check_caps(what: str, n_obj: int, n_mor: int, n_comp: int, caps: SizeCaps):
    if n_obj > caps.objects:
        raise SizeCapExceeded(f"{what} objects", n_obj, caps.objects)
    if n_mor > caps.morphisms:
        raise SizeCapExceeded(f"{what} morphisms", n_mor, caps.morphisms)
    if n_comp > caps.comp_entries:
        raise SizeCapExceeded(f"{what} composition entries", n_comp, caps.comp_entries)


def slice_category(c: FinCat, x: str, caps: SizeCaps = DEFAULT_CAPS) -> SliceCategory:
    """The slice over x: objects are morphisms with codomain x (named by
    their morphism id), a morphism f -> g is an h with h;g = f, and the
    projection sends f to dom f and each slice morphism to its witness h."""
    if not c.has_object(x):
        raise UnknownObject(x)

    slice_objs = [m.name for m in c.morphisms if m.cod == x]

    # Predicted sizes from hom-set cardinalities only.
    n_obj = len(slice_objs)
    into = {z: sum(len(c.hom(y, z)) for y in c.objects) for z in c.objects}
    weight = {z: len(c.hom(z, x)) for z in c.objects}
    n_mor = sum(len(c.hom(y, z)) * weight[z] for y in c.objects for z in c.objects)
    outp = {z: sum(len(c.hom(z, w)) * weight[w] for w in c.objects) for z in c.objects}
    n_comp = sum(into[z] * outp[z] for z in c.objects)
    _check_caps(f"slice over {x!r}", n_obj, n_mor, n_comp, caps)

    used: set = set()
    mors = []
    witness: dict[str, tuple[str, str, str]] = {}
    by_key: dict[tuple[str, str, str], str] = {}
    # One slice morphism per (h, target object g): source is h;g.
    for g in slice_objs:
        for h in c.morphism_names():
            if c.cod(h) != c.dom(g):
                continue
            f = c.comp[(h, g)]
            name = _fresh_name(f"{h}[{f}=>{g}]", used)
            mors.append((name, f, g))
            witness[name] = (f, h, g)
            by_key[(f, h, g)] = name

    ident = {}
    for f in slice_objs:
        ident[f] = by_key[(f, c.id_of(c.dom(f)), f)]

    comp = {}
    incoming: dict[str, list[str]] = {g: [] for g in slice_objs}
    outgoing: dict[str, list[str]] = {g: [] for g in slice_objs}
    for name, (f, h, g) in witness.items():
        incoming[g].append(name)
        outgoing[f].append(name)
    for mid in slice_objs:
        for m1 in incoming[mid]:
            f, h1, _ = witness[m1]
            for m2 in outgoing[mid]:
                _, h2, l = witness[m2]
                comp[(m1, m2)] = by_key[(f, c.comp[(h1, h2)], l)]

    cat = _build(slice_objs, mors, ident, comp)
    projection = FunctorData(
        cat, c, {f: c.dom(f) for f in slice_objs}, {name: w[1] for name, w in witness.items()}
    )
    return SliceCategory(cat, projection)


def pair_name(f0: str, f1: str) -> str:
    return f"({f0},{f1})"


def parallel_arrows(c: FinCat, x: str, caps: SizeCaps = DEFAULT_CAPS) -> ParallelArrowCategory:
    """Category of parallel pairs into x.  Objects are ordered pairs
    (f0, f1): y -> x; a morphism to (g0, g1) is an h with h;g_i = f_i."""
    if not c.has_object(x):
        raise UnknownObject(x)

    weight = {y: len(c.hom(y, x)) ** 2 for y in c.objects}
    n_obj = sum(weight.values())
    n_mor = sum(len(c.hom(y, z)) * weight[z] for y in c.objects for z in c.objects)
    into = {z: sum(len(c.hom(y, z)) for y in c.objects) for z in c.objects}
    outp = {z: sum(len(c.hom(z, w)) * weight[w] for w in c.objects) for z in c.objects}
    n_comp = sum(into[z] * outp[z] for z in c.objects)
    _check_caps(f"parallel arrows over {x!r}", n_obj, n_mor, n_comp, caps)

    objs = []
    pairs: dict[str, tuple[str, str]] = {}
    obj_of_pair: dict[tuple[str, str], str] = {}
    for y in c.objects:
        for f0 in c.hom(y, x):
            for f1 in c.hom(y, x):
                name = pair_name(f0, f1)
                objs.append(name)
                pairs[name] = (f0, f1)
                obj_of_pair[(f0, f1)] = name

    used: set = set()
    mors = []
    witness: dict[str, tuple[str, str, str]] = {}
    by_key: dict[tuple[str, str, str], str] = {}
    for tgt in objs:
        g0, g1 = pairs[tgt]
        z = c.dom(g0)
        for h in c.morphism_names():
            if c.cod(h) != z:
                continue
            src = obj_of_pair[(c.comp[(h, g0)], c.comp[(h, g1)])]
            name = _fresh_name(f"{h}[{src}=>{tgt}]", used)
            mors.append((name, src, tgt))
            witness[name] = (src, h, tgt)
            by_key[(src, h, tgt)] = name

    ident = {}
    for p in objs:
        f0, _ = pairs[p]
        ident[p] = by_key[(p, c.id_of(c.dom(f0)), p)]

    incoming: dict[str, list[str]] = {p: [] for p in objs}
    outgoing: dict[str, list[str]] = {p: [] for p in objs}
    for name, (src, h, tgt) in witness.items():
        incoming[tgt].append(name)
        outgoing[src].append(name)
    comp = {}
    for mid in objs:
        for m1 in incoming[mid]:
            src, h1, _ = witness[m1]
            for m2 in outgoing[mid]:
                _, h2, tgt = witness[m2]
                comp[(m1, m2)] = by_key[(src, c.comp[(h1, h2)], tgt)]

    cat = _build(objs, mors, ident, comp)
    projection = FunctorData(
        cat, c, {p: c.dom(pairs[p][0]) for p in objs}, {name: w[1] for name, w in witness.items()}
    )
    return ParallelArrowCategory(cat, projection, pairs)


def arrow_category(c: FinCat, caps: SizeCaps = DEFAULT_CAPS) -> FinCat:
    """Objects are morphisms of c; morphisms are commuting squares
    (h0, h1): f -> g with f;h1 = h0;g."""
    objs = [m.name for m in c.morphisms]
    if len(objs) > caps.objects:
        raise SizeCapExceeded("arrow category objects", len(objs), caps.objects)

    used: set = set()
    mors = []
    square: dict[str, tuple[str, str, str, str]] = {}
    by_key: dict[tuple[str, str, str, str], str] = {}
    names = c.morphism_names()
    for f in objs:
        for g in objs:
            for h0 in c.hom(c.dom(f), c.dom(g)):
                for h1 in c.hom(c.cod(f), c.cod(g)):
                    if c.comp[(f, h1)] != c.comp[(h0, g)]:
                        continue
                    name = _fresh_name(f"({h0},{h1})[{f}=>{g}]", used)
                    mors.append((name, f, g))
                    square[name] = (f, h0, h1, g)
                    by_key[(f, h0, h1, g)] = name
                    if len(mors) > caps.morphisms:
                        raise SizeCapExceeded("arrow category morphisms", len(mors), caps.morphisms)

    ident = {f: by_key[(f, c.id_of(c.dom(f)), c.id_of(c.cod(f)), f)] for f in objs}

    incoming: dict[str, list[str]] = {f: [] for f in objs}
    outgoing: dict[str, list[str]] = {f: [] for f in objs}
    for name, (f, _, _, g) in square.items():
        incoming[g].append(name)
        outgoing[f].append(name)
    comp = {}
    for mid in objs:
        for m1 in incoming[mid]:
            f, h0, h1, _ = square[m1]
            for m2 in outgoing[mid]:
                _, k0, k1, g = square[m2]
                comp[(m1, m2)] = by_key[(f, c.comp[(h0, k0)], c.comp[(h1, k1)], g)]
                if len(comp) > caps.comp_entries:
                    raise SizeCapExceeded("arrow category composition entries", len(comp), caps.comp_entries)

    return _build(objs, mors, ident, comp)


def is_groupoid(c: FinCat) -> bool:
    """True iff every morphism has a two-sided inverse in the table."""
    for m in c.morphisms:
        if not any(
            c.comp[(m.name, g)] == c.id_of(m.dom) and c.comp[(g, m.name)] == c.id_of(m.cod)
            for g in c.hom(m.cod, m.dom)
        ):
            return False
    return True


# -- text format -----------------------------------------------------------
#
#   obj <id>
#   mor <id> : <dom> -> <cod>
#   id <obj> = <mor>
#   comp <f> ; <g> = <h>
#
# '#' starts a comment; blank lines are ignored.


def parse_category(text: str) -> FinCat:
    objects: list[str] = []
    morphisms: list[tuple[str, str, str]] = []
    identity: dict[str, str] = {}
    comp: dict[tuple[str, str], str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "obj" and len(parts) == 2:
                objects.append(parts[1])
            elif parts[0] == "mor" and len(parts) == 6 and parts[2] == ":" and parts[4] == "->":
                morphisms.append((parts[1], parts[3], parts[5]))
            elif parts[0] == "id" and len(parts) == 4 and parts[2] == "=":
                if parts[1] in identity:
                    raise ParseError(f"line {lineno}: duplicate identity for {parts[1]!r}")
                identity[parts[1]] = parts[3]
            elif parts[0] == "comp" and len(parts) == 6 and parts[2] == ";" and parts[4] == "=":
                key = (parts[1], parts[3])
                if key in comp:
                    raise ParseError(f"line {lineno}: duplicate composition entry {key!r}")
                comp[key] = parts[5]
            else:
                raise ParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except IndexError:
            raise ParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
    return validate_category(objects, morphisms, identity, comp)


def serialize_category(c: FinCat) -> str:
    lines = [f"obj {x}" for x in sorted(c.objects)]
    lines += [f"mor {m.name} : {m.dom} -> {m.cod}" for m in sorted(c.morphisms, key=lambda m: m.name)]
    lines += [f"id {x} = {c.identity[x]}" for x in sorted(c.identity)]
    lines += [f"comp {f} ; {g} = {h}" for (f, g), h in sorted(c.comp.items())]
    return "\n".join(lines) + "\n"
