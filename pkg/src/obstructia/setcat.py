"""Finite-Set specialisations.

Two things live here: a finite skeleton of the category of sets (one set
per cardinality, all functions) so the generic engine has an ambient to run
in, and the powerset fast paths that read off the homotopy posets of a
function directly: obstructions to surjectivity are subsets meeting the
complement of the image, obstructions to injectivity are subsets of the
kernel pair meeting its off-diagonal part.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import fincat, homotopy
from .errors import CapExceeded, OracleMismatch, ParseError

# Past this size the powerset poset is not materialised (2^n elements).
DEFAULT_POWERSET_CAP = 12


@dataclass(frozen=True)
class FiniteFunction:
    dom_set: tuple[str, ...]
    cod_set: tuple[str, ...]
    mapping: dict[str, str]

    def __post_init__(self):
        dom = tuple(sorted(set(self.dom_set)))
        cod = tuple(sorted(set(self.cod_set)))
        object.__setattr__(self, "dom_set", dom)
        object.__setattr__(self, "cod_set", cod)
        for x in dom:
            if x not in self.mapping:
                raise ParseError(f"function undefined on {x!r}")
        for x, y in self.mapping.items():
            if x not in dom:
                raise ParseError(f"mapping defined on stray element {x!r}")
            if y not in cod:
                raise ParseError(f"value {y!r} of {x!r} outside codomain")

    def image(self) -> frozenset:
        return frozenset(self.mapping.values())

    def is_surjective(self) -> bool:
        return self.image() == frozenset(self.cod_set)

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.dom_set)


@dataclass(frozen=True)
class KernelPair:
    """The pullback of a function along itself: all pairs with equal image.
    Always an equivalence relation, which __post_init__ re-checks."""

    pairs: frozenset

    def __post_init__(self):
        elems = {x for p in self.pairs for x in p}
        for x in elems:
            if (x, x) not in self.pairs:
                raise OracleMismatch(f"kernel pair misses diagonal at {x!r}")
        for x, y in self.pairs:
            if (y, x) not in self.pairs:
                raise OracleMismatch(f"kernel pair not symmetric at ({x!r}, {y!r})")
        for x, y in self.pairs:
            for y2, z in self.pairs:
                if y2 == y and (x, z) not in self.pairs:
                    raise OracleMismatch("kernel pair not transitive")

    def off_diagonal(self) -> frozenset:
        return frozenset((x, y) for (x, y) in self.pairs if x != y)


def kernel_pair(f: FiniteFunction) -> KernelPair:
    return KernelPair(
        frozenset(
            (x0, x1)
            for x0 in f.dom_set
            for x1 in f.dom_set
            if f.mapping[x0] == f.mapping[x1]
        )
    )


def pair_label(x0: str, x1: str) -> str:
    return f"({x0},{x1})"


# -- the ambient skeleton ----------------------------------------------------

_AMBIENT_CACHE: dict[int, fincat.FinCat] = {}


def ambient_object(n: int) -> str:
    return str(n)


def ambient_fn_name(m: int, n: int, images: tuple[int, ...]) -> str:
    return f"{m}>{n}:" + "".join(str(i) for i in images)


def finset_ambient(k: int, max_k: int = 4) -> fincat.FinCat:
    """Skeleton with one set per cardinality 0..k and every function between
    them.  Function composition is associative by construction; the table is
    fully law-checked for k <= 3 and identity/typing-checked above that
    (the k = 4 table has ~37 million composable triples)."""
    if k < 0 or k > max_k:
        raise CapExceeded(f"ambient cardinality bound {k} outside 0..{max_k}")
    if k in _AMBIENT_CACHE:
        return _AMBIENT_CACHE[k]

    objects = [ambient_object(n) for n in range(k + 1)]
    morphisms = []
    fn_of: dict[str, tuple[int, int, tuple[int, ...]]] = {}
    for m in range(k + 1):
        for n in range(k + 1):
            for images in product(range(n), repeat=m):
                name = ambient_fn_name(m, n, images)
                morphisms.append((name, ambient_object(m), ambient_object(n)))
                fn_of[name] = (m, n, images)
    identity = {ambient_object(n): ambient_fn_name(n, n, tuple(range(n))) for n in range(k + 1)}
    comp = {}
    for f, (m, n, fi) in fn_of.items():
        for g, (n2, p, gi) in fn_of.items():
            if n == n2:
                comp[(f, g)] = ambient_fn_name(m, p, tuple(gi[i] for i in fi))

    if k <= 3:
        cat = fincat.validate_category(objects, morphisms, identity, comp)
    else:
        cat = fincat._build(objects, morphisms, identity, comp)
    _AMBIENT_CACHE[k] = cat
    return cat


def embed_function(f: FiniteFunction) -> tuple[str, str]:
    """Name of f as a morphism of the ambient skeleton, together with the
    ambient object standing for its codomain.  Elements are matched to
    0..n-1 in sorted order."""
    cod_index = {y: j for j, y in enumerate(f.cod_set)}
    m, n = len(f.dom_set), len(f.cod_set)
    images = tuple(cod_index[f.mapping[x]] for x in f.dom_set)
    return ambient_fn_name(m, n, images), ambient_object(n)


# -- powerset fast paths -------------------------------------------------------


def pi0_function(f: FiniteFunction, cap: int = DEFAULT_POWERSET_CAP) -> homotopy.ObstructionReport:
    """Obstructions to surjectivity: the basepoint (everything at or below
    the image) plus all subsets of the codomain that stick out of the image,
    ordered by inclusion.  Minimal obstructions are the singletons over
    missed elements."""
    if len(f.cod_set) > cap:
        raise CapExceeded(f"codomain of size {len(f.cod_set)} exceeds powerset cap {cap}")
    return homotopy.powerset_report(
        f.cod_set,
        f.image(),
        "{}",
        f"pi0 of function into {homotopy.subset_name(f.cod_set)}",
    )


def pi1_function(f: FiniteFunction, cap: int = DEFAULT_POWERSET_CAP) -> homotopy.ObstructionReport:
    """Obstructions to injectivity: subsets of the kernel pair containing an
    off-diagonal pair, ordered by inclusion over a basepoint."""
    kp = kernel_pair(f)
    if len(kp.pairs) > cap:
        raise CapExceeded(f"kernel pair of size {len(kp.pairs)} exceeds powerset cap {cap}")
    universe = [pair_label(*p) for p in kp.pairs]
    diagonal = [pair_label(x, x) for x in f.dom_set]
    return homotopy.powerset_report(
        universe,
        diagonal,
        "{}",
        "pi1 of function over its kernel pair",
    )


# -- text format -----------------------------------------------------------------
#
#   fn <name> : {a,b} -> {c,d} ; a=>c, b=>c


def _parse_set(text: str) -> tuple[str, ...]:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"expected a {{...}} set, got {text!r}")
    inner = text[1:-1].strip()
    if not inner:
        return ()
    return tuple(part.strip() for part in inner.split(","))


def parse_function(text: str) -> tuple[str, FiniteFunction]:
    """Parse the one-line function format; returns (name, function)."""
    line = None
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            if line is not None:
                raise ParseError("more than one function declaration")
            line = stripped
    if line is None:
        raise ParseError("no function declaration found")
    if not line.startswith("fn "):
        raise ParseError("function line must start with 'fn'")
    rest = line[3:]
    if ";" in rest:
        head, assignments = rest.split(";", 1)
    else:
        head, assignments = rest, ""
    try:
        name_part, arrow_part = head.split(":", 1)
        dom_text, cod_text = arrow_part.split("->", 1)
    except ValueError:
        raise ParseError(f"cannot parse function line {line!r}")
    name = name_part.strip()
    dom = _parse_set(dom_text)
    cod = _parse_set(cod_text)
    mapping = {}
    assignments = assignments.strip()
    if assignments:
        for part in assignments.split(","):
            if "=>" not in part:
                raise ParseError(f"bad assignment {part!r}")
            x, y = part.split("=>", 1)
            x, y = x.strip(), y.strip()
            if x in mapping:
                raise ParseError(f"element {x!r} assigned twice")
            mapping[x] = y
    return name, FiniteFunction(dom, cod, mapping)


def serialize_function(name: str, f: FiniteFunction) -> str:
    dom = "{" + ",".join(f.dom_set) + "}"
    cod = "{" + ",".join(f.cod_set) + "}"
    body = ", ".join(f"{x}=>{f.mapping[x]}" for x in f.dom_set)
    if body:
        return f"fn {name} : {dom} -> {cod} ; {body}\n"
    return f"fn {name} : {dom} -> {cod} ;\n"
