"""Homotopy posets of finite categories and obstruction classification.

Computes the zeroth and first homotopy posets of a pointed finite category,
uses them to classify obstructions to terminality of objects, to morphisms
being split epi / mono / iso, and to compositionality of lax assignments,
with concrete engines for finite sets, open-graph reachability and
state-functor laxators.
"""

from . import cli, errors, fincat, homotopy, opengraph, order, setcat, states

__all__ = [
    "cli",
    "errors",
    "fincat",
    "homotopy",
    "opengraph",
    "order",
    "setcat",
    "states",
]

__version__ = "0.1.0"
