"""Symbolic Hom/Ext calculator for locally compact Polish abelian groups."""

from ._lcacalc import (  # noqa: F401
    Calculator,
    derive,
    dual,
    ext,
    ext_countable,
    hom,
    injective,
    member,
    oracle_ext,
    projective,
    query,
    resolve,
    selftest,
)

__all__ = [
    "Calculator",
    "derive",
    "dual",
    "ext",
    "ext_countable",
    "hom",
    "injective",
    "member",
    "oracle_ext",
    "projective",
    "query",
    "resolve",
    "selftest",
]
