"""Kernel, checker and evaluator for generalized algebraic theories."""

from ._gat import (
    DEFAULT_FUEL,
    Expr,
    GatError,
    Model,
    Signature,
    audit,
    build,
    check_model,
    corpus_names,
    derive,
    evaluate,
    infer,
    load_model,
    load_model_file,
    load_theory,
    model_source,
    monoid_stages,
    normalize,
    parse_expr,
    parse_goal,
    parse_theory,
    theory_source,
)


def error_kind(err: GatError) -> str:
    """The kernel's error kind, e.g. "NormalFormsDiffer"."""
    return err.args[0]


__all__ = [name for name in dir() if not name.startswith("_")]
