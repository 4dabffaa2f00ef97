# Copyright (c) 2026, the hybrid authors.
# Licensed under the Apache License Version 2.0.

"""Python front end for the hybrid engine."""

from ._hybrid import (
    Expr,
    InvalidAbstraction,
    NonProperArgument,
    ParseError,
    UnboundName,
    UsageError,
    abstr,
    decode,
    encode,
    evaluate,
    instantiate,
    lambda_,
    lbind,
    level,
    machine,
    match_abstraction,
    principal_type,
    query,
    run_suite,
    show,
    suite_names,
    term,
)

__all__ = [
    "Expr",
    "InvalidAbstraction",
    "NonProperArgument",
    "ParseError",
    "UnboundName",
    "UsageError",
    "abstr",
    "decode",
    "encode",
    "evaluate",
    "instantiate",
    "lambda_",
    "lbind",
    "level",
    "machine",
    "match_abstraction",
    "principal_type",
    "query",
    "run_suite",
    "show",
    "suite_names",
    "term",
]
