"""Graph problems on certified streams: names, deciders, solvers and reductions."""

from ._core import (
    Stream,
    WgError,
    decide,
    eventually_always,
    exists_one,
    fin_subgraph,
    graph,
    infinitely_often,
    limit,
    oracle,
    pair,
    problem_names,
    run_suite,
    str_code,
    str_decode,
    suite_ids,
    to_json,
    truncate,
    tuple_code,
    tuple_decode,
    unpair,
)

__all__ = [
    "Stream",
    "WgError",
    "decide",
    "eventually_always",
    "exists_one",
    "fin_subgraph",
    "graph",
    "infinitely_often",
    "limit",
    "oracle",
    "pair",
    "problem_names",
    "run_suite",
    "str_code",
    "str_decode",
    "suite_ids",
    "to_json",
    "truncate",
    "tuple_code",
    "tuple_decode",
    "unpair",
]
