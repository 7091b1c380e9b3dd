"""Composition and execution of control-driven computing devices.

The heavy lifting lives in the compiled extension; this package re-exports
its surface: loading and validating computon documents, the five
composition operators, script execution and the step-synchronous runner.
"""

from computon._core import (  # noqa: F401
    Composite,
    Computon,
    RunResult,
    bra_closed,
    bra_open,
    compose_script,
    computon_from_json,
    isomorphic,
    leaf,
    load_computon,
    mk_trivial,
    p_async,
    run,
    seq,
    sync,
)

__all__ = [
    "Composite",
    "Computon",
    "RunResult",
    "bra_closed",
    "bra_open",
    "compose_script",
    "computon_from_json",
    "isomorphic",
    "leaf",
    "load_computon",
    "mk_trivial",
    "p_async",
    "run",
    "seq",
    "sync",
]
