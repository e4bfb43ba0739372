"""Exact conservation-law engine for the elliptic equation u_{z zbar} = -f(u).

Thin Python layer over the C++ core.  The heavy lifting (exact rational
arithmetic on jet polynomials, exterior calculus, fraction-free linear
algebra) lives in the compiled module; this package adds JSON conveniences
around the embedded command-line interface.
"""

from __future__ import annotations

import json
from typing import NamedTuple

from ._conslaw import (  # noqa: F401
    __version__,
    build_law,
    classify,
    ps_chain,
    render,
    run,
    solve_vd,
    verify,
)

__all__ = [
    "__version__",
    "build_law",
    "classify",
    "cli",
    "cli_json",
    "ps_chain",
    "render",
    "run",
    "solve_vd",
    "verify",
]


class CliResult(NamedTuple):
    code: int
    stdout: str
    stderr: str


def cli(*args: str) -> CliResult:
    """Run the embedded command-line interface with the given arguments."""
    return CliResult(*run(list(args)))


def cli_json(*args: str):
    """Run the embedded CLI and parse its stdout as JSON.

    Raises RuntimeError when the command exits nonzero.
    """
    result = cli(*args)
    if result.code != 0:
        raise RuntimeError(
            f"conslaw {' '.join(args)} exited with {result.code}: {result.stderr.strip()}"
        )
    return json.loads(result.stdout)
