"""
Harness Module - Sub-stream fan-out plus the planner, executor and verifier
behind the verify subcommand

Import the planner, executor and verifier from their modules; they depend on
the checks package, which itself depends on ``harness.parallel``.
"""

from .parallel import map_substreams, first_accepted

__all__ = [
    "map_substreams",
    "first_accepted",
]
