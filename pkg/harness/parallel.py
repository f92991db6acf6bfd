"""
Parallel - Fan a per-sample function out over independent random sub-streams
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, TypeVar

from errors import ConvergenceError
from randomness.rng import RngStream

logger = logging.getLogger(__name__)

T = TypeVar("T")


def map_substreams(
    fn: Callable[[RngStream], T],
    seed: int,
    count: int,
    threads: int = 1,
    key: int = 0,
) -> List[T]:
    """
    Evaluate ``fn`` on sub-streams 0..count-1 of RngStream(seed, (key,)).

    Results are ordered by index whatever the completion order, so output
    depends only on (seed, key, count).

    Args:
        fn: Per-sample function
        seed: Root seed
        count: Number of samples
        threads: Worker cap; 1 runs inline
        key: Distinguishes suites sharing one seed

    Returns:
        List of fn results in index order
    """
    root = RngStream(seed, (key,))
    if count <= 0:
        return []
    if threads <= 1 or count == 1:
        return [fn(root.substream(i)) for i in range(count)]

    workers = min(threads, count)
    logger.debug(f"Running {count} samples on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: fn(root.substream(i)), range(count)))


def first_accepted(
    draw: Callable[[RngStream], Optional[T]], rng: RngStream, attempts: int = 1000
) -> T:
    """
    Redraw from successive sub-streams of ``rng`` until ``draw`` returns a value.

    Raises:
        ConvergenceError: no acceptable draw within ``attempts``
    """
    for attempt in range(attempts):
        value = draw(rng.substream(attempt))
        if value is not None:
            return value
    raise ConvergenceError(f"no acceptable draw in {attempts} attempts")
