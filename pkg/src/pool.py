"""Ordered fan-out of independent work items over worker processes."""

import typing
from multiprocessing import Pool

from tqdm import tqdm

T = typing.TypeVar("T")
R = typing.TypeVar("R")


def run_ordered(
    func: typing.Callable[[T], R],
    items: typing.Sequence[T],
    jobs: int = 1,
    desc: str | None = None,
) -> list[R]:
    """Apply func to every item and return results in input order.

    func must be picklable (a module-level function or a functools.partial of
    one) when jobs > 1. The number of workers never changes the results,
    only the wall time.
    """
    progress = tqdm(total=len(items), desc=desc, disable=None, leave=False)
    try:
        if jobs <= 1 or len(items) <= 1:
            results = []
            for item in items:
                results.append(func(item))
                progress.update()
            return results
        with Pool(min(jobs, len(items))) as pool:
            results = []
            for result in pool.imap(func, items):
                results.append(result)
                progress.update()
            return results
    finally:
        progress.close()
