"""
Deterministic chunked reductions.

Every enumeration in tccmap walks its index space in chunks of a fixed size
(``2 ** TCCMAP_CHUNK_BITS`` terms). Each chunk is reduced on its own with an
exactly rounded sum and the chunk results are combined in chunk order, so the
value returned does not depend on how many worker threads evaluated the chunks.
"""
import contextlib
import functools
import logging
from concurrent.futures import ThreadPoolExecutor
from contextvars import ContextVar, copy_context
from typing import Callable, Iterator, List, Optional, TypeVar

from tccmap.exceptions import InvalidParameter
from tccmap.settings import TCCMAP_CHUNK_BITS, TCCMAP_THREADS
from tccmap.utils import chunk_ranges, fsum_complex

logger = logging.getLogger(__name__)

T = TypeVar('T')

DEFAULT_THREADS = TCCMAP_THREADS
CHUNK_SIZE = 1 << TCCMAP_CHUNK_BITS

# Per call context; pool tasks run in a copy of the submitting context.
_active_threads: 'ContextVar[int]' = ContextVar('tccmap_active_threads', default=DEFAULT_THREADS)


def active_threads() -> int:
    return _active_threads.get()


@contextlib.contextmanager
def thread_count(threads: int) -> Iterator[int]:
    """Run the enclosed block with ``threads`` worker threads."""
    if threads < 1:
        raise InvalidParameter(f"Thread count must be positive, got {threads}")
    token = _active_threads.set(threads)
    try:
        yield threads
    finally:
        _active_threads.reset(token)


def threads_wrapper(fn):

    @functools.wraps(fn)
    def _wrapper(*args, **kwargs):
        threads = kwargs.pop('threads', None) or active_threads()
        with thread_count(threads):
            return fn(*args, **kwargs)

    return _wrapper


def chunked_map(fn: Callable[[int, int], T], total: int,
                chunk_size: Optional[int] = None) -> List[T]:
    """
    Evaluate ``fn(start, stop)`` over consecutive chunks of ``range(total)``.

    Arguments
    ---------
    fn : Callable
        Chunk evaluator. Must be a pure function of its range.
    total : int
        Size of the index space.
    chunk_size : int, optional
        Override of the configured chunk size.

    Returns
    -------
    List of chunk results, in chunk order.
    """
    ranges = list(chunk_ranges(total, chunk_size or CHUNK_SIZE))
    threads = active_threads()
    logger.debug("evaluating %d chunks over %d indices on %d threads",
                 len(ranges), total, threads)
    if threads == 1 or len(ranges) < 2:
        return [fn(start, stop) for start, stop in ranges]
    with ThreadPoolExecutor(max_workers=min(threads, len(ranges))) as pool:
        futures = [pool.submit(copy_context().run, fn, start, stop) for start, stop in ranges]
        return [f.result() for f in futures]


def chunked_sum(fn: Callable, total: int, chunk_size: Optional[int] = None) -> complex:
    """
    Sum the term arrays returned by ``fn(start, stop)`` over ``range(total)``.
    """
    partials = chunked_map(lambda a, b: fsum_complex(fn(a, b)), total, chunk_size)
    return fsum_complex(partials)
