"""Deterministic (start, stride) work partitioning.

Workers receive small picklable payloads and rebuild field objects on
their side; results merge in worker-index order so certificates do not
depend on the worker count.
"""

import multiprocessing


def _invoke(payload):
    fn, args, start, stride = payload
    return fn(args, start, stride)


def run_partitioned(fn, args, workers):
    """Run fn(args, start, stride) for start in range(workers)."""
    if workers <= 1:
        return [fn(args, 0, 1)]
    ctx = multiprocessing.get_context("fork")
    payloads = [(fn, args, w, workers) for w in range(workers)]
    with ctx.Pool(workers) as pool:
        return pool.map(_invoke, payloads)
