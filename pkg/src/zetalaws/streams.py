"""Deterministic per-worker random streams."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

ENV_SEED = "ZETALAWS_SEED"
DEFAULT_SEED = 20150401


def worker_stream(seed: int, worker: int) -> np.random.Generator:
    """Generator for ``worker`` derived from the pair ``(seed, worker)``.

    The pair is hashed by :class:`numpy.random.SeedSequence`, so streams of
    different workers are independent and a fixed pair always gives the same
    stream.
    """
    if seed < 0 or worker < 0:
        raise ValueError("seed and worker index must be non-negative")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(worker)])))


def split_samples(samples: int, workers: int) -> list[int]:
    base, extra = divmod(samples, workers)
    return [base + (i < extra) for i in range(workers)]


def run_workers(task, samples: int, seed: int, workers: int = 1) -> list:
    """Run ``task(n_i, rng_i)`` for each worker chunk and return results in order.

    Results depend only on ``(samples, seed, workers)``.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    chunks = split_samples(samples, workers)
    rngs = [worker_stream(seed, i) for i in range(workers)]
    if workers == 1:
        return [task(chunks[0], rngs[0])]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, chunks, rngs))
