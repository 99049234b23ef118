#!/usr/bin/env python3
"""Ordered process-pool map with an optional tqdm bar."""
from __future__ import annotations

import os
from multiprocessing import Pool
from typing import Callable, Iterable, List, Sequence, TypeVar

from dotenv import load_dotenv
from tqdm import tqdm

load_dotenv(override=True)

DEFAULT_JOBS = max(1, int(os.getenv("LAMBDASTAR_JOBS", "1")))
SHOW_PROGRESS = os.getenv("LAMBDASTAR_PROGRESS", "1") == "1"
CHUNK_SIZE = 16

A = TypeVar("A")
R = TypeVar("R")


def ordered_map(
    func: Callable[[A], R],
    items: Sequence[A],
    jobs: int = DEFAULT_JOBS,
    desc: str = "",
) -> List[R]:
    """Results come back in input order whatever the worker count."""
    progress = SHOW_PROGRESS and len(items) > 1
    if jobs <= 1 or len(items) < 2:
        results: Iterable[R] = map(func, items)
        if progress:
            results = tqdm(results, total=len(items), desc=desc, leave=False)
        return list(results)
    with Pool(processes=jobs) as pool:
        results = pool.imap(func, items, chunksize=CHUNK_SIZE)
        if progress:
            results = tqdm(results, total=len(items), desc=desc, leave=False)
        return list(results)


__all__ = ["DEFAULT_JOBS", "ordered_map"]
