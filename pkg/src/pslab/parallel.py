"""Deterministic parallel map.

Work items are pure; results are collected in input order, so output is
independent of the thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor


def deterministic_map(fn, items, threads: int = 1) -> list:
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))
