"""Enumeration of predecessor-closed subsets (order ideals) of a finite poset."""

from __future__ import annotations

from typing import Iterator, Sequence


def iter_ideals(count: int, preds: Sequence[frozenset[int]]) -> Iterator[frozenset[int]]:
    """Yield every subset of 0..count-1 that contains all predecessors of
    each of its members, smallest subsets first and lexicographic within a
    size.  ``preds[i]`` are the direct predecessors of element i; the walk
    closes them transitively on its own.

    Memory is proportional to the widest size level, so callers that only
    need a bounded prefix should stop consuming early.
    """
    level: set[frozenset[int]] = {frozenset()}
    while level:
        for ideal in sorted(level, key=lambda c: tuple(sorted(c))):
            yield ideal
        grown: set[frozenset[int]] = set()
        for ideal in level:
            for element in range(count):
                if element not in ideal and preds[element] <= ideal:
                    grown.add(ideal | {element})
        level = grown
