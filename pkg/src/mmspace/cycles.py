"""Simple cycles of small undirected graphs."""

from __future__ import annotations

from typing import Hashable, Mapping, Sequence


def simple_cycles(adj: Mapping[Hashable, Sequence[Hashable]]) -> list[tuple]:
    """Every simple cycle of length >= 3, once up to rotation and reflection.

    Each cycle is reported starting at its least vertex, heading towards the
    smaller of its two neighbours there.  Vertices must be mutually orderable.
    """
    nbrs = {v: sorted(set(ws)) for v, ws in adj.items()}
    for v, ws in nbrs.items():
        if v in ws:
            raise ValueError(f"self-loop at {v!r}")
    cycles = []
    for start in sorted(nbrs):
        path = [start]
        on_path = {start}

        def extend(v):
            for w in nbrs[v]:
                if w == start and len(path) >= 3 and path[1] < path[-1]:
                    cycles.append(tuple(path))
                elif w > start and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.discard(w)

        extend(start)
    return cycles


def girth(adj: Mapping[Hashable, Sequence[Hashable]]) -> int | None:
    lengths = [len(c) for c in simple_cycles(adj)]
    return min(lengths) if lengths else None
