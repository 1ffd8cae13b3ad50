"""Shared builders and independent reference implementations.

The reference code here is deliberately written from scratch (plain DFS,
all-pairs loops, recursive partition enumeration) so package bugs cannot
hide behind shared helpers.
"""

from __future__ import annotations

import itertools
import math

import pytest

from diskfvs import Graph, from_edge_list


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def naive_has_cycle(g: Graph) -> bool:
    """Reference cycle detection: DFS with parent tracking."""
    color = [0] * g.n
    for start in range(g.n):
        if color[start]:
            continue
        stack = [(start, -1)]
        color[start] = 1
        while stack:
            u, parent = stack.pop()
            skipped_parent = False
            for w in g.adj[u]:
                if w == parent and not skipped_parent:
                    skipped_parent = True
                    continue
                if color[w]:
                    return True
                color[w] = 1
                stack.append((w, u))
    return False


def naive_min_fvs(g: Graph) -> int:
    """Reference minimum FVS: subset enumeration with the naive cycle check."""
    from diskfvs import induced_subgraph

    if not naive_has_cycle(g):
        return 0
    for size in range(1, g.n + 1):
        for comb in itertools.combinations(range(g.n), size):
            keep = [v for v in range(g.n) if v not in comb]
            sub, _, _ = induced_subgraph(g, keep)
            if not naive_has_cycle(sub):
                return size
    raise AssertionError("unreachable")


def all_partitions(items: tuple[int, ...]):
    """Every partition of items, as tuples of tuples."""
    items = tuple(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in all_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + ((first,) + sub[i],) + sub[i + 1:]
        yield ((first,),) + sub


def merge_blocks_acyclic(p_blocks, q_blocks, ground: tuple[int, ...]) -> bool:
    """Reference acyclicity of merging two partitions over the same ground.

    Uses the bipartite block-graph criterion: the merge is acyclic exactly
    when the joined partition has |p| + |q| - |ground| blocks.
    """
    index = {x: i for i, x in enumerate(ground)}
    parent = list(range(len(ground)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    blocks = len(ground)
    for part in (p_blocks, q_blocks):
        for blk in part:
            ids = [index[x] for x in blk]
            for other in ids[1:]:
                ra, rb = find(ids[0]), find(other)
                if ra != rb:
                    parent[rb] = ra
                    blocks -= 1
    return blocks == len(p_blocks) + len(q_blocks) - len(ground)


def blocks_of(part: tuple[int, ...]):
    """Canonical partition tuple -> tuple of position blocks."""
    out: dict[int, list[int]] = {}
    for pos, b in enumerate(part):
        out.setdefault(b, []).append(pos)
    return tuple(tuple(v) for v in out.values())


def euclid(a, b) -> float:
    return math.dist((a.x, a.y), (b.x, b.y))


@pytest.fixture
def c6() -> Graph:
    return cycle_graph(6)
