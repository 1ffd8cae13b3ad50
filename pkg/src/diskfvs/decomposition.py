"""Tree decompositions: construction, validation, blowup projection, nice form.

Unweighted decompositions come from elimination orderings (min-degree and
min-fill, optionally refined by a budgeted branch-and-bound over orders).
Weighted decompositions of a contracted graph are obtained by blowing each
class vertex up into a clique of its weight, decomposing the blown graph,
and projecting bags back: a class joins a projected bag iff the bag holds
its entire clique.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InternalError, ValidationError
from .graph import Graph, from_edge_list
from .partition import ContractedGraph

BNB_SIZE_LIMIT = 30
BNB_EXPANSION_BUDGET = 4000


@dataclass(frozen=True)
class TreeDecomposition:
    """Tree of bags; rooted at node 0 by convention."""

    tree: tuple[tuple[int, ...], ...]
    bags: tuple[frozenset[int], ...]
    root: int = 0

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def node_count(self) -> int:
        return len(self.bags)


@dataclass(frozen=True)
class DecompositionReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_decomposition(td: TreeDecomposition, g: Graph) -> DecompositionReport:
    """Check vertex coverage, edge coverage, and the subtree property."""
    violations: list[str] = []
    nodes = len(td.bags)
    if nodes == 0:
        violations.append("decomposition has no nodes")
        return DecompositionReport(tuple(violations))
    if len(td.tree) != nodes:
        violations.append("tree/bag size mismatch")
        return DecompositionReport(tuple(violations))
    # the tree must actually be a tree
    deg_sum = sum(len(a) for a in td.tree)
    seen = {td.root}
    queue = deque([td.root])
    while queue:
        u = queue.popleft()
        for w in td.tree[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != nodes or deg_sum != 2 * (nodes - 1):
        violations.append("decomposition tree is not a tree")
        return DecompositionReport(tuple(violations))

    holder: list[list[int]] = [[] for _ in range(g.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            if 0 <= v < g.n:
                holder[v].append(i)
            else:
                violations.append(f"bag {i} holds unknown vertex {v}")
    for v in range(g.n):
        if not holder[v]:
            violations.append(f"vertex {v} in no bag")
    for (u, v) in g.edges():
        if not any(v in td.bags[i] for i in holder[u]):
            violations.append(f"edge ({u}, {v}) covered by no bag")
    for v in range(g.n):
        if len(holder[v]) <= 1:
            continue
        allowed = set(holder[v])
        start = holder[v][0]
        reach = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for w in td.tree[x]:
                if w in allowed and w not in reach:
                    reach.add(w)
                    queue.append(w)
        if reach != allowed:
            violations.append(f"bags of vertex {v} do not form a subtree")
    return DecompositionReport(tuple(violations))


def _adj_sets(g: Graph) -> list[set[int]]:
    return [set(a) for a in g.adj]


def _eliminate(adj: list[set[int]], alive: set[int], v: int) -> None:
    nbrs = adj[v] & alive
    for a in nbrs:
        for b in nbrs:
            if a != b:
                adj[a].add(b)
        adj[a].discard(v)
    alive.discard(v)


def _order_width(g: Graph, order) -> int:
    adj = _adj_sets(g)
    alive = set(range(g.n))
    width = 0
    for v in order:
        width = max(width, len(adj[v] & alive))
        _eliminate(adj, alive, v)
    return width


def _greedy_order(g: Graph, score) -> list[int]:
    adj = _adj_sets(g)
    alive = set(range(g.n))
    order = []
    while alive:
        v = min(alive, key=lambda u: (score(adj, alive, u), u))
        order.append(v)
        _eliminate(adj, alive, v)
    return order


def _min_degree_score(adj, alive, u) -> int:
    return len(adj[u] & alive)


def _min_fill_score(adj, alive, u) -> int:
    nbrs = sorted(adj[u] & alive)
    fill = 0
    for i in range(len(nbrs)):
        for j in range(i + 1, len(nbrs)):
            if nbrs[j] not in adj[nbrs[i]]:
                fill += 1
    return fill


def _bnb_order(g: Graph, ub_width: int, ub_order: list[int]) -> tuple[int, list[int]]:
    """Budgeted branch-and-bound over elimination orders.

    Exact when the search space fits the expansion budget; otherwise the
    incumbent (still a valid upper bound) is returned.
    """
    best_width = ub_width
    best_order = list(ub_order)
    expansions = 0

    def is_simplicial(adj, alive, v) -> bool:
        nbrs = adj[v] & alive
        return all(b in adj[a] for a in nbrs for b in nbrs if a < b)

    stack: list[tuple[list[set[int]], set[int], list[int], int]] = [
        (_adj_sets(g), set(range(g.n)), [], 0)
    ]
    while stack:
        adj, alive, order, g_max = stack.pop()
        if g_max >= best_width:
            continue
        if expansions >= BNB_EXPANSION_BUDGET:
            break
        expansions += 1
        if len(alive) <= 1:
            width = max(g_max, 0 if not alive else len(adj[next(iter(alive))] & alive))
            if width < best_width:
                best_width = width
                best_order = order + sorted(alive)
            continue
        simp = [v for v in sorted(alive) if is_simplicial(adj, alive, v)]
        candidates = simp[:1] if simp else sorted(alive)
        # push in reverse so the smallest id is explored first
        for v in reversed(candidates):
            deg = len(adj[v] & alive)
            new_gmax = max(g_max, deg)
            if new_gmax >= best_width:
                continue
            new_adj = [set(s) for s in adj]
            new_alive = set(alive)
            _eliminate(new_adj, new_alive, v)
            stack.append((new_adj, new_alive, order + [v], new_gmax))
    return best_width, best_order


def _decomposition_from_order(g: Graph, order) -> TreeDecomposition:
    if g.n == 0:
        return TreeDecomposition(tree=((),), bags=(frozenset(),), root=0)
    adj = _adj_sets(g)
    alive = set(range(g.n))
    pos = {v: i for i, v in enumerate(order)}
    bags: list[frozenset[int]] = []
    parents: list[int | None] = []
    for i, v in enumerate(order):
        nbrs = adj[v] & alive
        bags.append(frozenset(nbrs | {v}))
        if nbrs:
            parents.append(pos[min(nbrs, key=lambda w: pos[w])])
        else:
            parents.append(i + 1 if i + 1 < g.n else None)
        _eliminate(adj, alive, v)
    edges: list[list[int]] = [[] for _ in range(g.n)]
    for i, par in enumerate(parents):
        if par is not None:
            edges[i].append(par)
            edges[par].append(i)
    return TreeDecomposition(
        tree=tuple(tuple(sorted(e)) for e in edges), bags=tuple(bags), root=0
    )


def decompose_unweighted(h: Graph, effort: str = "best") -> TreeDecomposition:
    """Heuristic tree decomposition of an unweighted graph.

    effort: "min-degree", "min-fill", or "best" (both, keep the smaller).
    Graphs of at most 30 vertices additionally get a branch-and-bound
    refinement over elimination orders.
    """
    if effort not in ("min-degree", "min-fill", "best"):
        raise ValidationError(f"unknown effort level {effort!r}")
    if h.n == 0:
        return TreeDecomposition(tree=((),), bags=(frozenset(),), root=0)
    candidates: list[list[int]] = []
    if effort in ("min-degree", "best"):
        candidates.append(_greedy_order(h, _min_degree_score))
    if effort in ("min-fill", "best"):
        candidates.append(_greedy_order(h, _min_fill_score))
    widths = [_order_width(h, o) for o in candidates]
    best_idx = min(range(len(candidates)), key=lambda i: widths[i])
    width, order = widths[best_idx], candidates[best_idx]
    if h.n <= BNB_SIZE_LIMIT:
        width, order = _bnb_order(h, width, order)
    td = _decomposition_from_order(h, order)
    report = validate_decomposition(td, h)
    if not report.ok:
        raise InternalError(f"constructed decomposition invalid: {report.violations}")
    return td


@dataclass(frozen=True)
class BlowupGraph:
    """Unweighted expansion of a weighted contracted graph.

    Class v becomes clique B(v) of size weight(v); blown cliques of
    adjacent classes are fully connected.
    """

    graph: Graph
    member_of: tuple[int, ...]
    cliques: tuple[tuple[int, ...], ...]


def blowup(cg: ContractedGraph) -> BlowupGraph:
    offsets = []
    total = 0
    for w in cg.weight:
        offsets.append(total)
        total += w
    cliques = tuple(
        tuple(range(offsets[i], offsets[i] + cg.weight[i])) for i in range(len(cg.weight))
    )
    member_of = tuple(
        i for i in range(len(cg.weight)) for _ in range(cg.weight[i])
    )
    edges = []
    for clique in cliques:
        for a_idx in range(len(clique)):
            for b_idx in range(a_idx + 1, len(clique)):
                edges.append((clique[a_idx], clique[b_idx]))
    for (u, v) in cg.base.edges():
        for a in cliques[u]:
            for b in cliques[v]:
                edges.append((a, b))
    return BlowupGraph(
        graph=from_edge_list(total, edges), member_of=member_of, cliques=cliques
    )


def project(td_b: TreeDecomposition, bg: BlowupGraph, cg: ContractedGraph) -> TreeDecomposition:
    """Projected decomposition: class in a bag iff its whole clique is.

    Validity follows because every blown clique (and every union of two
    adjacent blown cliques) sits inside some bag of a valid decomposition,
    and intersections of subtrees are subtrees. The result is re-validated
    and a failure is an internal error.
    """
    bags = []
    for bag in td_b.bags:
        bags.append(
            frozenset(
                v for v, clique in enumerate(bg.cliques) if all(b in bag for b in clique)
            )
        )
    td = TreeDecomposition(tree=td_b.tree, bags=tuple(bags), root=td_b.root)
    report = validate_decomposition(td, cg.base)
    if not report.ok:
        raise InternalError(f"projection produced invalid decomposition: {report.violations}")
    return td


def weighted_width(td: TreeDecomposition, cg: ContractedGraph) -> int:
    """Maximum over bags of the total class weight inside the bag."""
    return max((sum(cg.weight[v] for v in bag) for bag in td.bags), default=0)


LEAF = "leaf"
INTRODUCE = "introduce"
FORGET = "forget"
JOIN = "join"


@dataclass(frozen=True)
class NiceDecomposition:
    """Rooted binary-shaped decomposition with unit-change bags.

    Node 0 is the root and has an empty bag; children carry larger ids
    than their parent, so descending id order is a valid bottom-up
    processing order.
    """

    kind: tuple[str, ...]
    vtx: tuple[int | None, ...]
    bags: tuple[frozenset[int], ...]
    children: tuple[tuple[int, ...], ...]
    root: int = 0

    def node_count(self) -> int:
        return len(self.kind)

    def to_tree_decomposition(self) -> TreeDecomposition:
        edges: list[list[int]] = [[] for _ in range(len(self.kind))]
        for u, chs in enumerate(self.children):
            for c in chs:
                edges[u].append(c)
                edges[c].append(u)
        return TreeDecomposition(
            tree=tuple(tuple(sorted(e)) for e in edges), bags=self.bags, root=self.root
        )


class _NiceBuilder:
    def __init__(self):
        self.kind: list[str] = []
        self.vtx: list[int | None] = []
        self.bags: list[frozenset[int]] = []
        self.children: list[list[int]] = []

    def add(self, kind: str, vtx: int | None, bag: frozenset[int], children: list[int]) -> int:
        self.kind.append(kind)
        self.vtx.append(vtx)
        self.bags.append(bag)
        self.children.append(children)
        return len(self.kind) - 1

    def chain_to(self, node: int, target: frozenset[int]) -> int:
        """Forget/introduce chain lifting node's bag to the target bag."""
        bag = self.bags[node]
        for v in sorted(bag - target):
            bag = bag - {v}
            node = self.add(FORGET, v, bag, [node])
        for v in sorted(target - bag):
            bag = bag | {v}
            node = self.add(INTRODUCE, v, bag, [node])
        return node

    def leaf_chain(self, target: frozenset[int]) -> int:
        node = self.add(LEAF, None, frozenset(), [])
        return self.chain_to(node, target)


def make_nice(td: TreeDecomposition) -> NiceDecomposition:
    """Normalize to leaf/introduce/forget/join nodes with an empty root bag."""
    n = len(td.bags)
    parent = [-1] * n
    order = [td.root]
    seen = {td.root}
    for u in order:
        for w in td.tree[u]:
            if w not in seen:
                seen.add(w)
                parent[w] = u
                order.append(w)
    kids: list[list[int]] = [[] for _ in range(n)]
    for v in order[1:]:
        kids[parent[v]].append(v)

    b = _NiceBuilder()
    # children before parents: reversed BFS order
    built: dict[int, int] = {}
    for u in reversed(order):
        bag = td.bags[u]
        if not kids[u]:
            built[u] = b.leaf_chain(bag)
            continue
        lifted = [b.chain_to(built[c], bag) for c in kids[u]]
        node = lifted[0]
        for other in lifted[1:]:
            node = b.add(JOIN, None, bag, [node, other])
        built[u] = node
    top = b.chain_to(built[td.root], frozenset())

    # renumber so the root is 0 and every child id exceeds its parent's
    new_ids = {top: 0}
    bfs = [top]
    for u in bfs:
        for c in b.children[u]:
            new_ids[c] = len(new_ids)
            bfs.append(c)
    count = len(bfs)
    kind: list[str] = [""] * count
    vtx: list[int | None] = [None] * count
    bags: list[frozenset[int]] = [frozenset()] * count
    children: list[tuple[int, ...]] = [()] * count
    for old, new in new_ids.items():
        kind[new] = b.kind[old]
        vtx[new] = b.vtx[old]
        bags[new] = b.bags[old]
        children[new] = tuple(new_ids[c] for c in b.children[old])
    return NiceDecomposition(
        kind=tuple(kind),
        vtx=tuple(vtx),
        bags=tuple(bags),
        children=tuple(children),
        root=0,
    )
