"""Greedy star partition, per-class clique covers, and weighted contraction.

The partition is built from a dominating independent set: vertices are
processed in non-increasing degree order (ties by smaller id); a vertex
seeds a new class iff none of its neighbors already seeded one, and every
non-seed joins the class of its earliest-processed seed neighbor. Each
class is therefore a star around its seed, hence connected, and on
intersection graphs of similarly sized fat objects it is a union of O(1)
cliques.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ValidationError
from .graph import Graph, from_edge_list, induced_subgraph, connected_components

DEFAULT_KAPPA = 6
DEFAULT_DELTA = 40


@dataclass(frozen=True)
class KappaPartition:
    """Partition of V into connected classes with per-class clique covers."""

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    center_of: tuple[int, ...]
    clique_cover: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def kappa_observed(self) -> int:
        return max((len(c) for c in self.clique_cover), default=0)


@dataclass(frozen=True)
class ContractedGraph:
    """Class-level graph; class i weighs ceil(log2 |P_i|) + 1.

    edge_witness maps each contracted edge (i, j), i < j, to one original
    edge crossing the two classes.
    """

    base: Graph
    weight: tuple[int, ...]
    class_size: tuple[int, ...]
    edge_witness: dict[tuple[int, int], tuple[int, int]] = field(compare=False)

    @property
    def total_weight(self) -> int:
        return sum(self.weight)


def class_weight(size: int) -> int:
    """ceil(log2(size)) + 1; weight 1 exactly for singleton classes."""
    if size < 1:
        raise ValueError(f"class size must be >= 1, got {size}")
    return (size - 1).bit_length() + 1 if size > 1 else 1


def cover_class_cliques(g: Graph, cls) -> tuple[tuple[int, ...], ...]:
    """Greedy partition of a class into cliques.

    Repeatedly grow a maximal clique from the smallest-id uncovered member,
    adding candidates in id order when adjacent to all current members.
    """
    uncovered = sorted(cls)
    cover = []
    while uncovered:
        clique = [uncovered[0]]
        rest = []
        for cand in uncovered[1:]:
            if all(g.has_edge(cand, u) for u in clique):
                clique.append(cand)
            else:
                rest.append(cand)
        cover.append(tuple(clique))
        uncovered = rest
    return tuple(cover)


def greedy_partition(g: Graph) -> KappaPartition:
    """Star partition from a greedy dominating independent set."""
    if g.n == 0:
        raise ValidationError("cannot partition the empty graph")
    order = sorted(range(g.n), key=lambda v: (-len(g.adj[v]), v))
    position = [0] * g.n
    for pos, v in enumerate(order):
        position[v] = pos
    in_seed = [False] * g.n
    seeds: list[int] = []
    for v in order:
        if not any(in_seed[w] for w in g.adj[v]):
            in_seed[v] = True
            seeds.append(v)
    seed_index = {s: i for i, s in enumerate(seeds)}
    class_of = [-1] * g.n
    for s in seeds:
        class_of[s] = seed_index[s]
    for v in range(g.n):
        if in_seed[v]:
            continue
        best = min((w for w in g.adj[v] if in_seed[w]), key=lambda w: position[w])
        class_of[v] = seed_index[best]
    members: list[list[int]] = [[] for _ in seeds]
    for v in range(g.n):
        members[class_of[v]].append(v)
    classes = tuple(tuple(sorted(m)) for m in members)
    cover = tuple(cover_class_cliques(g, cls) for cls in classes)
    return KappaPartition(
        classes=classes,
        class_of=tuple(class_of),
        center_of=tuple(seeds),
        clique_cover=cover,
    )


def contract(g: Graph, p: KappaPartition) -> ContractedGraph:
    """Contract every class to one vertex, dropping loops and parallels."""
    _check_partition_shape(g, p)
    t = len(p.classes)
    witness: dict[tuple[int, int], tuple[int, int]] = {}
    for (u, v) in g.edges():
        cu, cv = p.class_of[u], p.class_of[v]
        if cu == cv:
            continue
        key = (cu, cv) if cu < cv else (cv, cu)
        if key not in witness:
            witness[key] = (u, v) if cu < cv else (v, u)
    base = from_edge_list(t, witness.keys())
    sizes = tuple(len(c) for c in p.classes)
    return ContractedGraph(
        base=base,
        weight=tuple(class_weight(s) for s in sizes),
        class_size=sizes,
        edge_witness=witness,
    )


def _check_partition_shape(g: Graph, p: KappaPartition) -> None:
    seen = [0] * g.n
    for cls in p.classes:
        for v in cls:
            if not (0 <= v < g.n):
                raise ValidationError(f"class member {v} outside graph")
            seen[v] += 1
    if any(c != 1 for c in seen):
        raise ValidationError("classes do not partition the vertex set")
    for i, cls in enumerate(p.classes):
        sub, _, _ = induced_subgraph(g, cls)
        if len(connected_components(sub)) > 1:
            raise ValidationError(f"class {i} induces a disconnected subgraph")


@dataclass(frozen=True)
class PartitionReport:
    violations: tuple[str, ...]
    kappa_observed: int
    max_contraction_degree: int
    class_count: int

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_partition(
    g: Graph,
    p: KappaPartition,
    delta_bound: int = DEFAULT_DELTA,
    kappa_bound: int = DEFAULT_KAPPA,
) -> PartitionReport:
    """Structural audit: covering, connectivity, clique covers, degree caps."""
    violations: list[str] = []
    seen = [0] * g.n
    for cls in p.classes:
        for v in cls:
            if 0 <= v < g.n:
                seen[v] += 1
            else:
                violations.append(f"vertex {v} outside graph")
    missing = [v for v in range(g.n) if seen[v] == 0]
    doubled = [v for v in range(g.n) if seen[v] > 1]
    if missing:
        violations.append(f"uncovered vertices: {missing[:5]}")
    if doubled:
        violations.append(f"overlapping vertices: {doubled[:5]}")

    for i, cls in enumerate(p.classes):
        ok_members = [v for v in cls if 0 <= v < g.n]
        if ok_members:
            sub, _, _ = induced_subgraph(g, ok_members)
            if len(connected_components(sub)) > 1:
                violations.append(f"class {i} disconnected")
        covered = sorted(v for clique in p.clique_cover[i] for v in clique)
        if covered != sorted(cls):
            violations.append(f"clique cover of class {i} does not partition it")
        for clique in p.clique_cover[i]:
            for a_idx in range(len(clique)):
                for b_idx in range(a_idx + 1, len(clique)):
                    if not g.has_edge(clique[a_idx], clique[b_idx]):
                        violations.append(
                            f"non-adjacent pair {clique[a_idx]},{clique[b_idx]} "
                            f"in a cover clique of class {i}"
                        )

    kappa_obs = p.kappa_observed
    if kappa_obs > kappa_bound:
        violations.append(f"kappa_observed {kappa_obs} exceeds bound {kappa_bound}")

    max_deg = 0
    if not missing and not doubled:
        try:
            cg = contract(g, p)
            max_deg = max((len(a) for a in cg.base.adj), default=0)
            if max_deg > delta_bound:
                violations.append(
                    f"contraction degree {max_deg} exceeds bound {delta_bound}"
                )
        except ValidationError as exc:
            violations.append(str(exc))

    return PartitionReport(
        violations=tuple(violations),
        kappa_observed=kappa_obs,
        max_contraction_degree=max_deg,
        class_count=len(p.classes),
    )
