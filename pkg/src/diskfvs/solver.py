"""End-to-end feedback vertex set decision and search.

Pipeline: peel degree <= 1 vertices, split into components, star-partition
each component, contract to the weighted class graph, decompose via blowup
and projection, then run the clique-constrained connectivity DP over the
nice decomposition. Threshold certificates (contraction width above
c * sqrt(k), or more than c1 * k high-degree survivors) can short-circuit
with a "no"; they are only sound for geometric instances and stay off
unless explicitly enabled.

DP state at a nice-decomposition node: the selection of surviving vertices
per bag class (at most two per cover clique), the partition of the selected
vertices into connected pieces of the partial forest, and the total number
of vertices kept so far (maximized). Edges are committed when the later of
their two classes is introduced; at join nodes both branches have committed
the edges induced inside the shared bag, so the acyclicity test counts
those shared edges once:

    blocks(join(p1, p2)) == blocks(p1) + blocks(p2) + shared_edges - |kept|
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Any

from .decomposition import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    NiceDecomposition,
    blowup,
    decompose_unweighted,
    make_nice,
    project,
    validate_decomposition,
    weighted_width,
)
from .errors import InternalError, ResourceError, ValidationError
from .graph import (
    Graph,
    connected_components,
    count_high_degree,
    induced_subgraph,
    is_forest,
    peel_degree_one,
)
from .oracle import DEFAULT_BUDGET, min_fvs_bruteforce
from .partition import KappaPartition, contract, greedy_partition
from .reduction import (
    Partition,
    RepresentativeTable,
    Signature,
    block_count,
    canonicalize,
    rank_reduce,
)

MODES = ("auto", "dp-naive", "dp-rank", "oracle")

DEFAULT_WIDTH_COEFF = 5.0
DEFAULT_HIGHDEG_COEFF = 10.0
WIDTH_SAFETY_CAP = 64
STATE_BUDGET = 50_000_000


@dataclass(frozen=True)
class SolveConfig:
    k: int
    mode: str = "auto"
    width_threshold_coeff: float = DEFAULT_WIDTH_COEFF
    highdeg_threshold_coeff: float = DEFAULT_HIGHDEG_COEFF
    enable_thresholds: bool = False
    seed: int = 0
    geometric_provenance: bool = False
    effort: str = "best"
    width_safety_cap: int = WIDTH_SAFETY_CAP
    state_budget: int = STATE_BUDGET
    debug_edge_accounting: bool = False

    def __post_init__(self):
        if self.k < 0:
            raise ValidationError(f"k must be >= 0, got {self.k}")
        if self.mode not in MODES:
            raise ValidationError(f"unknown mode {self.mode!r}")
        if self.width_threshold_coeff <= 0 or self.highdeg_threshold_coeff <= 0:
            raise ValidationError("threshold coefficients must be positive")

    @property
    def thresholds_active(self) -> bool:
        if self.mode == "oracle":
            return False
        if self.enable_thresholds:
            return True
        return self.mode == "auto" and self.geometric_provenance


@dataclass(frozen=True)
class Solution:
    verdict: str
    fvs: tuple[int, ...] | None
    certificate: str
    stats: dict[str, Any] = field(default_factory=dict, compare=False)


def quick_reject_highdeg(g_peeled: Graph, k: int, c1: float) -> bool:
    """True iff the peeled graph has more than c1 * k high-degree vertices."""
    return count_high_degree(g_peeled) > c1 * k


def local_selections(cls, cover) -> list[tuple[int, ...]]:
    """All ways to keep at most two vertices from each cover clique.

    A feedback vertex set must take all but two vertices of any clique, so
    these are the only survivor sets worth considering for one class. The
    enumeration is deterministic: per clique the empty set, then singletons
    and pairs in id order, combined in cover order.
    """
    options_per_clique = []
    for clique in cover:
        opts: list[tuple[int, ...]] = [()]
        opts.extend((v,) for v in clique)
        opts.extend(itertools.combinations(clique, 2))
        options_per_clique.append(opts)
    out = []
    for combo in itertools.product(*options_per_clique):
        merged = tuple(sorted(v for part in combo for v in part))
        out.append(merged)
    return out


class _EdgeAccounting:
    """Debug record: which introduce nodes are responsible for which edges."""

    def __init__(self, nd: NiceDecomposition):
        self.nodes_of_edge: dict[tuple[int, int], list[int]] = {}
        parent = [-1] * nd.node_count()
        for u, chs in enumerate(nd.children):
            for c in chs:
                parent[c] = u
        self.parent = parent

    def record(self, node: int, u: int, v: int) -> None:
        key = (u, v) if u < v else (v, u)
        nodes = self.nodes_of_edge.setdefault(key, [])
        if node not in nodes:
            nodes.append(node)

    def verify(self, g: Graph, vertices) -> None:
        vset = set(vertices)
        expected = {(u, v) for (u, v) in g.edges() if u in vset and v in vset}
        got = set(self.nodes_of_edge)
        if expected - got:
            raise InternalError(f"edges never accounted: {sorted(expected - got)[:5]}")
        for edge, nodes in self.nodes_of_edge.items():
            for a, b in itertools.combinations(nodes, 2):
                x = b
                while x != -1:
                    if x == a:
                        raise InternalError(
                            f"edge {edge} accounted twice on one branch ({a}, {b})"
                        )
                    x = self.parent[x]
                x = a
                while x != -1:
                    if x == b:
                        raise InternalError(
                            f"edge {edge} accounted twice on one branch ({a}, {b})"
                        )
                    x = self.parent[x]


_Row = tuple[int, Any]  # (value, backref)
_Table = dict[Signature, dict[Partition, _Row]]


def _uf_find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def dp_run(
    nd: NiceDecomposition,
    g: Graph,
    p: KappaPartition,
    mode: str = "dp-rank",
    debug_edge_accounting: bool = False,
    state_budget: int | None = None,
) -> tuple[int, list[_Table]]:
    """Maximum induced forest size over the nice decomposition.

    Returns the optimum and the per-node tables (with backrefs) for
    reconstruction. Tables are keyed by kept-signature, then by partition.
    The state count is exponential in the weighted width; state_budget
    caps the number of candidate states examined and raises ResourceError
    beyond it rather than grinding on an infeasible instance.
    """
    if mode not in ("dp-naive", "dp-rank"):
        raise ValidationError(f"dp_run mode must be dp-naive or dp-rank, got {mode!r}")
    selections = [local_selections(cls, cov) for cls, cov in zip(p.classes, p.clique_cover)]
    accounting = _EdgeAccounting(nd) if debug_edge_accounting else None
    work = 0

    def charge(units: int) -> None:
        nonlocal work
        work += units
        if state_budget is not None and work > state_budget:
            raise ResourceError(
                f"DP state budget exceeded ({work} > {state_budget}); "
                "the instance's weighted width makes the table infeasible"
            )

    n_nodes = nd.node_count()
    tables: list[_Table] = [{} for _ in range(n_nodes)]
    bag_classes: list[tuple[int, ...]] = [tuple(sorted(b)) for b in nd.bags]

    kept_cache: dict[Signature, tuple[int, ...]] = {}

    def kept_of(sig: Signature) -> tuple[int, ...]:
        got = kept_cache.get(sig)
        if got is None:
            got = tuple(sorted(v for sel in sig for v in sel))
            kept_cache[sig] = got
        return got

    shared_edge_cache: dict[Signature, int] = {}

    def shared_edges(sig: Signature) -> int:
        got = shared_edge_cache.get(sig)
        if got is None:
            kept = kept_of(sig)
            got = sum(
                1
                for i in range(len(kept))
                for j in range(i + 1, len(kept))
                if g.has_edge(kept[i], kept[j])
            )
            shared_edge_cache[sig] = got
        return got

    def put(table: _Table, sig: Signature, part: Partition, value: int, back) -> None:
        group = table.setdefault(sig, {})
        old = group.get(part)
        if old is None or value > old[0]:
            group[part] = (value, back)

    for node in range(n_nodes - 1, -1, -1):
        kind = nd.kind[node]
        table: _Table = {}
        if kind == LEAF:
            table[()] = {(): (0, ("leaf",))}
        elif kind == INTRODUCE:
            child = nd.children[node][0]
            v_cl = nd.vtx[node]
            idx = bag_classes[node].index(v_cl)
            child_table = tables[child]
            for sig_c, group in child_table.items():
                kept_c = kept_of(sig_c)
                for sel in selections[v_cl]:
                    sig_n = sig_c[:idx] + (sel,) + sig_c[idx:]
                    kept_n = kept_of(sig_n)
                    pos_n = {v: i for i, v in enumerate(kept_n)}
                    old_pos = [pos_n[v] for v in kept_c]
                    sel_pos = [pos_n[v] for v in sel]
                    # edges the new class is responsible for
                    new_edges = []
                    for i, x in enumerate(sel):
                        for y in sel[i + 1:]:
                            if g.has_edge(x, y):
                                new_edges.append((pos_n[x], pos_n[y]))
                                if accounting:
                                    accounting.record(node, x, y)
                        for y in kept_c:
                            if g.has_edge(x, y):
                                new_edges.append((pos_n[x], pos_n[y]))
                                if accounting:
                                    accounting.record(node, x, y)
                    s_n = len(kept_n)
                    charge(len(group))
                    for part_c, (value, _) in group.items():
                        labels = [-1] * s_n
                        for i, lab in enumerate(part_c):
                            labels[old_pos[i]] = lab
                        nxt = block_count(part_c)
                        for sp in sel_pos:
                            labels[sp] = nxt
                            nxt += 1
                        parent = list(range(s_n))
                        first_of: dict[int, int] = {}
                        for i in range(s_n):
                            lab = labels[i]
                            if lab in first_of:
                                parent[_uf_find(parent, i)] = _uf_find(
                                    parent, first_of[lab]
                                )
                            else:
                                first_of[lab] = i
                        ok = True
                        for (a, b) in new_edges:
                            ra, rb = _uf_find(parent, a), _uf_find(parent, b)
                            if ra == rb:
                                ok = False
                                break
                            parent[rb] = ra
                        if not ok:
                            continue
                        part_n = canonicalize([_uf_find(parent, i) for i in range(s_n)])
                        put(table, sig_n, part_n, value + len(sel),
                            ("intro", sig_c, part_c))
        elif kind == FORGET:
            child = nd.children[node][0]
            v_cl = nd.vtx[node]
            idx = bag_classes[child].index(v_cl)
            child_table = tables[child]
            for sig_c, group in child_table.items():
                sel = sig_c[idx]
                sig_n = sig_c[:idx] + sig_c[idx + 1:]
                kept_c = kept_of(sig_c)
                dropped = set(sel)
                keep_pos = [i for i, v in enumerate(kept_c) if v not in dropped]
                charge(len(group))
                for part_c, (value, _) in group.items():
                    part_n = canonicalize([part_c[i] for i in keep_pos])
                    put(table, sig_n, part_n, value, ("forget", sig_c, part_c))
        elif kind == JOIN:
            left, right = nd.children[node]
            lt, rt = tables[left], tables[right]
            for sig, lgroup in lt.items():
                rgroup = rt.get(sig)
                if rgroup is None:
                    continue
                kept = kept_of(sig)
                s = len(kept)
                e_shared = shared_edges(sig)
                kept_count = s
                charge(len(lgroup) * len(rgroup))
                for part_l, (val_l, _) in lgroup.items():
                    nl = block_count(part_l)
                    for part_r, (val_r, _) in rgroup.items():
                        nr = block_count(part_r)
                        parent = list(range(s))
                        blocks = s
                        for part in (part_l, part_r):
                            first_of: dict[int, int] = {}
                            for i in range(s):
                                lab = part[i]
                                if lab in first_of:
                                    ra = _uf_find(parent, first_of[lab])
                                    rb = _uf_find(parent, i)
                                    if ra != rb:
                                        parent[rb] = ra
                                        blocks -= 1
                                else:
                                    first_of[lab] = i
                        if blocks != nl + nr + e_shared - s:
                            continue
                        part_n = canonicalize([_uf_find(parent, i) for i in range(s)])
                        put(table, sig, part_n, val_l + val_r - kept_count,
                            ("join", (sig, part_l), (sig, part_r)))
        else:
            raise InternalError(f"unknown nice node kind {kind!r}")

        if mode == "dp-rank":
            reduced = rank_reduce(RepresentativeTable(rows=table))
            table = reduced.rows
        tables[node] = table

    root_table = tables[nd.root]
    root_group = root_table.get((), {})
    if () not in root_group:
        raise InternalError("DP produced no state at the empty root bag")
    best_value = root_group[()][0]
    if accounting is not None:
        accounting.verify(g, [v for cls in p.classes for v in cls])
    return best_value, tables


def reconstruct(
    tables: list[_Table], nd: NiceDecomposition, g: Graph, p: KappaPartition
) -> frozenset[int]:
    """Trace backrefs from the root optimum to a verified deletion set."""
    chosen: dict[int, tuple[int, ...]] = {}
    stack: list[tuple[int, Signature, Partition]] = [(nd.root, (), ())]
    while stack:
        node, sig, part = stack.pop()
        _, back = tables[node][sig][part]
        kind = back[0]
        if kind == "leaf":
            continue
        if kind == "intro":
            _, sig_c, part_c = back
            v_cl = nd.vtx[node]
            idx = tuple(sorted(nd.bags[node])).index(v_cl)
            sel = sig[idx]
            if v_cl in chosen and chosen[v_cl] != sel:
                raise InternalError(f"inconsistent selection for class {v_cl}")
            chosen[v_cl] = sel
            stack.append((nd.children[node][0], sig_c, part_c))
        elif kind == "forget":
            _, sig_c, part_c = back
            stack.append((nd.children[node][0], sig_c, part_c))
        elif kind == "join":
            _, (sig_l, part_l), (sig_r, part_r) = back
            left, right = nd.children[node]
            stack.append((left, sig_l, part_l))
            stack.append((right, sig_r, part_r))
        else:
            raise InternalError(f"unknown backref kind {kind!r}")
    kept: set[int] = set()
    for v_cl, sel in chosen.items():
        kept.update(sel)
    all_vertices = set(range(g.n))
    deleted = frozenset(all_vertices - kept)
    sub, _, _ = induced_subgraph(g, sorted(kept))
    if not is_forest(sub):
        raise InternalError("reconstructed kept set does not induce a forest")
    best_value = tables[nd.root][()][()][0]
    if len(deleted) != g.n - best_value:
        raise InternalError(
            f"reconstructed deletion size {len(deleted)} != {g.n - best_value}"
        )
    return deleted


@dataclass
class _ComponentResult:
    deleted: frozenset[int]
    weighted_width: int
    class_count: int
    used_oracle: bool
    width_exceeded: bool = False


def _solve_component(
    gc: Graph, cfg: SolveConfig, dp_mode: str, width_limit: float | None
) -> _ComponentResult:
    """Exact minimum deletion set for one peeled component."""
    part = greedy_partition(gc)
    cg = contract(gc, part)
    bg = blowup(cg)
    td_b = decompose_unweighted(bg.graph, cfg.effort)
    td = project(td_b, bg, cg)
    w = weighted_width(td, cg)
    if width_limit is not None and w > width_limit:
        return _ComponentResult(
            deleted=frozenset(),
            weighted_width=w,
            class_count=len(part.classes),
            used_oracle=False,
            width_exceeded=True,
        )
    if w > cfg.width_safety_cap:
        if gc.n <= DEFAULT_BUDGET.max_n_subsets:
            _, witness = min_fvs_bruteforce(gc)
            return _ComponentResult(
                deleted=witness,
                weighted_width=w,
                class_count=len(part.classes),
                used_oracle=True,
            )
        raise ResourceError(
            f"weighted width {w} exceeds safety cap {cfg.width_safety_cap} "
            f"on a component of {gc.n} vertices"
        )
    nd = make_nice(td)
    report = validate_decomposition(nd.to_tree_decomposition(), cg.base)
    if not report.ok:
        raise InternalError(f"nice decomposition invalid: {report.violations}")
    try:
        best, tables = dp_run(
            nd,
            gc,
            part,
            mode=dp_mode,
            debug_edge_accounting=cfg.debug_edge_accounting,
            state_budget=cfg.state_budget,
        )
    except ResourceError:
        if gc.n <= DEFAULT_BUDGET.max_n_subsets:
            _, witness = min_fvs_bruteforce(gc)
            return _ComponentResult(
                deleted=witness,
                weighted_width=w,
                class_count=len(part.classes),
                used_oracle=True,
            )
        raise
    deleted = reconstruct(tables, nd, gc, part)
    return _ComponentResult(
        deleted=deleted,
        weighted_width=w,
        class_count=len(part.classes),
        used_oracle=False,
    )


def solve(g: Graph, cfg: SolveConfig) -> Solution:
    """Decide whether g has a feedback vertex set of size <= cfg.k.

    With thresholds off this is exact for every input graph. A returned
    "yes" always carries a witness re-verified against the original graph.
    """
    t0 = time.perf_counter()
    timings: dict[str, float] = {}
    stats: dict[str, Any] = {}

    if cfg.mode == "oracle":
        size, witness = min_fvs_bruteforce(g)
        verdict = "yes" if size <= cfg.k else "no"
        timings["total"] = time.perf_counter() - t0
        return Solution(
            verdict=verdict,
            fvs=tuple(sorted(witness)) if verdict == "yes" else None,
            certificate="oracle",
            stats={"min_fvs": size, "timings": timings},
        )

    peel = peel_degree_one(g)
    gp = peel.reduced
    stats["high_degree_count"] = count_high_degree(gp)
    timings["peel"] = time.perf_counter() - t0

    if cfg.thresholds_active and quick_reject_highdeg(
        gp, cfg.k, cfg.highdeg_threshold_coeff
    ):
        timings["total"] = time.perf_counter() - t0
        stats["timings"] = timings
        return Solution(verdict="no", fvs=None, certificate="highdeg-threshold", stats=stats)

    dp_mode = "dp-rank" if cfg.mode in ("auto", "dp-rank") else "dp-naive"
    width_limit = (
        cfg.width_threshold_coeff * math.sqrt(cfg.k) if cfg.thresholds_active else None
    )
    deleted_reduced: set[int] = set()
    max_width = 0
    class_count = 0
    used_oracle = False
    t1 = time.perf_counter()
    for comp in connected_components(gp):
        sub, old_of_new, _ = induced_subgraph(gp, comp)
        res = _solve_component(sub, cfg, dp_mode, width_limit)
        max_width = max(max_width, res.weighted_width)
        class_count += res.class_count
        used_oracle = used_oracle or res.used_oracle
        if res.width_exceeded:
            stats["weighted_width"] = max_width
            stats["class_count"] = class_count
            timings["pipeline"] = time.perf_counter() - t1
            timings["total"] = time.perf_counter() - t0
            stats["timings"] = timings
            return Solution(
                verdict="no", fvs=None, certificate="width-threshold", stats=stats
            )
        deleted_reduced.update(old_of_new[v] for v in res.deleted)
    timings["pipeline"] = time.perf_counter() - t1

    stats["weighted_width"] = max_width
    stats["class_count"] = class_count
    deleted_original = sorted(peel.kept[v] for v in deleted_reduced)
    stats["min_fvs"] = len(deleted_original)

    timings["total"] = time.perf_counter() - t0
    stats["timings"] = timings
    certificate = "oracle" if used_oracle else "dp"
    if len(deleted_original) <= cfg.k:
        fvs = tuple(deleted_original)
        remaining = [v for v in range(g.n) if v not in set(fvs)]
        sub, _, _ = induced_subgraph(g, remaining)
        if not is_forest(sub):
            raise InternalError("final verification failed: deletion leaves a cycle")
        return Solution(verdict="yes", fvs=fvs, certificate=certificate, stats=stats)
    return Solution(verdict="no", fvs=None, certificate=certificate, stats=stats)


def solve_min_fvs(g: Graph, cfg: SolveConfig | None = None) -> tuple[int, tuple[int, ...]]:
    """Minimum feedback vertex set size and witness via the DP pipeline."""
    base = cfg or SolveConfig(k=0, mode="dp-rank")
    big = SolveConfig(
        k=g.n,
        mode=base.mode if base.mode != "oracle" else "dp-rank",
        width_threshold_coeff=base.width_threshold_coeff,
        highdeg_threshold_coeff=base.highdeg_threshold_coeff,
        enable_thresholds=False,
        seed=base.seed,
        effort=base.effort,
        width_safety_cap=base.width_safety_cap,
        state_budget=base.state_budget,
        debug_edge_accounting=base.debug_edge_accounting,
    )
    sol = solve(g, big)
    assert sol.fvs is not None
    return len(sol.fvs), sol.fvs
