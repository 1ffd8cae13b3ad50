"""Canonical text formats for graphs, object sets, and decompositions.

Serializers emit a canonical ordering with single spaces and LF endings,
so parse -> serialize round-trips byte-identically on canonical files.

Graph:          p fvs <n> <m>          then m lines  e <u> <v>   (0-based)
Objects:        p objects <n> <alpha> <gamma>
                then n lines           o <shape> <x> <y> <inner_r> <outer_r>
Decomposition:  s td <num_bags> <max_bag_size> <n>
                then bag lines         b <bag_id> <v...>          (bags 1-based)
                then tree edges        <i> <j>                    (1-based)
Lines starting with "c " (or "c" alone) are comments everywhere.
"""

from __future__ import annotations

from .decomposition import TreeDecomposition
from .errors import InputError
from .geometry import FatObject, ObjectSet
from .graph import Graph, from_edge_list


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        yield lineno, line


def serialize_graph(g: Graph) -> str:
    lines = [f"p fvs {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for (u, v) in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    n = m = None
    edges = []
    for lineno, line in _data_lines(text):
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise InputError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "fvs":
                raise InputError(f"line {lineno}: expected 'p fvs <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise InputError(f"line {lineno}: bad counts") from exc
        elif parts[0] == "e":
            if n is None:
                raise InputError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise InputError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                edges.append((int(parts[1]), int(parts[2])))
            except ValueError as exc:
                raise InputError(f"line {lineno}: bad edge") from exc
        else:
            raise InputError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise InputError("missing problem line 'p fvs <n> <m>'")
    if m != len(edges):
        raise InputError(f"problem line declares {m} edges, found {len(edges)}")
    return from_edge_list(n, edges)


def _fmt(x: float) -> str:
    return repr(float(x))


def serialize_objects(objs: ObjectSet) -> str:
    lines = [f"p objects {len(objs.objects)} {_fmt(objs.alpha)} {_fmt(objs.gamma)}"]
    for o in objs.objects:
        lines.append(
            f"o {o.shape_tag} {_fmt(o.x)} {_fmt(o.y)} "
            f"{_fmt(o.inner_radius)} {_fmt(o.outer_radius)}"
        )
    return "\n".join(lines) + "\n"


def parse_objects(text: str) -> ObjectSet:
    n = alpha = gamma = None
    objects = []
    for lineno, line in _data_lines(text):
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise InputError(f"line {lineno}: duplicate problem line")
            if len(parts) != 5 or parts[1] != "objects":
                raise InputError(f"line {lineno}: expected 'p objects <n> <alpha> <gamma>'")
            try:
                n, alpha, gamma = int(parts[2]), float(parts[3]), float(parts[4])
            except ValueError as exc:
                raise InputError(f"line {lineno}: bad header values") from exc
        elif parts[0] == "o":
            if n is None:
                raise InputError(f"line {lineno}: object before problem line")
            if len(parts) != 6:
                raise InputError(
                    f"line {lineno}: expected 'o <shape> <x> <y> <inner_r> <outer_r>'"
                )
            try:
                objects.append(
                    FatObject(
                        x=float(parts[2]),
                        y=float(parts[3]),
                        inner_radius=float(parts[4]),
                        outer_radius=float(parts[5]),
                        shape_tag=parts[1],
                    )
                )
            except ValueError as exc:
                raise InputError(f"line {lineno}: bad object values") from exc
        else:
            raise InputError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise InputError("missing problem line 'p objects <n> <alpha> <gamma>'")
    if len(objects) != n:
        raise InputError(f"header declares {n} objects, found {len(objects)}")
    return ObjectSet(objects=tuple(objects), alpha=alpha, gamma=gamma)


def serialize_decomposition(td: TreeDecomposition, n_vertices: int) -> str:
    max_bag = max((len(b) for b in td.bags), default=0)
    lines = [f"s td {len(td.bags)} {max_bag} {n_vertices}"]
    for i, bag in enumerate(td.bags):
        lines.append(" ".join(["b", str(i + 1), *[str(v) for v in sorted(bag)]]))
    for i, nbrs in enumerate(td.tree):
        for j in nbrs:
            if i < j:
                lines.append(f"{i + 1} {j + 1}")
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> tuple[TreeDecomposition, int]:
    header = None
    bags: dict[int, frozenset[int]] = {}
    tree_edges = []
    for lineno, line in _data_lines(text):
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise InputError(f"line {lineno}: duplicate header")
            if len(parts) != 5 or parts[1] != "td":
                raise InputError(f"line {lineno}: expected 's td <bags> <max_bag> <n>'")
            header = (int(parts[2]), int(parts[3]), int(parts[4]))
        elif parts[0] == "b":
            if header is None:
                raise InputError(f"line {lineno}: bag before header")
            bag_id = int(parts[1])
            if bag_id in bags:
                raise InputError(f"line {lineno}: duplicate bag {bag_id}")
            bags[bag_id] = frozenset(int(x) for x in parts[2:])
        else:
            if header is None:
                raise InputError(f"line {lineno}: edge before header")
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected '<i> <j>' tree edge")
            tree_edges.append((int(parts[0]), int(parts[1])))
    if header is None:
        raise InputError("missing header 's td <bags> <max_bag> <n>'")
    num_bags, max_bag, n_vertices = header
    if sorted(bags) != list(range(1, num_bags + 1)):
        raise InputError("bag ids must be 1..num_bags")
    adj: list[list[int]] = [[] for _ in range(num_bags)]
    for (i, j) in tree_edges:
        if not (1 <= i <= num_bags and 1 <= j <= num_bags):
            raise InputError(f"tree edge ({i}, {j}) out of range")
        adj[i - 1].append(j - 1)
        adj[j - 1].append(i - 1)
    td = TreeDecomposition(
        tree=tuple(tuple(sorted(a)) for a in adj),
        bags=tuple(bags[i + 1] for i in range(num_bags)),
        root=0,
    )
    declared = max((len(b) for b in td.bags), default=0)
    if declared != max_bag:
        raise InputError(f"header max bag size {max_bag} != actual {declared}")
    return td, n_vertices
