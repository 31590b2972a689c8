"""Line-based text formats: instances, decompositions, orderings, traces,
composed-gadget dumps, and run reports.

Every format opens with a versioned magic line.  Serialization is canonical
(lines sorted, labels ordered), so emitting the same value twice is
byte-identical and files diff cleanly.  Parsing is strict: violations are
reported with their 1-based line number.  Parsed graphs number their
vertices in label order; the canonical generators label vertices by id, so
for them parse(serialize(x)) is the identity.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from typing import Sequence, Union

from .composition import ComposedInstance, Cutwidth3Instance
from .decompositions import (
    EliminationOrdering,
    LinearLayout,
    PathDecomposition,
    TreeDecomposition,
)
from .errors import FormatError
from .graph import Graph, Instance, Label, WeightedGraph, label_key
from .kernels import BoundedComponents, Family, IndependentSet, StarForest
from .rules import RuleApplication

INSTANCE_MAGIC = "pwkit-instance v1"
DECOMPOSITION_MAGIC = "pwkit-decomposition v1"
ORDERING_MAGIC = "pwkit-ordering v1"
COMPOSED_MAGIC = "pwkit-composed v1"

_INT_RE = re.compile(r"-?\d+\Z")
CUTWIDTH3 = "cutwidth3"


def format_label(label: Label) -> str:
    if isinstance(label, int):
        return str(label)
    if not label or any(ch.isspace() for ch in label) or "," in label:
        raise FormatError(f"label {label!r} contains separators and cannot be serialized")
    if _INT_RE.match(label):
        raise FormatError(f"string label {label!r} would be read back as an integer")
    return label


def parse_label(text: str) -> Label:
    return int(text) if _INT_RE.match(text) else text


def family_tag(family: Family | str) -> str:
    if isinstance(family, str):
        return family
    if isinstance(family, BoundedComponents):
        return f"bounded:{family.c}"
    return family.name


def parse_family_tag(tag: str) -> Family | str:
    if tag == CUTWIDTH3:
        return CUTWIDTH3
    if tag == "independent-set":
        return IndependentSet()
    if tag == "star-forest":
        return StarForest()
    if tag.startswith("bounded:"):
        return BoundedComponents(int(tag.split(":", 1)[1]))
    raise FormatError(f"unknown family tag {tag!r}")


@dataclass(frozen=True)
class InstanceFile:
    payload: Union[Instance, Cutwidth3Instance]
    weights: tuple[int, ...] | None = None
    family: Family | str | None = None

    def weighted_graph(self) -> WeightedGraph:
        if self.weights is None:
            raise FormatError("instance file carries no weights")
        return WeightedGraph(self.payload.graph, self.weights)


def serialize_instance(payload: Union[Instance, Cutwidth3Instance],
                       weights: Sequence[int] | None = None,
                       family: Family | str | None = None) -> str:
    g = payload.graph
    if isinstance(payload, Cutwidth3Instance):
        family = CUTWIDTH3
        modulator: frozenset[int] = frozenset()
        k = payload.target
    else:
        modulator = payload.modulator
        k = payload.target
    order = g.sorted_by_label()
    lines = [INSTANCE_MAGIC, f"p {g.n} {g.edge_count} {k}"]
    lines += [f"v {format_label(g.labels[v])}" for v in order]
    edge_lines = sorted(
        " ".join(sorted((format_label(g.labels[u]), format_label(g.labels[v])),
                        key=lambda s: label_key(parse_label(s))))
        for u, v in g.edges()
    )
    lines += [f"e {pair}" for pair in edge_lines]
    mod_labels = sorted((g.labels[v] for v in modulator), key=label_key)
    lines.append(("s " + " ".join(format_label(l) for l in mod_labels)).rstrip())
    if family is not None:
        lines.append(f"f {family_tag(family)}")
    if weights is not None:
        if len(weights) != g.n:
            raise FormatError("one weight per vertex required")
        lines += [f"w {format_label(g.labels[v])} {weights[v]}" for v in order]
    return "\n".join(lines) + "\n"


def _content_lines(text: str, magic: str):
    raw = text.splitlines()
    if not raw or raw[0].strip() != magic:
        raise FormatError(f"missing magic line {magic!r}", line=1)
    for no, line in enumerate(raw[1:], start=2):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield no, stripped


def read_instance_file(text: str) -> InstanceFile:
    """Strict parser for the instance format; see serialize_instance."""
    header = None
    vertex_labels: list[Label] = []
    edge_specs: list[tuple[int, Label, Label]] = []
    modulator_labels: list[Label] | None = None
    family: Family | str | None = None
    weight_specs: list[tuple[int, Label, int]] = []
    for no, line in _content_lines(text, INSTANCE_MAGIC):
        parts = line.split()
        kind, args = parts[0], parts[1:]
        if kind == "p":
            if header is not None:
                raise FormatError("duplicate header line", line=no)
            if len(args) != 3:
                raise FormatError("header must read: p <n> <m> <k>", line=no)
            try:
                header = tuple(int(a) for a in args)
            except ValueError:
                raise FormatError("header fields must be integers", line=no) from None
        elif kind == "v":
            if len(args) != 1:
                raise FormatError("vertex line must read: v <label>", line=no)
            label = parse_label(args[0])
            if label in vertex_labels:
                raise FormatError(f"duplicate vertex label {args[0]}", line=no)
            vertex_labels.append(label)
        elif kind == "e":
            if len(args) != 2:
                raise FormatError("edge line must read: e <a> <b>", line=no)
            edge_specs.append((no, parse_label(args[0]), parse_label(args[1])))
        elif kind == "s":
            if modulator_labels is not None:
                raise FormatError("duplicate modulator line", line=no)
            modulator_labels = [parse_label(a) for a in args]
        elif kind == "f":
            if len(args) != 1:
                raise FormatError("family line must read: f <tag>", line=no)
            try:
                family = parse_family_tag(args[0])
            except FormatError as exc:
                raise FormatError(str(exc), line=no) from None
        elif kind == "w":
            if len(args) != 2:
                raise FormatError("weight line must read: w <label> <weight>", line=no)
            try:
                weight_specs.append((no, parse_label(args[0]), int(args[1])))
            except ValueError:
                raise FormatError("weight must be an integer", line=no) from None
        else:
            raise FormatError(f"unknown line kind {kind!r}", line=no)
    if header is None:
        raise FormatError("missing header line: p <n> <m> <k>")
    n, m, k = header
    if len(vertex_labels) != n:
        raise FormatError(f"header declares {n} vertices, found {len(vertex_labels)}")
    order = sorted(vertex_labels, key=label_key)
    index = {label: i for i, label in enumerate(order)}
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for no, a, b in edge_specs:
        if a not in index or b not in index:
            raise FormatError(f"edge references unknown vertex {a if a not in index else b!r}",
                              line=no)
        if a == b:
            raise FormatError(f"self-loop at {a!r}", line=no)
        key = (min(index[a], index[b]), max(index[a], index[b]))
        if key in seen:
            raise FormatError(f"duplicate edge {a!r} {b!r}", line=no)
        seen.add(key)
        edges.append(key)
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    graph = Graph.from_edges(n, edges, tuple(order))
    weights = None
    if weight_specs:
        if len(weight_specs) != n or len({lab for _, lab, _ in weight_specs}) != n:
            raise FormatError("weight lines must cover every vertex exactly once")
        weights_list = [0] * n
        for no, lab, w in weight_specs:
            if lab not in index:
                raise FormatError(f"weight references unknown vertex {lab!r}", line=no)
            if w < 1:
                raise FormatError("weights must be positive", line=no)
            weights_list[index[lab]] = w
        weights = tuple(weights_list)
    if family == CUTWIDTH3:
        if modulator_labels:
            raise FormatError("a cutwidth instance carries no modulator")
        payload: Union[Instance, Cutwidth3Instance] = Cutwidth3Instance(graph, k)
        if not payload.is_valid():
            raise FormatError("invalid cutwidth instance: degrees must lie in 1..3 "
                              "and 0 <= k <= edge count")
    else:
        for lab in modulator_labels or []:
            if lab not in index:
                raise FormatError(f"modulator references unknown vertex {lab!r}")
        if k < 0:
            raise FormatError("target pathwidth must be nonnegative")
        payload = Instance(graph, frozenset(index[l] for l in modulator_labels or []), k)
    return InstanceFile(payload, weights, family)


def parse_instance(text: str) -> Union[Instance, Cutwidth3Instance]:
    return read_instance_file(text).payload


def serialize_decomposition(g: Graph,
                            dec: Union[PathDecomposition, TreeDecomposition]) -> str:
    lines = [DECOMPOSITION_MAGIC]
    if isinstance(dec, PathDecomposition):
        lines.append("type path")
        items = list(enumerate(dec.bags, start=1))
    else:
        lines.append("type tree")
        items = sorted(dec.bags.items())
    for idx, bag in items:
        labels = sorted((g.labels[v] for v in bag), key=label_key)
        lines.append((f"bag {idx} " + " ".join(format_label(l) for l in labels)).rstrip())
    if isinstance(dec, TreeDecomposition):
        for a, b in sorted(tuple(sorted(e)) for e in dec.tree):
            lines.append(f"link {a} {b}")
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str, g: Graph) -> Union[PathDecomposition, TreeDecomposition]:
    index = {label: i for i, label in enumerate(g.labels)}
    kind = None
    bags: dict[int, frozenset[int]] = {}
    links: list[tuple[int, int]] = []
    bag_order: list[int] = []
    for no, line in _content_lines(text, DECOMPOSITION_MAGIC):
        parts = line.split()
        if parts[0] == "type":
            if kind is not None or len(parts) != 2 or parts[1] not in ("path", "tree"):
                raise FormatError("type line must read: type path|tree", line=no)
            kind = parts[1]
        elif parts[0] == "bag":
            if len(parts) < 2:
                raise FormatError("bag line must read: bag <id> [labels...]", line=no)
            try:
                idx = int(parts[1])
            except ValueError:
                raise FormatError("bag id must be an integer", line=no) from None
            if idx in bags:
                raise FormatError(f"duplicate bag id {idx}", line=no)
            members = set()
            for tok in parts[2:]:
                lab = parse_label(tok)
                if lab not in index:
                    raise FormatError(f"bag references unknown vertex {lab!r}", line=no)
                members.add(index[lab])
            bags[idx] = frozenset(members)
            bag_order.append(idx)
        elif parts[0] == "link":
            if len(parts) != 3:
                raise FormatError("link line must read: link <i> <j>", line=no)
            links.append((int(parts[1]), int(parts[2])))
        else:
            raise FormatError(f"unknown line kind {parts[0]!r}", line=no)
    if kind is None or not bags:
        raise FormatError("decomposition needs a type line and at least one bag")
    if kind == "path":
        if links:
            raise FormatError("path decompositions carry no link lines")
        return PathDecomposition(tuple(bags[i] for i in bag_order))
    return TreeDecomposition(bags, frozenset(tuple(sorted(e)) for e in links))


def serialize_ordering(g: Graph, cert: Union[EliminationOrdering, LinearLayout]) -> str:
    kind = "elimination" if isinstance(cert, EliminationOrdering) else "layout"
    labels = " ".join(format_label(g.labels[v]) for v in cert.order)
    return f"{ORDERING_MAGIC}\ntype {kind}\norder {labels}\n".replace("order \n", "order\n")


def parse_ordering(text: str, g: Graph) -> Union[EliminationOrdering, LinearLayout]:
    index = {label: i for i, label in enumerate(g.labels)}
    kind = None
    order: tuple[int, ...] | None = None
    for no, line in _content_lines(text, ORDERING_MAGIC):
        parts = line.split()
        if parts[0] == "type":
            if len(parts) != 2 or parts[1] not in ("elimination", "layout"):
                raise FormatError("type line must read: type elimination|layout", line=no)
            kind = parts[1]
        elif parts[0] == "order":
            ids = []
            for tok in parts[1:]:
                lab = parse_label(tok)
                if lab not in index:
                    raise FormatError(f"ordering references unknown vertex {lab!r}", line=no)
                ids.append(index[lab])
            order = tuple(ids)
        else:
            raise FormatError(f"unknown line kind {parts[0]!r}", line=no)
    if kind is None or order is None:
        raise FormatError("ordering needs a type line and an order line")
    return EliminationOrdering(order) if kind == "elimination" else LinearLayout(order)


def _label_list(labels: Sequence[Label]) -> str:
    return ",".join(format_label(l) for l in labels) if labels else "-"


def serialize_trace(trace: Sequence[RuleApplication]) -> str:
    """One line per rule application: rule, site, removals, additions."""
    lines = []
    for app in trace:
        edges = (",".join(f"{format_label(a)}~{format_label(b)}" for a, b in app.added_edges)
                 if app.added_edges else "-")
        lines.append(
            f"{app.rule.value} site={_label_list(app.site)} "
            f"removed={_label_list(app.removed)} "
            f"added={_label_list(app.added_vertices)} edges={edges}"
        )
    return "\n".join(lines) + ("\n" if lines else "")


def serialize_composed(ci: ComposedInstance) -> str:
    g = ci.gadget.graph
    part_of = {}
    for vid in ci.rep.values():
        part_of[vid] = ("A", "rep")
    for vid in ci.dummy.values():
        part_of[vid] = ("A", "dummy")
    for vid in ci.selector.values():
        part_of[vid] = ("B", "selector")
    for vid in ci.node_rep.values():
        part_of[vid] = ("B", "node")
    for vid in ci.edge_rep.values():
        part_of[vid] = ("B", "edge")
    lines = [COMPOSED_MAGIC, f"t {ci.t}", f"n {ci.n}", f"k {ci.k}", f"kprime {ci.kprime}"]
    for vid in g.vertices():
        side, part = part_of[vid]
        lines.append(f"vertex {format_label(g.labels[vid])} {side} {part} "
                     f"{ci.gadget.weights[vid]}")
    for u, v in sorted(g.edges()):
        lines.append(f"edge {format_label(g.labels[u])} {format_label(g.labels[v])}")
    for (i, j), vid in sorted(ci.rep.items()):
        lines.append(f"map rep {i} {j} {format_label(g.labels[vid])}")
    for i, vid in sorted(ci.dummy.items()):
        lines.append(f"map dummy {i} {format_label(g.labels[vid])}")
    for (q, bit), vid in sorted(ci.selector.items()):
        lines.append(f"map selector {q} {bit} {format_label(g.labels[vid])}")
    for j, vid in sorted(ci.node_rep.items()):
        lines.append(f"map node {j} {format_label(g.labels[vid])}")
    for (u, v), vid in sorted(ci.edge_rep.items()):
        lines.append(f"map edgerep {u} {v} {format_label(g.labels[vid])}")
    return "\n".join(lines) + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


class Report:
    """Ordered key/value run report rendered as tab-separated lines."""

    def __init__(self):
        self._rows: list[tuple[str, str]] = []

    def add(self, key: str, value) -> "Report":
        self._rows.append((key, str(value)))
        return self

    def render(self) -> str:
        return "\n".join(f"{k}\t{v}" for k, v in self._rows) + "\n"
