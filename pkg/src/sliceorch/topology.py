"""Physical network model: nodes, links, builtin layouts, static routing.

Builtin layouts (access nodes ``a*``/``e*``, core nodes ``c*``)::

    dumbbell                 triangle                  pyramid
    a1        a3           a1   a2                       c1
      \\      /               \\ /                        /  \\
      c1 -- c2                c1                       c2 -- c3
      /      \\              /   \\                    /  \\  /  \\
    a2        a4           c2 --- c3                c4 -- c5 -- c6
                          /  \\   /  \\              / \\   / \\   / \\
                        a3   a4 a5  a6           a1 a2 a5 a6 a3 a4

    garr: representative 29-node wide-area graph (19 core on a ring with 11
    chords, 10 single-homed edge/access nodes, 40 links). The real operator
    adjacency is not public; the shipped graph only matches the element
    counts and is flagged approximate.

Capacities are floats in base units (bps / bits / seconds) internally;
topology documents carry integers to keep configs drift-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import yaml

ACCESS = "access"
CORE = "core"

GBPS = 1e9
GBIT = 1e9

# Fleet-wide defaults: 50 Gbps links, 60/20 Gbps+Gb core/access capacities,
# 0.1 ms propagation, 0.001 ms routing.
DEFAULTS = {
    "link_rate_bps": 50 * GBPS,
    "core_compute_bps": 60 * GBPS,
    "core_memory_bits": 60 * GBIT,
    "access_compute_bps": 20 * GBPS,
    "access_memory_bits": 20 * GBIT,
    "link_propagation_s": 0.1e-3,
    "node_routing_delay_s": 0.001e-3,
}

# The wide-area variant concentrates less capacity per node.
GARR_DEFAULTS = dict(
    DEFAULTS,
    core_compute_bps=30 * GBPS,
    core_memory_bits=30 * GBIT,
    access_compute_bps=10 * GBPS,
    access_memory_bits=10 * GBIT,
)

BUILTIN_NAMES = ("dumbbell", "triangle", "pyramid", "garr")


@dataclass(frozen=True)
class Node:
    id: str
    kind: str  # ACCESS or CORE
    compute_capacity: float  # bps
    memory_capacity: float  # bits
    routing_delay: float  # seconds

    def __post_init__(self) -> None:
        if self.kind not in (ACCESS, CORE):
            raise ValueError(f"node {self.id}: unknown kind {self.kind!r}")
        if self.compute_capacity < 0 or self.memory_capacity < 0:
            raise ValueError(f"node {self.id}: capacities must be >= 0")
        if self.routing_delay < 0:
            raise ValueError(f"node {self.id}: routing delay must be >= 0")


@dataclass(frozen=True)
class Link:
    id: str
    a: str
    b: str
    rate_capacity: float  # bps
    propagation_delay: float  # seconds

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError(f"link {self.id}: endpoints must be distinct")
        if not self.rate_capacity > 0:
            raise ValueError(f"link {self.id}: rate capacity must be > 0")
        if self.propagation_delay < 0:
            raise ValueError(f"link {self.id}: propagation delay must be >= 0")


@dataclass(frozen=True)
class Route:
    """Ordered node/link ids of a static path; endpoints are access nodes."""

    nodes: tuple[str, ...]
    links: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.nodes) != len(self.links) + 1:
            raise ValueError("route must have one more node than links")


class Topology:
    """Immutable node/link graph; safe to share across episode workers."""

    def __init__(self, nodes: list[Node], links: list[Link]):
        self.nodes: dict[str, Node] = {}
        for node in nodes:
            if node.id in self.nodes:
                raise ValueError(f"duplicate node id {node.id}")
            self.nodes[node.id] = node
        self.links: dict[str, Link] = {}
        self._by_pair: dict[frozenset[str], Link] = {}
        self.adjacency: dict[str, list[Link]] = {nid: [] for nid in self.nodes}
        for link in links:
            if link.id in self.links:
                raise ValueError(f"duplicate link id {link.id}")
            for end in (link.a, link.b):
                if end not in self.nodes:
                    raise ValueError(f"link {link.id} references missing node {end}")
            pair = frozenset((link.a, link.b))
            if pair in self._by_pair:
                raise ValueError(f"parallel link between {link.a} and {link.b}")
            self.links[link.id] = link
            self._by_pair[pair] = link
            self.adjacency[link.a].append(link)
            self.adjacency[link.b].append(link)
        self._check_access_connectivity()

    def _check_access_connectivity(self) -> None:
        access = self.access_nodes()
        if not access:
            return
        seen = {access[0]}
        frontier = [access[0]]
        while frontier:
            current = frontier.pop()
            for link in self.adjacency[current]:
                other = link.b if link.a == current else link.a
                if other not in seen:
                    seen.add(other)
                    frontier.append(other)
        missing = [nid for nid in access if nid not in seen]
        if missing:
            raise ValueError(f"access nodes unreachable from {access[0]}: {missing}")

    def access_nodes(self) -> list[str]:
        return sorted(nid for nid, n in self.nodes.items() if n.kind == ACCESS)

    def core_nodes(self) -> list[str]:
        return sorted(nid for nid, n in self.nodes.items() if n.kind == CORE)

    def link_between(self, a: str, b: str) -> Link:
        link = self._by_pair.get(frozenset((a, b)))
        if link is None:
            raise KeyError(f"no link between {a} and {b}")
        return link

    def neighbors(self, node_id: str) -> list[str]:
        return sorted(
            link.b if link.a == node_id else link.a for link in self.adjacency[node_id]
        )


def route(topology: Topology, src: str, dst: str) -> Route:
    """Hop-count shortest path, ties broken by smallest node-id sequence.

    Endpoints must be distinct access nodes; raises ValueError otherwise or
    when the pair is disconnected. Deterministic: identical inputs always
    return the identical Route.
    """
    if src == dst:
        raise ValueError("a flow needs two distinct endpoints")
    for end in (src, dst):
        if end not in topology.nodes:
            raise ValueError(f"unknown node {end}")
        if topology.nodes[end].kind != ACCESS:
            raise ValueError(f"flow endpoint {end} is not an access node")
    # BFS distances from dst, then greedy descent from src picking the
    # smallest-id neighbor one hop closer: this yields the lexicographically
    # smallest shortest node sequence.
    dist = {dst: 0}
    frontier = [dst]
    while frontier:
        nxt = []
        for nid in frontier:
            for nb in topology.neighbors(nid):
                if nb not in dist:
                    dist[nb] = dist[nid] + 1
                    nxt.append(nb)
        frontier = nxt
    if src not in dist:
        raise ValueError(f"no path between {src} and {dst}")
    nodes = [src]
    current = src
    while current != dst:
        current = min(
            nb for nb in topology.neighbors(current) if dist.get(nb) == dist[current] - 1
        )
        nodes.append(current)
    links = tuple(
        topology.link_between(a, b).id for a, b in zip(nodes[:-1], nodes[1:])
    )
    return Route(nodes=tuple(nodes), links=links)


def _mk_nodes(access_ids, core_ids, p) -> list[Node]:
    nodes = [
        Node(nid, ACCESS, p["access_compute_bps"], p["access_memory_bits"],
             p["node_routing_delay_s"])
        for nid in access_ids
    ]
    nodes += [
        Node(nid, CORE, p["core_compute_bps"], p["core_memory_bits"],
             p["node_routing_delay_s"])
        for nid in core_ids
    ]
    return nodes


def _mk_links(pairs, p) -> list[Link]:
    return [
        Link(f"{a}-{b}", a, b, p["link_rate_bps"], p["link_propagation_s"])
        for a, b in pairs
    ]


def _garr_pairs() -> list[tuple[str, str]]:
    cores = [f"c{i:02d}" for i in range(1, 20)]
    ring = list(zip(cores, cores[1:] + cores[:1]))
    chords = [
        ("c01", "c05"), ("c02", "c17"), ("c03", "c08"), ("c04", "c13"),
        ("c05", "c10"), ("c06", "c15"), ("c07", "c12"), ("c09", "c14"),
        ("c11", "c16"), ("c13", "c18"), ("c15", "c19"),
    ]
    edge_homes = ["c02", "c04", "c06", "c08", "c10", "c12", "c14", "c16", "c18", "c19"]
    taps = [(f"e{i + 1:02d}", home) for i, home in enumerate(edge_homes)]
    return ring + chords + taps


def build_builtin(name: str, **overrides) -> Topology:
    """Construct one of the builtin layouts with optional capacity overrides.

    Override keys match DEFAULTS (e.g. ``link_rate_bps=25e9``).
    """
    if name not in BUILTIN_NAMES:
        raise ValueError(f"unknown builtin topology {name!r}; choose from {BUILTIN_NAMES}")
    base = GARR_DEFAULTS if name == "garr" else DEFAULTS
    unknown = set(overrides) - set(base)
    if unknown:
        raise ValueError(f"unknown topology override(s): {sorted(unknown)}")
    p = dict(base, **overrides)

    if name == "dumbbell":
        nodes = _mk_nodes(["a1", "a2", "a3", "a4"], ["c1", "c2"], p)
        pairs = [("a1", "c1"), ("a2", "c1"), ("a3", "c2"), ("a4", "c2"), ("c1", "c2")]
    elif name == "triangle":
        nodes = _mk_nodes([f"a{i}" for i in range(1, 7)], ["c1", "c2", "c3"], p)
        pairs = [
            ("c1", "c2"), ("c2", "c3"), ("c1", "c3"),
            ("a1", "c1"), ("a2", "c1"), ("a3", "c2"),
            ("a4", "c2"), ("a5", "c3"), ("a6", "c3"),
        ]
    elif name == "pyramid":
        nodes = _mk_nodes([f"a{i}" for i in range(1, 7)], [f"c{i}" for i in range(1, 7)], p)
        pairs = [
            ("c1", "c2"), ("c1", "c3"), ("c2", "c3"),
            ("c2", "c4"), ("c2", "c5"), ("c3", "c5"), ("c3", "c6"),
            ("c4", "c5"), ("c5", "c6"),
            ("a1", "c4"), ("a2", "c4"), ("a3", "c6"),
            ("a4", "c6"), ("a5", "c5"), ("a6", "c5"),
        ]
    else:  # garr
        nodes = _mk_nodes(
            [f"e{i:02d}" for i in range(1, 11)],
            [f"c{i:02d}" for i in range(1, 20)],
            p,
        )
        pairs = _garr_pairs()
    return Topology(nodes, _mk_links(pairs, p))


def topology_to_document(topology: Topology) -> str:
    """Serialize to the structured-text schema (integer base units)."""
    doc = {
        "nodes": [
            {
                "id": n.id,
                "kind": n.kind,
                "compute_bps": int(round(n.compute_capacity)),
                "memory_bits": int(round(n.memory_capacity)),
                "routing_delay_s": n.routing_delay,
            }
            for n in sorted(topology.nodes.values(), key=lambda n: n.id)
        ],
        "links": [
            {
                "id": l.id,
                "a": l.a,
                "b": l.b,
                "rate_bps": int(round(l.rate_capacity)),
                "propagation_delay_s": l.propagation_delay,
            }
            for l in sorted(topology.links.values(), key=lambda l: l.id)
        ],
    }
    return yaml.safe_dump(doc, sort_keys=False)


def load_topology(document: str) -> Topology:
    """Parse a topology document (YAML text with nodes/links sections)."""
    try:
        raw = yaml.safe_load(document)
    except yaml.YAMLError as exc:
        raise ValueError(f"topology document is not valid YAML: {exc}") from exc
    if not isinstance(raw, dict) or "nodes" not in raw or "links" not in raw:
        raise ValueError("topology document must contain 'nodes' and 'links' sections")
    nodes = []
    for entry in raw["nodes"]:
        try:
            nodes.append(
                Node(
                    id=str(entry["id"]),
                    kind=str(entry["kind"]),
                    compute_capacity=float(entry["compute_bps"]),
                    memory_capacity=float(entry["memory_bits"]),
                    routing_delay=float(entry["routing_delay_s"]),
                )
            )
        except KeyError as exc:
            raise ValueError(f"node entry {entry!r} missing field {exc}") from exc
    links = []
    for entry in raw["links"]:
        try:
            links.append(
                Link(
                    id=str(entry["id"]),
                    a=str(entry["a"]),
                    b=str(entry["b"]),
                    rate_capacity=float(entry["rate_bps"]),
                    propagation_delay=float(entry["propagation_delay_s"]),
                )
            )
        except KeyError as exc:
            raise ValueError(f"link entry {entry!r} missing field {exc}") from exc
    return Topology(nodes, links)


def load_topology_file(path: str | Path) -> Topology:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"topology file not found: {path}")
    return load_topology(path.read_text())
