"""Exhaustive enumeration of the flop state space, pathfinding, and diagram export.

Exploration is a level-synchronous breadth-first closure: every eligible
move is applied to every known configuration until no new canonical key
appears.  The alphabet of labels and edge states over a fixed vertex set is
finite, so the closure terminates.  Moves the rewrite engine refuses
(UnsupportedStateError) are kept as annotated dead arcs instead of aborting
the walk.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product

from .configuration import (
    Configuration,
    FlopMove,
    VertexId,
    apply_flop,
    eligible_flops,
    validate_move,
)
from .errors import (
    IllegalMoveError,
    NoPathError,
    NotFoundError,
    ParameterError,
    UnsupportedStateError,
)

IDENTITY = "identity"
ISOMORPHISM = "isomorphism"

_SHAPES = {
    "square": "box",
    "ellipse": "ellipse",
    "plusbox": "diamond",
    "circle": "circle",
    "ruled4": "trapezium",
}


def _normalize_mode(mode: str) -> str:
    if mode in (IDENTITY, "id"):
        return IDENTITY
    if mode in (ISOMORPHISM, "iso"):
        return ISOMORPHISM
    raise ParameterError(f"unknown canonicalization mode {mode!r}; use 'identity' or 'isomorphism'")


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _refined_classes(c: Configuration) -> dict[VertexId, tuple]:
    """Split vertices into isomorphism-invariant classes.

    Starts from (part, label) and iterates neighbourhood signatures (edge
    kind, both exceptional flags, the neighbour's current class) until the
    partition stops splitting.  Isomorphic configurations produce the same
    multiset of signatures at every round, so the final classes correspond
    under any label-, kind- and flag-preserving bijection.
    """
    signature: dict[VertexId, tuple] = {v: (v.kind, c.label(v).value) for v in c.vertices}
    while True:
        enriched = {
            v: (
                signature[v],
                tuple(
                    sorted(
                        (e.kind.value, e.exceptional_at(v), e.exceptional_at(o), signature[o])
                        for o, e in c.neighbors(v)
                    )
                ),
            )
            for v in c.vertices
        }
        if len(set(enriched.values())) == len(set(signature.values())):
            return signature
        ranks = {value: rank for rank, value in enumerate(sorted(set(enriched.values())))}
        # fold the label back in so classes stay label-pure and comparable
        signature = {v: (v.kind, c.label(v).value, ranks[enriched[v]]) for v in c.vertices}


def _iso_canonical(c: Configuration) -> tuple[tuple, dict[VertexId, VertexId]]:
    """Minimal relabeling of c over P/Q-preserving vertex bijections.

    Returns the canonical form and one bijection achieving it.  The vertex
    section of any relabeled serialization is forced: sorted ids receive the
    sorted label multiset of their part.  Among the bijections consistent
    with that assignment, only those preserving the refined classes of
    _refined_classes can relate isomorphic configurations, so the search
    space is the product of permutations within each refined class (classes
    are laid out label-major, keeping the vertex section sorted).
    """
    classes = _refined_classes(c)
    groups: list[tuple[tuple[VertexId, ...], tuple[VertexId, ...]]] = []
    label_sections: list[tuple[str, ...]] = []
    for part in ("P", "Q"):
        part_ids = [v for v in c.vertices if v.kind == part]
        by_class: dict[tuple, list[VertexId]] = {}
        for v in part_ids:
            by_class.setdefault(classes[v], []).append(v)
        index = 0
        section: list[str] = []
        for class_signature in sorted(by_class, key=repr):
            members = by_class[class_signature]
            slots = part_ids[index : index + len(members)]
            index += len(members)
            groups.append((tuple(members), tuple(slots)))
            section.extend([c.label(v).value for v in members])
        label_sections.append(tuple(section))

    best: tuple | None = None
    best_phi: dict[VertexId, VertexId] = {}
    for choice in product(*(permutations(members) for members, _ in groups)):
        phi: dict[VertexId, VertexId] = {}
        for (_, slots), permuted in zip(groups, choice):
            for original, slot in zip(permuted, slots):
                phi[original] = slot
        mapped = []
        for e in c.edges:
            a, b, exc_a, exc_b = phi[e.a], phi[e.b], e.exc_a, e.exc_b
            if b.key() < a.key():
                a, b, exc_a, exc_b = b, a, exc_b, exc_a
            mapped.append((str(a), str(b), e.kind.value, exc_a, exc_b))
        candidate = tuple(sorted(mapped))
        if best is None or candidate < best:
            best = candidate
            best_phi = phi
    return (c.k, tuple(label_sections), best), best_phi


def iso_translation(source: Configuration, target: Configuration) -> dict[VertexId, VertexId] | None:
    """A label-, kind- and flag-preserving bijection source -> target, or None.

    Composes minimizing bijections onto the common canonical form; flops
    commute with relabeling, so translated moves act on the target exactly
    as the originals act on the source.
    """
    source_form, source_phi = _iso_canonical(source)
    target_form, target_phi = _iso_canonical(target)
    if source_form != target_form:
        return None
    inverse_target = {slot: original for original, slot in target_phi.items()}
    return {original: inverse_target[slot] for original, slot in source_phi.items()}


def canonical_key(c: Configuration, mode: str = IDENTITY) -> str:
    """Deterministic digest of a configuration.

    Identity mode hashes the sorted serialization, so equal keys mean equal
    configurations.  Isomorphism mode hashes the minimum serialization over
    all vertex bijections that preserve the P/Q partition, so equal keys
    mean the configurations differ only by renaming components.
    """
    mode = _normalize_mode(mode)
    if mode == IDENTITY:
        payload = json.dumps(c.to_json_obj(), sort_keys=True, separators=(",", ":"))
        return _digest(payload)
    form, _ = _iso_canonical(c)
    return _digest(repr(form))


@dataclass(frozen=True)
class Arc:
    source: str
    centers: tuple[VertexId, ...]
    target: str


@dataclass(frozen=True)
class DeadArc:
    source: str
    centers: tuple[VertexId, ...]
    error: str


@dataclass
class FlopGraph:
    """Explored state space: canonical keys to configurations, flop moves as arcs."""

    root: str
    mode: str
    simultaneous: bool
    nodes: dict[str, Configuration]
    arcs: set[Arc] = field(default_factory=set)
    dead_arcs: set[DeadArc] = field(default_factory=set)
    truncated: bool = False

    def to_json_obj(self) -> dict:
        return {
            "root": self.root,
            "nodes": {key: cfg.to_json_obj() for key, cfg in self.nodes.items()},
            "arcs": [
                {"from": arc.source, "to": arc.target, "centers": [str(v) for v in arc.centers]}
                for arc in sorted(self.arcs, key=lambda a: (a.source, a.target, tuple(v.key() for v in a.centers)))
            ],
            "dead_arcs": [
                {"from": arc.source, "centers": [str(v) for v in arc.centers], "error": arc.error}
                for arc in sorted(self.dead_arcs, key=lambda a: (a.source, tuple(v.key() for v in a.centers)))
            ],
        }


def _expand(cfg: Configuration, simultaneous: bool) -> list[tuple[FlopMove, Configuration | UnsupportedStateError]]:
    out: list[tuple[FlopMove, Configuration | UnsupportedStateError]] = []
    for mv in eligible_flops(cfg, simultaneous):
        try:
            out.append((mv, apply_flop(cfg, mv)))
        except UnsupportedStateError as err:
            out.append((mv, err))
    return out


def _reverse_arc_holds(target_cfg: Configuration, mv: FlopMove, source_key: str, mode: str) -> bool:
    try:
        validate_move(target_cfg, mv)
        back = apply_flop(target_cfg, mv)
    except (IllegalMoveError, UnsupportedStateError):
        return False
    return canonical_key(back, mode) == source_key


def explore(
    start: Configuration,
    simultaneous: bool = False,
    mode: str = IDENTITY,
    max_depth: int | None = None,
    workers: int = 1,
    max_nodes: int | None = None,
) -> FlopGraph:
    """Breadth-first closure of the flop moves reachable from ``start``.

    ``max_depth`` bounds the number of BFS levels expanded (0 keeps just the
    start).  ``max_nodes`` stops expansion once a finished level has grown
    the node set past the bound, marking the graph truncated; the bound is
    checked between levels so results stay deterministic.  ``workers`` > 1
    expands each level's configurations on a thread pool; the level barrier
    makes the resulting graph independent of scheduling.

    Every recorded arc has its reverse recorded too.  In identity mode the
    reverse carries the same move; in isomorphism mode the centres are
    translated through an isomorphism onto the stored representative of the
    target class.  Single-centre reverses hold by the involution (and, in
    isomorphism mode, by the flop's equivariance under relabeling);
    multi-centre reverses are verified by reapplying the move, and stay
    one-directional if that fails, which the coherence checks would surface.
    """
    mode = _normalize_mode(mode)
    if max_depth is not None and max_depth < 0:
        raise ParameterError(f"max_depth must be >= 0, got {max_depth}")
    if workers < 1:
        raise ParameterError(f"workers must be >= 1, got {workers}")

    root = canonical_key(start, mode)
    nodes: dict[str, Configuration] = {root: start}
    arcs: set[Arc] = set()
    dead_arcs: set[DeadArc] = set()
    truncated = False

    frontier: list[str] = [root]
    depth = 0
    while frontier and (max_depth is None or depth < max_depth):
        if max_nodes is not None and len(nodes) >= max_nodes:
            truncated = True
            break
        configs = [nodes[key] for key in frontier]
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                expansions = list(pool.map(lambda cfg: _expand(cfg, simultaneous), configs))
        else:
            expansions = [_expand(cfg, simultaneous) for cfg in configs]

        next_frontier: list[str] = []
        for source_key, expansion in zip(frontier, expansions):
            for mv, outcome in expansion:
                if isinstance(outcome, UnsupportedStateError):
                    dead_arcs.add(DeadArc(source_key, mv.centers, str(outcome)))
                    continue
                target_key = canonical_key(outcome, mode)
                is_new = target_key not in nodes
                if is_new:
                    nodes[target_key] = outcome
                    next_frontier.append(target_key)
                arcs.add(Arc(source_key, mv.centers, target_key))
                if mode == IDENTITY or is_new:
                    # the stored target equals the outcome, so the same centres flop back
                    reverse_centers = mv.centers
                else:
                    # translate the centres through an isomorphism onto the stored representative
                    translation = iso_translation(outcome, nodes[target_key])
                    reverse_centers = (
                        None
                        if translation is None
                        else FlopMove(tuple(translation[v] for v in mv.centers)).centers
                    )
                if reverse_centers is None:
                    continue
                if len(reverse_centers) == 1:
                    # involution (plus flop/relabeling equivariance in isomorphism mode)
                    arcs.add(Arc(target_key, reverse_centers, source_key))
                elif _reverse_arc_holds(nodes[target_key], FlopMove(reverse_centers), source_key, mode):
                    arcs.add(Arc(target_key, reverse_centers, source_key))
        frontier = next_frontier
        depth += 1

    return FlopGraph(root, mode, simultaneous, nodes, arcs, dead_arcs, truncated)


def shortest_flop_path(g: FlopGraph, source: str, target: str) -> list[FlopMove]:
    """A minimum-length sequence of arcs from source to target; empty iff equal."""
    for key, name in ((source, "source"), (target, "target")):
        if key not in g.nodes:
            raise NotFoundError(f"{name} key {key!r} is not a node of the graph")
    if source == target:
        return []
    adjacency: dict[str, list[Arc]] = {}
    for arc in sorted(g.arcs, key=lambda a: (a.source, a.target, tuple(v.key() for v in a.centers))):
        adjacency.setdefault(arc.source, []).append(arc)
    parents: dict[str, Arc] = {}
    queue = deque([source])
    seen = {source}
    while queue:
        key = queue.popleft()
        for arc in adjacency.get(key, ()):
            if arc.target in seen:
                continue
            seen.add(arc.target)
            parents[arc.target] = arc
            if arc.target == target:
                moves: list[FlopMove] = []
                cursor = target
                while cursor != source:
                    arc = parents[cursor]
                    moves.append(FlopMove(arc.centers))
                    cursor = arc.source
                moves.reverse()
                return moves
            queue.append(arc.target)
    raise NoPathError(f"no flop sequence connects {source!r} to {target!r}")


def _position(v: VertexId) -> tuple[float, float]:
    if v.kind == "P":
        return (float(v.i), float(v.j))
    return (v.i + 0.5, v.i - 0.5)


def _config_dot(c: Configuration) -> str:
    lines = ["graph configuration {", "  layout=neato;", "  node [fontsize=10];"]
    for v in c.vertices:
        shape = _SHAPES[c.label(v).value]
        x, y = _position(v)
        name = f"P({v.i},{v.j})" if v.kind == "P" else f"Q({v.i})"
        lines.append(f'  "{v}" [shape={shape}, label="{name}", pos="{x:g},{y:g}!"];')
    for e in c.edges:
        style = "solid" if e.kind.value == "solid" else "dashed"
        lines.append(f'  "{e.a}" -- "{e.b}" [style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _graph_dot(g: FlopGraph) -> str:
    keys = sorted(g.nodes)
    short = {key: f"{index}:{key[:10]}" for index, key in enumerate(keys)}
    lines = ["graph flops {", "  node [shape=box, fontsize=9];"]
    for key in keys:
        attrs = f'label="{short[key]}"'
        if key == g.root:
            attrs += ", peripheries=2"
        lines.append(f'  "{key[:16]}" [{attrs}];')
    seen_pairs = set()
    for arc in sorted(g.arcs, key=lambda a: (a.source, a.target, tuple(v.key() for v in a.centers))):
        unordered = (min(arc.source, arc.target), max(arc.source, arc.target), arc.centers)
        if unordered in seen_pairs:
            continue
        seen_pairs.add(unordered)
        label = " ".join(str(v) for v in arc.centers)
        lines.append(f'  "{arc.source[:16]}" -- "{arc.target[:16]}" [label="{label}"];')
    for index, arc in enumerate(
        sorted(g.dead_arcs, key=lambda a: (a.source, tuple(v.key() for v in a.centers)))
    ):
        label = " ".join(str(v) for v in arc.centers)
        lines.append(f'  "dead{index}" [shape=point, xlabel="unsupported"];')
        lines.append(f'  "{arc.source[:16]}" -- "dead{index}" [label="{label}", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps_canonical(obj: object) -> str:
    """The one JSON serialization used for all emitted payloads."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def export(obj: Configuration | FlopGraph, format: str = "dot") -> str:
    """Render a configuration or flop graph as DOT or JSON text, byte-deterministically."""
    fmt = format.lower()
    if fmt not in ("dot", "json"):
        raise ParameterError(f"unknown export format {format!r}; use 'dot' or 'json'")
    if isinstance(obj, Configuration):
        return _config_dot(obj) if fmt == "dot" else dumps_canonical(obj.to_json_obj())
    if isinstance(obj, FlopGraph):
        return _graph_dot(obj) if fmt == "dot" else dumps_canonical(obj.to_json_obj())
    raise ParameterError(f"cannot export object of type {type(obj).__name__}")
