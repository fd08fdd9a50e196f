"""Labeled intersection graphs of exceptional components and the flop rewrite engine.

A configuration records, for the two-point symmetric product of a resolved
type-A surface singularity with a length-k exceptional chain, which
irreducible components sit over the origin, what each is isomorphic to, and
how they intersect.  Vertices are P(i,j) for 1 <= i <= j <= k plus Q(i) for
1 <= i <= k; a solid edge means the components meet in a rational curve, a
dotted edge means they meet in a point.

Flopping a plane (circle) vertex rewrites the graph locally.  Every piece of
the rewrite is paired with its own inverse, so applying the same
single-centre flop twice is exactly the identity:

  * edges at the centre toggle solid <-> dotted (a toggle clears the edge's
    exceptional flags), except that an edge to a square or circle neighbour
    keeps its kind: those labels have no curve to contract, so the flop
    leaves them and their edge alone ("inert");
  * each toggling neighbour is relabeled from its pre-flop label and the
    edge's exceptional flag at the neighbour:

        ellipse  --solid, flagged-->   square
        ellipse  --solid, plain---->   plusbox
        plusbox  --solid----------->   circle
        square   --dotted---------->   ellipse   (flag the now-solid edge)
        plusbox  --dotted---------->   ellipse
        circle   --dotted---------->   plusbox

    ruled vertices toggle their edges but never relabel;
  * for each pair of toggling neighbours whose edges to the centre have the
    same pre-flop kind, the dotted link between the pair flips: inserted if
    absent, removed if dotted, a solid link being none of the centre's
    business.

The exceptional flag marks the end of a solid edge that is the (-1)-curve of
that endpoint's blow-up description; it is what makes the reverse flop
deterministic.  Labels or flag states outside this table (an ellipse across
a dotted edge, a vertex turning into a plane while flagged elsewhere, a
joint flop whose outcome would depend on the order of its centres) raise
UnsupportedStateError rather than inventing geometry.
"""

from __future__ import annotations

import types
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations
from typing import Iterable, Mapping

from .errors import ConfigurationError, IllegalMoveError, ParameterError, UnsupportedStateError


class Label(Enum):
    SQUARE = "square"      # P^1 x P^1
    ELLIPSE = "ellipse"    # one-point blow-up of P^1 x P^1
    PLUSBOX = "plusbox"    # F_1
    CIRCLE = "circle"      # P^2, the only floppable label
    RULED4 = "ruled4"      # F_4, reserved for Q vertices


class EdgeKind(Enum):
    SOLID = "solid"        # intersection is a rational curve
    DOTTED = "dotted"      # intersection is a point


@dataclass(frozen=True)
class VertexId:
    """P(i, j) with 1 <= i <= j, drawn at grid position (i, j), or Q(i) beside the diagonal."""

    kind: str
    i: int
    j: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "P":
            if self.j is None or not 1 <= self.i <= self.j:
                raise ConfigurationError(f"invalid P vertex P({self.i},{self.j}): need 1 <= i <= j")
        elif self.kind == "Q":
            if self.j is not None:
                raise ConfigurationError(f"Q vertex takes a single index, got Q({self.i},{self.j})")
            if self.i < 1:
                raise ConfigurationError(f"invalid Q vertex Q({self.i}): need i >= 1")
        else:
            raise ConfigurationError(f"vertex kind must be 'P' or 'Q', got {self.kind!r}")

    def key(self) -> tuple[str, int, int]:
        return (self.kind, self.i, self.j if self.j is not None else self.i)

    def __str__(self) -> str:
        if self.kind == "P":
            return f"P:{self.i}:{self.j}"
        return f"Q:{self.i}"


def P(i: int, j: int) -> VertexId:
    return VertexId("P", i, j)


def Q(i: int) -> VertexId:
    return VertexId("Q", i)


def parse_vertex_id(text: str) -> VertexId:
    parts = text.split(":")
    try:
        if parts[0] == "P" and len(parts) == 3:
            return P(int(parts[1]), int(parts[2]))
        if parts[0] == "Q" and len(parts) == 2:
            return Q(int(parts[1]))
    except ValueError:
        pass
    raise ConfigurationError(f"cannot parse vertex id {text!r}; expected 'P:i:j' or 'Q:i'")


def _pair(u: VertexId, w: VertexId) -> tuple[VertexId, VertexId]:
    return (u, w) if u.key() <= w.key() else (w, u)


@dataclass(frozen=True)
class Edge:
    """An unordered intersection edge; endpoints are kept sorted by vertex key.

    ``exc_a``/``exc_b`` flag that the intersection curve is the exceptional
    (-1)-curve of that endpoint's blow-up description; only meaningful on
    solid edges.
    """

    a: VertexId
    b: VertexId
    kind: EdgeKind
    exc_a: bool = False
    exc_b: bool = False

    def __init__(self, a, b, kind, exc_a=False, exc_b=False):
        if b.key() < a.key():
            a, b, exc_a, exc_b = b, a, exc_b, exc_a
        if a == b:
            raise ConfigurationError(f"self-loop at {a}")
        if kind is EdgeKind.DOTTED and (exc_a or exc_b):
            raise ConfigurationError(f"dotted edge {a}--{b} cannot carry exceptional flags")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "exc_a", exc_a)
        object.__setattr__(self, "exc_b", exc_b)

    @property
    def pair(self) -> tuple[VertexId, VertexId]:
        return (self.a, self.b)

    def touches(self, v: VertexId) -> bool:
        return v == self.a or v == self.b

    def other(self, v: VertexId) -> VertexId:
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise ConfigurationError(f"{v} is not an endpoint of {self.a}--{self.b}")

    def exceptional_at(self, v: VertexId) -> bool:
        if v == self.a:
            return self.exc_a
        if v == self.b:
            return self.exc_b
        raise ConfigurationError(f"{v} is not an endpoint of {self.a}--{self.b}")


def _expected_vertices(k: int) -> set[VertexId]:
    ids = {P(i, j) for i in range(1, k + 1) for j in range(i, k + 1)}
    ids |= {Q(i) for i in range(1, k + 1)}
    return ids


class Configuration:
    """Immutable labeled intersection graph over {P(i,j)} | {Q(i)} for a fixed k."""

    __slots__ = ("k", "_labels", "_edges", "_by_pair", "_adjacency", "_hash")

    def __init__(self, k: int, labels: Mapping[VertexId, Label], edges: Iterable[Edge]):
        if k < 1:
            raise ParameterError(f"k must be >= 1, got {k}")
        expected = _expected_vertices(k)
        got = set(labels)
        if got != expected:
            missing = sorted(str(v) for v in expected - got)
            extra = sorted(str(v) for v in got - expected)
            raise ConfigurationError(
                f"vertex set does not match k={k}: missing {missing or 'none'}, unexpected {extra or 'none'}"
            )
        for v, label in labels.items():
            if (v.kind == "Q") != (label is Label.RULED4):
                raise ConfigurationError(f"{v} labeled {label.value}: ruled4 is reserved for exactly the Q vertices")

        by_pair: dict[tuple[VertexId, VertexId], Edge] = {}
        for e in edges:
            if e.a not in got or e.b not in got:
                raise ConfigurationError(f"edge {e.a}--{e.b} mentions a vertex outside the configuration")
            if e.pair in by_pair:
                raise ConfigurationError(f"duplicate edge {e.a}--{e.b}")
            for v in e.pair:
                if e.exceptional_at(v) and labels[v] in (Label.CIRCLE, Label.RULED4):
                    raise ConfigurationError(
                        f"edge {e.a}--{e.b} carries an exceptional flag at {v}, which is labeled {labels[v].value}"
                    )
            by_pair[e.pair] = e

        self.k = k
        self._labels = {v: labels[v] for v in sorted(labels, key=VertexId.key)}
        self._edges = tuple(by_pair[p] for p in sorted(by_pair, key=lambda p: (p[0].key(), p[1].key())))
        self._by_pair = by_pair
        adjacency: dict[VertexId, list[tuple[VertexId, Edge]]] = {v: [] for v in self._labels}
        for e in self._edges:
            adjacency[e.a].append((e.b, e))
            adjacency[e.b].append((e.a, e))
        self._adjacency = {v: tuple(sorted(nbrs, key=lambda ne: ne[0].key())) for v, nbrs in adjacency.items()}
        self._hash: int | None = None

    @property
    def vertices(self) -> tuple[VertexId, ...]:
        return tuple(self._labels)

    @property
    def labels(self) -> Mapping[VertexId, Label]:
        return types.MappingProxyType(self._labels)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def label(self, v: VertexId) -> Label:
        try:
            return self._labels[v]
        except KeyError:
            raise ConfigurationError(f"no vertex {v} in this configuration") from None

    def edge_between(self, u: VertexId, v: VertexId) -> Edge | None:
        return self._by_pair.get(_pair(u, v))

    def neighbors(self, v: VertexId) -> tuple[tuple[VertexId, Edge], ...]:
        try:
            return self._adjacency[v]
        except KeyError:
            raise ConfigurationError(f"no vertex {v} in this configuration") from None

    def circles(self) -> tuple[VertexId, ...]:
        return tuple(v for v, label in self._labels.items() if label is Label.CIRCLE)

    def _state(self) -> tuple:
        return (self.k, tuple(self._labels.items()), self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self._state() == other._state()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._state())
        return self._hash

    def __repr__(self) -> str:
        return f"Configuration(k={self.k}, {len(self._labels)} vertices, {len(self._edges)} edges)"

    def to_json_obj(self) -> dict:
        return {
            "k": self.k,
            "vertices": [{"id": str(v), "label": label.value} for v, label in self._labels.items()],
            "edges": [
                {
                    "a": str(e.a),
                    "b": str(e.b),
                    "kind": e.kind.value,
                    "exceptional": {str(e.a): e.exc_a, str(e.b): e.exc_b},
                }
                for e in self._edges
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: object) -> "Configuration":
        if not isinstance(obj, dict):
            raise ConfigurationError("configuration JSON must be an object")
        try:
            k = obj["k"]
            raw_vertices = obj["vertices"]
            raw_edges = obj["edges"]
        except KeyError as missing:
            raise ConfigurationError(f"configuration JSON is missing the {missing} field") from None
        if not isinstance(k, int) or isinstance(k, bool):
            raise ConfigurationError(f"'k' must be an integer, got {k!r}")
        labels: dict[VertexId, Label] = {}
        for entry in raw_vertices:
            try:
                vid = parse_vertex_id(entry["id"])
                label = Label(entry["label"])
            except (KeyError, TypeError):
                raise ConfigurationError(f"malformed vertex entry {entry!r}") from None
            except ValueError:
                raise ConfigurationError(f"unknown label in vertex entry {entry!r}") from None
            if vid in labels:
                raise ConfigurationError(f"duplicate vertex {vid}")
            labels[vid] = label
        edges = []
        for entry in raw_edges:
            try:
                a = parse_vertex_id(entry["a"])
                b = parse_vertex_id(entry["b"])
                kind = EdgeKind(entry["kind"])
            except (KeyError, TypeError):
                raise ConfigurationError(f"malformed edge entry {entry!r}") from None
            except ValueError:
                raise ConfigurationError(f"unknown edge kind in entry {entry!r}") from None
            flags = entry.get("exceptional", {})
            if not isinstance(flags, dict):
                raise ConfigurationError(f"'exceptional' must be an object in edge entry {entry!r}")
            edges.append(
                Edge(a, b, kind, exc_a=bool(flags.get(str(a), False)), exc_b=bool(flags.get(str(b), False)))
            )
        return cls(k, labels, edges)


def initial_configuration(k: int) -> Configuration:
    """The component graph of the Hilbert-scheme resolution for a length-k chain.

    Diagonal P(i,i) are planes (circle), off-diagonal neighbours P(i,i+1) are
    blown-up quadrics (ellipse), distant P(i,j) are quadrics (square), and
    each Q(i) is the ruled surface over the i-th chain curve.  Solid edges
    join grid-adjacent P vertices and each Q(i) to P(i,i); Q(i) meets
    P(i-1,i) and P(i,i+1) in a point (dotted).  No flag is set.
    """
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    labels: dict[VertexId, Label] = {}
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            if i == j:
                labels[P(i, j)] = Label.CIRCLE
            elif j == i + 1:
                labels[P(i, j)] = Label.ELLIPSE
            else:
                labels[P(i, j)] = Label.SQUARE
        labels[Q(i)] = Label.RULED4
    edges: list[Edge] = []
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            if j + 1 <= k:
                edges.append(Edge(P(i, j), P(i, j + 1), EdgeKind.SOLID))
            if i + 1 <= j:
                edges.append(Edge(P(i, j), P(i + 1, j), EdgeKind.SOLID))
    for i in range(1, k + 1):
        edges.append(Edge(Q(i), P(i, i), EdgeKind.SOLID))
        if i - 1 >= 1:
            edges.append(Edge(Q(i), P(i - 1, i), EdgeKind.DOTTED))
        if i + 1 <= k:
            edges.append(Edge(Q(i), P(i, i + 1), EdgeKind.DOTTED))
    return Configuration(k, labels, edges)


@dataclass(frozen=True)
class FlopMove:
    """A set of centres to flop at once; centres are kept sorted and unique."""

    centers: tuple[VertexId, ...]

    def __init__(self, centers: Iterable[VertexId]):
        ordered = tuple(sorted(set(centers), key=VertexId.key))
        if not ordered:
            raise IllegalMoveError("a flop move needs at least one centre")
        object.__setattr__(self, "centers", ordered)

    def __str__(self) -> str:
        return "+".join(str(v) for v in self.centers)


def validate_move(c: Configuration, mv: FlopMove) -> None:
    """Raise IllegalMoveError unless every centre is a circle and no two centres are adjacent."""
    for v in mv.centers:
        if v not in c._labels:
            raise IllegalMoveError(f"no vertex {v} in this configuration")
        if c.label(v) is not Label.CIRCLE:
            raise IllegalMoveError(f"{v} is labeled {c.label(v).value}; only circle vertices can be flopped")
    for u, v in combinations(mv.centers, 2):
        if c.edge_between(u, v) is not None:
            raise IllegalMoveError(f"centres {u} and {v} are adjacent and cannot be flopped together")


def eligible_flops(c: Configuration, simultaneous: bool = False) -> list[FlopMove]:
    """All legal moves: one per circle, plus (if simultaneous) every larger disjoint set."""
    circles = c.circles()
    moves = [FlopMove((v,)) for v in circles]
    if simultaneous:
        for size in range(2, len(circles) + 1):
            for combo in combinations(circles, size):
                if all(c.edge_between(u, v) is None for u, v in combinations(combo, 2)):
                    moves.append(FlopMove(combo))
    return moves


def apply_flop(c: Configuration, mv: FlopMove) -> Configuration:
    """Flop the move's centres, returning a new configuration.

    The result is defined order-independently.  A single flop reads and
    writes only its centre's incident edges, edges between its neighbours,
    and its neighbours' labels, and it never changes which vertices border a
    non-adjacent circle; centres with disjoint neighbourhoods therefore
    commute exactly.  Centres whose neighbourhoods overlap are grouped and
    every ordering of the group is applied: if the orderings disagree (the
    shared neighbour's relabeling is path-dependent) the joint flop has no
    well-defined result in this alphabet and UnsupportedStateError is
    raised.
    """
    validate_move(c, mv)
    current = c
    for cluster in _interaction_clusters(c, mv.centers):
        if len(cluster) == 1:
            current = _flop_single(current, cluster[0])
        else:
            current = _flop_cluster(current, cluster)
    return current


def _interaction_clusters(c: Configuration, centers: tuple[VertexId, ...]) -> list[tuple[VertexId, ...]]:
    """Group centres whose neighbourhoods overlap; groups are sorted and disjoint."""
    neighbor_sets = {v: {other for other, _ in c.neighbors(v)} for v in centers}
    parent = {v: v for v in centers}

    def find(v: VertexId) -> VertexId:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, w in combinations(centers, 2):
        if neighbor_sets[u] & neighbor_sets[w]:
            parent[find(u)] = find(w)
    grouped: dict[VertexId, list[VertexId]] = {}
    for v in centers:
        grouped.setdefault(find(v), []).append(v)
    clusters = [tuple(sorted(members, key=VertexId.key)) for members in grouped.values()]
    clusters.sort(key=lambda cluster: cluster[0].key())
    return clusters


def _flop_cluster(c: Configuration, cluster: tuple[VertexId, ...]) -> Configuration:
    """Apply a neighbourhood-sharing group of centres in every order; all must agree."""
    results: list[Configuration] = []
    first_error: UnsupportedStateError | None = None
    for order in permutations(cluster):
        current = c
        try:
            for center in order:
                current = _flop_single(current, center)
        except UnsupportedStateError as err:
            if first_error is None:
                first_error = err
            continue
        results.append(current)
    if not results:
        assert first_error is not None
        raise first_error
    if first_error is not None or any(result != results[0] for result in results[1:]):
        names = ", ".join(str(v) for v in cluster)
        raise UnsupportedStateError(
            f"simultaneous flop at {names}: the centres share neighbours and the outcome "
            f"depends on the order they are flopped; no common result exists in this alphabet"
        )
    return results[0]


def _flop_single(c: Configuration, center: VertexId) -> Configuration:
    """One flop.  Every step below is paired with its own inverse so that
    applying the same centre twice restores the configuration exactly.

    A neighbour across a dotted edge gains a curve intersection: the edge
    turns solid and the neighbour blows up (square -> flagged ellipse,
    F1 -> ellipse, plane -> F1).  A neighbour across a solid edge loses its
    intersection curve to a point when it has a curve to contract: the edge
    turns dotted and the neighbour blows down (flagged ellipse -> square,
    plain ellipse -> F1, F1 -> plane); ruled vertices toggle their edge but
    never relabel.  A square or plane neighbour across a solid edge has no
    curve to contract: the edge and the label both stay ("inert").  Pair
    rules flip the dotted link between two toggling neighbours of the same
    pre-flop kind: absent -> inserted, dotted -> removed, solid -> left.
    """
    neighbors = c.neighbors(center)
    dotted_nbrs: list[VertexId] = []
    toggling_solid_nbrs: list[VertexId] = []
    inert: set[VertexId] = set()
    for v, e in neighbors:
        if e.kind is EdgeKind.DOTTED:
            dotted_nbrs.append(v)
        elif c.label(v) in (Label.SQUARE, Label.CIRCLE):
            inert.add(v)
        else:
            toggling_solid_nbrs.append(v)

    # phase 1: pair rules, read off the pre-flop state
    insertions: list[Edge] = []
    removals: set[tuple[VertexId, VertexId]] = set()
    for group in (dotted_nbrs, toggling_solid_nbrs):
        for u, w in combinations(group, 2):
            between = c.edge_between(u, w)
            if between is None:
                insertions.append(Edge(u, w, EdgeKind.DOTTED))
            elif between.kind is EdgeKind.DOTTED:
                removals.add(between.pair)
            # a solid link between the pair is not the centre's business

    # phase 2: toggle non-inert edges at the centre; toggling clears flags
    new_edges: dict[tuple[VertexId, VertexId], Edge] = {}
    for e in c.edges:
        if e.pair in removals:
            continue
        if e.touches(center) and e.other(center) not in inert:
            toggled = EdgeKind.DOTTED if e.kind is EdgeKind.SOLID else EdgeKind.SOLID
            new_edges[e.pair] = Edge(e.a, e.b, toggled)
        else:
            new_edges[e.pair] = e
    for e in insertions:
        new_edges[e.pair] = e

    # phase 3: relabel toggling neighbours from the pre-flop label and flag
    labels = dict(c._labels)
    for v in dotted_nbrs:
        old = labels[v]
        if old is Label.RULED4:
            continue
        if old is Label.ELLIPSE:
            raise UnsupportedStateError(
                f"flop at {center}: neighbour {v} is an ellipse across a dotted edge; "
                f"its transform has no label in this alphabet"
            )
        if old is Label.SQUARE:
            labels[v] = Label.ELLIPSE
            key = _pair(center, v)
            toggled = new_edges[key]
            new_edges[key] = Edge(
                toggled.a,
                toggled.b,
                EdgeKind.SOLID,
                exc_a=toggled.a == v,
                exc_b=toggled.b == v,
            )
        elif old is Label.PLUSBOX:
            labels[v] = Label.ELLIPSE
        elif old is Label.CIRCLE:
            labels[v] = Label.PLUSBOX
    for v in toggling_solid_nbrs:
        old = labels[v]
        if old is Label.RULED4:
            continue
        edge = c.edge_between(center, v)
        if old is Label.ELLIPSE:
            labels[v] = Label.SQUARE if edge.exceptional_at(v) else Label.PLUSBOX
        elif old is Label.PLUSBOX:
            stale = [ne for ne in new_edges.values() if ne.touches(v) and ne.exceptional_at(v)]
            if stale:
                raise UnsupportedStateError(
                    f"flop at {center}: {v} becomes a plane but still carries an exceptional "
                    f"flag on its edge to {stale[0].other(v)}"
                )
            labels[v] = Label.CIRCLE

    return Configuration(c.k, labels, new_edges.values())
