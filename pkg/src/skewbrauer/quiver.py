"""Quivers, paths, relations and bound quivers.

Paths compose left to right: in ``p = a1 a2 ... al`` the target of each
arrow is the source of the next, and ``p * q`` means "p first, then q".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import NonComposable

Coeff = Fraction


@dataclass(frozen=True)
class Vertex:
    id: int
    label: str


@dataclass(frozen=True)
class Arrow:
    id: int
    label: str
    source: int
    target: int

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        vids = {v.id for v in self.vertices}
        if len(vids) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        if len({v.label for v in self.vertices}) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        if len({a.label for a in self.arrows}) != len(self.arrows):
            raise ValueError("duplicate arrow labels")
        if len({a.id for a in self.arrows}) != len(self.arrows):
            raise ValueError("duplicate arrow ids")
        for a in self.arrows:
            if a.source not in vids or a.target not in vids:
                raise ValueError(f"arrow {a.label} has endpoint outside the vertex set")

    @staticmethod
    def build(vertex_labels: Sequence[str],
              arrow_specs: Sequence[tuple[str, str, str]]) -> "Quiver":
        """Construct from labels; arrow specs are (label, source label, target label)."""
        vertices = tuple(Vertex(i, lab) for i, lab in enumerate(vertex_labels))
        index = {v.label: v.id for v in vertices}
        arrows = tuple(Arrow(i, lab, index[s], index[t])
                       for i, (lab, s, t) in enumerate(arrow_specs))
        return Quiver(vertices, arrows)

    # -- lookups -----------------------------------------------------------
    def vertex(self, vid: int) -> Vertex:
        return self._vmap()[vid]

    def vertex_by_label(self, label: str) -> Vertex:
        for v in self.vertices:
            if v.label == label:
                return v
        raise KeyError(label)

    def arrow(self, aid: int) -> Arrow:
        return self._amap()[aid]

    def arrow_by_label(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def _vmap(self) -> dict[int, Vertex]:
        m = self.__dict__.get("_vm")
        if m is None:
            m = {v.id: v for v in self.vertices}
            self.__dict__["_vm"] = m
        return m

    def _amap(self) -> dict[int, Arrow]:
        m = self.__dict__.get("_am")
        if m is None:
            m = {a.id: a for a in self.arrows}
            self.__dict__["_am"] = m
        return m

    def arrows_from(self, vid: int) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.source == vid)

    def arrows_into(self, vid: int) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.target == vid)


@dataclass(frozen=True)
class Path:
    """A path in a quiver; an empty arrow tuple is the stationary path at ``base``."""
    base: int                      # source vertex id (meaningful for all paths)
    arrows: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_stationary(self) -> bool:
        return not self.arrows

    def source(self, q: Quiver) -> int:
        return q.arrow(self.arrows[0]).source if self.arrows else self.base

    def target(self, q: Quiver) -> int:
        return q.arrow(self.arrows[-1]).target if self.arrows else self.base

    def label(self, q: Quiver) -> str:
        if not self.arrows:
            return f"e_{q.vertex(self.base).label}"
        return "*".join(q.arrow(a).label for a in self.arrows)

    def sort_key(self) -> tuple:
        return (len(self.arrows), self.arrows, self.base)


def path_from_arrows(q: Quiver, arrows: Sequence[Arrow | int]) -> Path:
    aids = [a.id if isinstance(a, Arrow) else a for a in arrows]
    objs = [q.arrow(a) for a in aids]
    for prev, nxt in zip(objs, objs[1:]):
        if prev.target != nxt.source:
            raise NonComposable(f"{prev.label} then {nxt.label}")
    base = objs[0].source if objs else 0
    return Path(base, tuple(aids))


def stationary(vid: int) -> Path:
    return Path(vid, ())


def compose_paths(q: Quiver, p: Path, r: Path) -> Path:
    """Concatenate ``p`` then ``r``; stationary paths act as identities."""
    if p.target(q) != r.source(q):
        raise NonComposable(
            f"target of {p.label(q)} is not the source of {r.label(q)}")
    if p.is_stationary:
        return r
    if r.is_stationary:
        return p
    return Path(p.base, p.arrows + r.arrows)


@dataclass(frozen=True)
class Relation:
    """A monomial or two-term relation; all terms share source and target."""
    terms: tuple[tuple[Coeff, Path], ...]

    def __post_init__(self):
        if not 1 <= len(self.terms) <= 2:
            raise ValueError("relations have one or two terms")

    @staticmethod
    def monomial(p: Path) -> "Relation":
        return Relation(((Fraction(1), p),))

    @staticmethod
    def difference(p: Path, r: Path) -> "Relation":
        return Relation(((Fraction(1), p), (Fraction(-1), r)))

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def paths(self) -> tuple[Path, ...]:
        return tuple(p for _, p in self.terms)

    def max_term_length(self) -> int:
        return max(len(p) for _, p in self.terms)

    def label(self, q: Quiver) -> str:
        parts = []
        for c, p in self.terms:
            s = p.label(q)
            if not parts:
                parts.append(s if c == 1 else f"{c}*{s}")
            else:
                parts.append(f"- {s}" if c == -1 else f"+ {c}*{s}")
        return " ".join(parts)

    def canonical(self) -> "Relation":
        """Sorted terms with the leading coefficient normalised to 1."""
        terms = sorted(self.terms, key=lambda t: t[1].sort_key(), reverse=True)
        lead = terms[0][0]
        return Relation(tuple((c / lead, p) for c, p in terms))


@dataclass(frozen=True)
class BoundQuiver:
    """A quiver with relation generators and optional special-vertex markings.

    ``origins`` carries bookkeeping for presentations produced by vertex
    duplication: vertex id -> (base label, sign) and arrow id ->
    (base label, source sign, target sign), with signs in {"", "+", "-"}.
    """
    quiver: Quiver
    relations: tuple[Relation, ...] = ()
    special_vertices: frozenset[int] = frozenset()
    admissible: bool = field(default=None)  # type: ignore[assignment]
    vertex_origins: Optional[Mapping[int, tuple[str, str]]] = None
    arrow_origins: Optional[Mapping[int, tuple[str, str, str]]] = None

    def __post_init__(self):
        for r in self.relations:
            srcs = {p.source(self.quiver) for p in r.paths()}
            tgts = {p.target(self.quiver) for p in r.paths()}
            if len(srcs) != 1 or len(tgts) != 1:
                raise ValueError(f"relation terms disagree on endpoints: {r.label(self.quiver)}")
        vids = {v.id for v in self.quiver.vertices}
        if not set(self.special_vertices) <= vids:
            raise ValueError("special vertex outside the quiver")
        if self.admissible is None:
            flag = all(len(p) >= 2 for r in self.relations for p in r.paths())
            object.__setattr__(self, "admissible", flag)

    def relabelled(self, **kwargs) -> "BoundQuiver":
        data = dict(quiver=self.quiver, relations=self.relations,
                    special_vertices=self.special_vertices, admissible=self.admissible,
                    vertex_origins=self.vertex_origins, arrow_origins=self.arrow_origins)
        data.update(kwargs)
        return BoundQuiver(**data)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a structural check, with the first violation when it fails."""
    ok: bool
    condition: str = ""
    detail: str = ""
    witnesses: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _monomial_pairs(bq: BoundQuiver) -> set[tuple[int, int]]:
    """Arrow-id pairs (a, b) with a*b a quadratic monomial relation."""
    pairs = set()
    for r in bq.relations:
        if r.is_monomial and len(r.paths()[0]) == 2:
            a, b = r.paths()[0].arrows
            pairs.add((a, b))
    return pairs


def is_locally_gentle(bq: BoundQuiver) -> Verdict:
    """Check conditions (1)-(4) of the gentle definition, minus admissibility."""
    q = bq.quiver
    for r in bq.relations:
        if not (r.is_monomial and len(r.paths()[0]) == 2):
            return Verdict(False, "quadratic-monomial-ideal",
                           "relation is not a quadratic monomial",
                           (r.label(q),))
    for v in q.vertices:
        for kind, arrs in (("in", q.arrows_into(v.id)), ("out", q.arrows_from(v.id))):
            if len(arrs) > 2:
                return Verdict(False, "at-most-two-arrows",
                               f"vertex {v.label} has more than two {kind}-arrows",
                               tuple(a.label for a in arrs))
    killed = _monomial_pairs(bq)
    for a in q.arrows:
        followers = [b for b in q.arrows_from(a.target)]
        dead = [b for b in followers if (a.id, b.id) in killed]
        alive = [b for b in followers if (a.id, b.id) not in killed]
        if len(dead) > 1:
            return Verdict(False, "unique-killed-successor",
                           f"arrow {a.label} has two killed successors",
                           tuple(b.label for b in dead))
        if len(alive) > 1:
            return Verdict(False, "unique-alive-successor",
                           f"arrow {a.label} has two surviving successors",
                           tuple(b.label for b in alive))
        preceders = [b for b in q.arrows_into(a.source)]
        dead = [b for b in preceders if (b.id, a.id) in killed]
        alive = [b for b in preceders if (b.id, a.id) not in killed]
        if len(dead) > 1:
            return Verdict(False, "unique-killed-predecessor",
                           f"arrow {a.label} has two killed predecessors",
                           tuple(b.label for b in dead))
        if len(alive) > 1:
            return Verdict(False, "unique-alive-predecessor",
                           f"arrow {a.label} has two surviving predecessors",
                           tuple(b.label for b in alive))
    return Verdict(True)


def is_gentle(bq: BoundQuiver, length_cap: Optional[int] = None) -> Verdict:
    """Locally gentle plus finite dimension of the quotient (admissibility)."""
    from .basis import enumerate_basis
    from .errors import InfiniteDimensional

    local = is_locally_gentle(bq)
    if not local:
        return local
    if not bq.admissible:
        return Verdict(False, "admissible", "presentation is not admissible")
    try:
        enumerate_basis(bq, length_cap=length_cap)
    except InfiniteDimensional:
        return Verdict(False, "admissible", "quotient is infinite dimensional")
    return Verdict(True)
