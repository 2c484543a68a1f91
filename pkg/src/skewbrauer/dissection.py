"""Combinatorial orbifold dissections: polygons with one boundary side each.

Surfaces are modelled purely combinatorially: a dissection is a list of
polygons, each a cyclic list of sides (arc references plus exactly one
BOUNDARY token).  Arrows of the extracted quiver follow the stored side
order: consecutive sides (s, t) within one boundary-free run give an
arrow s -> t.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .cartan import IntPoly, ONE
from .errors import (InvalidPosition, NotReflectable, TrivialPolygon,
                     UnsupportedClass)
from .quiver import BoundQuiver, Path, Quiver, Relation, Verdict
from .skewgentle import SgTuple, SkewGentlePresentation, make_presentation
from .trivext import canonical_rotation

BOUNDARY = "BOUNDARY"

ARC_KINDS = ("regular", "special", "pendant")


@dataclass(frozen=True)
class Arc:
    id: int
    label: str
    kind: str = "regular"

    def __post_init__(self):
        if self.kind not in ARC_KINDS:
            raise ValueError(f"unknown arc kind {self.kind}")


@dataclass(frozen=True)
class Puncture:
    label: str
    arcs: tuple[int, ...]


@dataclass(frozen=True)
class OrbifoldDissection:
    arcs: tuple[Arc, ...]
    polygons: tuple[tuple[Union[int, str], ...], ...]   # arc ids or BOUNDARY
    punctures: tuple[Puncture, ...] = ()

    def arc(self, aid: int) -> Arc:
        return next(a for a in self.arcs if a.id == aid)

    def arc_by_label(self, label: str) -> Arc:
        return next(a for a in self.arcs if a.label == label)

    def run(self, polygon: int) -> tuple[int, ...]:
        """Sides of a polygon read cyclically starting after BOUNDARY."""
        sides = self.polygons[polygon]
        b = sides.index(BOUNDARY)
        rotated = sides[b + 1:] + sides[:b]
        return tuple(s for s in rotated)

    def is_trivial(self, polygon: int) -> bool:
        return len(self.polygons[polygon]) == 2


def validate_dissection(d: OrbifoldDissection) -> Verdict:
    ids = {a.id for a in d.arcs}
    counts = {a.id: 0 for a in d.arcs}
    for i, sides in enumerate(d.polygons):
        boundaries = sum(1 for s in sides if s == BOUNDARY)
        if boundaries != 1:
            return Verdict(False, "one-boundary",
                           f"polygon {i} has {boundaries} boundary sides")
        for s in sides:
            if s == BOUNDARY:
                continue
            if s not in ids:
                return Verdict(False, "unknown-arc", f"polygon {i} uses arc {s}")
            counts[s] += 1
    for a in d.arcs:
        want = 2 if a.kind == "regular" else 1
        if counts[a.id] != want:
            return Verdict(False, "occurrences",
                           f"{a.kind} arc {a.label} occurs {counts[a.id]} times, "
                           f"expected {want}")
    seen_arcs = set()
    for p in d.punctures:
        for aid in p.arcs:
            if aid not in ids:
                return Verdict(False, "puncture", f"puncture {p.label} lists an unknown arc")
    return Verdict(True)


@dataclass(frozen=True)
class _Angle:
    polygon: int
    index: int          # gap after run position index
    source: int         # arc id
    target: int


def _angles(d: OrbifoldDissection) -> list[_Angle]:
    out = []
    for i in range(len(d.polygons)):
        run = d.run(i)
        for k in range(len(run) - 1):
            out.append(_Angle(i, k, run[k], run[k + 1]))
    return out


@dataclass(frozen=True)
class DissectionQuiver:
    """Extracted tuple data plus the angle bookkeeping used by moves."""
    quiver: Quiver
    relations: tuple[Relation, ...]
    special: frozenset[int]                  # quiver vertex ids
    angle_of_arrow: dict[int, _Angle]        # arrow id -> angle
    pendant_loop: dict[int, int]             # arc id -> arrow id


def quiver_from_dissection(d: OrbifoldDissection) -> DissectionQuiver:
    """Arcs become vertices; angles become arrows; relations by the transit rules.

    Special arcs are reported through ``special``; their loops and the
    transit relations at special arcs are left to the presentation layer,
    so the result is exactly the duplication-ready tuple data.
    """
    check = validate_dissection(d)
    if not check:
        raise UnsupportedClass(check.detail)
    vlabels = [a.label for a in sorted(d.arcs, key=lambda a: a.label)]
    angles = _angles(d)
    arrow_specs = []
    angle_for: dict[int, _Angle] = {}
    for ang in angles:
        label = f"a{ang.polygon}.{ang.index}"
        angle_for[len(arrow_specs)] = ang
        arrow_specs.append((label, d.arc(ang.source).label, d.arc(ang.target).label))
    pendant_loop: dict[int, int] = {}
    for a in sorted(d.arcs, key=lambda a: a.label):
        if a.kind == "pendant":
            pendant_loop[a.id] = len(arrow_specs)
            arrow_specs.append((f"f{a.label}", a.label, a.label))
    q = Quiver.build(vlabels, arrow_specs)
    special = frozenset(q.vertex_by_label(a.label).id
                        for a in d.arcs if a.kind == "special")

    rels: list[Relation] = []
    for i, first in angle_for.items():
        for j, second in angle_for.items():
            src_arrow = q.arrow(i)
            tgt_arrow = q.arrow(j)
            if src_arrow.target != tgt_arrow.source:
                continue
            mid_arc = d.arc_by_label(q.vertex(src_arrow.target).label)
            same_occurrence = (first.polygon == second.polygon
                               and second.index == first.index + 1)
            if not same_occurrence:
                rels.append(Relation.monomial(Path(src_arrow.source, (i, j))))
            elif mid_arc.kind == "pendant":
                rels.append(Relation.monomial(Path(src_arrow.source, (i, j))))
            # special-arc transits are dropped here; the sg-ideal restores them
    for aid, loop in pendant_loop.items():
        f = q.arrow(loop)
        rels.append(Relation.monomial(Path(f.source, (loop, loop))))
        # pendant loops compose with at most the flanking angles; transits
        # through other occurrences cannot exist (pendant arcs occur once)
    seen = set()
    dedup = []
    for r in rels:
        key = tuple(p.arrows for p in r.paths())
        if key not in seen:
            seen.add(key)
            dedup.append(r)
    return DissectionQuiver(q, tuple(dedup), special, angle_for, pendant_loop)


def skew_gentle_from_dissection(d: OrbifoldDissection) -> SkewGentlePresentation:
    """The non-admissible presentation: add special loops and their relations."""
    dq = quiver_from_dissection(d)
    q = dq.quiver
    specs = [(a.label, q.vertex(a.source).label, q.vertex(a.target).label)
             for a in q.arrows]
    extra = []
    for vid in sorted(dq.special):
        label = q.vertex(vid).label
        extra.append((f"f{label}", label, label))
    full = Quiver.build([v.label for v in q.vertices], specs + extra)

    def lift(p: Path) -> Path:
        arrows = tuple(full.arrow_by_label(q.arrow(a).label).id for a in p.arrows)
        base = (full.arrow(arrows[0]).source if arrows
                else full.vertex_by_label(q.vertex(p.base).label).id)
        return Path(base, arrows)

    rels = [Relation(tuple((c, lift(p)) for c, p in r.terms)) for r in dq.relations]
    special_ids = set()
    for vid in sorted(dq.special):
        label = q.vertex(vid).label
        f = full.arrow_by_label(f"f{label}")
        special_ids.add(f.source)
        rels.append(Relation.difference(Path(f.source, (f.id, f.id)),
                                        Path(f.source, (f.id,))))
        for ar in full.arrows_into(f.source):
            if ar.id == f.id:
                continue
            for br in full.arrows_from(f.source):
                if br.id == f.id:
                    continue
                rels.append(Relation.monomial(Path(ar.source, (ar.id, br.id))))
    return make_presentation(BoundQuiver(full, tuple(rels), frozenset(special_ids)))


@dataclass(frozen=True)
class DissectionTuple:
    """The duplication-ready tuple of the dissection's trivial extension."""
    quiver: Quiver
    relations: tuple[Relation, ...]
    special: frozenset[int]
    cycles: tuple[Path, ...]
    new_arrows: dict[int, int]      # arrow id -> polygon index

    def as_sg_tuple(self) -> SgTuple:
        mono = tuple(r.paths()[0] for r in self.relations if r.is_monomial)
        return SgTuple(self.quiver, mono, self.special, self.cycles)


def trivext_tuple_from_dissection(d: OrbifoldDissection) -> DissectionTuple:
    """Close each non-trivial polygon's maximal path with a new arrow."""
    dq = quiver_from_dissection(d)
    q = dq.quiver
    specs = [(a.label, q.vertex(a.source).label, q.vertex(a.target).label)
             for a in q.arrows]
    poly_paths: dict[int, list[int]] = {}
    for aid, ang in dq.angle_of_arrow.items():
        poly_paths.setdefault(ang.polygon, [])
    for i in range(len(d.polygons)):
        if d.is_trivial(i):
            poly_paths.pop(i, None)

    def polygon_path(i: int) -> list[int]:
        """Arrow ids of the maximal path of polygon i (pendant loops inserted)."""
        run = d.run(i)
        out: list[int] = []
        angs = sorted((a for aid, a in dq.angle_of_arrow.items() if a.polygon == i),
                      key=lambda a: a.index)
        for ang in angs:
            aid = next(k for k, v in dq.angle_of_arrow.items() if v == ang)
            mid = ang.source
            if not out and d.arc(mid).kind == "pendant":
                out.append(dq.pendant_loop[mid])
            out.append(aid)
            if d.arc(ang.target).kind == "pendant":
                out.append(dq.pendant_loop[ang.target])
        return out

    new_specs = []
    new_polys = []
    for i in sorted(poly_paths):
        arrows = polygon_path(i)
        if not arrows:
            continue
        src = q.arrow(arrows[0]).source
        tgt = q.arrow(arrows[-1]).target
        new_specs.append((f"B{i}", q.vertex(tgt).label, q.vertex(src).label))
        new_polys.append((i, arrows))
    full = Quiver.build([v.label for v in q.vertices], specs + new_specs)

    def lift_arrow(aid: int) -> int:
        return full.arrow_by_label(q.arrow(aid).label).id

    rels = [Relation(tuple((c, Path(full.arrow_by_label(q.arrow(p.arrows[0]).label).source
                                    if p.arrows else p.base,
                                    tuple(lift_arrow(a) for a in p.arrows)))
                     for c, p in r.terms))
            for r in dq.relations]
    cycles: list[Path] = []
    new_arrows: dict[int, int] = {}
    cycle_of_poly: dict[int, Path] = {}
    for i, arrows in new_polys:
        beta = full.arrow_by_label(f"B{i}")
        new_arrows[beta.id] = i
        word = tuple(lift_arrow(a) for a in arrows) + (beta.id,)
        cyc = canonical_rotation(full, word)
        cycles.append(cyc)
        cycle_of_poly[i] = cyc

    # new quadratics around the beta arrows
    for i, arrows in new_polys:
        beta = full.arrow_by_label(f"B{i}")
        first = lift_arrow(arrows[0])
        last = lift_arrow(arrows[-1])
        for br in full.arrows_from(beta.target):
            if br.id != first:
                rels.append(Relation.monomial(Path(beta.source, (beta.id, br.id))))
        for ar in full.arrows_into(beta.source):
            if ar.id != last:
                rels.append(Relation.monomial(Path(ar.source, (ar.id, beta.id))))

    # full cycles followed by their first arrow
    for cyc in cycles:
        for k in range(len(cyc.arrows)):
            rot = cyc.arrows[k:] + cyc.arrows[:k]
            rels.append(Relation.monomial(
                Path(full.arrow(rot[0]).source, rot + (rot[0],))))

    # differences of distinguished cycles at shared non-special vertices
    special = frozenset(full.vertex_by_label(q.vertex(v).label).id
                        for v in dq.special)
    insts: list[Path] = []
    for cyc in cycles:
        for k in range(len(cyc.arrows)):
            rot = cyc.arrows[k:] + cyc.arrows[:k]
            insts.append(Path(full.arrow(rot[0]).source, rot))
    for i in range(len(insts)):
        for j in range(i + 1, len(insts)):
            p1, p2 = insts[i], insts[j]
            if p1.arrows == p2.arrows:
                continue
            if p1.source(full) != p2.source(full) or p1.source(full) in special:
                continue
            rels.append(Relation.difference(p1, p2))

    seen = set()
    dedup = []
    for r in rels:
        c = r.canonical()
        key = tuple((str(co), p) for co, p in c.terms)
        if key not in seen:
            seen.add(key)
            dedup.append(r)
    return DissectionTuple(full, tuple(dedup), special, tuple(cycles), new_arrows)


# ---------------------------------------------------------------------------
# moves
# ---------------------------------------------------------------------------

def contraction_addition(d: OrbifoldDissection, polygon: int,
                         angle: Optional[int] = None,
                         pendant: Optional[Union[int, str]] = None) -> OrbifoldDissection:
    """Relocate the polygon's boundary side to an angle gap or a pendant point."""
    if not 0 <= polygon < len(d.polygons):
        raise InvalidPosition(f"no polygon {polygon}")
    if d.is_trivial(polygon):
        raise TrivialPolygon(f"polygon {polygon} is trivial")
    if (angle is None) == (pendant is None):
        raise InvalidPosition("give exactly one of angle or pendant")
    run = list(d.run(polygon))
    if pendant is not None:
        arc = (d.arc_by_label(pendant) if isinstance(pendant, str)
               else d.arc(pendant))
        if arc.kind != "pendant" or arc.id not in run:
            raise InvalidPosition(
                f"arc {arc.label} is not a pendant side of polygon {polygon}")
        pos = run.index(arc.id)
        new_sides = tuple(run[:pos + 1]) + (BOUNDARY,) + tuple(run[pos:])
        arcs = tuple(Arc(a.id, a.label, "regular") if a.id == arc.id else a
                     for a in d.arcs)
        polygons = tuple(new_sides if i == polygon else s
                         for i, s in enumerate(d.polygons))
        punctures = tuple(p for p in d.punctures if arc.id not in p.arcs)
        return OrbifoldDissection(arcs, polygons, punctures)
    # gaps 0 .. len(run)-2 are internal angles; gap len(run)-1 is the
    # boundary's current seat, so moving there is the identity
    if not 0 <= angle <= len(run) - 1:
        raise InvalidPosition(f"polygon {polygon} has no angle {angle}")
    new_sides = tuple(run[:angle + 1]) + (BOUNDARY,) + tuple(run[angle + 1:])
    polygons = tuple(new_sides if i == polygon else s
                     for i, s in enumerate(d.polygons))
    return OrbifoldDissection(d.arcs, polygons, d.punctures)


def geometric_reflection(d: OrbifoldDissection, arc: Union[int, str],
                         direction: str) -> OrbifoldDissection:
    """Reflection as a sequence of boundary moves, one per affected polygon.

    The moves realise the good cut whose auxiliary part consists of the
    arrows leaving (for ``minus``) or entering (for ``plus``) the arc's
    quiver vertex; polygons not meeting the vertex keep their boundary.
    """
    if direction not in ("minus", "plus"):
        raise ValueError("direction must be 'minus' or 'plus'")
    arc_obj = d.arc_by_label(arc) if isinstance(arc, str) else d.arc(arc)
    dq = quiver_from_dissection(d)
    q = dq.quiver
    vid = q.vertex_by_label(arc_obj.label).id
    if direction == "minus":
        if q.arrows_into(vid):
            raise NotReflectable(f"arc {arc_obj.label} is not a source")
        cut = [a for a in q.arrows_from(vid)]
    else:
        if q.arrows_from(vid):
            raise NotReflectable(f"arc {arc_obj.label} is not a sink")
        cut = [a for a in q.arrows_into(vid)]
    if not cut:
        raise NotReflectable(f"arc {arc_obj.label} meets no angle arrow")
    result = d
    for ar in cut:
        ang = dq.angle_of_arrow.get(ar.id)
        if ang is None:
            # pendant loops never occur: sources and sinks carry no loops
            raise NotReflectable(f"arrow {ar.label} is not an angle arrow")
        result = contraction_addition(result, ang.polygon, angle=ang.index)
    return result


def q_cartan_det_formula(d: OrbifoldDissection) -> IntPoly:
    """prod over punctures of (1 - (-q)^k), k = number of incident arcs.

    Pendant arcs contribute their endpoint puncture (k = 1) implicitly.
    """
    check = validate_dissection(d)
    if not check:
        raise UnsupportedClass(check.detail)
    ks = [len(p.arcs) for p in d.punctures]
    ks.extend(1 for a in d.arcs if a.kind == "pendant")
    result = ONE
    for k in ks:
        minus_q_k = IntPoly.q_power(k, (-1) ** k)
        result = result * (ONE - minus_q_k)
    return result
