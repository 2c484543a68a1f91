"""Skew-gentle presentations: recognition, duplication, admissible form.

A skew-gentle algebra is handled in two presentations: the non-admissible
one (special loops f with f^2 = f) and the admissible one obtained by
duplicating the special vertices and ranging relations over all sign
decorations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from .basis import enumerate_basis, maximal_paths
from .errors import LoopAtDistinguished, NotSkewGentle, SignMismatch
from .quiver import (Arrow, BoundQuiver, Path, Quiver, Relation, Vertex,
                     Verdict, is_locally_gentle, path_from_arrows, stationary)

SIGNS = ("+", "-")


@dataclass(frozen=True)
class SgCheck:
    """Outcome of the skew-gentle recognition, with identified data."""
    ok: bool
    condition: str = ""
    detail: str = ""
    special_vertices: tuple[str, ...] = ()
    special_loops: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class SkewGentlePresentation:
    """Non-admissible presentation: bound quiver plus identified Sp and S."""
    bound: BoundQuiver
    special: frozenset[int]          # special vertex ids
    loops: dict[int, int]            # special vertex id -> loop arrow id

    @property
    def quiver(self) -> Quiver:
        return self.bound.quiver


def _classify_relations(bq: BoundQuiver):
    """Split relations into idempotent-loop pairs and quadratic monomials."""
    q = bq.quiver
    idem_loops: dict[int, Relation] = {}
    quads: list[Path] = []
    for r in bq.relations:
        paths = r.paths()
        if len(r.terms) == 2:
            lens = sorted(len(p) for p in paths)
            if lens == [1, 2]:
                long = next(p for p in paths if len(p) == 2)
                short = next(p for p in paths if len(p) == 1)
                if (len(set(long.arrows)) == 1 and long.arrows[0] == short.arrows[0]
                        and q.arrow(short.arrows[0]).is_loop):
                    c_long = next(c for c, p in r.terms if len(p) == 2)
                    c_short = next(c for c, p in r.terms if len(p) == 1)
                    if c_long + c_short == 0:
                        idem_loops[short.arrows[0]] = r
                        continue
            return None, None, r
        p = paths[0]
        if len(p) == 2:
            quads.append(p)
            continue
        return None, None, r
    return idem_loops, quads, None


def is_skew_gentle(bq: BoundQuiver) -> SgCheck:
    """Check the four defining conditions; identify Sp and the special loops."""
    q = bq.quiver
    idem_loops, quads, bad = _classify_relations(bq)
    if bad is not None:
        return SgCheck(False, "relation-shape",
                       f"relation {bad.label(q)} is neither f*f - f nor a quadratic monomial")
    special = {q.arrow(a).source for a in idem_loops}
    if bq.special_vertices and set(bq.special_vertices) != special:
        return SgCheck(False, "marking-mismatch",
                       "special-vertex marks disagree with the f*f - f loops")
    for p in quads:
        if any(a in idem_loops for a in p.arrows):
            return SgCheck(False, "mixed-relation",
                           f"quadratic relation {p.label(q)} uses a special loop")
    loop_arrows = set(idem_loops)
    plain = tuple(a for a in q.arrows if a.id not in loop_arrows)
    for x in special:
        others = [a for a in plain if a.is_loop and a.source == x]
        doubled = [a for a, _ in idem_loops.items() if q.arrow(a).source == x]
        if others or len(doubled) > 1:
            return SgCheck(False, "condition-4",
                           f"there is another loop at the special vertex {q.vertex(x).label}")
        incoming = [a for a in plain if a.target == x]
        outgoing = [a for a in plain if a.source == x]
        if len(incoming) > 1 or len(outgoing) > 1 or not (incoming or outgoing):
            return SgCheck(False, "condition-4",
                           f"special vertex {q.vertex(x).label} is not the start or end "
                           "of exactly one arrow")
        if incoming and outgoing:
            pair = (incoming[0].id, outgoing[0].id)
            if not any(p.arrows == pair for p in quads):
                return SgCheck(False, "condition-4",
                               f"the transit through special vertex {q.vertex(x).label} "
                               "is not a relation")
    gentle_part = BoundQuiver(
        Quiver(q.vertices, plain),
        tuple(Relation.monomial(p) for p in quads),
        frozenset(), True)
    local = is_locally_gentle(gentle_part)
    if not local:
        return SgCheck(False, f"gentle-part:{local.condition}", local.detail)
    return SgCheck(True, "", "",
                   tuple(sorted(q.vertex(x).label for x in special)),
                   tuple(sorted(q.arrow(a).label for a in idem_loops)))


def make_presentation(bq: BoundQuiver) -> SkewGentlePresentation:
    check = is_skew_gentle(bq)
    if not check:
        raise NotSkewGentle(f"{check.condition}: {check.detail}")
    q = bq.quiver
    loops = {}
    for lab in check.special_loops:
        a = q.arrow_by_label(lab)
        loops[a.source] = a.id
    return SkewGentlePresentation(bq, frozenset(loops), loops)


def auxiliary_gentle(p: SkewGentlePresentation) -> BoundQuiver:
    """Delete the special loops; keep quadratic relations avoiding Sp transits."""
    q = p.quiver
    loop_ids = set(p.loops.values())
    plain = tuple(a for a in q.arrows if a.id not in loop_ids)
    sub = Quiver(q.vertices, plain)
    kept = []
    for r in p.bound.relations:
        if not r.is_monomial:
            continue
        path = r.paths()[0]
        if len(path) != 2 or any(a in loop_ids for a in path.arrows):
            continue
        mid = q.arrow(path.arrows[0]).target
        if mid in p.special:
            continue
        kept.append(Relation.monomial(path))
    return BoundQuiver(sub, tuple(kept), frozenset(), True)


# ---------------------------------------------------------------------------
# vertex duplication
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SgQuiver:
    """Quiver after duplication, with origin bookkeeping both ways."""
    quiver: Quiver
    vertex_origins: dict[int, tuple[str, str]]
    arrow_origins: dict[int, tuple[str, str, str]]
    vertex_lookup: dict[tuple[str, str], int]
    arrow_lookup: dict[tuple[str, str, str], int]


def sg_quiver(q: Quiver, special: frozenset[int]) -> SgQuiver:
    """Duplicate the distinguished vertices; arrows fan out over sign choices."""
    for a in q.arrows:
        if a.is_loop and a.source in special:
            raise LoopAtDistinguished(q.arrow(a.id).label)
    vlabels: list[str] = []
    vorig: dict[int, tuple[str, str]] = {}
    vlook: dict[tuple[str, str], int] = {}
    for v in sorted(q.vertices, key=lambda v: v.label):
        if v.id in special:
            for s in SIGNS:
                vlook[(v.label, s)] = len(vlabels)
                vorig[len(vlabels)] = (v.label, s)
                vlabels.append(f"{v.label}{s}")
        else:
            vlook[(v.label, "")] = len(vlabels)
            vorig[len(vlabels)] = (v.label, "")
            vlabels.append(v.label)
    aspecs: list[tuple[str, str, str]] = []
    aorig: dict[int, tuple[str, str, str]] = {}
    alook: dict[tuple[str, str, str], int] = {}
    for a in sorted(q.arrows, key=lambda a: a.label):
        s_signs = SIGNS if a.source in special else ("",)
        t_signs = SIGNS if a.target in special else ("",)
        for ss in s_signs:
            for ts in t_signs:
                label = f"{ss}{a.label}{ts}"
                alook[(a.label, ss, ts)] = len(aspecs)
                aorig[len(aspecs)] = (a.label, ss, ts)
                aspecs.append((label,
                               f"{q.vertex(a.source).label}{ss}",
                               f"{q.vertex(a.target).label}{ts}"))
    quiver = Quiver.build(vlabels, aspecs)
    return SgQuiver(quiver, vorig, aorig, vlook, alook)


def _visit_vertices(q: Quiver, p: Path) -> list[int]:
    if not p.arrows:
        return [p.base]
    out = [q.arrow(p.arrows[0]).source]
    out.extend(q.arrow(a).target for a in p.arrows)
    return out


def _decorate(sgq: SgQuiver, q: Quiver, p: Path, signs: Sequence[str]) -> Path:
    """The signed copy of a base path under a full sign assignment."""
    if not p.arrows:
        vid = sgq.vertex_lookup[(q.vertex(p.base).label, signs[0])]
        return Path(vid, ())
    arrows = []
    for i, aid in enumerate(p.arrows):
        a = q.arrow(aid)
        arrows.append(sgq.arrow_lookup[(a.label, signs[i], signs[i + 1])])
    src = sgq.quiver.arrow(arrows[0]).source
    return Path(src, tuple(arrows))


def _sign_options(q: Quiver, special: frozenset[int], p: Path,
                  fixed: dict[int, str]) -> Iterable[tuple[str, ...]]:
    visits = _visit_vertices(q, p)
    choices = []
    for i, v in enumerate(visits):
        if i in fixed:
            choices.append((fixed[i],))
        elif v in special:
            choices.append(SIGNS)
        else:
            choices.append(("",))
    return product(*choices)


@dataclass(frozen=True)
class SgTuple:
    """Input of the sg-ideal construction: (Q, monomials, Sp, distinguished cycles)."""
    quiver: Quiver
    monomials: tuple[Path, ...]
    special: frozenset[int]
    cycles: tuple[Path, ...]      # one rotation representative per cycle

    def __post_init__(self):
        q = self.quiver
        for a in q.arrows:
            if a.is_loop and a.source in self.special:
                raise LoopAtDistinguished(a.label)
        for m in self.monomials:
            if len(m) == 2 and q.arrow(m.arrows[0]).target in self.special:
                raise ValueError(
                    f"quadratic monomial {m.label(q)} transits a distinguished vertex")
        for x in self.special:
            through = [c for c in self.cycles
                       if x in _visit_vertices(q, c)]
            if len(through) > 1:
                raise ValueError(
                    "two distinguished cycles through one distinguished vertex")


def _rotations_at(q: Quiver, cycle: Path, vid: int) -> list[Path]:
    """Rotations of a cycle starting at a given vertex, one per visit."""
    out = []
    n = len(cycle)
    visits = _visit_vertices(q, cycle)[:-1]
    for i, v in enumerate(visits):
        if v == vid:
            arrows = cycle.arrows[i:] + cycle.arrows[:i]
            out.append(Path(q.arrow(arrows[0]).source, arrows))
    return out


def sg_ideal(t: SgTuple, sgq: Optional[SgQuiver] = None) -> tuple[Relation, ...]:
    """Relation families a-d, fully ranged over sign decorations."""
    q = t.quiver
    if sgq is None:
        sgq = sg_quiver(q, t.special)
    rels: list[Relation] = []
    seen: set = set()

    def emit(r: Relation):
        key = tuple(sorted(((c, p) for c, p in r.canonical().terms),
                           key=lambda cp: cp[1].sort_key()))
        if key not in seen:
            seen.add(key)
            rels.append(r)

    # Type a: commutation through each distinguished transit
    for a in q.arrows:
        if a.target not in t.special:
            continue
        for b in q.arrows_from(a.target):
            base = Path(a.source, (a.id, b.id))
            for signs in _sign_options(q, t.special, base, {1: "+"}):
                plus = _decorate(sgq, q, base, signs)
                minus = _decorate(sgq, q, base, (signs[0], "-", signs[2]))
                emit(Relation.difference(plus, minus))

    # Type b: differences of decorated distinguished cycles at shared
    # non-distinguished starting vertices (distinct rotation instances)
    rot_map: dict[int, list[Path]] = {}
    for v in q.vertices:
        if v.id in t.special:
            continue
        rots = []
        for c in t.cycles:
            rots.extend(_rotations_at(q, c, v.id))
        rot_map[v.id] = rots
    for v, rots in rot_map.items():
        for i in range(len(rots)):
            for j in range(i + 1, len(rots)):
                for s1 in _sign_options(q, t.special, rots[i], {}):
                    d1 = _decorate(sgq, q, rots[i], s1)
                    for s2 in _sign_options(q, t.special, rots[j], {}):
                        d2 = _decorate(sgq, q, rots[j], s2)
                        emit(Relation.difference(d1, d2))

    # Type c: sign-ranged monomial relations
    for m in t.monomials:
        for signs in _sign_options(q, t.special, m, {}):
            emit(Relation.monomial(_decorate(sgq, q, m, signs)))

    # Type d: sign-mismatched decorated cycles at distinguished starts
    for x in t.special:
        for c in t.cycles:
            for rot in _rotations_at(q, c, x):
                for s_first in SIGNS:
                    for s_last in SIGNS:
                        if s_first == s_last:
                            continue
                        n = len(rot)
                        for signs in _sign_options(q, t.special, rot,
                                                   {0: s_first, n: s_last}):
                            emit(Relation.monomial(_decorate(sgq, q, rot, signs)))
    return tuple(rels)


def sg_bound_quiver(t: SgTuple) -> BoundQuiver:
    """The sg-bound quiver algebra of a tuple, as an admissible presentation."""
    sgq = sg_quiver(t.quiver, t.special)
    rels = sg_ideal(t, sgq)
    return BoundQuiver(sgq.quiver, rels, frozenset(), True,
                       vertex_origins=sgq.vertex_origins,
                       arrow_origins=sgq.arrow_origins)


def admissible_presentation(p: SkewGentlePresentation) -> BoundQuiver:
    """Duplicated presentation of the auxiliary tuple (Q', I', Sp, {})."""
    aux = auxiliary_gentle(p)
    mono = tuple(r.paths()[0] for r in aux.relations)
    t = SgTuple(aux.quiver, mono, frozenset(p.special), ())
    return sg_bound_quiver(t)


def sp_maximal_paths(p: SkewGentlePresentation) -> tuple[Path, ...]:
    """Maximal paths that begin and end with the special loop at special ends.

    Computed through the bijection with maximal paths of the auxiliary
    gentle algebra: reinsert the special loop at every special visit.
    """
    aux = auxiliary_gentle(p)
    basis = enumerate_basis(aux)
    q = p.quiver
    out = []
    for mp in maximal_paths(aux, basis):
        visits = _visit_vertices(aux.quiver, mp)
        arrows: list[int] = []
        for i, v in enumerate(visits):
            if v in p.loops:
                arrows.append(p.loops[v])
            if i < len(mp.arrows):
                aux_arrow = aux.quiver.arrow(mp.arrows[i])
                arrows.append(q.arrow_by_label(aux_arrow.label).id)
        if arrows:
            out.append(Path(q.arrow(arrows[0]).source, tuple(arrows)))
        else:
            out.append(stationary(mp.base))
    return tuple(out)


def induced_path(adm: BoundQuiver, aux: BoundQuiver, p: Path,
                 eps: str = "", eps2: str = "") -> Path:
    """Canonical representative of a path in the admissible presentation.

    Interior signs are fixed to "+"; endpoint signs must be supplied
    exactly when the endpoint is special.
    """
    if adm.arrow_origins is None or adm.vertex_origins is None:
        raise SignMismatch("presentation lacks duplication bookkeeping")
    vlook = {(base, sign): vid for vid, (base, sign) in adm.vertex_origins.items()}
    alook = {(base, ss, ts): aid for aid, (base, ss, ts) in adm.arrow_origins.items()}
    q = aux.quiver
    visits = _visit_vertices(q, p)
    special = {base for (base, sign) in vlook if sign}

    def sign_for(i: int, v: int) -> str:
        label = q.vertex(v).label
        if label in special:
            if i == 0 and len(visits) == 1:
                if eps and eps2 and eps != eps2:
                    raise SignMismatch("stationary path needs one sign")
                s = eps or eps2
                if not s:
                    raise SignMismatch(f"endpoint {label} is special; a sign is required")
                return s
            if i == 0:
                if not eps:
                    raise SignMismatch(f"endpoint {label} is special; a sign is required")
                return eps
            if i == len(visits) - 1:
                if not eps2:
                    raise SignMismatch(f"endpoint {label} is special; a sign is required")
                return eps2
            return "+"
        if (i == 0 and eps) or (i == len(visits) - 1 and eps2):
            raise SignMismatch(f"endpoint {label} is not special")
        return ""

    signs = [sign_for(i, v) for i, v in enumerate(visits)]
    if not p.arrows:
        return Path(vlook[(q.vertex(p.base).label, signs[0])], ())
    arrows = []
    for i, aid in enumerate(p.arrows):
        a = q.arrow(aid)
        arrows.append(alook[(a.label, signs[i], signs[i + 1])])
    return Path(adm.quiver.arrow(arrows[0]).source, tuple(arrows))
