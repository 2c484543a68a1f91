"""Bound-quiver isomorphism by backtracking search.

A hit is a vertex/arrow bijection that matches special-vertex markings
and carries each relation ideal onto the other, checked through normal
forms in the target algebra (monomials must vanish; binomials must
vanish up to a diagonal rescaling of arrows).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Optional

from .basis import PathBasis, enumerate_basis
from .quiver import BoundQuiver, Path, Relation


@dataclass(frozen=True)
class IsoResult:
    status: str                      # "isomorphic" | "not_isomorphic" | "budget_exhausted"
    vertex_map: Optional[dict[str, str]] = None
    arrow_map: Optional[dict[str, str]] = None

    def __bool__(self) -> bool:
        return self.status == "isomorphic"

    @property
    def is_identity(self) -> bool:
        return bool(self) and all(k == v for k, v in self.vertex_map.items()) \
            and all(k == v for k, v in self.arrow_map.items())


def _vertex_profile(bq: BoundQuiver, vid: int) -> tuple:
    q = bq.quiver
    loops = sum(1 for a in q.arrows_from(vid) if a.is_loop)
    return (len(q.arrows_into(vid)), len(q.arrows_from(vid)), loops,
            vid in bq.special_vertices)


def _map_relation(rel: Relation, arrow_map: dict[int, int],
                  vmap: dict[int, int]) -> Relation:
    terms = []
    for c, p in rel.terms:
        arrows = tuple(arrow_map[a] for a in p.arrows)
        terms.append((c, Path(vmap[p.base], arrows)))
    return Relation(tuple(terms))


def _relations_carry(src: BoundQuiver, dst_basis: PathBasis,
                     arrow_map: dict[int, int], vmap: dict[int, int]) -> bool:
    for rel in src.relations:
        image = _map_relation(rel, arrow_map, vmap)
        if dst_basis.relation_holds(image):
            continue
        if rel.is_monomial:
            return False
        # allow a scalar between the two terms (diagonal arrow rescaling)
        (c1, p1), (c2, p2) = image.terms
        n1 = dst_basis.reduce(p1)
        n2 = dst_basis.reduce(p2)
        if not n1 or not n2 or set(n1) != set(n2):
            return False
        ratios = {n1[k] / n2[k] for k in n1}
        if len(ratios) != 1:
            return False
    return True


def are_isomorphic(a: BoundQuiver, b: BoundQuiver, *,
                   budget: int = 500_000,
                   length_cap: Optional[int] = None) -> IsoResult:
    """Search for an isomorphism of bound quivers.

    Requires admissible presentations on both sides.  ``budget`` bounds
    the number of search nodes; exhaustion is reported distinctly.
    """
    qa, qb = a.quiver, b.quiver
    if len(qa.vertices) != len(qb.vertices) or len(qa.arrows) != len(qb.arrows):
        return IsoResult("not_isomorphic")
    if len(a.special_vertices) != len(b.special_vertices):
        return IsoResult("not_isomorphic")
    profs_a = sorted(_vertex_profile(a, v.id) for v in qa.vertices)
    profs_b = sorted(_vertex_profile(b, v.id) for v in qb.vertices)
    if profs_a != profs_b:
        return IsoResult("not_isomorphic")

    basis_a = enumerate_basis(a, length_cap=length_cap)
    basis_b = enumerate_basis(b, length_cap=length_cap)
    if basis_a.dimension != basis_b.dimension:
        return IsoResult("not_isomorphic")

    # order vertices by rarity of profile, then label, for fast pruning
    freq: dict[tuple, int] = {}
    for v in qa.vertices:
        freq[_vertex_profile(a, v.id)] = freq.get(_vertex_profile(a, v.id), 0) + 1
    a_order = sorted(qa.vertices, key=lambda v: (freq[_vertex_profile(a, v.id)], v.label))
    candidates = {
        v.id: [w.id for w in sorted(qb.vertices, key=lambda w: w.label)
               if _vertex_profile(a, v.id) == _vertex_profile(b, w.id)]
        for v in qa.vertices
    }
    # prefer the same label first so identity maps are found immediately
    for v in qa.vertices:
        same = [w for w in candidates[v.id] if qb.vertex(w).label == qa.vertex(v.id).label]
        if same:
            rest = [w for w in candidates[v.id] if w not in same]
            candidates[v.id] = same + rest

    nodes = 0
    exhausted = False

    def arrow_groups(vmap: dict[int, int]) -> Optional[list[tuple[list, list]]]:
        groups: dict[tuple[int, int], list] = {}
        for ar in qa.arrows:
            groups.setdefault((ar.source, ar.target), []).append(ar)
        out = []
        for (s, t), ars in groups.items():
            bs = [x for x in qb.arrows
                  if x.source == vmap[s] and x.target == vmap[t]]
            if len(bs) != len(ars):
                return None
            out.append((ars, bs))
        return out

    def try_arrows(vmap: dict[int, int]) -> Optional[dict[int, int]]:
        nonlocal nodes, exhausted
        groups = arrow_groups(vmap)
        if groups is None:
            return None
        multi = [g for g in groups if len(g[0]) > 1]
        single = [g for g in groups if len(g[0]) == 1]
        base = {g[0][0].id: g[1][0].id for g in single}

        def rec(i: int, acc: dict[int, int]) -> Optional[dict[int, int]]:
            nonlocal nodes, exhausted
            if i == len(multi):
                if _relations_carry(a, basis_b, acc, vmap):
                    inv_v = {w: v for v, w in vmap.items()}
                    inv_a = {w: v for v, w in acc.items()}
                    if _relations_carry(b, basis_a, inv_a, inv_v):
                        return acc
                return None
            ars, bs = multi[i]
            for perm in permutations(bs):
                nodes += 1
                if nodes > budget:
                    exhausted = True
                    return None
                trial = dict(acc)
                trial.update({x.id: y.id for x, y in zip(ars, perm)})
                got = rec(i + 1, trial)
                if got is not None:
                    return got
            return None

        return rec(0, base)

    def backtrack(i: int, vmap: dict[int, int], used: set[int]) -> Optional[tuple]:
        nonlocal nodes, exhausted
        if exhausted:
            return None
        if i == len(a_order):
            amap = try_arrows(vmap)
            if amap is not None:
                return (dict(vmap), amap)
            return None
        v = a_order[i]
        for w in candidates[v.id]:
            if w in used:
                continue
            nodes += 1
            if nodes > budget:
                exhausted = True
                return None
            # local consistency: arrow counts between already-mapped pairs
            ok = True
            for u, wu in vmap.items():
                for (s, t, ws, wt) in ((v.id, u, w, wu), (u, v.id, wu, w)):
                    na = sum(1 for x in qa.arrows if x.source == s and x.target == t)
                    nb = sum(1 for x in qb.arrows if x.source == ws and x.target == wt)
                    if na != nb:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            vmap[v.id] = w
            used.add(w)
            got = backtrack(i + 1, vmap, used)
            if got is not None:
                return got
            del vmap[v.id]
            used.discard(w)
        return None

    found = backtrack(0, {}, set())
    if found is not None:
        vmap, amap = found
        return IsoResult(
            "isomorphic",
            {qa.vertex(v).label: qb.vertex(w).label for v, w in vmap.items()},
            {qa.arrow(x).label: qb.arrow(y).label for x, y in amap.items()})
    return IsoResult("budget_exhausted" if exhausted else "not_isomorphic")
