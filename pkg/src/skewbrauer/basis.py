"""Finite-dimensional path bases of bound quiver algebras.

The engine eliminates, length by length, the span of all products
``u * r * v`` of relation generators by paths, over exact rationals.
Paths are ordered by (length, arrow sequence); every eliminated row
rewrites its largest term into strictly smaller ones, so normal forms
terminate even for inhomogeneous relations such as differences of
cycles of unequal length.  A path with a zero proper subpath is an
ideal multiple and is treated as zero directly.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import InfiniteDimensional, NotAdmissible
from .quiver import BoundQuiver, Path, Quiver, Relation, stationary

DEFAULT_LENGTH_CAP = 64

Vector = dict[Path, Fraction]


def _env_cap() -> int:
    raw = os.environ.get("SKEWBRAUER_LENGTH_CAP")
    if raw:
        try:
            return max(2, int(raw))
        except ValueError:
            pass
    return DEFAULT_LENGTH_CAP


class _Reducer:
    """Echelon state: rows keyed by their largest path, value = the rest.

    A row ``lead -> tail`` encodes the congruence lead = tail modulo the
    ideal, with every tail path strictly smaller than ``lead`` in the
    (length, arrows) order.  An empty tail kills the path.
    """

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        self.rows: dict[Path, Vector] = {}
        self._memo: dict[Path, Vector] = {}

    def insert(self, vec: Vector) -> bool:
        """Reduce ``vec`` against the rows; store the remainder as a new row."""
        vec = {p: c for p, c in vec.items() if c}
        while vec:
            lead = max(vec, key=Path.sort_key)
            row = self.rows.get(lead)
            if row is None:
                coef = vec.pop(lead)
                self.rows[lead] = {p: -c / coef for p, c in vec.items()}
                self._memo.clear()
                return True
            coef = vec.pop(lead)
            for p, c in row.items():
                new = vec.get(p, Fraction(0)) + coef * c
                if new:
                    vec[p] = new
                else:
                    vec.pop(p, None)
        return False

    def reduce_path(self, p: Path) -> Vector:
        cached = self._memo.get(p)
        if cached is not None:
            return cached
        if self._has_dead_proper_subpath(p):
            result: Vector = {}
        else:
            row = self.rows.get(p)
            result = {p: Fraction(1)} if row is None else self.reduce_vector(row)
        self._memo[p] = result
        return result

    def reduce_vector(self, vec: Vector) -> Vector:
        out: Vector = {}
        for p, c in vec.items():
            for bp, bc in self.reduce_path(p).items():
                new = out.get(bp, Fraction(0)) + c * bc
                if new:
                    out[bp] = new
                else:
                    del out[bp]
        return out

    def is_zero(self, p: Path) -> bool:
        return not self.reduce_path(p)

    def _has_dead_proper_subpath(self, p: Path) -> bool:
        n = len(p)
        q = self.quiver
        for length in range(2, n):
            for start in range(0, n - length + 1):
                window = p.arrows[start:start + length]
                sub = Path(q.arrow(window[0]).source, window)
                if not self.reduce_path(sub):
                    return True
        return False


@dataclass(frozen=True)
class PathBasis:
    """Normal-form basis of a finite-dimensional bound quiver algebra."""
    algebra: BoundQuiver
    basis_paths: tuple[Path, ...]
    nilpotency_bound: int
    _reducer: _Reducer

    @property
    def dimension(self) -> int:
        return len(self.basis_paths)

    def reduce(self, p: Path) -> Vector:
        """Normal form of a path as a combination of basis paths."""
        if len(p) >= self.nilpotency_bound:
            return {}
        return self._reducer.reduce_path(p)

    def reduce_element(self, vec: Vector) -> Vector:
        out: Vector = {}
        for p, c in vec.items():
            for bp, bc in self.reduce(p).items():
                new = out.get(bp, Fraction(0)) + c * bc
                if new:
                    out[bp] = new
                else:
                    del out[bp]
        return out

    def is_zero(self, p: Path) -> bool:
        return not self.reduce(p)

    def relation_holds(self, rel: Relation) -> bool:
        """Whether the relation element lies in the ideal."""
        return not self.reduce_element({p: c for c, p in rel.terms})

    def block(self, source: int, target: int) -> tuple[Path, ...]:
        q = self.algebra.quiver
        return tuple(p for p in self.basis_paths
                     if p.source(q) == source and p.target(q) == target)

    def paths_from(self, source: int) -> tuple[Path, ...]:
        q = self.algebra.quiver
        return tuple(p for p in self.basis_paths if p.source(q) == source)

    def paths_into(self, target: int) -> tuple[Path, ...]:
        q = self.algebra.quiver
        return tuple(p for p in self.basis_paths if p.target(q) == target)

    def alive_paths(self) -> Iterable[Path]:
        """All paths with nonzero normal form, shortest first."""
        q = self.algebra.quiver
        frontier = [stationary(v.id) for v in q.vertices]
        while frontier:
            nxt = []
            for p in frontier:
                yield p
                if len(p) + 1 >= self.nilpotency_bound:
                    continue
                for a in q.arrows_from(p.target(q)):
                    ext = Path(p.base if p.arrows else a.source, p.arrows + (a.id,))
                    if not self.is_zero(ext):
                        nxt.append(ext)
            frontier = nxt


def enumerate_basis(bq: BoundQuiver, length_cap: Optional[int] = None) -> PathBasis:
    """Compute the normal-form path basis of an admissible bound quiver.

    Raises ``NotAdmissible`` for non-admissible presentations and
    ``InfiniteDimensional`` when nonzero paths survive at the cap.
    """
    if not bq.admissible:
        raise NotAdmissible("normalise the presentation before computing a basis")
    cap = length_cap if length_cap is not None else _env_cap()
    q = bq.quiver
    red = _Reducer(q)
    for r in bq.relations:
        red.insert({p: c for c, p in r.terms})

    max_gen = max((r.max_term_length() for r in bq.relations), default=2)
    per_length: dict[int, list[Path]] = {0: [stationary(v.id) for v in q.vertices]}

    def grow(length: int) -> list[Path]:
        # extensions of currently-alive shorter paths; zero-prefixed paths
        # are ideal multiples and are never needed
        for k in range(1, length + 1):
            if k in per_length:
                continue
            out = []
            for p in per_length[k - 1]:
                if red.is_zero(p):
                    continue
                for a in q.arrows_from(p.target(q)):
                    out.append(Path(p.base if p.arrows else a.source,
                                    p.arrows + (a.id,)))
            per_length[k] = out
        return per_length[length]

    first_death: Optional[int] = None
    reached = 0
    for length in range(1, cap + 1):
        reached = length
        for r in bq.relations:
            lead = r.max_term_length()
            if lead > length:
                continue
            src = r.paths()[0].source(q)
            tgt = r.paths()[0].target(q)
            for ulen in range(0, length - lead + 1):
                vlen = length - lead - ulen
                if ulen == 0 and vlen == 0:
                    continue
                us = [u for u in grow(ulen)
                      if u.target(q) == src and not red.is_zero(u)]
                if not us:
                    continue
                vs = [v for v in grow(vlen)
                      if v.source(q) == tgt and not red.is_zero(v)]
                for u in us:
                    for v in vs:
                        vec: Vector = {}
                        for c, p in r.terms:
                            base = (u.base if u.arrows else
                                    p.base if p.arrows else v.base)
                            joined = Path(base, u.arrows + p.arrows + v.arrows)
                            vec[joined] = vec.get(joined, Fraction(0)) + c
                        red.insert(vec)
        if all(red.is_zero(p) for p in grow(length)):
            if first_death is None:
                first_death = length
            if length >= first_death + max_gen:
                break
        else:
            first_death = None

    # settle the nilpotency bound against the finished state
    bound: Optional[int] = None
    for length in range(1, reached + 1):
        if all(red.is_zero(p) for p in grow(length)):
            if bound is None:
                bound = length
        else:
            bound = None
    if bound is None:
        raise InfiniteDimensional(cap)

    basis: list[Path] = []
    for length in range(0, bound):
        for p in grow(length):
            if red.reduce_path(p) == {p: Fraction(1)}:
                basis.append(p)
    basis.sort(key=Path.sort_key)
    return PathBasis(bq, tuple(basis), bound, red)


def maximal_paths(bq: BoundQuiver, basis: PathBasis) -> tuple[Path, ...]:
    """Nonzero basis paths killed by every arrow on both sides.

    Stationary paths qualify only at vertices with no incident arrows.
    """
    q = bq.quiver
    out = []
    for p in basis.basis_paths:
        if p.is_stationary:
            if not q.arrows_from(p.base) and not q.arrows_into(p.base):
                out.append(p)
            continue
        if any(not basis.is_zero(Path(p.base, p.arrows + (a.id,)))
               for a in q.arrows_from(p.target(q))):
            continue
        if any(not basis.is_zero(Path(a.source, (a.id,) + p.arrows))
               for a in q.arrows_into(p.source(q))):
            continue
        out.append(p)
    return tuple(out)
