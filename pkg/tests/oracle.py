"""Independent exhaustive oracle for path-basis computations.

Lists all paths up to a cap, forms every product u * r * v of the
relation generators by paths, and row-reduces the whole system at once
by dense Gaussian elimination over exact rationals.  Deliberately
one-shot and unoptimised; used to cross-check the incremental engine.
"""
from __future__ import annotations

from fractions import Fraction

from skewbrauer.quiver import BoundQuiver, Path, Quiver


def all_paths(q: Quiver, cap: int, monomials: set[tuple[int, ...]]) -> list[Path]:
    """Every path of length <= cap without a generator-monomial subpath."""
    out = [Path(v.id, ()) for v in q.vertices]
    frontier = list(out)
    for _ in range(cap):
        nxt = []
        for p in frontier:
            tgt = q.arrow(p.arrows[-1]).target if p.arrows else p.base
            for a in q.arrows_from(tgt):
                arrows = p.arrows + (a.id,)
                if any(arrows[i:i + n] in monomials
                       for n in {len(m) for m in monomials}
                       for i in range(len(arrows) - n + 1)):
                    continue
                nxt.append(Path(p.base if p.arrows else a.source, arrows))
        out.extend(nxt)
        frontier = nxt
    return out


def oracle_reduce(bq: BoundQuiver, cap: int):
    """Return (dimension, nilpotency bound, basis paths, layer data helper).

    Raises ValueError when the cap is provably too small.
    """
    q = bq.quiver
    monomials = {r.paths()[0].arrows for r in bq.relations
                 if r.is_monomial and len(r.paths()[0]) >= 2}
    paths = all_paths(q, cap, monomials)
    order = sorted(paths, key=Path.sort_key)
    col = {p: i for i, p in enumerate(order)}
    ncols = len(order)

    rows: list[dict[int, Fraction]] = []
    by_end: dict[tuple[int, int], list[Path]] = {}
    for p in paths:
        by_end.setdefault((p.source(q), p.target(q)), []).append(p)

    def add_row(vec: dict[Path, Fraction]):
        row = {}
        for p, c in vec.items():
            if p.arrows and any(
                    p.arrows[i:i + n] in monomials
                    for n in {len(m) for m in monomials}
                    for i in range(len(p.arrows) - n + 1)):
                continue  # dead by a monomial generator
            if p not in col:
                raise ValueError("oracle cap too small for a product term")
            row[col[p]] = row.get(col[p], Fraction(0)) + c
        row = {k: v for k, v in row.items() if v}
        if row:
            rows.append(row)

    for r in bq.relations:
        lead = r.paths()[0]
        src, tgt = lead.source(q), lead.target(q)
        max_len = max(len(p) for p in r.paths())
        for u in paths:
            if u.target(q) != src:
                continue
            for v in paths:
                if v.source(q) != tgt:
                    continue
                if len(u) + max_len + len(v) > cap:
                    continue
                vec: dict[Path, Fraction] = {}
                for c, p in r.terms:
                    base = u.base if u.arrows else (p.base if p.arrows else v.base)
                    joined = Path(base, u.arrows + p.arrows + v.arrows)
                    vec[joined] = vec.get(joined, Fraction(0)) + c
                add_row(vec)

    # Gaussian elimination, pivoting on the largest column of each row.
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = max(row)
            if lead not in pivots:
                coef = row.pop(lead)
                pivots[lead] = {k: v / coef for k, v in row.items()}
                break
            coef = row.pop(lead)
            for k, v in pivots[lead].items():
                new = row.get(k, Fraction(0)) - coef * v
                if new:
                    row[k] = new
                else:
                    row.pop(k, None)

    memo: dict[Path, dict[Path, Fraction]] = {}

    def reduce_path(p: Path) -> dict[Path, Fraction]:
        if p in memo:
            return memo[p]
        vec = {col[p]: Fraction(1)}
        changed = True
        while changed:
            changed = False
            for k in sorted(vec, reverse=True):
                if k in pivots:
                    coef = vec.pop(k)
                    for kk, vv in pivots[k].items():
                        new = vec.get(kk, Fraction(0)) - coef * vv
                        if new:
                            vec[kk] = new
                        else:
                            vec.pop(kk, None)
                    changed = True
                    break
        memo[p] = {order[k]: v for k, v in vec.items()}
        return memo[p]

    dead_at = {}
    for length in range(0, cap + 1):
        ps = [p for p in order if len(p) == length]
        dead_at[length] = all(not reduce_path(p) for p in ps)
    bound = None
    for length in range(1, cap + 1):
        if all(dead_at[k] for k in range(length, cap + 1)):
            bound = length
            break
    if bound is None:
        raise ValueError("oracle cap too small: paths still alive at the cap")

    basis = [p for p in order
             if len(p) < bound and reduce_path(p) == {p: Fraction(1)}]
    return len(basis), bound, basis, reduce_path
