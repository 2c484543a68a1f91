"""Brauer and skew-Brauer graphs, their algebras, and representation type."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, Union

from .basis import PathBasis, enumerate_basis, maximal_paths
from .errors import UnknownVertex, UnsupportedClass
from .quiver import (Arrow, BoundQuiver, Path, Quiver, Relation, Verdict,
                     stationary)
from .skewgentle import (SIGNS, SgQuiver, SkewGentlePresentation,
                         auxiliary_gentle, sg_quiver)

HalfEdge = tuple[int, int]          # (edge id, occurrence 1 or 2)


@dataclass(frozen=True)
class BrauerVertex:
    id: int
    label: str
    multiplicity: int = 1


@dataclass(frozen=True)
class BrauerEdge:
    id: int
    label: str
    ends: tuple[int, int]

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class BrauerGraph:
    vertices: tuple[BrauerVertex, ...]
    edges: tuple[BrauerEdge, ...]
    order: dict[int, tuple[HalfEdge, ...]]    # vertex id -> cyclic half-edge list

    def vertex(self, vid: int) -> BrauerVertex:
        return next(v for v in self.vertices if v.id == vid)

    def vertex_by_label(self, label: str) -> BrauerVertex:
        return next(v for v in self.vertices if v.label == label)

    def edge(self, eid: int) -> BrauerEdge:
        return next(e for e in self.edges if e.id == eid)

    def edge_by_label(self, label: str) -> BrauerEdge:
        return next(e for e in self.edges if e.label == label)

    def valency(self, vid: int) -> int:
        return len(self.order.get(vid, ()))

    def half_edges_at(self, vid: int) -> list[HalfEdge]:
        out = []
        for e in self.edges:
            if e.ends[0] == vid and e.ends[1] == vid:
                out.extend([(e.id, 1), (e.id, 2)])
            elif vid in e.ends:
                out.append((e.id, 1))
        return out


@dataclass(frozen=True)
class SkewBrauerGraph:
    graph: BrauerGraph
    distinguished: frozenset[int]     # vertex ids

    @property
    def vertices(self):
        return self.graph.vertices

    @property
    def edges(self):
        return self.graph.edges

    def distinguished_edges(self) -> frozenset[int]:
        out = set()
        for e in self.graph.edges:
            if set(e.ends) & set(self.distinguished):
                out.add(e.id)
        return frozenset(out)


def validate_graph(g: SkewBrauerGraph) -> Verdict:
    """All structural invariants, including order-list consistency."""
    gr = g.graph
    vids = {v.id for v in gr.vertices}
    for e in gr.edges:
        if not set(e.ends) <= vids:
            return Verdict(False, "edge-endpoints",
                           f"edge {e.label} has an unknown endpoint")
    for v in gr.vertices:
        if v.multiplicity < 1:
            return Verdict(False, "multiplicity",
                           f"vertex {v.label} has multiplicity < 1")
        want = sorted(gr.half_edges_at(v.id))
        got = sorted(gr.order.get(v.id, ()))
        if want != got:
            return Verdict(False, "order-list",
                           f"cyclic order at {v.label} is not a permutation of "
                           "its half-edges")
    for d in g.distinguished:
        if d not in vids:
            return Verdict(False, "distinguished", "unknown distinguished vertex")
        v = gr.vertex(d)
        if v.multiplicity != 1:
            return Verdict(False, "distinguished",
                           f"distinguished vertex {v.label} has multiplicity > 1")
        if gr.valency(d) != 1:
            return Verdict(False, "distinguished",
                           f"distinguished vertex {v.label} has valency != 1")
        (eid, _), = gr.order[d]
        e = gr.edge(eid)
        other = e.ends[0] if e.ends[1] == d else e.ends[1]
        if other == d:
            return Verdict(False, "distinguished",
                           f"distinguished vertex {v.label} carries a loop")
        if other in g.distinguished:
            return Verdict(False, "distinguished",
                           f"distinguished vertices {v.label} and "
                           f"{gr.vertex(other).label} are adjacent")
    return Verdict(True)


def plain_graph(g: BrauerGraph) -> SkewBrauerGraph:
    return SkewBrauerGraph(g, frozenset())


# ---------------------------------------------------------------------------
# Brauer quiver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpecialCycle:
    """The oriented cycle at a graph vertex, as arrow ids of the Brauer quiver."""
    graph_vertex: int
    arrows: tuple[int, ...]
    multiplicity: int


def brauer_quivers_with_cycles(g: BrauerGraph) -> tuple[Quiver, tuple[SpecialCycle, ...]]:
    vlabels = [e.label for e in sorted(g.edges, key=lambda e: e.label)]
    arrow_specs: list[tuple[str, str, str]] = []
    cycle_slots: list[tuple[int, list[int], int]] = []
    for v in sorted(g.vertices, key=lambda v: v.label):
        order = g.order.get(v.id, ())
        if v.multiplicity * len(order) < 2:
            continue
        ids = []
        for i, (eid, _) in enumerate(order):
            nxt = order[(i + 1) % len(order)][0]
            label = f"{v.label}.{i}"
            ids.append(len(arrow_specs))
            arrow_specs.append((label, g.edge(eid).label, g.edge(nxt).label))
        cycle_slots.append((v.id, ids, v.multiplicity))
    q = Quiver.build(vlabels, arrow_specs)
    cycles = tuple(SpecialCycle(vid, tuple(ids), m) for vid, ids, m in cycle_slots)
    return q, cycles


def brauer_quiver(g: Union[BrauerGraph, SkewBrauerGraph]) -> Quiver:
    """Vertices are the edges; one arrow per successor step around each fat vertex."""
    graph = g.graph if isinstance(g, SkewBrauerGraph) else g
    return brauer_quivers_with_cycles(graph)[0]


# ---------------------------------------------------------------------------
# the skew-Brauer algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SgSpecialCycle:
    """A sign decoration of a special cycle, in the duplicated quiver."""
    path: Path                      # canonical rotation
    graph_vertex: int
    multiplicity: int
    weight: Fraction = Fraction(1)

    def occurrences(self, arrow_id: int) -> int:
        return self.path.arrows.count(arrow_id)

    def rotations(self, q: Quiver) -> tuple[Path, ...]:
        arrows = self.path.arrows
        out = []
        for i in range(len(arrows)):
            rot = arrows[i:] + arrows[:i]
            out.append(Path(q.arrow(rot[0]).source, rot))
        return tuple(out)


@dataclass(frozen=True)
class SkewBrauerAlgebra:
    """Admissible presentation of the skew-Brauer graph algebra with its cycles."""
    algebra: BoundQuiver
    graph: SkewBrauerGraph
    cycles: tuple[SgSpecialCycle, ...]
    base_quiver: Quiver
    special_cycles: tuple[SpecialCycle, ...]

    @property
    def quiver(self) -> Quiver:
        return self.algebra.quiver


def _cycle_decorations(q: Quiver, special: frozenset[int], sgq: SgQuiver,
                       rot: Path) -> list[Path]:
    """Sign decorations of a cyclic rotation; the two end visits share a sign."""
    visits = [q.arrow(a).source for a in rot.arrows] + [rot.target(q)]
    free = [i for i, v in enumerate(visits[:-1]) if v in special]
    out = []
    for combo in product(SIGNS, repeat=len(free)):
        signs = [""] * len(visits)
        for i, s in zip(free, combo):
            signs[i] = s
        signs[-1] = signs[0]
        arrows = []
        ok = True
        for i, aid in enumerate(rot.arrows):
            a = q.arrow(aid)
            key = (a.label, signs[i], signs[i + 1])
            arrows.append(sgq.arrow_lookup[key])
        out.append(Path(sgq.quiver.arrow(arrows[0]).source, tuple(arrows)))
    return out


def _power(path: Path, m: int) -> Path:
    return Path(path.base, path.arrows * m)


def skew_brauer_algebra(g: SkewBrauerGraph) -> SkewBrauerAlgebra:
    """Relation types 0, I, IIa, IIb, III on the duplicated Brauer quiver."""
    check = validate_graph(g)
    if not check:
        raise UnsupportedClass(f"invalid skew-Brauer graph: {check.detail}")
    gr = g.graph
    q, special_cycles = brauer_quivers_with_cycles(gr)
    sp_edges = frozenset(q.vertex_by_label(gr.edge(e).label).id
                         for e in g.distinguished_edges())
    sgq = sg_quiver(q, sp_edges)
    sq = sgq.quiver

    sg_cycles: list[SgSpecialCycle] = []
    for c in special_cycles:
        base = Path(q.arrow(c.arrows[0]).source, c.arrows)
        for dec in _cycle_decorations(q, sp_edges, sgq, base):
            canon = _canonical_rotation(sq, dec.arrows)
            sg_cycles.append(SgSpecialCycle(canon, c.graph_vertex, c.multiplicity))
    sg_cycles.sort(key=lambda c: c.path.sort_key())

    rels: list[Relation] = []

    # Type 0: sign commutation through distinguished quiver vertices
    for a in q.arrows:
        if a.target not in sp_edges:
            continue
        for b in q.arrows_from(a.target):
            s_signs = SIGNS if a.source in sp_edges else ("",)
            t_signs = SIGNS if b.target in sp_edges else ("",)
            for ss in s_signs:
                for ts in t_signs:
                    plus = (sgq.arrow_lookup[(a.label, ss, "+")],
                            sgq.arrow_lookup[(b.label, "+", ts)])
                    minus = (sgq.arrow_lookup[(a.label, ss, "-")],
                             sgq.arrow_lookup[(b.label, "-", ts)])
                    rels.append(Relation.difference(
                        Path(sq.arrow(plus[0]).source, plus),
                        Path(sq.arrow(minus[0]).source, minus)))

    # Type I: chains of power differences at shared starting vertices
    by_start: dict[int, list[tuple[Path, int]]] = {}
    for c in sg_cycles:
        for rot in c.rotations(sq):
            by_start.setdefault(rot.source(sq), []).append((rot, c.multiplicity))
    for vid in sorted(by_start):
        insts = sorted(by_start[vid], key=lambda t: t[0].sort_key())
        for (r1, m1), (r2, m2) in zip(insts, insts[1:]):
            rels.append(Relation.difference(_power(r1, m1), _power(r2, m2)))

    # Type IIa: full power followed by the first arrow, per rotation
    for c in sg_cycles:
        for rot in c.rotations(sq):
            power = _power(rot, c.multiplicity)
            rels.append(Relation.monomial(
                Path(power.base, power.arrows + (rot.arrows[0],))))

    # Type IIb: sign-mismatched decorations at distinguished starts
    for c in special_cycles:
        base = Path(q.arrow(c.arrows[0]).source, c.arrows)
        for shift in range(len(c.arrows)):
            rot_arrows = c.arrows[shift:] + c.arrows[:shift]
            start = q.arrow(rot_arrows[0]).source
            if start not in sp_edges:
                continue
            visits = [q.arrow(a).source for a in rot_arrows]
            visits.append(start)
            free = [i for i, v in enumerate(visits) if v in sp_edges]
            interior = [i for i in free if i not in (0, len(visits) - 1)]
            for s0 in SIGNS:
                s_last = "-" if s0 == "+" else "+"
                for combo in product(SIGNS, repeat=len(interior)):
                    signs = [""] * len(visits)
                    signs[0] = s0
                    signs[-1] = s_last
                    for i, s in zip(interior, combo):
                        signs[i] = s
                    arrows = tuple(
                        sgq.arrow_lookup[(q.arrow(aid).label, signs[i], signs[i + 1])]
                        for i, aid in enumerate(rot_arrows))
                    mism = Path(sq.arrow(arrows[0]).source, arrows)
                    if c.multiplicity > 1:
                        closed_signs = list(signs)
                        closed_signs[-1] = s0
                        closed = tuple(
                            sgq.arrow_lookup[(q.arrow(aid).label,
                                              closed_signs[i], closed_signs[i + 1])]
                            for i, aid in enumerate(rot_arrows))
                        prefix = closed * (c.multiplicity - 1)
                        mism = Path(sq.arrow(prefix[0]).source, prefix + arrows)
                    rels.append(Relation.monomial(mism))

    # Type III: length-two paths that fit no sg-special cycle cyclically
    windows = set()
    for c in sg_cycles:
        word = c.path.arrows
        double = word + word
        for start in range(len(word)):
            windows.add(double[start:start + 2])
    for a in sq.arrows:
        for b in sq.arrows_from(a.target):
            if (a.id, b.id) not in windows:
                rels.append(Relation.monomial(Path(a.source, (a.id, b.id))))

    rels_dedup: list[Relation] = []
    seen = set()
    for r in rels:
        c = r.canonical()
        key = tuple((str(co), p) for co, p in c.terms)
        if key not in seen:
            seen.add(key)
            rels_dedup.append(r)
    algebra = BoundQuiver(sq, tuple(rels_dedup), frozenset(), True,
                          vertex_origins=sgq.vertex_origins,
                          arrow_origins=sgq.arrow_origins)
    return SkewBrauerAlgebra(algebra, g, tuple(sg_cycles), q, special_cycles)


def _canonical_rotation(q: Quiver, arrows: Sequence[int]) -> Path:
    arrows = tuple(arrows)
    best = None
    for i in range(len(arrows)):
        rot = arrows[i:] + arrows[:i]
        key = tuple(q.arrow(a).label for a in rot)
        if best is None or key < best[0]:
            best = (key, rot)
    rot = best[1]
    return Path(q.arrow(rot[0]).source, rot)


# ---------------------------------------------------------------------------
# the symmetrising form
# ---------------------------------------------------------------------------

def symmetric_form_check(alg, basis: Optional[PathBasis] = None) -> Verdict:
    """phi = 1 on powers of sg-special cycles; check phi(ab) = phi(ba) and
    nondegeneracy of the induced pairing.

    Accepts any carrier with ``algebra`` and ``cycles`` (cycle objects
    expose ``rotations`` and ``multiplicity``), so trivial extensions can
    be checked directly against the same form.
    """
    if basis is None:
        basis = enumerate_basis(alg.algebra)
    q = alg.algebra.quiver
    phi: dict[Path, Fraction] = {}
    for c in alg.cycles:
        for rot in c.rotations(q):
            nf = basis.reduce(_power(rot, c.multiplicity))
            for bp, coeff in nf.items():
                phi[bp] = Fraction(1)

    def phi_of(vec: dict[Path, Fraction]) -> Fraction:
        return sum((c * phi.get(p, Fraction(0)) for p, c in vec.items()),
                   Fraction(0))

    paths = basis.basis_paths
    for a in paths:
        for b in paths:
            ab = (basis.reduce(Path(a.base, a.arrows + b.arrows))
                  if a.target(q) == b.source(q) else {})
            ba = (basis.reduce(Path(b.base, b.arrows + a.arrows))
                  if b.target(q) == a.source(q) else {})
            if phi_of(ab) != phi_of(ba):
                return Verdict(False, "symmetry",
                               f"phi(ab) != phi(ba) for a={a.label(q)}, b={b.label(q)}")
    # nondegeneracy: rank of the Gram matrix equals the dimension
    n = len(paths)
    gram: list[list[Fraction]] = []
    for a in paths:
        row = []
        for b in paths:
            if a.target(q) == b.source(q):
                row.append(phi_of(basis.reduce(Path(a.base, a.arrows + b.arrows))))
            else:
                row.append(Fraction(0))
        gram.append(row)
    rank = 0
    cols = list(range(n))
    for col in cols:
        piv = next((i for i in range(rank, n) if gram[i][col]), None)
        if piv is None:
            continue
        gram[rank], gram[piv] = gram[piv], gram[rank]
        pv = gram[rank][col]
        for i in range(rank + 1, n):
            f = gram[i][col] / pv
            if f:
                gram[i] = [x - f * y for x, y in zip(gram[i], gram[rank])]
        rank += 1
    if rank != n:
        return Verdict(False, "nondegenerate",
                       f"pairing has rank {rank} < dimension {n}")
    return Verdict(True)


# ---------------------------------------------------------------------------
# the skew-Brauer graph of a skew-gentle algebra
# ---------------------------------------------------------------------------

def graph_from_skew_gentle(p: SkewGentlePresentation) -> SkewBrauerGraph:
    """Edges are the quiver vertices; fat vertices are the sp-maximal paths."""
    aux = auxiliary_gentle(p)
    q = aux.quiver
    for v in q.vertices:
        if not q.arrows_from(v.id) and not q.arrows_into(v.id):
            raise UnsupportedClass(
                f"vertex {v.label} has no incident arrows; the ribbon graph "
                "construction needs every vertex on a strand")
    basis = enumerate_basis(aux)
    mpaths = sorted(maximal_paths(aux, basis), key=Path.sort_key)

    vspecs: list[tuple[str, int, tuple[int, ...]]] = []   # (label, mult, visit seq)
    for i, mp in enumerate(mpaths, start=1):
        visits = [mp.source(q)] + [q.arrow(a).target for a in mp.arrows]
        vspecs.append((f"p{i}", 1, tuple(visits)))
    killed = {r.paths()[0].arrows for r in aux.relations}
    for v in sorted(q.vertices, key=lambda v: v.label):
        if v.id in p.special:
            continue
        ins = q.arrows_into(v.id)
        outs = q.arrows_from(v.id)
        leaf = ((len(ins) == 1 and not outs) or (len(outs) == 1 and not ins))
        through = (len(ins) == 1 and len(outs) == 1
                   and (ins[0].id, outs[0].id) not in killed)
        if leaf or through:
            vspecs.append((f"e{v.label}", 1, (v.id,)))
    dist_names = []
    for x in sorted(p.special):
        label = q.vertex(x).label
        vspecs.append((f"x{label}", 1, (x,)))
        dist_names.append(f"x{label}")

    slots: dict[int, list[tuple[int, int]]] = {}   # quiver vertex -> [(gvertex, pos)]
    for gi, (_, _, visits) in enumerate(vspecs):
        for pos, x in enumerate(visits):
            slots.setdefault(x, []).append((gi, pos))
    vertices = tuple(BrauerVertex(i, lab, m) for i, (lab, m, _) in enumerate(vspecs))
    edges = []
    order_entries: dict[int, dict[int, HalfEdge]] = {i: {} for i in range(len(vspecs))}
    for v in sorted(q.vertices, key=lambda v: v.label):
        got = slots.get(v.id, [])
        if len(got) != 2:
            raise UnsupportedClass(
                f"quiver vertex {q.vertex(v.id).label} fills {len(got)} slots; "
                "the construction expects exactly two")
        eid = len(edges)
        (g1, pos1), (g2, pos2) = got
        edges.append(BrauerEdge(eid, v.label, (g1, g2)))
        occ2 = 2 if g1 == g2 else 1
        order_entries[g1][pos1] = (eid, 1)
        order_entries[g2][pos2] = (eid, occ2)
    order = {i: tuple(order_entries[i][pos] for pos in sorted(order_entries[i]))
             for i in range(len(vspecs))}
    graph = BrauerGraph(vertices, tuple(edges), order)
    dist = frozenset(v.id for v in vertices if v.label in dist_names)
    return SkewBrauerGraph(graph, dist)


# ---------------------------------------------------------------------------
# representation type
# ---------------------------------------------------------------------------

def is_skew_brauer_tree(g: SkewBrauerGraph) -> Verdict:
    """Tree, multiplicity one everywhere, exactly one distinguished vertex."""
    check = validate_graph(g)
    if not check:
        return check
    gr = g.graph
    if len(g.distinguished) != 1:
        return Verdict(False, "distinguished-count",
                       f"{len(g.distinguished)} distinguished vertices")
    if any(v.multiplicity != 1 for v in gr.vertices):
        return Verdict(False, "multiplicity", "a vertex has multiplicity > 1")
    if not _is_tree(gr):
        return Verdict(False, "tree", "the underlying graph is not a tree")
    return Verdict(True)


def _is_tree(gr: BrauerGraph) -> bool:
    if len(gr.edges) != len(gr.vertices) - 1:
        return False
    if any(e.is_loop for e in gr.edges):
        return False
    adj: dict[int, set[int]] = {v.id: set() for v in gr.vertices}
    for e in gr.edges:
        adj[e.ends[0]].add(e.ends[1])
        adj[e.ends[1]].add(e.ends[0])
    seen = set()
    stack = [gr.vertices[0].id] if gr.vertices else []
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(adj[x] - seen)
    return len(seen) == len(gr.vertices)


@dataclass(frozen=True)
class Classification:
    rep_type: str              # "Finite" | "Infinite"
    reason_code: str
    detail: str
    band_witness: Optional[str] = None

    @property
    def finite(self) -> bool:
        return self.rep_type == "Finite"


def _two_edge_path_shape(g: SkewBrauerGraph) -> Optional[tuple[int, int, int]]:
    """(far end, middle, near end adjacent to a distinguished leaf) or None."""
    gr = g.graph
    if len(gr.edges) != 2 or len(gr.vertices) != 3 or not _is_tree(gr):
        return None
    degree = {v.id: 0 for v in gr.vertices}
    for e in gr.edges:
        degree[e.ends[0]] += 1
        degree[e.ends[1]] += 1
    mid = next(v for v in gr.vertices if degree[v.id] == 2)
    leaves = [v for v in gr.vertices if degree[v.id] == 1]
    return (leaves[0].id, mid.id, leaves[1].id)


def classify_rep_type(g: SkewBrauerGraph) -> Classification:
    """Decision procedure for finite representation type."""
    check = validate_graph(g)
    if not check:
        raise UnsupportedClass(check.detail)
    gr = g.graph
    ndist = len(g.distinguished)
    shape = _two_edge_path_shape(g)
    if shape is not None and ndist >= 1:
        ends = {shape[0], shape[2]}
        dist_ends = ends & set(g.distinguished)
        if len(dist_ends) == 1 and ndist == 1:
            w = next(iter(ends - dist_ends))
            mw = gr.vertex(w).multiplicity
            if mw == 1:
                return Classification(
                    "Finite", "brauer-tree-iso",
                    "two-edge graph with one distinguished leaf is a Brauer "
                    "tree algebra in disguise")
            alg = skew_brauer_algebra(g)
            loop = next(c for c in alg.special_cycles if len(c.arrows) == 1)
            gamma = alg.base_quiver.arrow(loop.arrows[0]).label
            cyc = next(c for c in alg.special_cycles if len(c.arrows) == 2)
            alpha = alg.base_quiver.arrow(cyc.arrows[0]).label
            beta = alg.base_quiver.arrow(cyc.arrows[1]).label
            witness = f"{gamma}^-1 ({alpha}+)(+{beta})"
            return Classification(
                "Infinite", "band-module",
                "two-edge graph with a fat plain leaf carries a band module",
                witness)
        if len(dist_ends) == 2:
            return Classification(
                "Infinite", "two-distinguished-two-edges",
                "both leaves distinguished: the algebra is the Brauer graph "
                "algebra of a four-cycle")
    if ndist >= 2:
        return Classification("Infinite", "multiple-distinguished",
                              "≥2 distinguished vertices")
    if ndist == 1:
        tree = is_skew_brauer_tree(g)
        if tree:
            return Classification("Finite", "skew-brauer-tree",
                                  "skew-Brauer tree")
        return Classification("Infinite", "not-skew-brauer-tree",
                              f"not a skew-Brauer tree: {tree.detail}")
    fat = [v for v in gr.vertices if v.multiplicity > 1]
    if _is_tree(gr) and len(fat) <= 1:
        return Classification("Finite", "classical-brauer-tree",
                              "Brauer tree with at most one fat vertex")
    return Classification("Infinite", "classical-not-brauer-tree",
                          "not a Brauer tree with at most one fat vertex")


# ---------------------------------------------------------------------------
# projectives
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectiveLayers:
    top: str
    layers: tuple[tuple[str, ...], ...]
    socle: str

    @property
    def dimension(self) -> int:
        return sum(len(layer) for layer in self.layers)


def projective_layers(alg: SkewBrauerAlgebra, vertex: Union[str, int],
                      basis: Optional[PathBasis] = None) -> ProjectiveLayers:
    """Radical filtration of the projective at a quiver vertex.

    Layer k lists the composition factors of rad^k / rad^{k+1}, computed
    from normal forms of the paths ending at the vertex, labelled by their
    sources.
    """
    if basis is None:
        basis = enumerate_basis(alg.algebra)
    q = alg.algebra.quiver
    try:
        vid = q.vertex_by_label(vertex).id if isinstance(vertex, str) else q.vertex(vertex).id
    except (KeyError, StopIteration):
        raise UnknownVertex(str(vertex))
    by_source: dict[int, dict[int, list[dict[Path, Fraction]]]] = {}
    for p in basis.alive_paths():
        if p.target(q) != vid:
            continue
        src = p.source(q)
        by_source.setdefault(src, {}).setdefault(len(p), []).append(basis.reduce(p))
    max_len = max((l for lens in by_source.values() for l in lens), default=0)
    layer_counts: dict[int, dict[int, int]] = {}
    for src, by_len in by_source.items():
        echelon: dict[Path, dict[Path, Fraction]] = {}

        def insert(vec: dict[Path, Fraction]) -> bool:
            vec = dict(vec)
            while vec:
                lead = max(vec, key=Path.sort_key)
                if lead not in echelon:
                    coef = vec.pop(lead)
                    echelon[lead] = {k: v / coef for k, v in vec.items()}
                    return True
                coef = vec.pop(lead)
                for k, v in echelon[lead].items():
                    nv = vec.get(k, Fraction(0)) - coef * v
                    if nv:
                        vec[k] = nv
                    else:
                        vec.pop(k, None)
            return False

        for length in range(max_len, -1, -1):
            new = sum(1 for vec in by_len.get(length, ()) if insert(vec))
            if new:
                layer_counts.setdefault(length, {})[src] = new
    layers = []
    for k in range(0, max_len + 1):
        row: list[str] = []
        for src, cnt in sorted(layer_counts.get(k, {}).items(),
                               key=lambda t: q.vertex(t[0]).label):
            row.extend([q.vertex(src).label] * cnt)
        layers.append(tuple(row))
    while layers and not layers[-1]:
        layers.pop()
    label = q.vertex(vid).label
    socle = layers[-1][0] if layers and layers[-1] else label
    return ProjectiveLayers(label, tuple(layers), socle)
