"""Skew-gentle recognition, duplication, admissible presentations."""
import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from skewbrauer.basis import enumerate_basis, maximal_paths
from skewbrauer.errors import LoopAtDistinguished, NotSkewGentle, SignMismatch
from skewbrauer.quiver import BoundQuiver, Path, Quiver, Relation
from skewbrauer.skewgentle import (SgTuple, admissible_presentation,
                                   auxiliary_gentle, induced_path,
                                   is_skew_gentle, make_presentation,
                                   sg_bound_quiver, sg_ideal, sg_quiver,
                                   sp_maximal_paths)

from helpers import P, SKEW_GENTLE_FIXTURES, load, mono


def toy():
    return make_presentation(load("toy.bq"))


class TestRecognition:
    def test_toy_passes(self):
        check = is_skew_gentle(load("toy.bq"))
        assert check
        assert check.special_vertices == ("1", "2")
        assert check.special_loops == ("f1", "f2")

    def test_extra_loop_fails_condition_4(self):
        q = Quiver.build(["1", "2", "3", "4", "5"],
                         [("a", "1", "2"), ("b", "2", "3"), ("g", "3", "4"),
                          ("d", "4", "5"), ("l", "5", "3"),
                          ("f1", "1", "1"), ("f2", "2", "2"), ("h", "1", "1")])
        rels = (Relation.difference(P(q, "f1", "f1"), P(q, "f1")),
                Relation.difference(P(q, "f2", "f2"), P(q, "f2")),
                mono(q, "a", "b"), mono(q, "g", "d"), mono(q, "l", "g"))
        check = is_skew_gentle(BoundQuiver(q, rels))
        assert not check and check.condition == "condition-4"

    def test_missing_transit_relation_fails(self):
        q = Quiver.build(["1", "2", "3"],
                         [("a", "1", "2"), ("b", "2", "3"), ("f", "2", "2")])
        rels = (Relation.difference(P(q, "f", "f"), P(q, "f")),)
        check = is_skew_gentle(BoundQuiver(q, rels))
        assert not check and check.condition == "condition-4"

    def test_gentle_input_passes_with_empty_sp(self):
        bq = load("a2.bq")
        check = is_skew_gentle(bq)
        assert check and check.special_vertices == ()


class TestAuxiliary:
    def test_toy_auxiliary_ideal(self):
        aux = auxiliary_gentle(toy())
        labels = sorted(r.label(aux.quiver) for r in aux.relations)
        assert labels == ["g*d", "l*g"]
        assert len(aux.quiver.arrows) == 5

    def test_gentle_input_is_fixed(self):
        pres = make_presentation(load("a2.bq"))
        aux = auxiliary_gentle(pres)
        assert len(aux.quiver.arrows) == 1
        assert aux.relations == ()

    def test_three_vertex_line_keeps_plain_transit(self):
        # special vertices at the ends: the middle transit relation stays
        pres = make_presentation(load("repetitive.bq"))
        aux = auxiliary_gentle(pres)
        assert sorted(r.label(aux.quiver) for r in aux.relations) == ["a*b"]


class TestSgQuiver:
    def test_toy_counts(self):
        aux = auxiliary_gentle(toy())
        sp = frozenset(aux.quiver.vertex_by_label(x).id for x in ("1", "2"))
        sgq = sg_quiver(aux.quiver, sp)
        assert len(sgq.quiver.vertices) == 7
        assert len(sgq.quiver.arrows) == 9
        copies = {}
        for aid, (base, _, _) in sgq.arrow_origins.items():
            copies[base] = copies.get(base, 0) + 1
        assert copies == {"a": 4, "b": 2, "g": 1, "d": 1, "l": 1}

    def test_empty_sp_is_identity(self):
        q = Quiver.build(["1", "2"], [("a", "1", "2")])
        sgq = sg_quiver(q, frozenset())
        assert len(sgq.quiver.vertices) == 2
        assert len(sgq.quiver.arrows) == 1

    def test_both_ends_special(self):
        q = Quiver.build(["x", "y"], [("a", "x", "y")])
        sgq = sg_quiver(q, frozenset({0, 1}))
        assert len(sgq.quiver.vertices) == 4
        assert len(sgq.quiver.arrows) == 4

    def test_loop_at_distinguished(self):
        q = Quiver.build(["x"], [("f", "x", "x")])
        with pytest.raises(LoopAtDistinguished):
            sg_quiver(q, frozenset({0}))

    @pytest.mark.parametrize("name", SKEW_GENTLE_FIXTURES)
    def test_counting_invariants(self, name):
        pres = make_presentation(load(name))
        aux = auxiliary_gentle(pres)
        sp = frozenset(aux.quiver.vertex_by_label(
            pres.quiver.vertex(x).label).id for x in pres.special)
        sgq = sg_quiver(aux.quiver, sp)
        assert len(sgq.quiver.vertices) == len(aux.quiver.vertices) + len(sp)
        for a in aux.quiver.arrows:
            n = sum(1 for (base, _, _) in sgq.arrow_origins.values()
                    if base == a.label)
            specials = (a.source in sp) + (a.target in sp)
            assert n == 2 ** specials


class TestSgIdeal:
    def test_toy_exact_relation_set(self):
        adm = admissible_presentation(toy())
        labels = sorted(r.label(adm.quiver) for r in adm.relations)
        assert labels == ["+a+*+b - +a-*-b", "-a+*+b - -a-*-b", "g*d", "l*g"]

    def test_pass_through_without_special(self):
        q = Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
        t = SgTuple(q, (P(q, "a", "b"),), frozenset(), ())
        rels = sg_ideal(t)
        assert len(rels) == 1 and rels[0].is_monomial

    def test_tuple_invariant_rejects_special_transit(self):
        q = Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
        with pytest.raises(ValueError):
            SgTuple(q, (P(q, "a", "b"),), frozenset({1}), ())


class TestAdmissiblePresentation:
    def test_toy_figure(self):
        adm = admissible_presentation(toy())
        assert len(adm.quiver.vertices) == 7
        assert len(adm.quiver.arrows) == 9
        assert adm.admissible
        assert enumerate_basis(adm).dimension == 23

    def test_gentle_fixed_point(self):
        pres = make_presentation(load("a2.bq"))
        adm = admissible_presentation(pres)
        assert len(adm.quiver.vertices) == 2
        assert len(adm.quiver.arrows) == 1
        assert adm.relations == ()

    def test_excut_five_vertices(self):
        pres = make_presentation(load("excut.bq"))
        adm = admissible_presentation(pres)
        assert len(adm.quiver.vertices) == 5
        assert len(adm.quiver.arrows) == 4
        # the four sign-ranged copies of the killed transit
        assert all(r.is_monomial and len(r.paths()[0]) == 2
                   for r in adm.relations)
        assert len(adm.relations) == 4

    @pytest.mark.parametrize("name", SKEW_GENTLE_FIXTURES)
    def test_relation_shapes_and_finiteness(self, name):
        # not locally gentle in general, but always quadratic monomials plus
        # two-term commutation binomials, with a finite basis
        adm = admissible_presentation(make_presentation(load(name)))
        for r in adm.relations:
            if r.is_monomial:
                assert len(r.paths()[0]) == 2
            else:
                assert {len(p) for p in r.paths()} == {2}
        enumerate_basis(adm)


class TestSpMaximal:
    def test_repetitive_example(self):
        pres = make_presentation(load("repetitive.bq"))
        labels = sorted(p.label(pres.quiver) for p in sp_maximal_paths(pres))
        assert labels == ["b*f2", "f1*a"]

    def test_gentle_reduces_to_ordinary(self):
        pres = make_presentation(load("a2.bq"))
        assert [p.label(pres.quiver) for p in sp_maximal_paths(pres)] == ["a"]

    def test_toy_two_paths(self):
        pres = toy()
        got = sorted(p.label(pres.quiver) for p in sp_maximal_paths(pres))
        assert got == ["d*l", "f1*a*f2*b*g"]

    @pytest.mark.parametrize("name", SKEW_GENTLE_FIXTURES)
    def test_bijection_with_auxiliary_maximal(self, name):
        pres = make_presentation(load(name))
        aux = auxiliary_gentle(pres)
        amax = maximal_paths(aux, enumerate_basis(aux))
        spmax = sp_maximal_paths(pres)
        assert len(amax) == len(spmax)
        # deleting the special loops recovers the auxiliary maximal path
        loop_ids = set(pres.loops.values())
        shadows = set()
        for p in spmax:
            kept = tuple(a for a in p.arrows if a not in loop_ids)
            labels = tuple(pres.quiver.arrow(a).label for a in kept)
            shadows.add(labels)
        assert shadows == {
            tuple(aux.quiver.arrow(a).label for a in p.arrows) for p in amax}


class TestInducedPaths:
    def test_canonical_interior_plus(self):
        pres = toy()
        aux = auxiliary_gentle(pres)
        adm = admissible_presentation(pres)
        p = P(aux.quiver, "a", "b")
        got = induced_path(adm, aux, p, "+", "")
        assert got.label(adm.quiver) == "+a+*+b"

    def test_no_special_endpoints_identity(self):
        pres = toy()
        aux = auxiliary_gentle(pres)
        adm = admissible_presentation(pres)
        p = P(aux.quiver, "g", "d")
        got = induced_path(adm, aux, p)
        assert got.label(adm.quiver) == "g*d"

    def test_sign_mismatch(self):
        pres = toy()
        aux = auxiliary_gentle(pres)
        adm = admissible_presentation(pres)
        with pytest.raises(SignMismatch):
            induced_path(adm, aux, P(aux.quiver, "g", "d"), "+", "")
        with pytest.raises(SignMismatch):
            induced_path(adm, aux, P(aux.quiver, "a", "b"), "", "")

    def test_variants_share_normal_form(self):
        pres = toy()
        adm = admissible_presentation(pres)
        basis = enumerate_basis(adm)
        q = adm.quiver
        v1 = P(q, "+a+", "+b")
        v2 = P(q, "+a-", "-b")
        assert basis.reduce(v1) == basis.reduce(v2)

    @pytest.mark.parametrize("name", SKEW_GENTLE_FIXTURES)
    def test_induced_class_counts(self, name):
        # a nonzero auxiliary path induces 2^(number of special endpoints)
        # normal-form classes in the admissible presentation
        pres = make_presentation(load(name))
        aux = auxiliary_gentle(pres)
        adm = admissible_presentation(pres)
        aux_basis = enumerate_basis(aux)
        adm_basis = enumerate_basis(adm)
        special_labels = {pres.quiver.vertex(x).label for x in pres.special}
        for p in aux_basis.basis_paths:
            if p.is_stationary:
                continue
            src = aux.quiver.vertex(p.source(aux.quiver)).label
            tgt = aux.quiver.vertex(p.target(aux.quiver)).label
            eps_opts = ["+", "-"] if src in special_labels else [""]
            eps2_opts = ["+", "-"] if tgt in special_labels else [""]
            classes = set()
            for e1 in eps_opts:
                for e2 in eps2_opts:
                    ip = induced_path(adm, aux, p, e1, e2)
                    nf = adm_basis.reduce(ip)
                    assert nf, "induced path of a nonzero path must be nonzero"
                    classes.add(tuple(sorted((pp.arrows, str(c))
                                             for pp, c in nf.items())))
            assert len(classes) == len(eps_opts) * len(eps2_opts)

    @pytest.mark.parametrize("name", SKEW_GENTLE_FIXTURES)
    def test_maximality_transfers(self, name):
        # p maximal in the auxiliary algebra iff every induced copy is maximal
        pres = make_presentation(load(name))
        aux = auxiliary_gentle(pres)
        adm = admissible_presentation(pres)
        aux_basis = enumerate_basis(aux)
        adm_basis = enumerate_basis(adm)
        adm_max = set(maximal_paths(adm, adm_basis))
        special_labels = {pres.quiver.vertex(x).label for x in pres.special}

        def induced_reps(p):
            src = aux.quiver.vertex(p.source(aux.quiver)).label
            tgt = aux.quiver.vertex(p.target(aux.quiver)).label
            for e1 in (["+", "-"] if src in special_labels else [""]):
                for e2 in (["+", "-"] if tgt in special_labels else [""]):
                    nf = adm_basis.reduce(induced_path(adm, aux, p, e1, e2))
                    (rep, coeff), = nf.items()
                    yield rep

        aux_max = set(maximal_paths(aux, aux_basis))
        for p in aux_basis.basis_paths:
            if p.is_stationary:
                continue
            copies_maximal = {rep in adm_max for rep in induced_reps(p)}
            if p in aux_max:
                assert copies_maximal == {True}
            else:
                assert True not in copies_maximal
