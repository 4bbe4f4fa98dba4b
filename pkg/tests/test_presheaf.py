import itertools

import pytest

from modaltopos import presheaf as ps
from modaltopos.errors import (
    BaseMismatch,
    NaturalityError,
    PresheafError,
    ShapeMismatch,
    SourceMismatch,
)


def brute_nats(F, G):
    """Check every component family against the naturality squares."""
    objs = F.base.objects
    per_obj = []
    for o in objs:
        src, tgt = F.sets[o], G.sets[o]
        per_obj.append([dict(zip(src, choice))
                        for choice in itertools.product(tgt, repeat=len(src))])
    found = []
    for combo in itertools.product(*per_obj):
        comp = dict(zip(objs, combo))
        ok = True
        for a in F.base.arrows:
            for x in F.sets[a.cod]:
                if G.restrict(a.name, comp[a.cod][x]) != comp[a.dom][F.restrict(a.name, x)]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(comp)
    return found


def test_presheaf_validation_catches_broken_functoriality(chain3_base):
    with pytest.raises(PresheafError):
        ps.Presheaf(chain3_base, "bad",
                    {"k0": ["a", "b"], "k1": ["a", "b"], "k2": ["a"]},
                    {"k1_to_k0": {"a": "a", "b": "b"},
                     "k2_to_k1": {"a": "a"},
                     "k2_to_k0": {"a": "b"}})


def test_terminal_hom_is_singleton(arrow_base, loop_G):
    one = ps.terminal(arrow_base)
    for F in (one, loop_G, ps.yoneda(arrow_base, "D")):
        assert ps.count_nats(F, one) == 1
        assert len(brute_nats(F, one)) == 1


def test_points_of_loop_graph(loop_G, arrow_base):
    one = ps.terminal(arrow_base)
    pts = ps.enumerate_nats(one, loop_G)
    assert len(pts) == 1
    assert pts[0].at("D", ps.STAR) == "u"
    assert pts[0].at("C", ps.STAR) == "v"
    assert [n.components for n in pts] == [
        {o: {ps.STAR: v for v in [n2[o]]} for o in arrow_base.objects}
        for n2 in [{"C": "v", "D": "u"}]]


def test_product_sizes_and_restriction(loop_G):
    GG, pi1, pi2 = ps.product(loop_G, loop_G)
    assert len(GG.sets["C"]) == 4
    assert len(GG.sets["D"]) == 1
    assert GG.restrict("g", "(u,u)") == "(v,v)"
    assert pi1.at("C", "(v,w)") == "v"
    assert pi2.at("C", "(v,w)") == "w"


def test_product_with_terminal_is_iso(loop_G, arrow_base):
    one = ps.terminal(arrow_base)
    P, pi1, _ = ps.product(loop_G, one)
    for obj in arrow_base.objects:
        vals = [pi1.at(obj, x) for x in P.sets[obj]]
        assert sorted(vals) == sorted(loop_G.sets[obj])
        assert len(set(vals)) == len(vals)


def test_pair_diagonal(loop_G):
    ident = ps.identity_nat(loop_G)
    diag = ps.pair(ident, ident)
    assert diag.at("C", "v") == "(v,v)"
    GG, pi1, pi2 = ps.product(loop_G, loop_G)
    assert ps.nat_equal(ps.compose_nat(pi1, diag), ident)
    assert ps.nat_equal(ps.compose_nat(pi2, diag), ident)


def test_pair_source_mismatch(loop_G, arrow_base):
    one = ps.terminal(arrow_base)
    with pytest.raises(SourceMismatch):
        ps.pair(ps.identity_nat(loop_G), ps.identity_nat(one))


def test_yoneda(arrow_base):
    yD = ps.yoneda(arrow_base, "D")
    assert yD.sets["C"] == ("g",)
    assert yD.sets["D"] == ("1_D",)
    yC = ps.yoneda(arrow_base, "C")
    assert yC.sets["D"] == ()
    assert yC.sets["C"] == ("1_C",)
    pt_y = ps.yoneda(arrow_base, "D")
    assert pt_y.restrict("g", "1_D") == "g"


def test_yoneda_on_terminal_base():
    from modaltopos import fincat
    pt = fincat.terminal_category()
    y = ps.yoneda(pt, "pt")
    one = ps.terminal(pt)
    assert [len(y.sets[o]) for o in pt.objects] == [len(one.sets[o]) for o in pt.objects]


def test_enumerate_matches_brute(arrow_base, loop_G):
    yD = ps.yoneda(arrow_base, "D")
    yDG, _, _ = ps.product(yD, loop_G)
    nats = ps.enumerate_nats(yDG, loop_G)
    assert len(nats) == 2
    assert len(brute_nats(yDG, loop_G)) == 2
    homGG = ps.enumerate_nats(loop_G, loop_G)
    assert any(ps.nat_equal(n, ps.identity_nat(loop_G)) for n in homGG)


def test_enumeration_canonical_order(arrow_base, loop_G):
    nats = ps.enumerate_nats(loop_G, loop_G)
    keys = [n.key for n in nats]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_exponential_loop_graph(loop_G):
    E = ps.exponential(loop_G, loop_G)
    assert len(E.sets["D"]) == 2
    assert len(E.sets["C"]) == 4
    # the two elements at D differ exactly at (g, w)
    t0, t1 = [E.exp_table("D", nm) for nm in E.sets["D"]]
    assert t0[("1_D", "u")] == t1[("1_D", "u")] == "u"
    assert t0[("g", "v")] == t1[("g", "v")] == "v"
    assert {t0[("g", "w")], t1[("g", "w")]} == {"v", "w"}


def test_exponential_by_terminal(arrow_base, loop_G):
    one = ps.terminal(arrow_base)
    E = ps.exponential(one, loop_G)
    for obj in arrow_base.objects:
        assert len(E.sets[obj]) == len(loop_G.sets[obj])


def test_eval_and_transpose_triangle(arrow_base, loop_G):
    ev = ps.eval_map(loop_G, loop_G)
    E = ps.exponential(loop_G, loop_G)
    # transpose of evaluation is the identity on the exponential
    tr = ps.transpose(ev)
    assert ps.nat_equal(tr, ps.identity_nat(E))


def test_eval_values(loop_G):
    E = ps.exponential(loop_G, loop_G)
    ev = ps.eval_map(loop_G, loop_G)
    for nm in E.sets["D"]:
        assert ev.at("D", ps.pair_name(nm, "u")) == "u"
    ident_elem = [nm for nm in E.sets["C"]
                  if E.exp_table("C", nm)[("1_C", "v")] == "v"
                  and E.exp_table("C", nm)[("1_C", "w")] == "w"]
    assert len(ident_elem) == 1
    assert ev.at("C", ps.pair_name(ident_elem[0], "v")) == "v"


def test_untranspose_inverse(arrow_base, loop_G):
    yD = ps.yoneda(arrow_base, "D")
    P, _, _ = ps.product(yD, loop_G)
    for alpha in ps.enumerate_nats(P, loop_G):
        again = ps.untranspose(ps.transpose(alpha))
        assert ps.nat_equal(again, alpha)


def test_currying_bijection_counts(arrow_base, loop_G):
    one = ps.terminal(arrow_base)
    yD = ps.yoneda(arrow_base, "D")
    for F in (one, loop_G, yD):
        for A in (one, loop_G):
            for B in (loop_G, yD):
                FA, _, _ = ps.product(F, A)
                lhs = ps.count_nats(FA, B)
                rhs = ps.count_nats(F, ps.exponential(A, B))
                assert lhs == rhs


def test_transpose_of_projection_is_constant_family(arrow_base, loop_G):
    # the transpose of the first projection H x I -> H tabulates
    # restriction: z at C goes to the family (f, a) -> Z(f)(z)
    Z = loop_G
    P, pi1, _ = ps.product(Z, Z)
    tr = ps.transpose(pi1)
    table = tr.target.exp_table("D", tr.at("D", "u"))
    assert table[("1_D", "u")] == "u"
    assert table[("g", "v")] == table[("g", "w")] == "v"


def test_compose_identity_laws(loop_G):
    ident = ps.identity_nat(loop_G)
    nats = ps.enumerate_nats(loop_G, loop_G)
    for n in nats:
        assert ps.nat_equal(ps.compose_nat(n, ident), n)
        assert ps.nat_equal(ps.compose_nat(ident, n), n)


def test_compose_shape_mismatch(arrow_base, loop_G):
    one = ps.terminal(arrow_base)
    with pytest.raises(ShapeMismatch):
        ps.compose_nat(ps.identity_nat(loop_G), ps.bang(loop_G))


def test_base_mismatch(loop_G):
    from modaltopos import fincat
    pt = fincat.terminal_category()
    other = ps.terminal(pt)
    with pytest.raises(BaseMismatch):
        ps.product(loop_G, other)


def test_nat_transform_validates(loop_G):
    with pytest.raises(NaturalityError):
        ps.NatTransform(loop_G, loop_G,
                        {"D": {"u": "u"}, "C": {"v": "w", "w": "v"}})


def test_distinct_exponential_elements_compare_unequal(loop_G):
    E = ps.exponential(loop_G, loop_G)
    n0, n1 = E.sets["D"]
    assert n0 != n1
    assert E.exp_table("D", n0) != E.exp_table("D", n1)
