import itertools

import pytest

from modaltopos import fincat, omega as om, presheaf as ps
from modaltopos.errors import NotClosedUnderRestriction


def test_sieve_sets_on_arrow_base(arrow_base):
    Om = om.omega(arrow_base)
    assert set(Om.sets["D"]) == {"{}", "{1_D,g}", "{g}"}
    assert set(Om.sets["C"]) == {"{}", "{1_C}"}


def test_omega_on_terminal_base():
    pt = fincat.terminal_category()
    Om = om.omega(pt)
    assert len(Om.sets["pt"]) == 2


def test_omega_restriction(arrow_base):
    Om = om.omega(arrow_base)
    assert Om.restrict("g", "{g}") == "{1_C}"
    assert Om.restrict("g", "{}") == "{}"
    assert Om.restrict("g", "{1_D,g}") == "{1_C}"


def test_omega_star_sizes(arrow_base):
    Os = om.omega_star(arrow_base)
    assert len(Os.sets["D"]) == 4
    assert len(Os.sets["C"]) == 2
    assert Os.restrict("g", "{1_D}") == "{}"
    for s in Os.sets["D"]:
        if "g" in om.set_members(s):
            assert Os.restrict("g", s) == "{1_C}"


def test_sieve_closure_invariant(chain3_base, diamond_base):
    for base in (chain3_base, diamond_base):
        Om = om.omega(base)
        for obj in base.objects:
            for nm in Om.sets[obj]:
                assert om.is_sieve(base, obj, om.set_members(nm))


def test_omega_sizes_on_diamond(diamond_base):
    Om = om.omega(diamond_base)
    # sieves on the top of the 2x2 poset = down-sets of the diamond
    top = [o for o in diamond_base.objects if o == "o11"][0]
    assert len(Om.sets[top]) == 6
    Os = om.omega_star(diamond_base)
    assert len(Os.sets[top]) == 16


def test_classify_loop_graph(loop_G):
    sub = om.Subpresheaf(loop_G, {"C": {"v"}})
    chi = om.classify(sub)
    assert chi.at("D", "u") == "{g}"
    assert chi.at("C", "v") == "{1_C}"
    assert chi.at("C", "w") == "{}"


def test_classify_full_and_empty(loop_G, arrow_base):
    top = om.classify(om.full_sub(loop_G))
    bot = om.classify(om.empty_sub(loop_G))
    for obj in arrow_base.objects:
        for x in loop_G.sets[obj]:
            assert top.at(obj, x) == om.maximal_sieve(arrow_base, obj)
            assert bot.at(obj, x) == "{}"


def test_subpresheaf_closure_checked(loop_G):
    with pytest.raises(NotClosedUnderRestriction):
        om.Subpresheaf(loop_G, {"D": {"u"}})  # image v missing at C


def test_classify_subobject_bijection(loop_G, arrow_base):
    """classify and subobject_of are mutually inverse on all subobjects."""
    all_subs = []
    per_obj = [loop_G.sets[o] for o in arrow_base.objects]
    for masks in itertools.product(*[
            itertools.chain.from_iterable(
                [itertools.combinations(elems, k)
                 for k in range(len(elems) + 1)])
            for elems in per_obj]):
        members = dict(zip(arrow_base.objects, [set(m) for m in masks]))
        try:
            all_subs.append(om.Subpresheaf(loop_G, members))
        except NotClosedUnderRestriction:
            pass
    assert len(all_subs) == 6  # down-closed subgraphs of the loop graph
    seen = set()
    for s in all_subs:
        chi = om.classify(s)
        assert om.subobject_of(chi) == s
        seen.add(chi.key)
    assert len(seen) == len(all_subs)


def test_delta_values(loop_G):
    d = om.delta(loop_G)
    assert d.at("C", "(v,v)") == "{1_C}"
    assert d.at("C", "(v,w)") == "{}"
    assert d.at("D", "(u,u)") == "{1_D,g}"


def test_delta_classifies_diagonal(loop_G):
    d = om.delta(loop_G)
    assert om.subobject_of(d) == om.diagonal_sub(loop_G)
    diag = om.diagonal_map(loop_G)
    composed = ps.compose_nat(d, diag)
    for obj in loop_G.base.objects:
        for x in loop_G.sets[obj]:
            assert composed.at(obj, x) == om.maximal_sieve(loop_G.base, obj)


def test_delta_on_function_space(loop_G):
    E = ps.exponential(loop_G, loop_G)
    d = om.delta(E)
    eta, mu = E.sets["D"]
    assert d.at("D", ps.pair_name(eta, mu)) == "{}"


def test_heyting_direct_equals_recipe(arrow_base, chain3_base, diamond_base):
    # omega_heyting raises internally if the two routes ever disagree
    for base in (arrow_base, chain3_base, diamond_base,
                 fincat.terminal_category()):
        hm = om.omega_heyting(base)
        OO = hm.meet.source
        for obj in base.objects:
            top = om.maximal_sieve(base, obj)
            for nm in OO.sets[obj]:
                a, b = OO.pair_parts(obj, nm)
                if b == top:
                    assert hm.meet.at(obj, nm) == a


def test_heyting_implication_example(arrow_base):
    hm = om.omega_heyting(arrow_base)
    nm = ps.pair_name("{g}", "{}")
    assert hm.imp.at("D", nm) == "{}"


def test_boolean_implication_on_arrow_sets(arrow_base):
    # in the arrow-set algebra the same implication is the complement
    members = om.set_members("{g}")
    into = {a.name for a in arrow_base.arrows_into("D")}
    assert (into - members) == {"1_D"}


def test_meet_with_top(arrow_base):
    hm = om.omega_heyting(arrow_base)
    Om = om.omega(arrow_base)
    for obj in arrow_base.objects:
        top = om.maximal_sieve(arrow_base, obj)
        for s in Om.sets[obj]:
            assert hm.meet.at(obj, ps.pair_name(s, top)) == s
            assert hm.join.at(obj, ps.pair_name(s, "{}")) == s


def test_two_object_labels(arrow_base, loop_G):
    assert om.label_edge_set(arrow_base, "{g}") == "10"
    assert om.label_edge_set(arrow_base, "{1_D}") == "01"
    assert om.label_edge_set(arrow_base, "{1_D,g}") == "11"
    assert om.label_vertex_set(arrow_base, "{1_C}") == "1"
    Om = om.omega(arrow_base)
    labels = sorted(om.label_edge_set(arrow_base, s) for s in Om.sets["D"])
    assert labels == ["00", "10", "11"]
    Os = om.omega_star(arrow_base)
    labels = sorted(om.label_edge_set(arrow_base, s) for s in Os.sets["D"])
    assert labels == ["00", "01", "10", "11"]


def test_image_sub(loop_G, arrow_base):
    one = ps.terminal(arrow_base)
    pt = ps.enumerate_nats(one, loop_G)[0]
    img = om.image_sub(pt)
    assert img.members["D"] == {"u"}
    assert img.members["C"] == {"v"}
