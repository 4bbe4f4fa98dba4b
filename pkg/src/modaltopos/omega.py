"""Sieves, the subobject classifier, and its arrow-set companion.

A sieve on C is a set of arrows into C closed under precomposition; the
presheaf of all sieves classifies subpresheaves.  Dropping the closure
condition gives the presheaf of arbitrary arrow-sets, which is Boolean
pointwise and carries the geometric frames used for forcing.

Implication on the sieve presheaf is computed by a direct formula and
cross-checked, once per base, against the abstract route that classifies
the equalizer of the meet and the first projection; meet and join are
similarly cross-checked against their classifying-map constructions.
"""

import itertools
import threading
from dataclasses import dataclass

from .errors import (
    InternalCheckError,
    NotClosedUnderRestriction,
    SizeGuardExceeded,
)
from .presheaf import (
    NatTransform,
    Presheaf,
    STAR,
    pair,
    product,
    terminal,
)

_MAX_POWERSET_BITS = 20


def set_name(members):
    return "{%s}" % ",".join(sorted(members))


def set_members(name):
    body = name[1:-1]
    return frozenset(body.split(",")) if body else frozenset()


@dataclass(frozen=True)
class Sieve:
    obj: str
    arrows: frozenset

    @property
    def name(self):
        return set_name(self.arrows)


@dataclass(frozen=True)
class ArrowSet:
    obj: str
    arrows: frozenset

    @property
    def name(self):
        return set_name(self.arrows)


def is_sieve(base, obj, arrow_names):
    """Closure under precomposition: h in S forces h.f in S."""
    s = set(arrow_names)
    for h in s:
        hd = base.arrow(h).dom
        for f in base.arrows:
            if f.cod == hd and base.compose[(h, f.name)] not in s:
                return False
    return True


def sieves_on(base, obj):
    """All sieves on obj, as sorted names."""
    into = [a.name for a in base.arrows_into(obj)]
    if len(into) > _MAX_POWERSET_BITS:
        raise SizeGuardExceeded(
            "%d arrows into %s; the sieve set would be huge" % (len(into), obj))
    out = []
    for k in range(len(into) + 1):
        for combo in itertools.combinations(into, k):
            if is_sieve(base, obj, combo):
                out.append(set_name(combo))
    return sorted(out)


def maximal_sieve(base, obj):
    return set_name([a.name for a in base.arrows_into(obj)])


def _restrict_set(base, g, members):
    """{f | g.f in members}: the action of g on sieves and arrow-sets."""
    gd = base.arrow(g).dom
    return frozenset(
        f.name for f in base.arrows_into(gd)
        if base.compose[(g, f.name)] in members)


_lock = threading.Lock()
_omega_cache = {}
_omega_star_cache = {}
_heyting_cache = {}


def omega(base):
    """The presheaf of sieves."""
    with _lock:
        hit = _omega_cache.get(base.key)
    if hit is not None:
        return hit
    sets = {obj: sieves_on(base, obj) for obj in base.objects}
    rests = {}
    for arr in base.arrows:
        rests[arr.name] = {
            nm: set_name(_restrict_set(base, arr.name, set_members(nm)))
            for nm in sets[arr.cod]}
    P = Presheaf(base, "Omega", sets, rests)
    with _lock:
        _omega_cache.setdefault(base.key, P)
        return _omega_cache[base.key]


def omega_star(base):
    """The presheaf of arbitrary arrow-sets (same action as omega)."""
    with _lock:
        hit = _omega_star_cache.get(base.key)
    if hit is not None:
        return hit
    sets = {}
    for obj in base.objects:
        into = [a.name for a in base.arrows_into(obj)]
        if len(into) > _MAX_POWERSET_BITS:
            raise SizeGuardExceeded(
                "%d arrows into %s; the arrow-set presheaf would be huge"
                % (len(into), obj))
        sets[obj] = [set_name(c)
                     for k in range(len(into) + 1)
                     for c in itertools.combinations(into, k)]
    rests = {}
    for arr in base.arrows:
        rests[arr.name] = {
            nm: set_name(_restrict_set(base, arr.name, set_members(nm)))
            for nm in sets[arr.cod]}
    P = Presheaf(base, "OmegaStar", sets, rests)
    with _lock:
        _omega_star_cache.setdefault(base.key, P)
        return _omega_star_cache[base.key]


# -- subobjects -----------------------------------------------------------------

class Subpresheaf:
    """Per-object subsets of a parent presheaf, closed under restriction."""

    def __init__(self, parent, members, check=True):
        self.parent = parent
        self.members = {
            obj: frozenset(members.get(obj, ()))
            for obj in parent.base.objects}
        if check:
            for obj, ms in self.members.items():
                bad = ms - set(parent.sets[obj])
                if bad:
                    raise NotClosedUnderRestriction(
                        "%r are not elements of %s(%s)"
                        % (sorted(bad), parent.name, obj))
            for arr in parent.base.arrows:
                for x in self.members[arr.cod]:
                    if parent.restrict(arr.name, x) not in self.members[arr.dom]:
                        raise NotClosedUnderRestriction(
                            "%s at %s escapes along %s" % (x, arr.cod, arr.name))

    def __eq__(self, other):
        return (isinstance(other, Subpresheaf)
                and self.parent.key == other.parent.key
                and self.members == other.members)

    def __hash__(self):
        return hash((self.parent.key,
                     tuple(sorted((o, tuple(sorted(m)))
                           for o, m in self.members.items()))))

    def __le__(self, other):
        return all(self.members[o] <= other.members[o] for o in self.members)

    def __repr__(self):
        body = "; ".join("%s: %s" % (o, sorted(m))
                         for o, m in sorted(self.members.items()) if m)
        return "Subpresheaf(%s | %s)" % (self.parent.name, body or "empty")


def full_sub(parent):
    return Subpresheaf(parent, {o: set(parent.sets[o])
                                for o in parent.base.objects})


def empty_sub(parent):
    return Subpresheaf(parent, {})


def classify(sub):
    """Classifying map F -> Omega of a subpresheaf of F."""
    F = sub.parent
    base = F.base
    Om = omega(base)
    comps = {}
    for obj in base.objects:
        comps[obj] = {}
        for a in F.sets[obj]:
            arrows = [f.name for f in base.arrows_into(obj)
                      if F.restrict(f.name, a) in sub.members[f.dom]]
            comps[obj][a] = set_name(arrows)
    return NatTransform(F, Om, comps)


def subobject_of(chi):
    """Pull the top sieve back along chi : F -> Omega."""
    F = chi.source
    base = F.base
    members = {
        obj: {a for a in F.sets[obj]
              if chi.at(obj, a) == maximal_sieve(base, obj)}
        for obj in base.objects}
    return Subpresheaf(F, members)


def delta(A):
    """The classifier of the diagonal: (x, y) goes to the arrows
    equalising x and y under restriction."""
    base = A.base
    AA, _, _ = product(A, A)
    Om = omega(base)
    comps = {}
    for obj in base.objects:
        comps[obj] = {}
        for nm in AA.sets[obj]:
            x, y = AA.pair_parts(obj, nm)
            arrows = [f.name for f in base.arrows_into(obj)
                      if A.restrict(f.name, x) == A.restrict(f.name, y)]
            comps[obj][nm] = set_name(arrows)
    return NatTransform(AA, Om, comps)


# -- Heyting structure ------------------------------------------------------------

@dataclass(frozen=True)
class HeytingMaps:
    top: NatTransform
    bot: NatTransform
    meet: NatTransform
    join: NatTransform
    imp: NatTransform


def _imp_members(base, obj, s, r):
    out = []
    for f in base.arrows_into(obj):
        ok = True
        for h in base.arrows_into(f.dom):
            fh = base.compose[(f.name, h.name)]
            if fh in s and fh not in r:
                ok = False
                break
        if ok:
            out.append(f.name)
    return frozenset(out)


def _direct_heyting(base):
    Om = omega(base)
    one = terminal(base)
    OO, _, _ = product(Om, Om)
    top = NatTransform(one, Om, {
        o: {STAR: maximal_sieve(base, o)} for o in base.objects})
    bot = NatTransform(one, Om, {
        o: {STAR: set_name(())} for o in base.objects})
    mc, jc, ic = {}, {}, {}
    for obj in base.objects:
        mc[obj], jc[obj], ic[obj] = {}, {}, {}
        for nm in OO.sets[obj]:
            a, b = OO.pair_parts(obj, nm)
            sa, sb = set_members(a), set_members(b)
            mc[obj][nm] = set_name(sa & sb)
            jc[obj][nm] = set_name(sa | sb)
            ic[obj][nm] = set_name(_imp_members(base, obj, sa, sb))
    return HeytingMaps(
        top, bot,
        NatTransform(OO, Om, mc),
        NatTransform(OO, Om, jc),
        NatTransform(OO, Om, ic))


def _recipe_heyting(base):
    """The same maps via classifying-map constructions.

    Meet classifies the pairing of top with itself; join classifies the
    image of the two top-padded injections; implication classifies the
    equalizer of meet and the first projection.
    """
    Om = omega(base)
    one = terminal(base)
    OO, pi1, _ = product(Om, Om)
    top_elem = {o: maximal_sieve(base, o) for o in base.objects}

    top = classify(full_sub(one))
    bot = classify(empty_sub(one))

    meet_sub = Subpresheaf(OO, {
        o: {nm for nm in OO.sets[o]
            if OO.pair_parts(o, nm) == (top_elem[o], top_elem[o])}
        for o in base.objects})
    meet = classify(meet_sub)

    join_sub = Subpresheaf(OO, {
        o: {nm for nm in OO.sets[o]
            if top_elem[o] in OO.pair_parts(o, nm)}
        for o in base.objects})
    join = classify(join_sub)

    eq_sub = Subpresheaf(OO, {
        o: {nm for nm in OO.sets[o]
            if meet.at(o, nm) == pi1.at(o, nm)}
        for o in base.objects})
    imp = classify(eq_sub)
    return HeytingMaps(top, bot, meet, join, imp)


def omega_heyting(base):
    """Heyting structure on the sieve presheaf, both routes reconciled."""
    with _lock:
        hit = _heyting_cache.get(base.key)
    if hit is not None:
        return hit
    direct = _direct_heyting(base)
    recipe = _recipe_heyting(base)
    for field in ("top", "bot", "meet", "join", "imp"):
        if getattr(direct, field).key != getattr(recipe, field).key:
            raise InternalCheckError(
                "sieve-formula %s disagrees with its classifying-map"
                " construction on %s" % (field, base.name))
    with _lock:
        _heyting_cache.setdefault(base.key, direct)
        return _heyting_cache[base.key]


def image_sub(alpha):
    """Pointwise image of a transformation, as a subpresheaf of its target."""
    members = {
        obj: set(alpha.components[obj].values())
        for obj in alpha.source.base.objects}
    return Subpresheaf(alpha.target, members)


def diagonal_sub(A):
    AA, _, _ = product(A, A)
    return Subpresheaf(AA, {
        o: {nm for nm in AA.sets[o]
            if AA.pair_parts(o, nm)[0] == AA.pair_parts(o, nm)[1]}
        for o in A.base.objects})


def diagonal_map(A):
    """The tupling of the identity with itself, A -> A x A."""
    from .presheaf import identity_nat
    ida = identity_nat(A)
    return pair(ida, ida)


# -- display labels for two-object bases -------------------------------------------

def two_object_scheme(base):
    """For a base with objects C -> D (one non-identity arrow), return
    (g, C, D) so sieve and family labels can be rendered in binary."""
    non_id = [a for a in base.arrows if not base.is_identity(a.name)]
    if len(base.objects) != 2 or len(non_id) != 1:
        return None
    g = non_id[0]
    return g.name, g.dom, g.cod


def label_edge_set(base, name):
    """Binary label xy of an arrow-set on the codomain object: the first
    digit says whether the non-identity arrow belongs, the second whether
    the identity does."""
    scheme = two_object_scheme(base)
    g, c, d = scheme
    ms = set_members(name)
    return "%d%d" % (g in ms, ("1_" + d) in ms)


def label_vertex_set(base, name):
    scheme = two_object_scheme(base)
    _, c, _ = scheme
    return "%d" % (("1_" + c) in set_members(name))


def label_family(base, H, G, obj, name):
    """Binary label xyz of an element of H^G at the codomain object: the
    value at (identity, edge) contributes the outer digits, the value at
    (the non-identity arrow, the extra vertex) the middle one."""
    scheme = two_object_scheme(base)
    g, c, d = scheme
    from .presheaf import exponential
    HG = exponential(G, H)
    table = HG.exp_table(obj, name)
    (u,) = G.sets[d]
    xz = label_edge_set(base, table[("1_" + d, u)])
    loose = [w for w in G.sets[c] if w != G.restrict(g, u)]
    (w,) = loose
    y = label_vertex_set(base, table[(g, w)])
    return xz[0] + y + xz[1]
