"""Finite presheaves and natural transformations.

A presheaf assigns a finite set of named elements to every object and a
restriction function to every arrow, contravariantly: an arrow f : D -> C
restricts elements of F(C) down to F(D).  Products are pointwise;
exponentials tabulate natural families out of representables.  Exponential
elements are stored as explicit component tables keyed by (arrow, element)
pairs, so they can be printed, compared, and named deterministically.
"""

import threading

from . import kernels
from .errors import (
    BaseMismatch,
    NaturalityError,
    PresheafError,
    ShapeMismatch,
    SourceMismatch,
    UnknownObject,
)

STAR = "*"


def pair_name(a, b):
    return "(%s,%s)" % (a, b)


def exp_elem_name(table):
    """Canonical name of an exponential element from its component table."""
    parts = ["%s,%s=>%s" % (f, a, b) for (f, a), b in sorted(table.items())]
    return "{%s}" % ";".join(parts)


class Presheaf:
    """A contravariant finite-set-valued functor on a finite category."""

    def __init__(self, base, name, sets, restrictions, check=True):
        self.base = base
        self.name = name
        self.sets = {obj: tuple(sorted(sets.get(obj, ()))) for obj in base.objects}
        self.restrictions = {}
        for a in base.arrows:
            if base.is_identity(a.name):
                self.restrictions[a.name] = {
                    x: x for x in self.sets[a.dom]}
            else:
                self.restrictions[a.name] = dict(restrictions[a.name])
        self._index = {
            obj: {x: i for i, x in enumerate(elems)}
            for obj, elems in self.sets.items()
        }
        # Extra views attached by the constructors below.
        self.prod_factors = None     # (F, G) when built as a product
        self.prod_components = None  # obj -> name -> (left, right)
        self.exp_factors = None      # (A, B) when built as B^A
        self.exp_tables = None       # obj -> name -> {(arrow, a): b}
        if check:
            self._validate()
        self._key = (
            base.key,
            tuple(sorted((o, es) for o, es in self.sets.items())),
            tuple(sorted(
                (f, tuple(sorted(m.items())))
                for f, m in self.restrictions.items())),
        )

    def _validate(self):
        findings = []
        base = self.base
        for a in base.arrows:
            rmap = self.restrictions.get(a.name)
            if rmap is None:
                findings.append("no restriction along %s" % a.name)
                continue
            cod_set, dom_set = set(self.sets[a.cod]), set(self.sets[a.dom])
            if set(rmap) != cod_set or not set(rmap.values()) <= dom_set:
                findings.append(
                    "restriction along %s is not a function %s(%s) -> %s(%s)"
                    % (a.name, self.name, a.cod, self.name, a.dom))
        if findings:
            raise PresheafError("invalid presheaf %s" % self.name, findings)
        for obj in base.objects:
            ident = base.identity[obj]
            for x in self.sets[obj]:
                if self.restrictions[ident][x] != x:
                    findings.append(
                        "identity action moves %s at %s" % (x, obj))
        for f in base.arrows:
            for g in base.arrows:
                if f.cod != g.dom:
                    continue
                gf = self.base.compose[(g.name, f.name)]
                for x in self.sets[g.cod]:
                    left = self.restrictions[gf][x]
                    right = self.restrictions[f.name][
                        self.restrictions[g.name][x]]
                    if left != right:
                        findings.append(
                            "functoriality fails on %s after %s at %s"
                            % (g.name, f.name, x))
        if findings:
            raise PresheafError("invalid presheaf %s" % self.name, findings)

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Presheaf) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        sizes = ", ".join("%s:%d" % (o, len(self.sets[o]))
                          for o in self.base.objects)
        return "Presheaf(%s; %s)" % (self.name, sizes)

    def elements(self, obj):
        try:
            return self.sets[obj]
        except KeyError:
            raise UnknownObject("no object %r" % obj)

    def index(self, obj, elem):
        try:
            return self._index[obj][elem]
        except KeyError:
            raise UnknownObject("%r is not an element of %s(%s)"
                                % (elem, self.name, obj))

    def restrict(self, arrow_name, elem):
        """Image of elem (in F(cod)) under the action of the arrow."""
        return self.restrictions[arrow_name][elem]

    def total_size(self):
        return sum(len(v) for v in self.sets.values())

    def exp_table(self, obj, name):
        return self.exp_tables[obj][name]

    def pair_parts(self, obj, name):
        return self.prod_components[obj][name]


class Element:
    """A pointed element: presheaf, object, member name."""

    def __init__(self, presheaf, obj, name):
        presheaf.index(obj, name)
        self.presheaf = presheaf
        self.obj = obj
        self.name = name

    def __repr__(self):
        return "%s@%s in %s" % (self.name, self.obj, self.presheaf.name)


class NatTransform:
    """A natural transformation; components checked on construction."""

    def __init__(self, source, target, components, check=True):
        if source.base.key != target.base.key:
            raise BaseMismatch("source and target live over different bases")
        self.source = source
        self.target = target
        self.components = {
            obj: dict(components.get(obj, {})) for obj in source.base.objects}
        if check:
            self._validate()
        self._key = tuple(
            (obj, tuple(sorted(self.components[obj].items())))
            for obj in source.base.objects)

    def _validate(self):
        for obj in self.source.base.objects:
            comp = self.components[obj]
            if set(comp) != set(self.source.sets[obj]):
                raise ShapeMismatch(
                    "component at %s is not total on the source" % obj)
            tgt = set(self.target.sets[obj])
            if not set(comp.values()) <= tgt:
                raise ShapeMismatch(
                    "component at %s leaves the target" % obj)
        for a in self.source.base.arrows:
            comp_cod = self.components[a.cod]
            comp_dom = self.components[a.dom]
            for x in self.source.sets[a.cod]:
                left = self.target.restrict(a.name, comp_cod[x])
                right = comp_dom[self.source.restrict(a.name, x)]
                if left != right:
                    raise NaturalityError(
                        "square for %s fails at %s: %s vs %s"
                        % (a.name, x, left, right))

    @property
    def key(self):
        return self._key

    def at(self, obj, elem):
        return self.components[obj][elem]

    def __eq__(self, other):
        return (isinstance(other, NatTransform)
                and self.source.key == other.source.key
                and self.target.key == other.target.key
                and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "NatTransform(%s -> %s)" % (self.source.name, self.target.name)


def nat_equal(alpha, beta):
    """Extensional equality of two transformations of equal shape."""
    if (alpha.source.key != beta.source.key
            or alpha.target.key != beta.target.key):
        raise ShapeMismatch("cannot compare transformations of unequal shape")
    return alpha.key == beta.key


def identity_nat(presheaf):
    return NatTransform(presheaf, presheaf, {
        obj: {x: x for x in presheaf.sets[obj]}
        for obj in presheaf.base.objects})


def compose_nat(beta, alpha):
    """beta after alpha."""
    if alpha.target.key != beta.source.key:
        raise ShapeMismatch("target of %r is not source of %r"
                            % (alpha, beta))
    comps = {}
    for obj in alpha.source.base.objects:
        ac, bc = alpha.components[obj], beta.components[obj]
        comps[obj] = {x: bc[ac[x]] for x in alpha.source.sets[obj]}
    return NatTransform(alpha.source, beta.target, comps)


# -- basic constructions ------------------------------------------------------

_lock = threading.Lock()
_product_cache = {}
_exp_cache = {}
_terminal_cache = {}


def terminal(base):
    """The terminal presheaf: a singleton everywhere."""
    with _lock:
        cached = _terminal_cache.get(base.key)
        if cached is None:
            cached = Presheaf(base, "1", {o: (STAR,) for o in base.objects},
                              {a.name: {STAR: STAR} for a in base.arrows})
            _terminal_cache[base.key] = cached
    return cached


def bang(presheaf):
    """The unique map into the terminal presheaf."""
    one = terminal(presheaf.base)
    return NatTransform(presheaf, one, {
        obj: {x: STAR for x in presheaf.sets[obj]}
        for obj in presheaf.base.objects})


def global_element(presheaf, picks):
    """The map 1 -> F choosing picks[obj] at each object."""
    one = terminal(presheaf.base)
    return NatTransform(one, presheaf, {
        obj: {STAR: picks[obj]} for obj in presheaf.base.objects})


def product(F, G):
    """Pointwise product with projections: returns (FxG, pi1, pi2)."""
    if F.base.key != G.base.key:
        raise BaseMismatch("factors live over different bases")
    ck = (F.key, G.key)
    with _lock:
        hit = _product_cache.get(ck)
    if hit is not None:
        return hit
    sets, rests, comps = {}, {}, {}
    for obj in F.base.objects:
        pairs = [(pair_name(a, b), a, b)
                 for a in F.sets[obj] for b in G.sets[obj]]
        sets[obj] = [p[0] for p in pairs]
        comps[obj] = {p[0]: (p[1], p[2]) for p in pairs}
    for arr in F.base.arrows:
        rests[arr.name] = {
            nm: pair_name(F.restrict(arr.name, a), G.restrict(arr.name, b))
            for nm, (a, b) in comps[arr.cod].items()}
    P = Presheaf(F.base, "(%s x %s)" % (F.name, G.name), sets, rests)
    P.prod_factors = (F, G)
    P.prod_components = comps
    pi1 = NatTransform(P, F, {
        obj: {nm: ab[0] for nm, ab in comps[obj].items()}
        for obj in F.base.objects})
    pi2 = NatTransform(P, G, {
        obj: {nm: ab[1] for nm, ab in comps[obj].items()}
        for obj in F.base.objects})
    with _lock:
        _product_cache.setdefault(ck, (P, pi1, pi2))
        return _product_cache[ck]


def pair(alpha, beta):
    """The tupling <alpha, beta> into the product of the targets."""
    if alpha.source.key != beta.source.key:
        raise SourceMismatch("tupled maps must share their source")
    P, _, _ = product(alpha.target, beta.target)
    comps = {}
    for obj in alpha.source.base.objects:
        comps[obj] = {
            x: pair_name(alpha.at(obj, x), beta.at(obj, x))
            for x in alpha.source.sets[obj]}
    return NatTransform(alpha.source, P, comps)


def yoneda(base, obj):
    """The representable presheaf of arrows into obj."""
    if not base.has_object(obj):
        raise UnknownObject("no object %r in %s" % (obj, base.name))
    sets = {o: tuple(a.name for a in base.arrows_into(obj) if a.dom == o)
            for o in base.objects}
    rests = {}
    for arr in base.arrows:
        rests[arr.name] = {
            h: base.compose[(h, arr.name)]
            for o in (arr.cod,) for h in sets[o]}
    return Presheaf(base, "y" + obj, sets, rests)


# -- enumeration ---------------------------------------------------------------

def _hom_instance(F, G):
    objs = F.base.objects
    obj_idx = {o: i for i, o in enumerate(objs)}
    src_sizes = [len(F.sets[o]) for o in objs]
    tgt_sizes = [len(G.sets[o]) for o in objs]
    arrows = []
    for a in F.base.arrows:
        if F.base.is_identity(a.name):
            continue
        smap = tuple(F.index(a.dom, F.restrict(a.name, x))
                     for x in F.sets[a.cod])
        tmap = tuple(G.index(a.dom, G.restrict(a.name, y))
                     for y in G.sets[a.cod])
        arrows.append((obj_idx[a.dom], obj_idx[a.cod], smap, tmap))
    return objs, src_sizes, tgt_sizes, arrows


def _family_components(F, G, objs, family):
    comps = {}
    for i, obj in enumerate(objs):
        row = family[i]
        comps[obj] = {
            x: G.sets[obj][row[j]] for j, x in enumerate(F.sets[obj])}
    return comps


def enumerate_nats(F, G, max_visits=None):
    """All natural transformations F -> G, sorted canonically."""
    if F.base.key != G.base.key:
        raise BaseMismatch("hom-set of presheaves over different bases")
    objs, src_sizes, tgt_sizes, arrows = _hom_instance(F, G)
    fams = kernels.enumerate_families(
        src_sizes, tgt_sizes, arrows, max_visits=max_visits)
    out = [NatTransform(F, G, _family_components(F, G, objs, fam), check=False)
           for fam in sorted(fams)]
    return out


def count_nats(F, G, max_visits=None):
    """|Hom(F, G)| without materialising the transformations."""
    if F.base.key != G.base.key:
        raise BaseMismatch("hom-set of presheaves over different bases")
    _, src_sizes, tgt_sizes, arrows = _hom_instance(F, G)
    return kernels.enumerate_families(
        src_sizes, tgt_sizes, arrows, count_only=True, max_visits=max_visits)


# -- exponentials ---------------------------------------------------------------

def exponential(A, B, max_visits=None):
    """The presheaf B^A whose elements at C are maps yC x A -> B."""
    if A.base.key != B.base.key:
        raise BaseMismatch("exponential of presheaves over different bases")
    ck = (A.key, B.key)
    with _lock:
        hit = _exp_cache.get(ck)
    if hit is not None:
        return hit
    base = A.base
    sets, tables = {}, {}
    for C in base.objects:
        yC = yoneda(base, C)
        yCA, _, _ = product(yC, A)
        nats = enumerate_nats(yCA, B, max_visits=max_visits)
        tables[C] = {}
        names = []
        for eta in nats:
            table = {}
            for X in base.objects:
                for nm in yCA.sets[X]:
                    f, a = yCA.pair_parts(X, nm)
                    table[(f, a)] = eta.at(X, nm)
            nm = exp_elem_name(table)
            tables[C][nm] = table
            names.append(nm)
        sets[C] = names
    rests = {}
    for arr in base.arrows:
        if base.is_identity(arr.name):
            continue
        g = arr.name
        rmap = {}
        for nm, table in tables[arr.cod].items():
            moved = {}
            for X in base.objects:
                for f in (a.name for a in base.arrows_into(arr.dom)
                          if a.dom == X):
                    for a_elem in A.sets[X]:
                        moved[(f, a_elem)] = table[(base.compose[(g, f)],
                                                    a_elem)]
            target_nm = exp_elem_name(moved)
            if target_nm not in tables[arr.dom]:
                raise NaturalityError(
                    "restriction of %s along %s is not natural" % (nm, g))
            rmap[nm] = target_nm
        rests[g] = rmap
    E = Presheaf(base, "%s^%s" % (B.name, A.name), sets, rests)
    E.exp_factors = (A, B)
    E.exp_tables = tables
    with _lock:
        _exp_cache.setdefault(ck, E)
        return _exp_cache[ck]


def eval_map(A, B):
    """Evaluation B^A x A -> B; at C it reads the table at (1_C, a)."""
    E = exponential(A, B)
    P, _, _ = product(E, A)
    base = A.base
    comps = {}
    for C in base.objects:
        ident = base.identity[C]
        comps[C] = {}
        for nm in P.sets[C]:
            eta, a = P.pair_parts(C, nm)
            comps[C][nm] = E.exp_table(C, eta)[(ident, a)]
    return NatTransform(P, B, comps)


def transpose(alpha):
    """Currying: turn Z x A -> B into Z -> B^A.

    The source of alpha must have been built by product(); the element of
    B^A at C assigned to z tabulates (f : X -> C, a) to alpha at
    (Z(f)(z), a).
    """
    if alpha.source.prod_factors is None:
        raise ShapeMismatch("transpose needs a product-built source")
    Z, A = alpha.source.prod_factors
    B = alpha.target
    E = exponential(A, B)
    base = Z.base
    comps = {}
    for C in base.objects:
        comps[C] = {}
        for z in Z.sets[C]:
            table = {}
            for arr in base.arrows_into(C):
                zf = Z.restrict(arr.name, z)
                for a in A.sets[arr.dom]:
                    table[(arr.name, a)] = alpha.at(
                        arr.dom, pair_name(zf, a))
            comps[C][z] = exp_elem_name(table)
    return NatTransform(Z, E, comps)


def untranspose(beta):
    """Inverse of transpose: turn Z -> B^A back into Z x A -> B."""
    if beta.target.exp_factors is None:
        raise ShapeMismatch("untranspose needs an exponential-built target")
    A, B = beta.target.exp_factors
    Z = beta.source
    E = beta.target
    P, _, _ = product(Z, A)
    base = Z.base
    comps = {}
    for C in base.objects:
        ident = base.identity[C]
        comps[C] = {}
        for nm in P.sets[C]:
            z, a = P.pair_parts(C, nm)
            comps[C][nm] = E.exp_table(C, beta.at(C, z))[(ident, a)]
    return NatTransform(P, B, comps)


def exp_of_map(h, A):
    """Apply (-)^A to a map h : X -> Y, giving X^A -> Y^A."""
    EX = exponential(A, h.source)
    EY = exponential(A, h.target)
    comps = {}
    for C in EX.base.objects:
        comps[C] = {}
        for nm in EX.sets[C]:
            table = EX.exp_table(C, nm)
            moved = {(f, a): h.at(EX.base.arrow(f).dom, b)
                     for (f, a), b in table.items()}
            comps[C][nm] = exp_elem_name(moved)
    return NatTransform(EX, EY, comps)


def zip_exp_pair(A, X, Y):
    """The canonical iso X^A x Y^A -> (X x Y)^A, tabulated pointwise."""
    EX, EY = exponential(A, X), exponential(A, Y)
    XY, _, _ = product(X, Y)
    EXY = exponential(A, XY)
    P, _, _ = product(EX, EY)
    comps = {}
    for C in P.base.objects:
        comps[C] = {}
        for nm in P.sets[C]:
            eta, mu = P.pair_parts(C, nm)
            te, tm = EX.exp_table(C, eta), EY.exp_table(C, mu)
            zipped = {k: pair_name(te[k], tm[k]) for k in te}
            comps[C][nm] = exp_elem_name(zipped)
    return NatTransform(P, EXY, comps)
