"""Finite categories as explicit data: objects, arrows, a composition table.

Everything downstream (presheaves, sieves, frames) enumerates over these,
so objects and arrows are plain strings and all derived listings are
sorted, making every computation in the package reproducible.
"""

from dataclasses import dataclass

from .config import DEFAULT_MAX_ARROWS
from .errors import (
    CategoryError,
    DomCodMismatch,
    MissingIdentity,
    NonAssociative,
    NotAPreorder,
    NotReflexive,
    NotTransitive,
    SizeGuardExceeded,
    UndefinedComposite,
    UnknownObject,
)

_NAME_BAD = set(" \t\n(){}[],;:|=<>@^\\\"'`")


def _check_name(kind, name):
    if not name or any(ch in _NAME_BAD for ch in name):
        raise CategoryError("invalid %s name %r" % (kind, name))


@dataclass(frozen=True)
class Arrow:
    name: str
    dom: str
    cod: str


class FiniteCategory:
    """A validated finite category.

    ``compose[(g, f)]`` is the name of g after f and is defined on exactly
    the composable pairs.  Instances are immutable; share freely.
    """

    def __init__(self, name, objects, arrows, identity, compose):
        self.name = name
        self.objects = tuple(sorted(objects))
        self.arrows = tuple(sorted(arrows, key=lambda a: a.name))
        self.identity = dict(identity)
        self.compose = dict(compose)
        self._by_name = {a.name: a for a in self.arrows}
        self._into = {}
        for obj in self.objects:
            self._into[obj] = tuple(
                a for a in self.arrows if a.cod == obj)
        self._key = (
            self.objects,
            tuple((a.name, a.dom, a.cod) for a in self.arrows),
            tuple(sorted(self.compose.items())),
        )

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, FiniteCategory) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "FiniteCategory(%s: %d objects, %d arrows)" % (
            self.name, len(self.objects), len(self.arrows))

    def arrow(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownObject("no arrow named %r in %s" % (name, self.name))

    def has_object(self, obj):
        return obj in self._into

    def is_identity(self, arrow_name):
        a = self.arrow(arrow_name)
        return self.identity.get(a.dom) == arrow_name

    def arrows_into(self, obj):
        """Arrows with codomain obj, sorted by name."""
        try:
            return self._into[obj]
        except KeyError:
            raise UnknownObject("no object named %r in %s" % (obj, self.name))

    def compose_arrows(self, g, f):
        """Name of g after f; raises unless cod(f) = dom(g)."""
        ga, fa = self.arrow(g), self.arrow(f)
        if fa.cod != ga.dom:
            raise DomCodMismatch(
                "%s after %s: cod(%s) = %s but dom(%s) = %s"
                % (g, f, f, fa.cod, g, ga.dom))
        try:
            return self.compose[(g, f)]
        except KeyError:
            raise UndefinedComposite("no composite for %s after %s" % (g, f))


class DiscreteCategory(FiniteCategory):
    """A category whose only arrows are identities."""


def validate_category(name, objects, arrows, identity, compose,
                      max_arrows=DEFAULT_MAX_ARROWS):
    """Check the category laws and return a FiniteCategory.

    arrows: iterable of (name, dom, cod) triples, identities included.
    identity: map object -> identity arrow name.
    compose: map (g, f) -> name of g after f; entries whose identity
        composites are missing get filled in.

    Collects every violation and raises one CategoryError listing them.
    """
    findings = []
    objects = list(objects)
    arrow_list = [Arrow(*t) for t in arrows]
    if len(arrow_list) > max_arrows:
        raise SizeGuardExceeded(
            "category %s has %d arrows; cap is %d"
            % (name, len(arrow_list), max_arrows))

    _check_name("category", name)
    for obj in objects:
        _check_name("object", obj)
    for a in arrow_list:
        _check_name("arrow", a.name)

    by_name = {}
    for a in arrow_list:
        if a.name in by_name:
            findings.append(CategoryError("duplicate arrow name %r" % a.name))
        by_name[a.name] = a
        if a.dom not in objects or a.cod not in objects:
            findings.append(DomCodMismatch(
                "arrow %s : %s -> %s mentions an unknown object"
                % (a.name, a.dom, a.cod)))

    for obj in objects:
        ident = identity.get(obj)
        if ident is None or ident not in by_name:
            findings.append(MissingIdentity("object %s has no identity" % obj))
        else:
            ia = by_name[ident]
            if ia.dom != obj or ia.cod != obj:
                findings.append(DomCodMismatch(
                    "identity %s of %s is not an endo-arrow" % (ident, obj)))
    if findings:
        raise CategoryError("invalid category %s" % name, findings)

    table = dict(compose)
    ident_names = set(identity.values())

    # Identity composites are forced; fill them in and reject disagreement.
    for a in arrow_list:
        for pair, forced in (((identity[a.cod], a.name), a.name),
                             ((a.name, identity[a.dom]), a.name)):
            if table.get(pair, forced) != forced:
                findings.append(CategoryError(
                    "identity law fails: %s after %s is %s, not %s"
                    % (pair[0], pair[1], table[pair], forced)))
            table[pair] = forced

    for (g, f), h in sorted(table.items()):
        if g not in by_name or f not in by_name or h not in by_name:
            findings.append(UndefinedComposite(
                "composite entry (%s, %s) -> %s mentions unknown arrows"
                % (g, f, h)))
            continue
        ga, fa, ha = by_name[g], by_name[f], by_name[h]
        if fa.cod != ga.dom:
            findings.append(DomCodMismatch(
                "entry %s after %s: cod(%s) = %s but dom(%s) = %s"
                % (g, f, f, fa.cod, g, ga.dom)))
        elif ha.dom != fa.dom or ha.cod != ga.cod:
            findings.append(DomCodMismatch(
                "composite %s of %s after %s has wrong endpoints"
                % (h, g, f)))

    for f in sorted(by_name):
        for g in sorted(by_name):
            if by_name[f].cod == by_name[g].dom and (g, f) not in table:
                findings.append(UndefinedComposite(
                    "missing composite %s after %s" % (g, f)))
    if findings:
        raise CategoryError("invalid category %s" % name, findings)

    for f in sorted(by_name):
        for g in sorted(by_name):
            if by_name[f].cod != by_name[g].dom:
                continue
            for h in sorted(by_name):
                if by_name[g].cod != by_name[h].dom:
                    continue
                left = table[(h, table[(g, f)])]
                right = table[(table[(h, g)], f)]
                if left != right:
                    findings.append(NonAssociative(
                        "(%s.%s).%s = %s but %s.(%s.%s) = %s"
                        % (h, g, f, right, h, g, f, left)))
    if findings:
        raise CategoryError("invalid category %s" % name, findings)

    cls = FiniteCategory
    if all(a.name in ident_names for a in arrow_list):
        cls = DiscreteCategory
    return cls(name, objects, arrow_list, identity, table)


def discrete_of(cat):
    """The discrete category on the same objects (identities only)."""
    idents = [cat.arrow(cat.identity[obj]) for obj in cat.objects]
    return DiscreteCategory(
        cat.name + "_discrete", cat.objects, idents, dict(cat.identity),
        {(a.name, a.name): a.name for a in idents})


def terminal_category(name="pt"):
    return validate_category(
        name, [name], [("1_" + name, name, name)], {name: "1_" + name}, {})


def identity_name(obj):
    return "1_" + obj


def from_preorder(name, elements, pairs, reverse=False,
                  max_arrows=DEFAULT_MAX_ARROWS):
    """Category with one arrow a -> b per related pair (a, b).

    pairs must be reflexive and transitive over elements.  With
    reverse=True the arrows run b -> a instead; feed a Kripke accessibility
    order through this flag to land in the contravariant convention used
    everywhere in this package.
    """
    elements = sorted(set(elements))
    rel = set(pairs)
    findings = []
    for a in elements:
        if (a, a) not in rel:
            findings.append(NotReflexive("missing %s <= %s" % (a, a)))
    for (a, b) in sorted(rel):
        for (c, d) in sorted(rel):
            if b == c and (a, d) not in rel:
                findings.append(NotTransitive(
                    "%s <= %s and %s <= %s but not %s <= %s"
                    % (a, b, c, d, a, d)))
    if findings:
        raise NotAPreorder("not a preorder: %s"
                           % "; ".join(str(f) for f in findings))

    arrows = []
    identity = {}
    for a in elements:
        identity[a] = identity_name(a)
        arrows.append((identity_name(a), a, a))
    arrow_of = dict()
    for (a, b) in sorted(rel):
        if a == b:
            arrow_of[(a, b)] = identity_name(a)
            continue
        dom, cod = (b, a) if reverse else (a, b)
        nm = "%s_to_%s" % (dom, cod)
        arrow_of[(a, b)] = nm
        arrows.append((nm, dom, cod))

    compose = {}
    for (a, b) in rel:
        for (b2, c) in rel:
            if b != b2:
                continue
            f, g = arrow_of[(a, b)], arrow_of[(b, c)]
            if reverse:
                # arrows run f: b -> a, g: c -> b; the composite is f.g
                compose[(f, g)] = arrow_of[(a, c)]
            else:
                compose[(g, f)] = arrow_of[(a, c)]
    return validate_category(name, elements, arrows, identity, compose,
                             max_arrows=max_arrows)
