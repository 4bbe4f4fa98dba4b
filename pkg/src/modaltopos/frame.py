"""Internal complete Heyting algebras over a finite base.

A frame here is a presheaf whose every value set is a finite Heyting
algebra and whose every restriction is a Heyting homomorphism.  Finite
algebras have all joins and meets, so the indexed quantifier adjoints
exist, computed by the join/meet formulas over the pointwise order.

The sieve presheaf is initial among these: it admits exactly one
structure-preserving map into any frame.  That map is computed here as a
join of left adjoints, its right adjoint classifies the top element, and
their composite is the S4 modality every model uses for the box.
"""

import itertools
import threading
from dataclasses import dataclass

from . import omega as om
from .errors import (
    FrameError,
    HeytingAxiomFailure,
    InternalCheckError,
    NaturalityError,
    NonNaturalStructureMap,
    NotAFrameMap,
    UniquenessViolation,
)
from .fincat import terminal_category
from .presheaf import (
    NatTransform,
    Presheaf,
    STAR,
    enumerate_nats,
    exponential,
    pair_name,
    product,
    terminal,
    transpose,
)


class InternalFrame:
    """A validated frame: carrier presheaf plus pointwise Heyting tables."""

    def __init__(self, carrier, top, bot, meet, join, imp, kind="custom"):
        self.carrier = carrier
        self.kind = kind
        self.top = dict(top)
        self.bot = dict(bot)
        self.meet = {o: dict(m) for o, m in meet.items()}
        self.join = {o: dict(m) for o, m in join.items()}
        self.imp = {o: dict(m) for o, m in imp.items()}
        self._leq = {}
        for obj in carrier.base.objects:
            self._leq[obj] = {
                (x, y)
                for x in carrier.sets[obj] for y in carrier.sets[obj]
                if self.meet[obj][(x, y)] == x}

    @property
    def base(self):
        return self.carrier.base

    def leq(self, obj, x, y):
        return (x, y) in self._leq[obj]

    def join_all(self, obj, elems):
        acc = self.bot[obj]
        for e in elems:
            acc = self.join[obj][(acc, e)]
        return acc

    def meet_all(self, obj, elems):
        acc = self.top[obj]
        for e in elems:
            acc = self.meet[obj][(acc, e)]
        return acc

    def op_nat(self, name):
        """The structure map as a transformation (1 or H x H into H)."""
        H = self.carrier
        if name in ("top", "bot"):
            picks = self.top if name == "top" else self.bot
            one = terminal(H.base)
            return NatTransform(one, H, {
                o: {STAR: picks[o]} for o in H.base.objects})
        table = getattr(self, name)
        HH, _, _ = product(H, H)
        comps = {}
        for obj in H.base.objects:
            comps[obj] = {
                nm: table[obj][HH.pair_parts(obj, nm)]
                for nm in HH.sets[obj]}
        return NatTransform(HH, H, comps)

    def __repr__(self):
        return "InternalFrame(%s over %s, kind=%s)" % (
            self.carrier.name, self.base.name, self.kind)


def validate_frame(carrier, top, bot, meet, join, imp, kind="custom"):
    """Check naturality of the structure maps and the Heyting laws
    pointwise, then return the frame.  Collects all violations."""
    findings = []
    base = carrier.base

    for obj in base.objects:
        elems = carrier.sets[obj]
        for t, nm in ((top, "top"), (bot, "bot")):
            if t.get(obj) not in elems:
                findings.append(NonNaturalStructureMap(
                    "%s at %s is not an element" % (nm, obj)))
        for table, nm in ((meet, "meet"), (join, "join"), (imp, "imp")):
            tobj = table.get(obj, {})
            for x in elems:
                for y in elems:
                    if tobj.get((x, y)) not in elems:
                        findings.append(NonNaturalStructureMap(
                            "%s at %s is not total" % (nm, obj)))
                        break
                else:
                    continue
                break
    if findings:
        raise FrameError("invalid frame on %s" % carrier.name, findings)

    for arr in base.arrows:
        act = lambda e: carrier.restrict(arr.name, e)
        if act(top[arr.cod]) != top[arr.dom]:
            findings.append(NonNaturalStructureMap(
                "restriction along %s moves top" % arr.name))
        if act(bot[arr.cod]) != bot[arr.dom]:
            findings.append(NonNaturalStructureMap(
                "restriction along %s moves bottom" % arr.name))
        for table, nm in ((meet, "meet"), (join, "join"), (imp, "imp")):
            for x in carrier.sets[arr.cod]:
                for y in carrier.sets[arr.cod]:
                    if act(table[arr.cod][(x, y)]) != table[arr.dom][(act(x), act(y))]:
                        findings.append(NonNaturalStructureMap(
                            "%s does not commute with restriction along %s"
                            " at (%s, %s)" % (nm, arr.name, x, y)))
    if findings:
        raise FrameError("invalid frame on %s" % carrier.name, findings)

    for obj in base.objects:
        elems = carrier.sets[obj]
        m, j, i = meet[obj], join[obj], imp[obj]
        t, b = top[obj], bot[obj]
        for x in elems:
            if m[(x, t)] != x:
                findings.append(HeytingAxiomFailure("x/\\top=x", obj, x))
            if j[(x, b)] != x:
                findings.append(HeytingAxiomFailure("x\\/bot=x", obj, x))
            if m[(x, x)] != x:
                findings.append(HeytingAxiomFailure("idempotent-meet", obj, x))
            if j[(x, x)] != x:
                findings.append(HeytingAxiomFailure("idempotent-join", obj, x))
            for y in elems:
                if m[(x, y)] != m[(y, x)]:
                    findings.append(HeytingAxiomFailure(
                        "commutative-meet", obj, (x, y)))
                if j[(x, y)] != j[(y, x)]:
                    findings.append(HeytingAxiomFailure(
                        "commutative-join", obj, (x, y)))
                if m[(x, j[(x, y)])] != x or j[(x, m[(x, y)])] != x:
                    findings.append(HeytingAxiomFailure(
                        "absorption", obj, (x, y)))
                for z in elems:
                    if m[(m[(x, y)], z)] != m[(x, m[(y, z)])]:
                        findings.append(HeytingAxiomFailure(
                            "associative-meet", obj, (x, y, z)))
                    if j[(j[(x, y)], z)] != j[(x, j[(y, z)])]:
                        findings.append(HeytingAxiomFailure(
                            "associative-join", obj, (x, y, z)))
                    # residuation: x /\ y <= z iff x <= y => z
                    lhs = m[(m[(x, y)], z)] == m[(x, y)]
                    rhs = m[(x, i[(y, z)])] == x
                    if lhs != rhs:
                        findings.append(HeytingAxiomFailure(
                            "residuation", obj, (x, y, z)))
        if findings:
            raise FrameError("invalid frame on %s" % carrier.name, findings)

    return InternalFrame(carrier, top, bot, meet, join, imp, kind=kind)


# -- built-in frames ------------------------------------------------------------

_lock = threading.Lock()
_frame_cache = {}


def _set_algebra_frame(carrier, base, boolean, kind):
    top, bot, meet, join, imp = {}, {}, {}, {}, {}
    for obj in base.objects:
        into = frozenset(a.name for a in base.arrows_into(obj))
        top[obj] = om.maximal_sieve(base, obj)
        bot[obj] = "{}"
        meet[obj], join[obj], imp[obj] = {}, {}, {}
        members = {nm: om.set_members(nm) for nm in carrier.sets[obj]}
        for x, sx in members.items():
            for y, sy in members.items():
                meet[obj][(x, y)] = om.set_name(sx & sy)
                join[obj][(x, y)] = om.set_name(sx | sy)
                if boolean:
                    imp[obj][(x, y)] = om.set_name((into - sx) | sy)
                else:
                    imp[obj][(x, y)] = om.set_name(
                        om._imp_members(base, obj, sx, sy))
    return validate_frame(carrier, top, bot, meet, join, imp, kind=kind)


def omega_frame(base):
    """The sieve presheaf with its Heyting structure."""
    key = ("omega", base.key)
    with _lock:
        hit = _frame_cache.get(key)
    if hit is not None:
        return hit
    om.omega_heyting(base)  # reconciles the two construction routes
    fr = _set_algebra_frame(om.omega(base), base, boolean=False, kind="omega")
    with _lock:
        _frame_cache.setdefault(key, fr)
        return _frame_cache[key]


def omega_star_frame(base):
    """Arbitrary arrow-sets with the pointwise Boolean structure."""
    key = ("omega_star", base.key)
    with _lock:
        hit = _frame_cache.get(key)
    if hit is not None:
        return hit
    fr = _set_algebra_frame(om.omega_star(base), base, boolean=True,
                            kind="omega_star")
    with _lock:
        _frame_cache.setdefault(key, fr)
        return _frame_cache[key]


def powerset_frame(n):
    """The powerset of an n-element set, over the one-object base."""
    key = ("powerset", n)
    with _lock:
        hit = _frame_cache.get(key)
    if hit is not None:
        return hit
    base = terminal_category()
    universe = [str(i) for i in range(n)]
    subsets = [frozenset(c)
               for k in range(n + 1)
               for c in itertools.combinations(universe, k)]
    names = {s: om.set_name(s) for s in subsets}
    carrier = Presheaf(base, "P%d" % n, {"pt": list(names.values())}, {})
    full = frozenset(universe)
    top = {"pt": names[full]}
    bot = {"pt": names[frozenset()]}
    meet, join, imp = {"pt": {}}, {"pt": {}}, {"pt": {}}
    for sx in subsets:
        for sy in subsets:
            k = (names[sx], names[sy])
            meet["pt"][k] = names[sx & sy]
            join["pt"][k] = names[sx | sy]
            imp["pt"][k] = names[(full - sx) | sy]
    fr = validate_frame(carrier, top, bot, meet, join, imp, kind="powerset")
    with _lock:
        _frame_cache.setdefault(key, fr)
        return _frame_cache[key]


# -- the canonical adjunction ------------------------------------------------------

@dataclass(frozen=True)
class FrameMaps:
    i: NatTransform
    tau: NatTransform
    box: NatTransform


def left_adjoint_of_restriction(frame, arrow_name):
    """The left adjoint of H(f) : H(cod) -> H(dom), as a table.

    Sends y to the meet of every x with y <= H(f)(x); exists because the
    restriction preserves finite meets.
    """
    arr = frame.base.arrow(arrow_name)
    table = {}
    for y in frame.carrier.sets[arr.dom]:
        over = [x for x in frame.carrier.sets[arr.cod]
                if frame.leq(arr.dom, y, frame.carrier.restrict(arrow_name, x))]
        table[y] = frame.meet_all(arr.cod, over)
    return table


def _is_frame_map_components(frame, comps):
    """Pointwise preservation of top, bottom, meets and joins."""
    Om = om.omega(frame.base)
    base = frame.base
    for obj in base.objects:
        c = comps[obj]
        if c[om.maximal_sieve(base, obj)] != frame.top[obj]:
            return "top at %s" % obj
        if c["{}"] != frame.bot[obj]:
            return "bot at %s" % obj
        for x in Om.sets[obj]:
            for y in Om.sets[obj]:
                sx, sy = om.set_members(x), om.set_members(y)
                if c[om.set_name(sx & sy)] != frame.meet[obj][(c[x], c[y])]:
                    return "meet at %s on (%s, %s)" % (obj, x, y)
                if c[om.set_name(sx | sy)] != frame.join[obj][(c[x], c[y])]:
                    return "join at %s on (%s, %s)" % (obj, x, y)
    return None


def canonical_i(frame):
    """The unique structure-preserving map from the sieve presheaf.

    Computed as i(sigma) = join over f in sigma of the left adjoint of
    H(f) applied to top; validated to be natural and a frame map.
    """
    base = frame.base
    Om = om.omega(base)
    adj = {a.name: left_adjoint_of_restriction(frame, a.name)
           for a in base.arrows}
    comps = {}
    for obj in base.objects:
        comps[obj] = {}
        for nm in Om.sets[obj]:
            pieces = [adj[f][frame.top[base.arrow(f).dom]]
                      for f in sorted(om.set_members(nm))]
            comps[obj][nm] = frame.join_all(obj, pieces)
    bad = _is_frame_map_components(frame, comps)
    if bad is not None:
        raise NotAFrameMap(
            "the canonical map out of the sieve presheaf fails to preserve "
            "%s; the candidate frame is invalid" % bad)
    try:
        return NatTransform(Om, frame.carrier, comps)
    except NaturalityError as e:
        raise NotAFrameMap("canonical map is not natural: %s" % e)


def enumerate_frame_maps(frame, max_visits=None):
    """Oracle: filter every natural transformation out of the sieve
    presheaf down to the structure-preserving ones."""
    Om = om.omega(frame.base)
    out = []
    for nat in enumerate_nats(Om, frame.carrier, max_visits=max_visits):
        if _is_frame_map_components(frame, nat.components) is None:
            out.append(nat)
    return out


def assert_unique_frame_map(frame, i=None, max_visits=None):
    """Cross-check initiality by enumeration; returns the witness list."""
    maps = enumerate_frame_maps(frame, max_visits=max_visits)
    if len(maps) != 1:
        raise UniquenessViolation(
            "found %d frame maps out of the sieve presheaf on %s; exactly "
            "one must exist, so this is a bug" % (len(maps), frame.base.name))
    if i is not None and maps[0].key != i.key:
        raise UniquenessViolation(
            "the enumerated frame map differs from the canonical formula")
    return maps


def tau_of(frame, i):
    """Right adjoint of i: the largest sieve sent below the argument.

    Cross-checked against the classifying map of the top element.
    """
    base = frame.base
    Om = om.omega(base)
    comps = {}
    for obj in base.objects:
        comps[obj] = {}
        for x in frame.carrier.sets[obj]:
            sieves = [om.set_members(s) for s in Om.sets[obj]
                      if frame.leq(obj, i.at(obj, s), x)]
            comps[obj][x] = om.set_name(frozenset().union(*sieves) if sieves
                                        else frozenset())
    tau = NatTransform(frame.carrier, Om, comps)
    top_sub = om.Subpresheaf(frame.carrier, {
        o: {frame.top[o]} for o in base.objects})
    chi = om.classify(top_sub)
    if tau.key != chi.key:
        raise InternalCheckError(
            "the adjoint formula for tau disagrees with the classifying "
            "map of the top element")
    return tau


def box_of(frame, i, tau):
    """The composite modality with its S4 law report."""
    from .presheaf import compose_nat
    box = compose_nat(i, tau)
    report = {}
    ok_all = True
    for law, check in (
        ("deflationary", lambda o, x: frame.leq(o, box.at(o, x), x)),
        ("idempotent", lambda o, x: box.at(o, box.at(o, x)) == box.at(o, x)),
        ("top", lambda o, x: box.at(o, frame.top[o]) == frame.top[o]),
    ):
        bad = [(o, x) for o in frame.base.objects
               for x in frame.carrier.sets[o] if not check(o, x)]
        report[law] = bad
        ok_all = ok_all and not bad
    bad = []
    for o in frame.base.objects:
        for x in frame.carrier.sets[o]:
            for y in frame.carrier.sets[o]:
                lhs = box.at(o, frame.meet[o][(x, y)])
                rhs = frame.meet[o][(box.at(o, x), box.at(o, y))]
                if lhs != rhs:
                    bad.append((o, x, y))
    report["meet-preserving"] = bad
    ok_all = ok_all and not bad
    report["ok"] = ok_all
    return box, report


def galois_holds(frame, i, tau):
    """i(sigma) <= x iff sigma <= tau(x), at every object and element."""
    Om = om.omega(frame.base)
    for obj in frame.base.objects:
        for s in Om.sets[obj]:
            for x in frame.carrier.sets[obj]:
                lhs = frame.leq(obj, i.at(obj, s), x)
                rhs = om.set_members(s) <= om.set_members(tau.at(obj, x))
                if lhs != rhs:
                    return False, (obj, s, x)
    return True, None


def is_faithful(frame, i):
    for obj in frame.base.objects:
        vals = list(i.components[obj].values())
        if len(set(vals)) != len(vals):
            return False
    return True


def frame_maps(frame):
    """Bundle i, tau and box for a frame."""
    i = canonical_i(frame)
    tau = tau_of(frame, i)
    box, _ = box_of(frame, i, tau)
    return FrameMaps(i, tau, box)


# -- indexed quantifiers -----------------------------------------------------------

def diag_delta(H, I):
    """The constant-family map H -> H^I: x at C tabulates to
    (f, a) -> H(f)(x).  Coincides with the transpose of the projection."""
    E = exponential(I, H)
    base = H.base
    comps = {}
    for obj in base.objects:
        comps[obj] = {}
        for x in H.sets[obj]:
            table = {}
            for arr in base.arrows_into(obj):
                moved = H.restrict(arr.name, x)
                for a in I.sets[arr.dom]:
                    table[(arr.name, a)] = moved
            comps[obj][x] = om.exp_elem_name(table) if False else _exp_name(table)
    direct = NatTransform(H, E, comps)
    P, pi1, _ = product(H, I)
    via_transpose = transpose(pi1)
    if direct.key != via_transpose.key:
        raise InternalCheckError(
            "constant-family map disagrees with the transpose of the "
            "projection")
    return direct


def _exp_name(table):
    from .presheaf import exp_elem_name
    return exp_elem_name(table)


def forall_I(frame, I):
    """Right adjoint of the constant-family map, H^I -> H.

    At C sends a family to the join of every s whose restrictions sit
    below the family everywhere.
    """
    H = frame.carrier
    E = exponential(I, H)
    base = H.base
    comps = {}
    for obj in base.objects:
        comps[obj] = {}
        for nm in E.sets[obj]:
            table = E.exp_table(obj, nm)
            good = []
            for s in H.sets[obj]:
                ok = True
                for arr in base.arrows_into(obj):
                    moved = H.restrict(arr.name, s)
                    for a in I.sets[arr.dom]:
                        if not frame.leq(arr.dom, moved, table[(arr.name, a)]):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    good.append(s)
            comps[obj][nm] = frame.join_all(obj, good)
    return NatTransform(E, H, comps)


def exists_I(frame, I):
    """Left adjoint of the constant-family map, dually a meet."""
    H = frame.carrier
    E = exponential(I, H)
    base = H.base
    comps = {}
    for obj in base.objects:
        comps[obj] = {}
        for nm in E.sets[obj]:
            table = E.exp_table(obj, nm)
            good = []
            for s in H.sets[obj]:
                ok = True
                for arr in base.arrows_into(obj):
                    moved = H.restrict(arr.name, s)
                    for a in I.sets[arr.dom]:
                        if not frame.leq(arr.dom, table[(arr.name, a)], moved):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    good.append(s)
            comps[obj][nm] = frame.meet_all(obj, good)
    return NatTransform(E, H, comps)
