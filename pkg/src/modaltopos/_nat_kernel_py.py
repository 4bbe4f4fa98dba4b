"""Pure-Python enumeration kernel.

Enumerates all families of per-object functions that commute with the
given restriction maps, by depth-first search with constraint
propagation: fixing the value of a component at one element forces the
value at every restricted element downstream, so most of the raw
function space is never visited.

The compiled twin (``_nat_kernel``) implements the identical algorithm;
``kernels`` picks one at import time.  Both return results in the same
order, and the wrapper sorts anyway, so the choice is invisible.
"""


def enumerate_families(src_sizes, tgt_sizes, arrows, count_only, max_visits):
    """Search for all natural families of functions.

    src_sizes, tgt_sizes: per-object set sizes (parallel lists).
    arrows: tuples (dom, cod, smap, tmap); smap maps source-set indices
        at cod to indices at dom, tmap likewise for the target sets.
        Identity arrows should be omitted (their constraint is trivial).
    count_only: if true, return a count instead of a list of families.
    max_visits: node budget; search aborts when exceeded.

    Returns (families_or_count, visits, exhausted).  A family is a tuple
    (one entry per object) of tuples mapping source index -> target index.
    """
    n = len(src_sizes)
    by_cod = [[] for _ in range(n)]
    for dom, cod, smap, tmap in arrows:
        by_cod[cod].append((dom, smap, tmap))

    # Assign objects with many incoming constraints first: their choices
    # force the most downstream values.
    obj_order = sorted(range(n), key=lambda o: (-len(by_cod[o]), o))
    variables = [(o, x) for o in obj_order for x in range(src_sizes[o])]
    assign = [[-1] * src_sizes[o] for o in range(n)]

    results = []
    state = {"visits": 0, "count": 0, "exhausted": False}

    def propagate(o, x, y, trail):
        stack = [(o, x, y)]
        while stack:
            o2, x2, y2 = stack.pop()
            cur = assign[o2][x2]
            if cur != -1:
                if cur != y2:
                    return False
                continue
            assign[o2][x2] = y2
            trail.append((o2, x2))
            for dom, smap, tmap in by_cod[o2]:
                stack.append((dom, smap[x2], tmap[y2]))
        return True

    def dfs(vi):
        if state["exhausted"]:
            return
        if vi == len(variables):
            if count_only:
                state["count"] += 1
            else:
                results.append(tuple(tuple(a) for a in assign))
            return
        o, x = variables[vi]
        if assign[o][x] != -1:
            dfs(vi + 1)
            return
        for y in range(tgt_sizes[o]):
            state["visits"] += 1
            if state["visits"] > max_visits:
                state["exhausted"] = True
                return
            trail = []
            if propagate(o, x, y, trail):
                dfs(vi + 1)
            for o2, x2 in trail:
                assign[o2][x2] = -1
            if state["exhausted"]:
                return

    dfs(0)
    out = state["count"] if count_only else results
    return out, state["visits"], state["exhausted"]
