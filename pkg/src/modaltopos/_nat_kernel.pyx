# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled enumeration kernel; mirror of _nat_kernel_py exactly."""

from libc.stdlib cimport malloc, free


cdef struct SearchState:
    long visits
    long max_visits
    long count
    bint count_only
    bint exhausted
    int n_objects
    int n_vars
    int n_arrows
    int *src_sizes
    int *tgt_sizes
    int *var_obj        # variable index -> object
    int *var_elem       # variable index -> source element index
    int **assign        # per object: source index -> target index or -1
    int *arr_count      # per object: number of incoming arrows
    int **arr_dom       # per object: incoming arrow dom objects
    int ***arr_smap     # per object, per incoming arrow: smap array
    int ***arr_tmap
    int *trail_obj      # propagation trail, stack across recursion levels
    int *trail_elem
    int trail_top
    int *prop_obj       # propagation work stack
    int *prop_elem
    int *prop_val


cdef bint _propagate(SearchState *st, int o, int x, int y):
    cdef int top = 0
    cdef int o2, x2, y2, cur, k
    st.prop_obj[top] = o
    st.prop_elem[top] = x
    st.prop_val[top] = y
    top += 1
    while top > 0:
        top -= 1
        o2 = st.prop_obj[top]
        x2 = st.prop_elem[top]
        y2 = st.prop_val[top]
        cur = st.assign[o2][x2]
        if cur != -1:
            if cur != y2:
                return 0
            continue
        st.assign[o2][x2] = y2
        st.trail_obj[st.trail_top] = o2
        st.trail_elem[st.trail_top] = x2
        st.trail_top += 1
        for k in range(st.arr_count[o2]):
            st.prop_obj[top] = st.arr_dom[o2][k]
            st.prop_elem[top] = st.arr_smap[o2][k][x2]
            st.prop_val[top] = st.arr_tmap[o2][k][y2]
            top += 1
    return 1


cdef void _dfs(SearchState *st, int vi, list results):
    cdef int o, x, y, t0, t1, j, k
    cdef list fam, comp
    if st.exhausted:
        return
    if vi == st.n_vars:
        if st.count_only:
            st.count += 1
        else:
            fam = []
            for j in range(st.n_objects):
                comp = []
                for k in range(st.src_sizes[j]):
                    comp.append(st.assign[j][k])
                fam.append(tuple(comp))
            results.append(tuple(fam))
        return
    o = st.var_obj[vi]
    x = st.var_elem[vi]
    if st.assign[o][x] != -1:
        _dfs(st, vi + 1, results)
        return
    for y in range(st.tgt_sizes[o]):
        st.visits += 1
        if st.visits > st.max_visits:
            st.exhausted = 1
            return
        t0 = st.trail_top
        if _propagate(st, o, x, y):
            _dfs(st, vi + 1, results)
        for t1 in range(t0, st.trail_top):
            st.assign[st.trail_obj[t1]][st.trail_elem[t1]] = -1
        st.trail_top = t0
        if st.exhausted:
            return


def enumerate_families(src_sizes, tgt_sizes, arrows, count_only, max_visits):
    """Same contract as _nat_kernel_py.enumerate_families."""
    cdef SearchState st
    cdef int n = len(src_sizes)
    cdef int i, j, k, m, total_src
    cdef list results = []

    by_cod = [[] for _ in range(n)]
    for dom, cod, smap, tmap in arrows:
        by_cod[cod].append((dom, list(smap), list(tmap)))
    obj_order = sorted(range(n), key=lambda o: (-len(by_cod[o]), o))

    total_src = 0
    for i in range(n):
        total_src += src_sizes[i]

    st.visits = 0
    st.max_visits = max_visits
    st.count = 0
    st.trail_top = 0
    st.count_only = 1 if count_only else 0
    st.exhausted = 0
    st.n_objects = n
    st.n_vars = total_src
    st.n_arrows = len(arrows)

    st.src_sizes = <int *>malloc(n * sizeof(int))
    st.tgt_sizes = <int *>malloc(n * sizeof(int))
    st.var_obj = <int *>malloc(max(1, total_src) * sizeof(int))
    st.var_elem = <int *>malloc(max(1, total_src) * sizeof(int))
    st.assign = <int **>malloc(n * sizeof(int *))
    st.arr_count = <int *>malloc(n * sizeof(int))
    st.arr_dom = <int **>malloc(n * sizeof(int *))
    st.arr_smap = <int ***>malloc(n * sizeof(int **))
    st.arr_tmap = <int ***>malloc(n * sizeof(int **))
    st.trail_obj = <int *>malloc(max(1, total_src) * sizeof(int))
    st.trail_elem = <int *>malloc(max(1, total_src) * sizeof(int))
    # Each propagation step pushes at most one frame per incoming arrow of
    # the object being fixed; total stack never exceeds vars * (arrows + 1).
    m = max(1, total_src * (st.n_arrows + 1))
    st.prop_obj = <int *>malloc(m * sizeof(int))
    st.prop_elem = <int *>malloc(m * sizeof(int))
    st.prop_val = <int *>malloc(m * sizeof(int))

    for i in range(n):
        st.assign[i] = NULL
        st.arr_count[i] = 0
        st.arr_dom[i] = NULL
        st.arr_smap[i] = NULL
        st.arr_tmap[i] = NULL

    try:
        for i in range(n):
            st.src_sizes[i] = src_sizes[i]
            st.tgt_sizes[i] = tgt_sizes[i]
            st.assign[i] = <int *>malloc(max(1, src_sizes[i]) * sizeof(int))
            for j in range(src_sizes[i]):
                st.assign[i][j] = -1
            inc = by_cod[i]
            st.arr_count[i] = len(inc)
            st.arr_dom[i] = <int *>malloc(max(1, len(inc)) * sizeof(int))
            st.arr_smap[i] = <int **>malloc(max(1, len(inc)) * sizeof(int *))
            st.arr_tmap[i] = <int **>malloc(max(1, len(inc)) * sizeof(int *))
            for k in range(len(inc)):
                dom, smap, tmap = inc[k]
                st.arr_dom[i][k] = dom
                st.arr_smap[i][k] = <int *>malloc(max(1, len(smap)) * sizeof(int))
                for j in range(len(smap)):
                    st.arr_smap[i][k][j] = smap[j]
                st.arr_tmap[i][k] = <int *>malloc(max(1, len(tmap)) * sizeof(int))
                for j in range(len(tmap)):
                    st.arr_tmap[i][k][j] = tmap[j]
        m = 0
        for o in obj_order:
            for j in range(src_sizes[o]):
                st.var_obj[m] = o
                st.var_elem[m] = j
                m += 1

        _dfs(&st, 0, results)
        out = st.count if count_only else results
        return out, st.visits, bool(st.exhausted)
    finally:
        for i in range(n):
            for k in range(st.arr_count[i]):
                free(st.arr_smap[i][k])
                free(st.arr_tmap[i][k])
            free(st.arr_dom[i])
            free(st.arr_smap[i])
            free(st.arr_tmap[i])
            free(st.assign[i])
        free(st.src_sizes)
        free(st.tgt_sizes)
        free(st.var_obj)
        free(st.var_elem)
        free(st.assign)
        free(st.arr_count)
        free(st.arr_dom)
        free(st.arr_smap)
        free(st.arr_tmap)
        free(st.trail_obj)
        free(st.trail_elem)
        free(st.prop_obj)
        free(st.prop_elem)
        free(st.prop_val)
