# cython: language_level=3, boundscheck=False, wraparound=True
"""Compiled node kernel; mirrors plconj._kernel_py (keep in sync).

Numerators are unbounded Python ints and stay PyObject-typed; the win
over the pure kernel comes from C-level loops, branches and exponent
arithmetic in the node walks.
"""

IMPLEMENTATION = "cython"


cdef inline tuple _canon(object n, long e):
    if n == 0:
        return 0, 0
    while not n & 1:
        n >>= 1
        e -= 1
    return n, e


def dy_canon(n, e):
    """Canonical dyadic pair for n / 2**e."""
    return _canon(n, <long> e)


cdef inline int _cmp(object an, long ae, object bn, long be):
    cdef object d
    if ae == be:
        d = an - bn
    elif ae > be:
        d = an - (bn << (ae - be))
    else:
        d = (an << (be - ae)) - bn
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def dy_cmp(an, ae, bn, be):
    """Sign of an/2**ae - bn/2**be."""
    return _cmp(an, <long> ae, bn, <long> be)


cdef inline tuple _add(object an, long ae, object bn, long be):
    if ae == be:
        return _canon(an + bn, ae)
    if ae > be:
        return _canon(an + (bn << (ae - be)), ae)
    return _canon((an << (be - ae)) + bn, be)


def dy_add(an, ae, bn, be):
    return _add(an, <long> ae, bn, <long> be)


def dy_sub(an, ae, bn, be):
    return _add(an, <long> ae, -bn, <long> be)


def dy_mul(an, ae, bn, be):
    if an == 0 or bn == 0:
        return 0, 0
    return an * bn, ae + be  # odd * odd stays odd


def dy_shift(n, e, k):
    """Multiply n/2**e by 2**k."""
    if n == 0:
        return 0, 0
    return n, e - k


cdef _seg_slope_exp(object x1n, long x1e, object y1n, long y1e,
                    object x2n, long x2e, object y2n, long y2e):
    cdef object dxn, dyn
    cdef long dxe, dye
    dxn, dxe = _add(x2n, x2e, -x1n, x1e)
    dyn, dye = _add(y2n, y2e, -y1n, y1e)
    if dxn <= 0 or dyn <= 0:
        return None
    if dxn != dyn:
        return None
    return dxe - dye


def seg_slope_exp(x1n, x1e, y1n, y1e, x2n, x2e, y2n, y2e):
    """Slope exponent k (slope = 2**k) of the segment, or None."""
    return _seg_slope_exp(x1n, <long> x1e, y1n, <long> y1e,
                          x2n, <long> x2e, y2n, <long> y2e)


def canon_nodes(flat):
    """Drop interior nodes collinear with their neighbours."""
    cdef Py_ssize_t n = len(flat) // 4
    cdef Py_ssize_t i, xi, m
    if n <= 2:
        return list(flat)
    out = list(flat[:4])
    for i in range(1, n):
        xi = 4 * i
        while len(out) >= 8:
            m = len(out)
            s1 = _seg_slope_exp(out[m - 8], <long> out[m - 7], out[m - 6], <long> out[m - 5],
                                out[m - 4], <long> out[m - 3], out[m - 2], <long> out[m - 1])
            s2 = _seg_slope_exp(out[m - 4], <long> out[m - 3], out[m - 2], <long> out[m - 1],
                                flat[xi], <long> flat[xi + 1], flat[xi + 2], <long> flat[xi + 3])
            if s1 is not None and s1 == s2:
                del out[m - 4:]
            else:
                break
        out.extend(flat[xi : xi + 4])
    return out


def invert_nodes(flat):
    """Reflect the graph across the diagonal (swap x and y)."""
    cdef Py_ssize_t i
    out = []
    for i in range(0, len(flat), 4):
        out.append(flat[i + 2])
        out.append(flat[i + 3])
        out.append(flat[i])
        out.append(flat[i + 1])
    return out


def eval_dyadic(flat, tn, te):
    """Image of the dyadic point t under the map; t must be in range."""
    cdef Py_ssize_t n = len(flat) // 4
    cdef Py_ssize_t lo, hi, mid, i
    cdef long tee = <long> te
    if (_cmp(tn, tee, flat[0], <long> flat[1]) < 0
            or _cmp(tn, tee, flat[len(flat) - 4], <long> flat[len(flat) - 3]) > 0):
        raise ValueError("point outside domain")
    lo = 0
    hi = n - 1
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if _cmp(flat[4 * mid], <long> flat[4 * mid + 1], tn, tee) <= 0:
            lo = mid
        else:
            hi = mid
    i = 4 * lo
    if _cmp(tn, tee, flat[i + 4], <long> flat[i + 5]) == 0:
        return flat[i + 6], flat[i + 7]
    k = _seg_slope_exp(flat[i], <long> flat[i + 1], flat[i + 2], <long> flat[i + 3],
                       flat[i + 4], <long> flat[i + 5], flat[i + 6], <long> flat[i + 7])
    dn, de = _add(tn, tee, -flat[i], <long> flat[i + 1])
    if dn != 0:
        de = de - k
    return _add(flat[i + 2], <long> flat[i + 3], dn, <long> de)


def eval_dyadic_inv(flat, yn, ye):
    """Preimage of the dyadic point y under the map."""
    cdef Py_ssize_t n = len(flat) // 4
    cdef Py_ssize_t lo, hi, mid, i
    cdef long yee = <long> ye
    if (_cmp(yn, yee, flat[2], <long> flat[3]) < 0
            or _cmp(yn, yee, flat[len(flat) - 2], <long> flat[len(flat) - 1]) > 0):
        raise ValueError("point outside range")
    lo = 0
    hi = n - 1
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if _cmp(flat[4 * mid + 2], <long> flat[4 * mid + 3], yn, yee) <= 0:
            lo = mid
        else:
            hi = mid
    i = 4 * lo
    if _cmp(yn, yee, flat[i + 6], <long> flat[i + 7]) == 0:
        return flat[i + 4], flat[i + 5]
    k = _seg_slope_exp(flat[i], <long> flat[i + 1], flat[i + 2], <long> flat[i + 3],
                       flat[i + 4], <long> flat[i + 5], flat[i + 6], <long> flat[i + 7])
    dn, de = _add(yn, yee, -flat[i + 2], <long> flat[i + 3])
    if dn != 0:
        de = de + k
    return _add(flat[i], <long> flat[i + 1], dn, <long> de)


def compose_nodes(f, g):
    """Nodes of f∘g, i.e. t -> f(g(t)).  Range of g must equal domain of f."""
    cdef Py_ssize_t nf = len(f) // 4
    cdef Py_ssize_t ng = len(g) // 4
    cdef Py_ssize_t fi = 0, j, gj, ti
    cdef long kf, kg, de
    out = []
    for j in range(ng - 1):
        gj = 4 * j
        gx1n = g[gj]; gx1e = g[gj + 1]; gy1n = g[gj + 2]; gy1e = g[gj + 3]
        gy2n = g[gj + 6]; gy2e = g[gj + 7]
        kg = <long> _seg_slope_exp(g[gj], <long> g[gj + 1], g[gj + 2], <long> g[gj + 3],
                                   g[gj + 4], <long> g[gj + 5], g[gj + 6], <long> g[gj + 7])
        while fi < nf - 2 and _cmp(f[4 * fi + 4], <long> f[4 * fi + 5], gy1n, <long> gy1e) <= 0:
            fi += 1
        kf = <long> _seg_slope_exp(f[4 * fi], <long> f[4 * fi + 1], f[4 * fi + 2], <long> f[4 * fi + 3],
                                   f[4 * fi + 4], <long> f[4 * fi + 5], f[4 * fi + 6], <long> f[4 * fi + 7])
        dn, dee = _add(gy1n, <long> gy1e, -f[4 * fi], <long> f[4 * fi + 1])
        de = <long> dee
        if dn != 0:
            de = de - kf
        yn, yee = _add(f[4 * fi + 2], <long> f[4 * fi + 3], dn, de)
        out.append(gx1n); out.append(gx1e); out.append(yn); out.append(yee)
        ti = fi
        while ti < nf - 2 and _cmp(f[4 * ti + 4], <long> f[4 * ti + 5], gy2n, <long> gy2e) < 0:
            un = f[4 * ti + 4]; ue = f[4 * ti + 5]
            if _cmp(un, <long> ue, gy1n, <long> gy1e) > 0:
                dn, dee = _add(un, <long> ue, -gy1n, <long> gy1e)
                de = <long> dee
                if dn != 0:
                    de = de + kg
                tn, tee = _add(gx1n, <long> gx1e, dn, de)
                out.append(tn); out.append(tee)
                out.append(f[4 * ti + 6]); out.append(f[4 * ti + 7])
            ti += 1
    out.append(g[len(g) - 4]); out.append(g[len(g) - 3])
    out.append(f[len(f) - 2]); out.append(f[len(f) - 1])
    return canon_nodes(out)


def identity_nodes(lon, loe, hin, hie):
    return [lon, loe, lon, loe, hin, hie, hin, hie]


def power_nodes(f, k):
    """Nodes of the k-th compositional power (k may be negative or zero)."""
    cdef long kk = <long> k
    if kk == 0:
        return identity_nodes(f[0], f[1], f[len(f) - 4], f[len(f) - 3])
    if kk < 0:
        f = invert_nodes(f)
        kk = -kk
    result = None
    base = f
    while kk:
        if kk & 1:
            result = base if result is None else compose_nodes(result, base)
        kk >>= 1
        if kk:
            base = compose_nodes(base, base)
    return list(result)
