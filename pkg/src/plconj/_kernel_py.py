"""Pure-Python node kernel.

Piecewise-linear maps are stored as flat lists of ints with stride 4:
``[x0n, x0e, y0n, y0e, x1n, x1e, ...]`` where each coordinate is the
canonical dyadic ``num / 2**exp`` (num odd, or num == 0 and exp == 0).
Node x- and y-sequences are strictly increasing and every segment slope
is a power of two.  All functions assume canonical input and produce
canonical output; higher-level validation lives in ``plconj.plmap``.

``plconj._kernel_c`` is a compiled twin of this module; keep the two in
sync (``tests/test_kernel.py`` cross-checks them).
"""

IMPLEMENTATION = "pure-python"


def dy_canon(n, e):
    """Canonical dyadic pair for n / 2**e."""
    if n == 0:
        return 0, 0
    while not n & 1:
        n >>= 1
        e -= 1
    return n, e


def dy_cmp(an, ae, bn, be):
    """Sign of an/2**ae - bn/2**be."""
    if ae == be:
        d = an - bn
    elif ae > be:
        d = an - (bn << (ae - be))
    else:
        d = (an << (be - ae)) - bn
    return (d > 0) - (d < 0)


def dy_add(an, ae, bn, be):
    if ae == be:
        return dy_canon(an + bn, ae)
    if ae > be:
        return dy_canon(an + (bn << (ae - be)), ae)
    return dy_canon((an << (be - ae)) + bn, be)


def dy_sub(an, ae, bn, be):
    return dy_add(an, ae, -bn, be)


def dy_mul(an, ae, bn, be):
    if an == 0 or bn == 0:
        return 0, 0
    return an * bn, ae + be  # odd * odd stays odd


def dy_shift(n, e, k):
    """Multiply n/2**e by 2**k."""
    if n == 0:
        return 0, 0
    return n, e - k


def seg_slope_exp(x1n, x1e, y1n, y1e, x2n, x2e, y2n, y2e):
    """Slope exponent k (slope = 2**k) of the segment, or None.

    Returns None when the slope is not a power of two; the dyadic ratio
    dy/dx is a power of two iff the odd parts of dy and dx agree.
    """
    dxn, dxe = dy_sub(x2n, x2e, x1n, x1e)
    dyn, dye = dy_sub(y2n, y2e, y1n, y1e)
    if dxn <= 0 or dyn <= 0:
        return None
    if dxn != dyn:
        return None
    return dxe - dye


def canon_nodes(flat):
    """Drop interior nodes collinear with their neighbours."""
    n = len(flat) // 4
    if n <= 2:
        return list(flat)
    out = list(flat[:4])
    for i in range(1, n):
        xi = 4 * i
        while len(out) >= 8:
            # test whether out[-2], out[-1], node i are collinear
            x1n, x1e, y1n, y1e = out[-8:-4]
            x2n, x2e, y2n, y2e = out[-4:]
            s1 = seg_slope_exp(x1n, x1e, y1n, y1e, x2n, x2e, y2n, y2e)
            s2 = seg_slope_exp(
                x2n, x2e, y2n, y2e, flat[xi], flat[xi + 1], flat[xi + 2], flat[xi + 3]
            )
            if s1 is not None and s1 == s2:
                del out[-4:]
            else:
                break
        out.extend(flat[xi : xi + 4])
    return out


def invert_nodes(flat):
    """Reflect the graph across the diagonal (swap x and y)."""
    out = []
    for i in range(0, len(flat), 4):
        out.extend((flat[i + 2], flat[i + 3], flat[i], flat[i + 1]))
    return out


def eval_dyadic(flat, tn, te):
    """Image of the dyadic point t under the map; t must be in range."""
    n = len(flat) // 4
    if dy_cmp(tn, te, flat[0], flat[1]) < 0 or dy_cmp(tn, te, flat[-4], flat[-3]) > 0:
        raise ValueError("point outside domain")
    # binary search for the segment with x_i <= t
    lo, hi = 0, n - 1
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if dy_cmp(flat[4 * mid], flat[4 * mid + 1], tn, te) <= 0:
            lo = mid
        else:
            hi = mid
    i = 4 * lo
    if dy_cmp(tn, te, flat[i + 4], flat[i + 5]) == 0:
        return flat[i + 6], flat[i + 7]
    k = seg_slope_exp(*flat[i : i + 8])
    dn, de = dy_sub(tn, te, flat[i], flat[i + 1])
    dn, de = dy_shift(dn, de, k)
    return dy_add(flat[i + 2], flat[i + 3], dn, de)


def eval_dyadic_inv(flat, yn, ye):
    """Preimage of the dyadic point y under the map."""
    n = len(flat) // 4
    if dy_cmp(yn, ye, flat[2], flat[3]) < 0 or dy_cmp(yn, ye, flat[-2], flat[-1]) > 0:
        raise ValueError("point outside range")
    lo, hi = 0, n - 1
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if dy_cmp(flat[4 * mid + 2], flat[4 * mid + 3], yn, ye) <= 0:
            lo = mid
        else:
            hi = mid
    i = 4 * lo
    if dy_cmp(yn, ye, flat[i + 6], flat[i + 7]) == 0:
        return flat[i + 4], flat[i + 5]
    k = seg_slope_exp(*flat[i : i + 8])
    dn, de = dy_sub(yn, ye, flat[i + 2], flat[i + 3])
    dn, de = dy_shift(dn, de, -k)
    return dy_add(flat[i], flat[i + 1], dn, de)


def compose_nodes(f, g):
    """Nodes of f∘g, i.e. t -> f(g(t)).  Range of g must equal domain of f."""
    nf = len(f) // 4
    ng = len(g) // 4
    out = []
    fi = 0  # segment index of f: f_x[fi] <= current value <= f_x[fi+1]
    for j in range(ng - 1):
        gj = 4 * j
        gx1n, gx1e, gy1n, gy1e = g[gj : gj + 4]
        gy2n, gy2e = g[gj + 6], g[gj + 7]
        kg = seg_slope_exp(g[gj], g[gj + 1], g[gj + 2], g[gj + 3], g[gj + 4], g[gj + 5], g[gj + 6], g[gj + 7])
        while fi < nf - 2 and dy_cmp(f[4 * fi + 4], f[4 * fi + 5], gy1n, gy1e) <= 0:
            fi += 1
        # node at the g-breakpoint itself
        fx1n, fx1e, fy1n, fy1e = f[4 * fi : 4 * fi + 4]
        kf = seg_slope_exp(*f[4 * fi : 4 * fi + 8])
        dn, de = dy_sub(gy1n, gy1e, fx1n, fx1e)
        dn, de = dy_shift(dn, de, kf)
        yn, ye = dy_add(fy1n, fy1e, dn, de)
        out.extend((gx1n, gx1e, yn, ye))
        # pull back f-breakpoints interior to this g-segment
        ti = fi
        while ti < nf - 2 and dy_cmp(f[4 * ti + 4], f[4 * ti + 5], gy2n, gy2e) < 0:
            un, ue = f[4 * ti + 4], f[4 * ti + 5]
            if dy_cmp(un, ue, gy1n, gy1e) > 0:
                dn, de = dy_sub(un, ue, gy1n, gy1e)
                dn, de = dy_shift(dn, de, -kg)
                tn, te = dy_add(gx1n, gx1e, dn, de)
                out.extend((tn, te, f[4 * ti + 6], f[4 * ti + 7]))
            ti += 1
    out.extend((g[-4], g[-3], f[-2], f[-1]))
    return canon_nodes(out)


def identity_nodes(lon, loe, hin, hie):
    return [lon, loe, lon, loe, hin, hie, hin, hie]


def power_nodes(f, k):
    """Nodes of the k-th compositional power (k may be negative or zero)."""
    if k == 0:
        return identity_nodes(f[0], f[1], f[-4], f[-3])
    if k < 0:
        f = invert_nodes(f)
        k = -k
    result = None
    base = f
    while k:
        if k & 1:
            result = base if result is None else compose_nodes(result, base)
        k >>= 1
        if k:
            base = compose_nodes(base, base)
    return list(result)
