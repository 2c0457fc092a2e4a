"""Sparse multivariate polynomials over exact rationals.

A polynomial is a dict mapping fixed-width exponent tuples to nonzero
Fractions.  The dominance order scans variables from the innermost
(highest index) downward; a lower power of a more deeply nested variable
dominates.  The dominant monomial of a nonzero polynomial is therefore
the one whose reversed exponent tuple is lexicographically smallest.
"""

from fractions import Fraction
from math import gcd, lcm

Term = tuple[int, ...]
Poly = dict[Term, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def const(c, width: int) -> Poly:
    c = Fraction(c)
    if c == 0:
        return {}
    return {(0,) * width: c}


def variable(j: int, width: int) -> Poly:
    if not 0 <= j < width:
        raise ValueError(f"variable index {j} out of range for width {width}")
    exp = tuple(1 if i == j else 0 for i in range(width))
    return {exp: ONE}


def widen(p: Poly, width: int) -> Poly:
    """Embed into a wider exponent space by padding with zero exponents."""
    if not p:
        return {}
    old = len(next(iter(p)))
    if old == width:
        return p
    if old > width:
        raise ValueError(f"cannot shrink width {old} to {width}")
    pad = (0,) * (width - old)
    return {e + pad: c for e, c in p.items()}


def used_width(p: Poly, width: int) -> int:
    """Smallest width that still carries every variable actually present."""
    w = 0
    for e in p:
        for j in range(width - 1, w - 1, -1):
            if e[j]:
                w = j + 1
                break
    return w


def shrink(p: Poly, width: int) -> Poly:
    if not p:
        return {}
    return {e[:width]: c for e, c in p.items()}


def p_add(p: Poly, q: Poly) -> Poly:
    r = dict(p)
    for e, c in q.items():
        s = r.get(e, ZERO) + c
        if s:
            r[e] = s
        elif e in r:
            del r[e]
    return r


def p_neg(p: Poly) -> Poly:
    return {e: -c for e, c in p.items()}


def p_sub(p: Poly, q: Poly) -> Poly:
    r = dict(p)
    for e, c in q.items():
        s = r.get(e, ZERO) - c
        if s:
            r[e] = s
        elif e in r:
            del r[e]
    return r


def p_scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return {}
    return {e: v * c for e, v in p.items()}


def p_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return {}
    if len(p) > len(q):
        p, q = q, p
    r: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = r.get(e, ZERO) + c1 * c2
            if s:
                r[e] = s
            elif e in r:
                del r[e]
    return r


def p_pow(p: Poly, n: int, width: int) -> Poly:
    if n < 0:
        raise ValueError("negative exponent on a polynomial")
    r = const(1, width)
    b = p
    while n:
        if n & 1:
            r = p_mul(r, b)
        n >>= 1
        if n:
            b = p_mul(b, b)
    return r


def total_degree(p: Poly) -> int:
    return max((sum(e) for e in p), default=0)


# Dominance: e is more dominant than f when, scanning from the highest
# variable index down, the first differing coordinate of e is smaller.
def dominance_key(e: Term) -> Term:
    return e[::-1]


def more_dominant(e: Term, f: Term) -> bool:
    return e[::-1] < f[::-1]


def dominant_exp(p: Poly) -> Term:
    if not p:
        raise ValueError("zero polynomial has no dominant term")
    return min(p, key=dominance_key)


def dominant_coeff(p: Poly) -> Fraction:
    return p[dominant_exp(p)]


def sign_of(p: Poly) -> int:
    """Sign under the tower order: sign of the dominant coefficient."""
    if not p:
        return 0
    c = dominant_coeff(p)
    return 1 if c > 0 else -1


def lex_lead(p: Poly) -> Term:
    # Opposite end of the dominance order; a monomial well-order, used
    # for division.
    return max(p, key=dominance_key)


def p_divexact(p: Poly, d: Poly) -> Poly:
    """Exact division; raises if d does not divide p."""
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if not p:
        return {}
    lead = lex_lead(d)
    lc = d[lead]
    q: Poly = {}
    rem = dict(p)
    while rem:
        e = lex_lead(rem)
        t = tuple(a - b for a, b in zip(e, lead))
        if any(x < 0 for x in t):
            raise ValueError("not exactly divisible")
        c = rem[e] / lc
        q[t] = c
        for de, dc in d.items():
            ee = tuple(a + b for a, b in zip(t, de))
            s = rem.get(ee, ZERO) - c * dc
            if s:
                rem[ee] = s
            elif ee in rem:
                del rem[ee]
    return q


def rat_content(p: Poly) -> Fraction:
    """Positive rational c with p/c integer-coefficient and coprime."""
    if not p:
        return ONE
    num = 0
    den = 1
    for c in p.values():
        num = gcd(num, abs(c.numerator))
        den = lcm(den, c.denominator)
    return Fraction(num, den)


def primitive(p: Poly) -> tuple[Poly, Fraction]:
    """Split p = content * pp with pp integer, coprime, dominant-positive."""
    if not p:
        return {}, ZERO
    c = rat_content(p)
    if sign_of(p) < 0:
        c = -c
    return {e: v / c for e, v in p.items()}, c


def _split_main(p: Poly, j: int) -> dict[int, Poly]:
    parts: dict[int, Poly] = {}
    for e, c in p.items():
        k = e[j]
        ee = e[:j] + (0,) + e[j + 1:]
        parts.setdefault(k, {})[ee] = c
    return parts


def _join_main(parts: dict[int, Poly], j: int) -> Poly:
    p: Poly = {}
    for k, sub in parts.items():
        for e, c in sub.items():
            p[e[:j] + (k,) + e[j + 1:]] = c
    return p


def _content_main(parts: dict[int, Poly]) -> Poly:
    g: Poly = {}
    for sub in parts.values():
        g = p_gcd(g, sub)
    return g


def _prem(a: dict[int, Poly], b: dict[int, Poly]) -> dict[int, Poly]:
    """Pseudo-remainder of a by b in the split main variable."""
    db = max(b)
    lcb = b[db]
    r = {k: dict(v) for k, v in a.items()}
    while r and max(r) >= db:
        dr = max(r)
        lcr = r[dr]
        nr: dict[int, Poly] = {}
        for k, c in r.items():
            if k != dr:
                nr[k] = p_mul(c, lcb)
        for k, c in b.items():
            if k != db:
                kk = k + dr - db
                nr[kk] = p_sub(nr.get(kk, {}), p_mul(c, lcr))
        r = {k: v for k, v in nr.items() if v}
    return r


def _primitive_main(parts: dict[int, Poly]) -> dict[int, Poly]:
    cont = _content_main(parts)
    if not cont:
        return {}
    return {k: p_divexact(v, cont) for k, v in parts.items()}


def _is_const(p: Poly) -> bool:
    return len(p) == 1 and not any(next(iter(p)))


def p_gcd(p: Poly, q: Poly) -> Poly:
    """Primitive gcd, dominant coefficient positive; {} only if both zero."""
    if not p:
        return primitive(q)[0]
    if not q:
        return primitive(p)[0]
    if p == q:
        return primitive(p)[0]
    width = len(next(iter(p)))
    # Factor out per-variable minimal exponents first.
    mp = [min(e[j] for e in p) for j in range(width)]
    mq = [min(e[j] for e in q) for j in range(width)]
    common = tuple(min(a, b) for a, b in zip(mp, mq))
    a = {tuple(x - y for x, y in zip(e, mp)): c for e, c in p.items()}
    b = {tuple(x - y for x, y in zip(e, mq)): c for e, c in q.items()}
    if len(a) == 1 or len(b) == 1:
        # After stripping monomial factors a single term is a unit here.
        core = const(1, width)
    else:
        ia = _to_int(primitive(a)[0])
        ib = _to_int(primitive(b)[0])
        icore = _heugcd(ia, ib, width)
        if icore is not None:
            core = {e: Fraction(c) for e, c in icore.items()}
        else:
            core = _gcd_pp(primitive(a)[0], primitive(b)[0], width)
    if any(common):
        core = p_mul(core, {common: ONE})
    return core


IPoly = dict  # exponent tuple -> int; gcd internals run on plain ints


def _to_int(p: Poly) -> IPoly:
    return {e: int(c) for e, c in p.items()}


def _iprimitive(p: IPoly) -> tuple[IPoly, int]:
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            break
    if g == 0:
        return {}, 0
    if p[min(p, key=dominance_key)] < 0:
        g = -g
    if g == 1:
        return p, 1
    return {e: c // g for e, c in p.items()}, g


def _idivides(p: IPoly, d: IPoly) -> bool:
    """Exact divisibility test over the integers, aborting early."""
    lead = max(d, key=dominance_key)
    lc = d[lead]
    rem = dict(p)
    while rem:
        e = max(rem, key=dominance_key)
        c = rem[e]
        if c % lc:
            return False
        t = tuple(a - b for a, b in zip(e, lead))
        if any(x < 0 for x in t):
            return False
        c //= lc
        for de, dc in d.items():
            ee = tuple(a + b for a, b in zip(t, de))
            s = rem.get(ee, 0) - c * dc
            if s:
                rem[ee] = s
            elif ee in rem:
                del rem[ee]
    return True


def _ieval_var(p: IPoly, j: int, xi: int) -> IPoly:
    r: IPoly = {}
    for e, c in p.items():
        ee = e[:j] + (0,) + e[j + 1:]
        s = r.get(ee, 0) + c * xi ** e[j]
        if s:
            r[ee] = s
        elif ee in r:
            del r[ee]
    return r


def _heugcd(a: IPoly, b: IPoly, width: int) -> IPoly | None:
    """Heuristic gcd by evaluation and balanced-digit reconstruction.

    Inputs are primitive with integer coefficients.  A verified result
    is exact; None means the heuristic gave up.
    """
    if _is_const(a) or _is_const(b):
        return {(0,) * width: 1}
    j = -1
    for v in range(width - 1, -1, -1):
        if any(e[v] for e in a) or any(e[v] for e in b):
            j = v
            break
    na = max(abs(c) for c in a.values())
    nb = max(abs(c) for c in b.values())
    xi = 2 * min(na, nb) + 29
    for _ in range(6):
        ae = _ieval_var(a, j, xi)
        be = _ieval_var(b, j, xi)
        if ae and be:
            if _is_const(ae) and _is_const(be):
                g = gcd(abs(next(iter(ae.values()))), abs(next(iter(be.values()))))
                h: IPoly | None = {(0,) * width: g}
            else:
                pae, ca = _iprimitive(ae)
                pbe, cb = _iprimitive(be)
                cg = gcd(ca, cb)
                h = _heugcd(pae, pbe, width)
                if h is not None and cg != 1:
                    h = {e: c * cg for e, c in h.items()}
            if h is not None:
                cand = _iinterpolate(h, j, xi)
                if cand:
                    cand = _iprimitive(cand)[0]
                    if _is_const(cand):
                        return cand
                    first, second = (a, b) if len(a) <= len(b) else (b, a)
                    if _idivides(first, cand) and _idivides(second, cand):
                        return cand
        xi = xi * 27320508 // 10000000 + 1
    return None


def _iinterpolate(h: IPoly, j: int, xi: int) -> IPoly:
    """Read balanced base-xi digits of h off as coefficients of var j."""
    out: IPoly = {}
    i = 0
    half = xi // 2
    while h:
        nh: IPoly = {}
        for e, c in h.items():
            r = c % xi
            if r > half:
                r -= xi
            if r:
                if e[j]:
                    return {}
                out[e[:j] + (i,) + e[j + 1:]] = r
            if c != r:
                nh[e] = (c - r) // xi
        h = nh
        i += 1
    return out


def _gcd_pp(a: Poly, b: Poly, width: int) -> Poly:
    if _is_const(a) or _is_const(b):
        return const(1, width)
    main = -1
    for j in range(width - 1, -1, -1):
        if any(e[j] for e in a) or any(e[j] for e in b):
            main = j
            break
    sa = _split_main(a, main)
    sb = _split_main(b, main)
    if max(sa) < max(sb):
        sa, sb = sb, sa
    if max(sb) == 0:
        # One side does not involve the main variable: the gcd cannot
        # either, so recurse on the other side's coefficient content.
        return p_gcd(_content_main(sa), _join_main(sb, main))
    ca = _content_main(sa)
    cb = _content_main(sb)
    ppa = {k: p_divexact(v, ca) for k, v in sa.items()}
    ppb = {k: p_divexact(v, cb) for k, v in sb.items()}
    cont = p_gcd(ca, cb)
    while True:
        if max(ppb) == 0:
            g: Poly = const(1, width)
            break
        r = _prem(ppa, ppb)
        if not r:
            g = _join_main(ppb, main)
            break
        ppa, ppb = ppb, _primitive_main(r)
    return primitive(p_mul(cont, g))[0]
