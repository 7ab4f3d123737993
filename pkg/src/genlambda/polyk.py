"""Univariate polynomial utilities over K_N.

Polynomials are tuples of CycNum, constant term first, trailing zeros
stripped. Degrees here stay in the hundreds, so the arithmetic is plain
schoolbook; the one place naive methods would blow up (gcd chains over a
number field) is replaced by reduction modulo a split prime, which gives a
sound positive certificate of squarefreeness.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import CycNum
from .ntheory import prime_divisors, _is_prime


def trim(p) -> tuple:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return tuple(p)


def deg(p) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(p) - 1


def constant(level: int, value) -> tuple:
    c = value if isinstance(value, CycNum) else CycNum.from_rational(level, value)
    return trim((c,))


def padd(p, q) -> tuple:
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        if i < len(p) and i < len(q):
            out.append(p[i] + q[i])
        elif i < len(p):
            out.append(p[i])
        else:
            out.append(q[i])
    return trim(out)


def pneg(p) -> tuple:
    return tuple(-c for c in p)


def psub(p, q) -> tuple:
    return padd(p, pneg(q))


def pscale(p, c) -> tuple:
    if not isinstance(c, CycNum) and p:
        c = CycNum.from_rational(p[0].level, c)
    return trim(tuple(c * x for x in p))


def pmul(p, q) -> tuple:
    if not p or not q:
        return ()
    out = [CycNum.zero(p[0].level)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a.is_zero():
            for j, b in enumerate(q):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
    return trim(out)


def ppow(p, e: int) -> tuple:
    if not p:
        return () if e else None
    result = (CycNum.one(p[0].level),)
    base = p
    while e:
        if e & 1:
            result = pmul(result, base)
        e >>= 1
        if e:
            base = pmul(base, base)
    return result


def pderiv(p) -> tuple:
    return trim(tuple(p[i] * i for i in range(1, len(p))))


def peval(p, x: CycNum) -> CycNum:
    if not p:
        return CycNum.zero(x.level)
    acc = CycNum.zero(x.level)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def peval_complex(p, z: complex) -> complex:
    acc = 0j
    for c in reversed(p):
        acc = acc * z + c.embed()
    return acc


def pconj(p) -> tuple:
    return tuple(c.conj() for c in p)


def monic_from_roots(level: int, roots, multiplicity: int = 1) -> tuple:
    """prod (X - r)^multiplicity over the given K_N roots."""
    out = (CycNum.one(level),)
    for r in roots:
        lin = (-r, CycNum.one(level))
        for _ in range(multiplicity):
            out = pmul(out, lin)
    return out


# -- exact n-th roots of monic polynomials -----------------------------------


def _ser_mul(level, a, b, width):
    out = [CycNum.zero(level)] * width
    for i, x in enumerate(a):
        if i >= width or x.is_zero():
            continue
        for j in range(min(len(b), width - i)):
            y = b[j]
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def _ser_inv(level, a, width):
    if a[0].is_zero():
        raise ZeroDivisionError("series inverse needs a unit constant term")
    inv0 = a[0].inv()
    out = [CycNum.zero(level)] * width
    out[0] = inv0
    for k in range(1, width):
        s = CycNum.zero(level)
        for j in range(1, min(k, len(a) - 1) + 1):
            if not a[j].is_zero():
                s = s + a[j] * out[k - j]
        out[k] = -inv0 * s
    return out


def nth_root_monic(f, n_root: int, level: int):
    """Exact H with H^n = f, for monic f with deg divisible by n_root.

    Returns the monic H, or None if f is not a perfect n-th power. The root
    is found as a power series in 1/X on the reversed coefficients and then
    verified by exact multiplication.
    """
    d = deg(f)
    if d < 0 or d % n_root != 0:
        return None
    if not f[-1] == CycNum.one(level):
        return None
    m = d // n_root
    width = m + 1
    rev = [f[d - k] for k in range(min(width, d + 1))]
    rev += [CycNum.zero(level)] * (width - len(rev))
    # Newton iteration for h with h^n = rev (mod t^width), h(0) = 1
    h = [CycNum.one(level)]
    known = 1
    inv_n = CycNum.from_rational(level, Fraction(1, n_root))
    while known < width:
        target = min(2 * known, width)
        hp = list(h) + [CycNum.zero(level)] * (target - len(h))
        hn = [CycNum.one(level)]
        for _ in range(n_root - 1):
            hn = _ser_mul(level, hn, hp, target)
        err = _ser_mul(level, hn, hp, target)
        delta = [rev[i] - err[i] for i in range(target)]
        corr = _ser_mul(level, delta, _ser_inv(level, hn, target), target)
        h = [hp[i] + inv_n * corr[i] for i in range(target)]
        known = target
    root = trim(tuple(reversed(h)))
    if deg(root) != m:
        return None
    if ppow(root, n_root) != trim(tuple(f)):
        return None
    return root


# -- squarefreeness via reduction modulo a split prime -------------------------


def _split_prime_with_root(n: int, lower: int) -> tuple[int, int]:
    """A prime p ≡ 1 (mod N), p > lower, with an element w of exact order N."""
    p = lower + 1
    while True:
        if p % n == 1 and _is_prime(p):
            for g in range(2, p):
                w = pow(g, (p - 1) // n, p)
                if all(pow(w, n // q, p) != 1 for q in prime_divisors(n)):
                    return p, w
        p += 1


def _reduce_mod(c: CycNum, w: int, p: int) -> int:
    acc = 0
    wp = 1
    for fr in c.coords:
        num = fr.numerator % p
        den = fr.denominator % p
        if den == 0:
            raise ZeroDivisionError("denominator divisible by the chosen prime")
        acc = (acc + num * pow(den, -1, p) * wp) % p
        wp = wp * w % p
    return acc


def _gcd_mod_p(fp: list[int], gp: list[int], p: int) -> list[int]:
    a, b = [x % p for x in fp], [x % p for x in gp]

    def trim_p(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim_p(a), trim_p(b)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            coef = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[shift + i] = (a[shift + i] - coef * x) % p
            a = trim_p(a)
            if not a:
                break
        a, b = b, a
    return a


def squarefree_certificate(f, level: int, attempts: int = 5) -> bool:
    """Sound check that gcd(f, f') = 1 over K_N.

    Reduces modulo primes p = 1 (mod N) (zeta -> an order-N element of F_p);
    a coprime reduction proves coprimality over the field. Returns False only
    if every attempted reduction has a nontrivial gcd.
    """
    df = pderiv(f)
    if not df:
        return deg(f) <= 0
    # clear denominators once so every reduction is well defined
    den = 1
    for c in f:
        for fr in c.coords:
            den = den * fr.denominator // math.gcd(den, fr.denominator)
    cleared = tuple(c * den for c in f)
    cleared_d = pderiv(cleared)
    p = max(deg(f) + 1, level)
    for _ in range(attempts):
        p, w = _split_prime_with_root(level, p)
        try:
            red_f = [_reduce_mod(c, w, p) for c in cleared]
            red_df = [_reduce_mod(c, w, p) for c in cleared_d]
        except ZeroDivisionError:
            continue
        if not red_f or red_f[-1] == 0:
            continue  # degree dropped; reduction not usable
        g = _gcd_mod_p(red_f, red_df, p)
        if len(g) == 1:
            return True
    return False
