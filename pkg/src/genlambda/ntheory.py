"""Elementary number-theoretic helpers shared across the package."""

from __future__ import annotations

import math
from functools import lru_cache


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def inv_mod(a: int, n: int) -> int:
    g, x, _ = egcd(a % n, n)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {n}")
    return x % n


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...), by trial division."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(n))


def radical(n: int) -> int:
    """Product of the distinct prime divisors of n (1 for n = 1)."""
    r = 1
    for p in prime_divisors(n):
        r *= p
    return r


def euler_phi(n: int) -> int:
    phi = n
    for p in prime_divisors(n):
        phi -= phi // p
    return phi


def moebius(n: int) -> int:
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for all integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    # factor out 2s of n
    e2 = 0
    while n % 2 == 0:
        n //= 2
        e2 += 1
    if e2:
        if a % 2 == 0:
            return 0
        if e2 % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi symbol on the odd part by reciprocity
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def is_fundamental_discriminant(d: int) -> bool:
    """True iff d is a fundamental quadratic discriminant (d != 1)."""
    if d == 1 or d == 0:
        return False
    if d % 4 == 1 or d % 4 == -3:
        return _is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return _is_squarefree(m) and m % 4 in (2, 3, -2, -1)
    return False


def _is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(abs(n)))


def primes_in_class(residue: int, modulus: int, start: int = 2):
    """Yield primes p ≡ residue (mod modulus) with p >= start, ascending."""
    p = max(start, 2)
    while True:
        if _is_prime(p) and p % modulus == residue % modulus:
            yield p
        p += 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    # deterministic Miller-Rabin for 64-bit and beyond-safe bases
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)
