"""Counting formulas: the degree d_N, the pair (ell_N, t_N) by three
independent routes, the arithmetic sums I_k and J_k with their closed forms,
and the ray-class degree over the Hilbert class field with a root of unity
adjoined.

Conventions for the sums, for L | M:

    I_k(L, M) = sum of t^k over 0 < t < M/2 with gcd(t, L) = 1,
    J_k(L, M) = same, restricted to t = -M (mod 3).

Closed forms exist only on certain parameter branches; sum_closed refuses
anything outside them (OutOfBranchError) and sum_best falls back to plain
enumeration. One printed branch pair in the source material is inconsistent
for J_1 with squarefree-part 2; brute-force comparison fixes the reading
used here: M = 2 (mod 4) -> (M^2-12M+20)/48, M = 0 (mod 4) -> (M^2-16)/48.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .modgroup import cusp_count, degree_dn, nu_statistics
from .ntheory import (
    euler_phi,
    factorize,
    is_fundamental_discriminant,
    kronecker_symbol,
    prime_divisors,
    radical,
)


class OutOfBranchError(ValueError):
    """Closed form requested outside its stated domain of validity."""


def sum_enum(kind: str, k: int, L: int, M: int) -> int:
    """Brute-force I_k or J_k."""
    if kind not in ("I", "J"):
        raise ValueError("kind must be 'I' or 'J'")
    if M < 1 or L < 1 or M % L:
        raise ValueError("need L | M with M >= 1")
    total = 0
    for t in range(1, (M - 1) // 2 + 1):
        if math.gcd(t, L) != 1:
            continue
        if kind == "J" and (t + M) % 3 != 0:
            continue
        total += t**k
    return total


def sum_closed(kind: str, k: int, L: int, M: int) -> int:
    """Closed-form I_k or J_k on the stated branches; OutOfBranchError
    elsewhere."""
    if kind not in ("I", "J"):
        raise ValueError("kind must be 'I' or 'J'")
    if M < 1 or L < 1 or M % L:
        raise ValueError("need L | M with M >= 1")
    if k not in (0, 1):
        raise OutOfBranchError("closed forms cover k = 0, 1 only")
    ls = radical(L)
    ell = len(prime_divisors(L))
    if kind == "I":
        if k == 1:
            if M <= 2:
                return 0
            if ls == 1:
                return (M * M - 1) // 8 if M % 2 else M * (M - 2) // 8
            if ls == 2:
                if M % 4 == 0:
                    return (M // 4) ** 2
                return ((M - 2) // 4) ** 2
            eps = 1 if M % 2 else (2 if M % 4 == 2 and ls % 2 == 0 else 0)
            val = Fraction(euler_phi(ls)) * (Fraction(M * M, ls) - (-1) ** ell * eps) / 8
            assert val.denominator == 1
            return int(val)
        # k == 0
        if ls == 1:
            return (M - 2) // 2 if M % 2 == 0 else (M - 1) // 2
        if ls == 2 and M % 4 == 2:
            return (M - 2) // 4
        val = Fraction(M * euler_phi(ls), 2 * ls)
        assert val.denominator == 1
        return int(val)
    # kind == "J"
    if M % 3 == 0 and L % 3 == 0:
        return 0
    if M % 3 == 0:
        raise OutOfBranchError("J closed forms need M not divisible by 3")
    if k == 1:
        if ls == 2:
            if M % 4 == 2:
                return (M * M - 12 * M + 20) // 48
            return (M * M - 16) // 48
        if ls <= 2:
            raise OutOfBranchError("no stated J_1 form for squarefree part 1")
        eps = 1 if M % 2 else (2 if M % 4 == 2 and ls % 2 == 0 else 0)
        val = (
            Fraction(euler_phi(ls))
            * (Fraction(M * M, ls) + (-1) ** ell * (8 - 9 * eps))
            / 24
        )
        assert val.denominator == 1
        return int(val)
    # k == 0
    if ls <= 2:
        raise OutOfBranchError("no stated J_0 form for squarefree part <= 2")
    eps = 0 if any(p % 3 == 1 for p in prime_divisors(ls)) else 1
    legendre = 1 if M % 3 == 1 else -1
    val = (Fraction(M * euler_phi(ls), ls) - legendre * (2**ell) * eps) / 6
    assert val.denominator == 1
    return int(val)


def sum_best(kind: str, k: int, L: int, M: int) -> int:
    """Closed form when a branch applies, enumeration otherwise."""
    try:
        return sum_closed(kind, k, L, M)
    except OutOfBranchError:
        return sum_enum(kind, k, L, M)


def d_n(n: int) -> int:
    """The X-degree of the minimal polynomial, (N^3/2) prod (1 - p^-2)."""
    return degree_dn(n)


def _ell_t_prop_sums(n: int) -> tuple[int, int]:
    ell = sum_enum("I", 1, n, n)
    t = sum_enum("I", 0, n, n)
    for a in range(1, (n - 1) // 3 + 1):
        if 3 * a >= n:
            break
        g = math.gcd(a, n)
        ell += 2 * sum_enum("I", 1, g, n - 3 * a)
        t += 2 * sum_enum("I", 0, g, n - 3 * a)
    if n % 3 == 0:
        m = n // 3
        ell += 3 * (sum_enum("I", 1, m, m) - sum_enum("J", 1, m, m))
        t += sum_enum("I", 0, m, m) - sum_enum("J", 0, m, m)
    else:
        ell += sum_enum("J", 1, n, n)
        t += sum_enum("J", 0, n, n)
    return ell, t


def _ell_t_prime_power(n: int) -> tuple[int, int]:
    fac = factorize(n)
    if len(fac) != 1:
        raise ValueError(f"{n} is not a prime power")
    p, m = fac[0]
    if p == 2:
        if m < 2:
            raise ValueError("need N = 2^m with m > 1")
        t = (3 * 2 ** (2 * m - 3) - 2 ** (m - 1) - (-1) ** m) // 3
        ell = (2 ** (3 * m - 4) - (-1) ** m) // 3
        return ell, t
    if p == 3:
        if m == 1:
            return 1, 1
        t = 4 * 3 ** (2 * m - 3) - 2 * 3 ** (m - 2)
        ell = 2 * 3 ** (3 * m - 4)
        return ell, t
    if p % 3 == 1:
        t_corr = Fraction(0)
        ell_corr = Fraction(p - 1, 9)
    elif m % 2 == 1:
        t_corr = Fraction(1, 3)
        ell_corr = Fraction(p + 1, 9)
    else:
        t_corr = Fraction(-1, 3)
        ell_corr = Fraction(-(p + 1), 9)
    t = Fraction(p ** (2 * m) - p ** (2 * m - 2) - 2 * p**m + 2 * p ** (m - 1), 6) + t_corr
    ell = Fraction(p ** (3 * m) - p ** (3 * m - 2), 36) + ell_corr
    assert t.denominator == 1 and ell.denominator == 1
    return int(ell), int(t)


def ell_t(n: int, route: str = "enum") -> tuple[int, int]:
    """(ell_N, t_N) by the requested route: "enum" (cusp/order enumeration),
    "prop4" (the I/J sum formulas), or "prime_power" (closed forms)."""
    if n < 3:
        raise ValueError("level must be >= 3")
    if route == "enum":
        return nu_statistics(n)
    if route == "prop4":
        return _ell_t_prop_sums(n)
    if route == "prime_power":
        return _ell_t_prime_power(n)
    raise ValueError(f"unknown route {route!r}")


@dataclass(frozen=True)
class CountReport:
    n: int
    d: int
    cusps: int
    ell: int
    t: int
    ell_prop4: int
    t_prop4: int
    ell_prime_power: int | None
    t_prime_power: int | None
    prop4_claimed: bool

    @property
    def agree(self) -> bool:
        ok = (self.ell, self.t) == (self.ell_prop4, self.t_prop4)
        if self.ell_prime_power is not None:
            ok = ok and (self.ell, self.t) == (self.ell_prime_power, self.t_prime_power)
        return ok

    def to_json_obj(self) -> dict:
        return {
            "N": self.n,
            "dN": self.d,
            "cusps": self.cusps,
            "ell": self.ell,
            "t": self.t,
            "routes": {
                "enum": [self.ell, self.t],
                "prop4": [self.ell_prop4, self.t_prop4],
                "prime_power": (
                    [self.ell_prime_power, self.t_prime_power]
                    if self.ell_prime_power is not None
                    else None
                ),
            },
            "agree": self.agree,
            "prop4_claimed": self.prop4_claimed,
        }


def count_report(n: int) -> CountReport:
    ell, t = ell_t(n, "enum")
    ell4, t4 = ell_t(n, "prop4")
    try:
        ellp, tp = ell_t(n, "prime_power")
    except ValueError:
        ellp, tp = None, None
    return CountReport(
        n=n,
        d=degree_dn(n),
        cusps=cusp_count(n),
        ell=ell,
        t=t,
        ell_prop4=ell4,
        t_prop4=t4,
        ell_prime_power=ellp,
        t_prime_power=tp,
        prop4_claimed=(n != 6),
    )


def ray_class_degree(disc: int, n: int) -> Fraction:
    """[ray class field mod N : H(zeta_N)] for the imaginary quadratic field
    of fundamental discriminant `disc`, excluding Q(i) and Q(sqrt(-3))."""
    if disc >= 0 or not is_fundamental_discriminant(disc):
        raise ValueError(f"{disc} is not a negative fundamental discriminant")
    if disc in (-3, -4):
        raise ValueError("the fields Q(sqrt(-1)) and Q(sqrt(-3)) are excluded")
    if n < 1:
        raise ValueError("modulus must be positive")
    base = Fraction(n)
    for p in prime_divisors(n):
        base *= 1 - Fraction(kronecker_symbol(disc, p), p)
    # contained in a prime-power cyclotomic piece?
    for p, e in factorize(n):
        if (p**e) % abs(disc) == 0:
            return base
    r = sum(1 for p in prime_divisors(math.gcd(abs(disc), n)) if p % 2 == 1)
    if n % 8 == 4 and disc % 8 == 4:
        s = r + 1
    elif n % 8 == 0 and disc % 2 == 0:
        s = r + 1
    else:
        s = r
    in_kn = n % abs(disc) == 0
    return base * (Fraction(2) ** s if in_kn else Fraction(2) ** (s - 1))
