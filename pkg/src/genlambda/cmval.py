"""Floating-point evaluation of the modular functions at points of the upper
half plane, and the numeric verification reports: special-value tables,
exact q-series identities, and the unit-circle / reciprocal-conjugation law.

All evaluations sum explicit q-expansions with a geometric tail bound; the
points of interest have Im(tau) well above 0.3, so double precision leaves
orders of magnitude to spare at the default tolerances.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

from .cyclotomic import CycNum
from .forms import (
    g_pow_series,
    j_series,
    lambda_classical_series,
    lambda_level2_series,
)
from .lam import lambda_series
from .modgroup import SL2Mat, brace_mu
from .qseries import QSeries

SQ = cmath.sqrt


@dataclass(frozen=True)
class CMPoint:
    tau: complex
    level: int
    description: str = ""

    def __post_init__(self):
        if self.tau.imag <= 0:
            raise ValueError("point must lie in the upper half plane")


@dataclass
class CheckEntry:
    label: str
    residual: float
    bound: float
    note: str = ""
    known_defect: bool = False  # source value documented as internally inconsistent

    @property
    def ok(self) -> bool:
        return self.residual < self.bound

    @property
    def acceptable(self) -> bool:
        # a documented defect is acceptable exactly when it still fails;
        # if it started passing, the documentation would be wrong
        return self.ok != self.known_defect

    def line(self) -> str:
        if self.known_defect:
            status = "KNOWN-DEFECT" if not self.ok else "UNEXPECTED-PASS"
        else:
            status = "PASS" if self.ok else "FAIL"
        note = f"  ({self.note})" if self.note else ""
        return f"[{status}] {self.label}: residual {self.residual:.3e} vs {self.bound:.1e}{note}"


@dataclass
class CheckReport:
    title: str
    entries: list[CheckEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.acceptable for e in self.entries)

    @property
    def strict_ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def add(
        self,
        label: str,
        residual: float,
        bound: float,
        note: str = "",
        known_defect: bool = False,
    ):
        self.entries.append(
            CheckEntry(label, float(residual), float(bound), note, known_defect)
        )

    def lines(self) -> list[str]:
        return [f"== {self.title}"] + [e.line() for e in self.entries]


# ---------------------------------------------------------------------------
# direct numeric evaluation with tail bounds
# ---------------------------------------------------------------------------


def _tail_cutoff(x: float, tol: float) -> int:
    """Smallest P with sum_{k >= P} 4 k^2 x^k below tol (x < 1)."""
    if not 0 <= x < 0.999:
        raise ValueError("|q| too close to 1; tail bound unreachable")
    one = 1.0 - x
    p = 4
    while True:
        tail = 4.0 * x**p * (p * p / one + 2 * p / one**2 + 2 / one**3)
        if tail < tol:
            return p
        p = p + max(2, p // 4)
        if p > 200_000:
            raise ValueError("tail bound unreachable in double precision")


def eval_e_numeric(r: int, s: int, n: int, tau: complex, tol: float = 1e-13) -> complex:
    """Sum the expansion of E(tau; r, s) directly, tail below tol."""
    q = cmath.exp(2j * cmath.pi * tau / n)
    x = abs(q)
    cutoff = _tail_cutoff(x, tol)
    br, mu = brace_mu(r, n)
    omega = cmath.exp(2j * cmath.pi * (mu * s) / n)
    total = 0j
    if br == 0:
        total += omega / (1 - omega) ** 2
        m = 1
        while m * n < cutoff:
            nn = 1
            while m * nn * n < cutoff:
                wn = omega**nn
                total += nn * (wn + 1 / wn - 2) * q ** (m * nn * n)
                nn += 1
            m += 1
    else:
        u = omega * q**br
        nn = 1
        while nn * br < cutoff:
            total += nn * u**nn
            nn += 1
        nn = 1
        while nn * (n - br) < cutoff:
            m = 1
            while m * nn * n - nn * br < cutoff:
                wn = omega**nn
                base = q ** (m * nn * n)
                total += nn * base * (wn * q ** (nn * br) + (1 / wn) * q ** (-nn * br) - 2)
                m += 1
            nn += 1
    return total


def eval_lambda_numeric(mat_or_pairs, n: int, tau: complex, tol: float = 1e-12) -> complex:
    """The lambda function at tau from the E-ratio, two-pass so the requested
    tolerance applies to the quotient."""
    if isinstance(mat_or_pairs, SL2Mat):
        q1 = (mat_or_pairs.a, mat_or_pairs.b)
        q2 = (mat_or_pairs.c, mat_or_pairs.d)
    else:
        q1, q2 = mat_or_pairs
    q3 = (q1[0] + q2[0], q1[1] + q2[1])

    def ratio(tol_e: float) -> tuple[complex, complex, complex]:
        e1 = eval_e_numeric(q1[0], q1[1], n, tau, tol_e)
        e2 = eval_e_numeric(q2[0], q2[1], n, tau, tol_e)
        e3 = eval_e_numeric(q3[0], q3[1], n, tau, tol_e)
        return e1 - e3, e2 - e3, (e1 - e3) / (e2 - e3)

    num, den, val = ratio(1e-8)
    tol_e = tol * abs(den) / (4 * (1 + abs(val)))
    _, _, val = ratio(max(tol_e, 1e-16))
    return val


def eval_series_numeric(series: QSeries, tau: complex) -> complex:
    """Embed an exact series and evaluate at q = exp(2 pi i tau / N)."""
    q = cmath.exp(2j * cmath.pi * tau / series.level)
    return series.evaluate(q)


def eval_j_numeric(n: int, tau: complex, prec: int | None = None) -> complex:
    prec = prec if prec is not None else 10 * n
    return eval_series_numeric(j_series(n, prec), tau)


def eta_numeric(tau: complex, tol: float = 1e-15) -> complex:
    """Dedekind eta from its product, q_std = exp(2 pi i tau)."""
    q = cmath.exp(2j * cmath.pi * tau)
    out = cmath.exp(2j * cmath.pi * tau / 24)
    x = abs(q)
    if x >= 0.999:
        raise ValueError("Im(tau) too small for the eta product")
    k = 1
    while x**k / (1 - x) > tol:
        out *= 1 - q**k
        k += 1
    return out


# ---------------------------------------------------------------------------
# special-value tables
# ---------------------------------------------------------------------------

RHO = (1 + SQ(-3)) / 2  # exp(pi i / 3)


def _v3_closed(m: int) -> list[complex]:
    """Candidate closed-form values (both inner square-root branches) for the
    level-3 value at (1 + sqrt(-m))/2."""
    if m == 11:
        return [SQ(-3) * (-1 + 2 * SQ(-11) - 3 * SQ(-3)) / 18]
    table = {
        7: (1, (SQ(-3) - SQ(-7)) / 2),
        19: (2, 5 * SQ(-3) - 2 * SQ(-19)),
        43: (6, 53 * SQ(-3) - 14 * SQ(-43)),
        67: (14, 293 * SQ(-3) - 62 * SQ(-67)),
        163: (154, 35573 * SQ(-3) - 4826 * SQ(-163)),
    }
    beta, omega = table[m]
    inner = SQ(3 * SQ(-3) * omega)
    return [(1 + omega - beta * inner) / 2, (1 + omega + beta * inner) / 2]


def _eq4_coeffs(m: int) -> list[complex]:
    """Coefficients (descending powers, monic cubic) of the level-4 defining
    cubic for the value at (1 + sqrt(-m))/2."""
    if m == 11:
        return [
            1,
            -(3 + 2j - SQ(-11)) / 2,
            (7 + 2j + (2j - 1) * SQ(-11)) / 2,
            -(3 * (1 - 1j) + (1 + 1j) * SQ(-11)) / 2,
        ]
    if m == 43:
        return [
            1,
            -(3 + 58j - 9 * SQ(-43)) / 2,
            (119 + 58j + 9 * (2j - 1) * SQ(-43)) / 2,
            -(59 * (1 - 1j) + 9 * (1 + 1j) * SQ(-43)) / 2,
        ]
    omega = {
        19: (3 - 8j - 3 * SQ(-19)) / 2,
        67: (3 - 216j - 27 * SQ(-67)) / 2,
        163: (3 - 8000j - 627 * SQ(-163)) / 2,
    }[m]
    return [1, omega * 1j, omega.conjugate(), 1j]


def _half_point(m: int) -> complex:
    return (1 + SQ(-m)) / 2


def verify_cm_table(n: int) -> CheckReport:
    """Check every closed-form special value and defining cubic at level 3 or 4."""
    if n not in (3, 4):
        raise ValueError("value tables exist for levels 3 and 4")
    rep = CheckReport(title=f"special values, level {n}")
    ident = SL2Mat.identity(n)

    def check_value(label: str, tau: complex, candidates: list[complex], bound=1e-8):
        val = eval_lambda_numeric(ident, n, tau, tol=1e-12)
        best = min(abs(val - c) for c in candidates)
        note = ""
        if len(candidates) > 1:
            pick = min(range(len(candidates)), key=lambda i: abs(val - candidates[i]))
            note = f"matching square-root branch: {'-' if pick == 0 else '+'}"
        rep.add(label, best, bound, note)

    if n == 3:
        check_value("L(i) = i*rho", 1j, [1j * RHO])
        check_value("L(rho) = -rho", RHO, [-RHO])
        check_value("L(sqrt(-2)) = (sqrt(-3)-sqrt(-2))*rho", SQ(-2), [(SQ(-3) - SQ(-2)) * RHO])
        for m in (7, 11, 19, 43, 67, 163):
            check_value(f"v({m})", _half_point(m), _v3_closed(m))
        # product of the four sign-conjugates of v(11) has absolute value 3^-3
        prod = 1
        for s1 in (1, -1):
            for s2 in (1, -1):
                prod *= s1 * SQ(-3) * (-1 + 2 * s2 * SQ(-11) - 3 * s1 * SQ(-3)) / 18
        rep.add("|prod conj v(11)| = 3^-3", abs(abs(prod) - 3.0**-3), 1e-10)
    else:
        # The published level-4 list carries two values that are provably
        # inconsistent with the published F(X, 1728) factorization (which this
        # package reproduces exactly) and with a direct Weierstrass lattice
        # sum. Both readings are reported: the printed form as a known defect,
        # the corrected form as the real check.
        val_i = eval_lambda_numeric(ident, n, 1j, tol=1e-12)
        rep.add(
            "L(i) as printed: (i-1)/sqrt(-2)",
            abs(val_i - (1j - 1) / SQ(-2)),
            1e-8,
            note="printed value is not a root of the published F(X,1728)",
            known_defect=True,
        )
        rep.add(
            "L(i) corrected: (i-1)/sqrt(2)",
            abs(val_i - (1j - 1) / SQ(2)),
            1e-8,
            note="root of the (X^2+i)^2 factor of F(X,1728); lattice-sum verified",
        )
        check_value("L(rho) = i(rho-1)", RHO, [1j * (RHO - 1)])
        check_value(
            "L(sqrt(-2)) = (1-i)(1-sqrt(1+sqrt2))/2",
            SQ(-2),
            [(1 - 1j) * (1 - math.sqrt(1 + math.sqrt(2))) / 2],
        )
        val_7 = eval_lambda_numeric(ident, n, _half_point(7), tol=1e-12)
        rep.add(
            "L((1+sqrt(-7))/2) as printed: (1-3i+(1+i)sqrt(-7))/2",
            abs(val_7 - (1 - 3j + (1 + 1j) * SQ(-7)) / 2),
            1e-8,
            note="printed value is not a root of F(X, -3375)",
            known_defect=True,
        )
        rep.add(
            "L((1+sqrt(-7))/2) corrected: (1-3i+(1+i)sqrt(-7))/4",
            abs(val_7 - (1 - 3j + (1 + 1j) * SQ(-7)) / 4),
            1e-8,
            note="root of F(X, -3375); lattice-sum verified",
        )
        for m in (11, 19, 43, 67, 163):
            val = eval_lambda_numeric(ident, n, _half_point(m), tol=1e-12)
            coeffs = _eq4_coeffs(m)
            resid = abs(
                ((coeffs[0] * val + coeffs[1]) * val + coeffs[2]) * val + coeffs[3]
            )
            rep.add(f"EQ({m}) residual", resid, 1e-6)
    return rep


# ---------------------------------------------------------------------------
# exact q-series identities with numeric spot checks
# ---------------------------------------------------------------------------


def verify_identities(n: int, prec: int = 110) -> CheckReport:
    """The exact level-3/4 identities between the lambda function, j, the
    eta quotient and the classical lambda, as cleared q-series identities,
    plus numeric spot checks at three seeded points."""
    if n not in (3, 4):
        raise ValueError("identity lists exist for levels 3 and 4")
    rep = CheckReport(title=f"exact identities, level {n}")
    width = prec + 4 * n
    lam = lambda_series(SL2Mat.identity(n), width)
    g = g_pow_series(n, width)
    j = j_series(n, width)
    z = CycNum.zeta(n)
    one = CycNum.one(n)

    def series_zero(label: str, s: QSeries, min_terms: int = prec):
        # a zero result certifies vanishing on its whole computed window,
        # which always starts at or below exponent 0 here
        ok = s.is_zero() and s.prec >= min_terms
        note = (
            f"exact zero through exponent {s.prec}"
            if s.is_zero()
            else "nonzero coefficient in window"
        )
        rep.add(label, 0.0 if ok else 1.0, 0.5, note)

    if n == 3:
        # j * (L(L-1)(L+z))^3 + 3^4 sqrt(-3) * (numerator)^3 = 0
        sqrt_m3 = 1 + 2 * z
        num = _prod_linear(lam, [z - 1, (z - 1) / 3, z + 1, -(z + 1)])
        den = _prod_linear(lam, [CycNum.zero(n), -one, z])
        series_zero("j-expression", j * (den**3) + (num**3).scale(81 * sqrt_m3))
        # The printed eta-quotient display reads
        # g^12 = 81(1-z)(L-1)(L+z)/L^3, but that contradicts the cube identity
        # printed a few lines below it (and independent eta numerics); the true
        # relation carries the opposite sign. Both readings are reported.
        prod = _prod_linear(lam, [-one, z]).scale(81 * (one - z))
        printed = g * lam**3 - prod
        rep.add(
            "eta-quotient formula as printed",
            0.0 if printed.is_zero() else 1.0,
            0.5,
            note="sign is inconsistent with the published cube identity",
            known_defect=True,
        )
        series_zero("eta-quotient formula (sign corrected)", g * lam**3 + prod)
        # (L g^4)^3 + (3L)^3 - (3(L+z-1))^3 = 0   [g here is already g^12]
        cube = lam**3 * g + lam**3 * 27 - _shift_poly(lam, z - 1) ** 3 * 27
        series_zero("Fermat cube identity", cube)
    else:
        i = z  # zeta_4
        num = [
            _quad(lam, -(one - 2 * i), -i),
            _quad(lam, -(2 * one - i), -i),
            _quad(lam, -one, one),
            _quad(lam, i, -one),
        ]
        den = _prod_linear(lam, [CycNum.zero(n), i, -one, i - 1, -(one - i) / 2])
        numprod = num[0] * num[1] * num[2] * num[3]
        series_zero("j-expression", j * (den**4) + (numprod**3).scale(64))
        # The lambda entering the published degree-24 identity is the level-2
        # generalized lambda with swapped basis, i.e. (x-1)/x of the classical
        # 16q product; with that convention the identity holds as printed.
        lam2 = lambda_level2_series(width)
        lhs = lam2 * (lam * _shift_poly(lam, i - 1)) ** 2
        rhs = (_shift_poly(lam, -(one - i) / 2) ** 2).scale(2 * i)
        series_zero("classical-lambda formula", lhs - rhs)
        rel = g * lam**4 + _prod_linear(lam, [i, -one, (i - 1) / 2]).scale(
            64 * (one - i)
        )
        series_zero("eta-quotient formula", rel)
        # The printed quartic reads (L g^2)^4 + (2L)^4 = (2(L+1-i))^4, which
        # contradicts the (verified) eta-quotient display above; the correct
        # right-hand side is (2(L-1+i))^4. Both readings are reported.
        quart_printed = (
            lam**4 * g + (lam**4).scale(16) - _shift_poly(lam, one - i) ** 4 * 16
        )
        rep.add(
            "Fermat quartic identity as printed",
            0.0 if quart_printed.is_zero() else 1.0,
            0.5,
            note="shift sign is inconsistent with the published eta-quotient display",
            known_defect=True,
        )
        quart = lam**4 * g + (lam**4).scale(16) - _shift_poly(lam, i - one) ** 4 * 16
        series_zero("Fermat quartic identity (sign corrected)", quart)
        # the j - classical-lambda relation validating the helper series;
        # it is invariant under the convention change, so check both
        lamc = lambda_classical_series(width)
        onep = QSeries.one(n, width)
        for tag, lc in (("classical", lamc), ("level-2 convention", lam2)):
            series_zero(
                f"j/classical-lambda relation ({tag})",
                j * lc * lc * (lc - onep) * (lc - onep)
                - ((lc * lc - lc + onep) ** 3) * 256,
                min_terms=prec - 3 * n,
            )

    rng = random.Random(20260808 + n)
    for k in range(3):
        tau = complex(rng.uniform(-0.4, 0.4), rng.uniform(0.9, 1.4))
        resid = _numeric_identity_residual(n, tau)
        rep.add(f"numeric spot check {k + 1} (tau={tau:.3f})", resid, 1e-8)
    return rep


def _prod_linear(lam: QSeries, constants) -> QSeries:
    out = None
    for c in constants:
        term = _shift_poly(lam, c)
        out = term if out is None else out * term
    return out


def _shift_poly(lam: QSeries, c) -> QSeries:
    return lam + QSeries.one(lam.level, lam.prec - min(lam.ord, 0)).scale(c)


def _quad(lam: QSeries, b, c) -> QSeries:
    """lam^2 + b lam + c."""
    one = QSeries.one(lam.level, lam.prec - min(lam.ord, 0))
    return lam * lam + lam.scale(b) + one.scale(c)


def _numeric_identity_residual(n: int, tau: complex) -> float:
    """Relative residual of the Fermat-style identity at a point, with every
    ingredient evaluated independently (eta products, E-ratios)."""
    lam = eval_lambda_numeric(SL2Mat.identity(n), n, tau, tol=1e-13)
    e = 24 // (n - 1)
    g_pow = (eta_numeric(tau) / eta_numeric(n * tau)) ** e
    if n == 3:
        z = cmath.exp(2j * cmath.pi / 3)
        lhs = lam**3 * g_pow + (3 * lam) ** 3
        rhs = (3 * (lam + z - 1)) ** 3
    else:
        lhs = lam**4 * g_pow + (2 * lam) ** 4
        rhs = (2 * (lam - 1 + 1j)) ** 4  # sign-corrected shift
    scale = abs(lhs) + abs(rhs)
    return abs(lhs - rhs) / scale if scale else 0.0


# ---------------------------------------------------------------------------
# unit circle and reciprocal-conjugation law
# ---------------------------------------------------------------------------


def unit_circle_check(n: int, angles, points=None) -> CheckReport:
    """|L(alpha)| = 1 on the unit circle; L(alpha)^-1 = conj(L(alpha/|alpha|^2))
    at arbitrary points."""
    rep = CheckReport(title=f"unit circle law, level {n}")
    ident = SL2Mat.identity(n)
    for theta in angles:
        if not 0 < theta < math.pi:
            raise ValueError("angles must lie in (0, pi)")
        alpha = cmath.exp(1j * theta)
        val = eval_lambda_numeric(ident, n, alpha, tol=1e-12)
        rep.add(f"| |L(e^(i {theta:.3f}))| - 1 |", abs(abs(val) - 1.0), 1e-9)
    for alpha in points or []:
        val = eval_lambda_numeric(ident, n, alpha, tol=1e-12)
        mirrored = alpha / abs(alpha) ** 2
        other = eval_lambda_numeric(ident, n, mirrored, tol=1e-12)
        rep.add(
            f"reciprocal-conjugation at {alpha:.3f}",
            abs(1 / val - other.conjugate()),
            1e-9,
        )
    return rep
