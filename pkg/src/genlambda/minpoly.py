"""Construction and verification of the minimal polynomial F(X, Y).

F(X, j) = prod over the coset transversal of (X - lambda∘A), assembled as a
monic degree-d_N polynomial in X whose coefficients are then recognized as
polynomials in j. Coefficient series of the product are supported on
exponents divisible by N, so after the per-cusp orbit products the tree
works on a compressed q^N-grid representation.

Window bookkeeping is exact throughout; the leaf precision adds the total
pole mass N*ell so the final windows still reach the requested target.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycNum
from .forms import j_series
from .lam import lambda_leading, lambda_series
from .modgroup import cusp_reps, degree_dn, nu_pair, nu_statistics
from .polyk import (
    deg,
    monic_from_roots,
    nth_root_monic,
    peval,
    pscale,
    squarefree_certificate,
    trim,
)
from .qseries import QSeries, _mul_windows, xpoly_mul_windows

FORMAT_VERSION = 1


class GridSupportError(ValueError):
    """A series that must live on the q^N grid has an off-grid coefficient."""


class ReductionError(ValueError):
    """Recognition of a series as a polynomial in j left a nonzero remainder."""


class PrecisionError(ValueError):
    """Computed windows do not reach the precision the result requires."""


# ---------------------------------------------------------------------------
# compressed q^N-grid series: plain tuples (ord, prec, coeffs) in grid units
# ---------------------------------------------------------------------------


def _c_norm(level, og, pg, coeffs):
    k = 0
    coeffs = list(coeffs)
    while k < len(coeffs) and coeffs[k].is_zero():
        k += 1
    if k == len(coeffs):
        return (pg, pg, ())
    return (og + k, pg, tuple(coeffs[k:]))


def _c_add(level, a, b):
    ao, ap, ac = a
    bo, bp, bc = b
    pg = min(ap, bp)
    og = min(ao, bo, pg)
    zero = CycNum.zero(level)
    out = [zero] * (pg - og)
    for (o, _, cs) in (a, b):
        for idx, c in enumerate(cs, start=o):
            if idx >= pg:
                break
            out[idx - og] = out[idx - og] + c
    return _c_norm(level, og, pg, out)


def _c_mul(level, a, b):
    return _mul_windows(level, a, b)


def _c_neg(a):
    return (a[0], a[1], tuple(-c for c in a[2]))


def _c_scale(level, a, c: CycNum):
    if c.is_zero():
        return (a[1], a[1], ())
    return (a[0], a[1], tuple(c * x for x in a[2]))


def _c_truncate(a, pg_new):
    og, pg, cs = a
    if pg_new >= pg:
        return a
    if pg_new <= og:
        return (pg_new, pg_new, ())
    return _c_norm(None, og, pg_new, cs[: pg_new - og])


def _compress(s: QSeries):
    """Dense series -> grid form; hard error on off-grid support."""
    n = s.level
    for k, c in s.items():
        if k % n != 0:
            raise GridSupportError(
                f"nonzero coefficient at exponent {k} (level {n}); "
                "expected support on multiples of N"
            )
    pg = (s.prec - 1) // n + 1
    if s.is_zero():
        return (pg, pg, ())
    og = s.ord // n
    coeffs = []
    for e in range(og, pg):
        k = e * n
        coeffs.append(s.coeff(k) if s.ord <= k < s.prec else CycNum.zero(n))
    return _c_norm(n, og, pg, coeffs)


def _decompress(level, a) -> QSeries:
    og, pg, cs = a
    prec = (pg - 1) * level + 1
    if not cs:
        return QSeries.zero(level, prec)
    ord_ = og * level
    zero = CycNum.zero(level)
    dense = []
    for idx, c in enumerate(cs):
        if idx:
            dense.extend([zero] * (level - 1))
        dense.append(c)
    dense.extend([zero] * (prec - ord_ - len(dense)))
    return QSeries(level, ord_, dense, prec)


# ---------------------------------------------------------------------------
# polynomials in X with series coefficients (ascending X)
# ---------------------------------------------------------------------------


def _xp_mul_dense(p, q):
    level = p[0].level
    pw = [(s.ord, s.prec, s.coeffs) for s in p]
    qw = [(s.ord, s.prec, s.coeffs) for s in q]
    return [
        QSeries(level, o, cs, pr) for (o, pr, cs) in xpoly_mul_windows(level, pw, qw)
    ]


def _xp_mul_compact(level, p, q):
    return xpoly_mul_windows(level, p, q)


def _orbit_poly(n: int, rep_pair, convention: str, leaf_prec: int, one_prec: int):
    """prod_{i=0}^{N-1} (X - lambda∘(A T^i)) for the cusp's fixed matrix A,
    computed densely, grid-checked, and returned compressed (ascending X)."""
    rep = next(r for r in cusp_reps(n, convention) if r.pair == tuple(rep_pair))
    base = lambda_series(rep.matrix, leaf_prec)
    one = QSeries.one(n, one_prec)
    poly = [one]
    for i in range(n):
        f = base if i == 0 else base.twist(i)
        poly = _xp_mul_dense(poly, [-f, one])
    return [_compress(c) for c in poly]


def _orbit_worker(args):
    return _orbit_poly(*args)


def _tree_mul_compact(level, polys):
    if len(polys) == 1:
        return polys[0]
    mid = len(polys) // 2
    left = _tree_mul_compact(level, polys[:mid])
    right = _tree_mul_compact(level, polys[mid:])
    return _xp_mul_compact(level, left, right)


def _product_poly_compact(
    n: int, prec: int | None = None, convention: str = "min", threads: int = 1
):
    """Compact coefficients of prod_{A in transversal} (X - lambda∘A).

    Returns (coeffs ascending in X, meta) where meta carries d, ell, t and the
    the resolved target/leaf precisions.
    """
    if n < 3:
        raise ValueError("level must be >= 3")
    ell, t = nu_statistics(n)
    d = degree_dn(n)
    min_prec = n * (ell + 2)
    target = min_prec if prec is None else int(prec)
    if target < min_prec:
        raise ValueError(
            f"precision {target} below the minimum heuristic {min_prec} for level {n}"
        )
    leaf_prec = target + n * ell + 2 * n
    one_prec = leaf_prec + n * ell + n
    reps = cusp_reps(n, convention)
    tasks = [(n, r.pair, convention, leaf_prec, one_prec) for r in reps]
    orbit_polys = None
    if threads > 1:
        try:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=threads) as pool:
                orbit_polys = list(pool.map(_orbit_worker, tasks))
        except Exception:
            orbit_polys = None  # pool unavailable; fall back to serial
    if orbit_polys is None:
        orbit_polys = [_orbit_poly(*task) for task in tasks]
    coeffs = _tree_mul_compact(n, orbit_polys)
    if len(coeffs) != d + 1:
        raise AssertionError("product degree mismatch")
    target_g = (target - 1) // n + 1
    out = []
    for c in coeffs:
        if c[1] < target_g:
            raise PrecisionError(
                f"coefficient window reaches only {c[1]} grid terms; "
                f"{target_g} required"
            )
        out.append(_c_truncate(c, target_g))
    meta = {
        "d": d,
        "ell": ell,
        "t": t,
        "target": target,
        "target_g": target_g,
        "leaf_prec": leaf_prec,
    }
    return out, meta


def product_poly(
    n: int, prec: int | None = None, convention: str = "min", threads: int = 1
) -> list[QSeries]:
    """The d_N + 1 coefficient series of the transversal product, densely
    represented in q (index = power of X), each supported on the N-grid."""
    coeffs, _ = _product_poly_compact(n, prec, convention, threads)
    return [_decompress(n, c) for c in coeffs]


# ---------------------------------------------------------------------------
# recognition of grid series as polynomials in j
# ---------------------------------------------------------------------------


def _j_powers_compact(n: int, dense_prec: int, max_pow: int):
    j = _compress(j_series(n, dense_prec))
    powers = [(0, j[1] + 1, (CycNum.one(n),) + (CycNum.zero(n),) * j[1])]  # j^0 = 1
    cur = None
    for m in range(1, max_pow + 1):
        cur = j if m == 1 else _c_mul(n, cur, j)
        powers.append(cur)
    return powers


def _reduce_compact(n: int, c, j_powers, max_pow: int):
    og, pg, cs = c
    coeff_out: dict[int, CycNum] = {}
    cur = c
    while cur[2] and cur[0] < 0:
        m = -cur[0]
        if m > max_pow:
            raise ReductionError(
                f"pole order {m} exceeds the expected bound {max_pow}"
            )
        lead = cur[2][0]
        coeff_out[m] = lead
        cur = _c_add(n, cur, _c_neg(_c_scale(n, j_powers[m], lead)))
    if cur[2] and cur[0] == 0:
        coeff_out[0] = cur[2][0]
        zero = CycNum.zero(n)
        const = (0, cur[1], (-cur[2][0],) + (zero,) * (cur[1] - 1))
        cur = _c_add(n, cur, const)
    if cur[2]:
        raise ReductionError(
            f"nonzero remainder of order {cur[0] * n} after j-reduction "
            "(insufficient precision or input not a polynomial in j)"
        )
    if not coeff_out:
        return ()
    top = max(coeff_out)
    zero = CycNum.zero(n)
    return trim(tuple(coeff_out.get(m, zero) for m in range(top + 1)))


def reduce_to_j(f: QSeries):
    """Write a grid-supported series exactly as a polynomial in j.

    Returns the ascending coefficient tuple P with P(j) = f on the window;
    raises ReductionError if a nonzero remainder survives, GridSupportError
    off the grid. The window must reach at least N beyond the constant term
    so the zero-remainder check is meaningful.
    """
    n = f.level
    if f.prec < n + 1:
        raise PrecisionError(
            "window must reach at least N beyond the constant term"
        )
    c = _compress(f)
    max_pow = max(1, -min(c[0], 0))
    dense_prec = max(f.prec + n * (max_pow + 1), n * (max_pow + 2))
    j_powers = _j_powers_compact(n, dense_prec, max_pow)
    return _reduce_compact(n, c, j_powers, max_pow)


# ---------------------------------------------------------------------------
# the bivariate polynomial and its construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BivarPoly:
    """F(X, Y) = sum_i P[i](Y) X^(d-i), monic in X, with P[i] over K_N."""

    level: int
    d: int
    ell: int
    t: int
    prec: int | None
    P: tuple[tuple[CycNum, ...], ...]

    def y_degree(self) -> int:
        return max((deg(p) for p in self.P), default=-1)

    def p_poly(self, i: int) -> tuple[CycNum, ...]:
        return self.P[i]

    def q_poly(self, m: int) -> tuple[CycNum, ...]:
        """Q_m(X): the coefficient of Y^(ell - m), ascending in X."""
        want = self.ell - m
        zero = CycNum.zero(self.level)
        out = []
        for x_pow in range(self.d + 1):
            p = self.P[self.d - x_pow]
            out.append(p[want] if want < len(p) else zero)
        return trim(tuple(out))

    def specialize(self, y) -> tuple[CycNum, ...]:
        """F(X, y) as a univariate polynomial in X (ascending)."""
        y = y if isinstance(y, CycNum) else CycNum.from_rational(self.level, y)
        out = []
        for x_pow in range(self.d + 1):
            out.append(peval(self.P[self.d - x_pow], y))
        return trim(tuple(out))

    def to_json_obj(self) -> dict:
        return {
            "N": self.level,
            "dN": self.d,
            "ellN": self.ell,
            "tN": self.t,
            "P": [
                {"i": i, "poly": [c.to_json_obj() for c in p]}
                for i, p in enumerate(self.P)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json_obj(obj: dict) -> "BivarPoly":
        n = int(obj["N"])
        entries = sorted(obj["P"], key=lambda e: int(e["i"]))
        polys = tuple(
            trim(tuple(CycNum.from_json_obj(c) for c in e["poly"])) for e in entries
        )
        return BivarPoly(
            level=n,
            d=int(obj["dN"]),
            ell=int(obj["ellN"]),
            t=int(obj["tN"]),
            prec=None,
            P=polys,
        )


def check_root_identity(F: BivarPoly, matrices=None, window: int | None = None) -> bool:
    """Verify F(lambda∘A-series, j-series) = 0 on a meaningful window.

    Defaults to the identity matrix; raises PrecisionError if the residual
    window cannot cover [-N*ell, window).
    """
    from .modgroup import SL2Mat

    n = F.level
    ell = max(F.ell, 1)
    w = window if window is not None else 3 * n
    margin = n * ell + 2 * n
    prec = w + margin
    if matrices is None:
        matrices = [SL2Mat.identity(n)]
    jp = _j_powers_compact(n, prec, ell)
    p_series = []
    for i in range(F.d + 1):
        poly = F.P[i]
        acc = None
        for m, c in enumerate(poly):
            if c.is_zero():
                continue
            term = _c_scale(n, jp[m], c)
            acc = term if acc is None else _c_add(n, acc, term)
        p_series.append(None if acc is None else _decompress(n, acc))
    for mat in matrices:
        lam = lambda_series(mat, prec)
        v = None
        for i in range(F.d + 1):
            v = v * lam if v is not None else None
            if p_series[i] is not None:
                v = p_series[i] if v is None else v + p_series[i]
        if v is None or not v.is_zero():
            return False
        if v.prec < w:
            raise PrecisionError("residual window too small to be conclusive")
    return True


_MEMO: dict = {}


def build_F(
    n: int,
    prec: int | None = None,
    *,
    convention: str = "min",
    threads: int = 1,
    cache_dir: str | None = None,
    self_check: bool = True,
) -> BivarPoly:
    """Build F(X, Y) for level N, verify F(lambda, j) = 0, and cache it.

    For N = 6 the construction still runs but none of the structure theorems
    are claimed (see verify_theorem1).
    """
    ell, t = nu_statistics(n)
    min_prec = n * (ell + 2)
    target = min_prec if prec is None else int(prec)
    key = (n, target, convention)
    if key in _MEMO:
        return _MEMO[key]
    cache_path = None
    if cache_dir:
        cache_path = os.path.join(
            cache_dir, f"F_N{n}_p{target}_v{FORMAT_VERSION}.json"
        )
        loaded = _load_cached(cache_path, n, target)
        if loaded is not None:
            _MEMO[key] = loaded
            return loaded
    coeffs, meta = _product_poly_compact(n, target, convention, threads)
    d = meta["d"]
    jp = _j_powers_compact(n, meta["leaf_prec"], ell)
    polys = []
    for i in range(d + 1):
        polys.append(_reduce_compact(n, coeffs[d - i], jp, ell))
    F = BivarPoly(level=n, d=d, ell=ell, t=t, prec=target, P=tuple(polys))
    if self_check and not check_root_identity(F):
        raise AssertionError("self-check failed: F(lambda, j) != 0")
    if cache_path:
        os.makedirs(cache_dir, exist_ok=True)
        tmp = cache_path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(F.to_json())
        os.replace(tmp, cache_path)
    _MEMO[key] = F
    return F


def _load_cached(path: str, n: int, target: int) -> BivarPoly | None:
    if not path or not os.path.exists(path):
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
        F = BivarPoly.from_json_obj(obj)
        F = BivarPoly(
            level=F.level, d=F.d, ell=F.ell, t=F.t, prec=target, P=F.P
        )
        if F.level != n:
            return None
        if not check_root_identity(F):
            return None
        return F
    except Exception:
        return None


# ---------------------------------------------------------------------------
# theorem verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClauseResult:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class Theorem1Report:
    level: int
    claimed: bool
    clauses: tuple[ClauseResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses)

    def lines(self) -> list[str]:
        out = []
        if not self.claimed:
            out.append(
                f"level {self.level}: structure theorems are not claimed at this level; "
                "results reported for information only"
            )
        for c in self.clauses:
            out.append(f"[{'PASS' if c.ok else 'FAIL'}] {c.name}: {c.detail}")
        return out


def verify_theorem1(F: BivarPoly) -> Theorem1Report:
    """Check the five structural facts about the P_i."""
    n, d = F.level, F.d
    clauses = []

    tail = F.P[d]
    ok_a = tail == (CycNum.one(n),)
    clauses.append(ClauseResult("monic_tail", ok_a, f"P_{d} = {'1' if ok_a else 'NOT 1'}"))

    bad = [
        i
        for i in range(d + 1)
        if F.P[d - i] != tuple(c.conj() for c in F.P[i])
    ]
    clauses.append(
        ClauseResult(
            "conjugate_symmetry",
            not bad,
            "P_(d-i) = conj(P_i) for all i" if not bad else f"fails at i in {bad[:5]}",
        )
    )

    bad = [i for i in range(1, d + 1) if 2 * deg(F.P[i]) >= i]
    consts = deg(F.P[1]) <= 0 and deg(F.P[2]) <= 0
    clauses.append(
        ClauseResult(
            "degree_bound",
            not bad and consts,
            "deg P_i < i/2; P_1, P_2 constants"
            if not bad and consts
            else f"violations at i in {bad[:5]}",
        )
    )

    w = (1 - CycNum.zeta(n)) ** 3
    scale = CycNum.one(n)
    bad = []
    for i in range(d + 1):
        if i:
            scale = scale * w
        if not all((scale * c).is_integral() for c in F.P[i]):
            bad.append(i)
    clauses.append(
        ClauseResult(
            "integrality",
            not bad,
            "(1-z)^(3i) P_i has integral coefficients"
            if not bad
            else f"fails at i in {bad[:5]}",
        )
    )

    degs = [deg(p) for p in F.P]
    max_deg = max(degs)
    idx = n * F.t
    ok_e = idx <= d and degs[idx] == F.ell and max_deg == F.ell
    clauses.append(
        ClauseResult(
            "max_degree_index",
            ok_e,
            f"max deg P_i = {max_deg} (= ell), attained at i = N*t = {idx}"
            if ok_e
            else f"max deg {max_deg} at {degs.index(max_deg)}, deg P_(N t) = "
            f"{degs[idx] if idx <= d else 'n/a'}, ell = {F.ell}",
        )
    )

    return Theorem1Report(level=n, claimed=(n != 6), clauses=tuple(clauses))


# ---------------------------------------------------------------------------
# specializations in Y
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorCertificate:
    kind: str  # "cube" | "square" | "squarefree"
    ok: bool
    y: object
    base: tuple | None
    multiplicity: int
    detail: str


def specialize_and_factor(F: BivarPoly, y) -> FactorCertificate:
    """Certify the factorization shape of F(X, y).

    y = 0: a perfect cube H1^3 with deg H1 = d/3 and H1(0) != 0.
    y = 1728: a perfect square H2^2 with deg H2 = d/2 and H2(0) != 0.
    other y: gcd(F(X,y), dF/dX) = 1 via reduction mod split primes.
    """
    n = F.level
    f = F.specialize(y)
    y_val = Fraction(y) if not isinstance(y, CycNum) else y
    if y_val == 0 or y_val == 1728:
        mult = 3 if y_val == 0 else 2
        base = nth_root_monic(f, mult, n)
        ok = base is not None and base[0] and deg(base) == F.d // mult
        detail = (
            f"F(X,{y_val}) = H^{mult}, deg H = {F.d // mult}, H(0) != 0"
            if ok
            else f"F(X,{y_val}) is not a perfect {mult}-th power of the expected shape"
        )
        return FactorCertificate(
            kind="cube" if mult == 3 else "square",
            ok=bool(ok),
            y=y_val,
            base=base,
            multiplicity=mult,
            detail=detail,
        )
    ok = squarefree_certificate(f, n)
    return FactorCertificate(
        kind="squarefree",
        ok=ok,
        y=y_val,
        base=None,
        multiplicity=1,
        detail=f"gcd(F(X,y), F'(X,y)) = 1 certified mod split primes (y = {y_val})"
        if ok
        else f"no coprime reduction found (y = {y_val})",
    )


def rational_j_expression(F: BivarPoly) -> tuple[tuple, tuple]:
    """For ell = 1 levels: the pair (Q0, Q1) with F = Q0(X) Y + Q1(X), so
    j = -Q1(lambda)/Q0(lambda)."""
    if F.ell != 1:
        raise ValueError(f"level {F.level} has ell = {F.ell}; lambda generates only for ell = 1")
    return F.q_poly(0), F.q_poly(1)


def q0_structure(F: BivarPoly) -> tuple[bool, str]:
    """Exact check of Q0 = c X^(N t) prod_k (X - v_k)^N over the cusp values
    v_k of the lambda function at its order-zero cusps."""
    n = F.level
    values = []
    for rep in cusp_reps(n):
        if nu_pair(rep.a, rep.c, n) == 0:
            coeff, order = lambda_leading(rep.matrix)
            assert order == 0
            values.append(coeff)
    q0 = F.q_poly(0)
    expected_deg = F.d - n * F.t
    if deg(q0) != expected_deg:
        return False, f"deg Q0 = {deg(q0)}, expected {expected_deg}"
    c = q0[-1]
    shell = monic_from_roots(n, values, multiplicity=n)
    shifted = tuple([CycNum.zero(n)] * (n * F.t)) + shell
    expected = pscale(shifted, c)
    if trim(q0) != trim(expected):
        return False, "Q0 does not match c X^(N t) prod (X - v_k)^N"
    return True, (
        f"Q0 = c X^{n * F.t} prod (X - v_k)^{n} with {len(values)} cusp values, all in K_N"
    )
