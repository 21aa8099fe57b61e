"""Values of the faithful parabolic characters on the long-root element.

Each value is a triple sum over i, j and s in F_{q^3} of an additive
character.  Writing s = tau^l, every monomial in the argument is a power of
tau, and the character is zeta_p raised to a twisted trace, so one term costs
a few lookups in the table ``trace_of_power[e] = Tr(c * tau^e)``.  Terms are
counted by trace value and only the final count vector becomes a cyclotomic
integer.

A slower floating-point evaluation (:func:`float_estimate`) runs through real
field addition, polynomial multiplication and Frobenius traces instead, and
serves as the cross-check.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .cyclotomic import CycInt, NotRationalInteger, cyc_to_int, pick_twist, twisted_trace_table
from .field_tower import DEFAULT_SIZE_CAP, FieldCtx, PrimePower, Tower, rel_trace_to_mid

# pairs of (i, j) are processed in chunks of roughly this many terms
_CHUNK_TERMS = 1 << 21
FLOAT_TOLERANCE = 0.25
FLOAT_ORACLE_MAX_FIELD = 1 << 12


class Family(str, enum.Enum):
    CHI16_EVEN = "chi16"
    CHI18_19_ODD = "chi18_19"
    CHI20_ODD = "chi20"

    @classmethod
    def parse(cls, name: str) -> Family:
        key = name.strip().lower()
        for fam in cls:
            if key in (fam.value, fam.name.lower()):
                return fam
        raise ValueError(f"unknown family {name!r}")

    @property
    def parity(self) -> str:
        return "even" if self is Family.CHI16_EVEN else "odd"

    @property
    def halved(self) -> bool:
        return self is Family.CHI18_19_ODD


def families_for(pp: PrimePower) -> list[Family]:
    return [fam for fam in Family if fam.parity == pp.parity]


def k_range(pp: PrimePower, family: Family) -> range:
    if family is Family.CHI20_ODD:
        return range(1, pp.q)
    return range(1, pp.q + 1)


class ClaimViolation(Exception):
    """A computed value contradicts a proven divisibility or range claim."""


class NotDivisible(ClaimViolation):
    pass


class OutOfRange(ClaimViolation):
    pass


class NonIntegral(ClaimViolation):
    pass


class Negative(ClaimViolation):
    pass


@dataclass(frozen=True)
class CharSumSpec:
    q: PrimePower
    family: Family
    k: int

    def __post_init__(self) -> None:
        if self.family.parity != self.q.parity:
            raise ValueError(f"family {self.family.value} needs {self.family.parity} q, got q={self.q.q}")
        if self.k not in k_range(self.q, self.family):
            r = k_range(self.q, self.family)
            raise ValueError(f"k={self.k} outside {r.start}..{r.stop - 1}")

    @property
    def label(self) -> str:
        return f"{self.family.value}(k={self.k})"


@dataclass
class CharSumResult:
    spec: CharSumSpec
    y: int
    m: int
    scalar_product: int
    float_estimate: float | None = None
    float_imag: float | None = None


def denominator(q: int) -> int:
    return q * (q**3 - 1)


def m_bounds(q: int, family: Family) -> tuple[int, int]:
    """Inclusive range for m; halved for the chi18/chi19 family."""
    if family.halved:
        return -((q * q - 1) // 2), q * q * (q - 1) // 2
    return -(q * q - 1), q * q * (q - 1)


def y_upper_bound(q: int, family: Family) -> int:
    b = q**3 * (q**3 - 1) * (q - 1)
    return b // 2 if family.halved else b


def term_count(q: int, family: Family) -> int:
    j = (q - 1) // 2 if family.halved else q - 1
    return (q**3 - 1) * j * q**3


def derive_m(y: int, q: int | PrimePower, family: Family) -> int:
    q = q.q if isinstance(q, PrimePower) else q
    d = denominator(q)
    if y % d:
        raise NotDivisible(f"y={y} is not divisible by q(q^3-1)={d}")
    m = y // d
    lo, hi = m_bounds(q, family)
    if not lo <= m <= hi:
        raise OutOfRange(f"m={m} outside [{lo}, {hi}]")
    return m


def scalar_product_eps2(y: int, q: int | PrimePower, family: Family) -> int:
    """Scalar product with the restricted unipotent character of degree q^7(q^4-q^2+1)."""
    q = q.q if isinstance(q, PrimePower) else q
    base = q**6 - q**4 - q**3 + q
    if family.halved:
        num, den = base + 2 * y, 2 * denominator(q)
    else:
        num, den = base + y, denominator(q)
    if num % den:
        raise NonIntegral(f"{num}/{den} is not an integer")
    sp = num // den
    if sp < 0:
        raise Negative(f"scalar product {sp} is negative")
    return sp


def default_threads() -> int:
    env = os.environ.get("TRIALITYCHECK_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


class SumContext:
    """A tower plus the chosen additive character and lookup tables.

    ``twist`` overrides the character twist (as a code in F_{q^3}); by default
    the smallest element with nonzero relative trace is used.
    """

    def __init__(self, tower: Tower, *, twist: int | None = None, threads: int | None = None):
        self.tower = tower
        self.q = tower.q
        self.p = tower.pp.p
        self.n = tower.f3.order
        self.norm_exp = tower.norm_exponent
        if twist is None:
            twist = pick_twist(tower.f3, self.q).code
        elif not rel_trace_to_mid(tower.f3.elem(twist), self.q):
            raise ValueError("twist gives a character trivial on F_q")
        self.twist_code = twist
        self.threads = threads or default_threads()
        self.trace_table = twisted_trace_table(tower.f3, twist)
        # trace_of_power[e] = Tr(c * tau^e)
        self.trace_of_power = self.trace_table[tower.tau_power_codes()]
        self._inner_cache: dict[tuple, np.ndarray] = {}

    @classmethod
    def build(cls, q: int | PrimePower, *, size_cap: int = DEFAULT_SIZE_CAP,
              threads: int | None = None, tau: int | None = None,
              twist: int | None = None) -> SumContext:
        return cls(Tower.build(q, size_cap=size_cap, tau=tau), twist=twist, threads=threads)

    def log_tau(self, code: int) -> int:
        """Exponent e with tau^e equal to the element of the given code."""
        f3 = self.tower.f3
        return int(f3.log_table[code]) * pow(self.tower.tau_log, -1, self.n) % self.n

    # -- exact kernel -------------------------------------------------------

    def _inner_counts(self, key: tuple, a_exp: Callable, a_sign: int, a_step: int,
                      b_exp: Callable, b_sign: int, jvals: np.ndarray) -> np.ndarray:
        """Count vectors of the s-sum for every (i, j), shape (n * len(j), p).

        For s = tau^l the inner term is
        a_sign*T[a_exp(i, j) + a_step*l] + b_sign*T[b_exp(i, j) + N*l]; s = 0
        contributes trace 0.
        """
        if key in self._inner_cache:
            return self._inner_cache[key]
        n, p, N = self.n, self.p, self.norm_exp
        T = self.trace_of_power
        l = np.arange(n, dtype=np.int64)
        la, lb = (a_step * l) % n, (N * l) % n
        J = len(jvals)
        rows_per_chunk = max(1, _CHUNK_TERMS // (J * n))
        starts = list(range(1, n + 1, rows_per_chunk))

        def work(i0: int) -> np.ndarray:
            i = np.arange(i0, min(i0 + rows_per_chunk, n + 1), dtype=np.int64)
            ii, jj = np.meshgrid(i, jvals, indexing="ij")
            ea = (a_exp(ii, jj) % n).reshape(-1, 1)
            eb = (b_exp(ii, jj) % n).reshape(-1, 1)
            t = (a_sign * T[(ea + la) % n] + b_sign * T[(eb + lb) % n]) % p
            P = t.shape[0]
            idx = (np.arange(P, dtype=np.int64)[:, None] * p + t).ravel()
            counts = np.bincount(idx, minlength=P * p).reshape(P, p)
            counts[:, 0] += 1
            return counts

        if self.threads > 1 and len(starts) > 1:
            with ThreadPoolExecutor(self.threads) as pool:
                parts = list(pool.map(work, starts))
        else:
            parts = [work(s) for s in starts]
        out = np.concatenate(parts)
        self._inner_cache[key] = out
        return out

    def _grid(self, jvals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        i = np.arange(1, self.n + 1, dtype=np.int64)
        ii, jj = np.meshgrid(i, jvals, indexing="ij")
        return ii.ravel(), jj.ravel()

    def _combine(self, inner: np.ndarray, shift: np.ndarray | None) -> np.ndarray:
        p = self.p
        if shift is None:
            return inner.sum(axis=0)
        total = np.zeros(p, dtype=np.int64)
        for b in range(p):
            mask = shift == b
            if mask.any():
                total += np.roll(inner[mask].sum(axis=0), b)
        return total

    def counts_even(self, k: int) -> np.ndarray:
        q, n, N = self.q, self.n, self.norm_exp
        jvals = np.arange(1, q, dtype=np.int64)
        e1 = -q * q + q + 1
        inner = self._inner_counts(
            ("even",),
            lambda i, j: e1 * i, 1, q + 1,
            lambda i, j: N * (i - j), 1,
            jvals,
        )
        xk = self.tower.xk(k)
        if not xk:
            return self._combine(inner, None)
        lk = self.log_tau(xk.code)
        ii, jj = self._grid(jvals)
        shift = self.trace_of_power[(lk + N * (2 * jj - ii)) % n]
        return self._combine(inner, shift)

    def counts_1819(self, k: int) -> np.ndarray:
        q, N = self.q, self.norm_exp
        jvals = np.arange(1, (q - 1) // 2 + 1, dtype=np.int64)
        e2 = -q * q - q + 1
        r = k % (q - 1)
        inner = self._inner_counts(
            ("1819", r),
            lambda i, j: e2 * i + N * j, -1, 1,
            lambda i, j: N * (i - j + r), -1,
            jvals,
        )
        return self._combine(inner, None)

    def counts_20(self, k: int) -> np.ndarray:
        q, n, N = self.q, self.n, self.norm_exp
        jvals = np.arange(1, q, dtype=np.int64)
        e2 = -q * q - q + 1
        high = 0 if k <= (q - 1) // 2 else 1
        inner = self._inner_counts(
            ("20", high),
            lambda i, j: e2 * i + N * j, -1, 1,
            lambda i, j: N * (i - j + high), -1,
            jvals,
        )
        ii, jj = self._grid(jvals)
        shift = self.trace_of_power[(N * (2 * jj - ii + k)) % n]
        return self._combine(inner, shift)

    def counts(self, family: Family, k: int) -> np.ndarray:
        CharSumSpec(self.tower.pp, family, k)
        if family is Family.CHI16_EVEN:
            return self.counts_even(k)
        if family is Family.CHI18_19_ODD:
            return self.counts_1819(k)
        return self.counts_20(k)

    def exact(self, family: Family, k: int) -> CycInt:
        return CycInt.from_counts(self.counts(family, k))

    # -- floating-point oracle ------------------------------------------------

    @cached_property
    def oracle(self) -> FloatOracle:
        return FloatOracle(self)


def eval_y(family: Family, k: int, ctx: SumContext) -> int:
    return cyc_to_int(ctx.exact(family, k))


def eval_y_even(k: int, ctx: SumContext) -> int:
    return eval_y(Family.CHI16_EVEN, k, ctx)


def eval_y_odd_1819(k: int, ctx: SumContext) -> int:
    return eval_y(Family.CHI18_19_ODD, k, ctx)


def eval_y_odd_20(k: int, ctx: SumContext) -> int:
    return eval_y(Family.CHI20_ODD, k, ctx)


class FloatOracle:
    """Evaluates the same sums with complex floats and table-free field arithmetic.

    Multiplication comes from a table built by polynomial multiplication,
    addition is coordinatewise, and traces are Frobenius sums.  No discrete
    logarithms or trace linearity are used.
    """

    def __init__(self, ctx: SumContext):
        f3 = ctx.tower.f3
        if f3.size > FLOAT_ORACLE_MAX_FIELD:
            raise ValueError(f"float oracle limited to fields of size <= {FLOAT_ORACLE_MAX_FIELD}")
        self.ctx = ctx
        self.f3 = f3
        self.mul = _poly_mul_table(f3)
        q, n = ctx.q, f3.order
        pw = np.empty(n, dtype=np.int64)
        pw[0] = 1
        for e in range(1, n):
            pw[e] = self.mul[pw[e - 1], ctx.tower.tau_code]
        self.tau_pow = pw
        s = np.arange(f3.size, dtype=np.int64)
        self.s_q1 = self._pow_all(s, q + 1)
        self.s_norm = self._pow_all(s, ctx.norm_exp)
        self.trace = self._frobenius_traces(ctx.twist_code)

    def _pow_all(self, s: np.ndarray, e: int) -> np.ndarray:
        acc = np.ones_like(s)
        base = s.copy()
        while e:
            if e & 1:
                acc = self.mul[acc, base]
            base = self.mul[base, base]
            e >>= 1
        return acc

    def _frobenius_traces(self, twist: int) -> np.ndarray:
        f3 = self.f3
        cur = self.mul[twist, np.arange(f3.size)]
        acc = np.zeros(f3.size, dtype=np.int64)
        for _ in range(f3.m):
            acc = f3.add_arrays(acc, cur)
            cur = self._pow_all(cur, f3.p)
        if acc.max() >= f3.p:
            raise AssertionError("Frobenius trace left the prime field")
        return acc

    def pi_pow(self, e: np.ndarray) -> np.ndarray:
        return self.tau_pow[(self.ctx.norm_exp * e) % self.f3.order]

    def estimate(self, family: Family, k: int) -> complex:
        ctx, f3 = self.ctx, self.f3
        q, n, p = ctx.q, f3.order, f3.p
        add, mul = f3.add_arrays, self.mul
        neg = lambda a: f3.codes_from_digits(-f3.digits_array(a)) if p > 2 else a
        halved = family is Family.CHI18_19_ODD
        jvals = np.arange(1, ((q - 1) // 2 if halved else q - 1) + 1, dtype=np.int64)
        s_lin = np.arange(f3.size, dtype=np.int64)
        if family is Family.CHI16_EVEN:
            xk = ctx.tower.xk(k).code
        high = int(family is Family.CHI20_ODD and k > (q - 1) // 2)
        rows = max(1, _CHUNK_TERMS // (len(jvals) * f3.size))
        total = 0j
        for i0 in range(1, n + 1, rows):
            i = np.arange(i0, min(i0 + rows, n + 1), dtype=np.int64)[:, None, None]
            j = jvals[None, :, None]
            if family is Family.CHI16_EVEN:
                a = mul[self.tau_pow[((-q * q + q + 1) * i) % n], self.s_q1[None, None, :]]
                b = mul[xk, self.pi_pow(2 * j - i)]
                c = mul[self.pi_pow(i - j), self.s_norm[None, None, :]]
                arg = add(add(a, b), c)
            else:
                lin = mul[mul[self.tau_pow[((-q * q - q + 1) * i) % n], self.pi_pow(j)], s_lin[None, None, :]]
                shift = i - j + (k if halved else high)
                nrm = mul[self.pi_pow(shift), self.s_norm[None, None, :]]
                arg = add(neg(lin), neg(nrm))
                if not halved:
                    arg = add(self.pi_pow(2 * j - i + k), arg)
            t = self.trace[arg]
            total += complex(np.exp(2j * np.pi * t / p).sum())
        return total


def _poly_mul_table(f: FieldCtx) -> np.ndarray:
    """Full multiplication table from polynomial-basis matrices."""
    codes = np.arange(f.size, dtype=np.int64)
    digits = f.digits_array(codes)
    table = np.empty((f.size, f.size), dtype=np.int64)
    for a in range(f.size):
        cols = [f.digits(f.mul_codes_poly(a, f.p**i)) for i in range(f.m)]
        mat = np.array(cols, dtype=np.int64)  # row i = digits(a * x^i)
        table[a] = f.codes_from_digits(digits @ mat)
    return table


def float_estimate(spec: CharSumSpec, ctx: SumContext) -> complex:
    return ctx.oracle.estimate(spec.family, spec.k)


def evaluate(spec: CharSumSpec, ctx: SumContext, *, with_float: bool = False) -> CharSumResult:
    """Exact value, quotient m and scalar product; raises on a violated claim."""
    y = eval_y(spec.family, spec.k, ctx)
    q = spec.q.q
    if y > y_upper_bound(q, spec.family):
        raise OutOfRange(f"y={y} exceeds the upper bound {y_upper_bound(q, spec.family)}")
    m = derive_m(y, q, spec.family)
    sp = scalar_product_eps2(y, q, spec.family)
    res = CharSumResult(spec, y, m, sp)
    if with_float:
        z = float_estimate(spec, ctx)
        res.float_estimate, res.float_imag = z.real, z.imag
    return res


@dataclass
class AppendixRow:
    spec: CharSumSpec
    status: str
    result: CharSumResult | None = None
    reason: str = ""
    matches_remark: bool | None = None


@dataclass
class AppendixReport:
    q: PrimePower
    rows: list[AppendixRow] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return all(r.status == "verified" for r in self.rows)


def verify_one(spec: CharSumSpec, ctx: SumContext, *, with_float: bool | None = None) -> AppendixRow:
    """Evaluate one sum and record, rather than raise, any violated constraint."""
    if with_float is None:
        with_float = ctx.tower.f3.size <= FLOAT_ORACLE_MAX_FIELD
    row = AppendixRow(spec, "verified")
    try:
        row.result = evaluate(spec, ctx, with_float=with_float)
    except (ClaimViolation, NotRationalInteger) as exc:
        row.status, row.reason = "violated", f"{type(exc).__name__}: {exc}"
        return row
    r = row.result
    if with_float and not (abs(r.float_estimate - r.y) < FLOAT_TOLERANCE
                           and abs(r.float_imag) < FLOAT_TOLERANCE):
        row.status = "violated"
        row.reason = f"float estimate {r.float_estimate:+.4f}{r.float_imag:+.4f}i disagrees"
    if spec.family is Family.CHI16_EVEN and spec.k == 1:
        row.matches_remark = r.y == denominator(spec.q.q)
        if not row.matches_remark:
            row.status, row.reason = "violated", f"y_1={r.y} differs from q(q^3-1)"
    return row


def verify_appendix(q: int | PrimePower, ctx: SumContext | None = None, *,
                    with_float: bool | None = None) -> AppendixReport:
    """Evaluate every family and index valid at q and check all constraints.

    The float cross-check runs by default when the top field is small enough
    for the oracle's multiplication table.
    """
    pp = q if isinstance(q, PrimePower) else PrimePower.from_q(q)
    ctx = ctx or SumContext.build(pp)
    report = AppendixReport(pp)
    for fam in families_for(pp):
        for k in k_range(pp, fam):
            report.rows.append(verify_one(CharSumSpec(pp, fam, k), ctx, with_float=with_float))
    return report


def workload_terms(q: int) -> int:
    """Rough total number of terms for a full verification at q."""
    return (q**3 - 1) * (q - 1) * q**3 * q
