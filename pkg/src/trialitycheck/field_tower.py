"""Finite fields F_p ⊂ F_q ⊂ F_{q^3} with deterministic choices.

Every field is F_p[x]/(f) where f is the smallest monic irreducible of its
degree, elements are encoded by the integer whose base-p digits are the
polynomial-basis coordinates (constant term least significant), and the
multiplicative generator is the smallest element of full order.  Nothing
depends on external Conway-polynomial tables, so two builds with the same
(p, m) agree bit for bit.

Elements are handled internally as these integer codes; :class:`FieldElem`
wraps a code for the scalar API.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

DEFAULT_SIZE_CAP = 1 << 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimePower:
    p: int
    f: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.f < 1:
            raise ValueError(f"exponent must be positive, got {self.f}")

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def parity(self) -> str:
        return "even" if self.p == 2 else "odd"

    @classmethod
    def from_q(cls, q: int) -> PrimePower:
        """Factor ``q`` as p^f; raise ValueError unless it is a prime power."""
        if q < 2:
            raise ValueError(f"{q} is not a prime power")
        primes = prime_factors(q)
        if len(primes) != 1:
            raise ValueError(f"{q} is not a prime power")
        p = primes[0]
        f = 0
        while q > 1:
            q //= p
            f += 1
        return cls(p, f)

    def __str__(self) -> str:
        return str(self.q)


def prime_powers_upto(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if len(prime_factors(q)) == 1]


# -- dense polynomials over F_p, constant term first --------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim(list(b))
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return a


def _pmulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, f, p)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: f has no factor of degree <= deg(f)/2."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    h = [0, 1]
    for _ in range(m // 2):
        # h <- h^p mod f
        acc, base, e = [1], h, p
        while e:
            if e & 1:
                acc = _pmulmod(acc, base, f, p)
            base = _pmulmod(base, base, f, p)
            e >>= 1
        h = acc
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, diff, p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m, ordered as a base-p integer."""
    for low in range(p**m):
        cand = [(low // p**i) % p for i in range(m)] + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# -- field contexts -----------------------------------------------------------


class FieldCtx:
    """The field F_{p^m} with precomputed exp/log tables.

    Construct with :func:`build_field`.  Immutable after construction.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.modulus = modulus
        self.size = p**m
        self.order = self.size - 1
        self._pw = np.array([p**i for i in range(m)], dtype=np.int64)
        self.generator_code = self._find_generator()
        self.exp_table = self._build_exp_table()
        log = np.full(self.size, -1, dtype=np.int64)
        log[self.exp_table] = np.arange(self.order, dtype=np.int64)
        self.log_table = log
        self.exp_table.setflags(write=False)
        self.log_table.setflags(write=False)

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={self.modulus})"

    # encoding helpers
    def digits(self, code: int) -> list[int]:
        return [(code // self.p**i) % self.p for i in range(self.m)]

    def from_digits(self, digits: Sequence[int]) -> int:
        return sum((c % self.p) * self.p**i for i, c in enumerate(digits))

    def digits_array(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self._pw) % self.p

    def codes_from_digits(self, digits: np.ndarray) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self._pw

    # scalar arithmetic on codes
    def add_codes(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = self.digits(a), self.digits(b)
        return self.from_digits([x + y for x, y in zip(da, db)])

    def neg_code(self, a: int) -> int:
        return self.from_digits([-x for x in self.digits(a)])

    def mul_codes_poly(self, a: int, b: int) -> int:
        """Multiply by polynomial reduction (no tables)."""
        r = _pmulmod(self.digits(a), self.digits(b), self.modulus, self.p)
        return self.from_digits(r)

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % self.order])

    def pow_code(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % self.order])

    def pow_code_poly(self, a: int, e: int) -> int:
        """Square-and-multiply using polynomial multiplication only."""
        if e < 0:
            if a == 0:
                raise ZeroDivisionError("negative power of zero")
            e %= self.order
        acc, base = 1, a
        while e:
            if e & 1:
                acc = self.mul_codes_poly(acc, base)
            base = self.mul_codes_poly(base, base)
            e >>= 1
        return acc

    # vectorised arithmetic on code arrays
    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        return self.codes_from_digits(self.digits_array(a) + self.digits_array(b))

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        la, lb = self.log_table[a], self.log_table[b]
        out = self.exp_table[(la + lb) % self.order]
        return np.where((a == 0) | (b == 0), 0, out)

    # element API
    def elem(self, code: int) -> FieldElem:
        if not 0 <= code < self.size:
            raise ValueError(f"code {code} outside field of size {self.size}")
        return FieldElem(self, code)

    def from_coeffs(self, coeffs: Sequence[int]) -> FieldElem:
        if len(coeffs) > self.m:
            coeffs = _pmod(coeffs, self.modulus, self.p)
        return FieldElem(self, self.from_digits(coeffs))

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    @property
    def x(self) -> FieldElem:
        """Class of the indeterminate; generates the field over F_p."""
        return self.from_coeffs([0, 1])

    @property
    def generator(self) -> FieldElem:
        return FieldElem(self, self.generator_code)

    def elements(self) -> Iterator[FieldElem]:
        """All elements in enumeration order (index 1 is zero)."""
        for code in range(self.size):
            yield FieldElem(self, code)

    def element_at(self, index: int) -> FieldElem:
        """1-based enumeration: ``element_at(1)`` is zero."""
        return self.elem(index - 1)

    # construction internals
    def _find_generator(self) -> int:
        if self.order == 1:
            return 1
        cofactors = [self.order // r for r in prime_factors(self.order)]
        for code in range(1, self.size):
            if all(self.pow_code_poly(code, c) != 1 for c in cofactors):
                return code
        raise AssertionError("multiplicative group is cyclic")  # unreachable

    def _mul_matrix(self, code: int) -> np.ndarray:
        # column i is code * x^i, so digits(code*v) = M @ digits(v)
        cols = [self.digits(self.mul_codes_poly(code, self.p**i)) for i in range(self.m)]
        return np.array(cols, dtype=np.int64).T

    def _build_exp_table(self) -> np.ndarray:
        n = self.order
        block = max(1, int(np.ceil(np.sqrt(n))))
        first = [1]
        for _ in range(min(block, n) - 1):
            first.append(self.mul_codes_poly(first[-1], self.generator_code))
        step = self._mul_matrix(self.pow_code_poly(self.generator_code, block))
        cur = self.digits_array(np.array(first, dtype=np.int64))
        chunks = []
        total = 0
        while total < n:
            chunks.append(self.codes_from_digits(cur))
            total += len(cur)
            cur = (cur @ step.T) % self.p
        return np.concatenate(chunks)[:n].astype(np.int64)


def build_field(p: int | PrimePower, m: int, *, size_cap: int = DEFAULT_SIZE_CAP) -> FieldCtx:
    """Build F_{p^m} with the smallest monic irreducible modulus.

    ``p`` may be given as a :class:`PrimePower`, in which case its
    characteristic is used.
    """
    if isinstance(p, PrimePower):
        p = p.p
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if m < 1:
        raise ValueError(f"extension degree must be positive, got {m}")
    if p**m > size_cap:
        raise ValueError(f"field of size {p}^{m} exceeds size cap {size_cap}")
    return FieldCtx(p, m, smallest_irreducible(p, m))


class FieldElem:
    """An element of a :class:`FieldCtx`, stored as its integer code."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = int(code)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.ctx.digits(self.code))

    @property
    def index(self) -> int:
        return self.code + 1

    def _check(self, other: FieldElem) -> None:
        if other.ctx is not self.ctx:
            raise ValueError("elements belong to different fields")

    def __add__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.ctx, self.ctx.add_codes(self.code, other.code))

    def __neg__(self) -> FieldElem:
        return FieldElem(self.ctx, self.ctx.neg_code(self.code))

    def __sub__(self, other: FieldElem) -> FieldElem:
        return self + (-other)

    def __mul__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.ctx, self.ctx.mul_codes(self.code, other.code))

    def __pow__(self, e: int) -> FieldElem:
        return FieldElem(self.ctx, self.ctx.pow_code(self.code, e))

    def __truediv__(self, other: FieldElem) -> FieldElem:
        return self * other ** -1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.ctx is other.ctx and self.code == other.code

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return f"FieldElem({list(self.coeffs)})"

    def multiplicative_order(self) -> int:
        if self.code == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.ctx.order
        return n // np.gcd(n, int(self.ctx.log_table[self.code]))


def ff_arith(a: FieldElem, b: FieldElem | int, op: str) -> FieldElem:
    """Dispatch ``add``, ``mul`` or ``pow`` (b is then an integer exponent)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown operation {op!r}")


def abs_trace(a: FieldElem) -> int:
    """Absolute trace a + a^p + ... + a^(p^(m-1)) as a residue mod p."""
    ctx = a.ctx
    acc, cur = 0, a.code
    for _ in range(ctx.m):
        acc = ctx.add_codes(acc, cur)
        cur = ctx.pow_code(cur, ctx.p)
    if acc >= ctx.p:
        raise AssertionError("trace left the prime field")
    return acc


def frobenius(a: FieldElem, q: int) -> FieldElem:
    return a**q


def rel_trace_to_mid(s: FieldElem, q: int) -> FieldElem:
    """Relative trace s + s^q + s^(q^2) from F_{q^3} down to F_q."""
    r = s + s**q + s ** (q * q)
    if r**q != r:
        raise AssertionError("relative trace not fixed by Frobenius")
    return r


def subfield_norm(s: FieldElem, q: int) -> FieldElem:
    """The norm s^(q^2+q+1) from F_{q^3} onto F_q."""
    return s ** (q * q + q + 1)


def find_tau(ctx3: FieldCtx) -> FieldElem:
    return ctx3.generator


class Embedding:
    """The embedding F_q -> F_{q^3} sending x to the smallest root of F_q's modulus."""

    def __init__(self, small: FieldCtx, big: FieldCtx):
        if small.p != big.p:
            raise ValueError("fields have different characteristic")
        if big.m % small.m:
            raise ValueError(f"degree {small.m} does not divide {big.m}")
        self.small, self.big = small, big
        self.root_code = self._smallest_root()
        powers = [1]
        for _ in range(small.m - 1):
            powers.append(big.mul_codes(powers[-1], self.root_code))
        table = np.zeros(small.size, dtype=np.int64)
        for code in range(small.size):
            acc = 0
            for c, pw in zip(small.digits(code), powers):
                for _ in range(c):
                    acc = big.add_codes(acc, pw)
            table[code] = acc
        table.setflags(write=False)
        self.table = table

    def _smallest_root(self) -> int:
        big, mod = self.big, self.small.modulus
        # all roots lie in the copy of the small field: 0 and the (big/small)-norm image
        step = big.order // (self.small.size - 1) if self.small.size > 1 else 0
        cands = {0} | {int(big.exp_table[(step * j) % big.order]) for j in range(self.small.order)}
        for code in sorted(cands):
            acc = 0
            for c in reversed(mod):
                acc = big.add_codes(big.mul_codes(acc, code), c % big.p)
            if acc == 0:
                return code
        raise AssertionError("irreducible modulus has no root in the extension")

    def __call__(self, a: FieldElem) -> FieldElem:
        if a.ctx is not self.small:
            raise ValueError("element not in the source field")
        return FieldElem(self.big, int(self.table[a.code]))


def embed(a: FieldElem, ctx_q: FieldCtx, ctx3: FieldCtx) -> FieldElem:
    return Embedding(ctx_q, ctx3)(a)


@dataclass(frozen=True)
class Tower:
    """F_q and F_{q^3} together with tau, pi and the embedding of F_q."""

    pp: PrimePower
    fq: FieldCtx
    f3: FieldCtx
    tau_code: int

    @classmethod
    def build(cls, q: int | PrimePower, *, size_cap: int = DEFAULT_SIZE_CAP,
              tau: int | None = None) -> Tower:
        """``tau`` optionally overrides the generator code (must have full order)."""
        pp = q if isinstance(q, PrimePower) else PrimePower.from_q(q)
        fq = build_field(pp.p, pp.f, size_cap=size_cap)
        f3 = build_field(pp.p, 3 * pp.f, size_cap=size_cap)
        if tau is None:
            tau = f3.generator_code
        elif f3.elem(tau).multiplicative_order() != f3.order:
            raise ValueError(f"code {tau} is not a generator of F_{pp.q}^3")
        return cls(pp, fq, f3, tau)

    @property
    def q(self) -> int:
        return self.pp.q

    @property
    def norm_exponent(self) -> int:
        return self.q * self.q + self.q + 1

    @property
    def tau(self) -> FieldElem:
        return self.f3.elem(self.tau_code)

    @property
    def pi(self) -> FieldElem:
        return self.tau**self.norm_exponent

    @cached_property
    def embedding(self) -> Embedding:
        return Embedding(self.fq, self.f3)

    @cached_property
    def tau_log(self) -> int:
        return int(self.f3.log_table[self.tau_code])

    def xk(self, k: int) -> FieldElem:
        """k-th element of F_q (1-based, x_1 = 0), embedded in F_{q^3}."""
        if not 1 <= k <= self.q:
            raise ValueError(f"index {k} outside 1..{self.q}")
        return self.embedding(self.fq.element_at(k))

    def tau_power_codes(self) -> np.ndarray:
        """Codes of tau^e for e = 0 .. q^3-2."""
        e = (self.tau_log * np.arange(self.f3.order, dtype=np.int64)) % self.f3.order
        return self.f3.exp_table[e]
