"""Integer polynomials in q and Sturm-sequence positivity certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class IntPoly:
    """Polynomial with integer coefficients, constant term first.

    Trailing zeros are stripped, so the zero polynomial has no coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def q(cls) -> IntPoly:
        return cls([0, 1])

    @classmethod
    def const(cls, n: int) -> IntPoly:
        return cls([n])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @staticmethod
    def _lift(x: IntPoly | int) -> IntPoly:
        return x if isinstance(x, IntPoly) else IntPoly([x])

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-x for x in self.coeffs)

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other: int) -> IntPoly:
        return self._lift(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        other = self._lift(other)
        if not self or not other:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPoly:
        out = IntPoly([1])
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, x: Rational) -> Rational:
        return poly_eval(self, x)

    def compose(self, inner: IntPoly) -> IntPoly:
        """self(inner(q))"""
        acc = IntPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
            terms.append((sign, body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return s + "".join(f" {sg} {b}" for sg, b in terms[1:])


Q = IntPoly.q()


def poly_eval(a: IntPoly, x: Rational) -> Rational:
    """Horner evaluation; exact for int and Fraction arguments."""
    acc: Rational = 0
    for c in reversed(a.coeffs):
        acc = acc * x + c
    return acc


def poly_arith(a: IntPoly, b: IntPoly, op: str) -> IntPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# -- rational polynomial helpers for Sturm chains ----------------------------

def _qtrim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _qtrim(list(a))
    b = _qtrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()  # leading term cancels exactly
        _qtrim(a)
    return quot, a


def _qgcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = _qtrim(list(a)), _qtrim(list(b))
    while b:
        a, b = b, _qdivmod(a, b)[1]
    return [c / a[-1] for c in a]


def squarefree_part(a: IntPoly) -> list[Fraction]:
    f = [Fraction(c) for c in a.coeffs]
    g = _qgcd(f, [Fraction(c) for c in a.derivative().coeffs])
    if len(g) <= 1:
        return f
    return _qdivmod(f, g)[0]


def sturm_chain(a: IntPoly) -> list[list[Fraction]]:
    """Sturm sequence of the squarefree part of ``a``."""
    if not a:
        raise ValueError("Sturm chain of the zero polynomial")
    f = squarefree_part(a)
    chain = [f]
    d = [i * c for i, c in enumerate(f) if i]
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        r = _qdivmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _sign_at(poly: Sequence[Fraction], x: Rational | float) -> int:
    if x == math.inf:
        return (poly[-1] > 0) - (poly[-1] < 0)
    if x == -math.inf:
        s = (poly[-1] > 0) - (poly[-1] < 0)
        return s if (len(poly) - 1) % 2 == 0 else -s
    v: Fraction = Fraction(0)
    for c in reversed(poly):
        v = v * x + c
    return (v > 0) - (v < 0)


def _variations(chain: list[list[Fraction]], x: Rational | float) -> int:
    signs = [s for s in (_sign_at(p, x) for p in chain) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(a: IntPoly, lo: Rational | float = -math.inf, hi: Rational | float = math.inf) -> int:
    """Number of distinct real roots of ``a`` in (lo, hi]."""
    chain = sturm_chain(a)
    return _variations(chain, lo) - _variations(chain, hi)


@dataclass(frozen=True)
class PositivityCertificate:
    poly: IntPoly
    threshold: Fraction
    status: str  # "certified" or "refuted"
    root_count_ge_threshold: int
    witness: Fraction | None = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"


class CertificateError(AssertionError):
    """A certificate disagrees with direct evaluation."""


def _refutation_witness(a: IntPoly, q0: Fraction) -> Fraction:
    """A rational x >= q0 with a(x) <= 0, or the best approximation to a root."""
    if a(q0) <= 0:
        return q0
    # a(q0) > 0 and a has a root beyond q0: bracket it
    hi = q0 + 1
    while sturm_count(a, q0, hi) == 0:
        hi = q0 + 2 * (hi - q0)
    lo = q0
    for _ in range(200):
        mid = (lo + hi) / 2
        if a(mid) <= 0:
            return mid
        if sturm_count(a, lo, mid) > 0:
            hi = mid
        else:
            lo = mid
    # even-multiplicity root: a touches zero without changing sign
    return hi


def certify_positive_ge(a: IntPoly, q0: Rational, *, samples: int = 51) -> PositivityCertificate:
    """Decide whether a(x) > 0 for every real x >= q0.

    A certified result is cross-checked by evaluating at ``samples``
    consecutive integers starting at ceil(q0).
    """
    if not a:
        raise ValueError("zero polynomial")
    q0 = Fraction(q0)
    count = sturm_count(a, q0, math.inf)
    ok = a(q0) > 0 and count == 0
    if not ok:
        return PositivityCertificate(a, q0, "refuted", count, _refutation_witness(a, q0))
    start = math.ceil(q0)
    for x in range(start, start + samples):
        if a(x) <= 0:
            raise CertificateError(f"certified {a} but value at {x} is {a(x)}")
    return PositivityCertificate(a, q0, "certified", count)
