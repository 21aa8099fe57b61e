"""Exact arithmetic in Z[zeta_p] and the additive character of F_{q^3}."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .field_tower import FieldCtx, FieldElem, abs_trace, is_prime, rel_trace_to_mid


class NotRationalInteger(ArithmeticError):
    """A cyclotomic integer expected to lie in Z does not."""


class CycInt:
    """Element of Z[zeta_p] in the power basis 1, zeta, ..., zeta^(p-2).

    The basis has p-1 elements, so the representation is unique and an element
    is a rational integer exactly when every coordinate past the first is zero.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int]):
        if len(coeffs) != p - 1:
            raise ValueError(f"expected {p - 1} coordinates, got {len(coeffs)}")
        self.p = p
        self.coeffs = tuple(int(c) for c in coeffs)

    @classmethod
    def zero(cls, p: int) -> CycInt:
        return cls(p, [0] * (p - 1))

    @classmethod
    def from_int(cls, p: int, n: int) -> CycInt:
        return cls(p, [n] + [0] * (p - 2))

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> CycInt:
        """Sum of counts[t] * zeta^t over t = 0 .. p-1."""
        p = len(counts)
        top = int(counts[-1])
        return cls(p, [int(c) - top for c in counts[:-1]])

    def _check(self, other: CycInt) -> None:
        if other.p != self.p:
            raise ValueError(f"mismatched primes {self.p} and {other.p}")

    def __add__(self, other: CycInt) -> CycInt:
        self._check(other)
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> CycInt:
        return CycInt(self.p, [-a for a in self.coeffs])

    def __sub__(self, other: CycInt) -> CycInt:
        return self + (-other)

    def __mul__(self, other: CycInt) -> CycInt:
        self._check(other)
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    full[(i + j) % p] += a * b
        return CycInt.from_counts(full)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"CycInt(p={self.p}, {list(self.coeffs)})"

    def to_complex(self) -> complex:
        z = np.exp(2j * np.pi * np.arange(self.p - 1) / self.p)
        return complex(np.dot(np.array(self.coeffs, dtype=float), z))


def cyc_root_power(p: int, t: int) -> CycInt:
    """zeta_p^t in reduced form."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    counts = [0] * p
    counts[t % p] = 1
    return CycInt.from_counts(counts)


def cyc_arith(a: CycInt, b: CycInt, op: str) -> CycInt:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def cyc_to_int(z: CycInt) -> int:
    if any(z.coeffs[1:]):
        raise NotRationalInteger(f"{z} is not a rational integer")
    return z.coeffs[0]


def pick_twist(ctx3: FieldCtx, q: int) -> FieldElem:
    """Smallest c with nonzero relative trace to F_q.

    With this c, x -> zeta^Tr(c x) restricts to a nontrivial character of
    F_q, since Tr(c a) = Tr_{F_q/F_p}(a * reltrace(c)) for a in F_q.
    """
    for c in ctx3.elements():
        if c and rel_trace_to_mid(c, q):
            return c
    raise AssertionError("relative trace is surjective")  # unreachable


def additive_char(x: FieldElem, twist: FieldElem) -> CycInt:
    return cyc_root_power(x.ctx.p, abs_trace(twist * x))


def trace_functional(ctx: FieldCtx, twist_code: int) -> np.ndarray:
    """Vector u with Tr(twist * a) = <u, digits(a)> mod p for every a."""
    return np.array(
        [abs_trace(FieldElem(ctx, ctx.mul_codes(twist_code, ctx.p**i))) for i in range(ctx.m)],
        dtype=np.int64,
    )


def twisted_trace_table(ctx: FieldCtx, twist_code: int) -> np.ndarray:
    """Tr(twist * a) mod p for every code a, via linearity of the trace."""
    u = trace_functional(ctx, twist_code)
    codes = np.arange(ctx.size, dtype=np.int64)
    out = np.zeros(ctx.size, dtype=np.int64)
    for i, ui in enumerate(u):
        if ui:
            out += ((codes // ctx.p**i) % ctx.p) * int(ui)
    return out % ctx.p
