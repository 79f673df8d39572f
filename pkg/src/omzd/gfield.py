"""Finite fields GF(p^k) of odd order with the quadratic character.

Elements are length-k coefficient vectors over GF(p), little-endian in
the root of a canonical modulus polynomial: the lexicographically
smallest monic irreducible of degree k (coefficient vectors compared
constant term first).  That canonical choice makes every matrix built
on top of a field reproducible bit for bit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import EvenCharacteristic, NotPrime

__all__ = [
    "FieldElement",
    "FiniteField",
    "make_field",
    "chi",
    "elements",
    "is_prime",
    "prime_power_decompose",
]

_MAX_ORDER = 1 << 20


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


def prime_power_decompose(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p^k and p prime, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            k, rest = 0, q
            while rest % p == 0:
                rest //= p
                k += 1
            return (p, k) if rest == 1 else None
        p += 1
    return (q, 1)  # q itself is prime


@dataclass(frozen=True)
class FieldElement:
    """Coefficient vector over GF(p), little-endian in the modulus root."""

    coeffs: tuple[int, ...]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


# --- polynomial helpers over GF(p), little-endian coefficient lists ---------

def _poly_eval(poly: tuple[int, ...], x: int, p: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = (acc * x + c) % p
    return acc


def _poly_divmod(num: list[int], den: tuple[int, ...], p: int) -> tuple[list[int], list[int]]:
    # den must be monic
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * max(len(num) - deg_d, 0)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i] % p
        if c:
            quot[i - deg_d] = c
            for j, dj in enumerate(den):
                num[i - deg_d + j] = (num[i - deg_d + j] - c * dj) % p
    rem = [c % p for c in num[:deg_d]]
    return quot, rem


def _monic_polys(degree: int, p: int):
    for low in itertools.product(range(p), repeat=degree):
        yield (*low, 1)


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    k = len(poly) - 1
    if k == 1:
        return True  # every monic linear polynomial is irreducible
    if any(_poly_eval(poly, x, p) == 0 for x in range(p)):
        return False
    if k < 4:
        return True  # degree 2 or 3 without roots has no factorization
    for d in range(2, k // 2 + 1):
        for den in _monic_polys(d, p):
            _, rem = _poly_divmod(list(poly), den, p)
            if not any(rem):
                return False
    return True


class FiniteField:
    """GF(p^k) with a fixed modulus, a canonical element order, and a
    square table built once for the quadratic character."""

    def __init__(self, p: int, k: int, modulus_poly: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus_poly = modulus_poly
        self.element_order: tuple[FieldElement, ...] = tuple(
            FieldElement(c) for c in itertools.product(range(p), repeat=k)
        )
        self._squares = frozenset(
            self.mul(e, e).coeffs for e in self.element_order if not e.is_zero()
        )

    # -- arithmetic -----------------------------------------------------

    def _check(self, x: FieldElement) -> None:
        if len(x.coeffs) != self.k or any(not 0 <= c < self.p for c in x.coeffs):
            raise ValueError(f"{x} is not an element of GF({self.p}^{self.k})")

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(tuple((x - y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FieldElement) -> FieldElement:
        return FieldElement(tuple((-x) % self.p for x in a.coeffs))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        _, rem = _poly_divmod(prod, self.modulus_poly, self.p)
        rem += [0] * (self.k - len(rem))
        return FieldElement(tuple(rem))

    def minus_one(self) -> FieldElement:
        coeffs = [0] * self.k
        coeffs[0] = (-1) % self.p
        return FieldElement(tuple(coeffs))

    def __repr__(self):
        return f"FiniteField(p={self.p}, k={self.k}, modulus={self.modulus_poly})"


def make_field(p: int, k: int) -> FiniteField:
    """Build GF(p^k) on the lexicographically smallest irreducible modulus.

    Rejects p = 2 (the quadratic character degenerates) and non-primes.
    """
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported; q must be odd")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    if p**k > _MAX_ORDER:
        raise ValueError(f"field order {p}^{k} exceeds the supported cap 2^20")
    for poly in _monic_polys(k, p):
        if _is_irreducible(poly, p):
            return FiniteField(p, k, poly)
    raise AssertionError("no irreducible modulus found")  # unreachable: one always exists


def chi(field: FiniteField, x: FieldElement) -> int:
    """Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise."""
    field._check(x)
    if x.is_zero():
        return 0
    return 1 if x.coeffs in field._squares else -1


def elements(field: FiniteField) -> tuple[FieldElement, ...]:
    """All q field elements in the canonical order (zero first)."""
    return field.element_order
