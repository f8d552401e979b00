"""Exact arithmetic: roots of unity and vectors over Z_m.

Phases are tracked as exact rational angles so that stabilizer phase
checks and clique phase conditions never pass or fail by floating-point
accident.  Floats only appear when bridging to a numeric oracle.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable


@dataclass(frozen=True, order=True)
class Phase:
    """The root of unity e^{2*pi*i*k/L}, stored in lowest terms."""

    k: int
    L: int

    def __post_init__(self) -> None:
        if self.L < 1:
            raise ValueError(f"phase order must be positive, got {self.L}")
        k = self.k % self.L
        g = gcd(k, self.L)  # gcd(0, L) = L, so zero reduces to (0, 1)
        object.__setattr__(self, "k", k // g)
        object.__setattr__(self, "L", self.L // g)


PHASE_ONE = Phase(0, 1)
PHASE_MINUS_ONE = Phase(1, 2)
PHASE_I = Phase(1, 4)


def omega(order: int, power: int = 1) -> Phase:
    """e^{2*pi*i*power/order}."""
    return Phase(power, order)


def phase_mul(a: Phase, b: Phase) -> Phase:
    M = lcm(a.L, b.L)
    return Phase(a.k * (M // a.L) + b.k * (M // b.L), M)


def phase_pow(a: Phase, e: int) -> Phase:
    return Phase(a.k * e, a.L)


def phase_inv(a: Phase) -> Phase:
    return Phase(-a.k, a.L)


def phase_as_complex(a: Phase) -> complex:
    return cmath.exp(2j * cmath.pi * a.k / a.L)


@dataclass(frozen=True, order=True)
class ModVec:
    """A fixed-length vector with entries in Z_m."""

    m: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"modulus must be >= 2, got {self.m}")
        object.__setattr__(self, "entries", tuple(int(e) % self.m for e in self.entries))

    @staticmethod
    def zeros(m: int, n: int) -> "ModVec":
        return ModVec(m, (0,) * n)

    @staticmethod
    def of(m: int, entries: Iterable[int]) -> "ModVec":
        return ModVec(m, tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __add__(self, other: "ModVec") -> "ModVec":
        self._check(other)
        return ModVec(self.m, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ModVec") -> "ModVec":
        self._check(other)
        return ModVec(self.m, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "ModVec":
        return ModVec(self.m, tuple(-a for a in self.entries))

    def scale(self, c: int) -> "ModVec":
        return ModVec(self.m, tuple(c * a for a in self.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def _check(self, other: "ModVec") -> None:
        if self.m != other.m:
            raise ValueError(f"modulus mismatch: {self.m} vs {other.m}")
        if len(self.entries) != len(other.entries):
            raise ValueError(f"length mismatch: {len(self.entries)} vs {len(other.entries)}")


def support(v: ModVec) -> frozenset[int]:
    """Indices (0-based) of the nonzero entries."""
    return frozenset(i for i, a in enumerate(v.entries) if a != 0)


def dot_mod(u: ModVec, v: ModVec) -> int:
    u._check(v)
    return sum(a * b for a, b in zip(u.entries, v.entries)) % u.m
