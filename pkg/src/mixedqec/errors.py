"""Mixed-radix Pauli error words: systems, weights, enumeration, matrices.

A particle of composite dimension q = r*p is modelled as a pair of
factors (a p-level and an r-level subsystem), so an error word carries
independent shift/phase digits per factor.  Systems whose particles all
share the same factor layout prefix-wise ("layered" systems, e.g. every
particle a qupit and the first n1 particles additionally a qurit) admit
a per-layer vector view, which is what the clique machinery works in.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterator, Sequence

import numpy as np

from .algebra import PHASE_ONE, ModVec, Phase, omega, phase_mul

DEFAULT_DIM_CAP = 65536
DIM_CAP_ENV = "MIXEDQEC_DIM_CAP"


def dim_cap() -> int:
    """Largest total Hilbert-space dimension numeric routines will build.

    Override with the MIXEDQEC_DIM_CAP environment variable.
    """
    raw = os.environ.get(DIM_CAP_ENV)
    if raw is None:
        return DEFAULT_DIM_CAP
    cap = int(raw)
    if cap < 2:
        raise ValueError(f"{DIM_CAP_ENV} must be >= 2, got {cap}")
    return cap


class DimensionCapError(Exception):
    """Raised when a numeric routine would exceed the dimension cap."""


def _check_cap(total: int, cap: int | None) -> None:
    limit = dim_cap() if cap is None else cap
    if total > limit:
        raise DimensionCapError(f"total dimension {total} exceeds cap {limit}")


@dataclass(frozen=True)
class MixedSystem:
    """n particles, particle i of dimension prod(factors[i]).

    factors[i] lists the cyclic factor dimensions of particle i in
    layer order.  A system is *layered* when the factor layout is a
    nested prefix: layer l exists on exactly the first n_l particles
    and has one modulus m_l there (n = n_1 >= n_2 >= ... >= 1).
    """

    factors: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("system needs at least one particle")
        facs = tuple(tuple(int(m) for m in f) for f in self.factors)
        for i, f in enumerate(facs):
            if not f:
                raise ValueError(f"particle {i} has no factors")
            if any(m < 2 for m in f):
                raise ValueError(f"particle {i} has a factor < 2")
        object.__setattr__(self, "factors", facs)

    @staticmethod
    def layered(layers: Sequence[tuple[int, int]]) -> "MixedSystem":
        """Build from [(modulus, particle_count), ...]; the first layer
        covers every particle and later layers cover prefixes."""
        if not layers:
            raise ValueError("need at least one layer")
        n = layers[0][1]
        prev = n
        for m, nl in layers:
            if nl < 1 or nl > prev:
                raise ValueError(f"layer coverage must nest: got {nl} after {prev}")
            prev = nl
        facs = []
        for i in range(n):
            facs.append(tuple(m for m, nl in layers if i < nl))
        return MixedSystem(tuple(facs))

    @staticmethod
    def qupit_qurit(n: int, p: int, r: int = 1, n1: int = 0) -> "MixedSystem":
        """The two-layer shape: n p-level particles, the first n1 of
        which carry an extra r-level factor (dimension q = r*p there)."""
        if r <= 1 or n1 == 0:
            return MixedSystem.layered([(p, n)])
        return MixedSystem.layered([(p, n), (r, n1)])

    @staticmethod
    def general(dims: Sequence[int]) -> "MixedSystem":
        """One opaque factor per particle; no layer view."""
        return MixedSystem(tuple((int(d),) for d in dims))

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        out = []
        for f in self.factors:
            d = 1
            for m in f:
                d *= m
            out.append(d)
        return tuple(out)

    @property
    def total_dim(self) -> int:
        d = 1
        for f in self.factors:
            for m in f:
                d *= m
        return d

    @property
    def layers(self) -> tuple[tuple[int, int], ...] | None:
        """[(modulus, coverage), ...] if the factor layout nests
        prefix-wise with a uniform modulus per layer, else None."""
        depth = max(len(f) for f in self.factors)
        out = []
        for l in range(depth):
            cov = [i for i, f in enumerate(self.factors) if len(f) > l]
            if cov != list(range(len(cov))):
                return None
            mods = {self.factors[i][l] for i in cov}
            if len(mods) != 1:
                return None
            out.append((mods.pop(), len(cov)))
        for l in range(1, depth):
            if out[l][1] > out[l - 1][1]:
                return None
        if out[0][1] != self.n:
            return None
        return tuple(out)

    @property
    def p(self) -> int:
        """Base modulus of the full layer (layered systems only)."""
        layers = self.layers
        if layers is None:
            raise ValueError("system is not layered")
        return layers[0][0]

    @property
    def r(self) -> int:
        """Modulus of the second layer, or 1 when absent."""
        layers = self._two_layers()
        return layers[1][0] if len(layers) == 2 else 1

    @property
    def n1(self) -> int:
        """Coverage of the second layer, or 0 when absent."""
        layers = self._two_layers()
        return layers[1][1] if len(layers) == 2 else 0

    def _two_layers(self) -> tuple[tuple[int, int], ...]:
        layers = self.layers
        if layers is None:
            raise ValueError("system is not layered")
        if len(layers) > 2:
            raise ValueError("system has more than two layers; use .layers")
        return layers

    def flat_dims(self) -> tuple[int, ...]:
        """All factor dimensions in particle-major order; the tensor
        axis layout every numeric routine in this package uses."""
        return tuple(m for f in self.factors for m in f)

    def axis_of(self, particle: int, layer: int) -> int:
        """Flat axis index of the given factor."""
        return sum(len(f) for f in self.factors[:particle]) + layer

    def to_json(self) -> dict:
        return {"n": self.n, "factors": [list(f) for f in self.factors]}

    @staticmethod
    def from_json(obj: dict) -> "MixedSystem":
        return MixedSystem(tuple(tuple(f) for f in obj["factors"]))


@dataclass(frozen=True)
class ErrorWord:
    """prod_i prod_f X_{m}^{x[i][f]} Z_{m}^{z[i][f]} times an exact phase,
    digits aligned with a system's factor layout."""

    x: tuple[tuple[int, ...], ...]
    z: tuple[tuple[int, ...], ...]
    phase: Phase = PHASE_ONE

    def __post_init__(self) -> None:
        if len(self.x) != len(self.z):
            raise ValueError("x and z particle counts differ")
        for xi, zi in zip(self.x, self.z):
            if len(xi) != len(zi):
                raise ValueError("x and z factor counts differ on a particle")
        object.__setattr__(self, "x", tuple(tuple(int(a) for a in xi) for xi in self.x))
        object.__setattr__(self, "z", tuple(tuple(int(a) for a in zi) for zi in self.z))

    @staticmethod
    def identity(sys: MixedSystem) -> "ErrorWord":
        zero = tuple(tuple(0 for _ in f) for f in sys.factors)
        return ErrorWord(zero, zero)

    @staticmethod
    def from_layers(sys: MixedSystem, xs: Sequence[ModVec | None],
                    zs: Sequence[ModVec | None], phase: Phase = PHASE_ONE) -> "ErrorWord":
        """Assemble from per-layer vectors (None = zero on that layer)."""
        layers = sys.layers
        if layers is None:
            raise ValueError("system is not layered")
        if len(xs) != len(layers) or len(zs) != len(layers):
            raise ValueError(f"expected {len(layers)} layer vectors")
        x = [[0] * len(f) for f in sys.factors]
        z = [[0] * len(f) for f in sys.factors]
        for l, (m, nl) in enumerate(layers):
            for vecs, tgt in ((xs, x), (zs, z)):
                v = vecs[l]
                if v is None:
                    continue
                if v.m != m or len(v) != nl:
                    raise ValueError(f"layer {l} vector does not match ({m},{nl})")
                for i in range(nl):
                    tgt[i][l] = v[i]
        return ErrorWord(tuple(tuple(r) for r in x), tuple(tuple(r) for r in z), phase)

    def x_layer(self, sys: MixedSystem, layer: int) -> ModVec:
        m, nl = sys.layers[layer]
        return ModVec(m, tuple(self.x[i][layer] for i in range(nl)))

    def z_layer(self, sys: MixedSystem, layer: int) -> ModVec:
        m, nl = sys.layers[layer]
        return ModVec(m, tuple(self.z[i][layer] for i in range(nl)))

    def is_identity(self) -> bool:
        return self.phase == PHASE_ONE and self.label_is_identity()

    def label_is_identity(self) -> bool:
        return all(a == 0 for xi in self.x for a in xi) and \
               all(a == 0 for zi in self.z for a in zi)

    def label(self) -> tuple:
        """Hashable (x, z) pair ignoring the phase."""
        return (self.x, self.z)


def weight(e: ErrorWord, sys: MixedSystem) -> int:
    """Number of particles on which the word acts nontrivially: the size
    of the union of the shift and phase supports across all factors."""
    if len(e.x) != sys.n:
        raise ValueError("word does not match system")
    return sum(1 for i in range(sys.n)
               if any(e.x[i]) or any(e.z[i]))


def _particle_ops(f: tuple[int, ...]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All non-identity (x_digits, z_digits) on one particle, in
    lexicographic order of the interleaved digit string (x0, z0, x1, z1, ...)."""
    ranges = []
    for m in f:
        ranges.append(range(m))  # x digit
        ranges.append(range(m))  # z digit
    out = []
    for combo in itertools.product(*ranges):
        if all(c == 0 for c in combo):
            continue
        out.append((combo[0::2], combo[1::2]))
    return out


def enumerate_errors(sys: MixedSystem, w_max: int) -> Iterator[ErrorWord]:
    """Every non-identity basis word of weight <= w_max, once each,
    phase one, ordered by (support set, per-particle digits)."""
    if w_max < 0 or w_max > sys.n:
        raise ValueError(f"w_max must be in [0, {sys.n}]")
    per_particle = [_particle_ops(f) for f in sys.factors]
    zero = ErrorWord.identity(sys)
    for k in range(1, w_max + 1):
        for supp in itertools.combinations(range(sys.n), k):
            for choice in itertools.product(*(per_particle[i] for i in supp)):
                x = [list(xi) for xi in zero.x]
                z = [list(zi) for zi in zero.z]
                for i, (xd, zd) in zip(supp, choice):
                    x[i] = list(xd)
                    z[i] = list(zd)
                yield ErrorWord(tuple(tuple(r) for r in x), tuple(tuple(r) for r in z))


def count_errors(sys: MixedSystem, w_max: int) -> int:
    """Closed-form count matching enumerate_errors: sum over supports of
    the product of per-particle non-identity operator counts."""
    dims = sys.dims
    total = 0
    for k in range(1, w_max + 1):
        for supp in itertools.combinations(range(sys.n), k):
            prod = 1
            for i in supp:
                prod *= dims[i] ** 2 - 1
            total += prod
    return total


def apply_error(e: ErrorWord, sys: MixedSystem, vec: np.ndarray) -> np.ndarray:
    """Apply the word to state columns: vec has shape (total_dim, ...) and
    the word acts as a monomial matrix (one nonzero per column)."""
    shape = vec.shape
    out = vec.reshape(sys.flat_dims() + shape[1:]).astype(complex)
    axis = 0
    for i, f in enumerate(sys.factors):
        for l, m in enumerate(f):
            a, b = e.x[i][l], e.z[i][l]
            if b % m:
                ph = np.exp(2j * np.pi * (b % m) * np.arange(m) / m)
                sh = [1] * out.ndim
                sh[axis] = m
                out *= ph.reshape(sh)
            if a % m:
                out = np.roll(out, a % m, axis=axis)
            axis += 1
    if e.phase != PHASE_ONE:
        out = out * complex(np.exp(2j * np.pi * e.phase.k / e.phase.L))
    return out.reshape(shape)


def error_matrix(e: ErrorWord, sys: MixedSystem, cap: int | None = None) -> np.ndarray:
    """Dense unitary of the word.  Columns each have one nonzero entry."""
    _check_cap(sys.total_dim, cap)
    return apply_error(e, sys, np.eye(sys.total_dim, dtype=complex))


def compose(sys: MixedSystem, e1: ErrorWord, e2: ErrorWord) -> ErrorWord:
    """The word equal to the operator product e1 * e2: digits add per
    factor and the phase accrues w_m^{b*a} for every Z^b of e1 commuted
    past an X^a of e2 on the same factor."""
    if len(e1.x) != sys.n or len(e2.x) != sys.n:
        raise ValueError("words do not match system")
    ph = phase_mul(e1.phase, e2.phase)
    x, z = [], []
    for i, f in enumerate(sys.factors):
        xi, zi = [], []
        for l, m in enumerate(f):
            xi.append((e1.x[i][l] + e2.x[i][l]) % m)
            zi.append((e1.z[i][l] + e2.z[i][l]) % m)
            ph = phase_mul(ph, omega(m, e1.z[i][l] * e2.x[i][l]))
        x.append(tuple(xi))
        z.append(tuple(zi))
    return ErrorWord(tuple(x), tuple(z), ph)


def word_order(sys: MixedSystem, e: ErrorWord) -> int:
    """Smallest k >= 1 with e^k proportional to the identity label."""
    k = 1
    for i, f in enumerate(sys.factors):
        for l, m in enumerate(f):
            for d in (e.x[i][l], e.z[i][l]):
                if d % m:
                    k = lcm(k, m // gcd(d % m, m))
    return k


def format_word(sys: MixedSystem, e: ErrorWord) -> str:
    """Printable form like "Z^{2345}Z^{1'}": superscripts list 1-based
    vertices, one prime per extra layer, digits repeated for powers."""
    layers = sys.layers
    if layers is None:
        raise ValueError("notation requires a layered system")
    if sys.n > 9:
        raise ValueError("digit notation supports at most 9 vertices")
    parts = []
    for sym, digits in (("X", e.x), ("Z", e.z)):
        for l, (m, nl) in enumerate(layers):
            marks = "'" * l
            sup = ""
            for i in range(nl):
                d = digits[i][l]
                sup += (str(i + 1) + marks) * d
            if sup:
                parts.append(f"{sym}^{{{sup}}}")
    if not parts:
        return "I"
    return "".join(parts)


def parse_word(sys: MixedSystem, text: str, phase: Phase = PHASE_ONE) -> ErrorWord:
    """Inverse of format_word.  Repeated vertex digits accumulate powers;
    primes select the layer."""
    layers = sys.layers
    if layers is None:
        raise ValueError("notation requires a layered system")
    x = [[0] * len(f) for f in sys.factors]
    z = [[0] * len(f) for f in sys.factors]
    s = text.strip()
    if s == "I":
        return ErrorWord(tuple(tuple(r) for r in x), tuple(tuple(r) for r in z), phase)
    pos = 0
    while pos < len(s):
        sym = s[pos]
        if sym not in "XZ":
            raise ValueError(f"expected X or Z at position {pos} of {text!r}")
        if s[pos + 1:pos + 3] != "^{":
            raise ValueError(f"expected ^{{...}} after {sym} in {text!r}")
        end = s.index("}", pos + 3)
        body = s[pos + 3:end]
        i = 0
        while i < len(body):
            if not body[i].isdigit():
                raise ValueError(f"expected vertex digit in {text!r}")
            vertex = int(body[i]) - 1
            i += 1
            layer = 0
            while i < len(body) and body[i] == "'":
                layer += 1
                i += 1
            if vertex < 0 or vertex >= sys.n or layer >= len(sys.factors[vertex]):
                raise ValueError(f"vertex {vertex + 1} layer {layer} out of range")
            m = sys.factors[vertex][layer]
            if sym == "X":
                x[vertex][layer] = (x[vertex][layer] + 1) % m
            else:
                z[vertex][layer] = (z[vertex][layer] + 1) % m
        pos = end + 1
    return ErrorWord(tuple(tuple(r) for r in x), tuple(tuple(r) for r in z), phase)
