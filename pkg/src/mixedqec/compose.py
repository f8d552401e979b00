"""Code composition: tensor products and distance-2 stabilizer pasting.

Both constructions are validated by the verifier rather than trusted:
product_code outputs are re-checked symbolically or numerically by the
callers' pipelines, and paste_distance2 refuses to run unless its base
rows verify against the base code first.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import ModVec, phase_mul
from .clique import CodingClique
from .errors import ErrorWord, MixedSystem, _check_cap, compose
from .graphstate import stabilizer_error_word
from .verifier import (
    Code,
    StabilizerRow,
    kl_verify_numeric,
    stabilizer_eigenbasis,
    verify_stabilizer,
)


def product_code(A: Code, B: Code, cap: int | None = None) -> Code:
    """The tensor product of two same-length codes, with particle i of
    the output owning A's factors of particle i followed by B's.

    When both inputs are in clique form the product stays symbolic: the
    layer graphs concatenate and the vectors are all concatenated pairs.
    Otherwise the basis is built as a Kronecker product and re-ordered
    to the per-particle axis layout.
    """
    if A.n != B.n:
        raise ValueError(f"particle counts differ: {A.n} vs {B.n}")
    if A.d != B.d:
        raise ValueError(f"claimed distances differ: {A.d} vs {B.d}")

    if A.clique is not None and B.clique is not None:
        graphs = A.clique.graphs + B.clique.graphs
        vectors = tuple(va + vb for va, vb in
                        itertools.product(A.clique.vectors, B.clique.vectors))
        return Code.from_clique(CodingClique(graphs=graphs, d=A.d, vectors=vectors))

    facs = tuple(fa + fb for fa, fb in zip(A.system.factors, B.system.factors))
    sys = MixedSystem(facs)
    _check_cap(sys.total_dim, cap)
    BA = A.basis(cap=cap)
    BB = B.basis(cap=cap)
    full = np.kron(BA, BB)
    aflat = A.system.flat_dims()
    bflat = B.system.flat_dims()
    a_axes, off = [], 0
    for f in A.system.factors:
        a_axes.append(list(range(off, off + len(f))))
        off += len(f)
    b_axes, off = [], len(aflat)
    for f in B.system.factors:
        b_axes.append(list(range(off, off + len(f))))
        off += len(f)
    T = full.reshape(aflat + bflat + (A.K * B.K,))
    perm = [ax for i in range(A.n) for ax in a_axes[i] + b_axes[i]]
    T = np.transpose(T, perm + [len(aflat) + len(bflat)])
    return Code(sys, A.K * B.K, A.d, basis=T.reshape(sys.total_dim, A.K * B.K))


# --- stabilizer rows from a clique --------------------------------------


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    f = 2
    while f * f <= m:
        if m % f == 0:
            return False
        f += 1
    return True


def _nullspace_mod_prime(mat: Sequence[Sequence[int]], m: int,
                         ncols: int) -> tuple[list[list[int]], int]:
    """Kernel basis of mat over GF(m), one vector per free column in
    column order; also returns the rank."""
    rows = [list(int(v) % m for v in r) for r in mat]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] % m), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, m)
        rows[r] = [(v * inv) % m for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % m:
                f = rows[i][c]
                rows[i] = [(a - f * b) % m for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fc in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[fc] = 1
        for ridx, pc in enumerate(pivots):
            v[pc] = (-rows[ridx][fc]) % m
        basis.append(v)
    return basis, len(pivots)


def _row_text(sys: MixedSystem, w: ErrorWord) -> tuple[str, ...]:
    """Per-layer symbol strings for a word with digits in {0, 1}.  A
    factor carrying both a shift and a phase prints as Y; the exact
    phase lives in the word, not the text."""
    out = []
    for l, (_, nl) in enumerate(sys.layers):
        syms = []
        for i in range(nl):
            a, b = w.x[i][l], w.z[i][l]
            if a > 1 or b > 1:
                raise ValueError("symbol notation only covers digits 0/1")
            syms.append("IXZY"[a + 2 * b])
        out.append("".join(syms))
    return tuple(out)


def clique_stabilizer_rows(clique: CodingClique) -> tuple[StabilizerRow, ...]:
    """Generators of the full stabilizer of a group clique's code.

    A graph-layer word with label s fixes the codeword for c exactly
    when prod_l w_m^{s_l . c_l} = 1, so the stabilizer labels are the
    kernel of the clique-vector matrix over GF(m).  The basis comes out
    in free-column order of the row reduction, which is the order the
    published row lists follow.
    """
    ms = {g.m for g in clique.graphs}
    if len(ms) != 1:
        raise ValueError("stabilizer rows require a uniform layer modulus")
    m = ms.pop()
    if not _is_prime(m):
        raise ValueError(f"stabilizer rows require a prime modulus, got {m}")
    widths = [g.n for g in clique.graphs]
    ncols = sum(widths)
    mat = [[a for part in v for a in part.entries] for v in clique.vectors]
    kernel, rank = _nullspace_mod_prime(mat, m, ncols)
    if m ** rank != clique.K:
        raise ValueError("clique is not a subgroup; stabilizer form needs one")
    sys = clique.system()
    rows = []
    for flat in kernel:
        ss, pos = [], 0
        for g in clique.graphs:
            ss.append(ModVec(m, tuple(flat[pos:pos + g.n])))
            pos += g.n
        w = stabilizer_error_word(sys, clique.graphs, ss)
        rows.append(StabilizerRow(_row_text(sys, w), w))
    return tuple(rows)


# --- distance-2 pasting --------------------------------------------------


@dataclass(frozen=True)
class PasteResult:
    system: MixedSystem
    rows: tuple[StabilizerRow, ...]
    K: int


def paste_distance2(base_rows: Sequence[StabilizerRow], base_code: Code,
                    blocks: int, block_dim: int, verify_base: bool = True,
                    tol: float = 1e-9, cap: int | None = None) -> PasteResult:
    """Extend a distance-2 stabilizer code by trivial two-particle
    blocks without adding rows.

    Each block contributes one X.Z / Z.X generator pair per layer; the
    pairs are absorbed into existing rows (even-indexed rows first)
    instead of standing alone, which multiplies the eigenspace by
    block_dim^2 per block.  All block generators commute with each
    other and with everything on the old particles, so the merged rows
    stay a valid stabilizer; distance 2 of the result is a claim the
    caller re-verifies, not a theorem this function relies on.
    """
    if blocks < 1:
        raise ValueError("blocks must be >= 1")
    if base_code.d < 2:
        raise ValueError("pasting requires a distance-2 base")
    base_sys = base_code.system
    layers = base_sys.layers
    if layers is None:
        raise ValueError("pasting requires a layered base system")
    m = layers[0][0]
    if any(ml != m for ml, _ in layers):
        raise ValueError("pasting requires a uniform layer modulus")
    j, q = 0, 1
    while q < block_dim:
        q *= m
        j += 1
    if q != block_dim or j == 0:
        raise ValueError(f"block dimension {block_dim} is not a power of {m}")
    if 2 * j > len(base_rows):
        raise ValueError(
            f"{2 * j} block generators cannot be absorbed by {len(base_rows)} rows")

    words = [r.word for r in base_rows]
    if verify_base:
        rep = verify_stabilizer(base_rows, base_code, tol=tol, cap=cap)
        if not rep.ok:
            raise ValueError(f"base rows fail verification: {rep.witness}")
        kl = kl_verify_numeric(base_code, d=2, tol=tol, cap=cap)
        if not kl.ok:
            raise ValueError(f"base code fails at distance 2: {kl.witness}")
        # rows published up to phase are fixed to their exact stabilizing form
        words = [ErrorWord(w.x, w.z, phase_mul(w.phase, lam))
                 for w, lam in zip(words, rep.chosen_phases)]

    sys = MixedSystem(base_sys.factors + ((m,) * j,) * (2 * blocks))
    if sys.layers is None:
        raise ValueError("pasted system is not layered; the base's deeper "
                         "layers must cover every particle")

    pad = tuple((0,) * j for _ in range(2 * blocks))
    words = [ErrorWord(w.x + pad, w.z + pad, w.phase) for w in words]
    carriers = [i for i in range(len(words)) if i % 2 == 0] + \
               [i for i in range(len(words)) if i % 2 == 1]
    for b in range(blocks):
        pa, pb = base_sys.n + 2 * b, base_sys.n + 2 * b + 1
        gens = []
        for l in range(j):
            for first, second in ((pa, pb), (pb, pa)):
                x = [[0] * len(f) for f in sys.factors]
                z = [[0] * len(f) for f in sys.factors]
                x[first][l] = 1
                z[second][l] = 1
                gens.append(ErrorWord(tuple(tuple(r) for r in x),
                                      tuple(tuple(r) for r in z)))
        for t, g in enumerate(gens):
            c = carriers[t]
            words[c] = compose(sys, words[c], g)

    rows = tuple(StabilizerRow(_row_text(sys, w), w) for w in words)
    return PasteResult(sys, rows, base_code.K * block_dim ** (2 * blocks))


def pasted_code(res: PasteResult, tol: float = 1e-9, cap: int | None = None) -> Code:
    """The joint +1 eigenspace of a paste result as a distance-2 code."""
    B = stabilizer_eigenbasis(res.system, res.rows, tol=tol, cap=cap)
    if B.shape[1] != res.K:
        raise ValueError(f"eigenspace dimension {B.shape[1]}, expected {res.K}")
    return Code.from_basis(res.system, B, 2)
