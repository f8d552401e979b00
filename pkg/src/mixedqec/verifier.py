"""Knill-Laflamme verification, distance measurement, stabilizer checks.

Two independent verifiers cover every code here.  The symbolic one works
in the phase-label algebra: an error word reduces on each graph layer to
an exact phase times a pure phase word, so the KL inner products are
roots of unity that either cancel or match exactly.  The numeric one
builds the basis and measures max |<i|E|j> - f delta_ij| directly.  They
must agree; tests enforce that.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import PHASE_I, PHASE_ONE, Phase, phase_as_complex, phase_mul
from .clique import CodingClique, condition_ii_phase
from .errors import (
    ErrorWord,
    MixedSystem,
    _check_cap,
    _particle_ops,
    apply_error,
    compose,
    enumerate_errors,
    format_word,
    word_order,
)
from .graphstate import codeword_state, reduce_to_phase_op


class Code:
    """A claimed ((n, K, d)) code: a clique over graphs, an explicit
    basis, or both (the basis derived from the clique on demand)."""

    def __init__(self, system: MixedSystem, K: int, d: int,
                 clique: CodingClique | None = None,
                 basis: np.ndarray | None = None):
        if clique is None and basis is None:
            raise ValueError("code needs a clique or a basis")
        if basis is not None:
            basis = np.asarray(basis, dtype=complex)
            if basis.ndim != 2 or basis.shape != (system.total_dim, K):
                raise ValueError(f"basis must be {system.total_dim} x {K}")
            gram = basis.conj().T @ basis
            if np.abs(gram - np.eye(K)).max() > 1e-9:
                raise ValueError("basis is not orthonormal")
        if clique is not None and clique.K != K:
            raise ValueError(f"clique has {clique.K} vectors, claimed K = {K}")
        self.system = system
        self.K = K
        self.d = d
        self.clique = clique
        self._basis = basis

    @property
    def n(self) -> int:
        return self.system.n

    @staticmethod
    def from_clique(clique: CodingClique) -> "Code":
        sys = clique.system()
        return Code(sys, clique.K, clique.d, clique=clique)

    @staticmethod
    def from_basis(system: MixedSystem, basis: np.ndarray, d: int) -> "Code":
        basis = np.asarray(basis, dtype=complex)
        return Code(system, basis.shape[1], d, basis=basis)

    def basis(self, cap: int | None = None) -> np.ndarray:
        if self._basis is None:
            _check_cap(self.system.total_dim, cap)
            cols = [codeword_state(list(v), list(self.clique.graphs), cap=cap).amplitudes
                    for v in self.clique.vectors]
            self._basis = np.stack(cols, axis=1)
        return self._basis


@dataclass(frozen=True)
class KLReport:
    ok: bool
    mode: str
    checked_errors: int
    max_deviation: float | None
    f_summary: dict
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "verdict": "pass" if self.ok else "fail",
            "mode": self.mode,
            "checked_errors": self.checked_errors,
            "f_values_summary": self.f_summary,
        }
        if self.max_deviation is not None:
            out["max_deviation"] = self.max_deviation
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _word_json(sys: MixedSystem, e: ErrorWord) -> dict:
    out = {"x": [list(xi) for xi in e.x], "z": [list(zi) for zi in e.z]}
    if sys.layers is not None and sys.n <= 9:
        out["notation"] = format_word(sys, e)
    return out


def kl_verify_symbolic(code: Code, d: int | None = None) -> KLReport:
    """Exact KL check for clique-form codes.

    An error reduces per layer to (phi_l, delta_l).  If every delta_l is
    zero the error acts diagonally and the diagonal phases must agree
    across codewords; otherwise <i|E|j> vanishes for all pairs unless
    some pairwise difference of clique vectors equals delta, which is
    exactly what condition (iii) forbids.
    """
    if code.clique is None:
        raise ValueError("symbolic verification requires clique form")
    d = code.d if d is None else d
    cl = code.clique
    sys = code.system
    graphs = cl.graphs

    diffs = {}
    for i, ci in enumerate(cl.vectors):
        for j, cj in enumerate(cl.vectors):
            if i != j:
                delta = tuple(a - b for a, b in zip(ci, cj))
                diffs.setdefault(delta, (i, j))

    checked = 0
    diagonal = 0
    vanishing = 0
    for e in enumerate_errors(sys, d - 1):
        checked += 1
        reduced = [reduce_to_phase_op(e.x_layer(sys, l), e.z_layer(sys, l), g)
                   for l, g in enumerate(graphs)]
        deltas = tuple(c for _, c in reduced)
        if all(c.is_zero() for c in deltas):
            diagonal += 1
            ss = tuple(e.x_layer(sys, l) for l in range(len(graphs)))
            ph0 = condition_ii_phase(ss, cl.vectors[0])
            for c in cl.vectors[1:]:
                if condition_ii_phase(ss, c) != ph0:
                    return KLReport(
                        False, "symbolic", checked, None,
                        {"diagonal_errors": diagonal, "vanishing_errors": vanishing},
                        {"error": _word_json(sys, e), "kind": "diagonal",
                         "vector": [list(p.entries) for p in c]})
        else:
            vanishing += 1
            hit = diffs.get(deltas)
            if hit is not None:
                return KLReport(
                    False, "symbolic", checked, None,
                    {"diagonal_errors": diagonal, "vanishing_errors": vanishing},
                    {"error": _word_json(sys, e), "kind": "offdiagonal",
                     "pair": list(hit)})
    return KLReport(True, "symbolic", checked, None,
                    {"diagonal_errors": diagonal, "vanishing_errors": vanishing})


# T tensors larger than this many entries fall back to per-error matrices
_GROUP_TENSOR_LIMIT = 1 << 24


class _SupportScanner:
    """Shared numeric engine: scans errors grouped by support, computing
    M_ij = <i|E|j> via one contraction per support set."""

    def __init__(self, sys: MixedSystem, B: np.ndarray):
        self.sys = sys
        self.B = B
        self.K = B.shape[1]
        self.flat = sys.flat_dims()
        self.axes_of = []
        a = 0
        for f in sys.factors:
            self.axes_of.append(list(range(a, a + len(f))))
            a += len(f)

    def _tensor_for(self, supp: tuple[int, ...]):
        axes = [a for i in supp for a in self.axes_of[i]]
        dimsS = [self.flat[a] for a in axes]
        dS = int(np.prod(dimsS))
        if (dS * self.K) ** 2 > _GROUP_TENSOR_LIMIT:
            return None
        Bt = self.B.reshape(self.flat + (self.K,))
        Bt = np.moveaxis(Bt, axes, range(len(axes)))
        A = Bt.reshape(dS, -1, self.K)
        T = np.einsum("urk,vrl->ukvl", A.conj(), A, optimize=True)
        U = np.indices(dimsS).reshape(len(axes), dS)
        return axes, dimsS, dS, T, U

    def matrix(self, e: ErrorWord, supp: tuple[int, ...], tensor) -> np.ndarray:
        if tensor is None:
            EB = apply_error(e, self.sys, self.B)
            return self.B.conj().T @ EB
        axes, dimsS, dS, T, U = tensor
        phases = np.full(dS, phase_as_complex(e.phase), dtype=complex)
        shifted = np.zeros(len(axes), dtype=np.int64)
        k = 0
        for i in supp:
            for l, m in enumerate(self.sys.factors[i]):
                b = e.z[i][l] % m
                if b:
                    phases = phases * np.exp(2j * np.pi * b * U[k] / m)
                shifted[k] = e.x[i][l] % m
                k += 1
        idx = np.ravel_multi_index(
            [(U[k] + shifted[k]) % dimsS[k] for k in range(len(axes))], dimsS)
        rows = T[idx, :, np.arange(dS), :]
        return np.tensordot(phases, rows, axes=1)


def _numeric_scan(sys: MixedSystem, B: np.ndarray, w_min: int, w_max: int,
                  tol: float) -> KLReport:
    scanner = _SupportScanner(sys, B)
    K = B.shape[1]
    eye = np.eye(K)
    checked = 0
    maxdev = 0.0
    max_abs_f = 0.0
    nonzero_f = 0
    witness = None
    ops = [_particle_ops(f) for f in sys.factors]
    for k in range(max(1, w_min), w_max + 1):
        for supp in itertools.combinations(range(sys.n), k):
            tensor = scanner._tensor_for(supp)
            for choice in itertools.product(*(ops[i] for i in supp)):
                x = [tuple(0 for _ in f) for f in sys.factors]
                z = [tuple(0 for _ in f) for f in sys.factors]
                for i, (xd, zd) in zip(supp, choice):
                    x[i] = xd
                    z[i] = zd
                e = ErrorWord(tuple(x), tuple(z))
                checked += 1
                M = scanner.matrix(e, supp, tensor)
                f = np.trace(M) / K
                dev = float(np.abs(M - f * eye).max())
                if abs(f) > tol:
                    nonzero_f += 1
                    max_abs_f = max(max_abs_f, abs(f))
                if dev > maxdev:
                    maxdev = dev
                    if dev > tol and witness is None:
                        witness = {"error": _word_json(sys, e), "deviation": dev}
    ok = witness is None
    return KLReport(ok, "numeric", checked, maxdev,
                    {"nonzero_f": nonzero_f, "max_abs_f": max_abs_f}, witness)


def kl_verify_numeric(code: Code, d: int | None = None, tol: float = 1e-9,
                      cap: int | None = None) -> KLReport:
    """Direct KL check: for every error of weight below d, the K x K
    matrix of inner products must be f times the identity within tol."""
    d = code.d if d is None else d
    B = code.basis(cap=cap)
    return _numeric_scan(code.system, B, 1, d - 1, tol)


def kl_verify_words(code: Code, words: Sequence[ErrorWord], tol: float = 1e-9,
                    cap: int | None = None) -> KLReport:
    """KL check for an explicit word list instead of a weight ball."""
    B = code.basis(cap=cap)
    K = code.K
    eye = np.eye(K)
    maxdev = 0.0
    max_abs_f = 0.0
    nonzero_f = 0
    witness = None
    for e in words:
        M = B.conj().T @ apply_error(e, code.system, B)
        f = np.trace(M) / K
        dev = float(np.abs(M - f * eye).max())
        if abs(f) > tol:
            nonzero_f += 1
            max_abs_f = max(max_abs_f, abs(f))
        if dev > maxdev:
            maxdev = dev
            if dev > tol and witness is None:
                witness = {"error": _word_json(code.system, e), "deviation": dev}
    return KLReport(witness is None, "words", len(words), maxdev,
                    {"nonzero_f": nonzero_f, "max_abs_f": max_abs_f}, witness)


def code_distance(code: Code, w_cap: int | None = None, tol: float = 1e-9,
                  cap: int | None = None) -> int:
    """Smallest error weight at which KL fails; w_cap + 1 if none found
    up to w_cap."""
    w_cap = code.n if w_cap is None else w_cap
    B = code.basis(cap=cap)
    for w in range(1, w_cap + 1):
        rep = _numeric_scan(code.system, B, w, w, tol)
        if not rep.ok:
            return w
    return w_cap + 1


# --- stabilizer rows ---------------------------------------------------


@dataclass(frozen=True)
class StabilizerRow:
    """One generator, parsed from per-layer symbol strings such as
    ("ZZXXZ", "III").  Y on a qubit factor means i X Z."""

    text: tuple[str, ...]
    word: ErrorWord


def parse_stabilizer_row(sys: MixedSystem, layer_strings: Sequence[str],
                         phase: Phase = PHASE_ONE) -> StabilizerRow:
    layers = sys.layers
    if layers is None:
        raise ValueError("stabilizer rows require a layered system")
    if len(layer_strings) != len(layers):
        raise ValueError(f"expected {len(layers)} layer strings")
    x = [[0] * len(f) for f in sys.factors]
    z = [[0] * len(f) for f in sys.factors]
    ph = phase
    for l, ((m, nl), text) in enumerate(zip(layers, layer_strings)):
        if len(text) != nl:
            raise ValueError(f"layer {l} needs {nl} symbols, got {text!r}")
        for i, sym in enumerate(text):
            if sym == "I":
                continue
            elif sym == "X":
                x[i][l] = 1
            elif sym == "Z":
                z[i][l] = 1
            elif sym == "Y":
                if m != 2:
                    raise ValueError("Y is only defined on qubit factors")
                x[i][l] = 1
                z[i][l] = 1
                ph = phase_mul(ph, PHASE_I)
            else:
                raise ValueError(f"unknown symbol {sym!r} in layer {l}")
    word = ErrorWord(tuple(tuple(r) for r in x), tuple(tuple(r) for r in z), ph)
    return StabilizerRow(tuple(layer_strings), word)


def rows_commute(sys: MixedSystem, a: ErrorWord, b: ErrorWord) -> bool:
    """Exact commutation: the symplectic phase over all factors is 1."""
    ph = PHASE_ONE
    for i, f in enumerate(sys.factors):
        for l, m in enumerate(f):
            expo = a.z[i][l] * b.x[i][l] - a.x[i][l] * b.z[i][l]
            ph = phase_mul(ph, Phase(expo, m))
    return ph == PHASE_ONE


def _row_power(sys: MixedSystem, w: ErrorWord, k: int) -> ErrorWord:
    out = ErrorWord.identity(sys)
    for _ in range(k):
        out = compose(sys, out, w)
    return out


def _label_key(e: ErrorWord) -> tuple:
    return (e.x, e.z)


def _word_from_exponents(sys: MixedSystem, adjusted: Sequence[ErrorWord],
                         ks: Sequence[int]) -> ErrorWord:
    out = ErrorWord.identity(sys)
    for w, k in zip(adjusted, ks):
        out = compose(sys, out, _row_power(sys, w, k))
    return out


def _exact_dim(sys: MixedSystem, adjusted: Sequence[ErrorWord]) -> float:
    """Joint +1 eigenspace dimension of commuting rows whose chosen
    phases close each cyclic order exactly.

    The rows generate an abelian operator group; averaging it gives the
    joint projector, and only identity-label words contribute to the
    trace.  Identity-label exponent tuples form the kernel of the label
    homomorphism, on which the word phase is a character: the trace is
    D/|label image| when that character is trivial and 0 otherwise.
    Schreier generators obtained while enumerating the label image
    generate the kernel, so the character is checked on those alone."""
    D = sys.total_dim
    orders = [word_order(sys, w) for w in adjusted]
    ident = ErrorWord.identity(sys)
    zero = tuple(0 for _ in adjusted)
    reps: dict[tuple, tuple] = {_label_key(ident): zero}
    frontier: list[tuple[tuple, ErrorWord]] = [(zero, ident)]
    kernel_gens: set[tuple] = set()
    while frontier:
        new = []
        for ks, base in frontier:
            for r, w in enumerate(adjusted):
                nks = tuple((k + 1) % orders[i] if i == r else k
                            for i, k in enumerate(ks))
                nxt = compose(sys, base, w)
                lab = _label_key(nxt)
                if lab in reps:
                    diff = tuple((a - b) % o
                                 for a, b, o in zip(nks, reps[lab], orders))
                    if any(diff):
                        kernel_gens.add(diff)
                else:
                    reps[lab] = nks
                    new.append((nks, nxt))
        frontier = new
    for kg in kernel_gens:
        if _word_from_exponents(sys, adjusted, kg).phase != PHASE_ONE:
            return 0.0
    return D / len(reps)


def _project_columns(sys: MixedSystem, adjusted: Sequence[ErrorWord],
                     mat: np.ndarray) -> np.ndarray:
    """Apply the joint projector as the product of per-row cyclic
    averages (each exact because the adjusted phase closes the order)."""
    out = mat.astype(complex)
    for w in adjusted:
        ordw = word_order(sys, w)
        acc = out
        cur = out
        for _ in range(ordw - 1):
            cur = apply_error(w, sys, cur)
            acc = acc + cur
        out = acc / ordw
    return out


@dataclass(frozen=True)
class StabilizerReport:
    ok: bool
    commuting: bool
    row_orders: tuple[int, ...]
    chosen_phases: tuple[Phase, ...]
    eigenspace_dim: float
    projector_diff: float | None
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "verdict": "pass" if self.ok else "fail",
            "commuting": self.commuting,
            "row_orders": list(self.row_orders),
            "chosen_phases": [[p.k, p.L] for p in self.chosen_phases],
            "eigenspace_dim": self.eigenspace_dim,
        }
        if self.projector_diff is not None:
            out["projector_diff"] = self.projector_diff
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _phase_candidates(sys: MixedSystem, w: ErrorWord) -> list[Phase]:
    """Multipliers lam making (lam w)^order exactly the identity."""
    ordw = word_order(sys, w)
    closing = _row_power(sys, w, ordw).phase  # label is identity; phase may not be
    base = Phase(-closing.k, closing.L * ordw)
    return [phase_mul(base, Phase(j, ordw)) for j in range(ordw)]


def verify_stabilizer(rows: Sequence[StabilizerRow], code: Code,
                      tol: float = 1e-9, cap: int | None = None) -> StabilizerReport:
    """Check rows pairwise commute, close cyclically, and stabilize
    exactly the code space once each row's free phase is fixed.

    The phase of each published row is only defined up to its cyclic
    order; the verified multiplier per row is reported.
    """
    sys = code.system
    words = [r.word for r in rows]
    orders = tuple(word_order(sys, w) for w in words)

    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            if not rows_commute(sys, words[i], words[j]):
                return StabilizerReport(
                    False, False, orders, (PHASE_ONE,) * len(words),
                    float("nan"), None, {"noncommuting_pair": [i, j]})

    B = code.basis(cap=cap)
    witness: dict | None = None
    chosen: list[Phase] = []
    adjusted: list[ErrorWord] = []
    for idx, w in enumerate(words):
        RB = apply_error(w, sys, B)
        M = B.conj().T @ RB
        c = np.trace(M) / code.K
        if np.abs(M - c * np.eye(code.K)).max() > tol or abs(abs(c) - 1) > tol:
            if witness is None:
                witness = {"row_not_scalar_on_code": idx}
        cands = _phase_candidates(sys, w)
        lam = min(cands, key=lambda p: abs(phase_as_complex(p) - np.conj(c)))
        if witness is None and abs(phase_as_complex(lam) - np.conj(c)) > tol:
            witness = {"row_phase_outside_cyclic_group": idx}
        chosen.append(lam)
        adjusted.append(ErrorWord(w.x, w.z, phase_mul(w.phase, lam)))

    # the eigenspace is still reported when a row fails to act as a
    # scalar: the dimension mismatch is itself informative
    dim = _exact_dim(sys, adjusted)
    # code space inside eigenspace + equal dimension => projector equality;
    # the norm below is ||P - B B^dagger||_F computed without forming P
    PB = _project_columns(sys, adjusted, B)
    tr_bpb = float(np.trace(B.conj().T @ PB).real)
    diff = float(np.sqrt(max(dim + code.K - 2 * tr_bpb, 0.0)))
    ok = witness is None and abs(dim - code.K) < tol and diff < np.sqrt(tol)
    if not ok and witness is None:
        witness = {"eigenspace_dim": dim, "projector_diff": diff}
    return StabilizerReport(ok, True, orders, tuple(chosen), dim, diff, witness)


def stabilizer_eigenbasis(sys: MixedSystem, rows: Sequence[StabilizerRow],
                          phases: Sequence[Phase] | None = None,
                          tol: float = 1e-9, cap: int | None = None) -> np.ndarray:
    """Orthonormal basis of the joint +1 eigenspace, built by projecting
    standard basis vectors through the group average (cheap because
    every group element is a monomial matrix)."""
    _check_cap(sys.total_dim, cap)
    words = list(r.word for r in rows)
    if phases is not None:
        words = [ErrorWord(w.x, w.z, phase_mul(w.phase, p))
                 for w, p in zip(words, phases)]
    for i, w in enumerate(words):
        ordw = word_order(sys, w)
        if _row_power(sys, w, ordw).phase != PHASE_ONE:
            raise ValueError(
                f"row {i} does not close: its power of order {ordw} is a "
                f"nontrivial scalar, so +1 is not in its spectrum as given; "
                f"adjust the row's phase")
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            if not rows_commute(sys, words[i], words[j]):
                raise ValueError(f"rows {i} and {j} do not commute")
    dim = _exact_dim(sys, words)
    K = round(dim)
    if abs(dim - K) > tol or K == 0:
        raise ValueError(f"eigenspace dimension {dim} is not a positive integer")
    D = sys.total_dim
    basis: list[np.ndarray] = []
    block = 64
    for start in range(0, D, block):
        if len(basis) == K:
            break
        seeds = np.zeros((D, min(block, D - start)), dtype=complex)
        for j in range(seeds.shape[1]):
            seeds[start + j, j] = 1.0
        proj = _project_columns(sys, words, seeds)
        for j in range(proj.shape[1]):
            if len(basis) == K:
                break
            v = proj[:, j]
            for b in basis:
                v = v - b * (b.conj() @ v)
            norm = np.linalg.norm(v)
            if norm > 1e-6:
                basis.append(v / norm)
    if len(basis) != K:
        raise ValueError("failed to span the eigenspace from standard seeds")
    return np.stack(basis, axis=1)
