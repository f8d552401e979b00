"""Serializable, re-verifiable code certificates.

A certificate records how a code is built (clique, stabilizer rows,
projection, product, or pasting), what is claimed for it, and the last
verification results.  Construction data is integers-only so the
canonical serialization hashes identically across platforms; the
verification block is mutable and excluded from the hash.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import ModVec, Phase, phase_mul
from .bounds import bound_report
from .clique import CodingClique, check_clique, closure
from .compose import clique_stabilizer_rows, paste_distance2, pasted_code, product_code
from .errors import ErrorWord, MixedSystem, dim_cap
from .graphs import WeightedGraph
from .projection import ProjectorSpec, project_code, required_detectable_set
from .verifier import (
    Code,
    StabilizerRow,
    code_distance,
    kl_verify_numeric,
    kl_verify_symbolic,
    kl_verify_words,
    parse_stabilizer_row,
    stabilizer_eigenbasis,
)

SCHEMA = "mixedqec-cert/1"
TOOLKIT_VERSION = "0.1.0"

CONSTRUCTION_TYPES = ("composite_clique", "stabilizer", "projection",
                      "product", "pasting")


class CertificateError(Exception):
    """Malformed certificate content; distinct from verification failure."""


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def content_hash(system_json: dict, claimed: dict, construction: dict) -> str:
    payload = {"schema": SCHEMA, "system": system_json, "claimed": claimed,
               "construction": construction}
    return "sha256:" + hashlib.sha256(canonical_json(payload).encode()).hexdigest()


@dataclass
class Certificate:
    name: str
    system: MixedSystem
    K: int
    d: int
    construction: dict
    verification: dict = field(default_factory=dict)
    toolkit_version: str = TOOLKIT_VERSION

    def system_json(self) -> dict:
        js = self.system.to_json()
        js["dims"] = list(self.system.dims)
        return js

    @property
    def hash(self) -> str:
        return content_hash(self.system_json(), {"K": self.K, "d": self.d},
                            self.construction)

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "name": self.name,
            "system": self.system_json(),
            "claimed": {"K": self.K, "d": self.d},
            "construction": self.construction,
            "toolkit_version": self.toolkit_version,
            "content_hash": self.hash,
        }
        if self.verification:
            out["verification"] = self.verification
        return out

    @staticmethod
    def from_json(obj: dict, check_hash: bool = True) -> "Certificate":
        if not isinstance(obj, dict):
            raise CertificateError("certificate must be a JSON object")
        if obj.get("schema") != SCHEMA:
            raise CertificateError(f"unsupported schema {obj.get('schema')!r}")
        for key in ("name", "system", "claimed", "construction"):
            if key not in obj:
                raise CertificateError(f"missing field {key!r}")
        try:
            system = MixedSystem.from_json(obj["system"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"bad system block: {exc}") from exc
        dims = obj["system"].get("dims")
        if dims is not None and tuple(dims) != system.dims:
            raise CertificateError("system dims do not match factors")
        claimed = obj["claimed"]
        if not isinstance(claimed, dict) or "K" not in claimed or "d" not in claimed:
            raise CertificateError("claimed block needs K and d")
        K, d = int(claimed["K"]), int(claimed["d"])
        if K < 1 or d < 1:
            raise CertificateError("claimed K and d must be positive")
        cons = obj["construction"]
        if not isinstance(cons, dict) or cons.get("type") not in CONSTRUCTION_TYPES:
            raise CertificateError(f"unknown construction type "
                                   f"{cons.get('type') if isinstance(cons, dict) else cons!r}")
        cert = Certificate(str(obj["name"]), system, K, d, cons,
                           dict(obj.get("verification", {})),
                           str(obj.get("toolkit_version", TOOLKIT_VERSION)))
        stored = obj.get("content_hash")
        if check_hash and stored is not None and stored != cert.hash:
            raise CertificateError("content hash mismatch")
        return cert

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n")


def load_certificate(path: str | Path, check_hash: bool = True) -> Certificate:
    p = Path(path)
    try:
        obj = json.loads(p.read_text())
    except FileNotFoundError as exc:
        raise CertificateError(f"certificate not found: {p}") from exc
    except json.JSONDecodeError as exc:
        raise CertificateError(f"invalid JSON in {p}: {exc}") from exc
    return Certificate.from_json(obj, check_hash=check_hash)


# --- construction -> Code ------------------------------------------------


def _clique_from_construction(cons: dict, d: int) -> CodingClique:
    try:
        graphs = tuple(WeightedGraph.from_json(g) for g in cons["graphs"])
        raw = cons.get("vectors")
        if raw is not None:
            vectors = tuple(
                tuple(ModVec(g.m, tuple(part))
                      for g, part in zip(graphs, v, strict=True))
                for v in raw)
        else:
            gens = [
                tuple(ModVec(g.m, tuple(part))
                      for g, part in zip(graphs, v, strict=True))
                for v in cons["generators"]]
            vectors = closure(gens)
        return CodingClique(graphs=graphs, d=d, vectors=vectors)
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f"bad clique construction: {exc}") from exc


def _stabilizer_rows(cert: Certificate):
    cons = cert.construction
    try:
        rows = [parse_stabilizer_row(cert.system, tuple(t)) for t in cons["rows"]]
        phases = cons.get("phases")
        if phases is not None:
            phases = [Phase(int(k), int(L)) for k, L in phases]
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f"bad stabilizer construction: {exc}") from exc
    return rows, phases


def _resolve(ref: str, base_dir: Path) -> Path:
    p = Path(ref)
    return p if p.is_absolute() else base_dir / p


def build_code(cert: Certificate, base_dir: str | Path = ".",
               cap: int | None = None, _seen: frozenset = frozenset()) -> Code:
    """Construct the code a certificate describes.

    Structural problems raise CertificateError; mathematical failures
    (non-closing rows, vanishing codewords, eigenspace mismatch) raise
    ValueError and count as verification failures, not input errors.
    """
    base_dir = Path(base_dir)
    cons = cert.construction
    kind = cons["type"]
    if kind == "composite_clique":
        return Code.from_clique(_clique_from_construction(cons, cert.d))
    if kind == "stabilizer":
        rows, phases = _stabilizer_rows(cert)
        B = stabilizer_eigenbasis(cert.system, rows, phases=phases, cap=cap)
        return Code.from_basis(cert.system, B, cert.d)
    if kind == "projection":
        anc_cert, anc_dir, mark = _load_ref(cons, "ancilla", base_dir, _seen)
        ancilla = build_code(anc_cert, anc_dir, cap=cap, _seen=_seen | {mark})
        try:
            spec = ProjectorSpec.from_json(ancilla.system, cons["projector"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"bad projector block: {exc}") from exc
        return project_code(ancilla, spec)
    if kind == "product":
        refs = cons.get("refs")
        if not isinstance(refs, list) or len(refs) != 2:
            raise CertificateError("product construction needs two refs")
        codes = []
        for ref in refs:
            sub, sub_dir, mark = _load_path(ref, base_dir, _seen)
            codes.append(build_code(sub, sub_dir, cap=cap, _seen=_seen | {mark}))
        return product_code(codes[0], codes[1], cap=cap)
    if kind == "pasting":
        refs = cons.get("refs")
        if not isinstance(refs, list) or len(refs) != 1:
            raise CertificateError("pasting construction needs exactly one ref")
        base_cert, sub_dir, mark = _load_path(refs[0], base_dir, _seen)
        base_code = build_code(base_cert, sub_dir, cap=cap, _seen=_seen | {mark})
        rows = base_stabilizer_rows(base_cert, base_code)
        try:
            blocks = int(cons["blocks"])
            block_dim = int(cons["block_dim"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"bad pasting block parameters: {exc}") from exc
        res = paste_distance2(rows, base_code, blocks, block_dim, cap=cap)
        return pasted_code(res, cap=cap)
    raise CertificateError(f"unknown construction type {kind!r}")


def base_stabilizer_rows(cert: Certificate, code: Code) -> tuple[StabilizerRow, ...]:
    """Stabilizer rows of a built code: stored rows (with their phase
    multipliers folded in) for stabilizer form, the clique-vector kernel
    otherwise."""
    if cert.construction["type"] == "stabilizer":
        rows, phases = _stabilizer_rows(cert)
        if phases is not None:
            rows = [StabilizerRow(r.text, ErrorWord(r.word.x, r.word.z,
                                                    phase_mul(r.word.phase, p)))
                    for r, p in zip(rows, phases)]
        return tuple(rows)
    if code.clique is not None:
        return clique_stabilizer_rows(code.clique)
    raise CertificateError("pasting base must be clique or stabilizer form")


def _load_ref(cons: dict, key: str, base_dir: Path, seen: frozenset):
    ref = cons.get(key)
    if not isinstance(ref, str):
        raise CertificateError(f"{cons['type']} construction needs a {key!r} ref")
    return _load_path(ref, base_dir, seen)


def _load_path(ref: str, base_dir: Path, seen: frozenset):
    """Load a referenced certificate; returns (cert, its dir, cycle marker)."""
    path = _resolve(ref, base_dir)
    marker = path.resolve()
    if marker in seen:
        raise CertificateError(f"circular certificate reference via {ref}")
    sub = load_certificate(path)
    return sub, path.parent, marker


# --- verification --------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.3e}"


def verify_certificate(cert: Certificate, base_dir: str | Path = ".",
                       run_symbolic: bool = True, run_numeric: bool = True,
                       distance: bool = False, tol: float = 1e-9,
                       cap: int | None = None) -> dict:
    """Re-run the requested checks and return a report.

    The certificate's verification block is updated in memory; callers
    decide whether to write it back.  Verdict is "pass" only if every
    check that ran succeeded and the claimed K matches the built code.
    """
    checks: dict = {}
    failures: list[str] = []
    record: dict = {"tol": _fmt(tol)}

    try:
        code = build_code(cert, base_dir, cap=cap)
    except ValueError as exc:
        report = {"name": cert.name, "verdict": "fail",
                  "error": f"construction failed: {exc}", "checks": checks}
        cert.verification = {**record, "verdict": "fail"}
        return report

    if code.K != cert.K:
        failures.append(f"built K = {code.K}, claimed {cert.K}")
    if code.system.dims != cert.system.dims:
        failures.append(f"built dims {code.system.dims}, claimed {cert.system.dims}")

    if code.clique is not None:
        crep = check_clique(code.clique)
        checks["clique"] = crep.to_json()
        if not crep.ok:
            failures.append("clique conditions")
        if run_symbolic:
            srep = kl_verify_symbolic(code)
            checks["symbolic"] = srep.to_json()
            record["symbolic"] = "pass" if srep.ok else "fail"
            if not srep.ok:
                failures.append("symbolic verification")
    elif run_symbolic:
        checks["symbolic"] = {"skipped": "no clique form"}
        record["symbolic"] = "skipped"

    if cert.construction["type"] == "projection":
        try:
            anc_cert, anc_dir, _ = _load_ref(cert.construction, "ancilla",
                                             Path(base_dir), frozenset())
            ancilla = build_code(anc_cert, anc_dir, cap=cap)
            spec = ProjectorSpec.from_json(ancilla.system,
                                           cert.construction["projector"])
            words = required_detectable_set(spec, d=cert.d)
            wrep = kl_verify_words(ancilla, words, tol=tol, cap=cap)
            checks["ancilla_detection"] = wrep.to_json()
            if not wrep.ok:
                failures.append("ancilla misses a dressed error")
        except (CertificateError, ValueError) as exc:
            checks["ancilla_detection"] = {"error": str(exc)}
            failures.append("ancilla detection check errored")

    if run_numeric:
        limit = dim_cap() if cap is None else cap
        if code.system.total_dim > limit:
            checks["numeric"] = {
                "skipped": f"dimension {code.system.total_dim} exceeds cap {limit}"}
            record["numeric"] = "skipped"
        else:
            nrep = kl_verify_numeric(code, tol=tol, cap=cap)
            checks["numeric"] = nrep.to_json()
            record["numeric"] = "pass" if nrep.ok else "fail"
            if nrep.max_deviation is not None:
                record["max_deviation"] = _fmt(nrep.max_deviation)
            if not nrep.ok:
                failures.append("numeric verification")

    if distance:
        dmeas = code_distance(code, cap=cap, tol=tol)
        checks["distance"] = dmeas
        record["distance"] = dmeas
        if dmeas < cert.d:
            failures.append(f"measured distance {dmeas} < claimed {cert.d}")

    brep = bound_report(code.system.dims, cert.d, K=cert.K)
    checks["bounds"] = brep.to_json()
    record["bounds"] = brep.verdict
    if brep.verdict == "violates":
        failures.append("claimed K violates a bound")

    verdict = "pass" if not failures else "fail"
    record["verdict"] = verdict
    cert.verification = record
    report = {"name": cert.name, "verdict": verdict, "checks": checks}
    if failures:
        report["failures"] = failures
    return report
