"""Search for a code, freeze it into a certificate, and re-verify it.

Certificates are plain JSON with a content hash over the construction
and the claims.  Anyone holding the file can rebuild the code and rerun
the checks; any edit to the construction invalidates the hash.
"""
import json
import tempfile
from pathlib import Path

from mixedqec import (
    Certificate,
    CodingClique,
    loop_graph,
    search_clique,
    verify_certificate,
)
from mixedqec.certificates import CertificateError, load_certificate

L3 = loop_graph(3, 2)

# Greedy group search over pairs of triangle-graph layers, distance 2.
res = search_clique((L3, L3), d=2, target_K=4, mode="group")
clique = res.clique
print(f"search: K = {clique.K} after {res.nodes_used} nodes ({res.flag})")

cert = Certificate(
    "searched_3_4_2",
    clique.system(),
    clique.K,
    clique.d,
    {
        "type": "composite_clique",
        "graphs": [g.to_json() for g in clique.graphs],
        "vectors": [[list(part.entries) for part in v] for v in clique.vectors],
    },
)
print(f"content hash: {cert.hash}")

report = verify_certificate(cert, distance=True)
print(f"verification verdict: {report['verdict']}")
print(f"verification block: {json.dumps(cert.verification, sort_keys=True)}")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "cert.json"
    cert.save(path)

    # Round trip: loading recomputes the hash and compares.
    again = load_certificate(path)
    print(f"reloaded '{again.name}', hash check passed")

    # Tamper with one codeword label and try again.
    raw = json.loads(path.read_text())
    raw["construction"]["vectors"][1][0][0] ^= 1
    path.write_text(json.dumps(raw))
    try:
        load_certificate(path)
    except CertificateError as exc:
        print(f"tampered file rejected: {exc}")
