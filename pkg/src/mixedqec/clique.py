"""Coding cliques: the phase-label sets that span graph-state codes.

A clique over a tuple of layered graphs is a set of per-layer phase
vectors c = (c_1, ..., c_k) claimed to satisfy three conditions:

  (i)   the zero vector is a member,
  (ii)  prod_l w_{m_l}^{s_l . c_l} = 1 for every member and every label
        s in the d-purity set (labels whose stabilizer word has weight
        below d),
  (iii) every pairwise difference of members lies in the d-uncoverable
        set (differences no error of weight below d can produce).

check_clique tests exactly these; search_clique looks for large sets
satisfying them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .algebra import PHASE_ONE, ModVec, Phase, dot_mod, omega, phase_mul
from .errors import MixedSystem, enumerate_errors
from .graphs import WeightedGraph, graph_action

LayerVecs = tuple[ModVec, ...]


def _layer_system(graphs: Sequence[WeightedGraph]) -> MixedSystem:
    return MixedSystem.layered([(g.m, g.n) for g in graphs])


def _zero(graphs: Sequence[WeightedGraph]) -> LayerVecs:
    return tuple(ModVec.zeros(g.m, g.n) for g in graphs)


def _word_weight(graphs: Sequence[WeightedGraph], xs: LayerVecs, zs: LayerVecs) -> int:
    n = graphs[0].n
    hit = [False] * n
    for g, x, z in zip(graphs, xs, zs):
        for i in range(g.n):
            if x[i] or z[i]:
                hit[i] = True
    return sum(hit)


def all_vectors(graphs: Sequence[WeightedGraph]) -> Iterator[LayerVecs]:
    """Every per-layer phase vector, in lexicographic order."""
    spaces = [
        [ModVec(g.m, entries) for entries in itertools.product(range(g.m), repeat=g.n)]
        for g in graphs
    ]
    return itertools.product(*spaces)


def purity_set(graphs: Sequence[WeightedGraph], d: int) -> tuple[LayerVecs, ...]:
    """All shift labels s whose stabilizer word X^s Z^{s.Gamma} acts on
    fewer than d particles.  Always contains the zero label."""
    if d < 1:
        raise ValueError("d must be >= 1")
    out = []
    for ss in all_vectors(graphs):
        ts = tuple(graph_action(s, g) for s, g in zip(ss, graphs))
        if _word_weight(graphs, ss, ts) < d:
            out.append(ss)
    return tuple(out)


@lru_cache(maxsize=64)
def _covered_cached(graphs: tuple[WeightedGraph, ...], d: int) -> frozenset[LayerVecs]:
    sys = _layer_system(graphs)
    out = set()
    for e in enumerate_errors(sys, d - 1):
        deltas = tuple(
            e.z_layer(sys, l) - graph_action(e.x_layer(sys, l), g)
            for l, g in enumerate(graphs)
        )
        out.add(deltas)
    return frozenset(out)


def covered_differences(graphs: Sequence[WeightedGraph], d: int) -> frozenset[LayerVecs]:
    """The complement of the d-uncoverable set: every per-layer value of
    t - s.Gamma produced by an error word of weight strictly between 0
    and d.  Memoized: membership tests repeat heavily during search."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return _covered_cached(tuple(graphs), d)


def in_uncoverable(deltas: LayerVecs, graphs: Sequence[WeightedGraph], d: int) -> bool:
    """True iff no error of weight in (0, d) reduces to the phase label
    deltas."""
    return tuple(deltas) not in covered_differences(graphs, d)


def condition_ii_phase(ss: LayerVecs, cs: LayerVecs) -> Phase:
    """prod_l w_{m_l}^{s_l . c_l}, exactly."""
    ph = PHASE_ONE
    for s, c in zip(ss, cs):
        ph = phase_mul(ph, omega(s.m, dot_mod(s, c)))
    return ph


@dataclass(frozen=True)
class CodingClique:
    """A claimed coding clique; check_clique is the judge."""

    graphs: tuple[WeightedGraph, ...]
    d: int
    vectors: tuple[LayerVecs, ...]

    def __post_init__(self) -> None:
        if not self.graphs:
            raise ValueError("need at least one graph layer")
        covers = [g.n for g in self.graphs]
        if covers != sorted(covers, reverse=True):
            raise ValueError("graphs must be ordered widest layer first")
        if self.d < 1:
            raise ValueError("d must be >= 1")
        vecs = tuple(tuple(v) for v in self.vectors)
        seen = set()
        for v in vecs:
            if len(v) != len(self.graphs):
                raise ValueError("vector layer count does not match graphs")
            for part, g in zip(v, self.graphs):
                if part.m != g.m or len(part) != g.n:
                    raise ValueError("vector does not match its layer graph")
            if v in seen:
                raise ValueError("clique vectors must be distinct")
            seen.add(v)
        object.__setattr__(self, "graphs", tuple(self.graphs))
        object.__setattr__(self, "vectors", vecs)

    @property
    def K(self) -> int:
        return len(self.vectors)

    def system(self) -> MixedSystem:
        return _layer_system(self.graphs)


@dataclass(frozen=True)
class CliqueReport:
    ok: bool
    zero_member: bool
    purity_phases_trivial: bool
    differences_uncoverable: bool
    purity_size: int
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "verdict": "pass" if self.ok else "fail",
            "conditions": {
                "zero_member": self.zero_member,
                "purity_phases_trivial": self.purity_phases_trivial,
                "differences_uncoverable": self.differences_uncoverable,
            },
            "purity_size": self.purity_size,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _vec_json(v: LayerVecs) -> list[list[int]]:
    return [list(part.entries) for part in v]


def check_clique(C: CodingClique) -> CliqueReport:
    """Test conditions (i)-(iii); on failure the witness identifies the
    first offending object in deterministic enumeration order."""
    zero = _zero(C.graphs)
    zero_ok = zero in set(C.vectors)
    witness = None
    if not zero_ok:
        witness = {"condition": "i", "missing": _vec_json(zero)}

    pure = purity_set(C.graphs, C.d)
    phases_ok = True
    for ss in pure:
        for c in C.vectors:
            if condition_ii_phase(ss, c) != PHASE_ONE:
                phases_ok = False
                if witness is None:
                    witness = {
                        "condition": "ii",
                        "purity_label": _vec_json(ss),
                        "vector": _vec_json(c),
                    }
                break
        if not phases_ok:
            break

    covered = covered_differences(C.graphs, C.d)
    diffs_ok = True
    for i, ci in enumerate(C.vectors):
        for j, cj in enumerate(C.vectors):
            if i == j:
                continue
            delta = tuple(a - b for a, b in zip(ci, cj))
            if delta in covered:
                diffs_ok = False
                if witness is None:
                    witness = {
                        "condition": "iii",
                        "pair": [_vec_json(ci), _vec_json(cj)],
                        "difference": _vec_json(delta),
                    }
                break
        if not diffs_ok:
            break

    ok = zero_ok and phases_ok and diffs_ok
    return CliqueReport(ok, zero_ok, phases_ok, diffs_ok, len(pure), witness)


def closure(generators: Sequence[LayerVecs]) -> tuple[LayerVecs, ...]:
    """The additive group generated, sorted lexicographically."""
    if not generators:
        raise ValueError("need at least one generator")
    zero = tuple(ModVec.zeros(part.m, len(part)) for part in generators[0])
    seen = {zero}
    frontier = [zero]
    while frontier:
        cur = frontier.pop()
        for g in generators:
            nxt = tuple(a + b for a, b in zip(cur, g))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return tuple(sorted(seen, key=_lex_key))


def _lex_key(v: LayerVecs) -> tuple[int, ...]:
    return tuple(a for part in v for a in part.entries)


@dataclass(frozen=True)
class SearchResult:
    clique: CodingClique
    nodes_used: int
    flag: str  # "ok" | "target" | "budget" | "trivial"


def _condition_ii_candidates(graphs: Sequence[WeightedGraph], d: int) -> list[LayerVecs]:
    """Vectors compatible with condition (ii) over the full purity set.
    The constraint is additive in the vector, so this is a subgroup."""
    pure = purity_set(graphs, d)
    out = []
    for v in all_vectors(graphs):
        if all(condition_ii_phase(ss, v) == PHASE_ONE for ss in pure):
            out.append(v)
    return out


def search_clique(graphs: Sequence[WeightedGraph], d: int, target_K: int,
                  budget: int = 100000, mode: str = "group") -> SearchResult:
    """Depth-first search for a large clique.

    Candidates are first reduced to the subgroup satisfying condition
    (ii), then extended lexicographically smallest-first under pairwise
    condition-(iii) pruning.  In group mode extensions are generators
    and the whole generated subgroup must stay uncoverable, which both
    shrinks the tree and guarantees an additive clique.  The budget is
    counted in DFS nodes, so results are machine independent.
    """
    if mode not in ("group", "set"):
        raise ValueError(f"unknown mode {mode!r}")
    if target_K < 1:
        raise ValueError("target_K must be >= 1")
    graphs = tuple(graphs)
    zero = _zero(graphs)
    covered = covered_differences(graphs, d)
    cands = [v for v in _condition_ii_candidates(graphs, d)
             if v != zero and v not in covered]
    cands.sort(key=_lex_key)

    best: list[LayerVecs] = [zero]
    nodes = 0
    hit_budget = False
    hit_target = False

    def diff_ok(u: LayerVecs, v: LayerVecs) -> bool:
        return tuple(a - b for a, b in zip(u, v)) not in covered

    if mode == "set":
        def extend(current: list[LayerVecs], pool: list[LayerVecs]) -> None:
            nonlocal best, nodes, hit_budget, hit_target
            if hit_target or hit_budget:
                return
            if len(current) > len(best):
                best = list(current)
                if len(best) >= target_K:
                    hit_target = True
                    return
            for idx, v in enumerate(pool):
                if nodes >= budget:
                    hit_budget = True
                    return
                nodes += 1
                if len(current) + len(pool) - idx <= len(best):
                    return
                nxt_pool = [u for u in pool[idx + 1:] if diff_ok(u, v)]
                extend(current + [v], nxt_pool)

        extend([zero], cands)
    else:
        def group_ok(members: set[LayerVecs]) -> bool:
            return all(m == zero or m not in covered for m in members)

        def extend_group(group: set[LayerVecs], start: int) -> None:
            nonlocal best, nodes, hit_budget, hit_target
            if hit_target or hit_budget:
                return
            if len(group) > len(best):
                best = sorted(group, key=_lex_key)
                if len(best) >= target_K:
                    hit_target = True
                    return
            for idx in range(start, len(cands)):
                if nodes >= budget:
                    hit_budget = True
                    return
                g = cands[idx]
                if g in group:
                    continue
                nodes += 1
                new_group = set(group)
                frontier = [g]
                while frontier:
                    cur = frontier.pop()
                    if cur in new_group:
                        continue
                    new_group.add(cur)
                    for h in list(new_group):
                        s = tuple(a + b for a, b in zip(cur, h))
                        if s not in new_group:
                            frontier.append(s)
                if group_ok(new_group):
                    extend_group(new_group, idx + 1)

        extend_group({zero}, 0)

    vectors = tuple(sorted(best, key=_lex_key))
    clique = CodingClique(graphs, d, vectors)
    if len(vectors) == 1 and target_K > 1:
        flag = "budget" if hit_budget else "trivial"
    elif hit_target:
        flag = "target"
    elif hit_budget:
        flag = "budget"
    else:
        flag = "ok"
    return SearchResult(clique, nodes, flag)
