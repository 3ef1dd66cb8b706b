"""Brute-force certification of the extremal bounds.

Graphs are enumerated as edge bitmasks and reduced with numpy.  A bipartite
graph on r x s cells is the mask with bit i*s + j set for edge (i, j); a
general graph on n vertices uses one bit per vertex pair in lexicographic
order.  Degrees are popcounts against per-vertex incidence masks, so the
whole search space is processed in vectorized chunks.

All maximization happens in the Zagreb convention; cherry counts are
derived afterwards via z1 = 2*cherries + 2*edges.  Reports carry the exact
optimum, the number of optimal graphs, the optimal graph with the smallest
bitmask (a partition-independent tie-break, so results do not depend on
chunking or worker count), and the construction the relevant bound
predicts for those parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from multiprocessing import Pool

import numpy as np

from .constructions import (
    BipartiteFamilyParams,
    ConstructionError,
    ak_bipartite,
    b1_family,
    b2_family,
    g1_family,
    g2_family,
    quasi_clique,
    quasi_star,
)
from .graph_core import (
    BipartiteGraph,
    Graph,
    SearchCapExceededError,
    bipartite_to_json,
    graph_to_json,
    z1_index,
)

DEFAULT_BIT_CAP = 24
_CHUNK_BITS = 20

if hasattr(np, "bitwise_count"):

    def _popcount(a: np.ndarray) -> np.ndarray:
        return np.bitwise_count(a)

else:  # pragma: no cover - for numpy < 2.0
    _POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)

    def _popcount(a: np.ndarray) -> np.ndarray:
        a = a.astype(np.uint64)
        out = _POP16[a & np.uint64(0xFFFF)]
        for shift in (16, 32, 48):
            out = out + _POP16[(a >> np.uint64(shift)) & np.uint64(0xFFFF)]
        return out


def _mask_chunks(bits: int, chunk_bits: int = _CHUNK_BITS):
    total = 1 << bits
    step = 1 << min(bits, chunk_bits)
    for lo in range(0, total, step):
        yield lo, min(lo + step, total)


def _merge(acc, new):
    """Associative best-of merge on (z1, count, min_mask) partials."""
    if new is None:
        return acc
    if acc is None or new[0] > acc[0]:
        return new
    if new[0] == acc[0]:
        return (acc[0], acc[1] + new[1], min(acc[2], new[2]))
    return acc


# ----------------------------------------------------------------------
# bipartite enumeration


def _bipartite_degree_arrays(r: int, s: int, masks: np.ndarray):
    rowdeg = np.empty((r, masks.size), dtype=np.uint8)
    for i in range(r):
        rm = np.uint64(((1 << s) - 1) << (i * s))
        rowdeg[i] = _popcount(masks & rm)
    coldeg = np.empty((s, masks.size), dtype=np.uint8)
    for j in range(s):
        cm = 0
        for i in range(r):
            cm |= 1 << (i * s + j)
        coldeg[j] = _popcount(masks & np.uint64(cm))
    return rowdeg, coldeg


def _bipartite_z1(rowdeg: np.ndarray, coldeg: np.ndarray) -> np.ndarray:
    rd = rowdeg.astype(np.int64)
    cd = coldeg.astype(np.int64)
    return (rd * rd).sum(axis=0) + (cd * cd).sum(axis=0)


def _bipartite_witness_ok(rowdeg, coldeg, ell: int, k: int, side: str) -> np.ndarray:
    if side == "left":
        return (rowdeg >= k).sum(axis=0) >= ell
    return (coldeg >= ell).sum(axis=0) >= k


def _phi_chunk(args):
    r, s, ell, k, m, side, lo, hi = args
    masks = np.arange(lo, hi, dtype=np.uint64)
    masks = masks[_popcount(masks) == m]
    if masks.size == 0:
        return None
    rowdeg, coldeg = _bipartite_degree_arrays(r, s, masks)
    ok = _bipartite_witness_ok(rowdeg, coldeg, ell, k, side)
    if not ok.any():
        return None
    masks = masks[ok]
    z1 = _bipartite_z1(rowdeg[:, ok], coldeg[:, ok])
    best = int(z1.max())
    at = z1 == best
    return best, int(at.sum()), int(masks[at].min())


def _bipartite_from_mask(r: int, s: int, mask: int) -> BipartiteGraph:
    edges = {(i, j) for i in range(r) for j in range(s) if mask >> (i * s + j) & 1}
    return BipartiteGraph(r, s, edges)


def _bounded_partitions(m: int, max_part: int, max_count: int):
    """Nonincreasing positive parts <= max_part, at most max_count of them."""

    def rec(remaining, bound, slots):
        if remaining == 0:
            yield []
            return
        if slots == 0 or bound == 0:
            return
        for first in range(min(bound, remaining), 0, -1):
            for rest in rec(remaining - first, first, slots - 1):
                yield [first] + rest

    yield from rec(m, max_part, max_count)


def _partition_witness_ok(lam: list[int], r: int, s: int, ell: int, k: int, side: str) -> bool:
    if side == "left":
        if k == 0:
            return r >= ell
        conj = [sum(1 for x in lam if x >= i) for i in range(1, (lam[0] if lam else 0) + 1)]
        return sum(1 for x in conj if x >= k) >= ell
    if ell == 0:
        return s >= k
    return sum(1 for x in lam if x >= ell) >= k


@dataclass
class OracleReport:
    """Exact search result plus the prediction it is compared against."""

    family: str
    params: dict
    mode: str
    optimum_z1: int
    optimum_cherries: int
    optimum_count: int
    optimum_graph: dict
    predicted_z1: int | None
    predicted_cherries: int | None
    predicted_branch: str | None
    prediction_feasible: bool | None
    match: bool | None

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "mode": self.mode,
            "optimum_z1": self.optimum_z1,
            "optimum_cherries": self.optimum_cherries,
            "optimum_count": self.optimum_count,
            "optimum_graph": self.optimum_graph,
            "predicted_z1": self.predicted_z1,
            "predicted_cherries": self.predicted_cherries,
            "predicted_branch": self.predicted_branch,
            "prediction_feasible": self.prediction_feasible,
            "match": self.match,
        }


def predicted_bipartite(r: int, s: int, ell: int, k: int, m: int):
    """Predicted extremal graph and branch label for the bipartite bound.

    Branches: column filling B for m >= r*k, witness-first B1 for
    m <= r*k with k + ell <= r, else B2.  At the boundary m = r*k the two
    applicable predictions must agree and are both checked.
    """
    BipartiteFamilyParams(r, s, m, ell, k)
    rk = r * k
    if m < rk:
        if k + ell <= r:
            return b1_family(BipartiteFamilyParams(r, s, m, ell, k)), "B1"
        return b2_family(BipartiteFamilyParams(r, s, m, ell, k)), "B2"
    g = ak_bipartite(r, s, m)
    if m > rk:
        return g, "B"
    label = "B1" if k + ell <= r else "B2"
    alt = (b1_family if label == "B1" else b2_family)(
        BipartiteFamilyParams(r, s, m, ell, k)
    )
    if z1_index(alt) != z1_index(g):
        raise AssertionError("branch predictions disagree at the boundary m = r*k")
    return g, f"{label}=B"


def _check_bits(bits: int, cap: int) -> None:
    if bits > cap:
        raise SearchCapExceededError(
            f"search space of 2^{bits} masks exceeds the cap of 2^{cap}"
        )


def _phi(r, s, ell, k, m, side, mode, jobs, cap) -> OracleReport:
    BipartiteFamilyParams(r, s, m, ell, k)
    family = "bipartite-left" if side == "left" else "bipartite-right"
    params = {"r": r, "s": s, "ell": ell, "k": k, "m": m}

    if mode == "shifted":
        best = None
        count = 0
        best_lam = None
        for lam in _bounded_partitions(m, r, s):
            if not _partition_witness_ok(lam, r, s, ell, k, side):
                continue
            conj = [sum(1 for x in lam if x >= i) for i in range(1, (lam[0] if lam else 0) + 1)]
            z1 = sum(x * x for x in lam) + sum(y * y for y in conj)
            if best is None or z1 > best:
                best, count, best_lam = z1, 1, lam
            elif z1 == best:
                count += 1
        if best is None:
            raise ConstructionError("no shifted graph satisfies the constraints")
        graph = BipartiteGraph(
            r, s, {(i, j) for j, h in enumerate(best_lam) for i in range(h)}
        )
        opt = (best, count, graph)
    elif mode == "full":
        bits = r * s
        _check_bits(bits, cap)
        tasks = [(r, s, ell, k, m, side, lo, hi) for lo, hi in _mask_chunks(bits)]
        if jobs > 1 and len(tasks) > 1:
            with Pool(jobs) as pool:
                partials = pool.map(_phi_chunk, tasks)
        else:
            partials = [_phi_chunk(t) for t in tasks]
        acc = None
        for p in partials:
            acc = _merge(acc, p)
        if acc is None:
            raise ConstructionError("no graph satisfies the constraints")
        opt = (acc[0], acc[1], _bipartite_from_mask(r, s, acc[2]))
    else:
        raise ValueError(f"unknown mode {mode!r}")

    predicted, branch = predicted_bipartite(r, s, ell, k, m)
    pred_z1 = z1_index(predicted)
    prd, pcd = predicted.left_degrees(), predicted.right_degrees()
    if side == "left":
        feasible = sum(1 for d in prd if d >= k) >= ell
    else:
        feasible = sum(1 for d in pcd if d >= ell) >= k
    best, count, graph = opt
    return OracleReport(
        family=family,
        params=params,
        mode=mode,
        optimum_z1=best,
        optimum_cherries=(best - 2 * m) // 2,
        optimum_count=count,
        optimum_graph=bipartite_to_json(graph),
        predicted_z1=pred_z1,
        predicted_cherries=(pred_z1 - 2 * m) // 2,
        predicted_branch=branch,
        prediction_feasible=feasible,
        match=best == pred_z1,
    )


def phi_bipartite(r, s, ell, k, m, *, mode="full", jobs=1, cap=DEFAULT_BIT_CAP) -> OracleReport:
    """Max Zagreb index over r x s bipartite graphs with m edges and at
    least ell rows of degree >= k, compared against the predicted branch."""
    return _phi(r, s, ell, k, m, "left", mode, jobs, cap)


def phi_bipartite_right(r, s, ell, k, m, *, mode="full", jobs=1, cap=DEFAULT_BIT_CAP) -> OracleReport:
    """Mirror of phi_bipartite with the witness on the right part: at
    least k columns of degree >= ell."""
    return _phi(r, s, ell, k, m, "right", mode, jobs, cap)


# ----------------------------------------------------------------------
# general graphs


def _pair_bit(u: int, v: int, n: int) -> int:
    # lexicographic pair index, u < v
    return comb(n, 2) - comb(n - u, 2) + (v - u - 1)


def _vertex_masks(n: int) -> list[int]:
    vm = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            bit = 1 << _pair_bit(u, v, n)
            vm[u] |= bit
            vm[v] |= bit
    return vm


def _graph_from_mask(n: int, mask: int) -> Graph:
    edges = {
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if mask >> _pair_bit(u, v, n) & 1
    }
    return Graph(n, edges)


def _general_chunk(args):
    n, m, ell, k, lo, hi = args
    masks = np.arange(lo, hi, dtype=np.uint64)
    masks = masks[_popcount(masks) == m]
    if masks.size == 0:
        return None
    vm = _vertex_masks(n)
    deg = np.empty((n, masks.size), dtype=np.uint8)
    for v in range(n):
        deg[v] = _popcount(masks & np.uint64(vm[v]))
    if ell == 0:
        ok = np.ones(masks.size, dtype=bool)
    else:
        ok = np.zeros(masks.size, dtype=bool)
        for sub in combinations(range(n), ell):
            internal = 0
            for a, bv in combinations(sub, 2):
                internal |= 1 << _pair_bit(a, bv, n)
            indep = (masks & np.uint64(internal)) == 0
            mind = deg[list(sub)].min(axis=0)
            ok |= indep & (mind >= k)
    if not ok.any():
        return None
    masks = masks[ok]
    d = deg[:, ok].astype(np.int64)
    z1 = (d * d).sum(axis=0)
    best = int(z1.max())
    at = z1 == best
    return best, int(at.sum()), int(masks[at].min())


def predicted_general(n: int, m: int, ell: int, k: int):
    """Best constructible of the two clique-plus-block graphs, or None."""
    cands = []
    for label, builder in (("G1", g1_family), ("G2", g2_family)):
        try:
            cands.append((label, builder(n, m, ell, k)))
        except ConstructionError:
            pass
    if not cands:
        return None, None
    scored = [(z1_index(g), label, g) for label, g in cands]
    best = max(v for v, _, _ in scored)
    winners = [label for v, label, _ in scored if v == best]
    graph = next(g for v, _, g in scored if v == best)
    return graph, "=".join(winners)


def max_cherries_general(n, m, ell, k, *, jobs=1, cap=DEFAULT_BIT_CAP) -> OracleReport:
    """Max cherry count over n-vertex m-edge graphs with an independent
    ell-set of minimum degree k, compared against the best construction."""
    if not 0 <= m <= comb(n, 2):
        raise ConstructionError(f"m={m} out of range for n={n}")
    if ell > n or (ell > 0 and k > n - ell):
        raise ConstructionError("witness cannot fit")
    bits = comb(n, 2)
    _check_bits(bits, cap)
    tasks = [(n, m, ell, k, lo, hi) for lo, hi in _mask_chunks(bits)]
    if jobs > 1 and len(tasks) > 1:
        with Pool(jobs) as pool:
            partials = pool.map(_general_chunk, tasks)
    else:
        partials = [_general_chunk(t) for t in tasks]
    acc = None
    for p in partials:
        acc = _merge(acc, p)
    if acc is None:
        raise ConstructionError("no graph satisfies the constraints")
    best, count, mask = acc
    predicted, branch = predicted_general(n, m, ell, k)
    pred_z1 = None if predicted is None else z1_index(predicted)
    return OracleReport(
        family="general",
        params={"n": n, "m": m, "ell": ell, "k": k},
        mode="full",
        optimum_z1=best,
        optimum_cherries=(best - 2 * m) // 2,
        optimum_count=count,
        optimum_graph=graph_to_json(_graph_from_mask(n, mask)),
        predicted_z1=pred_z1,
        predicted_cherries=None if pred_z1 is None else (pred_z1 - 2 * m) // 2,
        predicted_branch=branch,
        prediction_feasible=None if pred_z1 is None else True,
        match=None if pred_z1 is None else best == pred_z1,
    )


def general_max_table(n: int, *, cap: int = DEFAULT_BIT_CAP) -> np.ndarray:
    """table[ell, k, m] = max Zagreb index over the constrained family,
    -1 where the family is empty.  Indexed ell in 0..n, k in 0..n-1."""
    bits = comb(n, 2)
    _check_bits(bits, cap)
    masks = np.arange(1 << bits, dtype=np.uint64)
    popc = _popcount(masks)
    vm = _vertex_masks(n)
    deg = np.empty((n, masks.size), dtype=np.uint8)
    for v in range(n):
        deg[v] = _popcount(masks & np.uint64(vm[v]))
    d = deg.astype(np.int32)
    z1 = (d * d).sum(axis=0)
    table = np.full((n + 1, n, bits + 1), -1, dtype=np.int64)
    for ell in range(n + 1):
        if ell == 0:
            maxk = np.full(masks.size, n, dtype=np.int16)
        else:
            maxk = np.full(masks.size, -1, dtype=np.int16)
            for sub in combinations(range(n), ell):
                internal = 0
                for a, bv in combinations(sub, 2):
                    internal |= 1 << _pair_bit(a, bv, n)
                indep = (masks & np.uint64(internal)) == 0
                mind = deg[list(sub)].min(axis=0).astype(np.int16)
                np.maximum(maxk, np.where(indep, mind, -1), out=maxk)
        for k in range(n):
            ok = maxk >= k
            if not ok.any():
                continue
            best = np.full(bits + 1, -1, dtype=np.int64)
            np.maximum.at(best, popc[ok], z1[ok].astype(np.int64))
            table[ell, k] = best
    return table


# ----------------------------------------------------------------------
# theorem sweeps


def _unconstrained_best_per_m(bits: int, degree_masks: list[int]) -> np.ndarray:
    best = np.full(bits + 1, -1, dtype=np.int64)
    for lo, hi in _mask_chunks(bits):
        masks = np.arange(lo, hi, dtype=np.uint64)
        popc = _popcount(masks)
        z1 = np.zeros(masks.size, dtype=np.int64)
        for vm in degree_masks:
            dv = _popcount(masks & np.uint64(vm)).astype(np.int64)
            z1 += dv * dv
        np.maximum.at(best, popc, z1)
    return best


def verify_theorem_11(n_values=(4, 5, 6, 7), *, cap: int = DEFAULT_BIT_CAP) -> list[dict]:
    """Unconstrained general graphs: for every m the brute-force max equals
    the better of quasi-star and quasi-clique."""
    rows = []
    for n in n_values:
        bits = comb(n, 2)
        _check_bits(bits, cap)
        best = _unconstrained_best_per_m(bits, _vertex_masks(n))
        for m in range(bits + 1):
            star = z1_index(quasi_star(n, m))
            clique = z1_index(quasi_clique(n, m))
            predicted = max(star, clique)
            rows.append(
                {
                    "n": n,
                    "m": m,
                    "oracle_z1": int(best[m]),
                    "quasi_star_z1": star,
                    "quasi_clique_z1": clique,
                    "predicted_z1": predicted,
                    "match": int(best[m]) == predicted,
                }
            )
    return rows


def _wide_pairs(max_cells: int):
    for s in range(1, max_cells + 1):
        for r in range(s, max_cells + 1):
            if r * s <= max_cells:
                yield r, s


def _bipartite_cell_masks(r: int, s: int) -> list[int]:
    vm = []
    for i in range(r):
        vm.append(((1 << s) - 1) << (i * s))
    for j in range(s):
        cm = 0
        for i in range(r):
            cm |= 1 << (i * s + j)
        vm.append(cm)
    return vm


def verify_theorem_16(max_cells: int = 20, *, cap: int = DEFAULT_BIT_CAP) -> list[dict]:
    """Unconstrained bipartite graphs: column filling is extremal."""
    rows = []
    for r, s in _wide_pairs(max_cells):
        bits = r * s
        _check_bits(bits, cap)
        best = _unconstrained_best_per_m(bits, _bipartite_cell_masks(r, s))
        for m in range(bits + 1):
            predicted = z1_index(ak_bipartite(r, s, m))
            rows.append(
                {
                    "r": r,
                    "s": s,
                    "m": m,
                    "oracle_z1": int(best[m]),
                    "predicted_z1": predicted,
                    "match": int(best[m]) == predicted,
                }
            )
    return rows


def _verify_constrained(max_cells: int, side: str, cap: int) -> list[dict]:
    rows = []
    for r, s in _wide_pairs(max_cells):
        bits = r * s
        _check_bits(bits, cap)
        masks = np.arange(1 << bits, dtype=np.uint64)
        popc = _popcount(masks)
        rowdeg, coldeg = _bipartite_degree_arrays(r, s, masks)
        z1 = _bipartite_z1(rowdeg, coldeg)
        for k in range(0, s + 1):
            for ell in range(k, r + 1):
                ok = _bipartite_witness_ok(rowdeg, coldeg, ell, k, side)
                best = np.full(bits + 1, -1, dtype=np.int64)
                np.maximum.at(best, popc[ok], z1[ok])
                for m in range(k * ell, bits + 1):
                    predicted, branch = predicted_bipartite(r, s, ell, k, m)
                    pz1 = z1_index(predicted)
                    prd = predicted.left_degrees()
                    pcd = predicted.right_degrees()
                    if side == "left":
                        feasible = sum(1 for d in prd if d >= k) >= ell
                    else:
                        feasible = sum(1 for d in pcd if d >= ell) >= k
                    rows.append(
                        {
                            "r": r,
                            "s": s,
                            "ell": ell,
                            "k": k,
                            "m": m,
                            "branch": branch,
                            "oracle_z1": int(best[m]),
                            "predicted_z1": pz1,
                            "prediction_feasible": feasible,
                            "match": int(best[m]) == pz1,
                        }
                    )
    return rows


def verify_theorem_17(max_cells: int = 16, *, cap: int = DEFAULT_BIT_CAP) -> list[dict]:
    """Constrained bipartite graphs, witness on the left part."""
    return _verify_constrained(max_cells, "left", cap)


def verify_theorem_18(max_cells: int = 16, *, cap: int = DEFAULT_BIT_CAP) -> list[dict]:
    """Constrained bipartite graphs, witness on the right part."""
    return _verify_constrained(max_cells, "right", cap)


def verify_ak_unconstrained(n_max: int = 7, max_cells: int = 20) -> dict:
    """Both unconstrained sweeps bundled, with an overall verdict."""
    general = verify_theorem_11(tuple(range(2, n_max + 1)))
    bipartite = verify_theorem_16(max_cells)
    return {
        "general": general,
        "bipartite": bipartite,
        "all_match": all(row["match"] for row in general + bipartite),
    }
