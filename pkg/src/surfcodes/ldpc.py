"""Tanner graphs over F_q and the min-sum decoder (flooding schedule).

Messages are cost tables: int64 arrays of length q indexed by element
index.  The unreachable cost +inf is the saturating sentinel ``INF``; any sum
is clipped at ``INF`` so it never wraps or exceeds it.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .gf import FieldSpec

INF = 2**50
# finite costs are at most n * (max_iters + 1), far below the sentinel


def _sat(a):
    return np.minimum(a, INF)


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite graph with an edge (bit i, check j, weight h_ij) per nonzero h_ij."""

    spec: FieldSpec
    n: int
    r: int
    bits: np.ndarray  # edge -> bit
    checks: np.ndarray  # edge -> check
    weights: np.ndarray  # edge -> nonzero element index
    bit_edges: tuple = field(repr=False, default=())
    check_edges: tuple = field(repr=False, default=())
    check_groups: tuple = field(repr=False, default=())

    def __post_init__(self):
        pairs = set(zip(self.bits.tolist(), self.checks.tolist()))
        if len(pairs) != len(self.bits):
            raise ValueError("at most one edge per (bit, check)")
        if np.any(self.weights == 0):
            raise ValueError("edge weights must be nonzero")
        be = tuple(tuple(np.nonzero(self.bits == i)[0].tolist()) for i in range(self.n))
        ce = tuple(tuple(np.nonzero(self.checks == j)[0].tolist()) for j in range(self.r))
        object.__setattr__(self, "bit_edges", be)
        object.__setattr__(self, "check_edges", ce)
        # checks grouped by degree, as (checks, degree) arrays of edge ids
        by_deg = {}
        for edges in ce:
            if edges:
                by_deg.setdefault(len(edges), []).append(edges)
        object.__setattr__(self, "check_groups", tuple(np.array(v, dtype=np.int64) for v in by_deg.values()))

    @property
    def num_edges(self) -> int:
        return len(self.bits)

    def matrix(self) -> np.ndarray:
        H = np.zeros((self.r, self.n), dtype=np.int64)
        H[self.checks, self.bits] = self.weights
        return H

    def syndrome_ok(self, word) -> bool:
        w = np.asarray(word, dtype=np.int64)
        spec = self.spec
        for edges in self.check_edges:
            acc = 0
            for e in edges:
                acc = int(spec.add_table[acc, spec.mul_table[self.weights[e], w[self.bits[e]]]])
            if acc:
                return False
        return True


def tanner_from_matrix(H, spec: FieldSpec | None = None) -> TannerGraph:
    """Edges at the nonzero entries of H (array, MatrixFq or ParityMatrix)."""
    if hasattr(H, "dense") and hasattr(H, "rows"):
        spec, H = H.spec, H.dense()
    elif hasattr(H, "entries") and hasattr(H, "spec"):
        spec, H = H.spec, H.entries
    if spec is None:
        raise ValueError("a field is required for a plain matrix")
    H = np.atleast_2d(np.asarray(H, dtype=np.int64))
    checks, bits = np.nonzero(H)
    order = np.lexsort((checks, bits))  # edges sorted by bit, then check
    bits, checks = bits[order], checks[order]
    return TannerGraph(spec, H.shape[1], H.shape[0], bits, checks, H[checks, bits])


def local_costs(graph: TannerGraph, y) -> np.ndarray:
    """C_loc^i(alpha) = 0 if y_i = alpha else 1; shape (n, q)."""
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (graph.n,):
        raise ValueError(f"received word must have length {graph.n}")
    if y.min(initial=0) < 0 or y.max(initial=0) >= graph.spec.q:
        raise ValueError("received symbols must be element indices")
    C = np.ones((graph.n, graph.spec.q), dtype=np.int64)
    C[np.arange(graph.n), y] = 0
    return C


@dataclass
class DecoderState:
    mu: np.ndarray  # (E, q) bit -> check
    nu: np.ndarray  # (E, q) check -> bit
    iteration: int = 0


def initial_state(graph: TannerGraph) -> DecoderState:
    q = graph.spec.q
    return DecoderState(np.zeros((graph.num_edges, q), dtype=np.int64),
                        np.zeros((graph.num_edges, q), dtype=np.int64), 0)


def _minplus(spec: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """C(s) = min_a A(a) + B(s - a) over the field's additive group (last axis)."""
    return _sat(A[..., None, :] + B[..., spec.sub_table]).min(axis=-1)


def check_update(spec: FieldSpec, weights, mus: np.ndarray) -> np.ndarray:
    """All outgoing nu tables of one check via forward/backward partial minima.

    ``mus[k]`` is the incoming table of neighbour k with weight ``weights[k]``;
    row k of the result is nu_k(alpha) = min over assignments of the other
    neighbours with h_k alpha + sum h_l alpha_l = 0 of sum mu_l(alpha_l).
    Leading axes are batch axes: weights (..., D) and mus (..., D, q) handle
    several checks of the same degree at once.
    """
    weights = np.asarray(weights, dtype=np.int64)
    mus = np.asarray(mus, dtype=np.int64)
    q = spec.q
    D = weights.shape[-1]
    # T_k(s) = mu_k(h_k^{-1} s): cost of contributing s to the weighted sum
    T = np.take_along_axis(mus, spec.mul_table[spec.inv_table[weights]], axis=-1)
    unit = np.full(weights.shape[:-1] + (q,), INF, dtype=np.int64)
    unit[..., 0] = 0
    fwd = [unit]
    for k in range(D):
        fwd.append(_minplus(spec, fwd[-1], T[..., k, :]))
    bwd = [unit]
    for k in range(D - 1, -1, -1):
        bwd.append(_minplus(spec, bwd[-1], T[..., k, :]))
    bwd = bwd[::-1]  # bwd[k] combines neighbours k..D-1
    excl = np.stack([_minplus(spec, fwd[k], bwd[k + 1]) for k in range(D)], axis=-2)
    # others must sum to -h_k alpha
    return np.take_along_axis(excl, spec.neg_table[spec.mul_table[weights]], axis=-1)


def check_update_bruteforce(spec: FieldSpec, weights, mus: np.ndarray) -> np.ndarray:
    """Exhaustive evaluation of the check-node minimum (test oracle)."""
    q = spec.q
    D = len(weights)
    out = np.full((D, q), INF, dtype=np.int64)
    for k in range(D):
        others = [l for l in range(D) if l != k]
        for alpha in range(q):
            best = INF
            for assign in itertools.product(range(q), repeat=len(others)):
                s = int(spec.mul_table[weights[k], alpha])
                cost = 0
                for l, a in zip(others, assign):
                    s = int(spec.add_table[s, spec.mul_table[weights[l], a]])
                    cost = min(cost + int(mus[l][a]), INF)
                if s == 0:
                    best = min(best, cost)
            out[k, alpha] = best
    return out


def min_sum_iterate(graph: TannerGraph, state: DecoderState, C_loc: np.ndarray) -> DecoderState:
    """One flooding iteration: every mu from the previous nu, then every nu."""
    mu = np.empty_like(state.mu)
    nu_tot = np.zeros_like(C_loc)
    np.add.at(nu_tot, graph.bits, state.nu)
    nu_tot = _sat(nu_tot)
    mu[:] = _sat(C_loc[graph.bits] + nu_tot[graph.bits] - state.nu)
    # excluding by subtraction is exact only for finite totals; redo saturated bits directly
    bad = np.nonzero(nu_tot[graph.bits].max(axis=1) >= INF)[0]
    for e in bad:
        i = graph.bits[e]
        acc = C_loc[i].copy()
        for e2 in graph.bit_edges[i]:
            if e2 != e:
                acc = _sat(acc + state.nu[e2])
        mu[e] = acc
    nu = np.empty_like(state.nu)
    for E in graph.check_groups:
        nu[E] = check_update(graph.spec, graph.weights[E], mu[E])
    return DecoderState(mu, nu, state.iteration + 1)


@dataclass(frozen=True)
class CostTable:
    """Costs per field element (``INF`` marks +infinity)."""

    values: tuple[int, ...]

    def to_list(self) -> list:
        return [("inf" if v >= INF else int(v)) for v in self.values]


@dataclass(frozen=True)
class DecodeResult:
    word: tuple  # element index, or None when undecided
    costs: tuple[CostTable, ...]
    iterations: int
    snapshots: tuple = ()

    @property
    def decided(self) -> bool:
        return all(w is not None for w in self.word)


def global_costs(graph: TannerGraph, state: DecoderState, C_loc: np.ndarray) -> np.ndarray:
    tot = C_loc.copy()
    np.add.at(tot, graph.bits, state.nu)
    return _sat(tot)


def decide(graph: TannerGraph, state: DecoderState, C_loc: np.ndarray, tie_policy: str = "undecided",
           received=None) -> DecodeResult:
    """Decide each bit as the strict unique minimiser of its global cost."""
    if tie_policy not in ("undecided", "keep"):
        raise ValueError("tie_policy must be 'undecided' or 'keep'")
    G = global_costs(graph, state, C_loc)
    word = []
    for i in range(graph.n):
        mins = np.nonzero(G[i] == G[i].min())[0]
        if mins.size == 1:
            word.append(int(mins[0]))
        elif tie_policy == "keep":
            word.append(int(received[i]) if received is not None else int(np.argmin(C_loc[i])))
        else:
            word.append(None)
    return DecodeResult(tuple(word), tuple(CostTable(tuple(int(v) for v in row)) for row in G), state.iteration)


def _snapshot(graph, state, C_loc) -> dict:
    def tables(msgs, arrow):
        return {
            f"{int(graph.bits[e]) + 1}{arrow}{int(graph.checks[e]) + 1}": [("inf" if v >= INF else int(v)) for v in msgs[e]]
            for e in range(graph.num_edges)
        }

    G = global_costs(graph, state, C_loc)
    return {
        "iteration": state.iteration,
        "mu": tables(state.mu, "->"),
        "nu": tables(state.nu, "<-"),
        "global": [[("inf" if v >= INF else int(v)) for v in row] for row in G],
    }


def decode(graph: TannerGraph, y, max_iters: int = 10, tie_policy: str = "undecided",
           keep_snapshots: bool = False) -> DecodeResult:
    """Run ``max_iters`` flooding iterations on received word y, then decide."""
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    C_loc = local_costs(graph, y)
    state = initial_state(graph)
    snaps = []
    for _ in range(max_iters):
        state = min_sum_iterate(graph, state, C_loc)
        if keep_snapshots:
            snaps.append(_snapshot(graph, state, C_loc))
    res = decide(graph, state, C_loc, tie_policy, received=y)
    return DecodeResult(res.word, res.costs, res.iterations, tuple(snaps))


def trace_to_json(result: DecodeResult) -> str:
    """Per-iteration mu, nu and global tables (bits and checks numbered from 1)."""
    return json.dumps({
        "iterations": result.iterations,
        "word": [w for w in result.word],
        "trace": list(result.snapshots),
    })


def trace_from_json(text: str) -> dict:
    return json.loads(text)


def nearest_codewords(codewords: np.ndarray, y) -> np.ndarray:
    """All codewords at minimum Hamming distance from y (exhaustive oracle)."""
    y = np.asarray(y, dtype=np.int64)
    dist = np.count_nonzero(codewords != y[None, :], axis=1)
    return codewords[dist == dist.min()]
