"""Evaluation codes on surfaces, reference codes, and brute-force distances."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .gf import FieldSpec, field_new
from .linalg import matmul, nullspace, rank, row_space_equal, rref
from .projgeo import (
    ProjectivePoint,
    Surface,
    _power_table,
    monomials,
    surface_points,
)

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its budget."""


@dataclass(frozen=True)
class MatrixFq:
    """A dense matrix of element indices over one field."""

    spec: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=np.int64)
        if e.ndim != 2:
            raise ValueError("matrix must be 2-D")
        if e.size and (e.min() < 0 or e.max() >= self.spec.q):
            raise ValueError("entries must be element indices")
        object.__setattr__(self, "entries", e)

    @property
    def shape(self):
        return self.entries.shape

    def rank(self) -> int:
        return rank(self.spec, self.entries)

    def rref(self) -> "MatrixFq":
        return MatrixFq(self.spec, rref(self.spec, self.entries))

    def to_text(self) -> str:
        return matrix_to_text(self.spec, self.entries)


@dataclass(frozen=True)
class LinearCode:
    """A linear code given by a full-row-rank k x n generator matrix."""

    spec: FieldSpec
    generator: np.ndarray
    note: str = ""
    n_: int | None = field(default=None, repr=False)

    def __post_init__(self):
        g = np.array(self.generator, dtype=np.int64)
        if g.ndim != 2:
            raise ValueError("generator must be 2-D")
        object.__setattr__(self, "generator", g)
        if self.n_ is None:
            object.__setattr__(self, "n_", g.shape[1])

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows, note: str = "", n: int | None = None) -> "LinearCode":
        """Code spanned by ``rows`` (reduced to an RREF basis)."""
        rows = np.array(rows, dtype=np.int64)
        if rows.ndim == 1:
            if rows.size == 0:
                rows = rows.reshape(0, n or 0)
            else:
                rows = rows[None, :]
        if rows.shape[0] == 0:
            return cls(spec, rows.reshape(0, rows.shape[1] if n is None else n), note)
        return cls(spec, rref(spec, rows), note)

    @property
    def n(self) -> int:
        return int(self.n_)

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k}] over {self.spec!r}" + (f" ({self.note})" if self.note else "")

    def same_as(self, other: "LinearCode") -> bool:
        if self.n != other.n:
            return False
        if self.k != other.k:
            return False
        return self.k == 0 or row_space_equal(self.spec, self.generator, other.generator)

    def contains(self, words) -> bool:
        words = np.atleast_2d(np.array(words, dtype=np.int64))
        if self.k == 0:
            return not words.any()
        return rank(self.spec, np.vstack([self.generator, words])) == self.k


def affine_monomials(degree: int, nvars: int = 3) -> list[tuple[int, ...]]:
    """Exponents of total degree <= degree, by degree then lex (x > y > z)."""
    out = []
    for d in range(degree + 1):
        out.extend(monomials(nvars, d))
    return out


def evaluation_matrix(spec: FieldSpec, exps, pts: np.ndarray) -> np.ndarray:
    """Rows: monomials; columns: points (rows of ``pts``)."""
    pts = np.asarray(pts, dtype=np.int64)
    maxdeg = max((max(e) for e in exps if e), default=0)
    pw = _power_table(spec, max(maxdeg, 1))
    out = np.ones((len(exps), pts.shape[0]), dtype=np.int64)
    for r, e in enumerate(exps):
        for k, a in enumerate(e):
            if a:
                out[r] = spec.mul_table[out[r], pw[pts[:, k], a]]
    return out


def functional_code(S: Surface, m: int, points=None) -> LinearCode:
    """Polynomials of degree <= m in (x, y, z) evaluated at the affine points of S."""
    if not 0 <= m < S.degree:
        raise ValueError("need 0 <= m < degree(S)")
    if points is None:
        points, _ = surface_points(S)
    if not points:
        raise ValueError("surface has no affine rational points")
    pts = np.array([p.affine() for p in points], dtype=np.int64)
    M = evaluation_matrix(S.spec, affine_monomials(m), pts)
    return LinearCode.from_rows(S.spec, M, note=f"C_L(S, {m} L_inf) on {S}")


def _all_combinations(spec: FieldSpec, rows: np.ndarray) -> np.ndarray:
    """Every F_q-combination of ``rows`` (q^len(rows) words)."""
    n = rows.shape[1]
    words = np.zeros((1, n), dtype=np.int64)
    for r in rows:
        scaled = spec.mul_table[np.arange(spec.q)[:, None], r[None, :]]
        words = spec.add_table[words[:, None, :], scaled[None, :, :]].reshape(-1, n)
    return words


def min_distance_bruteforce(C: LinearCode, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum weight over all q^k - 1 nonzero codewords."""
    spec = C.spec
    q, k = spec.q, C.k
    if k == 0:
        raise ValueError("the zero code has no nonzero codeword")
    if q**k > budget:
        raise BudgetExceeded(f"q^k = {q}^{k} exceeds budget {budget}")
    G = C.generator
    h = (k + 1) // 2
    A = _all_combinations(spec, G[:h])
    B = _all_combinations(spec, G[h:])
    best = C.n + 1
    for b in B:
        W = spec.add_table[A, b[None, :]]
        wts = np.count_nonzero(W, axis=1)
        if not b.any():
            wts = wts[1:]  # skip the zero word (first word of A)
        if wts.size:
            best = min(best, int(wts.min()))
    return best


def dual_code(C: LinearCode) -> LinearCode:
    if C.k == 0:
        return full_space(C.spec, C.n)
    N = nullspace(C.spec, C.generator)
    return LinearCode.from_rows(C.spec, N, note=f"dual of {C.note or 'code'}", n=C.n)


def _columns_dependent(spec: FieldSpec, G: np.ndarray, cols) -> bool:
    return rank(spec, G[:, cols]) < len(cols)


def dual_min_distance(C: LinearCode, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum weight of the dual code.

    Enumerates the q^(n-k) dual words when that fits the budget; otherwise it
    uses the equivalent exact characterisation as the least number of
    linearly dependent columns of the generator of C, enumerating column
    subsets of increasing size (bounded by the same budget).
    """
    spec, n, k = C.spec, C.n, C.k
    if k == n:
        raise ValueError("the dual of the full space is the zero code")
    if spec.q ** (n - k) <= budget:
        return min_distance_bruteforce(dual_code(C), budget)
    return dependent_columns_min(C, budget)


def dependent_columns_min(C: LinearCode, budget: int = DEFAULT_BUDGET) -> int:
    """Least number of linearly dependent columns of the generator (= dual distance)."""
    spec, n, k = C.spec, C.n, C.k
    if k == n:
        raise ValueError("the dual of the full space is the zero code")
    if k == 0:
        return 1
    G = C.generator
    spent = 0
    for s in range(1, k + 2):
        spent += comb(n, s)
        if spent > budget:
            raise BudgetExceeded(f"column-subset search exceeds budget {budget}")
        for cols in itertools.combinations(range(n), s):
            if _columns_dependent(spec, G, list(cols)):
                return s
    raise AssertionError("k+1 columns are always dependent")


def lachaud_matrix(points, m: int) -> np.ndarray:
    """Rows ev_P(f) = f(P) for the normalized P, f over all degree-m monomials."""
    if not points:
        return np.zeros((0, 0), dtype=np.int64)
    spec = points[0].spec
    N = len(points[0].coords)
    pts = np.array([p.coords for p in points], dtype=np.int64)
    return evaluation_matrix(spec, monomials(N, m), pts).T


def is_m_general(points, m: int) -> bool:
    """True iff the Lachaud evaluations of the points on degree-m forms are independent."""
    pts = list(points)
    if len({p.coords for p in pts}) != len(pts):
        raise ValueError("points must be distinct")
    if not pts:
        return True
    return rank(pts[0].spec, lachaud_matrix(pts, m)) == len(pts)


def min_linked_subset_size(points, m: int, max_size: int | None = None) -> int | None:
    """Least s such that some s-subset of the points is m-linked (not m-general)."""
    pts = list(points)
    if not pts:
        return None
    L = lachaud_matrix(pts, m)
    spec = pts[0].spec
    top = len(pts) if max_size is None else min(max_size, len(pts))
    for s in range(1, top + 1):
        for sub in itertools.combinations(range(len(pts)), s):
            if rank(spec, L[list(sub)]) < s:
                return s
    return None


def plane_points(spec: FieldSpec) -> np.ndarray:
    return np.array(list(itertools.product(range(spec.q), repeat=2)), dtype=np.int64)


def reed_muller_plane(spec: FieldSpec, m: int) -> LinearCode:
    """RM_q(2, m): bivariate polynomials of degree <= m at all q^2 affine points."""
    if m < 0:
        raise ValueError("m must be >= 0")
    M = evaluation_matrix(spec, affine_monomials(m, 2), plane_points(spec))
    return LinearCode.from_rows(spec, M, note=f"RM_{spec.q}(2,{m})")


def reed_solomon(spec: FieldSpec, m: int) -> LinearCode:
    """RS_q(m): univariate polynomials of degree <= m at all q points of F_q."""
    if m < 0:
        raise ValueError("m must be >= 0")
    pts = np.arange(spec.q, dtype=np.int64)[:, None]
    M = evaluation_matrix(spec, [(a,) for a in range(m + 1)], pts)
    return LinearCode.from_rows(spec, M, note=f"RS_{spec.q}({m})")


def full_space(spec: FieldSpec, n: int) -> LinearCode:
    return LinearCode(spec, np.eye(n, dtype=np.int64), note=f"F_{spec.q}^{n}")


def zero_code(spec: FieldSpec, n: int) -> LinearCode:
    return LinearCode(spec, np.zeros((0, n), dtype=np.int64), note="zero code")


def repetition_code(spec: FieldSpec, n: int) -> LinearCode:
    return LinearCode(spec, np.ones((1, n), dtype=np.int64), note=f"repetition [{n},1]")


def kron_rows(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker products of every row of a with every row of b."""
    out = spec.mul_table[a[:, None, :, None], b[None, :, None, :]]
    return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def tensor_code(A: LinearCode, B: LinearCode) -> LinearCode:
    if A.spec != B.spec:
        raise ValueError("codes over different fields")
    rows = kron_rows(A.spec, A.generator, B.generator)
    return LinearCode.from_rows(A.spec, rows, note=f"({A.note}) x ({B.note})", n=A.n * B.n)


def code_sum(A: LinearCode, B: LinearCode) -> LinearCode:
    if A.spec != B.spec or A.n != B.n:
        raise ValueError("codes must share field and length")
    return LinearCode.from_rows(A.spec, np.vstack([A.generator, B.generator]), note="sum", n=A.n)


def tensor_factors(W: LinearCode, nA: int, nB: int) -> tuple[LinearCode, LinearCode]:
    """Smallest U, V with W contained in U (x) V, for words read as nA x nB arrays."""
    spec = W.spec
    if W.n != nA * nB:
        raise ValueError("length mismatch")
    if W.k == 0:
        return zero_code(spec, nA), zero_code(spec, nB)
    mats = W.generator.reshape(W.k, nA, nB)
    cols = np.concatenate([m.T for m in mats], axis=0)  # column spaces live in F^nA
    rows = np.concatenate(list(mats), axis=0)  # row spaces live in F^nB
    return LinearCode.from_rows(spec, cols, n=nA), LinearCode.from_rows(spec, rows, n=nB)


def is_tensor_code(W: LinearCode, nA: int, nB: int) -> bool:
    """Rank certificate: W = U (x) V for some U, V iff dim W = dim U_min * dim V_min."""
    U, V = tensor_factors(W, nA, nB)
    return W.k == U.k * V.k


# -- export ---------------------------------------------------------------------

def code_to_json(C: LinearCode) -> str:
    return json.dumps({
        "field": {"p": C.spec.p, "e": C.spec.e, "modulus": list(C.spec.modulus)},
        "n": C.n,
        "k": C.k,
        "note": C.note,
        "generator": C.generator.tolist(),
    })


def code_from_json(text: str) -> LinearCode:
    raw = json.loads(text)
    spec = field_new(raw["field"]["p"], raw["field"]["e"])
    if list(spec.modulus) != list(raw["field"]["modulus"]):
        raise ValueError("field modulus differs from this build's fixed modulus")
    gen = np.array(raw["generator"], dtype=np.int64).reshape(raw["k"], raw["n"])
    return LinearCode(spec, gen, raw.get("note", ""), n_=raw["n"])


def matrix_to_text(spec: FieldSpec, M) -> str:
    M = np.asarray(M, dtype=np.int64)
    return "\n".join(" ".join(spec.format(int(v)) for v in row) for row in M)


def matrix_from_text(spec: FieldSpec, text: str) -> np.ndarray:
    rows = [[spec.parse(tok) for tok in line.split()] for line in text.strip().splitlines() if line.strip()]
    return np.array(rows, dtype=np.int64)


__all__ = [
    "BudgetExceeded", "LinearCode", "MatrixFq", "ProjectivePoint", "affine_monomials", "code_from_json",
    "code_sum", "code_to_json", "dependent_columns_min", "dual_code", "dual_min_distance", "evaluation_matrix", "full_space",
    "functional_code", "is_m_general", "is_tensor_code", "kron_rows", "lachaud_matrix", "matmul",
    "matrix_from_text", "matrix_to_text", "min_distance_bruteforce", "min_linked_subset_size",
    "reed_muller_plane", "reed_solomon", "repetition_code", "row_space_equal", "tensor_code",
    "tensor_factors", "zero_code",
]
