"""Low-weight dual codewords from 2-residues along lines, and the parity matrix.

For a surface S of degree d = m + 2 and a line L, not contained in S, that
meets the affine points of S in exactly d points P_i, the word with entries
``c_i = <grad G(P_i), v>^{-1}`` (v a direction of L) lies in the dual of
the functional code C_L(S, m L_inf).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .codes import LinearCode, functional_code
from .gf import FieldSpec, field_new
from .linalg import rank
from .projgeo import (
    Line,
    ProjectivePoint,
    Surface,
    evaluate_form,
    line_from_matrix,
    line_in_surface,
    line_through,
    normalize,
    surface_points,
)


class TangencyError(RuntimeError):
    """A directional derivative vanished at a transversal intersection (should not happen)."""


@dataclass(frozen=True)
class ParityRow:
    """Sparse dual word with its provenance line and direction vector."""

    n: int
    entries: tuple[tuple[int, int], ...]
    line: Line
    direction: tuple[int, int, int]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    def dense(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=np.int64)
        for i, c in self.entries:
            out[i] = c
        return out


@dataclass(frozen=True)
class ParityMatrix:
    spec: FieldSpec
    n: int
    rows: tuple[ParityRow, ...]

    def dense(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.stack([r.dense() for r in self.rows])

    def rank(self) -> int:
        return rank(self.spec, self.dense()) if self.rows else 0

    def to_text(self) -> str:
        return "\n".join(" ".join(self.spec.format(int(v)) for v in row) for row in self.dense())

    def to_json(self) -> str:
        return json.dumps({
            "field": {"p": self.spec.p, "e": self.spec.e, "modulus": list(self.spec.modulus)},
            "n": self.n,
            "rows": [
                {
                    "entries": [[i, c] for i, c in r.entries],
                    "line": [list(row) for row in r.line.rows],
                    "direction": list(r.direction),
                }
                for r in self.rows
            ],
        })

    @classmethod
    def from_json(cls, text: str) -> "ParityMatrix":
        raw = json.loads(text)
        spec = field_new(raw["field"]["p"], raw["field"]["e"])
        rows = []
        for r in raw["rows"]:
            line = Line(tuple(tuple(int(v) for v in row) for row in r["line"]), spec)
            rows.append(ParityRow(raw["n"], tuple((int(i), int(c)) for i, c in r["entries"]),
                                  line, tuple(int(v) for v in r["direction"])))
        return cls(spec, int(raw["n"]), tuple(rows))


def _affine_array(points) -> np.ndarray:
    return np.array([p.affine() for p in points], dtype=np.int64).reshape(-1, 3)


def _normalize_rows(spec: FieldSpec, V: np.ndarray) -> np.ndarray:
    """Scale each nonzero row so its first nonzero entry is 1."""
    nz = V != 0
    first = np.argmax(nz, axis=1)
    lead = V[np.arange(V.shape[0]), first]
    safe = np.where(lead == 0, 1, lead)
    return spec.mul_table[spec.inv_table[safe][:, None], V]


def affine_direction(spec: FieldSpec, P: ProjectivePoint, Q: ProjectivePoint) -> tuple[int, int, int]:
    """Q - P in affine coordinates, scaled so the first nonzero entry is 1."""
    d = spec.sub_table[np.array(Q.affine()), np.array(P.affine())]
    if not d.any():
        raise ValueError("points coincide")
    return tuple(int(v) for v in normalize(spec, d))


def _support_on_line(L: Line, points) -> list[int]:
    spec = L.spec
    E = L.equations()  # forms vanishing on L
    pts = np.array([p.coords for p in points], dtype=np.int64)
    vals = np.zeros((pts.shape[0], E.shape[0]), dtype=np.int64)
    for r, eq in enumerate(E):
        acc = np.zeros(pts.shape[0], dtype=np.int64)
        for k in range(4):
            acc = spec.add_table[acc, spec.mul_table[eq[k], pts[:, k]]]
        vals[:, r] = acc
    return [i for i in range(len(points)) if not vals[i].any()]


def _gradients(S: Surface, points) -> np.ndarray:
    """Affine gradients (dG/dx, dG/dy, dG/dz) at every point, shape (n, 3)."""
    pts = np.hstack([_affine_array(points), np.ones((len(points), 1), dtype=np.int64)])
    return np.stack([evaluate_form(S.spec, S.partial(k), pts) for k in range(3)], axis=1)


def _row_from_support(S: Surface, L: Line, support, points, grads) -> ParityRow:
    spec = S.spec
    v = affine_direction(spec, points[support[0]], points[support[1]])
    vv = np.array(v, dtype=np.int64)
    entries = []
    for i in support:
        dot = 0
        for g, c in zip(grads[i], vv):
            dot = int(spec.add_table[dot, spec.mul_table[g, c]])
        if dot == 0:
            raise TangencyError(f"directional derivative vanishes at point {i} on {L}")
        entries.append((int(i), int(spec.inv_table[dot])))
    return ParityRow(len(points), tuple(entries), L, v)


def residue_word(S: Surface, m: int, L: Line, points=None) -> ParityRow:
    """The word ``c_i = <grad G(P_i), v>^-1`` on the d points of L in the affine part of S."""
    d = S.degree
    if d != m + 2:
        raise ValueError("only the case degree(S) = m + 2 is implemented")
    if points is None:
        points, _ = surface_points(S)
    if line_in_surface(L, S):
        raise ValueError("line is contained in the surface")
    support = _support_on_line(L, points)
    if len(support) != d:
        raise ValueError(f"line meets the affine points in {len(support)} points, expected {d}")
    return _row_from_support(S, L, support, points, _gradients(S, points))


def _parity_supports(S: Surface, m: int, points) -> list[tuple[tuple[int, ...], Line]]:
    spec = S.spec
    d = S.degree
    if d != m + 2:
        raise ValueError("only the case degree(S) = m + 2 is implemented")
    n = len(points)
    if n < d:
        return []
    A = _affine_array(points)
    found = []
    idx = np.arange(n)
    for a in range(n - d + 1):
        # directions from P_a to every other point; equal direction = same line
        others = idx[idx != a]
        dirs = _normalize_rows(spec, spec.sub_table[A[others], A[a][None, :]])
        _, inverse, counts = np.unique(dirs, axis=0, return_inverse=True, return_counts=True)
        inverse = inverse.reshape(-1)
        for g in np.nonzero(counts == d - 1)[0]:
            members = others[inverse == g]
            if members.min() < a:
                continue  # visited from a lower-index point already
            support = (a,) + tuple(int(v) for v in np.sort(members))
            L = line_through(points[support[0]], points[support[1]])
            # an affine line has q affine points; if q > d it cannot lie in S
            if spec.q <= d and line_in_surface(L, S):
                continue
            found.append((support, L))
    found.sort(key=lambda t: t[0])
    return found


def find_parity_lines(S: Surface, m: int, points=None) -> list[Line]:
    """Lines not in S meeting the affine points in exactly m+2 points, ordered by support."""
    if points is None:
        points, _ = surface_points(S)
    return [L for _, L in _parity_supports(S, m, points)]


def build_parity_matrix(S: Surface, m: int, points=None) -> ParityMatrix:
    """One residue word per line from :func:`find_parity_lines`, in the same order."""
    if points is None:
        points, _ = surface_points(S)
    found = _parity_supports(S, m, points)
    grads = _gradients(S, points) if found else None
    rows = tuple(_row_from_support(S, L, sup, points, grads) for sup, L in found)
    return ParityMatrix(S.spec, len(points), rows)


@dataclass(frozen=True)
class PositiveTest:
    positive: bool
    gap: int
    n: int
    k: int
    rank: int
    code: LinearCode
    matrix: ParityMatrix


def is_positive_test(S: Surface, m: int, points=None) -> PositiveTest:
    """Positive iff the residue words span the whole dual: rank = n - k."""
    if points is None:
        points, _ = surface_points(S)
    C = functional_code(S, m, points)
    H = build_parity_matrix(S, m, points)
    r = H.rank()
    gap = (C.n - C.k) - r
    if gap < 0:
        raise AssertionError("parity rows exceed the dual dimension")
    return PositiveTest(gap == 0, gap, C.n, C.k, r, C, H)


def line_from_equations(spec: FieldSpec, equations) -> Line:
    """The line cut out by two independent linear forms (coefficients on X,Y,Z,T)."""
    from .linalg import nullspace

    return line_from_matrix(spec, nullspace(spec, np.array(equations, dtype=np.int64)))
