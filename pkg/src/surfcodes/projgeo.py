"""Points, lines and surfaces in projective space over a small field.

Coordinates are element indices (see :mod:`surfcodes.gf`).  Surfaces live
in P^3 with homogeneous variables ``X, Y, Z, T``; the affine chart is
``T != 0`` with affine coordinates ``(x, y, z) = (X/T, Y/T, Z/T)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from ._parse import parse_polynomial
from .gf import FieldSpec, embedding, field_new
from .linalg import rank, rref
from .rings import FqRing

VARIABLES = ("X", "Y", "Z", "T")


# -- points ---------------------------------------------------------------------

def normalize(spec: FieldSpec, coords) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    c = [int(v) for v in coords]
    for v in c:
        if v:
            s = int(spec.inv_table[v])
            return tuple(int(spec.mul_table[s, x]) for x in c)
    raise ValueError("the zero vector is not a projective point")


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    """A point of P^N(F_q), normalized so its first nonzero coordinate is 1."""

    coords: tuple[int, ...]
    spec: FieldSpec

    @classmethod
    def from_coords(cls, spec: FieldSpec, coords) -> "ProjectivePoint":
        return cls(normalize(spec, coords), spec)

    @classmethod
    def from_affine(cls, spec: FieldSpec, xyz) -> "ProjectivePoint":
        return cls.from_coords(spec, tuple(int(v) for v in xyz) + (1,))

    @property
    def is_affine(self) -> bool:
        return self.coords[-1] != 0

    def affine(self) -> tuple[int, ...]:
        """Affine coordinates ``(x0/x_N, ..., x_{N-1}/x_N)``."""
        t = self.coords[-1]
        if t == 0:
            raise ValueError("point at infinity has no affine coordinates")
        ti = int(self.spec.inv_table[t])
        return tuple(int(self.spec.mul_table[v, ti]) for v in self.coords[:-1])

    def __repr__(self) -> str:
        return "(" + ":".join(self.spec.format(c) for c in self.coords) + ")"


def enumerate_points(spec: FieldSpec, N: int) -> list[ProjectivePoint]:
    """All points of P^N(F_q) in lexicographic order of normalized coordinates."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return [ProjectivePoint(c, spec) for c in _normalized_tuples(spec.q, N)]


@lru_cache(maxsize=None)
def _normalized_tuples(q: int, N: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for h in range(N + 1):
        for rest in itertools.product(range(q), repeat=N - h):
            out.append((0,) * h + (1,) + rest)
    out.sort()
    return tuple(out)


def points_array(spec: FieldSpec, N: int) -> np.ndarray:
    """Normalized coordinates of every point of P^N as an int array."""
    return np.array(_normalized_tuples(spec.q, N), dtype=np.int64)


# -- lines ----------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Line:
    """A projective line, stored as the reduced row-echelon form of a 2-row basis."""

    rows: tuple[tuple[int, ...], tuple[int, ...]]
    spec: FieldSpec

    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def equations(self) -> np.ndarray:
        """RREF basis of the linear forms vanishing on the line."""
        from .linalg import nullspace

        return rref(self.spec, nullspace(self.spec, self.matrix()))

    def __repr__(self) -> str:
        return f"Line({self.rows})"


def line_from_matrix(spec: FieldSpec, m) -> Line:
    r = rref(spec, np.asarray(m, dtype=np.int64))
    if r.shape[0] != 2:
        raise ValueError("a line needs a rank-2 basis")
    return Line((tuple(int(v) for v in r[0]), tuple(int(v) for v in r[1])), spec)


def line_through(P: ProjectivePoint, Q: ProjectivePoint) -> Line:
    if P.spec != Q.spec:
        raise ValueError("points over different fields")
    if P.coords == Q.coords:
        raise ValueError("a line needs two distinct points")
    return line_from_matrix(P.spec, [P.coords, Q.coords])


def line_points(L: Line) -> list[ProjectivePoint]:
    """The q+1 points of L in lexicographic order."""
    spec = L.spec
    r = L.matrix()
    pts = set()
    for ab in _normalized_tuples(spec.q, 1):
        v = spec.add_table[spec.mul_table[ab[0], r[0]], spec.mul_table[ab[1], r[1]]]
        pts.add(normalize(spec, v))
    return [ProjectivePoint(c, spec) for c in sorted(pts)]


# -- surfaces -----------------------------------------------------------------

@dataclass(frozen=True)
class Surface:
    """Homogeneous form of degree d in X, Y, Z, T over ``spec``.

    ``terms`` is a sorted tuple of ``(exponents, coefficient index)`` pairs.
    """

    spec: FieldSpec
    degree: int
    terms: tuple[tuple[tuple[int, int, int, int], int], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("the zero polynomial does not define a surface")
        for exps, c in self.terms:
            if sum(exps) != self.degree or len(exps) != 4:
                raise ValueError(f"monomial {exps} is not of degree {self.degree}")
            if not 0 < c < self.spec.q:
                raise ValueError("coefficients must be nonzero element indices")

    @classmethod
    def from_dict(cls, spec: FieldSpec, terms: dict, degree: int | None = None) -> "Surface":
        terms = {tuple(int(e) for e in k): int(v) for k, v in terms.items() if int(v)}
        if not terms:
            raise ValueError("the zero polynomial does not define a surface")
        degs = {sum(k) for k in terms}
        if len(degs) != 1:
            raise ValueError("surface equation is not homogeneous")
        d = degs.pop()
        if degree is not None and degree != d:
            raise ValueError(f"expected degree {degree}, got {d}")
        return cls(spec, d, tuple(sorted(terms.items(), key=lambda t: _grlex_key(t[0]))))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def evaluate(self, pts: np.ndarray) -> np.ndarray:
        """Values at each row of an (n, 4) array of coordinates."""
        return evaluate_form(self.spec, self.terms, pts)

    def partial(self, k: int) -> dict:
        """Terms of the partial derivative in the k-th homogeneous variable."""
        spec = self.spec
        out = {}
        for exps, c in self.terms:
            a = exps[k]
            if a == 0:
                continue
            cc = int(spec.mul_table[spec.from_int(a), c])
            if cc:
                e = list(exps)
                e[k] -= 1
                out[tuple(e)] = cc
        return out

    def __str__(self) -> str:
        return format_polynomial(self.spec, dict(self.terms), VARIABLES)


def _grlex_key(exps):
    # graded lex with X > Y > Z > T: higher total degree first, then larger exponents first
    return (-sum(exps), tuple(-e for e in exps))


def evaluate_form(spec: FieldSpec, terms, pts: np.ndarray) -> np.ndarray:
    pts = np.asarray(pts, dtype=np.int64)
    if pts.ndim == 1:
        pts = pts[None, :]
    terms = list(terms.items()) if isinstance(terms, dict) else list(terms)
    out = np.zeros(pts.shape[0], dtype=np.int64)
    if not terms:
        return out
    maxdeg = max(max(e) for e, _ in terms)
    pw = _power_table(spec, maxdeg)
    for exps, c in terms:
        val = np.full(pts.shape[0], int(c), dtype=np.int64)
        for k, a in enumerate(exps):
            if a:
                val = spec.mul_table[val, pw[pts[:, k], a]]
        out = spec.add_table[out, val]
    return out


def _power_table(spec: FieldSpec, maxdeg: int) -> np.ndarray:
    pw = np.zeros((spec.q, maxdeg + 1), dtype=np.int64)
    pw[:, 0] = 1
    for k in range(1, maxdeg + 1):
        pw[:, k] = spec.mul_table[pw[:, k - 1], np.arange(spec.q)]
    return pw


def parse_surface(text: str, spec: FieldSpec) -> Surface:
    """Parse e.g. ``X^3+Y^3+Z^3-Z*X^2+T^3``; ``t`` denotes the field generator."""
    if not text or not text.strip():
        raise ValueError("empty surface equation")
    ring = FqRing(spec)
    return Surface.from_dict(spec, parse_polynomial(text, ring, VARIABLES))


def format_polynomial(spec, terms: dict, variables) -> str:
    parts = []
    for exps, c in sorted(terms.items(), key=lambda t: _grlex_key(t[0])):
        mon = [v if e == 1 else f"{v}^{e}" for v, e in zip(variables, exps) if e]
        cs = spec.format(c)
        if spec.e > 1 and "+" in cs:
            cs = f"({cs})"
        if not mon:
            parts.append(cs)
        elif c == 1:
            parts.append("*".join(mon))
        else:
            parts.append("*".join([cs] + mon))
    return "+".join(parts) if parts else "0"


def surface_points(S: Surface, order=None):
    """Rational points of S split into (affine, at_infinity).

    Affine points are listed in lexicographic order of their affine
    coordinates (x, y, z), unless ``order`` gives an explicit list of affine
    coordinate triples (see :func:`load_point_order`).
    """
    spec = S.spec
    q = spec.q
    grid = np.array(list(itertools.product(range(q), repeat=3)), dtype=np.int64)
    aff = np.hstack([grid, np.ones((grid.shape[0], 1), dtype=np.int64)])
    on = S.evaluate(aff) == 0
    affine = [ProjectivePoint.from_affine(spec, xyz) for xyz in grid[on]]
    plane = points_array(spec, 2)
    inf = np.hstack([plane, np.zeros((plane.shape[0], 1), dtype=np.int64)])
    at_inf = [ProjectivePoint(tuple(int(v) for v in c), spec) for c in inf[S.evaluate(inf) == 0]]
    if order is not None:
        affine = apply_point_order(affine, order)
    return affine, at_inf


def apply_point_order(points, order) -> list[ProjectivePoint]:
    """Reorder affine points to follow ``order`` (a list of affine triples)."""
    by_affine = {p.affine(): p for p in points}
    want = [tuple(int(v) for v in xyz) for xyz in order]
    if sorted(want) != sorted(by_affine):
        raise ValueError("point-order override does not list exactly the affine points")
    return [by_affine[xyz] for xyz in want]


def load_point_order(path, spec: FieldSpec) -> list[tuple[int, ...]]:
    """Read a JSON point-order file: ``{"points": [[x, y, z], ...]}``.

    Entries may be element indices or field literal strings.
    """
    raw = json.loads(Path(path).read_text())
    pts = raw["points"] if isinstance(raw, dict) else raw
    return [tuple(spec.parse(v) if isinstance(v, str) else int(v) for v in p) for p in pts]


def restrict_to_line(S: Surface, L: Line) -> np.ndarray:
    """Coefficients of the binary form S(a r0 + b r1), from a^d down to b^d."""
    spec = S.spec
    r = L.matrix()
    d = S.degree
    out = np.zeros(d + 1, dtype=np.int64)
    lin = [np.array([r[0][k], r[1][k]], dtype=np.int64) for k in range(4)]
    for exps, c in S.terms:
        poly = np.array([c], dtype=np.int64)
        for k, a in enumerate(exps):
            for _ in range(a):
                poly = _polymul(spec, poly, lin[k])
        out = spec.add_table[out, poly]
    return out


def _polymul(spec, a, b):
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, x in enumerate(a):
        if x:
            out[i:i + len(b)] = spec.add_table[out[i:i + len(b)], spec.mul_table[x, b]]
    return out


def line_in_surface(L: Line, S: Surface) -> bool:
    """True iff the form of S vanishes identically on L.

    This is computed from the restricted binary form, which is equivalent to
    vanishing at d+1 points of L and also works when L has fewer points.
    """
    return not restrict_to_line(S, L).any()


def gradient_affine(S: Surface, P: ProjectivePoint) -> tuple[int, int, int]:
    """(dG/dx, dG/dy, dG/dz) at an affine point, G(x,y,z) = F(x,y,z,1)."""
    if not P.is_affine:
        raise ValueError("gradient_affine needs an affine point")
    pt = np.array(P.affine() + (1,), dtype=np.int64)
    return tuple(int(evaluate_form(S.spec, S.partial(k), pt)[0]) for k in range(3))


# -- smoothness -----------------------------------------------------------------

def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the given total degree, in graded lex order."""
    if degree < 0:
        return []
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return sorted(set(out), key=_grlex_key)


def is_smooth(S: Surface, mode: str = "full") -> bool:
    """Whether S has no singular point over the algebraic closure.

    ``mode="full"`` decides this exactly with a Macaulay matrix: the ideal
    generated by F and its partials contains every form of degree D (D = 4d-7
    when p does not divide d, else 4d-3) iff the forms have no common
    projective zero.  ``mode="rational"`` only searches for singular points
    over the extensions F_{q^e}, e <= 3, that stay within the supported size.
    """
    if mode == "full":
        return _smooth_macaulay(S)
    if mode == "rational":
        return _smooth_rational(S)
    raise ValueError(f"unknown smoothness mode {mode!r}")


def _smooth_macaulay(S: Surface) -> bool:
    spec, d = S.spec, S.degree
    if d == 1:
        return True
    gens = [S.partial(k) for k in range(4)]
    if d % spec.p == 0:
        gens.append(S.as_dict())
        D = 4 * d - 3
    else:
        D = 4 * d - 7
    target = monomials(4, D)
    col = {m: i for i, m in enumerate(target)}
    rows = []
    for g in gens:
        if not g:
            continue
        gd = sum(next(iter(g)))
        for mult in monomials(4, D - gd):
            row = np.zeros(len(target), dtype=np.int64)
            for exps, c in g.items():
                row[col[tuple(a + b for a, b in zip(exps, mult))]] = c
            rows.append(row)
    if len(rows) < len(target):
        return False
    return rank(spec, np.array(rows)) == len(target)


def _smooth_rational(S: Surface) -> bool:
    spec = S.spec
    for e in (1, 2, 3):
        if spec.q**e > 64:
            break
        big = field_new(spec.p, spec.e * e)
        emb = embedding(spec, big)
        terms = {k: int(emb[v]) for k, v in S.terms}
        T = Surface.from_dict(big, terms)
        pts = points_array(big, 3)
        vals = [T.evaluate(pts)] + [evaluate_form(big, T.partial(k), pts) for k in range(4)]
        if np.any(np.all(np.stack(vals) == 0, axis=0)):
            return False
    return True


def random_surface(spec: FieldSpec, d: int, rng_seed) -> Surface:
    """Uniform independent coefficients on all degree-d monomials; zero rejected."""
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    mons = monomials(4, d)
    while True:
        coeffs = rng.integers(0, spec.q, size=len(mons))
        if coeffs.any():
            return Surface.from_dict(spec, dict(zip(mons, coeffs.tolist())))
