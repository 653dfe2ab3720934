"""Truncated bivariate Laurent series in k((x))((y)) and their 2-residues.

A :class:`BiLaurent` stores a dense grid ``data[j - j0, i - i0]`` of
coefficients of ``x^i y^j`` together with certified precision:

* ``yprec``: every y-slice ``j >= yprec`` is unknown (``inf`` = exact in y);
* ``xprec[r]``: in stored slice ``j0 + r``, coefficients at ``i >= xprec[r]``
  are unknown (``inf`` = slice exact).

Slices below ``yprec`` that are not stored are exactly zero, as are
coefficients left of the stored columns.  All operations propagate these
bounds conservatively, so a coefficient reported as known equals the true
coefficient of the untruncated computation.

Series results that are genuinely infinite (inverses, substitutions) are cut
to a :class:`Window`; the default keeps exponents up to 8 in each variable
and lets geometric series run for 17 terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from ._parse import parse_polynomial
from .rings import QQ, FqRing, RationalRing

INF = math.inf


class PrecisionError(ArithmeticError):
    """A requested coefficient is not certified by the tracked precision."""


@dataclass(frozen=True)
class Window:
    """Exponent window ``[imin, imax] x [jmin, jmax]`` for truncated results."""

    imin: int = -8
    imax: int = 8
    jmin: int = -8
    jmax: int = 8

    @property
    def xterms(self) -> int:
        return self.imax - self.imin + 1

    @property
    def yterms(self) -> int:
        return self.jmax - self.jmin + 1


DEFAULT_WINDOW = Window()


class BiLaurent:
    """Immutable truncated series ``sum h_{ij} x^i y^j`` with precision marks."""

    __slots__ = ("ring", "i0", "j0", "data", "xprec", "yprec")

    def __init__(self, ring, i0: int, j0: int, data: np.ndarray, xprec, yprec: float = INF):
        data = np.array(data, dtype=ring.dtype)
        if data.ndim != 2:
            raise ValueError("coefficient grid must be 2-D")
        xprec = np.array(xprec, dtype=float).reshape(-1)
        if xprec.size != data.shape[0]:
            raise ValueError("one x precision per stored slice")
        i0, j0, data, xprec, yprec = _normalize(ring, int(i0), int(j0), data, xprec, float(yprec))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "i0", i0)
        object.__setattr__(self, "j0", j0)
        data.flags.writeable = False
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "xprec", xprec)
        object.__setattr__(self, "yprec", yprec)

    def __setattr__(self, name, value):
        raise AttributeError("BiLaurent is immutable")

    # -- construction ---------------------------------------------------------
    @classmethod
    def from_terms(cls, ring, terms: dict, xprec: float | dict = INF, yprec: float = INF) -> "BiLaurent":
        """Build from ``{(i, j): coefficient}``; ``xprec`` may be per-slice."""
        terms = {k: v for k, v in terms.items() if v != ring.zero}
        js = [j for _, j in terms]
        if isinstance(xprec, dict):
            js += list(xprec)
        if not js:
            return cls(ring, 0, 0, ring.zeros((0, 0)), [], yprec)
        is_ = [i for i, _ in terms] or [0]
        i0, i1 = min(is_), max(is_)
        j0, j1 = min(js), max(js)
        data = ring.zeros((j1 - j0 + 1, i1 - i0 + 1))
        for (i, j), v in terms.items():
            data[j - j0, i - i0] = v
        if isinstance(xprec, dict):
            xp = [xprec.get(j, INF) for j in range(j0, j1 + 1)]
        else:
            xp = [xprec] * (j1 - j0 + 1)
        return cls(ring, i0, j0, data, xp, yprec)

    @classmethod
    def zero(cls, ring, yprec: float = INF) -> "BiLaurent":
        return cls(ring, 0, 0, ring.zeros((0, 0)), [], yprec)

    @classmethod
    def monomial(cls, ring, i: int, j: int, c=None) -> "BiLaurent":
        return cls.from_terms(ring, {(i, j): ring.one if c is None else c})

    @classmethod
    def one(cls, ring) -> "BiLaurent":
        return cls.monomial(ring, 0, 0)

    # -- inspection -----------------------------------------------------------
    @property
    def nrows(self) -> int:
        return self.data.shape[0]

    @property
    def is_exact(self) -> bool:
        return self.yprec == INF and bool(np.all(self.xprec == INF))

    def slice_prec(self, j: int) -> float:
        """Absolute x precision of slice j (``-inf`` if the slice is unknown)."""
        if j >= self.yprec:
            return -INF
        r = j - self.j0
        if 0 <= r < self.nrows:
            return float(self.xprec[r])
        return INF

    def is_known(self, i: int, j: int) -> bool:
        return i < self.slice_prec(j)

    def coeff(self, i: int, j: int):
        """Certified coefficient of ``x^i y^j``; raises if not certified."""
        if not self.is_known(i, j):
            raise PrecisionError(f"coefficient ({i},{j}) is not certified")
        r, c = j - self.j0, i - self.i0
        if 0 <= r < self.nrows and 0 <= c < self.data.shape[1]:
            v = self.data[r, c]
            return int(v) if isinstance(self.ring, FqRing) else v
        return self.ring.zero

    def terms(self) -> dict:
        """Known nonzero coefficients as ``{(i, j): c}``."""
        rs, cs = np.nonzero(self.ring.nonzero(self.data))
        conv = int if isinstance(self.ring, FqRing) else (lambda v: v)
        return {(int(c) + self.i0, int(r) + self.j0): conv(self.data[r, c]) for r, c in zip(rs, cs)}

    def row_valuations(self) -> np.ndarray:
        """Lower bound of the x-valuation of each stored slice."""
        if self.nrows == 0:
            return np.zeros(0)
        if self.data.shape[1] == 0:
            return self.xprec.copy()
        nz = self.ring.nonzero(self.data)
        has = nz.any(axis=1)
        first = np.argmax(nz, axis=1).astype(float) + self.i0
        return np.where(has, first, self.xprec)

    def yvaluation(self) -> float:
        """First slice that is not exactly zero (``yprec`` if none below it)."""
        return float(self.j0) if self.nrows else self.yprec

    def slice(self, j: int) -> "Laurent1":
        p = self.slice_prec(j)
        if p == -INF:
            raise PrecisionError(f"slice y^{j} is not certified")
        r = j - self.j0
        if 0 <= r < self.nrows:
            return Laurent1(self.ring, self.i0, self.data[r].copy(), p)
        return Laurent1(self.ring, 0, self.ring.zeros(0), p)

    def __repr__(self) -> str:
        return f"BiLaurent({format_series(self)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiLaurent) or other.ring != self.ring:
            return NotImplemented
        return (
            self.i0 == other.i0
            and self.j0 == other.j0
            and self.yprec == other.yprec
            and self.data.shape == other.data.shape
            and bool(np.all(self.data == other.data))
            and bool(np.all(self.xprec == other.xprec))
        )

    __hash__ = None

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, series_neg(other))

    def __neg__(self):
        return series_neg(self)

    def __mul__(self, other):
        return series_mul(self, other)


def _normalize(ring, i0, j0, data, xprec, yprec):
    nrows, ncols = data.shape
    if nrows:
        js = j0 + np.arange(nrows)
        keep = js < yprec
        data = data[keep]
        xprec = xprec[keep]
        nrows = data.shape[0]
    if nrows and ncols:
        cols = i0 + np.arange(ncols)
        unknown = cols[None, :] >= xprec[:, None]
        if unknown.any():
            data = data.copy()
            data[unknown] = ring.zero
    if nrows == 0:
        return 0, 0, ring.zeros((0, 0)), np.zeros(0), yprec
    nz = ring.nonzero(data) if ncols else np.zeros((nrows, 0), dtype=bool)
    live = nz.any(axis=1) | (xprec != INF)
    if not live.any():
        return 0, 0, ring.zeros((0, 0)), np.zeros(0), yprec
    r0 = int(np.argmax(live))
    r1 = nrows - int(np.argmax(live[::-1]))
    data, xprec, nz = data[r0:r1], xprec[r0:r1], nz[r0:r1]
    j0 += r0
    colmask = nz.any(axis=0)
    if colmask.any():
        c0 = int(np.argmax(colmask))
        c1 = ncols - int(np.argmax(colmask[::-1]))
        data = data[:, c0:c1]
        i0 += c0
    else:
        data = data[:, :0]
        i0 = 0
    return i0, j0, data, xprec.copy(), yprec


@dataclass(frozen=True)
class Laurent1:
    """Univariate truncated series ``sum c_k x^{i0+k}`` known below ``prec``."""

    ring: Any
    i0: int
    coeffs: np.ndarray
    prec: float = INF

    def terms(self) -> dict:
        nz = np.nonzero(self.ring.nonzero(self.coeffs))[0]
        conv = int if isinstance(self.ring, FqRing) else (lambda v: v)
        return {int(k) + self.i0: conv(self.coeffs[k]) for k in nz}

    def coeff(self, i: int):
        if i >= self.prec:
            raise PrecisionError(f"coefficient x^{i} is not certified")
        k = i - self.i0
        if 0 <= k < len(self.coeffs):
            v = self.coeffs[k]
            return int(v) if isinstance(self.ring, FqRing) else v
        return self.ring.zero

    def is_zero(self) -> bool:
        return not self.terms()


# -- arithmetic --------------------------------------------------------------

def _check(a: BiLaurent, b: BiLaurent):
    if a.ring != b.ring:
        raise TypeError(f"incompatible rings {a.ring!r} and {b.ring!r}")


def series_neg(a: BiLaurent) -> BiLaurent:
    return BiLaurent(a.ring, a.i0, a.j0, a.ring.neg(a.data), a.xprec, a.yprec)


def series_scale(a: BiLaurent, c) -> BiLaurent:
    ring = a.ring
    if c == ring.zero:
        return BiLaurent.zero(ring, a.yprec) if a.nrows == 0 else BiLaurent(
            ring, a.i0, a.j0, ring.zeros(a.data.shape), a.xprec, a.yprec)
    return BiLaurent(ring, a.i0, a.j0, ring.mul(a.data, c) if isinstance(ring, RationalRing)
                     else ring.spec.mul_table[a.data, int(c)], a.xprec, a.yprec)


def shift(a: BiLaurent, di: int, dj: int) -> BiLaurent:
    """Multiply by the monomial ``x^di y^dj``."""
    return BiLaurent(a.ring, a.i0 + di, a.j0 + dj, a.data, a.xprec + di, a.yprec + dj)


def _prec_rows(s: BiLaurent, j0: int, j1: int) -> np.ndarray:
    return np.array([s.slice_prec(j) for j in range(j0, j1 + 1)], dtype=float)


def series_add(a: BiLaurent, b: BiLaurent) -> BiLaurent:
    _check(a, b)
    ring = a.ring
    yprec = min(a.yprec, b.yprec)
    parts = [s for s in (a, b) if s.nrows]
    if not parts:
        return BiLaurent.zero(ring, yprec)
    j0 = min(s.j0 for s in parts)
    j1 = max(s.j0 + s.nrows - 1 for s in parts)
    withcols = [s for s in parts if s.data.shape[1]]
    i0 = min((s.i0 for s in withcols), default=0)
    i1 = max((s.i0 + s.data.shape[1] - 1 for s in withcols), default=-1)
    out = ring.zeros((j1 - j0 + 1, i1 - i0 + 1))
    for s in withcols:
        r, c = s.j0 - j0, s.i0 - i0
        block = out[r:r + s.nrows, c:c + s.data.shape[1]]
        out[r:r + s.nrows, c:c + s.data.shape[1]] = ring.add(block, s.data)
    pa = _prec_rows(a, j0, j1)
    pb = _prec_rows(b, j0, j1)
    return BiLaurent(ring, i0, j0, out, np.minimum(pa, pb), yprec)


def series_sub(a: BiLaurent, b: BiLaurent) -> BiLaurent:
    return series_add(a, series_neg(b))


def series_mul(a: BiLaurent, b: BiLaurent) -> BiLaurent:
    """Product with precision ``min(P_a + v_b, P_b + v_a)`` per slice pair."""
    _check(a, b)
    ring = a.ring
    wa, wb = a.yvaluation(), b.yvaluation()
    yprec = min(a.yprec + wb, b.yprec + wa)
    if a.nrows == 0 or b.nrows == 0:
        return BiLaurent.zero(ring, yprec)
    va, vb = a.row_valuations(), b.row_valuations()
    with np.errstate(invalid="ignore"):
        m = np.minimum(a.xprec[:, None] + vb[None, :], b.xprec[None, :] + va[:, None])
    m = np.where(np.isnan(m), INF, m)
    nr = a.nrows + b.nrows - 1
    xp = np.full(nr, INF)
    idx = np.arange(a.nrows)[:, None] + np.arange(b.nrows)[None, :]
    np.minimum.at(xp, idx.ravel(), m.ravel())
    if a.data.shape[1] and b.data.shape[1]:
        data = ring.conv2d(a.data, b.data)
        i0 = a.i0 + b.i0
    else:
        data = ring.zeros((nr, 0))
        i0 = 0
    return BiLaurent(ring, i0, a.j0 + b.j0, data, xp, yprec)


def truncate(a: BiLaurent, window: Window = DEFAULT_WINDOW) -> BiLaurent:
    """Forget everything above the window's upper exponents."""
    yprec = min(a.yprec, window.jmax + 1)
    if a.nrows == 0:
        return BiLaurent.zero(a.ring, yprec)
    ncols = a.data.shape[1]
    keep = max(0, min(ncols, window.imax + 1 - a.i0))
    return BiLaurent(a.ring, a.i0, a.j0, a.data[:, :keep], np.minimum(a.xprec, window.imax + 1), yprec)


def _inv_unit(ring, coeffs: list, nterms: int) -> list:
    """First ``nterms`` coefficients of 1/u for a unit power series u (u_0 != 0)."""
    u0inv = ring.inv(coeffs[0])
    out = [u0inv]
    for n in range(1, nterms):
        acc = ring.zero
        for k in range(1, min(n, len(coeffs) - 1) + 1):
            acc = _sc(ring, ring.add(acc, ring.mul(coeffs[k], out[n - k])))
        out.append(_sc(ring, ring.neg(ring.mul(acc, u0inv))))
    return out


def _sc(ring, v):
    return int(v) if isinstance(ring, FqRing) else v


def series_inv(a: BiLaurent, window: Window = DEFAULT_WINDOW) -> BiLaurent:
    """Inverse through ``a = y^w L(x) (1 + eps)`` and a truncated geometric series."""
    ring = a.ring
    if a.nrows == 0:
        raise ZeroDivisionError("inverse of a series with no certified nonzero slice")
    w = a.j0
    row = a.data[0]
    P = float(a.xprec[0])
    nz = np.nonzero(ring.nonzero(row))[0]
    if nz.size == 0:
        raise PrecisionError("valuation of the leading slice is not certified")
    v = a.i0 + int(nz[0])
    unit = [_sc(ring, c) for c in row[nz[0]:]]
    while unit and unit[-1] == ring.zero:
        unit.pop()
    if P == INF and len(unit) == 1:
        lead_inv = BiLaurent.from_terms(ring, {(-v, 0): ring.inv(unit[0])})
    else:
        rel = window.xterms if P == INF else min(int(P) - v, window.xterms)
        inv_c = _inv_unit(ring, unit, rel)
        lead_inv = BiLaurent.from_terms(ring, {(-v + k, 0): c for k, c in enumerate(inv_c)}, xprec=-v + rel)
    # eps = (a - y^w L) / (y^w L): the untouched higher slices over the leading one
    rest = BiLaurent(ring, a.i0, a.j0 + 1, a.data[1:], a.xprec[1:], a.yprec)
    eps = truncate(series_mul(shift(rest, 0, -w), lead_inv), _rel_window(window, 0))
    geo = BiLaurent.one(ring)
    if eps.nrows or eps.yprec != INF:
        nterms = window.yterms
        term = BiLaurent.one(ring)
        neg_eps = series_neg(eps)
        for _ in range(1, nterms):
            term = truncate(series_mul(term, neg_eps), _rel_window(window, 0))
            if term.nrows == 0 and term.yprec >= nterms:
                break
            geo = series_add(geo, term)
        geo = BiLaurent(ring, geo.i0, geo.j0, geo.data, geo.xprec, min(geo.yprec, nterms))
    return truncate(shift(series_mul(lead_inv, geo), 0, -w), window)


def _rel_window(window: Window, j_offset: int) -> Window:
    # intermediate y-relative pieces keep as many slices as the window spans
    return Window(window.imin, window.imax + window.xterms, window.jmin, window.yterms - 1 + j_offset)


def series_pow(a: BiLaurent, n: int, window: Window = DEFAULT_WINDOW) -> BiLaurent:
    if n < 0:
        return series_pow(series_inv(a, window), -n, window)
    out = BiLaurent.one(a.ring)
    for _ in range(n):
        out = truncate(series_mul(out, a), window)
    return out


def deriv_x(a: BiLaurent) -> BiLaurent:
    ring = a.ring
    if a.nrows == 0:
        return a
    exps = a.i0 + np.arange(a.data.shape[1])
    factors = ring.asarray([ring.from_int(int(e)) for e in exps]) if exps.size else ring.zeros(0)
    data = ring.mul(a.data, factors[None, :]) if exps.size else a.data
    return BiLaurent(ring, a.i0 - 1, a.j0, data, a.xprec - 1, a.yprec)


def deriv_y(a: BiLaurent) -> BiLaurent:
    ring = a.ring
    if a.nrows == 0:
        return BiLaurent.zero(ring, a.yprec - 1)
    exps = a.j0 + np.arange(a.nrows)
    factors = ring.asarray([ring.from_int(int(e)) for e in exps])
    data = ring.mul(a.data, factors[:, None]) if a.data.shape[1] else a.data
    # a slice multiplied by j = 0 in the field is exactly zero, whatever its precision
    xprec = np.where(np.array([f == ring.zero for f in factors]), INF, a.xprec)
    return BiLaurent(ring, a.i0, a.j0 - 1, data, xprec, a.yprec - 1)


# -- forms and residues --------------------------------------------------------

@dataclass(frozen=True)
class Form2:
    """The 2-form ``h d(first) ^ d(second)``."""

    h: BiLaurent
    variables: tuple[str, str] = ("u", "v")

    def swap(self) -> "Form2":
        """Re-express with the variable order reversed: transpose and negate.

        Requires finitely many known y-slices, so that the new y direction
        (old x) has a well-defined certified range.
        """
        h = self.h
        if h.yprec != INF:
            raise PrecisionError("swap needs a form that is exact in the second variable")
        newy = float(np.min(h.xprec)) if h.nrows else INF
        data = h.ring.neg(h.data.T.copy())
        ncols = data.shape[0]
        return Form2(
            BiLaurent(h.ring, h.j0, h.i0, data, np.full(ncols, INF), newy),
            (self.variables[1], self.variables[0]),
        )


@dataclass(frozen=True)
class ChangeOfVars:
    """``u = f(x, y)``, ``v = g(x, y)`` with f(x,0) of x-valuation 1, g of y-valuation 1."""

    f: BiLaurent
    g: BiLaurent

    def validate(self) -> None:
        f, g = self.f, self.g
        if f.slice_prec(0) <= 1:
            raise PrecisionError("f(x,0) is not certified to order x^1")
        f0 = f.slice(0).terms()
        if any(i < 1 for i in f0) or 1 not in f0:
            raise ValueError("f(x,0) must have x-valuation exactly 1")
        if g.yprec <= 1:
            raise PrecisionError("g is not certified to order y^1")
        if g.yvaluation() < 1 or g.slice_prec(0) != INF:
            raise ValueError("g must be divisible by y")
        if not g.slice(1).terms():
            raise ValueError("the y^1 slice of g must be nonzero")


def res1(omega: Form2) -> Laurent1:
    """The slice ``h_{-1}(u)``, i.e. the 1-form ``h_{-1}(u) du``."""
    h = omega.h
    if h.slice_prec(-1) == -INF:
        raise PrecisionError("the y^-1 slice is not certified")
    return h.slice(-1)


def res2(omega: Form2):
    """The coefficient ``h_{-1,-1}``."""
    return omega.h.coeff(-1, -1)


def _tail_bounds(f: BiLaurent, P: float, nslices: int) -> list[float]:
    """Slice-wise lower bounds for the x-valuation of ``sum_{k>=P} c_k f^k``.

    With ``f = f_0 (1 + mu)``, the y^s slice of ``(1+mu)^k`` has valuation at
    least ``D_s = min over compositions s = l_1+..+l_r of sum (v_l - 1)``,
    where ``v_l`` bounds the valuation of slice l of f.
    """
    m = []
    for l in range(1, nslices):
        p = f.slice_prec(l)
        if p == -INF:
            m.append(-INF)
            continue
        r = l - f.j0
        v = float(f.row_valuations()[r]) if 0 <= r < f.nrows else INF
        m.append(v - 1)
    D = [0.0] + [INF] * (nslices - 1)
    for s in range(1, nslices):
        D[s] = min(m[l - 1] + D[s - l] for l in range(1, s + 1))
    out = [P]
    for s in range(1, nslices):
        # k = 0 contributes only to slice 0
        lo = P if P != 0 else 1.0
        out.append(lo + D[s])
    return out


def substitute(h: BiLaurent, f: BiLaurent, g: BiLaurent, window: Window = DEFAULT_WINDOW) -> BiLaurent:
    """``h(f, g)`` as a series in (x, y), with unknown tails of h bounded.

    ``f`` must have slice 0 of x-valuation 1 and ``g`` must have a certified
    leading slice so that negative powers make sense.
    """
    ring = h.ring
    _check(h, f)
    _check(h, g)
    result = BiLaurent.zero(ring)
    if h.nrows == 0:
        return BiLaurent.zero(ring, min(h.yprec, window.jmax + 1)) if h.yprec != INF else result
    iw0 = h.i0
    # negative powers of g shift slices down, so the pieces need extra y room
    wide = Window(window.imin, window.imax + window.xterms, window.jmin, window.jmax - min(h.j0, 0))
    fpow = {}

    def fp(k):
        if k not in fpow:
            if k == 0:
                fpow[k] = BiLaurent.one(ring)
            elif k > 0:
                fpow[k] = truncate(series_mul(fp(k - 1), f), wide)
            else:
                if -1 not in fpow:
                    fpow[-1] = series_inv(f, wide)
                fpow[k] = fpow[-1] if k == -1 else truncate(series_mul(fp(k + 1), fpow[-1]), wide)
        return fpow[k]

    ginv = None
    gpow = {0: BiLaurent.one(ring)}

    def gp(k):
        nonlocal ginv
        if k not in gpow:
            if k > 0:
                gpow[k] = truncate(series_mul(gp(k - 1), g), wide)
            else:
                if ginv is None:
                    ginv = series_inv(g, wide)
                gpow[k] = truncate(series_mul(gp(k + 1), ginv), wide)
        return gpow[k]

    for r in range(h.nrows):
        j = h.j0 + r
        if j > window.jmax:
            break
        row = h.data[r]
        P = float(h.xprec[r])
        acc = BiLaurent.zero(ring)
        nzc = np.nonzero(ring.nonzero(row))[0] if row.size else []
        for c in nzc:
            i = iw0 + int(c)
            acc = series_add(acc, series_scale(fp(i), _sc(ring, row[c])))
        if P != INF:
            nsl = max(window.jmax - j + 1, 1)
            bounds = _tail_bounds(f, P, nsl)
            tail_y = nsl
            for s, b in enumerate(bounds):
                if b == -INF:
                    tail_y = s
                    break
            if f.yprec == INF and f.nrows == 1 and f.j0 == 0:
                tail_y = INF
            tail = BiLaurent(ring, 0, 0, ring.zeros((max(int(min(tail_y, nsl)), 0), 0)),
                             bounds[: max(int(min(tail_y, nsl)), 0)], tail_y)
            acc = series_add(acc, tail)
        if not acc.nrows and acc.yprec == INF:
            continue
        result = truncate(series_add(result, series_mul(gp(j), acc)), wide)
    if h.yprec != INF:
        result = BiLaurent(ring, result.i0, result.j0, result.data, result.xprec, min(result.yprec, h.yprec))
    return truncate(result, window)


def jacobian(f: BiLaurent, g: BiLaurent) -> BiLaurent:
    return series_sub(series_mul(deriv_x(f), deriv_y(g)), series_mul(deriv_y(f), deriv_x(g)))


def apply_cv(omega: Form2, cv: ChangeOfVars, window: Window = DEFAULT_WINDOW, variables=("x", "y")) -> Form2:
    """Pull ``h du^dv`` back along ``u = f, v = g`` to ``h(f,g) J dx^dy``."""
    cv.validate()
    return pullback(omega, cv.f, cv.g, window, variables)


def pullback(omega: Form2, f: BiLaurent, g: BiLaurent, window: Window = DEFAULT_WINDOW,
             variables=("x", "y")) -> Form2:
    """Pull back along an arbitrary substitution (no change-of-variables checks)."""
    hf = substitute(omega.h, f, g, window)
    return Form2(truncate(series_mul(hf, jacobian(f, g)), window), tuple(variables))


def res2_of_exact_form(A: BiLaurent, B: BiLaurent):
    """2-residue of ``dA ^ dB`` (always zero when certified)."""
    return res2(Form2(jacobian(A, B)))


# -- literals ------------------------------------------------------------------

def parse_series(text: str, ring=QQ, variables=("u", "v"), xprec: float = INF, yprec: float = INF) -> BiLaurent:
    """Parse a Laurent polynomial literal such as ``3*u^-1*v^2 + v``."""
    terms = parse_polynomial(text, ring, variables, allow_negative=True)
    return BiLaurent.from_terms(ring, terms, xprec, yprec)


def format_series(a: BiLaurent, variables=("u", "v")) -> str:
    x, y = variables
    parts = []
    for (i, j), c in sorted(a.terms().items(), key=lambda t: (t[0][1], t[0][0])):
        mon = []
        if i:
            mon.append(x if i == 1 else f"{x}^{i}")
        if j:
            mon.append(y if j == 1 else f"{y}^{j}")
        cs = a.ring.format(c)
        if not mon:
            parts.append(cs)
        elif c == a.ring.one:
            parts.append("*".join(mon))
        else:
            parts.append("*".join([f"({cs})" if "+" in cs or "/" in cs else cs] + mon))
    body = " + ".join(parts) if parts else "0"
    tails = []
    if a.yprec != INF:
        tails.append(f"O({y}^{int(a.yprec)})")
    if a.nrows and np.any(a.xprec != INF):
        tails.append("O(" + x + "^...)")
    return " + ".join([body] + tails)
