"""Coefficient rings for dense arrays: F_q (index arrays) and the rationals.

Both rings expose the same small vectorised vocabulary so that series and
polynomial code can be written once.  Arrays over F_q are int64 arrays of
element indices; arrays over Q are object arrays of ``Fraction``.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.signal import convolve2d

from .gf import FieldSpec


class FqRing:
    """F_q acting on int64 index arrays through the lookup tables of ``spec``."""

    dtype = np.int64

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.zero = 0
        self.one = 1
        self.constants = {"t": spec.p} if spec.e > 1 else {}

    def __eq__(self, other):
        return isinstance(other, FqRing) and other.spec == self.spec

    def __hash__(self):
        return hash(("Fq", self.spec))

    def __repr__(self):
        return repr(self.spec)

    @property
    def characteristic(self) -> int:
        return self.spec.p

    # scalars
    def from_int(self, n: int) -> int:
        return self.spec.from_int(int(n))

    def scalar(self, value) -> int:
        v = int(value)
        if not 0 <= v < self.spec.q:
            raise ValueError(f"{value} is not an element index of {self.spec!r}")
        return v

    def inv(self, a) -> int:
        if int(a) == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.spec.inv_table[int(a)])

    def format(self, a) -> str:
        return self.spec.format(int(a))

    # arrays
    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def asarray(self, values) -> np.ndarray:
        return np.asarray(values, dtype=np.int64)

    def add(self, a, b):
        return self.spec.add_table[a, b]

    def sub(self, a, b):
        return self.spec.sub_table[a, b]

    def neg(self, a):
        return self.spec.neg_table[a]

    def mul(self, a, b):
        return self.spec.mul_table[a, b]

    def nonzero(self, a) -> np.ndarray:
        return np.asarray(a) != 0

    def conv2d(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Full 2-D convolution of two coefficient grids."""
        spec = self.spec
        if a.size == 0 or b.size == 0:
            return self.zeros((max(a.shape[0] + b.shape[0] - 1, 0), max(a.shape[1] + b.shape[1] - 1, 0)))
        if spec.e == 1:
            return convolve2d(a, b) % spec.p
        ct = spec.coeff_table
        pa = [ct[a, k] for k in range(spec.e)]
        pb = [ct[b, k] for k in range(spec.e)]
        planes = [None] * (2 * spec.e - 1)
        for k in range(spec.e):
            for l in range(spec.e):
                c = convolve2d(pa[k], pb[l])
                planes[k + l] = c if planes[k + l] is None else planes[k + l] + c
        planes = [pl % spec.p for pl in planes]
        # reduce t^deg for deg >= e using the monic modulus
        for deg in range(2 * spec.e - 2, spec.e - 1, -1):
            top = planes[deg]
            for i in range(spec.e):
                if spec.modulus[i]:
                    planes[deg - spec.e + i] = (planes[deg - spec.e + i] - top * spec.modulus[i]) % spec.p
        out = np.zeros_like(planes[0])
        for k in range(spec.e - 1, -1, -1):
            out = out * spec.p + planes[k]
        return out


class RationalRing:
    """The rationals, for characteristic-0 cross-checks (object arrays)."""

    dtype = object
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.constants = {}

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"

    def from_int(self, n: int) -> Fraction:
        return Fraction(int(n))

    def scalar(self, value) -> Fraction:
        return Fraction(value)

    def inv(self, a) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def format(self, a) -> str:
        return str(a)

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def asarray(self, values) -> np.ndarray:
        arr = np.array(values, dtype=object)
        flat = arr.reshape(-1)
        for k in range(flat.size):
            flat[k] = Fraction(flat[k])
        return arr

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def nonzero(self, a) -> np.ndarray:
        return np.asarray(np.asarray(a) != 0, dtype=bool)

    def conv2d(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        # clear denominators and convolve integer numerators; Fraction arithmetic
        # inside the convolution is an order of magnitude slower
        ra, ca = a.shape
        rb, cb = b.shape
        out = self.zeros((max(ra + rb - 1, 0), max(ca + cb - 1, 0)))
        if a.size == 0 or b.size == 0:
            return out
        A, da = _clear_denominators(a)
        B, db = _clear_denominators(b)
        bound = _max_abs(A) * _max_abs(B) * min(A.size, B.size)
        if bound < 2**62:
            prod = convolve2d(A.astype(np.int64), B.astype(np.int64)).astype(object)
        else:
            prod = np.zeros(out.shape, dtype=object)
            for r in range(ra):
                if not A[r].any():
                    continue
                for s in range(rb):
                    prod[r + s] += np.convolve(A[r], B[s])
        den = da * db
        flat, src = out.reshape(-1), prod.reshape(-1)
        for k in range(flat.size):
            if src[k]:
                flat[k] = Fraction(int(src[k]), den)
        return out


def _clear_denominators(a: np.ndarray):
    """Integer object array and common denominator D with a = A / D."""
    den = 1
    for v in a.reshape(-1):
        if v:
            den = math.lcm(den, v.denominator)
    A = np.empty(a.shape, dtype=object)
    fa, fA = a.reshape(-1), A.reshape(-1)
    for k in range(fa.size):
        v = fa[k]
        fA[k] = v.numerator * (den // v.denominator) if v else 0
    return A, den


def _max_abs(A: np.ndarray) -> int:
    return max((abs(int(v)) for v in A.reshape(-1)), default=0)

QQ = RationalRing()
