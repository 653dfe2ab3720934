"""Small finite fields F_q, q = p^e <= 64, with table-driven arithmetic.

Elements are identified with their integer index ``sum(c_i * p**i)`` where
``c_0 + c_1 t + ... + c_{e-1} t^{e-1}`` is the canonical representative modulo
the fixed irreducible modulus of the field.  Index 0 is zero and index 1 is
one, and for a prime field the index is just the residue.

The modulus chosen for ``(p, e)`` is the monic irreducible polynomial of
degree ``e`` with the smallest coefficient index, which gives

    F_4: t^2+t+1    F_8: t^3+t+1    F_9: t^2+1     F_16: t^4+t+1
    F_25: t^2+2     F_27: t^3+2t+1  F_32: t^5+t^2+1 F_49: t^2+1
    F_64: t^6+t+1

Whole-array arithmetic on indices goes through the lookup tables exposed by
:class:`FieldSpec` (``add``, ``mul``, ``neg``, ``inv``...), which accept
scalars or numpy integer arrays.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

MAX_Q = 64


class FieldError(ValueError):
    """Raised on invalid field construction or illegal field operations."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _polymulmod(a, b, modulus, p):
    """Multiply coefficient lists a, b over F_p and reduce by a monic modulus."""
    e = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for i in range(e + 1):
                prod[k - e + i] = (prod[k - e + i] - c * modulus[i]) % p
    return (prod + [0] * e)[:e]


def _has_root_free_factorization(coeffs, p) -> bool:
    """Irreducibility test by exhaustive trial division (tiny degrees only)."""
    e = len(coeffs) - 1
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            rem = list(coeffs)
            for k in range(e, d - 1, -1):
                c = rem[k]
                if c:
                    for i in range(d + 1):
                        rem[k - d + i] = (rem[k - d + i] - c * divisor[i]) % p
            if not any(rem[:d]):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible of degree e over F_p with the least coefficient index."""
    if e == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=e):
        coeffs = tuple(reversed(tail)) + (1,)
        # reversed product order enumerates the low coefficients fastest
        if coeffs[0] == 0:
            continue
        if _has_root_free_factorization(coeffs, p):
            return coeffs
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^e} with a fixed monic irreducible ``modulus``.

    ``modulus`` lists coefficients from the constant term upwards; for
    ``e == 1`` it is ``(0, 1)``, i.e. the polynomial ``t``.
    """

    p: int
    e: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self) -> str:
        return f"F_{self.q}" if self.e == 1 else f"F_{self.q}[{_poly_str(self.modulus, self.p)}]"

    # -- tables ---------------------------------------------------------
    @cached_property
    def coeff_table(self) -> np.ndarray:
        """``coeff_table[i]`` is the coefficient vector of element index i."""
        idx = np.arange(self.q)
        return np.stack([(idx // self.p**k) % self.p for k in range(self.e)], axis=1)

    @cached_property
    def add_table(self) -> np.ndarray:
        c = self.coeff_table
        s = (c[:, None, :] + c[None, :, :]) % self.p
        return (s * self.p ** np.arange(self.e)).sum(axis=2)

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        if self.e == 1:
            idx = np.arange(q)
            return (idx[:, None] * idx[None, :]) % q
        coeffs = [list(map(int, row)) for row in self.coeff_table]
        table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                c = _polymulmod(coeffs[a], coeffs[b], self.modulus, self.p)
                v = sum(x * self.p**k for k, x in enumerate(c))
                table[a, b] = table[b, a] = v
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        c = (-self.coeff_table) % self.p
        return (c * self.p ** np.arange(self.e)).sum(axis=1)

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Multiplicative inverses; entry 0 is a -1 placeholder."""
        inv = np.full(self.q, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        inv[rows] = cols
        return inv

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]

    # -- vectorised index arithmetic ----------------------------------------
    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.sub_table[a, b]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.inv_table[a]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = int(self.inv(a)), -n
        r = 1
        while n:
            if n & 1:
                r = int(self.mul_table[r, a])
            a = int(self.mul_table[a, a])
            n >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Index of the image of the integer n in the prime subfield."""
        return n % self.p

    # -- element helpers ------------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldError("element belongs to another field")
            return value
        if isinstance(value, str):
            return FieldElement(self, self.parse(value))
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, self.from_int(int(value)))
        return FieldElement(self, self.index_of(value))

    def element(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q:
            raise FieldError(f"index {index} out of range for {self!r}")
        return FieldElement(self, int(index))

    def index_of(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.e:
            # reduce a longer polynomial modulo the modulus
            coeffs = _polymulmod([c % self.p for c in coeffs], [1], self.modulus, self.p)
        return sum((int(c) % self.p) * self.p**k for k, c in enumerate(coeffs))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, i) for i in range(self.q)]

    @property
    def generator_index(self) -> int:
        """Index of the class of t (equal to p for e > 1)."""
        if self.e == 1:
            raise FieldError("prime fields have no t literal")
        return self.p

    def parse(self, text: str) -> int:
        """Parse a literal: decimal integers, or t-polynomials like ``2*t^2+t+1``."""
        s = text.replace(" ", "")
        if not s:
            raise FieldError("empty field literal")
        if re.fullmatch(r"[+-]?\d+", s):
            return self.from_int(int(s))
        if self.e == 1:
            raise FieldError(f"bad literal {text!r} for prime field {self!r}")
        if not re.fullmatch(r"[+-]?(\d+\*?)?t?(\^\d+)?([+-](\d+\*?)?t?(\^\d+)?)*", s):
            raise FieldError(f"bad field literal {text!r}")
        acc = 0
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            m = re.fullmatch(r"(\d+)?\*?(t)?(?:\^(\d+))?", body)
            if m is None or (m.group(1) is None and m.group(2) is None):
                raise FieldError(f"bad field literal {text!r}")
            c = int(m.group(1)) if m.group(1) else 1
            k = (int(m.group(3)) if m.group(3) else 1) if m.group(2) else 0
            if m.group(3) and not m.group(2):
                raise FieldError(f"bad field literal {text!r}")
            term = self.mul(self.from_int(c), self.power(self.p, k))
            acc = int(self.add(acc, self.neg(term) if sign == "-" else term))
        return acc

    def format(self, index: int) -> str:
        if self.e == 1:
            return str(int(index))
        return _poly_str(tuple(int(c) for c in self.coeff_table[index]), self.p)


def _poly_str(coeffs, p) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mon = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if not mon:
            terms.append(str(c))
        else:
            terms.append(mon if c == 1 else f"{c}*{mon}")
    return "+".join(terms) if terms else "0"


def field_new(p: int, e: int = 1) -> FieldSpec:
    """Return the field F_{p^e}; the same (p, e) always gives the same spec."""
    if not isinstance(p, (int, np.integer)) or not _is_prime(int(p)):
        raise FieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise FieldError("extension degree must be >= 1")
    if p**e > MAX_Q:
        raise FieldError(f"q = {p}^{e} exceeds supported size {MAX_Q}")
    return _field(int(p), int(e))


@lru_cache(maxsize=None)
def _field(p: int, e: int) -> FieldSpec:
    return FieldSpec(p, e, default_modulus(p, e))


def field_from_q(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if _is_prime(p):
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r == 1 and e:
                return field_new(p, e)
    raise FieldError(f"{q} is not a prime power")


def parse_field(text: str) -> FieldSpec:
    """Parse ``p^e``, ``p`` or ``q`` (a prime power) into a field."""
    s = text.strip()
    m = re.fullmatch(r"(\d+)\^(\d+)", s)
    if m:
        return field_new(int(m.group(1)), int(m.group(2)))
    if re.fullmatch(r"\d+", s):
        return field_from_q(int(s))
    raise FieldError(f"bad field spec {text!r}; expected p^e")


def elements(spec: FieldSpec) -> list["FieldElement"]:
    """All q elements in ascending index order."""
    return spec.elements()


@dataclass(frozen=True)
class FieldElement:
    """An element of ``spec`` stored as its integer index."""

    spec: FieldSpec
    index: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.spec.coeff_table[self.index])

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError(f"mixed fields {self.spec!r} and {other.spec!r}")
            return other.index
        if isinstance(other, (int, np.integer)):
            return self.spec.from_int(int(other))
        return NotImplemented

    def _wrap(self, index) -> "FieldElement":
        return FieldElement(self.spec, int(index))

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.add(self.index, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.sub(self.index, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.sub(o, self.index))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.mul(self.index, o))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.spec.neg(self.index))

    def inverse(self) -> "FieldElement":
        if self.index == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._wrap(self.spec.inv_table[self.index])

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * FieldElement(self.spec, o).inverse()

    def __pow__(self, n: int):
        if n < 0 and self.index == 0:
            raise ZeroDivisionError("negative power of zero")
        return self._wrap(self.spec.power(self.index, n))

    def __bool__(self) -> bool:
        return self.index != 0

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return self.spec.format(self.index)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def pow(a: FieldElement, n: int) -> FieldElement:  # noqa: A001 - mirrors the op name
    return a**n


def embedding(small: FieldSpec, big: FieldSpec) -> np.ndarray:
    """Index map of a field embedding small -> big (requires e_small | e_big).

    The image of t is the root of small's modulus in big with least index, so
    the map is deterministic.
    """
    if small.p != big.p or big.e % small.e:
        raise FieldError(f"{small!r} does not embed in {big!r}")
    if small.e == 1:
        return np.arange(small.q)
    root = None
    for r in range(big.q):
        acc = 0
        for c in reversed(small.modulus):
            acc = int(big.add(big.mul(acc, r), big.from_int(c)))
        if acc == 0:
            root = r
            break
    assert root is not None
    powers = [big.power(root, k) for k in range(small.e)]
    image = np.zeros(small.q, dtype=np.int64)
    for i in range(small.q):
        acc = 0
        for k, c in enumerate(small.coeff_table[i]):
            acc = int(big.add(acc, big.mul(big.from_int(int(c)), powers[k])))
        image[i] = acc
    return image
