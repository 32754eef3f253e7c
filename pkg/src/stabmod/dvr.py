"""Truncated totally ramified discrete valuation rings.

The ring O_N is modelled as Z[x]/(x^e - p) modulo pi^N, where pi is the class
of x.  An element is a vector of ``e`` integer coefficients (a_0, ..., a_{e-1})
meaning sum a_i pi^i.  Since pi^N O = sum_i p^ceil((N - i)/e) Z_p pi^i, the
truncation is coefficient-wise: a_i lives in Z / p^ceil((N - i)/e).

Arrays of ring elements are numpy arrays whose *leading* axis has length
``e`` and holds the coefficients; every helper here works on such arrays so
that matrix algebra stays vectorised.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import PrecisionError

__all__ = [
    "RingSpec",
    "RingElem",
    "PrecisionError",
    "ring_make",
    "val",
    "inv",
    "div_pi",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class RingSpec:
    p: int
    e: int
    m: int
    N: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.e < 1 or self.m < 1:
            raise ValueError("ramification e and precision m must be >= 1")
        if not (self.e * (self.m - 1) < self.N <= self.e * self.m):
            raise ValueError(f"N = {self.N} inconsistent with e = {self.e}, m = {self.m}")

    # -- bookkeeping -----------------------------------------------------
    @cached_property
    def mods(self) -> np.ndarray:
        """Modulus of each coefficient, shaped (e,)."""
        return np.array(
            [self.p ** max(_ceil_div(self.N - i, self.e), 0) for i in range(self.e)],
            dtype=object,
        ).astype(self.dtype)

    @cached_property
    def dtype(self):
        # products of two residues, summed over long inner products, must not wrap
        bound = self.p ** (2 * self.m + 1) * self.e * 8192
        return np.int64 if bound < 2**62 else object

    def trunc(self, b: int) -> "RingSpec":
        """The quotient ring O / pi^b (same p, e)."""
        if b == self.N:
            return self
        if b < 1:
            raise ValueError("truncation level must be >= 1")
        return RingSpec(self.p, self.e, _ceil_div(b, self.e), b)

    def val_of_int(self, n: int) -> int:
        """pi-adic valuation of the rational integer n (capped at N)."""
        if n % self.p ** self.m == 0:
            return self.N
        k = 0
        while n % self.p == 0:
            n //= self.p
            k += 1
        return min(self.e * k, self.N)

    # -- array constructors ------------------------------------------------
    def zeros(self, shape) -> np.ndarray:
        if isinstance(shape, int):
            shape = (shape,)
        return np.zeros((self.e, *shape), dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros((n, n))
        a[0] = np.eye(n, dtype=self.dtype)
        return self.canon(a)

    def scalar(self, x: int) -> np.ndarray:
        a = self.zeros(())
        a[0] = x
        return self.canon(a)

    def pi_pow(self, v: int) -> np.ndarray:
        """pi^v as a 0-d element array."""
        a = self.zeros(())
        if v < self.N:
            s, r = divmod(v, self.e)
            a[r] = self.p**s
        return self.canon(a)

    def from_ints(self, ints) -> np.ndarray:
        """Lift an integer array (unramified digits) into coefficient form."""
        ints = np.asarray(ints, dtype=object)
        a = np.zeros((self.e, *ints.shape), dtype=object)
        a[0] = ints
        return self.canon(a.astype(self.dtype) if self.dtype is np.int64 else a)

    def lift(self, a: np.ndarray) -> np.ndarray:
        """Re-read an array from a coarser truncation in this ring (canonical lift)."""
        return self.canon(np.array(a, dtype=self.dtype))

    # -- arithmetic ----------------------------------------------------------
    def canon(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a)
        if a.dtype != self.dtype:
            a = a.astype(self.dtype)
        mods = self.mods.reshape((self.e,) + (1,) * (a.ndim - 1))
        return np.mod(a, mods)

    def add(self, a, b):
        return self.canon(a + b)

    def sub(self, a, b):
        return self.canon(a - b)

    def neg(self, a):
        return self.canon(-a)

    def _fold(self, terms, canon: bool = True):
        """Combine partial products c[0..2e-2] via pi^e = p."""
        e = self.e
        out = []
        for k in range(e):
            t = terms[k]
            if k + e < len(terms):
                t = t + self.p * terms[k + e]
            out.append(t)
        out = np.stack(out)
        return self.canon(out) if canon else out

    def submul(self, a, q, b):
        """a - q * b (broadcasting) with a single reduction when int64 allows it."""
        a, q, b = np.asarray(a), np.asarray(q), np.asarray(b)
        if self.dtype is not np.int64:
            return self.sub(a, self.mul(q, b))
        if self.e == 1:
            return self.canon(a - q * b)
        terms = [0] * (2 * self.e - 1)
        for i in range(self.e):
            for j in range(self.e):
                terms[i + j] = terms[i + j] + q[i] * b[j]
        return self.canon(a - self._fold(terms, canon=False))

    def mul(self, a, b):
        """Elementwise (broadcasting) product."""
        a = np.asarray(a)
        b = np.asarray(b)
        if self.e == 1:
            return self.canon(a * b)
        terms = [0] * (2 * self.e - 1)
        for i in range(self.e):
            for j in range(self.e):
                terms[i + j] = terms[i + j] + a[i] * b[j]
        return self._fold(terms)

    def matmul(self, a, b):
        if self.e == 1:
            return self.canon(np.matmul(a[0], b[0])[None])
        terms = [0] * (2 * self.e - 1)
        for i in range(self.e):
            for j in range(self.e):
                terms[i + j] = terms[i + j] + np.matmul(a[i], b[j])
        return self._fold(terms)

    def scale(self, x, a):
        """Multiply every entry of array ``a`` by the element ``x`` (0-d array)."""
        x = np.asarray(x).reshape((self.e,) + (1,) * (np.asarray(a).ndim - 1))
        return self.mul(x, a)

    def shift(self, a, v: int):
        """Multiply by pi^v."""
        if v <= 0:
            return self.canon(a)
        if v >= self.N:
            return self.zeros(np.asarray(a).shape[1:])
        s, r = divmod(v, self.e)
        a = np.asarray(a) * self.p**s
        for _ in range(r):
            a = np.concatenate([self.p * a[-1:], a[:-1]], axis=0)
        return self.canon(a)

    @cached_property
    def _vp_table(self):
        """nu_p of every residue mod p^m (p^m for zero), or None when too large."""
        size = self.p**self.m
        if self.dtype is not np.int64 or size > 1 << 20:
            return None
        t = np.zeros(size, dtype=np.int64)
        q = self.p
        while q < size:
            t[::q] += 1
            q *= self.p
        t[0] = self.m
        return t

    def valuation(self, a) -> np.ndarray:
        """Elementwise pi-adic valuation, zero reported as N."""
        a = np.asarray(a)
        out = np.full(a.shape[1:], self.N, dtype=np.int64)
        p = self.p
        table = self._vp_table
        for i in range(self.e):
            if table is not None:
                t = np.mod(np.asarray(a[i], dtype=np.int64), self.mods[i])
                v = np.where(t == 0, self.N, i + self.e * table[t])
                out = np.minimum(out, v)
                continue
            t = np.array(a[i], dtype=self.dtype)
            nz = t != 0
            if not nz.any():
                continue
            vp = np.zeros(t.shape, dtype=np.int64)
            mask = nz & (t % p == 0)
            while mask.any():
                vp[mask] += 1
                t = np.where(mask, t // p, t)
                mask = nz & (t % p == 0)
            out = np.where(nz, np.minimum(out, i + self.e * vp), out)
        return np.minimum(out, self.N)

    def div_pi(self, a, v: int):
        """Exact division by pi^v of entries with valuation >= v.

        The quotient is only determined modulo pi^(N - v); the canonical
        representative returned has its undetermined digits set to zero.
        """
        if v <= 0:
            return self.canon(a)
        a = np.asarray(a)
        s, r = divmod(v, self.e)
        if s:
            a = a // self.p**s
        for _ in range(r):
            a = np.concatenate([a[1:], a[:1] // self.p], axis=0)
        return self.canon(a)

    def inv_unit(self, x):
        """Inverse of a unit given as a coefficient vector (0-d element array)."""
        x = self.canon(np.asarray(x))
        a0 = int(x[0]) % self.p
        if a0 == 0:
            raise ZeroDivisionError("element is not a unit")
        y = self.scalar(pow(a0, -1, self.p))
        one = self.scalar(1)
        two = self.scalar(2)
        # Newton: y <- y (2 - x y); the error x y - 1 squares each step
        for _ in range(2 * self.N.bit_length() + 4):
            xy = self.mul(x, y)
            if np.array_equal(xy, one):
                return y
            y = self.mul(y, self.sub(two, xy))
        raise ArithmeticError("Newton inversion failed to converge")  # pragma: no cover

    def elem(self, coeffs) -> "RingElem":
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        coeffs = list(coeffs) + [0] * (self.e - len(coeffs))
        arr = self.canon(np.array(coeffs, dtype=object).astype(self.dtype))
        return RingElem(self, tuple(int(c) for c in arr))

    @property
    def pi(self) -> "RingElem":
        return RingElem(self, tuple(int(c) for c in self.pi_pow(1)))

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "m": self.m}


def ring_make(p: int, e: int, m: int) -> RingSpec:
    """O / pi^(e m) with pi^e = p; raises ValueError on bad parameters."""
    return RingSpec(p, e, m, e * m)


@dataclass(frozen=True)
class RingElem:
    ring: RingSpec = field(repr=False)
    coeffs: tuple

    @property
    def arr(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=self.ring.dtype)

    def _wrap(self, a) -> "RingElem":
        return RingElem(self.ring, tuple(int(c) for c in a))

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise ValueError("elements of different rings")
            return other.arr
        return self.ring.scalar(int(other))

    def __add__(self, other):
        return self._wrap(self.ring.add(self.arr, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.ring.sub(self.arr, self._coerce(other)))

    def __rsub__(self, other):
        return self._wrap(self.ring.sub(self._coerce(other), self.arr))

    def __mul__(self, other):
        return self._wrap(self.ring.mul(self.arr, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.ring.neg(self.arr))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.elem(other)
        return isinstance(other, RingElem) and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def is_unit(self) -> bool:
        return self.coeffs[0] % self.ring.p != 0

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def val(x: RingElem) -> int:
    return int(x.ring.valuation(x.arr))


def inv(x: RingElem) -> RingElem:
    if not x.is_unit():
        raise ZeroDivisionError("element is not a unit")
    return x._wrap(x.ring.inv_unit(x.arr))


def div_pi(x: RingElem, v: int) -> RingElem:
    """y with pi^v y = x; y is meaningful modulo pi^(N - v) only."""
    if val(x) < v:
        raise ArithmeticError(f"valuation {val(x)} < {v}: not divisible by pi^{v}")
    return x._wrap(x.ring.div_pi(x.arr, v))
