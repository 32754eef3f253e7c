"""Exact matrix algebra over a truncated DVR.

Everything reduces to one primitive, :func:`smith`, which diagonalises a
matrix by unimodular row and column operations.  Solving, kernels, images
and presentations of finite O-modules are all read off a Smith form.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dvr import RingSpec

__all__ = [
    "Mat",
    "SmithForm",
    "smith",
    "solve",
    "kernel_basis",
    "right_kernel",
    "invariant_factors",
    "FiniteQuotient",
    "inverse",
    "submodule_length",
]


@dataclass(frozen=True, eq=False)
class Mat:
    """A matrix over ``ring``; ``a`` has shape (e, rows, cols)."""

    ring: RingSpec
    a: np.ndarray

    def __post_init__(self):
        if self.a.ndim != 3 or self.a.shape[0] != self.ring.e:
            raise ValueError(f"bad coefficient array shape {self.a.shape}")

    @classmethod
    def from_ints(cls, ring: RingSpec, rows) -> "Mat":
        arr = np.array(rows, dtype=object)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        return cls(ring, ring.from_ints(arr))

    @classmethod
    def from_coeffs(cls, ring: RingSpec, rows) -> "Mat":
        """Nested rows of coefficient vectors (the serialised form)."""
        arr = np.array(rows, dtype=object)
        if arr.ndim == 2:  # plain integers
            return cls.from_ints(ring, rows)
        return cls(ring, ring.canon(np.moveaxis(arr, -1, 0).astype(ring.dtype)))

    @classmethod
    def zeros(cls, ring, r, c) -> "Mat":
        return cls(ring, ring.zeros((r, c)))

    @classmethod
    def eye(cls, ring, n) -> "Mat":
        return cls(ring, ring.eye(n))

    @property
    def rows(self) -> int:
        return self.a.shape[1]

    @property
    def cols(self) -> int:
        return self.a.shape[2]

    @property
    def shape(self):
        return self.a.shape[1:]

    def __matmul__(self, other: "Mat") -> "Mat":
        return Mat(self.ring, self.ring.matmul(self.a, other.a))

    def __add__(self, other: "Mat") -> "Mat":
        return Mat(self.ring, self.ring.add(self.a, other.a))

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat(self.ring, self.ring.sub(self.a, other.a))

    def __neg__(self) -> "Mat":
        return Mat(self.ring, self.ring.neg(self.a))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.ring == other.ring
            and self.a.shape == other.a.shape
            and bool(np.all(self.a == other.a))
        )

    __hash__ = None

    @property
    def T(self) -> "Mat":
        return Mat(self.ring, np.swapaxes(self.a, 1, 2))

    def scale(self, x) -> "Mat":
        """Multiply by a ring element (int, 0-d coefficient array or RingElem)."""
        if isinstance(x, int):
            x = self.ring.scalar(x)
        elif hasattr(x, "arr"):
            x = x.arr
        return Mat(self.ring, self.ring.scale(x, self.a))

    def shift(self, v: int) -> "Mat":
        return Mat(self.ring, self.ring.shift(self.a, v))

    def reduce(self, b: int) -> "Mat":
        r = self.ring.trunc(b)
        return Mat(r, r.canon(self.a))

    def lift(self, ring: RingSpec) -> "Mat":
        return Mat(ring, ring.lift(self.a))

    def valuations(self) -> np.ndarray:
        return self.ring.valuation(self.a)

    def is_zero(self) -> bool:
        return not self.a.any()

    def sub(self, rows, cols) -> "Mat":
        """Submatrix from index lists or slices."""
        a = self.a[:, rows, :]
        return Mat(self.ring, a[:, :, cols])

    def entry(self, i, j) -> np.ndarray:
        return self.a[:, i, j]

    def to_coeffs(self) -> list:
        """Nested rows of coefficient vectors (plain ints when e = 1)."""
        if self.ring.e == 1:
            return [[int(x) for x in row] for row in self.a[0]]
        return [[[int(c) for c in self.a[:, i, j]] for j in range(self.cols)] for i in range(self.rows)]

    def __repr__(self):
        return f"Mat({self.ring.p},{self.ring.e},N={self.ring.N}, {self.to_coeffs()})"


def vstack(mats, ring=None, cols=None) -> Mat:
    mats = list(mats)
    if not mats:
        return Mat(ring, ring.zeros((0, cols)))
    return Mat(mats[0].ring, np.concatenate([m.a for m in mats], axis=1))


def hstack(mats, ring=None, rows=None) -> Mat:
    mats = list(mats)
    if not mats:
        return Mat(ring, ring.zeros((rows, 0)))
    return Mat(mats[0].ring, np.concatenate([m.a for m in mats], axis=2))


def block_diag(mats, ring) -> Mat:
    r = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = ring.zeros((r, c))
    i = j = 0
    for m in mats:
        out[:, i : i + m.rows, j : j + m.cols] = m.a
        i += m.rows
        j += m.cols
    return Mat(ring, out)


def kron_left(A: Mat, n: int) -> Mat:
    """A (x) I_n."""
    eye = np.eye(n, dtype=A.ring.dtype)
    return Mat(A.ring, np.stack([np.kron(A.a[i], eye) for i in range(A.ring.e)]))


def kron_right(n: int, B: Mat) -> Mat:
    """I_n (x) B."""
    eye = np.eye(n, dtype=B.ring.dtype)
    return Mat(B.ring, np.stack([np.kron(eye, B.a[i]) for i in range(B.ring.e)]))


@dataclass(frozen=True, eq=False)
class SmithForm:
    """U A V = diag(pi^d_1, ...), with the inverses of U and V alongside.

    Transforms that were not requested from smith() are None.
    """

    U: Mat | None
    V: Mat
    Uinv: Mat | None
    Vinv: Mat | None
    d: tuple

    @property
    def rank(self) -> int:
        """Number of diagonal entries that are nonzero at working precision."""
        N = self.V.ring.N
        return sum(1 for x in self.d if x < N)


def smith(A: Mat, left: bool = True, inverses: bool = True) -> SmithForm:
    """Smith form with U (if left), V, and their inverses (if inverses).

    Skipping U matters for tall systems such as intertwiner equations,
    where U is much larger than A itself.
    """
    ring = A.ring
    N = ring.N
    r, c = A.shape
    a = A.a.copy()
    want_ui = left and inverses
    U = ring.eye(r) if left else None
    V = ring.eye(c)
    Ui = ring.eye(r) if want_ui else None
    Vi = ring.eye(c) if inverses else None
    d = []
    val = ring.valuation(a)  # kept in step with a; only updated rows are recomputed
    # rows below the pivot are zero left of the trailing block, so full-row minima suffice
    rowmin = val.min(axis=1) if c else np.full(r, N)
    for k in range(min(r, c)):
        i = k + int(np.argmin(rowmin[k:]))
        vmin = int(rowmin[i])
        if vmin >= N:
            break
        j = k + int(np.argmax(val[i, k:] == vmin))
        if i != k:
            val[[k, i], :] = val[[i, k], :]
            rowmin[[k, i]] = rowmin[[i, k]]
            a[:, [k, i], :] = a[:, [i, k], :]
            if left:
                U[:, [k, i], :] = U[:, [i, k], :]
            if want_ui:
                Ui[:, :, [k, i]] = Ui[:, :, [i, k]]
        if j != k:
            val[:, [k, j]] = val[:, [j, k]]
            a[:, :, [k, j]] = a[:, :, [j, k]]
            V[:, :, [k, j]] = V[:, :, [j, k]]
            if inverses:
                Vi[:, [k, j], :] = Vi[:, [j, k], :]
        # normalise the pivot to exactly pi^vmin
        u = ring.div_pi(a[:, k, k], vmin)
        uinv = ring.inv_unit(u)
        a[:, k, :] = ring.scale(uinv, a[:, k, :])
        if left:
            U[:, k, :] = ring.scale(uinv, U[:, k, :])
        if want_ui:
            Ui[:, :, k] = ring.scale(u, Ui[:, :, k])
        # clear the pivot column with row operations, touching only rows that need it
        if k + 1 < r:
            q = ring.div_pi(a[:, k + 1 :, k], vmin)  # (e, r-k-1)
            rows = np.flatnonzero(q.any(axis=0))
            if rows.size:
                q = q[:, rows]
                rows = rows + k + 1
                a[:, rows, :] = ring.submul(a[:, rows, :], q[:, :, None], a[:, k : k + 1, :])
                val[rows, :] = ring.valuation(a[:, rows, :])
                rowmin[rows] = val[rows, :].min(axis=1)
                if left:
                    U[:, rows, :] = ring.submul(U[:, rows, :], q[:, :, None], U[:, k : k + 1, :])
                if want_ui:
                    Ui[:, :, k] = ring.add(Ui[:, :, k], ring.matmul(Ui[:, :, rows], q[:, :, None])[:, :, 0])
        # clear the pivot row with column operations (only row k is affected)
        if k + 1 < c:
            q = ring.div_pi(a[:, k, k + 1 :], vmin)
            cols = np.flatnonzero(q.any(axis=0))
            if cols.size:
                q = q[:, cols]
                cols = cols + k + 1
                a[:, k, k + 1 :] = 0
                val[k, k + 1 :] = N
                V[:, :, cols] = ring.submul(V[:, :, cols], V[:, :, k : k + 1], q[:, None, :])
                if inverses:
                    Vi[:, k, :] = ring.add(Vi[:, k, :], ring.matmul(q[:, None, :], Vi[:, cols, :])[:, 0, :])
        d.append(vmin)
    d += [N] * (min(r, c) - len(d))
    wrap = lambda x: None if x is None else Mat(ring, x)
    return SmithForm(wrap(U), Mat(ring, V), wrap(Ui), wrap(Vi), tuple(d))


def solve(A: Mat, b: Mat, sf: SmithForm | None = None) -> Mat | None:
    """Some x with A x = b exactly, or None when no solution exists."""
    ring = A.ring
    N = ring.N
    sf = sf or smith(A)
    r, c = A.shape
    ub = ring.matmul(sf.U.a, b.a)
    y = ring.zeros((c, b.cols))
    vals = ring.valuation(ub)
    for i in range(r):
        di = sf.d[i] if i < len(sf.d) else N
        if di >= N:
            if (vals[i] < N).any():
                return None
            continue
        if (vals[i] < di).any():
            return None
        y[:, i, :] = ring.div_pi(ub[:, i, :], di)
    return Mat(ring, ring.matmul(sf.V.a, y))


def kernel_basis(A: Mat) -> Mat:
    """Rows generating {x : x A = 0}; a minimal generating set."""
    ring = A.ring
    N = ring.N
    r, c = A.shape
    sf = smith(A)
    rows = []
    for i in range(r):
        di = sf.d[i] if i < len(sf.d) else N
        if di == 0:
            continue
        rows.append(ring.shift(sf.U.a[:, i, :], N - di) if di < N else sf.U.a[:, i, :])
    if not rows:
        return Mat(ring, ring.zeros((0, r)))
    return Mat(ring, np.stack(rows, axis=1))


def right_kernel(A: Mat, sf: SmithForm | None = None):
    """Generators of {x : A x = 0} as columns, with the order exponent of each.

    A generator with exponent N is free at working precision.
    """
    ring = A.ring
    N = ring.N
    r, c = A.shape
    sf = sf or smith(A, left=False, inverses=False)
    cols, orders = [], []
    for j in range(c):
        dj = sf.d[j] if j < len(sf.d) else N
        if dj == 0:
            continue
        v = sf.V.a[:, :, j]
        cols.append(ring.shift(v, N - dj) if dj < N else v)
        orders.append(dj)
    if not cols:
        return Mat(ring, ring.zeros((c, 0))), []
    return Mat(ring, np.stack(cols, axis=2)), orders


def inverse(A: Mat) -> Mat:
    sf = smith(A)
    if A.rows != A.cols or any(x != 0 for x in sf.d):
        raise ZeroDivisionError("matrix is not invertible over the ring")
    return sf.V @ sf.U


def submodule_length(rows: Mat) -> int:
    """Composition length of the O-submodule spanned by the rows."""
    N = rows.ring.N
    if rows.rows == 0 or rows.cols == 0:
        return 0
    return sum(N - x for x in smith(rows, left=False, inverses=False).d)


class FiniteQuotient:
    """The finite O-module <gens> / <rels>, both given as rows in O_N^K.

    Presents the quotient as a direct sum of cyclic modules O / pi^d_j and
    provides coordinates for elements of <gens>.  Rows of ``rels`` must lie
    in the span of the rows of ``gens``.
    """

    def __init__(self, gens: Mat, rels: Mat):
        ring = gens.ring
        self.ring = ring
        N = ring.N
        self.K = gens.cols
        sf = smith(gens)
        self._V = sf.V
        self._gd = [x for x in sf.d if x < N]
        # basis y_i = pi^{d_i} (V^-1)_i of <gens>; y_i has order pi^(N - d_i)
        h = len(self._gd)
        self._ybasis = Mat(ring, np.stack([ring.shift(sf.Vinv.a[:, i, :], d) for i, d in enumerate(self._gd)], axis=1)) if h else Mat(ring, ring.zeros((0, self.K)))
        rel_rows = []
        if rels.rows:
            rc = self._raw_coords(rels)
            if rc is None:
                raise ValueError("relations are not contained in the span of the generators")
            rel_rows.append(rc)
        torsion = ring.zeros((h, h))
        for i, d in enumerate(self._gd):
            torsion[:, i, i] = ring.pi_pow(N - d)
        rel_rows.append(Mat(ring, torsion))
        Rel = vstack(rel_rows)
        sf2 = smith(Rel)
        d2 = list(sf2.d) + [N] * (h - len(sf2.d))
        self._V2 = sf2.V
        keep = [j for j in range(h) if d2[j] > 0]
        self.exponents = [min(d2[j], N) for j in keep]
        self._keep = keep
        gen_rows = [ring.matmul(sf2.Vinv.a[:, j : j + 1, :], self._ybasis.a)[:, 0, :] for j in keep]
        self.generators = Mat(ring, np.stack(gen_rows, axis=1)) if keep else Mat(ring, ring.zeros((0, self.K)))

    def _raw_coords(self, x: Mat) -> Mat | None:
        ring = self.ring
        xv = ring.matmul(x.a, self._V.a)
        vals = ring.valuation(xv)
        h = len(self._gd)
        if (vals[:, h:] < ring.N).any():
            return None
        out = ring.zeros((x.rows, h))
        for i, d in enumerate(self._gd):
            if (vals[:, i] < d).any():
                return None
            out[:, :, i] = ring.div_pi(xv[:, :, i], d)
        return Mat(ring, out)

    def coords(self, x: Mat) -> np.ndarray | None:
        """Coordinates of the rows of x in the cyclic decomposition.

        Entry j is reduced modulo pi^exponents[j]; returns an (e, rows, len)
        coefficient array, or None if a row is outside <gens>.
        """
        c = self._raw_coords(x)
        if c is None:
            return None
        z = self.ring.matmul(c.a, self._V2.a)[:, :, self._keep]
        for col, d in enumerate(self.exponents):
            z[:, :, col] = self.ring.trunc(d).canon(z[:, :, col]) if d < self.ring.N else z[:, :, col]
        return z

    def is_zero(self, x: Mat) -> np.ndarray:
        """Boolean per row: does the row vanish in the quotient."""
        z = self.coords(x)
        if z is None:
            raise ValueError("element outside the generated submodule")
        return ~z.any(axis=(0, 2))

    @property
    def length(self) -> int:
        return sum(self.exponents)


def invariant_factors(gens: Mat, rels: Mat) -> list:
    """Exponents d_i with <gens>/<rels> = sum O/pi^d_i (zeros dropped), sorted."""
    return sorted(FiniteQuotient(gens, rels).exponents)
