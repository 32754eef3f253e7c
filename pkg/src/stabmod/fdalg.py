"""Finite-dimensional algebras over F_p given as spans of matrices.

Provides the pieces the decomposition machinery needs: linear algebra over
F_p, the Jacobson radical in characteristic p, a locality test, and a
search for nontrivial idempotents.
"""
from __future__ import annotations

import numpy as np
import sympy

from .errors import Indeterminate

__all__ = [
    "rref",
    "nullspace",
    "rank_mod",
    "solve_mod",
    "MatAlgebra",
]


def rref(M, p: int):
    """Reduced row echelon form mod p; returns (R, pivot columns)."""
    R = np.array(M, dtype=np.int64) % p
    if R.ndim != 2:
        R = R.reshape(R.shape[0], -1)
    rows, cols = R.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r, c:] = (R[r, c:] * pow(int(R[r, c]), -1, p)) % p
        hit = np.flatnonzero(R[:, c])
        hit = hit[hit != r]
        if hit.size:
            R[hit, c:] = (R[hit, c:] - np.outer(R[hit, c], R[r, c:])) % p
        piv.append(c)
        r += 1
    return R, piv


def rank_mod(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M, p: int) -> np.ndarray:
    """Basis (as rows) of {x : M x = 0} over F_p."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(M, p)
    free = [c for c in range(cols) if c not in piv]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, c in enumerate(piv):
            out[k, c] = (-R[i, f]) % p
    return out


def solve_mod(A, b, p: int):
    """Some x with A x = b mod p, or None."""
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    aug = np.concatenate([A, b.reshape(A.shape[0], -1)], axis=1)
    R, piv = rref(aug, p)
    n = A.shape[1]
    if any(c >= n for c in piv):
        return None
    x = np.zeros((n,) + b.shape[1:], dtype=np.int64).reshape(n, -1)
    for i, c in enumerate(piv):
        x[c] = R[i, n:]
    return x.reshape((n,) + b.shape[1:])


def _independent_rows(vecs, p: int) -> list:
    """Indices of a maximal independent subset, greedily in order.

    The pivot columns of rref(vecs^T) are exactly the greedy choice.
    """
    vecs = np.asarray(vecs)
    if vecs.shape[0] == 0:
        return []
    return list(rref(vecs.T, p)[1])


def _exact_float(mod: int, n: int) -> bool:
    """Whether n-term sums of products of residues mod `mod` are exact in float64."""
    return (mod - 1) ** 2 * max(n, 1) < 1 << 52


def _matmul_mod(x, y, mod: int) -> np.ndarray:
    """(x @ y) mod `mod` for integer stacks; float64 BLAS when that is exact."""
    if _exact_float(mod, x.shape[-1]):
        return np.fmod(np.matmul(x.astype(np.float64), y.astype(np.float64)), mod).astype(np.int64)
    return (x.astype(object) @ y.astype(object)) % mod


def _matpow_mod(x: np.ndarray, k: int, mod: int) -> np.ndarray:
    """x^k mod `mod` for a matrix or a stack of matrices."""
    n = x.shape[-1]
    if not _exact_float(mod, n):
        out = np.broadcast_to(np.eye(n, dtype=object), x.shape).copy()
        base = x.astype(object) % mod
        while k:
            if k & 1:
                out = (out @ base) % mod
            base = (base @ base) % mod
            k >>= 1
        return out
    out = None
    base = np.fmod(x.astype(np.float64), mod)
    while k:
        if k & 1:
            out = base if out is None else np.fmod(out @ base, mod)
        k >>= 1
        if k:
            base = np.fmod(base @ base, mod)
    if out is None:
        return np.broadcast_to(np.eye(n, dtype=np.int64), x.shape).copy()
    return out.astype(np.int64)


class _Coordinates:
    """Solve B c = x mod p repeatedly for a fixed B of full column rank."""

    def __init__(self, B, p: int):
        B = np.asarray(B, dtype=np.int64) % p
        self.B, self.p = B, p
        d = B.shape[1]
        self.rows = _independent_rows(B, p)
        if len(self.rows) != d:
            raise ValueError("columns are not independent")
        R, _ = rref(np.concatenate([B[self.rows], np.eye(d, dtype=np.int64)], axis=1), p)
        self.inv = R[:, d:]

    def __call__(self, x):
        x = np.asarray(x, dtype=np.int64).ravel() % self.p
        c = (self.inv @ x[self.rows]) % self.p
        if ((self.B @ c - x) % self.p).any():
            return None
        return c


class MatAlgebra:
    """The F_p-span of a list of n x n matrices, assumed closed under products.

    ``one`` is the unit of the algebra (the identity matrix for endomorphism
    algebras, an idempotent e for corner algebras eAe).
    """

    def __init__(self, mats, p: int, one=None):
        self.p = p
        mats = [np.asarray(m, dtype=np.int64) % p for m in mats]
        if not mats:
            raise ValueError("empty spanning set")
        self.n = mats[0].shape[0]
        flat = np.array([m.ravel() for m in mats])
        keep = _independent_rows(flat, p)
        # positions (in the spanning list) of the chosen basis
        self.keep = keep
        self.basis = np.array([mats[i] for i in keep]).reshape(len(keep), self.n, self.n) if keep else np.zeros((0, self.n, self.n), dtype=np.int64)
        self.one = np.eye(self.n, dtype=np.int64) if one is None else np.asarray(one, dtype=np.int64) % p
        self._rad = None
        self._quot = None
        self._coords = None

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def coords(self, x) -> np.ndarray | None:
        """Coefficients of x in the basis, or None if x is outside the span."""
        if self._coords is None:
            self._coords = _Coordinates(self.basis.reshape(self.dim, -1).T, self.p)
        return self._coords(x)

    def elem(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=np.int64)
        return np.tensordot(c, self.basis, axes=1) % self.p

    def mul(self, x, y) -> np.ndarray:
        return (x @ y) % self.p

    def structure_constants(self) -> np.ndarray:
        """T[i, j] = coordinates of basis_i basis_j."""
        d = self.dim
        T = np.zeros((d, d, d), dtype=np.int64)
        A = self.basis.reshape(d, -1).T
        prods = _matmul_mod(self.basis[:, None], self.basis[None], self.p)
        rhs = prods.reshape(d * d, -1).T
        sol = solve_mod(A, rhs, self.p)
        if sol is None:
            raise ValueError("spanning set is not closed under multiplication")
        T[:] = sol.T.reshape(d, d, d)
        return T

    # -- radical -----------------------------------------------------------
    def radical(self) -> np.ndarray:
        """Basis matrices of the Jacobson radical.

        Iterated trace-form kernels valid in characteristic p: starting from
        I = A, keep a in I with g_i(ab) = 0 for all b in A, where
        g_i(x) = Tr(x~^(p^i)) / p^i mod p for an integral lift x~, for
        i = 0 .. floor(log_p n).
        """
        if self._rad is not None:
            return self._rad
        p, n = self.p, self.n
        ell = 0
        while p ** (ell + 1) <= n:
            ell += 1
        I = self.basis.copy()
        for i in range(ell + 1):
            if I.shape[0] == 0:
                break
            mod = p ** (i + 1)
            G = np.zeros((I.shape[0], self.dim), dtype=np.int64)
            for lo in range(0, I.shape[0], self._chunk()):
                x = _matmul_mod(I[lo : lo + self._chunk(), None], self.basis[None], p)
                t = np.trace(_matpow_mod(x, p**i, mod), axis1=-2, axis2=-1) % mod
                G[lo : lo + x.shape[0]] = np.asarray((t // p**i) % p, dtype=np.int64)
            # coefficient vectors c with c G = 0
            ker = nullspace(G.T, p)
            I = np.tensordot(ker, I, axes=1) % p if ker.size else np.zeros((0, n, n), dtype=np.int64)
            if I.shape[0]:
                flat = I.reshape(I.shape[0], -1)
                I = I[_independent_rows(flat, p)]
        self._check_nilpotent(I)
        self._rad = I
        return I

    def _chunk(self) -> int:
        """Rows of a batched product dim x n x n kept under ~2^23 entries."""
        return max(1, (1 << 23) // max(1, self.dim * self.n * self.n))

    def _check_nilpotent(self, J):
        if J.shape[0] == 0:
            return
        # J^k is spanned by products; its span must shrink to 0
        span = J
        for _ in range(self.n + 1):
            found = np.zeros((0, self.n, self.n), dtype=np.int64)
            for lo in range(0, span.shape[0], self._chunk()):
                prods = _matmul_mod(span[lo : lo + self._chunk(), None], J[None], self.p)
                prods = np.concatenate([found, prods.reshape(-1, self.n, self.n)])
                flat = prods.reshape(prods.shape[0], -1)
                found = prods[_independent_rows(flat, self.p)] if flat.any() else found[:0]
            if not found.shape[0]:
                return
            span = found
        raise ArithmeticError("computed radical is not nilpotent")  # pragma: no cover

    # -- semisimple quotient ----------------------------------------------------
    def _quotient(self):
        """Complement basis C of J in A and a projector onto C-coordinates."""
        if self._quot is None:
            J = self.radical()
            p = self.p
            flatJ = J.reshape(J.shape[0], self.n * self.n)
            flatA = self.basis.reshape(self.dim, self.n * self.n)
            full = np.vstack([flatJ, flatA]) if J.shape[0] else flatA
            keep = _independent_rows(full, p)
            comp = [i - J.shape[0] for i in keep if i >= J.shape[0]]
            C = self.basis[comp]
            B = np.vstack([flatJ, C.reshape(len(comp), self.n * self.n)])
            self._quot = (C, _Coordinates(B.T, p), J.shape[0])
        return self._quot

    def qdim(self) -> int:
        return self._quotient()[0].shape[0]

    def proj(self, x) -> np.ndarray:
        """Coordinates of x modulo J in the complement basis."""
        C, solve_B, r = self._quotient()
        sol = solve_B(x)
        if sol is None:
            raise ValueError("element outside the algebra")
        return sol[r:]

    def in_radical(self, x) -> bool:
        return not self.proj(x).any()

    def _frobenius_kernel(self, basis) -> np.ndarray:
        """Kernel of z -> z^p - z modulo J on the span of ``basis`` (commutative)."""
        p = self.p
        cols = []
        for z in basis:
            zp = np.linalg.matrix_power(z.astype(object), p) % p
            zp = zp.astype(np.int64)
            cols.append(self.proj((zp - z) % p))
        F = np.array(cols).T  # qdim x len(basis)
        return nullspace(F, p)

    def _is_commutative_mod_J(self, basis) -> bool:
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                if self.proj((basis[i] @ basis[j] - basis[j] @ basis[i]) % self.p).any():
                    return False
        return True

    def center_mod_J(self) -> np.ndarray:
        """Matrices in A whose images span the centre of A/J."""
        C = self._quotient()[0]
        q = C.shape[0]
        if q == 0:
            return C
        rows = []
        for c in C:
            block = np.array([self.proj((x @ c - c @ x) % self.p) for x in C]).T
            rows.append(block)
        # z = sum a_x x commutes with every c:  sum_x a_x [x, c] = 0 mod J
        M = np.vstack(rows)
        ker = nullspace(M, self.p)
        return np.tensordot(ker, C, axes=1) % self.p if ker.size else np.zeros((0, self.n, self.n), dtype=np.int64)

    def is_local(self) -> bool:
        """A/J is a field F_p (endomorphism rings here have residue field F_p)."""
        q = self.qdim()
        if q == 0:
            return False
        C = self._quotient()[0]
        if not self._is_commutative_mod_J(C):
            return False
        return self._frobenius_kernel(C).shape[0] == 1

    # -- idempotents ---------------------------------------------------------------
    def lift_idempotent(self, x) -> np.ndarray:
        """Newton iteration e <- 3e^2 - 2e^3 from an idempotent modulo J."""
        p = self.p
        e = np.asarray(x, dtype=np.int64) % p
        for _ in range(2 * self.n + 4):
            e2 = (e @ e) % p
            if np.array_equal(e2, e):
                return e
            e = (3 * e2 - 2 * (e2 @ e)) % p
        raise ArithmeticError("idempotent lift did not converge")  # pragma: no cover

    def _poly_eval(self, coeffs, x) -> np.ndarray:
        """coeffs highest-degree first, evaluated at x with unit ``one``."""
        p = self.p
        out = np.zeros_like(self.one)
        for c in coeffs:
            out = (out @ x + int(c) * self.one) % p
        return out

    def _min_poly_mod_J(self, x) -> list:
        """Minimal polynomial of x in A/J, highest-degree first, monic."""
        p = self.p
        powers = [self.one % p]
        vecs = [self.proj(powers[0])]
        while True:
            nxt = (powers[-1] @ x) % p
            v = self.proj(nxt)
            M = np.array(vecs).T
            sol = solve_mod(M, v, p)
            if sol is not None:
                # x^k = sum sol_i x^i
                return [1] + [(-int(c)) % p for c in sol[::-1]]
            powers.append(nxt)
            vecs.append(v)

    def _split_by_poly(self, x, f) -> np.ndarray | None:
        """Idempotent from a coprime factorisation of f, evaluated at x."""
        p = self.p
        t = sympy.Symbol("t")
        F = sympy.Poly(f, t, modulus=p)
        _, facs = F.factor_list()
        if len(facs) < 2:
            return None
        g, k = facs[0]
        u = g**k
        v = sympy.Poly(sympy.quo(F, u), t, modulus=p)
        s, w, h = sympy.gcdex(u, v)
        # s u + w v = 1; w(x) v(x) is 1 on the u-primary part and 0 elsewhere
        ev = w * v
        coeffs = [int(c) % p for c in ev.all_coeffs()]
        return self._poly_eval(coeffs, x)

    def _split_central(self, Z) -> np.ndarray | None:
        ker = self._frobenius_kernel(Z)
        if ker.shape[0] <= 1:
            return None
        for vec in ker:
            z = np.tensordot(vec, Z, axes=1) % self.p
            f = self._min_poly_mod_J(z)
            if len(f) > 2:
                e = self._split_by_poly(z, f)
                if e is not None:
                    return e
        return None  # pragma: no cover

    def idempotent(self, seed: int = 0, trials: int = 200) -> np.ndarray | None:
        """A nontrivial idempotent of A, or None if A is local.

        Raises Indeterminate if A is not local but the bounded random search
        did not produce a splitting element.
        """
        if self.is_local() or self.qdim() == 0:
            return None
        p = self.p
        C = self._quotient()[0]
        Z = self.center_mod_J()
        e = self._split_central(Z) if Z.shape[0] else None
        if e is None:
            rng = np.random.default_rng(seed)
            for _ in range(trials):
                x = np.tensordot(rng.integers(0, p, C.shape[0]), C, axes=1) % p
                f = self._min_poly_mod_J(x)
                if len(f) <= 2:
                    continue
                e = self._split_by_poly(x, f)
                if e is not None:
                    break
            else:
                raise Indeterminate("no splitting element found for a non-local algebra")
        e = self.lift_idempotent(e)
        if not self.proj(e).any() or not self.proj((self.one - e) % p).any():
            raise ArithmeticError("idempotent is trivial modulo the radical")  # pragma: no cover
        return e

    def primitive_idempotents(self, seed: int = 0) -> list:
        """Orthogonal primitive idempotents summing to ``one``."""
        out = []
        stack = [self.one % self.p]
        while stack:
            f = stack.pop()
            sub = self.corner(f)
            e = sub.idempotent(seed)
            if e is None:
                out.append(f)
            else:
                stack.append(e)
                stack.append((f - e) % self.p)
        return out

    def corner(self, f) -> "MatAlgebra":
        """The algebra f A f for an idempotent f."""
        mats = [(f @ b @ f) % self.p for b in self.basis]
        mats = [m for m in mats if m.any()] or [np.zeros_like(f)]
        return MatAlgebra(mats, self.p, one=f)
