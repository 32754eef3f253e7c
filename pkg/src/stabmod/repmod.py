"""Modules over (O/pi^b)G, homomorphisms, projective covers and syzygies.

A module is free over O_b = O/pi^b of some rank, with G acting on column
vectors by one invertible matrix per group generator.  ``trust`` records how
many pi-adic digits of those matrices are certified; it only drops below
``b`` when a construction has to divide by pi (torsion syzygies, splitting
lattices along approximate idempotents).
"""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .dvr import RingSpec
from .errors import PrecisionError
from .fdalg import MatAlgebra, rank_mod
from .groups import GroupTable
from .linalg import Mat, block_diag, hstack, inverse, kron_left, kron_right, right_kernel, smith, vstack

__all__ = [
    "GModule",
    "GMap",
    "HomData",
    "module_from_mats",
    "module_regular",
    "module_trivial",
    "module_zero",
    "jordan_block",
    "reduce",
    "dual",
    "restrict",
    "direct_sum",
    "hom_space",
    "projective_cover",
    "head_classes",
    "pim_modules",
    "simple_modules",
    "syzygy",
    "cosyzygy",
    "syzygy_b",
    "cosyzygy_b",
    "maranda_threshold",
    "nu_group",
    "content_key",
    "ContentCache",
]


@dataclass(frozen=True, eq=False)
class GModule:
    ring: RingSpec  # ambient O_N
    group: GroupTable
    b: int
    rho: tuple  # one Mat over ring.trunc(trust) per group generator
    trust: int
    name: str = field(default="", compare=False)

    def __post_init__(self):
        N = self.ring.N
        if not (1 <= self.trust <= self.b <= N):
            raise ValueError(f"need 1 <= trust ({self.trust}) <= b ({self.b}) <= N ({N})")
        if len(self.rho) != len(self.group.gens):
            raise ValueError("one matrix per group generator required")
        w = self.wring
        for m in self.rho:
            if m.ring != w or m.rows != m.cols or m.rows != self.rank_hint:
                raise ValueError("representation matrices have inconsistent ring or shape")

    @property
    def rank_hint(self) -> int:
        return self.rho[0].rows if self.rho else 0

    @property
    def rank(self) -> int:
        return self.rank_hint

    @property
    def is_lattice(self) -> bool:
        return self.b == self.ring.N

    @property
    def wring(self) -> RingSpec:
        """The ring O/pi^trust in which the matrices are meaningful."""
        return self.ring.trunc(self.trust)

    @cached_property
    def act(self) -> list:
        """Matrices of all group elements, indexed like the group table."""
        G = self.group
        w = self.wring
        out = [None] * G.n
        for a, path in enumerate(G.words()):
            m = Mat.eye(w, self.rank)
            for k in path:
                m = m @ self.rho[k]
            out[a] = m
        return out

    def verify(self) -> bool:
        """Every relation of the group table holds modulo pi^trust."""
        G = self.group
        act = self.act
        for a in range(G.n):
            for k, s in enumerate(G.gens):
                if not (act[a] @ self.rho[k]) == act[int(G.mul[a, s])]:
                    return False
        return True

    def elem_action(self, y) -> Mat:
        """Matrix of a group-ring element given as an (e, |G|) coefficient array."""
        w = self.wring
        y = w.canon(np.asarray(y))
        stack = np.stack([m.a for m in self.act], axis=1)  # (e, n, r, r)
        out = w.zeros((self.rank, self.rank))
        for g in range(self.group.n):
            if y[:, g].any():
                out = w.add(out, w.scale(y[:, g], stack[:, g]))
        return Mat(w, out)

    def reduced(self) -> list:
        """Generator matrices mod pi as F_p integer arrays."""
        return [np.array(m.a[0] % self.ring.p, dtype=np.int64) for m in self.rho]

    def with_name(self, name: str) -> "GModule":
        return GModule(self.ring, self.group, self.b, self.rho, self.trust, name)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "b": self.b,
            "trust": self.trust,
            "rho": [m.to_coeffs() for m in self.rho],
        }

    def __repr__(self):
        kind = "lattice" if self.is_lattice else f"O/pi^{self.b}"
        return f"GModule({self.name or '?'}, {kind}, rank={self.rank}, trust={self.trust})"


@dataclass(frozen=True, eq=False)
class GMap:
    src: GModule
    dst: GModule
    F: Mat  # dst.rank x src.rank

    def intertwines(self) -> bool:
        w = self.F.ring
        for A, B in zip(self.dst.rho, self.src.rho):
            if not (A.reduce(w.N) @ self.F) == (self.F @ B.reduce(w.N)):
                return False
        return True


@dataclass(frozen=True, eq=False)
class HomData:
    """Generators of Hom_{O_b G}(M, N) with the order exponent of each.

    ``prec`` is the pi-adic precision to which the generators are exact.
    A generator of exponent ``ring.N`` (lattice case) is free.
    """

    src: GModule
    dst: GModule
    basis: list
    factor_exponents: list
    prec: int

    @property
    def ring(self) -> RingSpec:
        return self.src.ring.trunc(self.prec)

    def stacked(self) -> Mat:
        """Generators as rows of row-major vectorised matrices."""
        w = self.ring
        K = self.src.rank * self.dst.rank
        if not self.basis:
            return Mat(w, w.zeros((0, K)))
        return Mat(w, np.stack([f.F.a.reshape(w.e, K) for f in self.basis], axis=1))

    def from_vec(self, v) -> GMap:
        w = self.ring
        F = Mat(w, np.asarray(v).reshape(w.e, self.dst.rank, self.src.rank))
        return GMap(self.src, self.dst, F)


# -- constructors ----------------------------------------------------------------------

def nu_group(ring: RingSpec, group: GroupTable) -> int:
    """pi-adic valuation of |G|."""
    return ring.e * _vp(group.n, ring.p)


def _vp(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def maranda_threshold(ring: RingSpec, group: GroupTable) -> int:
    """Digits needed to decide indecomposability of lattices: 2 nu(|G|) + 1."""
    return 2 * nu_group(ring, group) + 1


def module_from_mats(ring, group, b, mats, trust=None, name="", check=True) -> GModule:
    trust = b if trust is None else trust
    w = ring.trunc(trust)
    rho = []
    for m in mats:
        if isinstance(m, Mat):
            rho.append(Mat(w, w.canon(m.a)))
        else:
            rho.append(Mat.from_coeffs(w, m))
    M = GModule(ring, group, b, tuple(rho), trust, name)
    if check and not M.verify():
        raise ValueError("matrices do not satisfy the group relations")
    return M


def module_zero(ring, group, b=None, trust=None) -> GModule:
    b = ring.N if b is None else b
    trust = b if trust is None else trust
    w = ring.trunc(trust)
    return GModule(ring, group, b, tuple(Mat.zeros(w, 0, 0) for _ in group.gens), trust, "0")


def _left_regular(group: GroupTable, g: int) -> np.ndarray:
    n = group.n
    L = np.zeros((n, n), dtype=np.int64)
    L[group.mul[g], np.arange(n)] = 1
    return L


def _right_regular(group: GroupTable, g: int) -> np.ndarray:
    n = group.n
    R = np.zeros((n, n), dtype=np.int64)
    R[group.mul[:, g], np.arange(n)] = 1
    return R


def module_regular(ring, group, b=None) -> GModule:
    """The free module of rank one, G permuting the basis {h} by h -> g h."""
    b = ring.N if b is None else b
    mats = [Mat.from_ints(ring.trunc(b), _left_regular(group, s)) for s in group.gens]
    return GModule(ring, group, b, tuple(mats), b, "regular")


def module_trivial(ring, group, b=None) -> GModule:
    b = ring.N if b is None else b
    w = ring.trunc(b)
    return GModule(ring, group, b, tuple(Mat.eye(w, 1) for _ in group.gens), b, "trivial")


def jordan_block(ring, group, length: int, b: int = 1) -> GModule:
    """For cyclic G = <g>: g acts by a single unipotent Jordan block."""
    if len(group.gens) != 1:
        raise ValueError("Jordan block modules need a cyclic group with one generator")
    w = ring.trunc(b)
    m = np.eye(length, dtype=np.int64) + np.eye(length, k=1, dtype=np.int64)
    return module_from_mats(ring, group, b, [Mat.from_ints(w, m)], name=f"J{length}")


# -- basic functors ------------------------------------------------------------------------

def reduce(M: GModule, b: int) -> GModule:
    """M / pi^b M as a module over O_b."""
    if b > M.trust:
        raise PrecisionError(f"cannot reduce to pi^{b}: only {M.trust} digits are trusted")
    if b == M.b and b == M.trust:
        return M
    w = M.ring.trunc(b)
    return GModule(M.ring, M.group, b, tuple(m.reduce(b) for m in M.rho), b, M.name and f"{M.name}_{b}")


def dual(M: GModule) -> GModule:
    """Hom_{O_b}(M, O_b) with g acting by the transpose of rho(g^-1)."""
    G = M.group
    rho = tuple(M.act[G.inv[s]].T for s in G.gens)
    return GModule(M.ring, M.group, M.b, rho, M.trust, M.name and f"{M.name}*")


def restrict(M: GModule, elems) -> GModule:
    """Restriction to the subgroup generated by ``elems`` (indices in M.group)."""
    H = M.group.subgroup(elems)
    rho = tuple(M.act[H.parent_index[s]] for s in H.gens)
    return GModule(M.ring, H, M.b, rho, M.trust, M.name and f"{M.name}|H")


def direct_sum(*mods: GModule) -> GModule:
    mods = [m for m in mods]
    if not mods:
        raise ValueError("empty direct sum")
    M0 = mods[0]
    if any(m.b != M0.b or m.group is not M0.group or m.ring != M0.ring for m in mods):
        raise ValueError("summands must share ring, group and b")
    t = min(m.trust for m in mods)
    w = M0.ring.trunc(t)
    rho = tuple(
        block_diag([m.rho[k].reduce(t) for m in mods], w) for k in range(len(M0.group.gens))
    )
    name = "+".join(m.name or "?" for m in mods)
    return GModule(M0.ring, M0.group, M0.b, rho, t, name)


# -- homomorphisms ---------------------------------------------------------------------------

def _intertwiner_system(M: GModule, N: GModule, w: RingSpec) -> Mat:
    """L with L vec(F) = 0 iff rho_N(g) F = F rho_M(g) for every generator (row-major vec)."""
    rM, rN = M.rank, N.rank
    blocks = []
    for A, B in zip(N.rho, M.rho):
        A = A.reduce(w.N)
        B = B.reduce(w.N)
        blocks.append(kron_left(A, rM) - kron_right(rN, B.T))
    return vstack(blocks, ring=w, cols=rM * rN)


def hom_working_precision(M: GModule, N: GModule) -> int:
    if M.ring != N.ring or M.group is not N.group:
        raise ValueError("modules over different rings or groups")
    if not M.is_lattice and N.is_lattice:
        return 0  # torsion -> lattice: Hom is zero
    if M.is_lattice and N.is_lattice:
        return min(M.trust, N.trust)
    if M.is_lattice:
        if M.trust < N.b:
            raise PrecisionError("lattice source is not trusted to the target's precision")
        return N.trust
    if M.b != N.b:
        raise ValueError("torsion modules over different O_b are not supported")
    return min(M.trust, N.trust)


def content_key(M: GModule) -> tuple:
    """Hashable key determined by the ring, group, b, trust and matrices of M."""
    r = M.ring
    return (r.p, r.e, r.N, id(M.group), M.b, M.trust, M.rank, tuple(m.a.tobytes() for m in M.rho))


class ContentCache:
    """Small LRU keyed by content_key tuples.

    Values keep a reference to the group so that its id, part of the key,
    cannot be reused while the entry is alive.
    """

    def __init__(self, size: int = 128):
        self.size = size
        self.data = OrderedDict()

    def get(self, key):
        hit = self.data.get(key)
        if hit is None:
            return None
        self.data.move_to_end(key)
        return hit[1]

    def put(self, key, group, value) -> None:
        self.data[key] = (group, value)
        self.data.move_to_end(key)
        while len(self.data) > self.size:
            self.data.popitem(last=False)


_HOM_CACHE = ContentCache()


def hom_space(M: GModule, N: GModule) -> HomData:
    """Hom_{OG}(M, N), memoised on the content of M and N."""
    key = (content_key(M), content_key(N))
    hd = _HOM_CACHE.get(key)
    if hd is None:
        hd = _hom_space(M, N)
        _HOM_CACHE.put(key, M.group, hd)
    if hd.src is M and hd.dst is N:
        return hd
    return HomData(M, N, [GMap(M, N, f.F) for f in hd.basis], list(hd.factor_exponents), hd.prec)


def _hom_space(M: GModule, N: GModule) -> HomData:
    """Hom_{OG}(M, N) as a finite O-module with a minimal generating set.

    Between lattices the space is computed over O_w, w the smaller trust;
    generators with a finite exponent d <= nu(|G|) are artefacts of the
    truncation and are discarded, and the free ones are then exact modulo
    pi^(w - max d).
    """
    w_int = hom_working_precision(M, N)
    if w_int == 0 or M.rank == 0 or N.rank == 0:
        prec = max(w_int, 1)
        return HomData(M, N, [], [], prec)
    w = M.ring.trunc(w_int)
    L = _intertwiner_system(M, N, w)
    sf = smith(L, left=False, inverses=False)
    cols, orders = right_kernel(L, sf)
    if M.is_lattice and N.is_lattice:
        finite = [x for x in sf.d if 0 < x < w_int]
        dmax = max(finite, default=0)
        prec = w_int - dmax
        if prec < 1:
            raise PrecisionError("lattice Hom space is not determined at this precision")
        wp = M.ring.trunc(prec)
        keep = [j for j, d in enumerate(orders) if d == w_int]
        basis = [
            GMap(M, N, Mat(wp, wp.canon(cols.a[:, :, j].reshape(w.e, N.rank, M.rank))))
            for j in keep
        ]
        return HomData(M, N, basis, [M.ring.N] * len(keep), prec)
    basis = [GMap(M, N, Mat(w, cols.a[:, :, j].reshape(w.e, N.rank, M.rank))) for j in range(cols.cols)]
    return HomData(M, N, basis, list(orders), w_int)


# -- group algebra data ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _kg_data(p: int, group: GroupTable):
    """Radical of kG and one primitive idempotent per isomorphism class of PIMs."""
    n = group.n
    A = MatAlgebra([_left_regular(group, g) for g in range(n)], p)
    J = A.radical()
    rad_vecs = np.array([j[:, group.id] for j in J], dtype=np.int64).reshape(len(J), n)
    prims = A.primitive_idempotents()
    reps = []
    for e in prims:
        if not any(_same_pim(A, e, f) for f in reps):
            reps.append(e)
    # order by (dimension of P, then vector) so the choice is deterministic
    reps.sort(key=lambda e: (rank_mod(e, p), tuple(e[:, group.id])))
    idems = [np.array(e[:, group.id], dtype=np.int64) for e in reps]
    return rad_vecs, idems


def _same_pim(A: MatAlgebra, e, f) -> bool:
    """A e = A f iff e A f A e is not inside the radical."""
    p = A.p
    left = [(e @ b @ f) % p for b in A.basis]
    right = [(f @ b @ e) % p for b in A.basis]
    for x in left:
        if not x.any():
            continue
        for y in right:
            if y.any() and not A.in_radical((x @ y) % p):
                return True
    return False


def _group_ring_matrix(group: GroupTable, w: RingSpec, y, side: str) -> Mat:
    """Left or right multiplication by the group-ring element y on O_w G."""
    n = group.n
    out = w.zeros((n, n))
    for g in range(n):
        if y[:, g].any():
            P = _left_regular(group, g) if side == "left" else _right_regular(group, g)
            out = w.add(out, w.scale(y[:, g], w.from_ints(P)))
    return Mat(w, out)


@lru_cache(maxsize=None)
def _pims(ring: RingSpec, group: GroupTable):
    """For each PIM class: (idempotent over O_N, basis Y of O G e as columns, rho)."""
    _, idems = _kg_data(ring.p, group)
    n = group.n
    out = []
    for e0 in idems:
        y = ring.zeros(n)
        y[0] = e0
        E = _group_ring_matrix(group, ring, y, "left")
        for _ in range(2 * ring.N.bit_length() + 4):
            E2 = E @ E
            if E2 == E:
                break
            E = E2.scale(3) - (E2 @ E).scale(2)
        else:  # pragma: no cover
            raise ArithmeticError("idempotent lift did not converge")
        e_vec = E.a[:, :, group.id]
        R = _group_ring_matrix(group, ring, e_vec, "right")
        sf = smith(R)
        r = sf.rank
        Y = sf.Uinv.sub(slice(None), slice(0, r))
        Ur = sf.U.sub(slice(0, r), slice(None))
        rho = tuple(Ur @ Mat.from_ints(ring, _left_regular(group, s)) @ Y for s in group.gens)
        out.append((e_vec, Y, rho))
    return out


def pim_modules(ring: RingSpec, group: GroupTable, b: int | None = None) -> list:
    """One projective indecomposable module per class, over O_b."""
    b = ring.N if b is None else b
    out = []
    for i, (_, _, rho) in enumerate(_pims(ring, group)):
        M = GModule(ring, group, ring.N, rho, ring.N, f"P{i}")
        out.append(reduce(M, b) if b < ring.N else M)
    return out


def _span_rank(vecs, p) -> int:
    return rank_mod(np.array(vecs), p) if len(vecs) else 0


def _cover_choice(M: GModule) -> list:
    """Greedy choice of head generators: list of (PIM class, vector v = e v in M)."""
    ring, G = M.ring, M.group
    p = ring.p
    w = M.wring
    rad_vecs, idems = _kg_data(p, G)
    pims = _pims(ring, G)
    r = M.rank
    act_bar = [np.array(m.a[0] % p, dtype=np.int64) for m in M.act]

    def elem_bar(y):
        out = np.zeros((r, r), dtype=np.int64)
        for g in range(G.n):
            if y[g] % p:
                out += int(y[g]) * act_bar[g]
        return out % p

    # W starts as rad(M/pi M) and grows by the submodules generated so far
    W = []
    for j in rad_vecs:
        W.extend(list(elem_bar(j).T))
    W = [v for v in W if v.any()]
    chosen = []
    cur = _span_rank(W, p)
    for i, e in enumerate(idems):
        Ebar = elem_bar(e)
        E_w = M.elem_action(w.canon(pims[i][0]))
        for x in range(r):
            if cur == r:
                break
            v = Ebar[:, x]
            if _span_rank(W + [v], p) == cur:
                continue
            W = W + [(ab @ v) % p for ab in act_bar]
            cur = _span_rank(W, p)
            chosen.append((i, E_w.sub(slice(None), [x])))
    if cur != r:  # pragma: no cover
        raise ArithmeticError("projective cover construction failed to reach the whole module")
    return chosen


def head_classes(M: GModule) -> list:
    """PIM class index of each summand of the projective cover (sorted)."""
    if M.rank == 0:
        return []
    return sorted(i for i, _ in _cover_choice(M))


def projective_cover(M: GModule, trust: int | None = None):
    """A projective cover P -> M, returned as (P, cover matrix over O_trust(M)).

    P is a direct sum of PIMs, one for each simple summand of the head of
    M mod pi.  ``trust`` sets the precision of P itself (default M.trust);
    P is exact to any precision, so callers may ask for more.
    """
    ring, G = M.ring, M.group
    w = M.wring
    Pt = M.trust if trust is None else trust
    if M.rank == 0:
        return module_zero(ring, G, M.b if not M.is_lattice else ring.N, Pt), Mat.zeros(w, 0, 0)
    pims = _pims(ring, G)
    parts, cols = [], []
    for i, v in _cover_choice(M):
        _, Y, rho = pims[i]
        orbit = hstack([m @ v for m in M.act])  # column g is g.v
        cols.append(orbit @ Y.reduce(w.N))
        parts.append(GModule(ring, G, ring.N, rho, ring.N, f"P{i}"))
    P = direct_sum(*parts)
    if Pt < ring.N:
        b = ring.N if M.is_lattice else Pt
        P = GModule(ring, G, b, tuple(m.reduce(Pt) for m in P.rho), Pt, P.name)
    return P, hstack(cols)


def _kernel_of_surjection(P: GModule, C: Mat) -> tuple:
    """Action on the kernel of a split surjection of free modules (ring of C)."""
    w = C.ring
    sf = smith(C)
    rX = C.rows
    if any(d != 0 for d in sf.d[:rX]):
        raise ArithmeticError("cover map is not surjective")
    V, Vi = sf.V, sf.Vinv
    k = P.rank - rX
    idx = slice(rX, P.rank)
    rho = tuple((Vi @ m.reduce(w.N) @ V).sub(idx, idx) for m in P.rho)
    if k == 0:
        rho = tuple(Mat.zeros(w, 0, 0) for _ in P.rho)
    return rho


def _syzygy_data(M: GModule):
    """(Omega M before stripping, P, cover matrix, inclusion Omega M -> P as a matrix)."""
    ring, G = M.ring, M.group
    if M.rank == 0:
        Z = module_zero(ring, G, ring.N if M.is_lattice else M.b, M.trust if M.is_lattice else M.b)
        return Z, Z, Mat.zeros(Z.wring, 0, 0), Mat.zeros(Z.wring, 0, 0)
    if M.is_lattice:
        P, C = projective_cover(M)
        rX, rP = C.rows, C.cols
        sf = smith(C)
        if any(d != 0 for d in sf.d[:rX]):
            raise ArithmeticError("cover map is not surjective")
        idx = slice(rX, rP)
        rho = tuple((sf.Vinv @ m @ sf.V).sub(idx, idx) for m in P.rho)
        j = sf.V.sub(slice(None), idx)
        L = GModule(ring, G, ring.N, rho, M.trust, f"Omega({M.name})")
        return L, P, C, j
    # torsion module over O_b: the kernel inside a lattice cover
    b = M.b
    N = ring.N
    new_trust = N - b
    if new_trust < maranda_threshold(ring, G):
        raise PrecisionError(
            f"Heller lattice of an O/pi^{b}-module keeps {new_trust} digits; "
            f"need {maranda_threshold(ring, G)} (raise m)"
        )
    P, C = projective_cover(M, trust=N)
    sf = smith(C)  # over O_b
    rX = C.rows
    if any(d != 0 for d in sf.d[:rX]):
        raise ArithmeticError("cover map is not surjective")
    V = sf.V.lift(ring)
    Vi = inverse(V)
    rP = P.rank
    top = slice(0, rX)
    bot = slice(rX, rP)
    out = []
    for m in P.rho:
        a = (Vi @ m @ V).a.copy()
        blk = a[:, top, bot]
        if (ring.valuation(blk) < b).any():
            raise ArithmeticError("kernel is not invariant; cover map is not a module map")
        a[:, top, bot] = ring.div_pi(blk, b)
        a[:, bot, top] = ring.shift(a[:, bot, top], b)
        out.append(Mat(ring, a).reduce(new_trust))
    # kernel basis: V diag(pi^b, .., 1, ..)
    ja = V.a.copy()
    ja[:, :, top] = ring.shift(ja[:, :, top], b)
    j = Mat(ring, ja).reduce(new_trust)
    L = GModule(ring, G, N, tuple(out), new_trust, f"Omega({M.name})")
    P = GModule(ring, G, N, tuple(m.reduce(new_trust) for m in P.rho), new_trust, P.name)
    return L, P, C, j


def _syzygy_raw(M: GModule) -> GModule:
    """Kernel of the projective cover, before any projective summands are removed."""
    return _syzygy_data(M)[0]


def _syzygy_b_raw(M: GModule) -> GModule:
    """Kernel of the projective cover inside the category of O_b G-modules."""
    if M.rank == 0:
        return M
    P, C = projective_cover(M)
    rho = _kernel_of_surjection(P, C)
    return GModule(M.ring, M.group, M.b, rho, M.trust, f"Omega_{M.b}({M.name})")


def syzygy(M: GModule, strip: bool = True) -> GModule:
    """The Heller operator: kernel of a projective cover over O.

    For a lattice the result is a lattice with the same trust; for an
    O/pi^b-module it is the Heller lattice, trusted to N - b digits.
    Projective summands are removed unless ``strip`` is False.
    """
    K = _syzygy_raw(M)
    if strip:
        from .stable import strip_projectives

        K = strip_projectives(K)
    return K


def cosyzygy(M: GModule, strip: bool = True) -> GModule:
    """Omega^-1 of a lattice, computed as the dual of the syzygy of the dual."""
    if not M.is_lattice:
        raise ValueError("cosyzygy is defined here for lattices only")
    out = dual(syzygy(dual(M), strip=strip))
    return out.with_name(f"Omega^-1({M.name})")


def syzygy_b(M: GModule, strip: bool = True) -> GModule:
    """Omega inside O_b G-modules (b = M.b)."""
    K = _syzygy_b_raw(M)
    if strip:
        from .stable import strip_projectives

        K = strip_projectives(K)
    return K


def cosyzygy_b(M: GModule, strip: bool = True) -> GModule:
    out = dual(syzygy_b(dual(M), strip=strip))
    return out.with_name(f"Omega_{M.b}^-1({M.name})")


def is_isomorphic(M: GModule, N: GModule, seed: int | None = None):
    """(verdict, witness) with verdict True, False or the string "INDETERMINATE"."""
    from .stable import is_isomorphic as _iso

    return _iso(M, N, seed=seed)


def simple_modules(ring: RingSpec, group: GroupTable) -> list:
    """One simple kG-module per class, as the head of each PIM (b = 1)."""
    p = ring.p
    k = ring.trunc(1)
    rad_vecs, _ = _kg_data(p, group)
    out = []
    for i, P in enumerate(pim_modules(ring, group, 1)):
        r = P.rank
        act_bar = [np.array(m.a[0] % p, dtype=np.int64) for m in P.act]
        cols = []
        for y in rad_vecs:
            E = np.zeros((r, r), dtype=np.int64)
            for g in range(group.n):
                E += int(y[g]) * act_bar[g]
            cols.append(E % p)
        W = Mat.from_ints(k, np.hstack(cols) if cols else np.zeros((r, 0), dtype=np.int64))
        sf = smith(W)
        h = sf.rank
        idx = slice(h, r)
        rho = tuple((sf.U @ m @ sf.Uinv).sub(idx, idx) for m in P.rho)
        out.append(GModule(ring, group, 1, rho, 1, f"S{i}"))
    return out
