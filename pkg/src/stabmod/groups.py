"""Finite groups as explicit multiplication tables."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

import numpy as np

__all__ = [
    "GroupTable",
    "group_cyclic",
    "group_product",
    "group_from_perms",
    "group_from_spec",
    "group_dihedral",
    "group_quaternion",
    "sylow_subgroup",
    "element_order_multiset",
    "is_abelian",
    "exponent_of_group",
]

CLOSURE_BOUND = 10**4


@dataclass(frozen=True, eq=False)
class GroupTable:
    """``mul[a, b]`` is the index of the product a*b."""

    mul: np.ndarray
    gens: tuple
    name: str = "G"
    # index in the ambient group, for subgroups built by ``subgroup``
    parent_index: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        n = self.mul.shape[0]
        if self.mul.shape != (n, n):
            raise ValueError("multiplication table must be square")
        ids = [a for a in range(n) if all(self.mul[a, b] == b for b in range(n))]
        if len(ids) != 1:
            raise ValueError("no unique identity element")
        object.__setattr__(self, "id", ids[0])
        inv = []
        for a in range(n):
            row = np.nonzero(self.mul[a] == ids[0])[0]
            if len(row) != 1 or self.mul[row[0], a] != ids[0]:
                raise ValueError(f"element {a} has no two-sided inverse")
            inv.append(int(row[0]))
        object.__setattr__(self, "inv", tuple(inv))
        self.check_associative()
        if len(self.closure(self.gens)) != n:
            raise ValueError("generators do not generate the group")

    @property
    def n(self) -> int:
        return self.mul.shape[0]

    def __len__(self):
        return self.n

    def check_associative(self, samples: int = 10**5, seed: int = 0):
        m = self.mul
        n = self.n
        if n <= 64:
            left = m[m[:, :, None], np.arange(n)[None, None, :]]  # (ab)c
            right = m[np.arange(n)[:, None, None], m[None, :, :]]  # a(bc)
            ok = np.array_equal(left, right)
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, (3, samples))
            ok = np.array_equal(m[m[a, b], c], m[a, m[b, c]])
        if not ok:
            raise ValueError("multiplication table is not associative")

    def closure(self, elems) -> list:
        """Elements of the subgroup generated by ``elems`` (identity first)."""
        seen = [self.id]
        seen_set = {self.id}
        frontier = [self.id]
        elems = list(elems)
        while frontier:
            nxt = []
            for x in frontier:
                for s in elems:
                    y = int(self.mul[x, s])
                    if y not in seen_set:
                        seen_set.add(y)
                        seen.append(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != self.id:
            x = int(self.mul[x, a])
            k += 1
        return k

    def element_orders(self) -> list:
        return sorted(self.order_of(a) for a in range(self.n))

    def subgroup(self, elems, name: str | None = None) -> "GroupTable":
        """The subgroup generated by ``elems`` as a table of its own.

        ``parent_index`` maps each subgroup index back to this group.
        """
        elems = [int(x) for x in elems]
        members = self.closure(elems)
        pos = {g: i for i, g in enumerate(members)}
        k = len(members)
        mul = np.array([[pos[int(self.mul[a, b])] for b in members] for a in members], dtype=np.int64)
        gens = tuple(pos[g] for g in elems if g != self.id) or ((0,) if k == 1 else ())
        return GroupTable(mul, gens, name or f"<{self.name}:{elems}>", tuple(members))

    def words(self) -> list:
        """For each element, a path (list of generator positions) from the identity.

        Breadth-first over the Cayley graph, so representation matrices can be
        assembled from generator matrices only.
        """
        paths = {self.id: []}
        frontier = [self.id]
        while frontier:
            nxt = []
            for x in frontier:
                for k, s in enumerate(self.gens):
                    y = int(self.mul[x, s])
                    if y not in paths:
                        paths[y] = paths[x] + [k]
                        nxt.append(y)
            frontier = nxt
        return [paths[a] for a in range(self.n)]

    def p_part(self, p: int) -> int:
        n, q = self.n, 1
        while n % p == 0:
            n //= p
            q *= p
        return q


def group_cyclic(n: int) -> GroupTable:
    if n < 1:
        raise ValueError("order must be >= 1")
    mul = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return GroupTable(mul, (1 % n,) if n > 1 else (0,), f"C{n}")


def group_product(A: GroupTable, B: GroupTable) -> GroupTable:
    na, nb = A.n, B.n
    idx = lambda a, b: a * nb + b
    mul = np.empty((na * nb, na * nb), dtype=np.int64)
    for a1, b1, a2, b2 in itertools.product(range(na), range(nb), range(na), range(nb)):
        mul[idx(a1, b1), idx(a2, b2)] = idx(int(A.mul[a1, a2]), int(B.mul[b1, b2]))
    gens = [idx(g, B.id) for g in A.gens if g != A.id] + [idx(A.id, g) for g in B.gens if g != B.id]
    return GroupTable(mul, tuple(gens) or (0,), f"{A.name}x{B.name}")


def _compose(p, q):
    """(p q)(i) = p(q(i)): apply q first."""
    return tuple(p[i] for i in q)


def group_from_perms(perms, degree: int | None = None, bound: int = CLOSURE_BOUND) -> GroupTable:
    """Closure of the given permutations (as image tuples on 0..d-1).

    Permutations may also be given as lists of cycles, e.g. [[0, 1], [2, 3, 4]].
    """
    perms = [list(p) for p in perms]
    if degree is None:
        degree = 0
        for p in perms:
            flat = list(itertools.chain.from_iterable(p)) if p and isinstance(p[0], (list, tuple)) else p
            degree = max([degree] + [x + 1 for x in flat])
    images = []
    for p in perms:
        if p and isinstance(p[0], (list, tuple)):
            img = list(range(degree))
            for cyc in p:
                for i, x in enumerate(cyc):
                    img[x] = cyc[(i + 1) % len(cyc)]
            images.append(tuple(img))
        else:
            if sorted(p) != list(range(degree)):
                raise ValueError(f"{p} is not a permutation of 0..{degree - 1}")
            images.append(tuple(p))
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in images:
                y = _compose(x, s)
                if y not in index:
                    if len(elems) >= bound:
                        raise ValueError(f"closure exceeds bound {bound}")
                    index[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    n = len(elems)
    mul = np.array([[index[_compose(a, b)] for b in elems] for a in elems], dtype=np.int64)
    gens = tuple(index[s] for s in images if s != ident) or (0,)
    return GroupTable(mul, gens, f"Perm{n}")


def group_from_spec(spec) -> GroupTable:
    """Scenario-file group syntax: {"cyclic": n}, {"product": [g1, g2]}, {"perms": [...]}."""
    if isinstance(spec, str):
        return _named(spec)
    if "cyclic" in spec:
        return group_cyclic(int(spec["cyclic"]))
    if "product" in spec:
        a, b = spec["product"]
        return group_product(group_from_spec(a), group_from_spec(b))
    if "perms" in spec:
        return group_from_perms(spec["perms"])
    raise ValueError(f"unknown group spec {spec!r}")


def _named(name: str) -> GroupTable:
    if name.startswith("C") and "x" not in name:
        return group_cyclic(int(name[1:]))
    if "x" in name:
        parts = name.split("x")
        g = _named(parts[0])
        for q in parts[1:]:
            g = group_product(g, _named(q if q.startswith("C") else "C" + q))
        return g
    if name.startswith("D") and name[1:].isdigit():
        return group_dihedral(int(name[1:]))
    if name == "Q8":
        return group_quaternion()
    if name.startswith("S") and name[1:].isdigit():
        d = int(name[1:])
        if d < 2:
            return group_cyclic(1)
        g = group_from_perms([[[0, 1]], [list(range(d))]], degree=d)
        return GroupTable(g.mul, g.gens, name)
    raise ValueError(f"unknown group name {name!r}")


def group_dihedral(order: int) -> GroupTable:
    """Symmetries of a regular (order/2)-gon, as permutations of its vertices."""
    if order < 4 or order % 2:
        raise ValueError("dihedral groups have even order >= 4")
    n = order // 2
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    g = group_from_perms([rot, ref], degree=n)
    return GroupTable(g.mul, g.gens, f"D{order}")


def group_quaternion() -> GroupTable:
    """Q8 = {+-1, +-i, +-j, +-k}; element 2a + s stands for (sign s) * unit a."""
    # unit products: table[a][b] = (sign, c) with units 1, i, j, k
    table = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ]
    mul = np.empty((8, 8), dtype=np.int64)
    for x in range(8):
        for y in range(8):
            a, s = divmod(x, 2)
            b, t = divmod(y, 2)
            u, c = table[a][b]
            mul[x, y] = 2 * c + ((s + t + u) % 2)
    return GroupTable(mul, (2, 4), "Q8")


def sylow_subgroup(G: GroupTable, p: int) -> list:
    """Element indices of some Sylow p-subgroup (brute force, desk-scale groups)."""
    target = G.p_part(p)
    if target == 1:
        return [G.id]
    pelts = [a for a in range(G.n) if target % G.order_of(a) == 0 and a != G.id]
    best = [G.id]
    # grow greedily; a p-subgroup of maximal order is Sylow
    for a in pelts:
        cand = G.closure(best + [a]) if best != [G.id] else G.closure([a])
        if len(cand) <= target and target % len(cand) == 0 and len(cand) > len(best):
            best = cand
            if len(best) == target:
                return sorted(best)
    for r in (2, 3):
        for combo in itertools.combinations(pelts, r):
            cand = G.closure(list(combo))
            if len(cand) == target:
                return sorted(cand)
    raise ValueError("no Sylow subgroup found")  # pragma: no cover


def element_order_multiset(G: GroupTable) -> list:
    return G.element_orders()


def is_abelian(G: GroupTable) -> bool:
    return bool(np.array_equal(G.mul, G.mul.T))


def exponent_of_group(G: GroupTable) -> int:
    out = 1
    for a in range(G.n):
        k = G.order_of(a)
        out = out * k // gcd(out, k)
    return out
