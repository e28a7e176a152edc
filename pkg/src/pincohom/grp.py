"""Finite groups as multiplication tables.

Elements are the integers ``0 .. order-1`` and ``0`` is always the identity.
Groups built from generators are enumerated breadth-first from the identity,
multiplying on the right by the generators in the order given, so the same
input always produces the same indexing.
"""

from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from . import qmat
from .errors import ClosureExceedsCap, InputError, NotAHomomorphism, NotInvertible, NotNormal, NotOrthogonal

DEFAULT_CAP = 64


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, mul, labels: Sequence[str] | None = None, *, check: bool = True):
        table = np.array(mul, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InputError("multiplication table must be a nonempty square array")
        n = table.shape[0]
        if check:
            _validate_table(table)
        table.setflags(write=False)
        self.mul = table
        self.order = n
        self.identity = 0
        self.table = table.tolist()
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(table == 0)
        inv[rows] = cols
        inv.setflags(write=False)
        self.inverse = inv
        self.inv = inv.tolist()
        self.labels = tuple(labels) if labels is not None else None
        self._key = (n, table.tobytes())

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def prod(self, *elems: int) -> int:
        out = 0
        for x in elems:
            out = self.table[out][x]
        return out

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        out = 0
        for _ in range(k):
            out = self.table[out][g]
        return out

    def conj(self, g: int, h: int) -> int:
        """g h g^-1"""
        t = self.table
        return t[t[g][h]][self.inv[g]]

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1"""
        t, inv = self.table, self.inv
        return t[t[t[a][b]][inv[a]]][inv[b]]

    @functools.cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = self.table[x][g]
                k += 1
            out.append(k)
        return tuple(out)

    def element_order(self, g: int) -> int:
        return self.element_orders[g]

    @functools.cached_property
    def exponent(self) -> int:
        out = 1
        for k in set(self.element_orders):
            out = out * k // np.gcd(out, k)
        return int(out)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def center(self) -> list[int]:
        return [g for g in range(self.order) if np.array_equal(self.mul[g, :], self.mul[:, g])]

    @functools.cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by decreasing element order."""
        gens: list[int] = []
        current = {0}
        ranked = sorted(range(1, self.order), key=lambda g: (-self.element_orders[g], g))
        while len(current) < self.order:
            g = next(x for x in ranked if x not in current)
            gens.append(g)
            current = set(closure(self, gens))
        return tuple(gens)


def _validate_table(table: np.ndarray) -> None:
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise InputError("table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
        raise InputError("element 0 must be the identity")
    srt = np.sort(table, axis=1)
    if not (srt == ar).all() or not (np.sort(table, axis=0) == ar[:, None]).all():
        raise InputError("table is not a Latin square (missing inverses)")
    # (ab)c == a(bc) for all triples
    lhs = table[table[:, :, None], ar[None, None, :]]
    rhs = table[ar[:, None, None], table[None, :, :]]
    if not np.array_equal(lhs, rhs):
        raise InputError("multiplication table is not associative")


def from_table(mul: Sequence[Sequence[int]], labels=None) -> FiniteGroup:
    """Load an explicit table, relabelling so the identity sits at index 0."""
    table = np.array(mul, dtype=np.int64)
    n = table.shape[0] if table.ndim == 2 else 0
    if table.ndim != 2 or table.shape != (n, n) or n == 0:
        raise InputError("multiplication table must be a nonempty square array")
    if table.min() < 0 or table.max() >= n:
        raise InputError("table entries out of range")
    ar = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar)]
    if not ids:
        raise InputError("table has no two-sided identity")
    e = ids[0]
    if e != 0:
        perm = ar.copy()
        perm[0], perm[e] = e, 0
        # perm is an involution: new index i holds old element perm[i]
        table = perm[table[np.ix_(perm, perm)]]
        if labels is not None:
            labels = [labels[int(i)] for i in perm]
    return FiniteGroup(table, labels)


def relabel(G: FiniteGroup, perm: Sequence[int]) -> FiniteGroup:
    """Group isomorphic to G whose element ``i`` is G's element ``perm[i]``.

    ``perm[0]`` must be 0.
    """
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    return FiniteGroup(inv[G.mul[np.ix_(perm, perm)]])


# -- homomorphisms -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if len(self.map) != self.source.order:
            raise NotAHomomorphism("map length differs from source order")
        if self.check and not is_homomorphism(self.source, self.target, self.map):
            raise NotAHomomorphism("map does not respect multiplication")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupHom):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.map == other.map

    def __hash__(self) -> int:
        return hash(self.map)

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self ∘ inner"""
        if inner.target != self.source:
            raise InputError("cannot compose: target/source mismatch")
        return GroupHom(inner.source, self.target, tuple(self.map[x] for x in inner.map), check=False)

    def kernel(self) -> list[int]:
        return [g for g, x in enumerate(self.map) if x == 0]

    def image(self) -> list[int]:
        return sorted(set(self.map))

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order


def is_homomorphism(src: FiniteGroup, tgt: FiniteGroup, m: Sequence[int]) -> bool:
    arr = np.asarray(m, dtype=np.int64)
    if arr.shape != (src.order,) or arr.min() < 0 or arr.max() >= tgt.order:
        return False
    return bool(np.array_equal(arr[src.mul], tgt.mul[arr[:, None], arr[None, :]]))


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(range(G.order)), check=False)


def trivial_hom(src: FiniteGroup, tgt: FiniteGroup) -> GroupHom:
    return GroupHom(src, tgt, (0,) * src.order, check=False)


def _extend(src: FiniteGroup, tgt: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]) -> list[int] | None:
    """Extend gens -> imgs along right multiplication; None on a conflict.

    Unreached elements stay -1. Consistency on every edge x -> x*s makes the
    result multiplicative on the generated subgroup.
    """
    out = [-1] * src.order
    out[0] = 0
    queue = deque([0])
    st, tt = src.table, tgt.table
    while queue:
        x = queue.popleft()
        fx = out[x]
        for s, fs in zip(gens, imgs):
            y = st[x][s]
            fy = tt[fx][fs]
            if out[y] == -1:
                out[y] = fy
                queue.append(y)
            elif out[y] != fy:
                return None
    return out


def hom(src: FiniteGroup, tgt: FiniteGroup, images: dict[int, int] | Sequence[tuple[int, int]]) -> GroupHom:
    """Homomorphism determined by images of a generating set of ``src``."""
    items = list(images.items()) if isinstance(images, dict) else list(images)
    gens = [int(g) for g, _ in items]
    imgs = [int(h) for _, h in items]
    for g, h in zip(gens, imgs):
        if not (0 <= g < src.order and 0 <= h < tgt.order):
            raise InputError("generator or image index out of range")
    m = _extend(src, tgt, gens, imgs)
    if m is None:
        raise NotAHomomorphism("generator images violate a relation")
    if -1 in m:
        raise InputError("given elements do not generate the source group")
    return GroupHom(src, tgt, tuple(m))


def all_homs(src: FiniteGroup, tgt: FiniteGroup) -> list[GroupHom]:
    gens = src.generators
    ords_s, ords_t = src.element_orders, tgt.element_orders
    cands = [[h for h in range(tgt.order) if ords_s[g] % ords_t[h] == 0] for g in gens]
    out = []
    for imgs in itertools.product(*cands):
        m = _extend(src, tgt, gens, imgs)
        if m is not None:
            out.append(GroupHom(src, tgt, tuple(m), check=False))
    return out


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> GroupHom | None:
    """Backtracking search over images of G's generators."""
    if G.order != H.order or sorted(G.element_orders) != sorted(H.element_orders):
        return None
    gens = G.generators
    cands = [[h for h in range(H.order) if H.element_orders[h] == G.element_orders[g]] for g in gens]

    def search(k: int, imgs: list[int]):
        m = _extend(G, H, gens[:k], imgs)
        if m is None:
            return None
        reached = [x for x in m if x != -1]
        if len(reached) != len(set(reached)):
            return None
        if k == len(gens):
            return m
        for c in cands[k]:
            found = search(k + 1, imgs + [c])
            if found is not None:
                return found
        return None

    m = search(0, [])
    return None if m is None else GroupHom(G, H, tuple(m), check=False)


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return find_isomorphism(G, H) is not None


# -- subgroups and quotients -------------------------------------------------


def closure(G: FiniteGroup, gens: Iterable[int]) -> list[int]:
    """Elements of <gens> in breadth-first order from the identity."""
    gens = list(gens)
    seen = {0}
    order = [0]
    queue = deque([0])
    t = G.table
    while queue:
        x = queue.popleft()
        for s in gens:
            y = t[x][s]
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    return order


def _induced(G: FiniteGroup, elems: Sequence[int]) -> FiniteGroup:
    pos = {g: i for i, g in enumerate(elems)}
    t = G.table
    table = [[pos[t[a][b]] for b in elems] for a in elems]
    labels = [G.labels[g] for g in elems] if G.labels else None
    return FiniteGroup(table, labels, check=False)


def subgroup(G: FiniteGroup, gens: Iterable[int]) -> tuple[FiniteGroup, GroupHom]:
    """Subgroup generated by ``gens`` with its inclusion into G."""
    gens = list(gens)
    if any(not 0 <= g < G.order for g in gens):
        raise InputError("generator index out of range")
    elems = closure(G, gens)
    H = _induced(G, elems)
    return H, GroupHom(H, G, tuple(elems), check=False)


def is_normal(G: FiniteGroup, elems: Iterable[int]) -> bool:
    s = set(elems)
    return all(G.conj(g, h) in s for g in G.generators for h in s)


def derived_subgroup(G: FiniteGroup) -> list[int]:
    comms = {G.commutator(a, b) for a in range(G.order) for b in range(G.order)}
    return closure(G, sorted(comms))


def quotient(G: FiniteGroup, normal: Iterable[int]) -> tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup; cosets ordered by least member."""
    N = sorted(set(normal))
    if 0 not in N or not is_normal(G, N) or set(closure(G, N)) != set(N):
        raise NotNormal("not a normal subgroup")
    t = G.table
    coset_of = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if coset_of[g] == -1:
            idx = len(reps)
            reps.append(g)
            for n in N:
                coset_of[t[g][n]] = idx
    table = [[coset_of[t[a][b]] for b in reps] for a in reps]
    Q = FiniteGroup(table, check=False)
    return Q, GroupHom(G, Q, tuple(coset_of), check=False)


def abelianization(G: FiniteGroup) -> tuple[FiniteGroup, GroupHom]:
    return quotient(G, derived_subgroup(G))


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Element (g, h) has index g*|H| + h."""
    m = H.order
    table = (G.mul[:, None, :, None] * m + H.mul[None, :, None, :]).reshape(G.order * m, G.order * m)
    return FiniteGroup(table, check=False)


def product_injections(G: FiniteGroup, H: FiniteGroup, P: FiniteGroup) -> tuple[GroupHom, GroupHom]:
    m = H.order
    return (
        GroupHom(G, P, tuple(g * m for g in range(G.order)), check=False),
        GroupHom(H, P, tuple(range(m)), check=False),
    )


# -- concrete generation -----------------------------------------------------


@dataclass(frozen=True)
class TableSpec:
    mul: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PermSpec:
    degree: int
    gens: tuple[tuple[tuple[int, ...], ...], ...]  # cycles on points 1..degree


@dataclass(frozen=True)
class OrthSpec:
    dim: int
    gens: tuple[qmat.Matrix, ...]


GroupSpec = TableSpec | PermSpec | OrthSpec


def _bfs(identity: Hashable, gens: Sequence, mul: Callable, cap: int) -> list:
    elems = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = mul(x, s)
            if y not in index:
                if len(elems) >= cap:
                    raise ClosureExceedsCap(f"group order exceeds cap {cap}")
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    return elems


def _table_from(elems: list, mul: Callable) -> list[list[int]]:
    index = {x: i for i, x in enumerate(elems)}
    return [[index[mul(a, b)] for b in elems] for a in elems]


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> tuple[int, ...]:
    img = list(range(degree))
    touched = set()
    for cyc in cycles:
        pts = [int(p) - 1 for p in cyc]
        for p in pts:
            if not 0 <= p < degree or p in touched:
                raise InputError(f"invalid cycle {list(cyc)} for degree {degree}")
            touched.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def _perm_mul(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
    # (xy)(p) = x(y(p)), matching matrix composition
    return tuple(x[p] for p in y)


def generate(spec: GroupSpec, cap: int = DEFAULT_CAP) -> tuple[FiniteGroup, list]:
    """Build a group from a spec; returns the group and each element's concrete form."""
    if cap < 1:
        raise InputError("cap must be >= 1")
    if isinstance(spec, TableSpec):
        G = from_table(spec.mul)
        if G.order > cap:
            raise ClosureExceedsCap(f"group order {G.order} exceeds cap {cap}")
        return G, list(range(G.order))
    if isinstance(spec, PermSpec):
        gens = [perm_from_cycles(spec.degree, g) for g in spec.gens]
        ident = tuple(range(spec.degree))
        elems = _bfs(ident, gens, _perm_mul, cap)
        return FiniteGroup(_table_from(elems, _perm_mul), check=False), elems
    if isinstance(spec, OrthSpec):
        for g in spec.gens:
            if len(g) != spec.dim:
                raise InputError("matrix dimension differs from declared dim")
            if qmat.det(g) == 0:
                raise NotInvertible("generator matrix is singular")
            if not qmat.is_orthogonal(g):
                raise NotOrthogonal("generator matrix is not orthogonal")
        elems = _bfs(qmat.identity(spec.dim), list(spec.gens), qmat.matmul, cap)
        return FiniteGroup(_table_from(elems, qmat.matmul), check=False), elems
    raise InputError(f"unknown group spec {spec!r}")


# -- named groups and identification -----------------------------------------


def cyclic(n: int) -> FiniteGroup:
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, check=False)


def elementary_abelian(p: int, rank: int) -> FiniteGroup:
    G = cyclic(1)
    for _ in range(rank):
        G = direct_product(G, cyclic(p))
    return G


def metacyclic(m: int, n: int, r: int) -> FiniteGroup:
    """C_m ⋊ C_n with the generator of C_n acting by x -> x^r; element (a, b) at a*n + b."""
    if pow(r, n, m) != 1 % m:
        raise InputError("r^n must be 1 mod m")
    size = m * n
    table = [[0] * size for _ in range(size)]
    for a, b, c, d in itertools.product(range(m), range(n), range(m), range(n)):
        table[a * n + b][c * n + d] = ((a + pow(r, b, m) * c) % m) * n + (b + d) % n
    return FiniteGroup(table, check=False)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n."""
    return metacyclic(n, 2, -1 % n if n > 1 else 0)


def dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n (Q8 for n = 2); element (a, b) at 2a + b."""
    size = 4 * n
    m = 2 * n
    table = [[0] * size for _ in range(size)]
    for a, b, c, d in itertools.product(range(m), range(2), range(m), range(2)):
        if b == 0:
            res = ((a + c) % m, d)
        elif d == 0:
            res = ((a - c) % m, 1)
        else:
            res = ((a - c + n) % m, 0)
        table[2 * a + b][2 * c + d] = 2 * res[0] + res[1]
    return FiniteGroup(table, check=False)


def quaternion() -> FiniteGroup:
    return dicyclic(2)


def klein() -> FiniteGroup:
    return elementary_abelian(2, 2)


def semidirect(N: FiniteGroup, H: FiniteGroup, action: Callable[[int], Sequence[int]]) -> FiniteGroup:
    """N ⋊ H where ``action(h)`` lists the automorphism of N given by h; (n, h) at n*|H| + h."""
    acts = [list(action(h)) for h in range(H.order)]
    size = N.order * H.order
    table = [[0] * size for _ in range(size)]
    nt, ht, m = N.table, H.table, H.order
    for n1, h1, n2, h2 in itertools.product(range(N.order), range(m), range(N.order), range(m)):
        table[n1 * m + h1][n2 * m + h2] = nt[n1][acts[h1][n2]] * m + ht[h1][h2]
    return FiniteGroup(table)


def permutation_group(degree: int, gens: Sequence[Sequence[Sequence[int]]]) -> FiniteGroup:
    return generate(PermSpec(degree, tuple(tuple(tuple(c) for c in g) for g in gens)), cap=10**6)[0]


def _c2sq_c4() -> FiniteGroup:
    V = klein()  # (x, y) at 2x + y
    swap = [0, 2, 1, 3]
    return semidirect(V, cyclic(4), lambda h: swap if h % 2 else list(range(4)))


def _pauli() -> FiniteGroup:
    P = direct_product(cyclic(4), dihedral(4))
    z = dihedral(4)
    centre = [g for g in z.center() if g != 0][0]
    return quotient(P, closure(P, [2 * 8 + centre]))[0]


@functools.lru_cache(maxsize=None)
def catalog() -> dict[str, FiniteGroup]:
    """Every group of order at most 16, keyed by name."""
    C, D = cyclic, dihedral
    dp = direct_product
    cat = {"C1": C(1)}
    for n in (2, 3, 5, 7, 11, 13):
        cat[f"C{n}"] = C(n)
    cat.update({
        "C4": C(4), "C2xC2": klein(),
        "C6": C(6), "S3": D(3),
        "C8": C(8), "C4xC2": dp(C(4), C(2)), "C2^3": elementary_abelian(2, 3),
        "D4": D(4), "Q8": quaternion(),
        "C9": C(9), "C3xC3": dp(C(3), C(3)),
        "C10": C(10), "D5": D(5),
        "C12": C(12), "C6xC2": dp(C(6), C(2)), "D6": D(6), "Dic3": dicyclic(3),
        "A4": permutation_group(4, [[(1, 2, 3)], [(1, 2), (3, 4)]]),
        "C14": C(14), "D7": D(7),
        "C15": C(15),
        "C16": C(16), "C4xC4": dp(C(4), C(4)), "C2^2:C4": _c2sq_c4(),
        "C4:C4": metacyclic(4, 4, 3), "C8xC2": dp(C(8), C(2)), "M16": metacyclic(8, 2, 5),
        "D8": D(8), "SD16": metacyclic(8, 2, 3), "Q16": dicyclic(4),
        "C4xC2^2": dp(C(4), klein()), "C2xD4": dp(C(2), D(4)), "C2xQ8": dp(C(2), quaternion()),
        "C4oD4": _pauli(), "C2^4": elementary_abelian(2, 4),
    })
    return cat


def invariants(G: FiniteGroup) -> tuple:
    Q, _ = abelianization(G)
    return (G.order, tuple(sorted(G.element_orders)), len(G.center()), tuple(sorted(Q.element_orders)), G.exponent)


@functools.lru_cache(maxsize=None)
def _catalog_invariants() -> list[tuple[tuple, str]]:
    return [(invariants(H), name) for name, H in catalog().items()]


def identify(G: FiniteGroup) -> str:
    """Catalog name of G for order <= 16, otherwise ``"Unknown"``."""
    if G.order > 16:
        return "Unknown"
    inv = invariants(G)
    for cand_inv, name in _catalog_invariants():
        if cand_inv == inv and is_isomorphic(G, catalog()[name]):
            return name
    return "Unknown"
