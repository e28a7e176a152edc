"""Normalized bar-resolution cohomology of finite groups in degrees 1 and 2.

Coefficients are a finite abelian group ``Z/m_1 x ... x Z/m_r`` with trivial
action. Each cyclic factor is treated separately and further split into its
prime-power parts; ``Z/2`` goes through bit-packed GF(2) elimination, every
other ``Z/p^e`` through Smith form over the local ring.

2-cochains are numpy arrays of shape ``(n, n, r)`` and 1-cochains of shape
``(n, r)``, with residues in ``[0, m_k)``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import InputError, MismatchedAmbient, NoSolution, NonF2Coefficients, NotElementaryAbelian
from .grp import FiniteGroup, GroupHom, cyclic, direct_product


@dataclass(frozen=True)
class Coefficients:
    """A = Z/m_1 x ... x Z/m_r with trivial action."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(m) for m in self.orders)
        if not orders or any(m < 2 for m in orders):
            raise InputError("coefficient orders must all be >= 2")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return int(np.prod(self.orders))

    @functools.cached_property
    def group(self) -> FiniteGroup:
        """A as a FiniteGroup; element index is mixed radix, last factor fastest."""
        G = cyclic(self.orders[0])
        for m in self.orders[1:]:
            G = direct_product(G, cyclic(m))
        return G

    def encode(self, residues: Sequence[int]) -> int:
        idx = 0
        for a, m in zip(residues, self.orders):
            idx = idx * m + int(a) % m
        return idx

    def decode(self, index: int) -> tuple[int, ...]:
        out = []
        for m in reversed(self.orders):
            out.append(index % m)
            index //= m
        return tuple(reversed(out))

    def reduce(self, values: np.ndarray) -> np.ndarray:
        return np.mod(values, np.array(self.orders, dtype=np.int64))

    def __str__(self) -> str:
        return " x ".join(f"Z/{m}" for m in self.orders)


Z2 = Coefficients((2,))


def Z(m: int) -> Coefficients:
    return Coefficients((m,))


@dataclass(frozen=True)
class CoeffHom:
    """Homomorphism A -> A' given by an integer matrix acting on residues."""

    source: Coefficients
    target: Coefficients
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        M = np.array(self.matrix, dtype=np.int64).reshape(self.target.rank, self.source.rank)
        for k, m in enumerate(self.source.orders):
            if (M[:, k] * m % np.array(self.target.orders)).any():
                raise InputError("coefficient map is not well defined on the source orders")
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in row) for row in M))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Apply to the trailing residue axis of a cochain array."""
        return self.target.reduce(values @ self.array.T)

    def __call__(self, residues: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(x) for x in self.apply(np.asarray(residues, dtype=np.int64)))

    def as_group_hom(self) -> GroupHom:
        A, B = self.source, self.target
        return GroupHom(A.group, B.group, tuple(B.encode(self(A.decode(i))) for i in range(A.size)))


# -- cochains -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Cochain1:
    group: FiniteGroup
    coeffs: Coefficients
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64).reshape(self.group.order, self.coeffs.rank)
        v = self.coeffs.reduce(v)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __call__(self, g: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.values[g])

    def __add__(self, other: "Cochain1") -> "Cochain1":
        _same_ambient(self, other)
        return Cochain1(self.group, self.coeffs, self.values + other.values)

    def __sub__(self, other: "Cochain1") -> "Cochain1":
        _same_ambient(self, other)
        return Cochain1(self.group, self.coeffs, self.values - other.values)

    def __neg__(self) -> "Cochain1":
        return Cochain1(self.group, self.coeffs, -self.values)

    def __rmul__(self, k: int) -> "Cochain1":
        return Cochain1(self.group, self.coeffs, int(k) * self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain1):
            return NotImplemented
        return self.group == other.group and self.coeffs == other.coeffs and np.array_equal(self.values, other.values)

    __hash__ = None

    def is_normalized(self) -> bool:
        return not self.values[0].any()

    def is_homomorphism(self) -> bool:
        return not d1(self).values.any()

    def table(self) -> list[list[int]]:
        return self.values.tolist()


@dataclass(frozen=True, eq=False)
class Cocycle2:
    """An A-valued 2-cochain on G x G; ``is_valid`` checks the cocycle laws."""

    group: FiniteGroup
    coeffs: Coefficients
    values: np.ndarray

    def __post_init__(self):
        n = self.group.order
        v = np.asarray(self.values, dtype=np.int64).reshape(n, n, self.coeffs.rank)
        v = self.coeffs.reduce(v)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __call__(self, g: int, h: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.values[g, h])

    def __add__(self, other: "Cocycle2") -> "Cocycle2":
        _same_ambient(self, other)
        return Cocycle2(self.group, self.coeffs, self.values + other.values)

    def __sub__(self, other: "Cocycle2") -> "Cocycle2":
        _same_ambient(self, other)
        return Cocycle2(self.group, self.coeffs, self.values - other.values)

    def __neg__(self) -> "Cocycle2":
        return Cocycle2(self.group, self.coeffs, -self.values)

    def __rmul__(self, k: int) -> "Cocycle2":
        return Cocycle2(self.group, self.coeffs, int(k) * self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cocycle2):
            return NotImplemented
        return self.group == other.group and self.coeffs == other.coeffs and np.array_equal(self.values, other.values)

    __hash__ = None

    def is_normalized(self) -> bool:
        return not (self.values[0].any() or self.values[:, 0].any())

    def satisfies_identity(self) -> bool:
        """f(g,h) + f(gh,k) == f(h,k) + f(g,hk) for all triples."""
        f, mul = self.values, self.group.mul
        lhs = f[:, :, None, :] + f[mul[:, :, None], np.arange(len(mul))[None, None, :]]
        rhs = f[None, :, :, :] + f[np.arange(len(mul))[:, None, None], mul[None, :, :]]
        return not self.coeffs.reduce(lhs - rhs).any()

    def is_valid(self) -> bool:
        return self.is_normalized() and self.satisfies_identity()

    def table(self) -> list[list[list[int]]]:
        return self.values.tolist()

    def cls(self) -> "CohomClass":
        return CohomClass(self)


def _same_ambient(x, y) -> None:
    if x.group != y.group or x.coeffs != y.coeffs:
        raise MismatchedAmbient("objects live over different groups or coefficients")


def zero_cochain1(G: FiniteGroup, A: Coefficients) -> Cochain1:
    return Cochain1(G, A, np.zeros((G.order, A.rank), dtype=np.int64))


def zero_cocycle(G: FiniteGroup, A: Coefficients) -> Cocycle2:
    return Cocycle2(G, A, np.zeros((G.order, G.order, A.rank), dtype=np.int64))


def d1(c: Cochain1) -> Cocycle2:
    """(d1 c)(g, h) = c(g) + c(h) - c(gh)."""
    v = c.values
    mul = c.group.mul
    return Cocycle2(c.group, c.coeffs, v[:, None, :] + v[None, :, :] - v[mul])


# -- matrices of the normalized complex -------------------------------------------


def _d1_matrix(G: FiniteGroup) -> np.ndarray:
    """Integer matrix of d1: normalized 1-cochains (n-1) -> 2-cochains ((n-1)^2)."""
    n = G.order
    M = np.zeros(((n - 1) ** 2, max(n - 1, 0)), dtype=np.int64)
    t = G.table
    for a in range(1, n):
        for b in range(1, n):
            row = (a - 1) * (n - 1) + (b - 1)
            M[row, a - 1] += 1
            M[row, b - 1] += 1
            ab = t[a][b]
            if ab:
                M[row, ab - 1] -= 1
    return M


def _d2_terms(G: FiniteGroup, ks: Iterable[int]):
    """Yield the four signed pair indices of each cocycle-identity row."""
    n = G.order
    t = G.table
    ks = list(ks)

    def idx(a, b):
        return (a - 1) * (n - 1) + (b - 1) if a and b else None

    for g in range(1, n):
        for h in range(1, n):
            gh = t[g][h]
            for k in ks:
                hk = t[h][k]
                yield ((idx(g, h), 1), (idx(gh, k), 1), (idx(h, k), -1), (idx(g, hk), -1))


def coboundary_matrices(G: FiniteGroup) -> tuple[np.ndarray, np.ndarray]:
    """(d1, d2) as integer matrices on normalized cochains, d2 over all triples."""
    n = G.order
    N2 = (n - 1) ** 2
    rows = list(_d2_terms(G, range(1, n)))
    D2 = np.zeros((len(rows), N2), dtype=np.int64)
    for r, terms in enumerate(rows):
        for col, s in terms:
            if col is not None:
                D2[r, col] += s
    return _d1_matrix(G), D2


def _d2_generator_rows(G: FiniteGroup) -> list[list[tuple[int, int]]]:
    # the identity with k running over a generating set already forces it for
    # every k: associativity of the extension propagates along words in the
    # generators
    out = []
    for terms in _d2_terms(G, G.generators):
        acc: dict[int, int] = {}
        for col, s in terms:
            if col is not None:
                acc[col] = acc.get(col, 0) + s
        out.append([(c, s) for c, s in acc.items() if s])
    return out


# -- per prime-power cohomology blocks --------------------------------------------


class _GF2Block:
    """H^1 and H^2 of G with Z/2 coefficients via bit-packed elimination."""

    p, e, q = 2, 1, 2

    def __init__(self, G: FiniteGroup):
        n = G.order
        self.n = n
        N1, N2 = n - 1, (n - 1) ** 2
        t = G.table
        d1_rows = []
        d1_cols = [0] * N1
        for a in range(1, n):
            for b in range(1, n):
                pair = (a - 1) * (n - 1) + (b - 1)
                row = (1 << (a - 1)) ^ (1 << (b - 1))
                ab = t[a][b]
                if ab:
                    row ^= 1 << (ab - 1)
                d1_rows.append(row)
                for g in range(N1):
                    if (row >> g) & 1:
                        d1_cols[g] |= 1 << pair
        self.h1_gens = [linalg.vector_from_bits(v, N1) for v in linalg.gf2_kernel(d1_rows, N1)]
        self.h1_exps = [1] * len(self.h1_gens)

        d2_rows = []
        for terms in _d2_generator_rows(G):
            r = 0
            for col, s in terms:
                if s % 2:
                    r ^= 1 << col
            d2_rows.append(r)
        cycles = linalg.gf2_kernel(d2_rows, N2)

        self._bounds = linalg.GF2Echelon()
        self._solver = linalg.GF2Echelon()
        for g, col in enumerate(d1_cols):
            self._bounds.insert(col)
            self._solver.insert(col, 1 << g)
        self._classes = linalg.GF2Echelon()
        for col in d1_cols:
            self._classes.insert(col)
        reps = []
        for z in cycles:
            zr, _ = self._bounds.reduce_fully(z)
            if self._classes.insert(zr, 1 << len(reps)):
                reps.append(zr)
        self.N1, self.N2 = N1, N2
        self.h2_reps = [linalg.vector_from_bits(r, N2) for r in reps]
        self.h2_exps = [1] * len(reps)

    def h2_coords(self, vec: np.ndarray) -> list[int]:
        rest, tag = self._classes.reduce(linalg.bits_from_vector(vec))
        if rest:
            raise InputError("cochain is not a 2-cocycle")
        return [(tag >> j) & 1 for j in range(len(self.h2_reps))]

    def solve_coboundary(self, vec: np.ndarray) -> np.ndarray:
        rest, tag = self._solver.reduce(linalg.bits_from_vector(vec))
        if rest:
            raise NoSolution("cocycle is not a coboundary")
        return linalg.vector_from_bits(tag, self.N1)


def _free_forms(G: FiniteGroup, q: int) -> np.ndarray:
    """L[g, x] expresses f(g, x) of a normalized cocycle in the free values.

    The free values are f(y, k) for y != 1 and k in G.generators, at index
    (y - 1) * r + j for k the j-th generator. Walking x outward from the
    generators, f(g, hk) = f(g, h) + f(gh, k) - f(h, k) fixes the rest.
    """
    n = G.order
    gens = list(G.generators)
    r = len(gens)
    L = np.zeros((n, n, (n - 1) * r), dtype=np.int64)
    for j, k in enumerate(gens):
        L[np.arange(1, n), k, np.arange(n - 1) * r + j] = 1
    mul = G.mul
    seen = {0, *gens}
    queue = list(gens)
    for h in queue:
        for k in gens:
            x = int(mul[h, k])
            if x not in seen:
                seen.add(x)
                L[:, x] = (L[:, h] + L[mul[:, h], k] - L[h, k][None, :]) % q
                queue.append(x)
    return L


def _free_constraints(G: FiniteGroup, L: np.ndarray, q: int) -> np.ndarray:
    """Distinct nonzero cocycle-identity rows in the free coordinates."""
    mul = G.mul
    out = []
    for k in G.generators:
        R = (L + L[mul, k] - L[:, k][None, :, :] - L[:, mul[:, k]]) % q
        R = R.reshape(-1, R.shape[-1])
        out.append(R[R.any(axis=1)])
    R = np.vstack(out) if out else np.zeros((0, L.shape[-1]), dtype=np.int64)
    return np.unique(R, axis=0) if len(R) else R


def _mulmod(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    # float64 products are exact while every partial sum stays below 2**53
    step = max(1, (1 << 52) // max((q - 1) ** 2, 1))
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(0, A.shape[1], step):
        prod = A[:, s:s + step].astype(np.float64) @ B[s:s + step].astype(np.float64)
        out = (out + np.fmod(prod, q).astype(np.int64)) % q
    return out


def _local_cycle_basis(R: np.ndarray, p: int, e: int, U: int):
    """Smith data (vals, V, Vinv) of the constraint rows R over Z/p^e.

    Many rows are compressed to U + 16 seeded random combinations. Their
    row module is contained in that of R and equals it with high
    probability (Nakayama); the kernel is then checked against every row of
    R, and the full matrix is used if the check fails.
    """
    q = p**e
    if len(R) > 2 * U + 32:
        rng = np.random.default_rng(0x5EED)
        for _ in range(3):
            S = _mulmod(rng.integers(0, q, size=(U + 16, len(R))), R, q)
            snf = linalg.local_snf(S, p, e)
            kappa = [snf.vals[i] if i < snf.rank else e for i in range(U)]
            K = snf.V * np.array([p ** (e - k) for k in kappa], dtype=np.int64)[None, :] % q
            if not _mulmod(R, K, q).any():
                return snf.vals, snf.V, snf.Vinv
    snf = linalg.local_snf(R, p, e)
    return snf.vals, snf.V, snf.Vinv


class _LocalBlock:
    """H^1 and H^2 of G with Z/p^e coefficients via Smith form over Z/p^e.

    Cocycles are handled through their free values (see _free_forms), so
    the linear algebra has (|G| - 1) * len(G.generators) columns.
    """

    def __init__(self, G: FiniteGroup, p: int, e: int):
        self.p, self.e, self.q = p, e, p**e
        q = self.q
        n = G.order
        N1, N2 = n - 1, (n - 1) ** 2
        self.N1, self.N2 = N1, N2
        L = _free_forms(G, q)
        U = L.shape[-1]
        self._forms = L[1:, 1:].reshape(N2, U)
        self._free = np.array([(y - 1) * (n - 1) + (k - 1) for y in range(1, n) for k in G.generators], dtype=np.int64)
        self._D1_full = _d1_matrix(G)
        self.D1 = self._D1_full[self._free] if N1 else np.zeros((0, 0), dtype=np.int64)
        if N1:
            self.h1_gens, self.h1_exps = linalg.local_kernel(self.D1, p, e)
        else:
            self.h1_gens, self.h1_exps = [], []

        vals, V, Vinv = _local_cycle_basis(_free_constraints(G, L, q), p, e, U)
        kappa = [vals[i] if i < len(vals) else e for i in range(U)]
        self._V, self._Vinv = V, Vinv
        self._kept = [i for i in range(U) if kappa[i] > 0]
        self._dropped = [i for i in range(U) if kappa[i] == 0]
        self._shift = np.array([p ** (e - kappa[i]) for i in self._kept], dtype=np.int64)
        k = len(self._kept)

        Y = Vinv @ self.D1 % q if N1 else np.zeros((U, 0), dtype=np.int64)
        C = Y[self._kept] // self._shift[:, None] if k else np.zeros((0, N1), dtype=np.int64)
        rel = np.hstack([C, np.diag([p ** kappa[i] % q for i in self._kept]).astype(np.int64).reshape(k, k)])
        if k:
            snf = linalg.local_snf(rel, p, e, left=True)
            self._U = snf.U
            a = [snf.vals[j] if j < snf.rank else e for j in range(k)]
        else:
            self._U = np.zeros((0, 0), dtype=np.int64)
            snf = None
            a = []
        self._gen_idx = [j for j in range(k) if a[j] > 0]
        self.h2_exps = [a[j] for j in self._gen_idx]
        self.h2_reps = []
        for j in self._gen_idx:
            y = np.zeros(U, dtype=np.int64)
            y[self._kept] = snf.Uinv[:, j] * self._shift % q
            self.h2_reps.append(self._expand(V @ y % q))

    def _expand(self, u: np.ndarray) -> np.ndarray:
        return _mulmod(self._forms, u.reshape(-1, 1), self.q)[:, 0]

    def h2_coords(self, vec: np.ndarray) -> list[int]:
        q = self.q
        vec = np.asarray(vec, dtype=np.int64) % q
        u = vec[self._free]
        y = self._Vinv @ u % q
        if self._dropped and y[self._dropped].any():
            raise InputError("cochain is not a 2-cocycle")
        yk = y[self._kept]
        if (yk % self._shift).any() or (self._expand(u) != vec).any():
            raise InputError("cochain is not a 2-cocycle")
        z = self._U @ (yk // self._shift) % q
        return [int(z[j] % self.p**a) for j, a in zip(self._gen_idx, self.h2_exps)]

    def solve_coboundary(self, vec: np.ndarray) -> np.ndarray:
        vec = np.asarray(vec, dtype=np.int64) % self.q
        if not self.N1:
            if vec.any():
                raise NoSolution("cocycle is not a coboundary")
            return np.zeros(0, dtype=np.int64)
        c = linalg.local_solve(self.D1, vec[self._free], self.p, self.e)
        if ((self._D1_full @ c - vec) % self.q).any():
            raise NoSolution("cocycle is not a coboundary")
        return c


@functools.lru_cache(maxsize=256)
def _block(G: FiniteGroup, p: int, e: int):
    if (p, e) == (2, 1):
        return _GF2Block(G)
    return _LocalBlock(G, p, e)


def _blocks(G: FiniteGroup, m: int):
    return [(p, e, _block(G, p, e)) for p, e in linalg.factor_prime_powers(m)]


def _idempotent(m: int, q: int) -> int:
    if m == q:
        return 1
    r = m // q
    return r * pow(r, -1, q) % m


# -- results ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class H1Result:
    """Hom(G, A): generators with their additive orders."""

    orders: tuple[int, ...]
    basis: tuple[Cochain1, ...]

    @property
    def size(self) -> int:
        return int(np.prod(self.orders)) if self.orders else 1

    @property
    def dimension(self) -> int:
        return len(self.orders)


@dataclass(frozen=True, eq=False)
class H2Result:
    """H^2(G, A) as a direct sum of cyclic groups of prime-power order."""

    orders: tuple[int, ...]
    basis: tuple["CohomClass", ...]
    invariant_factors: tuple[int, ...] = field(default=())

    @property
    def size(self) -> int:
        return int(np.prod(self.orders)) if self.orders else 1

    @property
    def dimension(self) -> int:
        return len(self.invariant_factors)


def invariant_factors(prime_powers: Iterable[int]) -> tuple[int, ...]:
    """Combine elementary divisors into invariant factors d_1 | d_2 | ..."""
    by_prime: dict[int, list[int]] = {}
    for q in prime_powers:
        p = linalg.factor_prime_powers(q)[0][0]
        by_prime.setdefault(p, []).append(q)
    length = max((len(v) for v in by_prime.values()), default=0)
    out = [1] * length
    for qs in by_prime.values():
        for i, q in enumerate(sorted(qs, reverse=True)):
            out[length - 1 - i] *= q
    return tuple(out)


def h1(G: FiniteGroup, A: Coefficients) -> H1Result:
    orders, basis = [], []
    for k, m in enumerate(A.orders):
        for p, e, blk in _blocks(G, m):
            eps = _idempotent(m, p**e)
            for gen, x in zip(blk.h1_gens, blk.h1_exps):
                vals = np.zeros((G.order, A.rank), dtype=np.int64)
                vals[1:, k] = gen * eps % m
                basis.append(Cochain1(G, A, vals))
                orders.append(p**x)
    return H1Result(tuple(orders), tuple(basis))


def homs_to(G: FiniteGroup, A: Coefficients) -> list[Cochain1]:
    """Every homomorphism G -> A, as normalized 1-cocycles."""
    res = h1(G, A)
    out = []
    for coeffs in itertools.product(*(range(o) for o in res.orders)):
        vals = np.zeros((G.order, A.rank), dtype=np.int64)
        for c, b in zip(coeffs, res.basis):
            vals = vals + c * b.values
        out.append(Cochain1(G, A, vals))
    return out


def h2(G: FiniteGroup, A: Coefficients) -> H2Result:
    orders, basis = [], []
    for k, m in enumerate(A.orders):
        for p, e, blk in _blocks(G, m):
            eps = _idempotent(m, p**e)
            for rep, x in zip(blk.h2_reps, blk.h2_exps):
                vals = np.zeros((G.order, G.order, A.rank), dtype=np.int64)
                vals[1:, 1:, k] = (rep * eps % m).reshape(G.order - 1, G.order - 1)
                basis.append(CohomClass(Cocycle2(G, A, vals)))
                orders.append(p**x)
    return H2Result(tuple(orders), tuple(basis), invariant_factors(orders))


def _coords(f: Cocycle2) -> tuple[int, ...]:
    G, A = f.group, f.coeffs
    out: list[int] = []
    for k, m in enumerate(A.orders):
        col = f.values[1:, 1:, k].reshape(-1)
        for p, e, blk in _blocks(G, m):
            out.extend(blk.h2_coords(col % p**e))
    return tuple(out)


def solve_coboundary(f: Cocycle2) -> Cochain1:
    """A normalized 1-cochain c with d1(c) == f; NoSolution if the class is nonzero."""
    G, A = f.group, f.coeffs
    vals = np.zeros((G.order, A.rank), dtype=np.int64)
    for k, m in enumerate(A.orders):
        col = f.values[1:, 1:, k].reshape(-1)
        for p, e, blk in _blocks(G, m):
            q = p**e
            c = blk.solve_coboundary(col % q)
            vals[1:, k] = (vals[1:, k] + _idempotent(m, q) * c) % m
    c = Cochain1(G, A, vals)
    if d1(c) != f:
        raise NoSolution("coboundary solve failed to reproduce the cocycle")
    return c


class CohomClass:
    """A class in H^2(G, A), carried by a representative cocycle.

    ``==`` is class equality (decided by reduction modulo coboundaries).
    """

    __slots__ = ("rep", "_coords")

    def __init__(self, rep: Cocycle2):
        self.rep = rep
        self._coords = None

    @property
    def group(self) -> FiniteGroup:
        return self.rep.group

    @property
    def coeffs(self) -> Coefficients:
        return self.rep.coeffs

    def coords(self) -> tuple[int, ...]:
        if self._coords is None:
            self._coords = _coords(self.rep)
        return self._coords

    def is_zero(self) -> bool:
        return not any(self.coords())

    def __add__(self, other: "CohomClass") -> "CohomClass":
        return CohomClass(self.rep + other.rep)

    def __sub__(self, other: "CohomClass") -> "CohomClass":
        return CohomClass(self.rep - other.rep)

    def __neg__(self) -> "CohomClass":
        return CohomClass(-self.rep)

    def __rmul__(self, k: int) -> "CohomClass":
        return CohomClass(k * self.rep)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohomClass):
            return NotImplemented
        return class_eq(self, other)

    def __hash__(self) -> int:
        return hash((self.group, self.coeffs, self.coords()))

    def __repr__(self) -> str:
        return f"CohomClass(order={self.group.order}, coeffs={self.coeffs}, coords={self.coords()})"


def as_class(x: CohomClass | Cocycle2) -> CohomClass:
    return x if isinstance(x, CohomClass) else CohomClass(x)


def class_eq(x: CohomClass | Cocycle2, y: CohomClass | Cocycle2) -> bool:
    x, y = as_class(x), as_class(y)
    _same_ambient(x, y)
    return x.coords() == y.coords()


def class_from_coords(G: FiniteGroup, A: Coefficients, coords: Sequence[int]) -> CohomClass:
    res = h2(G, A)
    if len(coords) != len(res.basis):
        raise InputError("wrong number of coordinates")
    f = zero_cocycle(G, A)
    for c, b in zip(coords, res.basis):
        f = f + int(c) * b.rep
    return CohomClass(f)


def restrict(x: CohomClass | Cocycle2, phi: GroupHom) -> CohomClass:
    """Pull a class back along phi: G' -> G."""
    f = as_class(x).rep
    if phi.target != f.group:
        raise MismatchedAmbient("homomorphism target differs from the class's group")
    m = np.array(phi.map, dtype=np.int64)
    return CohomClass(Cocycle2(phi.source, f.coeffs, f.values[np.ix_(m, m)]))


def restrict_cochain1(c: Cochain1, phi: GroupHom) -> Cochain1:
    if phi.target != c.group:
        raise MismatchedAmbient("homomorphism target differs from the cochain's group")
    return Cochain1(phi.source, c.coeffs, c.values[np.array(phi.map)])


def push(x: CohomClass | Cocycle2, psi: CoeffHom) -> CohomClass:
    """Change coefficients along psi: A -> A'."""
    f = as_class(x).rep
    if psi.source != f.coeffs:
        raise MismatchedAmbient("coefficient map source differs from the class's coefficients")
    return CohomClass(Cocycle2(f.group, psi.target, psi.apply(f.values)))


def cup11(a: Cochain1, b: Cochain1) -> CohomClass:
    """(a ∪ b)(g, h) = a(g) b(h) for characters into Z/2."""
    if a.coeffs != Z2 or b.coeffs != Z2:
        raise NonF2Coefficients("cup products are only supported with Z/2 coefficients")
    _same_ambient(a, b)
    vals = a.values[:, None, 0] * b.values[None, :, 0]
    return CohomClass(Cocycle2(a.group, Z2, vals))


def random_cocycle(G: FiniteGroup, A: Coefficients, rng: np.random.Generator) -> Cocycle2:
    """A random cocycle: random class plus a random coboundary."""
    res = h2(G, A)
    f = zero_cocycle(G, A)
    for o, b in zip(res.orders, res.basis):
        f = f + int(rng.integers(o)) * b.rep
    vals = rng.integers(0, np.array(A.orders), size=(G.order, A.rank))
    vals[0] = 0
    return f + d1(Cochain1(G, A, vals))


# -- elementary abelian 2-groups ------------------------------------------------


def coordinates_in_basis(G: FiniteGroup, basis: Sequence[int]) -> list[tuple[int, ...]]:
    """Bit vector of every element of an elementary abelian 2-group in ``basis``."""
    if not G.is_abelian() or any(o > 2 for o in G.element_orders):
        raise NotElementaryAbelian("group is not an elementary abelian 2-group")
    n = len(basis)
    if 2**n != G.order:
        raise NotElementaryAbelian("basis size does not match the group order")
    coords: list[tuple[int, ...] | None] = [None] * G.order
    for bits in itertools.product((0, 1), repeat=n):
        g = G.prod(*[b for b, on in zip(basis, bits) if on])
        if coords[g] is not None:
            raise NotElementaryAbelian("declared basis is not independent")
        coords[g] = bits
    return coords


def basis_characters(G: FiniteGroup, basis: Sequence[int]) -> list[Cochain1]:
    """The dual characters v_i with v_i(basis_j) = [i == j]."""
    coords = coordinates_in_basis(G, basis)
    return [Cochain1(G, Z2, np.array([c[i] for c in coords])) for i in range(len(basis))]


def monomials(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def poly_class(G: FiniteGroup, basis: Sequence[int], coeffs: dict[tuple[int, int], int]) -> CohomClass:
    """Sum of c_ij [v_i ∪ v_j] over the given monomials (0-based i <= j)."""
    v = basis_characters(G, basis)
    f = zero_cocycle(G, Z2)
    for (i, j), c in coeffs.items():
        if c % 2:
            f = f + cup11(v[i], v[j]).rep
    return CohomClass(f)


@dataclass(frozen=True)
class PolyCoords:
    """Coordinates of a degree-2 class over the monomials v_i v_j (i <= j)."""

    rank: int
    coeffs: tuple[tuple[tuple[int, int], int], ...]

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.coeffs)

    def symmetric(self) -> str | None:
        """Form in E1^2 = sum v_i^2 and E2 = sum_{i<j} v_i v_j, when symmetric."""
        d = self.as_dict()
        sq = {d[(i, i)] for i in range(self.rank)}
        cross = {d[(i, j)] for i in range(self.rank) for j in range(i + 1, self.rank)}
        if len(sq) > 1 or len(cross) > 1:
            return None
        terms = []
        if cross and cross.pop():
            terms.append("E2")
        if sq and sq.pop():
            terms.append("E1^2")
        return "+".join(terms) or "0"

    def __str__(self) -> str:
        terms = []
        for (i, j), c in self.coeffs:
            if c:
                terms.append(f"v{i + 1}^2" if i == j else f"v{i + 1}v{j + 1}")
        return " + ".join(terms) or "0"


def express_poly(x: CohomClass | Cocycle2, basis: Sequence[int]) -> PolyCoords:
    """Write a Z/2 class on an elementary abelian 2-group in the monomial basis."""
    x = as_class(x)
    if x.coeffs != Z2:
        raise NonF2Coefficients("polynomial coordinates need Z/2 coefficients")
    G = x.group
    n = len(basis)
    mons = monomials(n)
    v = basis_characters(G, basis)
    ech = linalg.GF2Echelon()
    for idx, (i, j) in enumerate(mons):
        ech.insert(linalg.bits_from_vector(cup11(v[i], v[j]).coords()), 1 << idx)
    if len(ech) != len(mons):
        raise NoSolution("monomial classes are not independent")
    rest, tag = ech.reduce(linalg.bits_from_vector(x.coords()))
    if rest:
        raise NoSolution("class is not in the span of the monomials")
    return PolyCoords(n, tuple((m, (tag >> k) & 1) for k, m in enumerate(mons)))
