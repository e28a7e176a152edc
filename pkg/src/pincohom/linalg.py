"""Exact linear algebra over GF(2) (bit-packed rows) and over Z/p^e.

Over the local ring Z/p^e every ideal is (p^k), so Smith normal form only
needs pivots of minimal p-adic valuation; composite moduli are split into
prime powers by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoSolution


def factor_prime_powers(m: int) -> list[tuple[int, int]]:
    """[(p, e), ...] with m = prod p^e, primes ascending."""
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1
    if m > 1:
        out.append((m, 1))
    return out


# -- GF(2) --------------------------------------------------------------------


def bits_from_vector(vec) -> int:
    out = 0
    for i, x in enumerate(vec):
        if int(x) & 1:
            out |= 1 << i
    return out


def vector_from_bits(bits: int, n: int) -> np.ndarray:
    return np.array([(bits >> i) & 1 for i in range(n)], dtype=np.int64)


class GF2Echelon:
    """Row echelon form keyed by highest set bit, with combination tags.

    Every stored row satisfies ``row == xor of inputs named by its tag``
    (up to rows inserted with a zero tag, which are treated as known).
    """

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: int, tag: int = 0) -> tuple[int, int]:
        rows = self.rows
        while vec:
            top = vec.bit_length() - 1
            hit = rows.get(top)
            if hit is None:
                break
            vec ^= hit[0]
            tag ^= hit[1]
        return vec, tag

    def reduce_fully(self, vec: int, tag: int = 0) -> tuple[int, int]:
        """Clear every pivot bit of ``vec``, not just the leading ones."""
        for piv in sorted(self.rows, reverse=True):
            if (vec >> piv) & 1:
                row, rtag = self.rows[piv]
                vec ^= row
                tag ^= rtag
        return vec, tag

    def insert(self, vec: int, tag: int = 0) -> bool:
        vec, tag = self.reduce(vec, tag)
        if not vec:
            return False
        self.rows[vec.bit_length() - 1] = (vec, tag)
        return True


def gf2_rank(rows: list[int]) -> int:
    ech = GF2Echelon()
    return sum(ech.insert(r) for r in rows)


def gf2_kernel(rows: list[int], ncols: int) -> list[int]:
    """Basis of {x : <row, x> = 0 for every row}, ordered by free column."""
    ech = GF2Echelon()
    for r in rows:
        ech.insert(r)
    pivots = sorted(ech.rows)
    reduced: dict[int, int] = {}
    for piv in pivots:
        row = ech.rows[piv][0]
        for q in sorted(reduced, reverse=True):
            if (row >> q) & 1:
                row ^= reduced[q]
        reduced[piv] = row
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = 1 << f
        for piv, row in reduced.items():
            if (row >> f) & 1:
                vec |= 1 << piv
        basis.append(vec)
    return basis


# -- Z/p^e --------------------------------------------------------------------


def valuation(x: int, p: int, e: int) -> int:
    """p-adic valuation of a residue mod p^e (e for zero)."""
    x %= p**e
    if x == 0:
        return e
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass
class LocalSNF:
    """Smith form ``U M V = diag(p^v_0, p^v_1, ...)`` over Z/p^e.

    ``vals`` holds the valuations of the nonzero diagonal entries, in order.
    ``U``/``Uinv`` are only populated when requested; ``rhs`` holds the
    carried right-hand sides after the row operations (i.e. ``U @ rhs``).
    """

    p: int
    e: int
    vals: list[int]
    V: np.ndarray
    Vinv: np.ndarray
    U: np.ndarray | None = None
    Uinv: np.ndarray | None = None
    rhs: np.ndarray | None = None

    @property
    def rank(self) -> int:
        return len(self.vals)


def local_snf(M, p: int, e: int, *, left: bool = False, rhs=None) -> LocalSNF:
    q = p**e
    if q >= 2**31:
        raise ValueError("modulus too large for int64 elimination")
    A = np.array(M, dtype=np.int64) % q
    if A.ndim != 2:
        raise ValueError("matrix must be 2-d")
    nr, nc = A.shape
    V = np.eye(nc, dtype=np.int64)
    Vinv = np.eye(nc, dtype=np.int64)
    U = np.eye(nr, dtype=np.int64) if left else None
    Uinv = np.eye(nr, dtype=np.int64) if left else None
    B = None if rhs is None else np.array(rhs, dtype=np.int64).reshape(nr, -1) % q
    vals: list[int] = []
    powers = [p**k for k in range(e + 1)]

    for t in range(min(nr, nc)):
        sub = A[t:, t:]
        if not sub.any():
            break
        # smallest valuation present in the trailing block
        loc = None
        for k in range(e):
            hits = np.argwhere(sub % powers[k + 1] != 0)
            if len(hits):
                loc = hits[0]
                v = k
                break
        i, j = int(loc[0]) + t, int(loc[1]) + t
        if i != t:
            A[[t, i]] = A[[i, t]]
            if left:
                U[[t, i]] = U[[i, t]]
                Uinv[:, [t, i]] = Uinv[:, [i, t]]
            if B is not None:
                B[[t, i]] = B[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
            Vinv[[t, j]] = Vinv[[j, t]]
        unit = int(A[t, t]) // powers[v]
        uinv = pow(unit, -1, q)
        if uinv != 1:
            A[t] = A[t] * uinv % q
            if left:
                U[t] = U[t] * uinv % q
                Uinv[:, t] = Uinv[:, t] * unit % q
            if B is not None:
                B[t] = B[t] * uinv % q
        pv = powers[v]
        # clear column t below the pivot: row_i -= c_i row_t
        c = A[t + 1:, t] // pv
        if c.any():
            A[t + 1:] = (A[t + 1:] - np.outer(c, A[t])) % q
            if left:
                U[t + 1:] = (U[t + 1:] - np.outer(c, U[t])) % q
                Uinv[:, t] = (Uinv[:, t] + Uinv[:, t + 1:] @ c) % q
            if B is not None:
                B[t + 1:] = (B[t + 1:] - np.outer(c, B[t])) % q
        # clear row t right of the pivot: col_j -= d_j col_t
        d = A[t, t + 1:] // pv
        if d.any():
            A[t, t + 1:] = 0
            V[:, t + 1:] = (V[:, t + 1:] - np.outer(V[:, t], d)) % q
            Vinv[t] = (Vinv[t] + d @ Vinv[t + 1:]) % q
        vals.append(v)
    return LocalSNF(p, e, vals, V, Vinv, U, Uinv, B)


def local_kernel(M, p: int, e: int) -> tuple[list[np.ndarray], list[int]]:
    """Generators of ker M over Z/p^e with their orders' exponents.

    Returns (gens, exps): gens[i] has additive order p^exps[i], and the
    kernel is the internal direct sum of the cyclic groups they generate.
    """
    A = np.array(M, dtype=np.int64)
    snf = local_snf(A, p, e)
    q = p**e
    gens, exps = [], []
    ncols = A.shape[1]
    for i in range(ncols):
        kappa = snf.vals[i] if i < snf.rank else e
        if kappa == 0:
            continue
        gens.append(snf.V[:, i] * p ** (e - kappa) % q)
        exps.append(kappa)
    return gens, exps


def local_solve(M, b, p: int, e: int) -> np.ndarray:
    """One solution x of M x = b over Z/p^e; raises NoSolution otherwise."""
    q = p**e
    A = np.array(M, dtype=np.int64)
    snf = local_snf(A, p, e, rhs=np.asarray(b, dtype=np.int64).reshape(-1, 1))
    rb = snf.rhs[:, 0]
    y = np.zeros(A.shape[1], dtype=np.int64)
    for i, v in enumerate(snf.vals):
        if rb[i] % p**v:
            raise NoSolution("right-hand side not in the image")
        y[i] = rb[i] // p**v
    if (rb[snf.rank:] % q).any():
        raise NoSolution("right-hand side not in the image")
    return snf.V @ y % q
