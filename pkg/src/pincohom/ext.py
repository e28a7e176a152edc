"""Central extensions 0 -> A -> E -> G -> 1 of finite groups.

Extensions are stored concretely (a table for E plus the maps i and p) and
compared through their cocycle classes. The cocycle of an extension is read
off a section s with s(1) = 1 as

    f(g, h) = i^-1( s(g) s(h) s(gh)^-1 ),

so ``from_cocycle`` and ``to_class`` are inverse on tables.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import grp
from .cohom import (
    Cochain1,
    CoeffHom,
    Coefficients,
    CohomClass,
    Cocycle2,
    h1,
    homs_to,
    restrict,
    solve_coboundary,
    zero_cocycle,
)
from .errors import EquivalenceDisagreement, InputError, InvalidCocycle, InvalidExtension, MismatchedAmbient, NotNormal
from .grp import FiniteGroup, GroupHom

BRUTE_FORCE_CAP = 32
MAX_ENUMERATED_LIFTS = 1024


@dataclass(frozen=True, eq=False)
class CentralExtension:
    E: FiniteGroup
    coeffs: Coefficients
    i: GroupHom
    p: GroupHom

    def __post_init__(self):
        self.validate()

    @property
    def G(self) -> FiniteGroup:
        return self.p.target

    def validate(self) -> None:
        E, A = self.E, self.coeffs
        if self.i.source != A.group or self.i.target != E or self.p.source != E:
            raise InvalidExtension("maps do not match the groups")
        if not self.i.is_injective():
            raise InvalidExtension("i is not injective")
        if not self.p.is_surjective():
            raise InvalidExtension("p is not surjective")
        image = set(self.i.map)
        if set(self.p.kernel()) != image:
            raise InvalidExtension("ker p differs from im i")
        t = E.table
        for a in image:
            if any(t[a][x] != t[x][a] for x in E.generators):
                raise InvalidExtension("im i is not central")

    @functools.cached_property
    def _i_inverse(self) -> np.ndarray:
        inv = np.full(self.E.order, -1, dtype=np.int64)
        inv[np.array(self.i.map)] = np.arange(self.coeffs.size)
        return inv

    def i_inverse(self, e: int) -> tuple[int, ...]:
        a = int(self._i_inverse[e])
        if a < 0:
            raise InputError("element is not in the image of i")
        return self.coeffs.decode(a)

    def fibre(self, g: int) -> list[int]:
        return [e for e, x in enumerate(self.p.map) if x == g]

    def default_section(self) -> list[int]:
        """Least element index in every fibre."""
        s = [-1] * self.G.order
        for e, g in enumerate(self.p.map):
            if s[g] == -1:
                s[g] = e
        return s

    def random_section(self, rng: np.random.Generator) -> list[int]:
        fibres: list[list[int]] = [[] for _ in range(self.G.order)]
        for e, g in enumerate(self.p.map):
            fibres[g].append(e)
        return [0] + [int(rng.choice(f)) for f in fibres[1:]]

    def table_equal(self, other: "CentralExtension") -> bool:
        """Raw equality of tables and maps; debugging aid, not equivalence."""
        return (self.E == other.E and self.coeffs == other.coeffs
                and self.i.map == other.i.map and self.p.map == other.p.map)


def from_cocycle(G: FiniteGroup, A: Coefficients, f: Cocycle2) -> CentralExtension:
    """E = A x G with (a, g)(b, h) = (a + b + f(g, h), gh); (a, g) sits at g*|A| + a."""
    if f.group != G or f.coeffs != A:
        raise MismatchedAmbient("cocycle lives over a different group or coefficients")
    if not f.is_valid():
        raise InvalidCocycle("not a normalized 2-cocycle")
    s = A.size
    n = G.order
    radix = np.array([int(np.prod(A.orders[k + 1:])) for k in range(A.rank)], dtype=np.int64)
    fenc = f.values @ radix
    add = A.group.mul
    ar = np.arange(s)
    inner = add[add[ar[None, :, None, None], ar[None, None, None, :]], fenc[:, None, :, None]]
    table = G.mul[:, None, :, None] * s + inner
    E = FiniteGroup(table.reshape(n * s, n * s), check=False)
    i = GroupHom(A.group, E, tuple(range(s)), check=False)
    p = GroupHom(E, G, tuple(e // s for e in range(n * s)), check=False)
    return CentralExtension(E, A, i, p)


def trivial_extension(G: FiniteGroup, A: Coefficients) -> CentralExtension:
    return from_cocycle(G, A, zero_cocycle(G, A))


def to_cocycle(X: CentralExtension, section: Sequence[int] | None = None) -> Cocycle2:
    s = np.array(X.default_section() if section is None else section, dtype=np.int64)
    G, E = X.G, X.E
    if s.shape != (G.order,) or s[0] != 0:
        raise InputError("section must have one entry per element of G and send 1 to 1")
    if any(X.p.map[int(e)] != g for g, e in enumerate(s)):
        raise InputError("not a section of p")
    prod = E.mul[s[:, None], s[None, :]]
    val = E.mul[prod, E.inverse[s[G.mul]]]
    idx = X._i_inverse[val]
    decoded = np.array([X.coeffs.decode(a) for a in range(X.coeffs.size)], dtype=np.int64)
    return Cocycle2(G, X.coeffs, decoded[idx])


def to_class(X: CentralExtension, section: Sequence[int] | None = None) -> CohomClass:
    return CohomClass(to_cocycle(X, section))


def _check_same(X: CentralExtension, Y: CentralExtension) -> None:
    if X.G != Y.G or X.coeffs != Y.coeffs:
        raise MismatchedAmbient("extensions of different groups or by different coefficients")


def find_equivalence(X: CentralExtension, Y: CentralExtension, cap: int = BRUTE_FORCE_CAP) -> GroupHom | None:
    """Brute force: a homomorphism E -> E' with phi∘i = i' and p'∘phi = p."""
    _check_same(X, Y)
    if X.E.order > cap:
        raise InputError(f"brute-force equivalence is limited to |E| <= {cap}")
    gens = list(X.E.generators)
    a_gens = list(X.coeffs.group.generators)
    fixed = [X.i(a) for a in a_gens]
    fixed_img = [Y.i(a) for a in a_gens]
    cands = [Y.fibre(X.p(x)) for x in gens]
    for imgs in itertools.product(*cands):
        m = grp._extend(X.E, Y.E, gens + fixed, list(imgs) + fixed_img)
        if m is not None and len(set(m)) == X.E.order and -1 not in m:
            return GroupHom(X.E, Y.E, tuple(m), check=False)
    return None


def equivalent(X: CentralExtension, Y: CentralExtension, *, oracle: bool = True) -> bool:
    """Equivalence of extensions, decided by class equality.

    With ``oracle`` and |E| <= 32 the brute-force search runs as well and
    must agree.
    """
    _check_same(X, Y)
    by_class = to_class(X) == to_class(Y)
    if oracle and X.E.order <= BRUTE_FORCE_CAP:
        by_search = find_equivalence(X, Y) is not None
        if by_search != by_class:
            raise EquivalenceDisagreement(f"class comparison {by_class} vs brute force {by_search}")
    return by_class


# -- constructions ----------------------------------------------------------------


def _fibre_product(E1: FiniteGroup, p1: Sequence[int], E2: FiniteGroup, p2: Sequence[int]):
    elems = [(x, y) for x in range(E1.order) for y in range(E2.order) if p1[x] == p2[y]]
    index = {pair: k for k, pair in enumerate(elems)}
    t1, t2 = E1.table, E2.table
    table = [[index[(t1[a][c], t2[b][d])] for (c, d) in elems] for (a, b) in elems]
    return FiniteGroup(table, check=False), elems, index


def _pullback(phi: GroupHom, X: CentralExtension) -> tuple[CentralExtension, list[int]]:
    if phi.target != X.G:
        raise MismatchedAmbient("homomorphism target differs from the extension's base")
    P, elems, index = _fibre_product(phi.source, phi.map, X.E, X.p.map)
    i = GroupHom(X.coeffs.group, P, tuple(index[(0, X.i(a))] for a in range(X.coeffs.size)), check=False)
    p = GroupHom(P, phi.source, tuple(g for g, _ in elems), check=False)
    return CentralExtension(P, X.coeffs, i, p), [e for _, e in elems]


def pullback(phi: GroupHom, X: CentralExtension) -> CentralExtension:
    """phi^*X for phi: G' -> G, as the subgroup {(g', e) : phi(g') = p(e)} of G' x E."""
    return _pullback(phi, X)[0]


def baer_sum(X: CentralExtension, Y: CentralExtension) -> CentralExtension:
    """Fibre product over G modulo the antidiagonal {(i1(a), i2(a)^-1)}."""
    _check_same(X, Y)
    P, elems, index = _fibre_product(X.E, X.p.map, Y.E, Y.p.map)
    A = X.coeffs
    anti = [index[(X.i(a), Y.E.inv[Y.i(a)])] for a in range(A.size)]
    Q, proj = grp.quotient(P, anti)
    i = GroupHom(A.group, Q, tuple(proj(index[(X.i(a), 0)]) for a in range(A.size)), check=False)
    p_map = [0] * Q.order
    for k, (e1, _) in enumerate(elems):
        p_map[proj(k)] = X.p(e1)
    return CentralExtension(Q, A, i, GroupHom(Q, X.G, tuple(p_map), check=False))


def pushout(psi: CoeffHom, X: CentralExtension) -> CentralExtension:
    """psi_*X = (E x A') / {(i(a), -psi(a))}."""
    if psi.source != X.coeffs:
        raise MismatchedAmbient("coefficient map source differs from the extension's kernel")
    A, B = psi.source, psi.target
    P = grp.direct_product(X.E, B.group)
    s = B.size
    psi_g = psi.as_group_hom()
    sub = [X.i(a) * s + B.group.inv[psi_g(a)] for a in range(A.size)]
    Q, proj = grp.quotient(P, sub)
    i = GroupHom(B.group, Q, tuple(proj(b) for b in range(s)), check=False)
    p_map = [0] * Q.order
    for k in range(P.order):
        p_map[proj(k)] = X.p(k // s)
    return CentralExtension(Q, B, i, GroupHom(Q, X.G, tuple(p_map), check=False))


def restrict_extension(X: CentralExtension, inclusion: GroupHom) -> CentralExtension:
    return pullback(inclusion, X)


def conj_action(g: int, X: CentralExtension, inclusion: GroupHom) -> CentralExtension:
    """Int(g)^* applied to the restriction of X to the normal subgroup ``inclusion``."""
    G = X.G
    if inclusion.target != G:
        raise MismatchedAmbient("subgroup inclusion does not land in the extension's base")
    H = inclusion.source
    if not grp.is_normal(G, inclusion.map):
        raise NotNormal("subgroup is not normal")
    where = {x: k for k, x in enumerate(inclusion.map)}
    int_g = GroupHom(H, H, tuple(where[G.conj(g, inclusion(h))] for h in range(H.order)))
    return pullback(int_g, pullback(inclusion, X))


# -- lifting ------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LiftReport:
    lifts: bool
    obstruction: CohomClass | None
    count: int
    witness: GroupHom | None
    all_lifts: tuple[GroupHom, ...] | None = None


def _twist(X: CentralExtension, chi: Cochain1, lift: GroupHom) -> GroupHom:
    t = X.E.table
    enc = [X.coeffs.encode(chi(g)) for g in range(lift.source.order)]
    return GroupHom(lift.source, X.E, tuple(t[X.i(a)][e] for a, e in zip(enc, lift.map)), check=False)


def decide_lift(phi: GroupHom, X: CentralExtension) -> LiftReport:
    """Does phi: G' -> G lift through p: E -> G?  Returns a witness when it does."""
    obstruction = restrict(to_class(X), phi)
    if not obstruction.is_zero():
        return LiftReport(False, obstruction, 0, None)
    P, to_E = _pullback(phi, X)
    s = P.default_section()
    c = solve_coboundary(to_cocycle(P, s))
    A = X.coeffs
    # t(g) = i(c(g))^-1 s(g) is a homomorphism G' -> P
    t = [P.E.table[P.E.inv[P.i(A.encode(c(g)))]][s[g]] for g in range(phi.source.order)]
    lift = GroupHom(phi.source, X.E, tuple(to_E[x] for x in t))
    if X.p.compose(lift).map != phi.map:
        raise InvalidExtension("constructed lift does not cover phi")
    count = h1(phi.source, A).size
    lifts = None
    if count <= MAX_ENUMERATED_LIFTS:
        lifts = tuple(_twist(X, chi, lift) for chi in homs_to(phi.source, A))
    return LiftReport(True, None, count, lift, lifts)
