"""First and second Stiefel-Whitney classes of rational orthogonal representations."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import grp, qmat
from .cliff import pin_cocycles, pin_preimage
from .cohom import Cochain1, CohomClass, Z2, cup11, h1, restrict
from .errors import DimensionTooSmall, InputError, LiftCheckFailed, NotAHomomorphism, NotOrthogonal
from .ext import decide_lift, pullback
from .grp import FiniteGroup, GroupHom


@dataclass(frozen=True, eq=False)
class OrthogonalRep:
    """A homomorphism G -> O(n, Q), stored as one matrix per element."""

    group: FiniteGroup
    dim: int
    mats: tuple[qmat.Matrix, ...]

    def __post_init__(self):
        G, n = self.group, self.dim
        if len(self.mats) != G.order:
            raise InputError("need one matrix per group element")
        if self.mats[0] != qmat.identity(n):
            raise NotAHomomorphism("identity must map to the identity matrix")
        for m in self.mats:
            if len(m) != n or not qmat.is_orthogonal(m):
                raise NotOrthogonal("representation matrix is not orthogonal")
        t = G.table
        for g in range(G.order):
            for s in G.generators:
                if qmat.matmul(self.mats[g], self.mats[s]) != self.mats[t[g][s]]:
                    raise NotAHomomorphism("matrices do not respect the group law")

    def __call__(self, g: int) -> qmat.Matrix:
        return self.mats[g]

    @functools.cached_property
    def image(self) -> tuple[FiniteGroup, list[qmat.Matrix], GroupHom]:
        """The image group, its matrices, and the surjection G -> image."""
        gens = tuple(self.mats[s] for s in self.group.generators)
        Im, mats = grp.generate(grp.OrthSpec(self.dim, gens), cap=max(self.group.order, 1))
        where = {m: k for k, m in enumerate(mats)}
        return Im, mats, GroupHom(self.group, Im, tuple(where[m] for m in self.mats))


def rep_from_generators(G: FiniteGroup, images: Mapping[int, Sequence[Sequence]]) -> OrthogonalRep:
    """Extend matrices given on generating elements of G to a representation."""
    images = {int(g): qmat.as_matrix(m) for g, m in images.items()}
    if not images:
        raise InputError("no generator images given")
    n = len(next(iter(images.values())))
    for m in images.values():
        if len(m) != n:
            raise InputError("generator images have different sizes")
        if not qmat.is_orthogonal(m):
            raise NotOrthogonal("generator image is not orthogonal")
    mats: list[qmat.Matrix | None] = [None] * G.order
    mats[0] = qmat.identity(n)
    frontier = [0]
    t = G.table
    while frontier:
        nxt = []
        for x in frontier:
            for s, ms in images.items():
                y = t[x][s]
                my = qmat.matmul(mats[x], ms)
                if mats[y] is None:
                    mats[y] = my
                    nxt.append(y)
                elif mats[y] != my:
                    raise NotAHomomorphism("generator images violate a relation")
        frontier = nxt
    if any(m is None for m in mats):
        raise InputError("given elements do not generate the group")
    return OrthogonalRep(G, n, tuple(mats))


def defining_rep(G: FiniteGroup, mats: Sequence[qmat.Matrix]) -> OrthogonalRep:
    return OrthogonalRep(G, len(mats[0]), tuple(mats))


def direct_sum(pi: OrthogonalRep, sigma: OrthogonalRep) -> OrthogonalRep:
    if pi.group != sigma.group:
        raise InputError("representations of different groups")
    return OrthogonalRep(pi.group, pi.dim + sigma.dim, tuple(qmat.block_diag(a, b) for a, b in zip(pi.mats, sigma.mats)))


def trivial_rep(G: FiniteGroup, dim: int) -> OrthogonalRep:
    return OrthogonalRep(G, dim, (qmat.identity(dim),) * G.order)


def pad(pi: OrthogonalRep, dim: int = 2) -> OrthogonalRep:
    """Add a trivial summand to reach ``dim``."""
    if pi.dim >= dim:
        return pi
    return direct_sum(pi, trivial_rep(pi.group, dim - pi.dim))


def conjugate(pi: OrthogonalRep, T: qmat.Matrix) -> OrthogonalRep:
    """g -> T pi(g) T^-1 for an orthogonal T."""
    Tt = qmat.transpose(T)
    return OrthogonalRep(pi.group, pi.dim, tuple(qmat.matmul(qmat.matmul(T, m), Tt) for m in pi.mats))


def precompose(pi: OrthogonalRep, phi: GroupHom) -> OrthogonalRep:
    """pi ∘ phi"""
    if phi.target != pi.group:
        raise InputError("homomorphism target differs from the representation's group")
    return OrthogonalRep(phi.source, pi.dim, tuple(pi.mats[x] for x in phi.map))


def det_character(pi: OrthogonalRep) -> Cochain1:
    """g -> (1 - det pi(g)) / 2, computed straight from determinants."""
    vals = [0 if qmat.det(m) == 1 else 1 for m in pi.mats]
    return Cochain1(pi.group, Z2, np.array(vals))


def w1(pi: OrthogonalRep) -> Cochain1:
    """First Stiefel-Whitney class as a character G -> Z/2 (the determinant)."""
    Im, mats, phi = pi.image
    report = _report(pi)
    parity = np.array([len(w) % 2 for w in report.words], dtype=np.int64)
    return Cochain1(pi.group, Z2, parity[np.array(phi.map)])


def _report(pi: OrthogonalRep):
    Im, mats, _ = pi.image
    return _cached_report(Im, tuple(mats))


@functools.lru_cache(maxsize=128)
def _cached_report(Im: FiniteGroup, mats: tuple):
    return pin_cocycles(Im, list(mats))


def _require_dim(pi: OrthogonalRep, allow_pad: bool) -> OrthogonalRep:
    if pi.dim >= 2:
        return pi
    if allow_pad:
        return pad(pi, 2)
    raise DimensionTooSmall("Pin analysis needs dim >= 2; pass pad=True to add a trivial summand")


def w2(pi: OrthogonalRep, *, allow_pad: bool = False) -> CohomClass:
    """Second Stiefel-Whitney class: the Pin+ cocycle of the image pulled back to G."""
    pi = _require_dim(pi, allow_pad)
    _, _, phi = pi.image
    return restrict(_report(pi).f_plus, phi)


@dataclass(frozen=True, eq=False)
class SWReport:
    w1: Cochain1
    w2: CohomClass
    obstructions: dict[str, CohomClass]
    verdicts: dict[str, bool]
    counts: dict[str, int]
    witnesses: dict[str, GroupHom | None]
    preimages: dict[str, str] = field(default_factory=dict)


COVERS = ("tilde", "pin_plus", "pin_minus")
_VARIANT = {"tilde": "tilde", "pin_plus": "plus", "pin_minus": "minus"}


def lifting_report(pi: OrthogonalRep, *, allow_pad: bool = False) -> SWReport:
    """w1, w2 and whether pi lifts to Õ(V), Pin+(V), Pin-(V).

    Every verdict is checked against an explicit lift search through the
    pulled-back double cover; a disagreement raises LiftCheckFailed.
    """
    pi = _require_dim(pi, allow_pad)
    a = w1(pi)
    b = w2(pi)
    sq = cup11(a, a)
    obstructions = {"tilde": sq, "pin_plus": b, "pin_minus": b + sq}
    Im, mats, phi = pi.image
    report = _report(pi)
    n_chars = h1(pi.group, Z2).size
    verdicts, counts, witnesses, preimages = {}, {}, {}, {}
    for name in COVERS:
        ok = obstructions[name].is_zero()
        X = pin_preimage(Im, mats, _VARIANT[name], report)
        lift = decide_lift(phi, X)
        if lift.lifts != ok or (not ok and lift.obstruction != obstructions[name]):
            raise LiftCheckFailed(f"{name}: class verdict {ok}, lift search {lift.lifts}")
        if ok and lift.count != n_chars:
            raise LiftCheckFailed(f"{name}: {lift.count} lifts, expected {n_chars}")
        verdicts[name] = ok
        counts[name] = lift.count
        witnesses[name] = lift.witness
        preimages[name] = grp.identify(pullback(phi, X).E)
    return SWReport(a, b, obstructions, verdicts, counts, witnesses, preimages)
