"""The acceptance suite as runnable checks, shared by the CLI and the tests."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import grp, linalg, qmat
from .cliff import pin_cocycles, pin_preimage
from .cohom import (
    Cochain1,
    CoeffHom,
    Coefficients,
    Cocycle2,
    Z,
    Z2,
    class_from_coords,
    cup11,
    d1,
    express_poly,
    h1,
    h2,
    homs_to,
    push,
    random_cocycle,
    restrict,
)
from .ext import (
    baer_sum,
    conj_action,
    equivalent,
    find_equivalence,
    from_cocycle,
    pullback,
    pushout,
    restrict_extension,
    to_class,
    to_cocycle,
    trivial_extension,
)
from .grp import FiniteGroup, GroupHom
from .swc import OrthogonalRep, defining_rep, det_character, lifting_report, precompose, w1

FAULTS = ("q8-sign",)


@dataclass(frozen=True)
class CheckResult:
    name: str
    anchor: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    @property
    def ok(self) -> bool:
        return self.passed and self.seconds < self.budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        late = "" if self.seconds < self.budget else " (over time budget)"
        return f"{status} {self.name} [{self.anchor}] {self.seconds:.2f}s/{self.budget:g}s{late}: {self.detail}"


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    budget: float
    fn: Callable[..., tuple[bool, str]]


# -- corpus ---------------------------------------------------------------------


def corpus() -> dict[str, FiniteGroup]:
    return {
        "C2": grp.cyclic(2),
        "C4": grp.cyclic(4),
        "Klein": grp.klein(),
        "Q8": grp.quaternion(),
        "D4": grp.dihedral(4),
    }


def _diag(*signs: int) -> qmat.Matrix:
    return qmat.diag(signs)


def gamma(n: int) -> tuple[FiniteGroup, list[qmat.Matrix]]:
    """The diagonal sign group of O(n)."""
    gens = tuple(_diag(*[-1 if j == i else 1 for j in range(n)]) for i in range(n))
    return grp.generate(grp.OrthSpec(n, gens))


def gamma_basis(mats: list[qmat.Matrix]) -> list[int]:
    n = len(mats[0])
    return [mats.index(_diag(*[-1 if j == i else 1 for j in range(n)])) for i in range(n)]


def signed_perm_group(n: int) -> tuple[FiniteGroup, list[qmat.Matrix]]:
    """The full signed permutation group B_n (order 2^n n!)."""
    gens = [_diag(*([-1] + [1] * (n - 1)))]
    if n > 1:
        gens.append(qmat.signed_permutation(list(range(1, n)) + [0], [1] * n))
        gens.append(qmat.signed_permutation([1, 0] + list(range(2, n)), [1] * n))
    return grp.generate(grp.OrthSpec(n, tuple(gens)), cap=2**n * math.factorial(n))


def orth_corpus() -> list[tuple[str, FiniteGroup, list[qmat.Matrix]]]:
    """Finite signed-permutation groups used for the Pin cocycle checks."""
    out = []
    for n in (2, 3, 4):
        G, m = gamma(n)
        out.append((f"Gamma{n}", G, m))
    G, m = signed_perm_group(2)
    out.append(("B2", G, m))
    rot = qmat.signed_permutation([1, 2, 0], [1, 1, 1])
    flip = qmat.signed_permutation([0, 2, 1], [-1, -1, -1])
    G, m = grp.generate(grp.OrthSpec(3, (rot, flip)))
    out.append(("S3xC2-in-O3", G, m))
    swap4 = qmat.signed_permutation([1, 0, 3, 2], [1, -1, 1, -1])
    neg = _diag(-1, 1, -1, 1)
    G, m = grp.generate(grp.OrthSpec(4, (swap4, neg)))
    out.append(("D4-in-O4", G, m))
    return out


def _all_classes(G: FiniteGroup, A: Coefficients):
    res = h2(G, A)
    for coords in itertools.product(*[range(o) for o in res.orders]):
        yield coords, class_from_coords(G, A, coords)


def _random_coboundary(G: FiniteGroup, A: Coefficients, rng: np.random.Generator) -> Cocycle2:
    vals = rng.integers(0, np.array(A.orders), size=(G.order, A.rank))
    vals[0] = 0
    return d1(Cochain1(G, A, vals))


def _subgroups(G: FiniteGroup) -> list[list[int]]:
    seen = set()
    for a, b in itertools.combinations_with_replacement(range(G.order), 2):
        seen.add(tuple(grp.closure(G, [a, b])))
    return [list(s) for s in sorted(seen, key=lambda s: (len(s), s))]


# -- checks ---------------------------------------------------------------------


def check_q8_restriction(rng: np.random.Generator, fault: str | None = None) -> tuple[bool, str]:
    Q = grp.quaternion()
    dim1 = h1(Q, Z2).dimension
    res = h2(Q, Z2)
    dim2 = res.dimension
    chars = h1(Q, Z2).basis
    cups = [linalg.bits_from_vector(cup11(a, b).coords()) for a in chars for b in chars]
    full = linalg.gf2_rank(cups) == dim2
    center = Q.center()
    mu2, inc = grp.subgroup(Q, center)
    killed = True
    for coords, x in _all_classes(Q, Z2):
        y = restrict(x, inc)
        if fault == "q8-sign":
            z = [k for k in range(mu2.order) if k != 0][0]
            vals = y.rep.values.copy()
            vals[z, z] ^= 1
            y = Cocycle2(mu2, Z2, vals).cls()
        killed &= y.is_zero()
    ok = dim1 == 2 and dim2 == 2 and full and killed and mu2.order == 2
    return ok, f"dim H1={dim1}, dim H2={dim2}, cups span H2={full}, restriction to center zero={killed}"


def check_gamma2_covers(rng: np.random.Generator, fault: str | None = None) -> tuple[bool, str]:
    G, mats = gamma(2)
    report = pin_cocycles(G, mats)
    basis = gamma_basis(mats)
    expected = {"plus": ("D4", "E2"), "minus": ("Q8", "E2+E1^2"), "tilde": ("C4xC2", "E1^2"), "trivial": ("C2^3", "0")}
    exts = {v: pin_preimage(G, mats, v, report) for v in expected}
    got = {v: (grp.identify(X.E), express_poly(to_class(X), basis).symmetric()) for v, X in exts.items()}
    distinct = all(not equivalent(exts[a], exts[b]) for a, b in itertools.combinations(expected, 2))
    ok = got == expected and distinct
    return ok, f"{got}, pairwise inequivalent={distinct}"


def check_alpha_injective(rng: np.random.Generator, fault: str | None = None) -> tuple[bool, str]:
    bad = 0
    pairs = 0
    for name, G in corpus().items():
        reps = []
        for coords, x in _all_classes(G, Z2):
            for _ in range(2):
                reps.append((coords, from_cocycle(G, Z2, x.rep + _random_coboundary(G, Z2, rng))))
        for (c1, X), (c2, Y) in itertools.product(reps, repeat=2):
            brute = find_equivalence(X, Y) is not None
            by_class = to_class(X) == to_class(Y)
            pairs += 1
            if brute != by_class or by_class != (c1 == c2):
                bad += 1
    return bad == 0, f"{pairs} pairs, {bad} disagreements"


def _coeff_maps() -> list[CoeffHom]:
    Z4 = Z(4)
    Z2Z2 = Coefficients((2, 2))
    return [
        CoeffHom(Z2, Z4, ((2,),)),
        CoeffHom(Z4, Z2, ((1,),)),
        CoeffHom(Z2, Z2, ((1,),)),
        CoeffHom(Z2, Z2, ((0,),)),
        CoeffHom(Z4, Z4, ((3,),)),
        CoeffHom(Z2, Z2Z2, ((1,), (1,))),
        CoeffHom(Z2Z2, Z2, ((1, 1),)),
    ]


def check_alpha_additive_natural(rng: np.random.Generator, fault: str | None = None) -> tuple[bool, str]:
    groups = list(corpus().values())
    baer_bad = 0
    for G in groups:
        for _ in range(100):
            f, g = random_cocycle(G, Z2, rng), random_cocycle(G, Z2, rng)
            S = baer_sum(from_cocycle(G, Z2, f), from_cocycle(G, Z2, g))
            if to_class(S, S.random_section(rng)) != (f + g).cls():
                baer_bad += 1
    homs = {(a, b): grp.all_homs(groups[a], groups[b]) for a in range(len(groups)) for b in range(len(groups))}
    keys = list(homs)

    def random_hom() -> GroupHom:
        k = keys[int(rng.integers(len(keys)))]
        hs = homs[k]
        return hs[int(rng.integers(len(hs)))]

    pull_bad = 0
    for _ in range(50):
        phi = random_hom()
        A = [Z2, Z(4)][int(rng.integers(2))]
        X = from_cocycle(phi.target, A, random_cocycle(phi.target, A, rng))
        if to_class(pullback(phi, X)) != restrict(to_class(X), phi):
            pull_bad += 1
    maps = _coeff_maps()
    comm_bad = 0
    for _ in range(50):
        phi = random_hom()
        psi = maps[int(rng.integers(len(maps)))]
        X = from_cocycle(phi.target, psi.source, random_cocycle(phi.target, psi.source, rng))
        left = pushout(psi, pullback(phi, X))
        right = pullback(phi, pushout(psi, X))
        if not equivalent(left, right) or to_class(pushout(psi, X)) != push(to_class(X), psi):
            comm_bad += 1
    ok = baer_bad == pull_bad == comm_bad == 0
    return ok, f"Baer failures {baer_bad}/500, pullback failures {pull_bad}/50, push/pull failures {comm_bad}/50"


def check_lifting_c2(rng: np.random.Generator, fault: str | None = None) -> tuple[bool, str]:
    C2 = grp.cyclic(2)
    minus = _diag(-1, -1)
    pi = OrthogonalRep(C2, 2, (_diag(1, 1), minus))
    rep = lifting_report(pi)
    want = {"tilde": True, "pin_plus": False, "pin_minus": False}
    Im, mats, phi = pi.image
    report = pin_cocycles(Im, mats)
    variants = {"tilde": "tilde", "pin_plus": "plus", "pin_minus": "minus"}
    splits = {}
    brute_counts = {}
    for name, v in variants.items():
        P = pullback(phi, pin_preimage(Im, mats, v, report))
        splits[name] = equivalent(P, trivial_extension(C2, Z2))
        X = pin_preimage(Im, mats, v, report)
        brute_counts[name] = sum(1 for s in grp.all_homs(C2, X.E) if X.p.compose(s).map == phi.map)
    n_chars = len(homs_to(C2, Z2))
    ok = (
        rep.verdicts == want
        and rep.preimages["pin_plus"] == rep.preimages["pin_minus"] == "C4"
        and not splits["pin_plus"] and not splits["pin_minus"] and splits["tilde"]
        and rep.counts["tilde"] == n_chars == 2 == brute_counts["tilde"]
        and brute_counts["pin_plus"] == brute_counts["pin_minus"] == 0
    )
    return ok, f"verdicts {rep.verdicts}, preimages {rep.preimages}, split {splits}, lift counts {rep.counts} (brute force {brute_counts})"


def random_signed_perm_rep(rng: np.random.Generator, groups: dict[str, FiniteGroup], _cache: dict = {}) -> OrthogonalRep:
    names = sorted(groups)
    G = groups[names[int(rng.integers(len(names)))]]
    n = int(rng.integers(1, 4))
    if n not in _cache:
        _cache[n] = signed_perm_group(n)
    B, mats = _cache[n]
    key = (G, n)
    if key not in _cache:
        _cache[key] = grp.all_homs(G, B)
    hs = _cache[key]
    phi = hs[int(rng.integers(len(hs)))]
    return precompose(defining_rep(B, mats), phi)


def check_w1_det(rng: np.random.Generator, fault: str | None = None) -> tuple[bool, str]:
    bad = 0
    for _ in range(20):
        pi = random_signed_perm_rep(rng, corpus())
        if w1(pi) != det_character(pi):
            bad += 1
    return bad == 0, f"{bad}/20 mismatches"


def _fuzz_ops(rng: np.random.Generator):
    groups = list(corpus().values())
    coeffs = [Z2, Z(4), Coefficients((2, 2)), Z(3)]
    orth = orth_corpus()
    maps = _coeff_maps()
    homs_cache: dict = {}

    def pick(seq):
        return seq[int(rng.integers(len(seq)))]

    def hom_into(G):
        src = pick(groups)
        key = (src, G)
        if key not in homs_cache:
            homs_cache[key] = grp.all_homs(src, G)
        return pick(homs_cache[key])

    def op_random():
        G, A = pick(groups), pick(coeffs)
        return [random_cocycle(G, A, rng)]

    def op_section():
        G, A = pick(groups), pick(coeffs)
        X = from_cocycle(G, A, random_cocycle(G, A, rng))
        return [to_cocycle(X, X.random_section(rng))]

    def op_baer():
        G, A = pick(groups), pick(coeffs[:2])
        S = baer_sum(*(from_cocycle(G, A, random_cocycle(G, A, rng)) for _ in range(2)))
        return [to_cocycle(S, S.random_section(rng))]

    def op_pullback():
        G, A = pick(groups), pick(coeffs)
        phi = hom_into(G)
        X = from_cocycle(G, A, random_cocycle(G, A, rng))
        P = pullback(phi, X)
        return [to_cocycle(P, P.random_section(rng)), restrict(random_cocycle(G, A, rng), phi).rep]

    def op_pushout():
        G, psi = pick(groups), pick(maps)
        X = from_cocycle(G, psi.source, random_cocycle(G, psi.source, rng))
        P = pushout(psi, X)
        return [to_cocycle(P, P.random_section(rng)), push(to_class(X), psi).rep]

    def op_cup():
        G = pick(groups)
        chars = homs_to(G, Z2)
        return [cup11(pick(chars), pick(chars)).rep]

    def op_conj():
        G = pick(groups)
        H = pick([s for s in _subgroups(G) if grp.is_normal(G, s)])
        _, inc = grp.subgroup(G, H)
        X = from_cocycle(G, Z2, random_cocycle(G, Z2, rng))
        Y = conj_action(int(rng.integers(G.order)), X, inc)
        return [to_cocycle(Y, Y.random_section(rng))]

    def op_pin():
        _, G, mats = pick(orth)
        r = pin_cocycles(G, mats, rng)
        return [r.f_plus, r.f_minus, r.f_tilde]

    return [op_random, op_section, op_baer, op_pullback, op_pushout, op_cup, op_conj, op_pin]


def check_cocycle_fuzz(rng: np.random.Generator, fault: str | None = None) -> tuple[bool, str]:
    ops = _fuzz_ops(rng)
    emitted = 0
    bad = 0
    for _ in range(1000):
        op = ops[int(rng.integers(len(ops)))]
        for f in op():
            emitted += 1
            if not (f.satisfies_identity() and f.is_normalized()):
                bad += 1
    variant_bad = 0
    for name, G, mats in orth_corpus():
        base = pin_cocycles(G, mats)
        for _ in range(3):
            r = pin_cocycles(G, mats, rng)
            for v in ("plus", "minus", "tilde"):
                if r.cocycle(v).cls() != base.cocycle(v).cls():
                    variant_bad += 1
    ok = bad == 0 and variant_bad == 0
    return ok, f"{emitted} cocycles from 1000 runs, {bad} invalid; {variant_bad} class changes under random words"


def check_conjugation(rng: np.random.Generator, fault: str | None = None) -> tuple[bool, str]:
    bad = 0
    tried = 0
    for name, G in corpus().items():
        normals = [s for s in _subgroups(G) if grp.is_normal(G, s)]
        for H in normals:
            _, inc = grp.subgroup(G, H)
            for _, x in _all_classes(G, Z2):
                X = from_cocycle(G, Z2, x.rep)
                base = to_class(restrict_extension(X, inc))
                for g in range(G.order):
                    tried += 1
                    Y = conj_action(g, X, inc)
                    if to_class(Y) != base:
                        bad += 1
                    elif len(H) == G.order and not equivalent(Y, restrict_extension(X, inc)):
                        bad += 1
    return bad == 0, f"{tried} conjugated restrictions, {bad} changed class"


CHECKS: tuple[Check, ...] = (
    Check("q8-restriction-zero", "restriction H2(Q8) -> H2(mu2) vanishes; H2 generated by cups", 1.0, check_q8_restriction),
    Check("gamma2-four-covers", "four inequivalent double covers of the diagonal group", 1.0, check_gamma2_covers),
    Check("alpha-injective", "extension classes determine extensions", 30.0, check_alpha_injective),
    Check("alpha-additive-natural", "Baer sum, pullback and pushout match class operations", 30.0, check_alpha_additive_natural),
    Check("lifting-2sign-c2", "lifting criteria for 2*sign of C2", 1.0, check_lifting_c2),
    Check("w1-equals-det", "w1 is the determinant character", 5.0, check_w1_det),
    Check("cocycle-fuzz", "emitted cochains are normalized 2-cocycles; Pin classes word independent", 60.0, check_cocycle_fuzz),
    Check("conjugation-invariance", "inner automorphisms fix restricted classes", 10.0, check_conjugation),
)


def names() -> list[str]:
    return [c.name for c in CHECKS]


def run_check(check: Check, seed: int = 0, fault: str | None = None) -> CheckResult:
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    try:
        passed, detail = check.fn(rng, fault)
    except Exception as exc:  # a crash is a failed check
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(check.name, check.anchor, bool(passed), detail, time.perf_counter() - start, check.budget)


def run_all(seed: int = 0, fault: str | None = None, only: list[str] | None = None) -> list[CheckResult]:
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    return [run_check(c, seed, fault) for c in CHECKS if only is None or c.name in only]
