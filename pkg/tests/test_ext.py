import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pincohom import cohom, ext, grp
from pincohom.checks import gamma_basis
from pincohom.cliff import pin_preimage
from pincohom.cohom import CoeffHom, Cocycle2, Z, Z2, class_from_coords, express_poly, random_cocycle, restrict
from pincohom.errors import InvalidCocycle, InvalidExtension, MismatchedAmbient, NotNormal
from pincohom.ext import (
    CentralExtension,
    baer_sum,
    conj_action,
    decide_lift,
    equivalent,
    find_equivalence,
    from_cocycle,
    pullback,
    pushout,
    to_class,
    to_cocycle,
    trivial_extension,
)
from pincohom.grp import GroupHom

from conftest import CORPUS

C2 = grp.cyclic(2)
NONSPLIT = Cocycle2(C2, Z2, np.array([[0, 0], [0, 1]]))


def c4_over_c2():
    return from_cocycle(C2, Z2, NONSPLIT)


def test_from_cocycle_examples(gamma2):
    X = trivial_extension(C2, Z2)
    assert grp.identify(X.E) == "C2xC2"
    assert grp.is_isomorphic(X.E, grp.direct_product(Z2.group, C2))
    assert grp.identify(c4_over_c2().E) == "C4"
    G, mats = gamma2
    assert grp.identify(pin_preimage(G, mats, "minus").E) == "Q8"
    with pytest.raises(InvalidCocycle):
        from_cocycle(C2, Z2, Cocycle2(C2, Z2, np.array([[0, 1], [0, 0]])))
    with pytest.raises(MismatchedAmbient):
        from_cocycle(C2, Z(4), NONSPLIT)


def test_extension_validation():
    S3 = grp.dihedral(3)  # rotations (a, 0) at 2a
    p = GroupHom(S3, C2, tuple(g % 2 for g in range(6)))
    i = GroupHom(Z(3).group, S3, (0, 2, 4))
    with pytest.raises(InvalidExtension, match="central"):
        CentralExtension(S3, Z(3), i, p)
    C4 = grp.cyclic(4)
    with pytest.raises(InvalidExtension):
        CentralExtension(C4, Z2, GroupHom(Z2.group, C4, (0, 2)), GroupHom(C4, C2, (0, 0, 0, 0)))


def test_to_class_examples(q8):
    assert to_class(trivial_extension(grp.dihedral(4), Z2)).is_zero()
    assert to_class(c4_over_c2()) == NONSPLIT.cls()
    K, proj = grp.quotient(q8, [0, 4])
    X = CentralExtension(q8, Z2, GroupHom(Z2.group, q8, (0, 4)), proj)
    basis = [g for g in range(1, 4)][:2]
    assert express_poly(to_class(X), basis).symmetric() == "E2+E1^2"


@pytest.mark.parametrize("name", sorted(CORPUS))
@pytest.mark.parametrize("m", [2, 4])
def test_roundtrip_and_section_independence(name, m, rng):
    G = CORPUS[name]
    A = Z(m)
    f = random_cocycle(G, A, rng)
    X = from_cocycle(G, A, f)
    assert to_class(X) == f.cls()
    assert to_cocycle(X) == f  # least-index section is (0, g)
    classes = {to_class(X, X.random_section(rng)).coords() for _ in range(100)}
    assert classes == {f.cls().coords()}


def test_equivalent_examples(gamma2):
    X = c4_over_c2()
    assert equivalent(X, X)
    assert not equivalent(X, trivial_extension(C2, Z2))
    assert find_equivalence(X, trivial_extension(C2, Z2)) is None
    G, mats = gamma2
    assert not equivalent(pin_preimage(G, mats, "plus"), pin_preimage(G, mats, "minus"))


def test_equivalence_witness_commutes(rng):
    G = grp.dihedral(4)
    f = random_cocycle(G, Z2, rng)
    X = from_cocycle(G, Z2, f)
    Y = from_cocycle(G, Z2, f + cohom.d1(cohom.Cochain1(G, Z2, np.r_[0, rng.integers(0, 2, 7)])))
    phi = find_equivalence(X, Y)
    assert phi is not None
    assert Y.p.compose(phi).map == X.p.map
    assert phi.compose(X.i).map == Y.i.map


def test_baer_sum_examples(gamma2):
    X = c4_over_c2()
    assert equivalent(baer_sum(X, trivial_extension(C2, Z2)), X)
    S = baer_sum(X, X)
    assert to_class(S).is_zero() and grp.identify(S.E) == "C2xC2"
    G, mats = gamma2
    plus, tilde, minus = (pin_preimage(G, mats, v) for v in ("plus", "tilde", "minus"))
    assert equivalent(baer_sum(plus, tilde), minus)
    assert grp.identify(baer_sum(plus, tilde).E) == "Q8"


@given(st.sampled_from(sorted(CORPUS)), st.sampled_from([2, 4]), st.integers(0, 2**32 - 1))
def test_baer_sum_additive(name, m, seed):
    rng = np.random.default_rng(seed)
    G, A = CORPUS[name], Z(m)
    f, g = random_cocycle(G, A, rng), random_cocycle(G, A, rng)
    S = baer_sum(from_cocycle(G, A, f), from_cocycle(G, A, g))
    assert S.E.order == A.size * G.order
    assert to_class(S, S.random_section(rng)) == (f + g).cls()


def test_pullback_examples(gamma2):
    X = c4_over_c2()
    assert equivalent(pullback(grp.identity_hom(C2), X), X)
    T = grp.cyclic(1)
    P = pullback(grp.trivial_hom(T, C2), X)
    assert P.G.order == 1 and P.E.order == 2 and to_class(P).is_zero()
    G, mats = gamma2
    basis = gamma_basis(mats)
    diagonal = G.prod(*basis)
    _, inc = grp.subgroup(G, [diagonal])
    P = pullback(inc, pin_preimage(G, mats, "plus"))
    assert not to_class(P).is_zero()
    assert grp.identify(P.E) == "C4"


@given(st.sampled_from(sorted(CORPUS)), st.sampled_from(sorted(CORPUS)), st.integers(0, 2**32 - 1))
def test_pullback_natural(src, tgt, seed):
    rng = np.random.default_rng(seed)
    homs = grp.all_homs(CORPUS[src], CORPUS[tgt])
    phi = homs[int(rng.integers(len(homs)))]
    for A in (Z2, Z(4)):
        X = from_cocycle(phi.target, A, random_cocycle(phi.target, A, rng))
        assert to_class(pullback(phi, X)) == restrict(to_class(X), phi)


def test_pushout_examples():
    X = c4_over_c2()
    assert equivalent(pushout(CoeffHom(Z2, Z2, ((1,),)), X), X)
    Z4 = Z(4)
    assert to_class(pushout(CoeffHom(Z2, Z4, ((0,),)), X)).is_zero()
    P = pushout(CoeffHom(Z2, Z4, ((2,),)), X)
    assert P.E.order == 8
    assert to_class(P) == cohom.push(to_class(X), CoeffHom(Z2, Z4, ((2,),)))
    assert grp.identify(P.E) == "C4xC2"
    # a nonzero pushed class: Z/4 -> Z/2 reduction of the generator of H^2(C2, Z/4)
    gen = from_cocycle(C2, Z4, Cocycle2(C2, Z4, np.array([[0, 0], [0, 1]])))
    R = pushout(CoeffHom(Z4, Z2, ((1,),)), gen)
    assert to_class(R) == NONSPLIT.cls() and grp.identify(R.E) == "C4"
    with pytest.raises(MismatchedAmbient):
        pushout(CoeffHom(Z4, Z2, ((1,),)), X)


@given(st.sampled_from(sorted(CORPUS)), st.sampled_from(sorted(CORPUS)), st.integers(0, 2**32 - 1))
def test_pushout_pullback_commute(src, tgt, seed):
    rng = np.random.default_rng(seed)
    homs = grp.all_homs(CORPUS[src], CORPUS[tgt])
    phi = homs[int(rng.integers(len(homs)))]
    maps = [CoeffHom(Z2, Z(4), ((2,),)), CoeffHom(Z(4), Z2, ((1,),)), CoeffHom(Z(4), Z(4), ((3,),))]
    psi = maps[int(rng.integers(len(maps)))]
    X = from_cocycle(phi.target, psi.source, random_cocycle(phi.target, psi.source, rng))
    assert equivalent(pushout(psi, pullback(phi, X)), pullback(phi, pushout(psi, X)), oracle=False)


def test_decide_lift_examples():
    C4 = grp.cyclic(4)
    T = trivial_extension(C2, Z2)
    r = decide_lift(grp.hom(C4, C2, {1: 1}), T)
    assert r.lifts and r.obstruction is None and r.count == 2 == len(r.all_lifts)
    r = decide_lift(grp.identity_hom(C2), c4_over_c2())
    assert not r.lifts and r.obstruction == NONSPLIT.cls() and r.witness is None and r.count == 0
    X = c4_over_c2()
    phi = grp.hom(C4, C2, {1: 1})
    r = decide_lift(phi, X)
    assert r.lifts and r.count == 2
    assert X.E.element_orders[r.witness(1)] == 4
    brute = [s for s in grp.all_homs(C4, X.E) if X.p.compose(s).map == phi.map]
    assert sorted(s.map for s in brute) == sorted(s.map for s in r.all_lifts)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_lift_count_matches_brute_force(name, rng):
    G = CORPUS[name]
    Q = grp.quaternion()
    for phi in grp.all_homs(G, Q)[:6]:
        for coords in itertools.product(range(2), repeat=2):
            X = from_cocycle(Q, Z2, class_from_coords(Q, Z2, coords).rep)
            r = decide_lift(phi, X)
            brute = [s for s in grp.all_homs(G, X.E) if X.p.compose(s).map == phi.map]
            assert r.lifts == bool(brute)
            assert r.count == len(brute) if r.lifts else not brute


def test_conj_action_examples(q8):
    X = from_cocycle(q8, Z2, class_from_coords(q8, Z2, (1, 1)).rep)
    _, inc = grp.subgroup(q8, [2])  # <i>
    base = ext.restrict_extension(X, inc)
    assert to_cocycle(conj_action(0, X, inc)) == to_cocycle(base)
    for coords in itertools.product(range(2), repeat=2):
        Y = from_cocycle(q8, Z2, class_from_coords(q8, Z2, coords).rep)
        assert to_class(conj_action(1, Y, inc)) == to_class(ext.restrict_extension(Y, inc))
    D4 = grp.dihedral(4)
    full = grp.identity_hom(D4)
    for coords in itertools.product(range(2), repeat=3):
        Y = from_cocycle(D4, Z2, class_from_coords(D4, Z2, coords).rep)
        for g in range(D4.order):
            assert equivalent(conj_action(g, Y, full), Y)
    _, refl = grp.subgroup(D4, [1])
    with pytest.raises(NotNormal):
        conj_action(0, trivial_extension(D4, Z2), refl)


def test_alpha_injective_small():
    for G in (C2, grp.klein()):
        exts = [from_cocycle(G, Z2, x.rep) for _, x in
                ((c, class_from_coords(G, Z2, c)) for c in itertools.product(range(2), repeat=h2(G).dimension))]
        for X, Y in itertools.product(exts, repeat=2):
            assert (find_equivalence(X, Y) is not None) == (to_class(X) == to_class(Y))


def h2(G):
    return cohom.h2(G, Z2)
