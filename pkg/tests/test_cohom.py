import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pincohom import cohom, grp, linalg
from pincohom.cohom import (
    Cochain1,
    CoeffHom,
    Coefficients,
    CohomClass,
    Cocycle2,
    Z,
    Z2,
    class_eq,
    class_from_coords,
    cup11,
    d1,
    express_poly,
    h1,
    h2,
    homs_to,
    poly_class,
    push,
    random_cocycle,
    restrict,
)
from pincohom.errors import InputError, MismatchedAmbient, NonF2Coefficients, NotElementaryAbelian

from conftest import CORPUS

KLEIN_BASIS = [2, 1]  # (a, b) at 2a + b


def full_matrix_h2_order(G, q):
    """|H^2(G, Z/q)| from the complete d1 and d2 over every triple."""
    D1, D2 = cohom.coboundary_matrices(G)
    size = 1
    for p, e in linalg.factor_prime_powers(q):
        N2 = D1.shape[0]
        _, zexps = linalg.local_kernel(D2 if D2.shape[0] else np.zeros((1, N2), dtype=np.int64), p, e)
        image = linalg.local_snf(D1, p, e) if D1.size else None
        b = sum(e - v for v in image.vals) if image else 0
        size *= p ** (sum(zexps) - b)
    return size


def test_coefficients_validation():
    with pytest.raises(InputError):
        Coefficients((1,))
    A = Coefficients((2, 4))
    assert A.size == 8 and A.rank == 2
    assert A.decode(A.encode((1, 3))) == (1, 3)
    assert A.group.order == 8 and grp.identify(A.group) == "C4xC2"


def test_d1_examples():
    C2, C4 = grp.cyclic(2), grp.cyclic(4)
    assert d1(cohom.zero_cochain1(C4, Z2)) == cohom.zero_cocycle(C4, Z2)
    assert d1(Cochain1(C2, Z2, np.array([0, 1]))) == cohom.zero_cocycle(C2, Z2)
    # c is the character x -> 1, so the formula gives zero at every pair,
    # including (x, x^2): 1 + 0 - 1
    c = Cochain1(C4, Z2, np.array([0, 1, 0, 1]))
    f = d1(c)
    assert f(1, 1) == (0,) and f(1, 3) == (0,) and f(2, 2) == (0,) and f(1, 2) == (0,)
    assert c.is_homomorphism() and f == cohom.zero_cocycle(C4, Z2)
    c2 = Cochain1(C4, Z2, np.array([0, 1, 1, 0]))
    assert d1(c2)(1, 1) == (1,) and d1(c2)(1, 2) == (0,) and d1(c2)(2, 2) == (0,)
    for g, h in itertools.product(range(4), repeat=2):
        assert f(g, h)[0] == (c(g)[0] + c(h)[0] - c((g + h) % 4)[0]) % 2


def test_h1_examples(q8):
    assert h1(q8, Z2).dimension == 2
    assert h1(grp.cyclic(3), Z2).size == 1
    assert h1(grp.klein(), Z2).dimension == 2
    assert h1(grp.cyclic(4), Z(4)).orders == (4,)
    assert h1(grp.cyclic(6), Z(4)).orders == (2,)
    for c in h1(q8, Z2).basis:
        assert c.is_homomorphism()


@pytest.mark.parametrize("name,A,expected", [
    ("C2", Z2, (2,)),
    ("C2xC2", Z2, (2, 2, 2)),
    ("Q8", Z2, (2, 2)),
    ("D4", Z2, (2, 2, 2)),
    ("C3", Z2, ()),
    ("C4", Z(4), (4,)),
    ("C6", Z(6), (6,)),
    ("S3", Z2, (2,)),
    ("A4", Z2, (2,)),
    ("C4xC2", Z(4), (2, 2, 4)),
    ("C3xC3", Z(3), (3, 3, 3)),
    ("C1", Z2, ()),
])
def test_h2_invariant_factors(name, A, expected):
    G = grp.catalog()[name]
    assert h2(G, A).invariant_factors == expected


@pytest.mark.parametrize("name", ["C2", "C4", "C2xC2", "S3", "Q8", "D4", "C6", "C4xC2", "A4", "C2^3", "Dic3"])
@pytest.mark.parametrize("q", [2, 4, 3, 9])
def test_h2_order_matches_full_matrix_oracle(name, q):
    G = grp.catalog()[name]
    assert h2(G, Z(q)).size == full_matrix_h2_order(G, q)


def test_h2_local_path_agrees_with_gf2_path():
    for name in ["C2xC2", "Q8", "D4", "C2^3"]:
        G = grp.catalog()[name]
        assert cohom._LocalBlock(G, 2, 1).h2_exps == [1] * h2(G, Z2).dimension


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_d2_after_d1_is_zero(name):
    D1, D2 = cohom.coboundary_matrices(CORPUS[name])
    assert not (D2 @ D1).any()


def test_trivial_group_has_empty_bases():
    T = grp.cyclic(1)
    assert h2(T, Z2).basis == () and h1(T, Z(4)).basis == ()
    assert h2(T, Z2).size == 1


@given(st.sampled_from(["C4", "C2xC2", "Q8", "D4", "S3", "C4xC2"]), st.randoms(use_true_random=False))
def test_h2_isomorphism_invariant(name, rnd):
    G = grp.catalog()[name]
    rest = list(range(1, G.order))
    rnd.shuffle(rest)
    H = grp.relabel(G, [0] + rest)
    for A in (Z2, Z(4)):
        assert h2(H, A).invariant_factors == h2(G, A).invariant_factors


def test_class_eq_examples(rng):
    C2 = grp.cyclic(2)
    zero = cohom.zero_cocycle(C2, Z2)
    one = Cocycle2(C2, Z2, np.array([[0, 0], [0, 1]]))
    assert class_eq(one, one)
    assert not class_eq(zero, one)
    G = grp.dihedral(4)
    c = Cochain1(G, Z(4), np.r_[0, rng.integers(0, 4, G.order - 1)])
    assert class_eq(cohom.zero_cocycle(G, Z(4)), d1(c))
    with pytest.raises(MismatchedAmbient):
        class_eq(zero, cohom.zero_cocycle(C2, Z(4)))


def test_class_arithmetic_and_coords(corpus_group, rng):
    G = corpus_group
    res = h2(G, Z2)
    for coords in itertools.product(*[range(o) for o in res.orders]):
        x = class_from_coords(G, Z2, coords)
        assert x.coords() == coords
        y = CohomClass(x.rep + d1(Cochain1(G, Z2, np.r_[0, rng.integers(0, 2, G.order - 1)])))
        assert x == y and hash(x) == hash(y)
        assert (x + x).is_zero() and (x - y).is_zero()


def test_solve_coboundary(rng):
    G = grp.quaternion()
    A = Z(4)
    c = Cochain1(G, A, np.r_[0, rng.integers(0, 4, 7)][:, None])
    f = d1(c)
    c2 = cohom.solve_coboundary(f)
    assert d1(c2) == f


def test_restrict_examples(q8):
    G = grp.klein()
    x = cohom.restrict(class_from_coords(G, Z2, (1, 0, 1)), grp.identity_hom(G))
    assert x == class_from_coords(G, Z2, (1, 0, 1))
    _, inc = grp.subgroup(q8, [4])
    for coords in itertools.product(range(2), repeat=2):
        assert restrict(class_from_coords(q8, Z2, coords), inc).is_zero()
    v1v2 = poly_class(G, KLEIN_BASIS, {(0, 1): 1})
    assert not v1v2.is_zero()
    _, first = grp.subgroup(G, [KLEIN_BASIS[0]])
    assert restrict(v1v2, first).is_zero()
    with pytest.raises(MismatchedAmbient):
        restrict(v1v2, grp.identity_hom(q8))


def _random_hom(rnd, src, tgt):
    homs = grp.all_homs(src, tgt)
    return homs[rnd.randrange(len(homs))]


@given(st.lists(st.sampled_from(sorted(CORPUS)), min_size=3, max_size=3), st.randoms(use_true_random=False))
def test_restrict_functorial(names, rnd):
    G1, G2, G3 = (CORPUS[n] for n in names)
    psi, phi = _random_hom(rnd, G1, G2), _random_hom(rnd, G2, G3)
    rng = np.random.default_rng(rnd.randrange(2**32))
    for A in (Z2, Z(4)):
        x = CohomClass(random_cocycle(G3, A, rng))
        assert restrict(x, phi.compose(psi)) == restrict(restrict(x, phi), psi)


def test_cup_examples():
    C2 = grp.cyclic(2)
    zero, a = homs_to(C2, Z2)
    assert cup11(zero, a).is_zero()
    assert cup11(a, a) == CohomClass(Cocycle2(C2, Z2, np.array([[0, 0], [0, 1]])))
    V = grp.klein()
    v = cohom.basis_characters(V, KLEIN_BASIS)
    assert str(express_poly(cup11(v[0], v[1]), KLEIN_BASIS)) == "v1v2"
    with pytest.raises(NonF2Coefficients):
        cup11(Cochain1(C2, Z(4), np.array([0, 2])), Cochain1(C2, Z(4), np.array([0, 2])))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_cup_bilinear_and_commutative(name):
    G = CORPUS[name]
    chars = homs_to(G, Z2)
    for a, b, c in itertools.product(chars, repeat=3):
        assert cup11(a, b) == cup11(b, a)
        assert cup11(a + b, c) == cup11(a, c) + cup11(b, c)


def test_q8_cups_span_h2(q8):
    chars = h1(q8, Z2).basis
    coords = [linalg.bits_from_vector(cup11(a, b).coords()) for a in chars for b in chars]
    assert linalg.gf2_rank(coords) == h2(q8, Z2).dimension == 2


def test_express_poly_examples(gamma2):
    from pincohom.checks import gamma_basis
    from pincohom.cliff import pin_cocycles

    G, mats = gamma2
    basis = gamma_basis(mats)
    assert express_poly(cohom.zero_cocycle(G, Z2), basis).symmetric() == "0"
    r = pin_cocycles(G, mats)
    assert express_poly(r.f_plus, basis).symmetric() == "E2"
    d = cohom.Cochain1(G, Z2, np.array([len(w) % 2 for w in r.words]))
    px = express_poly(cup11(d, d), basis)
    assert px.as_dict() == {(0, 0): 1, (0, 1): 0, (1, 1): 1}
    assert px.symmetric() == "E1^2"


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_express_poly_roundtrip(rank):
    G = grp.elementary_abelian(2, rank)
    basis = [2**k for k in range(rank)]
    mons = cohom.monomials(rank)
    assert h2(G, Z2).dimension == len(mons)
    for bits in itertools.product(range(2), repeat=len(mons)):
        coeffs = dict(zip(mons, bits))
        assert express_poly(poly_class(G, basis, coeffs), basis).as_dict() == coeffs


def test_express_poly_needs_elementary_abelian(q8):
    with pytest.raises(NotElementaryAbelian):
        express_poly(cohom.zero_cocycle(q8, Z2), [1, 2])


def test_push_along_coefficient_maps():
    C2 = grp.cyclic(2)
    one = CohomClass(Cocycle2(C2, Z2, np.array([[0, 0], [0, 1]])))
    up = CoeffHom(Z2, Z(4), ((2,),))
    pushed = push(one, up)
    # f(x, x) = 2 is the coboundary of c(x) = 1 over Z/4
    assert pushed.coeffs == Z(4) and pushed.is_zero()
    gen = CohomClass(Cocycle2(C2, Z(4), np.array([[0, 0], [0, 1]])[:, :, None]))
    assert not gen.is_zero()
    assert push(gen, CoeffHom(Z(4), Z2, ((1,),))) == one
    assert push(one, CoeffHom(Z2, Z2, ((0,),))).is_zero()
    with pytest.raises(InputError):
        CoeffHom(Z(4), Z(3), ((1,),))


@given(st.sampled_from(sorted(CORPUS)), st.sampled_from([2, 4, 3, 6]), st.integers(0, 2**32 - 1))
def test_random_cocycles_valid(name, m, seed):
    f = random_cocycle(CORPUS[name], Z(m), np.random.default_rng(seed))
    assert f.is_normalized() and f.satisfies_identity()


def test_invalid_cocycle_detected():
    C2 = grp.cyclic(2)
    f = Cocycle2(C2, Z2, np.array([[0, 1], [0, 0]]))
    assert not f.is_valid()
    C3 = grp.cyclic(3)
    g = Cocycle2(C3, Z(3), np.array([[0, 0, 0], [0, 1, 0], [0, 0, 0]]))
    assert g.is_normalized() and not g.satisfies_identity()


def test_free_forms_reproduce_cocycles():
    G = grp.direct_product(grp.dihedral(4), grp.cyclic(2))
    A = Z(4)
    rng = np.random.default_rng(3)
    L = cohom._free_forms(G, 4)
    block = cohom._block(G, 2, 2)
    for _ in range(5):
        f = random_cocycle(G, A, rng)
        vec = f.values[1:, 1:, 0].reshape(-1)
        u = vec[block._free]
        assert (L[1:, 1:].reshape(-1, len(u)) @ u % 4 == vec).all()


def test_compressed_constraints_match_full_elimination():
    G = grp.direct_product(grp.quaternion(), grp.cyclic(4))
    L = cohom._free_forms(G, 8)
    R = cohom._free_constraints(G, L, 8)
    U = L.shape[-1]
    assert len(R) > 2 * U + 32
    vals, _, _ = cohom._local_cycle_basis(R, 2, 3, U)
    assert vals == linalg.local_snf(R, 2, 3).vals


def test_noncocycle_rejected_in_free_coordinates():
    G = grp.cyclic(6)
    f = Cocycle2(G, Z(9), np.zeros((6, 6, 1), dtype=np.int64))
    vals = f.values.copy()
    vals[5, 5, 0] = 1
    with pytest.raises(InputError):
        cohom._block(G, 3, 2).h2_coords(vals[1:, 1:, 0].reshape(-1))


@pytest.mark.parametrize("m", [4, 6])
def test_order_64_is_fast(m):
    import time

    G = grp.direct_product(grp.quaternion(), grp.dihedral(4))
    cohom._block.cache_clear()
    t = time.perf_counter()
    res = h2(G, Z(m))
    assert time.perf_counter() - t < 30
    assert res.orders == (2,) * 9
