"""Exact Clifford algebra of Q^n with the standard form, and Pin cocycles.

Basis monomials e_S are bitmasks (bit i is e_{i+1}) multiplied in increasing
index order. With e_i e_i = 1 and e_i e_j = -e_j e_i the product of two
monomials is a signed monomial.

A word v_1 ... v_k of nonzero vectors maps to the orthogonal transformation
r_{v_1} ∘ ... ∘ r_{v_k}. Normalizing every v by sqrt(Q(v)) gives the Pin+
lift of that element; the sign comparison below never takes the root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import qmat
from .cohom import Cocycle2, Z2
from .ext import CentralExtension, from_cocycle
from .errors import DimensionMismatch, NotOrthogonal, ScalarMismatch
from .grp import FiniteGroup


class GaussQ:
    """Gaussian rational a + b i with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x) -> "GaussQ":
        return x if isinstance(x, GaussQ) else GaussQ(x)

    def __add__(self, other):
        o = self._lift(other)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        n = o.re * o.re + o.im * o.im
        return GaussQ((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussQ(other)
        if not isinstance(other, GaussQ):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"


I = GaussQ(0, 1)


def blade_sign(a: int, b: int) -> int:
    """Sign of e_a e_b = ± e_{a xor b}: parity of the transpositions needed."""
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


class CliffordElement:
    """Sparse element of C(Q^n): mapping from monomial bitmask to scalar."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[int, object] | None = None):
        self.dim = dim
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        for m in self.terms:
            if m >> dim:
                raise DimensionMismatch(f"monomial {m:b} exceeds dimension {dim}")

    @classmethod
    def scalar(cls, dim: int, c=1) -> "CliffordElement":
        return cls(dim, {0: c})

    @classmethod
    def basis(cls, dim: int, i: int) -> "CliffordElement":
        """e_i for 1 <= i <= dim."""
        return cls(dim, {1 << (i - 1): 1})

    @classmethod
    def blade(cls, dim: int, indices: Sequence[int]) -> "CliffordElement":
        out = cls.scalar(dim)
        for i in indices:
            out = out * cls.basis(dim, i)
        return out

    @classmethod
    def vector(cls, v: Sequence) -> "CliffordElement":
        return cls(len(v), {1 << i: x for i, x in enumerate(v)})

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return cl_mul(self, other)
        return CliffordElement(self.dim, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other):
        return CliffordElement(self.dim, {m: other * c for m, c in self.terms.items()})

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        _check_dim(self, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return CliffordElement(self.dim, out)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            name = "".join(f"e{i + 1}" for i in range(self.dim) if (m >> i) & 1) or "1"
            parts.append(f"({self.terms[m]}){name}")
        return " + ".join(parts)

    def ratio_to(self, other: "CliffordElement"):
        """The scalar lam with self == lam * other; ScalarMismatch if none exists."""
        _check_dim(self, other)
        if not other.terms or self.terms.keys() != other.terms.keys():
            raise ScalarMismatch("elements are not proportional")
        m = next(iter(other.terms))
        a, b = self.terms[m], other.terms[m]
        lam = a / b if isinstance(a, GaussQ) or isinstance(b, GaussQ) else Fraction(a) / Fraction(b)
        if any(self.terms[k] != lam * c for k, c in other.terms.items()):
            raise ScalarMismatch("elements are not proportional")
        return lam


def _check_dim(x: CliffordElement, y: CliffordElement) -> None:
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimensions {x.dim} and {y.dim} differ")


def cl_mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    _check_dim(x, y)
    out: dict[int, object] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            m = a ^ b
            c = ca * cb
            out[m] = out.get(m, 0) + (c if blade_sign(a, b) > 0 else -c)
    return CliffordElement(x.dim, out)


# -- reflections ------------------------------------------------------------------


ReflectionWord = tuple[tuple[int, ...], ...]


def _primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = math.lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * den) for x in v]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return tuple(-x for x in ints) if lead < 0 else tuple(ints)


def reflection_matrix(v: Sequence) -> qmat.Matrix:
    """r_v(x) = x - 2 (x·v)/(v·v) v."""
    v = [Fraction(x) for x in v]
    q = sum(x * x for x in v)
    n = len(v)
    return tuple(tuple(Fraction(int(i == j)) - 2 * v[i] * v[j] / q for j in range(n)) for i in range(n))


def word_matrix(word: ReflectionWord, dim: int) -> qmat.Matrix:
    out = qmat.identity(dim)
    for v in word:
        out = qmat.matmul(out, reflection_matrix(v))
    return out


def reflect_decompose(g: qmat.Matrix, rng: np.random.Generator | None = None) -> ReflectionWord:
    """Vectors v_1..v_k (k <= n) with g = r_{v_1} ∘ ... ∘ r_{v_k}.

    Each step takes the lowest index i with h e_i != e_i and reflects in
    v = h e_i - e_i, which sends h e_i to e_i and fixes every e_j already
    fixed. Vectors are scaled to primitive integers with positive leading
    entry. With ``rng`` the index and the sign of each vector are random.
    """
    n = len(g)
    if not qmat.is_orthogonal(g):
        raise NotOrthogonal("matrix is not orthogonal")
    h = g
    word = []
    while True:
        moved = [i for i in range(n) if any(h[r][i] != (r == i) for r in range(n))]
        if not moved:
            break
        i = moved[0] if rng is None else int(rng.choice(moved))
        v = [h[r][i] - (r == i) for r in range(n)]
        v = _primitive(v)
        if rng is not None and rng.integers(2):
            v = tuple(-x for x in v)
        word.append(v)
        h = qmat.matmul(reflection_matrix(v), h)
    return tuple(word)


def word_element(word: ReflectionWord, dim: int, scalar=1) -> CliffordElement:
    """Clifford product of the word's vectors, each multiplied by ``scalar``."""
    out = CliffordElement.scalar(dim)
    for v in word:
        out = cl_mul(out, CliffordElement.vector([scalar * x for x in v]))
    return out


# -- Pin cocycles -------------------------------------------------------------------


VARIANTS = ("plus", "minus", "tilde", "trivial")


@dataclass(frozen=True, eq=False)
class PinCocycleReport:
    """Z/2 cocycles of the Pin+, Pin- and Õ covers restricted to a finite group."""

    f_plus: Cocycle2
    f_minus: Cocycle2
    f_tilde: Cocycle2
    words: tuple[ReflectionWord, ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.words)

    def cocycle(self, variant: str) -> Cocycle2:
        if variant == "trivial":
            return Cocycle2(self.f_plus.group, Z2, np.zeros_like(self.f_plus.values))
        return {"plus": self.f_plus, "minus": self.f_minus, "tilde": self.f_tilde}[_variant(variant)]


def _variant(name: str) -> str:
    aliases = {"+": "plus", "-": "minus", "pin+": "plus", "pin-": "minus", "pin_plus": "plus",
               "pin_minus": "minus", "otilde": "tilde", "~": "tilde", "0": "trivial"}
    name = aliases.get(name, name)
    if name not in VARIANTS:
        raise ValueError(f"unknown variant {name!r}; choose from {VARIANTS}")
    return name


def pin_cocycles(G: FiniteGroup, mats: Sequence[qmat.Matrix], rng: np.random.Generator | None = None) -> PinCocycleReport:
    """Cocycles of the three nontrivial double covers on a finite orthogonal group.

    ``mats[g]`` realizes element g. The Pin+ sign comes from comparing the
    product of the words of g and h with the word of gh; Pin- adds the phase
    i^(k_g + k_h - k_gh) of antiunit lifts; Õ uses the section z_g in {1, i}.
    """
    n = G.order
    dim = len(mats[0])
    if mats[0] != qmat.identity(dim):
        raise ValueError("element 0 must be realized by the identity matrix")
    words = tuple(reflect_decompose(m, rng) for m in mats)
    elems = [word_element(w, dim) for w in words]
    k = np.array([len(w) for w in words], dtype=np.int64)
    plus = np.zeros((n, n), dtype=np.int64)
    t = G.table
    for g in range(n):
        for h in range(n):
            lam = cl_mul(elems[g], elems[h]).ratio_to(elems[t[g][h]])
            plus[g, h] = 0 if lam > 0 else 1
    exponent = k[:, None] + k[None, :] - k[G.mul]
    if (exponent % 2).any():
        raise ScalarMismatch("word lengths are inconsistent with determinants")
    minus = (plus + exponent // 2) % 2
    det_bit = k % 2
    tilde = det_bit[:, None] * det_bit[None, :]
    return PinCocycleReport(
        Cocycle2(G, Z2, plus), Cocycle2(G, Z2, minus), Cocycle2(G, Z2, tilde), words
    )


def pin_preimage(G: FiniteGroup, mats: Sequence[qmat.Matrix], variant: str = "plus", report: PinCocycleReport | None = None) -> CentralExtension:
    """The restriction of the chosen double cover to G, as a central extension by Z/2."""
    report = report or pin_cocycles(G, mats)
    return from_cocycle(G, Z2, report.cocycle(_variant(variant)))
