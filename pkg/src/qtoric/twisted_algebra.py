"""Cocycle-twisted semigroup algebras and their quantum-torus geometry.

Elements are finite sums of monomials X^s with invertible-ring coefficients;
the product is X^s X^t = alpha(s, t) X^(s+t) extended bilinearly.  The module
also builds the left twisting system that recovers the algebra from its
commutative degeneration, the full quantum-torus embedding, and facet
localizations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, PreconditionError, SizeLimitError, VerificationError
from .lattice_geometry import Facet, IntVec, as_vec, is_zero, vadd, vneg, zero_vec
from .scalars_cocycles import Cocycle, Scalar, ScalarMonomial, commutation_matrix
from .semigroups import (AffineSemigroup, FacetSemigroup, elements_by_degree,
                         facet_subsemigroup)


class TwistedElement:
    """Finite k-linear combination of monomials X^s, s in Z^(n+1).

    Canonical: zero coefficients are dropped, so equality is structural.
    Addition is cocycle-free; multiplication lives on the algebra.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[IntVec, Scalar | ScalarMonomial | int]):
        canon: dict[IntVec, Scalar] = {}
        for s, c in terms.items():
            c = Scalar.of(c)
            if not c.is_zero():
                canon[as_vec(s)] = c
        self.terms = dict(sorted(canon.items()))

    @staticmethod
    def zero() -> "TwistedElement":
        return TwistedElement({})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> tuple[IntVec, ...]:
        return tuple(self.terms)

    def coefficient(self, s: Sequence[int]) -> Scalar:
        return self.terms.get(as_vec(s), Scalar.zero())

    def __add__(self, other: "TwistedElement") -> "TwistedElement":
        acc = dict(self.terms)
        for s, c in other.terms.items():
            acc[s] = acc.get(s, Scalar.zero()) + c
        return TwistedElement(acc)

    def __neg__(self) -> "TwistedElement":
        return TwistedElement({s: -c for s, c in self.terms.items()})

    def __sub__(self, other: "TwistedElement") -> "TwistedElement":
        return self + (-other)

    def scale(self, c) -> "TwistedElement":
        c = Scalar.of(c)
        return TwistedElement({s: c * v for s, v in self.terms.items()})

    def leading_term(self) -> tuple[Scalar, IntVec]:
        """The lexicographically maximal term (coefficient, exponent)."""
        if self.is_zero():
            raise ValueError("zero element has no leading term")
        s = max(self.terms)
        return self.terms[s], s

    def __eq__(self, other) -> bool:
        return isinstance(other, TwistedElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for s in sorted(self.terms, reverse=True):
            c = self.terms[s]
            mono = f"X{list(s)}"
            if c == Scalar.of(1):
                parts.append(mono)
            elif c.is_monomial():
                parts.append(f"{c}*{mono}")
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


class TwistedAlgebra:
    """k^alpha[S]: monomials indexed by a semigroup, product twisted by alpha.

    ``domain`` is an AffineSemigroup, a FacetSemigroup, or None for the full
    quantum torus on Z^dim.  Supports of operands are validated against the
    domain on every product.
    """

    def __init__(self, domain: AffineSemigroup | FacetSemigroup | None,
                 cocycle: Cocycle, dim: int | None = None):
        if domain is not None:
            dim = domain.ambient_dim
        if dim is None:
            raise DimensionError("torus algebra needs an explicit dimension")
        if cocycle.dim != dim:
            raise DimensionError(
                f"cocycle on Z^{cocycle.dim} cannot twist a dimension-{dim} algebra")
        self.domain = domain
        self.cocycle = cocycle
        self.dim = dim

    def __repr__(self) -> str:
        kind = "torus" if self.domain is None else repr(self.domain)
        return f"TwistedAlgebra({kind}, params={list(self.cocycle.params)})"

    def in_domain(self, s: Sequence[int]) -> bool:
        if self.domain is None:
            return len(s) == self.dim
        if isinstance(self.domain, FacetSemigroup):
            return self.domain.contains(s)
        return self.domain.contains(s)

    def _check_support(self, x: TwistedElement) -> None:
        for s in x.terms:
            if len(s) != self.dim:
                raise DimensionError(f"monomial X{list(s)} has wrong dimension")
            if not self.in_domain(s):
                raise PreconditionError(
                    f"support vector {list(s)} lies outside the monomial domain",
                    certificate=s)

    def monomial(self, s: Sequence[int], coeff=1) -> TwistedElement:
        x = TwistedElement({as_vec(s): Scalar.of(coeff)})
        self._check_support(x)
        return x

    def one(self) -> TwistedElement:
        return self.monomial(zero_vec(self.dim))

    def generators(self) -> list[TwistedElement]:
        if self.domain is None or isinstance(self.domain, FacetSemigroup):
            raise PreconditionError("generator monomials need an affine semigroup domain")
        return [self.monomial(g) for g in self.domain.generators]

    def product(self, x: TwistedElement, y: TwistedElement) -> TwistedElement:
        self._check_support(x)
        self._check_support(y)
        acc: dict[IntVec, Scalar] = {}
        for s, cx in x.terms.items():
            for t, cy in y.terms.items():
                st = vadd(s, t)
                c = cx * cy * Scalar.of(self.cocycle(s, t))
                acc[st] = acc.get(st, Scalar.zero()) + c
        return TwistedElement(acc)

    def power(self, x: TwistedElement, k: int) -> TwistedElement:
        if k < 0:
            x, k = self.monomial_inverse(x), -k
        out = self.one()
        for _ in range(k):
            out = self.product(out, x)
        return out

    def monomial_inverse(self, x: TwistedElement) -> TwistedElement:
        """Inverse of a single invertible monomial: requires -s in the domain."""
        if len(x.terms) != 1:
            raise PreconditionError("only single monomials are invertible")
        (s, c), = x.terms.items()
        if not c.is_monomial():
            raise PreconditionError("coefficient is not an invertible monomial")
        neg = vneg(s)
        if not self.in_domain(neg):
            raise PreconditionError(
                f"X{list(neg)} is outside the monomial domain; not invertible here")
        coeff = c.as_monomial().inverse() * self.cocycle(s, neg).inverse()
        return self.monomial(neg, coeff)

    def contains(self, x: TwistedElement) -> bool:
        """Whether every support vector belongs to the monomial domain."""
        return all(self.in_domain(s) for s in x.terms)

    def torus(self) -> "TwistedAlgebra":
        return TwistedAlgebra(None, self.cocycle, self.dim)

    # -- twisting system -----------------------------------------------------

    def twisting_system(self, axiom_bound: int = 3,
                        product_bound: int = 5) -> "TwistingSystem":
        """The left twisting system tau with tau_t(X^s) = alpha(s, t) X^s.

        Verifies, on monomials of total degree <= the bounds, both the
        twisting-system axiom and that the twisted commutative product
        reproduces this algebra's product; failures raise VerificationError.
        """
        if self.domain is None or isinstance(self.domain, FacetSemigroup):
            raise PreconditionError("twisting systems are built over semigroup algebras")
        system = TwistingSystem(self.cocycle, self.dim)
        degrees = _degree_list(self.domain, max(axiom_bound, product_bound))
        small = [s for s in degrees if sum(s) <= axiom_bound]
        for g, gp, gpp in itertools.product(small, repeat=3):
            lhs = self.cocycle(g, gp) * self.cocycle(vadd(g, gp), gpp)
            rhs = self.cocycle(gp, gpp) * self.cocycle(g, vadd(gp, gpp))
            if lhs != rhs:
                raise VerificationError(
                    f"twisting-system axiom fails at degrees {g}, {gp}, {gpp}")
        for s, t in itertools.combinations_with_replacement(degrees, 2):
            for a, b in ((s, t), (t, s)):
                if sum(a) + sum(b) > product_bound:
                    continue
                twisted = system.twisted_product(self.monomial(a), self.monomial(b))
                direct = self.product(self.monomial(a), self.monomial(b))
                if twisted != direct:
                    raise VerificationError(
                        f"twisted product disagrees with the algebra at {a}, {b}")
        return system

    # -- quantum torus embedding ---------------------------------------------

    def torus_embedding(self, search_degree: int = 10) -> "TorusEmbedding":
        """Embed A into a quantum torus on Y_0..Y_n, one Y per lattice direction.

        Requires a full semigroup.  For each standard basis vector e_i a pair
        s_i, t_i in S with s_i - t_i = e_i is found by bounded search, and
        Y_i = X^(s_i) (X^(t_i))^(-1).  Returns the exact commutation matrix of
        the Y's and, per generator g, the scalar with X^g = scalar * Y^g.
        """
        if self.domain is None or isinstance(self.domain, FacetSemigroup):
            raise PreconditionError("torus embedding starts from a semigroup algebra")
        s_gp = self.domain
        if not s_gp.is_full():
            raise PreconditionError(
                f"semigroup group of fractions has rank {s_gp.rank} inside "
                f"Z^{s_gp.ambient_dim} or is a proper sublattice; embed fully first",
                certificate=s_gp.group)
        torus = self.torus()
        dim = self.dim
        elements = sorted(v for layer in
                          elements_by_degree(s_gp, search_degree).values() for v in layer) \
            if s_gp.positive else None
        pairs: list[tuple[IntVec, IntVec]] = []
        for i in range(dim):
            e_i = tuple(int(j == i) for j in range(dim))
            found = None
            candidates = elements if elements is not None else \
                sorted(_signed_box(dim, search_degree))
            for t in candidates:
                if s_gp.contains(t) and s_gp.contains(vadd(t, e_i)):
                    found = (vadd(t, e_i), t)
                    break
            if found is None:
                raise SizeLimitError(
                    f"no pair s - t = e_{i} found within search degree {search_degree}")
            pairs.append(found)
        ys = []
        for s, t in pairs:
            xs = torus.monomial(s)
            xt_inv = torus.monomial_inverse(torus.monomial(t))
            ys.append(torus.product(xs, xt_inv))
        q_matrix = []
        for yi in ys:
            row = []
            for yj in ys:
                cij, _ = torus.product(yi, yj).leading_term()
                cji, _ = torus.product(yj, yi).leading_term()
                row.append(cij.as_monomial() / cji.as_monomial())
            q_matrix.append(tuple(row))
        for i in range(dim):
            for j in range(dim):
                if not (q_matrix[i][j] * q_matrix[j][i]).is_one():
                    raise VerificationError("commutation matrix is not skew-symmetric")
        gen_scalars = {}
        for g in s_gp.generators:
            y_pow = torus.one()
            for i in range(dim):
                y_pow = torus.product(y_pow, torus.power(ys[i], g[i]))
            coeff, expo = y_pow.leading_term()
            if expo != g or len(y_pow.terms) != 1:
                raise VerificationError(f"Y-monomial for generator {list(g)} is not X^g-parallel")
            gen_scalars[g] = coeff.as_monomial().inverse()
        return TorusEmbedding(tuple(q_matrix), tuple(pairs), tuple(ys), gen_scalars)

    # -- facet localization ----------------------------------------------------

    def localize_at_facet(self, facet: Facet) -> "FacetLocalization":
        """Invert the monomials on a facet: k^alpha[S_tau] with its torus-line shape.

        The underlying semigroup must be normal and full.  Returns the algebra
        on S_tau together with the commutation matrix q_tau of the canonical
        Z^n + N generators (which is multiplicatively skew-symmetric with unit
        diagonal).
        """
        if self.domain is None or isinstance(self.domain, FacetSemigroup):
            raise PreconditionError("localization starts from a semigroup algebra")
        fs = facet_subsemigroup(self.domain, facet)
        t_vecs = fs.iso_generators
        q_tau = commutation_matrix(self.cocycle, t_vecs)
        n1 = len(t_vecs)
        for i in range(n1):
            if not q_tau[i][i].is_one():
                raise VerificationError("commutation matrix has non-unit diagonal")
            for j in range(n1):
                if not (q_tau[i][j] * q_tau[j][i]).is_one():
                    raise VerificationError("q_tau is not multiplicatively skew-symmetric")
        algebra = TwistedAlgebra(fs, self.cocycle)
        return FacetLocalization(algebra, fs, q_tau, t_vecs)


def _degree_list(semigroup: AffineSemigroup, bound: int) -> list[IntVec]:
    layers = elements_by_degree(semigroup, bound)
    return sorted(v for layer in layers.values() for v in layer)


def _signed_box(dim: int, radius: int) -> Iterable[IntVec]:
    return itertools.product(range(-radius, radius + 1), repeat=dim)


@dataclass(frozen=True)
class TwistingSystem:
    """Left twisting system tau_t(X^s) = alpha(s, t) X^s on the commutative k[S]."""

    cocycle: Cocycle
    dim: int

    def apply(self, t: Sequence[int], x: TwistedElement) -> TwistedElement:
        t = as_vec(t)
        return TwistedElement({s: c * Scalar.of(self.cocycle(s, t))
                               for s, c in x.terms.items()})

    def commutative_product(self, x: TwistedElement, y: TwistedElement) -> TwistedElement:
        acc: dict[IntVec, Scalar] = {}
        for s, cx in x.terms.items():
            for t, cy in y.terms.items():
                st = vadd(s, t)
                acc[st] = acc.get(st, Scalar.zero()) + cx * cy
        return TwistedElement(acc)

    def twisted_product(self, x: TwistedElement, y: TwistedElement) -> TwistedElement:
        """x o y = sum over degrees t of y: tau_t(x) * y_t (commutative product)."""
        out = TwistedElement.zero()
        for t, cy in y.terms.items():
            piece = self.commutative_product(
                self.apply(t, x), TwistedElement({t: cy}))
            out = out + piece
        return out


@dataclass(frozen=True)
class TorusEmbedding:
    """Exact data of the embedding into a quantum torus.

    ``pairs[i]`` is (s_i, t_i) with s_i - t_i = e_i; ``y_monomials[i]`` the
    resulting unit Y_i (a monomial with exponent e_i); ``q_matrix`` the exact
    commutation scalars of the Y's; ``generator_scalars[g]`` the scalar with
    X^g = scalar * Y^g (ordered product).  The inverse direction is monomial:
    Y_i is literally a Laurent monomial in the X's via pairs[i].
    """

    q_matrix: tuple[tuple[ScalarMonomial, ...], ...]
    pairs: tuple[tuple[IntVec, IntVec], ...]
    y_monomials: tuple[TwistedElement, ...]
    generator_scalars: dict[IntVec, ScalarMonomial]


@dataclass(frozen=True)
class FacetLocalization:
    """k^alpha[S_tau] presented as a twisted group-line algebra Z^n + N."""

    algebra: TwistedAlgebra
    facet_semigroup: FacetSemigroup
    q_tau: tuple[tuple[ScalarMonomial, ...], ...]
    iso_generators: tuple[IntVec, ...]
