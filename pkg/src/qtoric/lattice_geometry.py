"""Exact lattice and rational-cone geometry on Z^d.

Vectors are plain tuples of ints.  All decisions here are exact: sublattices
via Hermite normal form, facets via exhaustive supporting-hyperplane search,
Hilbert bases via parallelepiped point enumeration plus irreducibility
reduction.  Inputs beyond the declared desk-scale limits are refused.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError, PreconditionError, SizeLimitError
from . import linalg

IntVec = tuple[int, ...]

# Facet enumeration is exhaustive over generator subsets and the Hilbert-basis
# construction enumerates parallelepiped points of every maximal independent
# subset, so cap the instance size rather than degrade silently.
MAX_CONE_GENERATORS = 20
MAX_CONE_DIM = 7


def as_vec(entries: Iterable[int]) -> IntVec:
    v = tuple(entries)
    for x in v:
        if not isinstance(x, int) or isinstance(x, bool):
            raise TypeError(f"vector entries must be ints, got {x!r}")
    return v


def vadd(a: IntVec, b: IntVec) -> IntVec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: IntVec, b: IntVec) -> IntVec:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: IntVec) -> IntVec:
    return tuple(-x for x in a)


def vdot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def vscale(k: int, a: IntVec) -> IntVec:
    return tuple(k * x for x in a)


def is_zero(a: IntVec) -> bool:
    return all(x == 0 for x in a)


def zero_vec(dim: int) -> IntVec:
    return (0,) * dim


def primitive(v: IntVec) -> IntVec:
    """Divide a nonzero vector by the gcd of its entries (direction kept)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in v)


def check_same_dim(vectors: Sequence[IntVec], dim: int | None = None) -> int:
    dims = {len(v) for v in vectors}
    if dim is not None:
        dims.add(dim)
    if len(dims) > 1:
        raise DimensionError(f"mixed ambient dimensions {sorted(dims)}")
    if not dims:
        raise DimensionError("ambient dimension cannot be inferred from no vectors")
    return dims.pop()


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^ambient_dim given by a Hermite-form basis.

    ``transform`` is a rank x ambient rational matrix sending each basis
    vector to the corresponding standard basis vector of Z^rank, so it maps
    the sublattice isomorphically onto Z^rank (integer coordinates on every
    member, and ``from_coordinates`` is its inverse).
    """

    ambient_dim: int
    rank: int
    basis: tuple[IntVec, ...]
    transform: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def standard(dim: int) -> "Sublattice":
        basis = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
        transform = tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim))
        return Sublattice(dim, dim, basis, transform)

    def rational_coordinates(self, v: Sequence[int]) -> tuple[Fraction, ...] | None:
        """Coordinates in the basis if v lies in the rational span, else None."""
        if len(v) != self.ambient_dim:
            raise DimensionError(f"expected dimension {self.ambient_dim}, got {len(v)}")
        c = tuple(sum(row[j] * v[j] for j in range(self.ambient_dim)) for row in self.transform)
        back = [sum(c[i] * self.basis[i][j] for i in range(self.rank)) for j in range(self.ambient_dim)]
        if any(back[j] != v[j] for j in range(self.ambient_dim)):
            return None
        return c

    def coordinates(self, v: Sequence[int]) -> IntVec | None:
        """Integer coordinates of a member, or None if v is not in the lattice."""
        c = self.rational_coordinates(v)
        if c is None or any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def from_coordinates(self, c: Sequence[int]) -> IntVec:
        if len(c) != self.rank:
            raise DimensionError(f"expected {self.rank} coordinates, got {len(c)}")
        return tuple(sum(c[i] * self.basis[i][j] for i in range(self.rank))
                     for j in range(self.ambient_dim))

    def is_full(self) -> bool:
        return self.rank == self.ambient_dim and all(
            self.basis[i][j] == int(i == j)
            for i in range(self.rank) for j in range(self.ambient_dim))

    def same_lattice(self, other: "Sublattice") -> bool:
        return (self.ambient_dim == other.ambient_dim and self.rank == other.rank
                and all(other.contains(b) for b in self.basis)
                and all(self.contains(b) for b in other.basis))


def lattice_of(vectors: Sequence[Sequence[int]], ambient_dim: int | None = None) -> Sublattice:
    """The subgroup of Z^d generated by the vectors, as a Sublattice.

    ``ambient_dim`` is required when ``vectors`` is empty.
    """
    vecs = [as_vec(v) for v in vectors]
    nonzero = [v for v in vecs if not is_zero(v)]
    if not vecs and ambient_dim is None:
        raise DimensionError("ambient dimension required for an empty generating set")
    dim = check_same_dim(vecs, ambient_dim) if vecs else ambient_dim
    basis = tuple(linalg.row_hnf(nonzero)) if nonzero else ()
    rank = len(basis)
    if rank:
        gram = [[vdot(a, b) for b in basis] for a in basis]
        gram_inv = linalg.invert_fractions(gram)
        transform = tuple(
            tuple(sum(gram_inv[i][k] * basis[k][j] for k in range(rank)) for j in range(dim))
            for i in range(rank))
    else:
        transform = ()
    return Sublattice(dim, rank, basis, transform)


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone spanned by integer generators."""

    generators: tuple[IntVec, ...]
    ambient_dim: int

    def __post_init__(self):
        check_same_dim(self.generators, self.ambient_dim)


@dataclass(frozen=True)
class Facet:
    """Codimension-1 face: primitive inner normal plus incident generators.

    The inner normal pairs >= 0 with every generator and == 0 exactly on the
    incident ones, which span a hyperplane of the cone's span.
    """

    inner_normal: IntVec
    incident: frozenset[int]


def _check_limits(n_gens: int, dim: int) -> None:
    if n_gens > MAX_CONE_GENERATORS:
        raise SizeLimitError(
            f"{n_gens} generators exceed the supported limit of {MAX_CONE_GENERATORS}")
    if dim > MAX_CONE_DIM:
        raise SizeLimitError(f"dimension {dim} exceeds the supported limit of {MAX_CONE_DIM}")


def cone_facets(cone: Cone) -> list[Facet]:
    """All facets of a full-dimensional cone, sorted by inner normal.

    Exhaustive search: every (d-1)-subset of generators spanning a hyperplane
    is tested for being supporting.  Exact and complete at desk scale.
    """
    gens = [g for g in cone.generators if not is_zero(g)]
    d = cone.ambient_dim
    _check_limits(len(gens), d)
    if linalg.int_rank(gens) != d:
        raise PreconditionError(
            f"cone is not full-dimensional (rank {linalg.int_rank(gens)} < {d}); "
            "restrict to the span via lattice_of first")
    found: dict[IntVec, frozenset[int]] = {}
    distinct = sorted({primitive(g) for g in gens})
    for subset in itertools.combinations(distinct, d - 1):
        if linalg.int_rank(subset) != d - 1:
            continue
        normal = linalg.kernel_basis(subset, d)[0]
        pairings = [vdot(normal, g) for g in gens]
        if all(p >= 0 for p in pairings):
            pass
        elif all(p <= 0 for p in pairings):
            normal = vneg(normal)
            pairings = [-p for p in pairings]
        else:
            continue  # not a supporting hyperplane
        incident = frozenset(i for i, p in enumerate(pairings) if p == 0)
        found[normal] = incident
    return [Facet(n, found[n]) for n in sorted(found)]


def _parallelepiped_points(rays: list[IntVec], d: int) -> list[IntVec]:
    """All lattice points of {sum lam_i * ray_i : 0 <= lam_i < 1}, rays independent.

    Enumerated via a complete residue system of Z^d modulo the ray lattice
    (box given by the Hermite-form diagonal); the count is exactly |det|.
    """
    hnf = linalg.row_hnf(rays)
    diag = [hnf[i][i] for i in range(d)]
    m = linalg.transpose(rays)  # d x d with the rays as columns
    m_inv = linalg.invert_fractions(m)
    points = []
    for t in itertools.product(*(range(h) for h in diag)):
        lam = linalg.mat_vec(m_inv, t)
        frac = [x - (x.numerator // x.denominator) for x in lam]
        x = tuple(int(sum(m[i][k] * frac[k] for k in range(d))) for i in range(d))
        points.append(x)
    return points


def hilbert_basis(cone: Cone, lattice: Sublattice, max_points: int = 200_000) -> list[IntVec]:
    """Unique minimal generating set of the semigroup cone ∩ lattice.

    The cone must be pointed and full-dimensional within the lattice's span.
    Candidates are the primitive rays plus all lattice points inside the
    fundamental parallelepiped of every maximal independent ray subset;
    reduction keeps exactly the irreducible elements.  ``max_points`` caps the
    enumeration and aborts with a diagnostic instead of truncating.
    """
    if lattice.rank == 0:
        if any(not is_zero(g) for g in cone.generators):
            raise PreconditionError("nonzero cone generator outside the trivial lattice")
        return []
    d = lattice.rank
    rays: list[IntVec] = []
    for g in cone.generators:
        if is_zero(g):
            continue
        c = lattice.rational_coordinates(g)
        if c is None:
            raise PreconditionError(
                f"cone generator {g} lies outside the lattice span", certificate=g)
        denom = 1
        for x in c:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        ray = primitive(tuple(int(x * denom) for x in c))
        if ray not in rays:
            rays.append(ray)
    if not rays:
        return []
    _check_limits(len(rays), d)
    if linalg.int_rank(rays) != d:
        raise PreconditionError(
            "cone is not full-dimensional in the lattice span "
            f"(rank {linalg.int_rank(rays)} < {d})")
    facets = cone_facets(Cone(tuple(rays), d))
    normals = [f.inner_normal for f in facets]
    if linalg.int_rank(normals) < d:
        line = linalg.kernel_basis(normals, d)[0]
        raise PreconditionError(
            "cone contains a line", certificate=lattice.from_coordinates(line))

    def in_cone(x: IntVec) -> bool:
        return all(vdot(n, x) >= 0 for n in normals)

    candidates = set(rays)
    budget = max_points
    for subset in itertools.combinations(rays, d):
        det = linalg.det_int(subset)
        if det == 0:
            continue
        budget -= abs(det)
        if budget < 0:
            raise SizeLimitError(
                f"parallelepiped enumeration exceeds {max_points} points; "
                "instance is beyond the supported size")
        for x in _parallelepiped_points(list(subset), d):
            if not is_zero(x):
                candidates.add(x)
    ordered = sorted(candidates)

    def reducible(x: IntVec) -> bool:
        for y in ordered:
            if y == x:
                continue
            z = vsub(x, y)
            if not is_zero(z) and in_cone(z):
                return True
        return False

    basis = [x for x in ordered if not reducible(x)]
    return sorted(lattice.from_coordinates(x) for x in basis)
