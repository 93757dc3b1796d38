"""Finitely generated affine semigroups and their ring-theoretic reports.

An AffineSemigroup is a finite generating set inside Z^(n+1).  Membership is
decided by exact search (complete whenever the cone is pointed), normality by
comparing against the Hilbert basis of the saturation, and the regularity
report turns polyhedral certificates into exact Cohen-Macaulay / Gorenstein /
regular / maximal-order decisions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import (DimensionError, NotNormalError, PreconditionError,
                     SizeLimitError, VerificationError)
from .lattice_geometry import (Cone, Facet, IntVec, Sublattice, as_vec,
                               cone_facets, hilbert_basis, is_zero,
                               lattice_of, vadd, vdot, vneg, vsub, zero_vec)


@dataclass(frozen=True)
class Membership:
    """Decision for one membership query.

    ``witness`` is a sorted tuple of generator indices summing to the query
    vector.  ``complete`` records whether a negative answer is a proof (the
    search space was exhausted) or only bounded evidence.
    """

    member: bool
    witness: tuple[int, ...] | None
    complete: bool
    bound: int | None = None


class AffineSemigroup:
    """Subsemigroup of (Z^(n+1), +) given by finitely many nonzero generators."""

    def __init__(self, generators: Sequence[Sequence[int]], ambient_dim: int | None = None):
        gens = tuple(as_vec(g) for g in generators)
        for g in gens:
            if is_zero(g):
                raise ValueError("zero generator refused (it is implicit)")
        if not gens and ambient_dim is None:
            raise DimensionError("ambient dimension required for the trivial semigroup")
        if gens:
            dims = {len(g) for g in gens}
            if ambient_dim is not None:
                dims.add(ambient_dim)
            if len(dims) != 1:
                raise DimensionError(f"mixed ambient dimensions {sorted(dims)}")
            ambient_dim = dims.pop()
        self.generators = gens
        self.ambient_dim = int(ambient_dim)
        self.group = lattice_of(gens, self.ambient_dim)
        self.cone = Cone(gens if gens else (zero_vec(self.ambient_dim),), self.ambient_dim)
        self.positive = bool(gens) and all(all(x >= 0 for x in g) for g in gens)
        self._member_cache: dict[IntVec, Membership] = {}
        self._pointed_data = None
        self._normality_cache: NormalityCertificate | None = None
        self._facets_cache: list[Facet] | None = None

    # -- basic structure ---------------------------------------------------

    @property
    def rank(self) -> int:
        return self.group.rank

    def is_trivial(self) -> bool:
        return not self.generators

    def is_full(self) -> bool:
        """Whether the group of fractions is all of Z^(n+1)."""
        return self.group.is_full()

    def __repr__(self) -> str:
        gens = ",".join(str(list(g)) for g in self.generators)
        return f"AffineSemigroup([{gens}], dim={self.ambient_dim})"

    def _pointed(self):
        """(embedded generators, cone normals, positive functional) or None.

        The functional is the sum of the facet inner normals of the embedded
        cone; it is strictly positive on every nonzero cone element, which
        makes the membership search terminate even without coordinate
        positivity.  None when the cone contains a line.
        """
        if self._pointed_data is None:
            emb_gens = [self.group.coordinates(g) for g in self.generators]
            r = self.group.rank
            facets = cone_facets(Cone(tuple(emb_gens), r))
            normals = [f.inner_normal for f in facets]
            if linalg.int_rank(normals) < r:
                self._pointed_data = (None,)
            else:
                w = tuple(sum(n[i] for n in normals) for i in range(r))
                self._pointed_data = ((emb_gens, normals, w),)
        return self._pointed_data[0]

    def is_pointed(self) -> bool:
        if self.is_trivial():
            return True
        if self.positive:
            return True
        return self._pointed() is not None

    # -- membership --------------------------------------------------------

    def membership(self, x: Sequence[int], bound: int | None = None) -> Membership:
        """Decide x in S with a generator-multiset witness.

        Complete (refutations are proofs) when the cone is pointed; otherwise
        an explicit ``bound`` on the number of summands is required and a
        negative answer only covers that bound.
        """
        x = as_vec(x)
        if len(x) != self.ambient_dim:
            raise DimensionError(f"expected dimension {self.ambient_dim}, got {len(x)}")
        if is_zero(x):
            return Membership(True, (), True)
        if self.is_trivial():
            return Membership(False, None, True)
        cached = self._member_cache.get(x)
        if cached is not None and (cached.member or cached.complete):
            return cached
        if self.positive:
            gens = list(self.generators)
            weight = lambda v: sum(v)
            inside = lambda v: all(c >= 0 for c in v)
            target = x
            result = self._search(target, gens, weight, inside, None)
        elif self._pointed() is not None:
            emb_gens, normals, w = self._pointed()
            target = self.group.coordinates(x)
            if target is None:
                result = Membership(False, None, True)
            else:
                weight = lambda v: vdot(w, v)
                inside = lambda v: all(vdot(n, v) >= 0 for n in normals)
                result = self._search(target, emb_gens, weight, inside, None)
        else:
            if bound is None:
                raise PreconditionError(
                    "semigroup cone contains a line; membership search needs an "
                    "explicit bound on the number of summands")
            gens = list(self.generators)
            result = self._search(x, gens, lambda v: 0, lambda v: True, bound)
        self._member_cache[x] = result
        return result

    @staticmethod
    def _search(target, gens, weight, inside, depth_bound):
        """Exhaustive subtraction search over generator multisets."""
        failed: set = set()
        limited = False

        def rec(v, max_idx, depth, path):
            nonlocal limited
            if all(c == 0 for c in v):
                return tuple(sorted(path))
            if depth_bound is not None and depth >= depth_bound:
                limited = True
                return None
            key = (v, max_idx)
            if key in failed:
                return None
            for i in range(max_idx + 1):
                nxt = vsub(v, gens[i])
                if weight(nxt) < 0 or not inside(nxt):
                    continue
                got = rec(nxt, i, depth + 1, path + [i])
                if got is not None:
                    return got
            failed.add(key)
            return None

        witness = rec(tuple(target), len(gens) - 1, 0, [])
        if witness is not None:
            return Membership(True, witness, True, depth_bound)
        return Membership(False, None, not limited if depth_bound is not None else True,
                          depth_bound)

    def contains(self, x: Sequence[int]) -> bool:
        return self.membership(x).member

    def witness_vectors(self, m: Membership) -> tuple[IntVec, ...]:
        """The generator multiset of a positive membership decision."""
        if not m.member:
            raise ValueError("no witness on a negative decision")
        return tuple(self.generators[i] for i in m.witness)

    # -- embeddings and saturation ------------------------------------------

    def full_embedding(self) -> "FullEmbedding":
        """Rewrite S inside its group of fractions, re-coordinatized to Z^rank."""
        coords = [self.group.coordinates(g) for g in self.generators]
        emb = AffineSemigroup(coords, self.group.rank)
        return FullEmbedding(self.group.rank, emb, self.group, self)

    def normality(self) -> "NormalityCertificate":
        """Exact normality decision with certificate.

        S is normal iff every Hilbert-basis element of (cone ∩ group) belongs
        to S.  On failure the certificate carries g in the group with g not in
        S but p*g in S.
        """
        if self._normality_cache is not None:
            return self._normality_cache
        cert = self._normality()
        self._normality_cache = cert
        return cert

    def _normality(self) -> "NormalityCertificate":
        if self.is_trivial() or self.rank == 0:
            return NormalityCertificate(True, (), None, None)
        emb = self.full_embedding()
        s_emb = emb.semigroup
        try:
            hb = hilbert_basis(s_emb.cone, Sublattice.standard(emb.rank))
        except PreconditionError as exc:
            raise PreconditionError(
                f"normality needs a pointed cone: {exc}", certificate=exc.certificate)
        for h in hb:
            if not s_emb.contains(h):
                g = emb.to_ambient(h)
                p = 2
                while not s_emb.contains(tuple(p * c for c in h)):
                    p += 1
                    if p > 10_000:
                        raise VerificationError(
                            "no small multiple of a Hilbert-basis element lies in S")
                return NormalityCertificate(
                    False, tuple(emb.to_ambient(v) for v in hb), g, p)
        return NormalityCertificate(True, tuple(emb.to_ambient(v) for v in hb), None, None)

    def require_normal(self) -> "NormalityCertificate":
        cert = self.normality()
        if not cert.normal:
            raise NotNormalError(
                f"semigroup is not normal: {list(cert.witness_g)} is in the group, "
                f"not in S, but {cert.witness_p} times it is",
                cert.witness_g, cert.witness_p)
        return cert

    def facets(self) -> list[Facet]:
        """Facets of the cone of S in ambient coordinates (S must be full)."""
        if not self.is_full():
            raise PreconditionError(
                "facets in ambient coordinates need a full semigroup; "
                "use full_embedding() first",
                certificate=self.rank)
        if self._facets_cache is None:
            self._facets_cache = cone_facets(self.cone)
        return self._facets_cache


@dataclass(frozen=True)
class FullEmbedding:
    """S rewritten in coordinates of its group of fractions."""

    rank: int
    semigroup: AffineSemigroup
    sublattice: Sublattice
    original: AffineSemigroup

    def to_coordinates(self, v: Sequence[int]) -> IntVec | None:
        return self.sublattice.coordinates(v)

    def to_ambient(self, c: Sequence[int]) -> IntVec:
        return self.sublattice.from_coordinates(c)


@dataclass(frozen=True)
class NormalityCertificate:
    normal: bool
    saturation_hilbert_basis: tuple[IntVec, ...]
    witness_g: IntVec | None
    witness_p: int | None


@dataclass(frozen=True)
class FacetSemigroup:
    """S_tau = {x in Z^(n+1) : <normal, x> >= 0} with its Z^n + N structure.

    ``unit_basis`` is a lattice basis of the hyperplane subgroup (the units),
    ``transversal`` pairs to exactly 1 with the normal, and together they give
    the isomorphism onto Z^n + N.  ``positive_generators`` are the generators
    of S off the facet.  ``used_auxiliary_basis`` flags a basis that had to be
    completed beyond the facet-incident generators.
    """

    facet: Facet
    ambient_dim: int
    unit_basis: tuple[IntVec, ...]
    transversal: IntVec
    positive_generators: tuple[IntVec, ...]
    used_auxiliary_basis: bool
    verified_box_bound: int

    @property
    def inner_normal(self) -> IntVec:
        return self.facet.inner_normal

    def contains(self, x: Sequence[int]) -> bool:
        if len(x) != self.ambient_dim:
            raise DimensionError(f"expected dimension {self.ambient_dim}, got {len(x)}")
        return vdot(self.inner_normal, x) >= 0

    def iso_coordinates(self, x: Sequence[int]) -> tuple[IntVec, int]:
        """Image of a member under the isomorphism S_tau -> Z^n + N."""
        h = vdot(self.inner_normal, x)
        if h < 0:
            raise PreconditionError(f"{list(x)} is not in the facet semigroup")
        flat = vsub(as_vec(x), tuple(h * c for c in self.transversal))
        coords = lattice_of(self.unit_basis, self.ambient_dim).coordinates(flat)
        if coords is None:
            raise VerificationError("unit part landed outside the unit lattice")
        return coords, h

    def from_iso_coordinates(self, coords: Sequence[int], h: int) -> IntVec:
        if h < 0:
            raise PreconditionError("last coordinate must be nonnegative")
        x = tuple(h * c for c in self.transversal)
        for a, u in zip(coords, self.unit_basis):
            x = vadd(x, tuple(a * c for c in u))
        return x

    @property
    def iso_generators(self) -> tuple[IntVec, ...]:
        """Images of the canonical generators of Z^n + N (units then transversal)."""
        return self.unit_basis + (self.transversal,)


def facet_subsemigroup(semigroup: AffineSemigroup, facet: Facet,
                       verify_bound: int = 2) -> FacetSemigroup:
    """Build S_tau for a facet of a normal, full semigroup.

    The unit basis comes from the Hermite form of the facet-incident
    generators; if those do not generate the full hyperplane lattice the
    basis is completed from the integer kernel and flagged.  The presentation
    Z.units + N.positive_generators is verified to equal the half-space on
    the box [-verify_bound, verify_bound]^(n+1).
    """
    semigroup.require_normal()
    if not semigroup.is_full():
        raise PreconditionError(
            "facet semigroups need a full semigroup; use full_embedding() first")
    n_vec = facet.inner_normal
    gens = semigroup.generators
    pairings = [vdot(n_vec, g) for g in gens]
    if any(p < 0 for p in pairings):
        raise PreconditionError("inner normal is negative on a generator; not a facet")
    incident = [g for g, p in zip(gens, pairings) if p == 0]
    positive = tuple(g for g, p in zip(gens, pairings) if p > 0)
    d = semigroup.ambient_dim
    kernel = linalg.kernel_basis([n_vec], d)
    kernel_lat = lattice_of(kernel, d)
    incident_lat = lattice_of(incident, d)
    if incident_lat.rank == d - 1 and incident_lat.same_lattice(kernel_lat):
        unit_basis = incident_lat.basis
        auxiliary = False
    else:
        unit_basis = kernel_lat.basis
        auxiliary = True
    transversal = linalg.solve_integer([n_vec], [1])
    if transversal is None:
        raise VerificationError("facet normal is not primitive")
    fs = FacetSemigroup(facet, d, tuple(unit_basis), tuple(transversal), positive,
                        auxiliary, verify_bound)
    _verify_facet_presentation(fs, verify_bound)
    return fs


def _verify_facet_presentation(fs: FacetSemigroup, bound: int) -> None:
    """Check Z.units + N.positives == half-space on a box, and the iso round trip."""
    unit_lat = lattice_of(fs.unit_basis, fs.ambient_dim)
    heights = [vdot(fs.inner_normal, p) for p in fs.positive_generators]

    def presented(x: IntVec) -> bool:
        h = vdot(fs.inner_normal, x)
        if h < 0:
            return False
        # enumerate N-combinations of the positive generators reaching height h
        stack = [(x, h, 0)]
        seen = set()
        while stack:
            v, rem, start = stack.pop()
            if rem == 0:
                if unit_lat.contains(v):
                    return True
                continue
            for i in range(start, len(fs.positive_generators)):
                if heights[i] <= rem:
                    nxt = (vsub(v, fs.positive_generators[i]), rem - heights[i], i)
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
        return False

    for x in itertools.product(range(-bound, bound + 1), repeat=fs.ambient_dim):
        inside = vdot(fs.inner_normal, x) >= 0
        if presented(x) != inside:
            raise VerificationError(
                f"facet presentation mismatch at {list(x)}: half-space says {inside}")
        if inside:
            coords, h = fs.iso_coordinates(x)
            if fs.from_iso_coordinates(coords, h) != x:
                raise VerificationError(f"iso round trip failed at {list(x)}")
    for u in fs.unit_basis:
        if not (fs.contains(u) and fs.contains(vneg(u))):
            raise VerificationError("unit basis vector is not invertible in S_tau")


@dataclass(frozen=True)
class Decomposition:
    """S as the intersection of its facet semigroups, boundedly verified."""

    facet_semigroups: tuple[FacetSemigroup, ...]
    verified_to_degree: int


def decompose(semigroup: AffineSemigroup, bound: int = 6) -> Decomposition:
    """Intersection decomposition S = /\\ S_tau for a normal full positive S.

    Verifies x in S <=> x in every S_tau for all x in N^(n+1) with coordinate
    sum <= bound.  Refuses non-normal input with the normality witness.
    """
    semigroup.require_normal()
    if not semigroup.is_full():
        raise PreconditionError("decomposition needs a full semigroup")
    if not semigroup.positive:
        raise PreconditionError("decomposition needs a positive semigroup")
    facets = semigroup.facets()
    parts = tuple(facet_subsemigroup(semigroup, f) for f in facets)
    d = semigroup.ambient_dim
    for total in range(bound + 1):
        for x in _compositions(total, d):
            in_s = semigroup.contains(x)
            in_all = all(p.contains(x) for p in parts)
            if in_s != in_all:
                raise VerificationError(
                    f"decomposition mismatch at {list(x)}: S says {in_s}, "
                    f"intersection says {in_all}")
    return Decomposition(parts, bound)


def _compositions(total: int, parts: int):
    """All vectors in N^parts with coordinate sum == total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class RegularityReport:
    """Exact ring-theoretic profile of k^alpha[S]; twist-invariant claims.

    Tri-state fields use "yes" / "no" / "inapplicable"; the classical
    criteria only apply to normal semigroups, and the AS-versions transfer
    verbatim along any cocycle twist.
    """

    normal: bool
    normality_witness: tuple[IntVec, int] | None
    as_cohen_macaulay: str
    as_gorenstein: str
    gorenstein_witness: IntVec | None
    as_regular: bool
    maximal_order: bool
    has_balanced_dualizing_complex: bool
    rank: int
    verification_bound: int


def regularity_report(semigroup: AffineSemigroup, bound: int = 6) -> RegularityReport:
    """Decide normal / CM / Gorenstein / regular / maximal order, all exact.

    Gorenstein: an integer point c with <n_tau, c> == 1 for every facet inner
    normal (solved exactly over Z).  Regular: the Hilbert basis is a lattice
    basis.  Maximal order <=> normal.  A balanced dualizing complex always
    exists.  Non-normal input gets "inapplicable" for the classical criteria.
    """
    if not semigroup.positive and not semigroup.is_trivial():
        raise PreconditionError("regularity report needs a positive semigroup")
    cert = semigroup.normality()
    witness = (cert.witness_g, cert.witness_p) if not cert.normal else None
    if not cert.normal:
        return RegularityReport(False, witness, "inapplicable", "inapplicable", None,
                                False, False, True, semigroup.rank, bound)
    emb = semigroup.full_embedding()
    r = emb.rank
    if r == 0:
        return RegularityReport(True, None, "yes", "yes", zero_vec(semigroup.ambient_dim),
                                True, True, True, 0, bound)
    facets = cone_facets(emb.semigroup.cone)
    normals = [f.inner_normal for f in facets]
    c = linalg.solve_integer(normals, [1] * len(normals))
    gorenstein = "yes" if c is not None else "no"
    gorenstein_witness = emb.to_ambient(c) if c is not None else None
    hb = cert.saturation_hilbert_basis
    hb_emb = [emb.to_coordinates(h) for h in hb]
    regular = len(hb_emb) == r and abs(linalg.det_int(hb_emb)) == 1
    if regular and gorenstein != "yes":
        raise VerificationError("regular semigroup failed the Gorenstein criterion")
    return RegularityReport(True, None, "yes", gorenstein, gorenstein_witness,
                            regular, True, True, r, bound)


def hilbert_function(semigroup: AffineSemigroup, degree: int) -> list[int]:
    """Counts of semigroup elements of coordinate sum 0..degree (S positive)."""
    if not semigroup.positive and not semigroup.is_trivial():
        raise PreconditionError("Hilbert function needs a positive semigroup")
    layers = elements_by_degree(semigroup, degree)
    return [len(layers.get(k, ())) for k in range(degree + 1)]


def elements_by_degree(semigroup: AffineSemigroup, degree: int) -> dict[int, set[IntVec]]:
    """All members of a positive semigroup grouped by coordinate sum <= degree."""
    if not semigroup.positive and not semigroup.is_trivial():
        raise PreconditionError("degree enumeration needs a positive semigroup")
    layers: dict[int, set[IntVec]] = {0: {zero_vec(semigroup.ambient_dim)}}
    gen_degrees = [sum(g) for g in semigroup.generators]
    for k in range(1, degree + 1):
        layer: set[IntVec] = set()
        for g, dg in zip(semigroup.generators, gen_degrees):
            if dg <= k:
                for m in layers.get(k - dg, ()):
                    layer.add(vadd(m, g))
        if layer:
            layers[k] = layer
    return layers
