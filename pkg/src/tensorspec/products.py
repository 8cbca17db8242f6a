"""Spectral profile of ``A (x) B`` and of the elementary operator ``U -> AUB``
computed directly from the factor profiles.

Zero is classified with :func:`classify_zero`, a case table over the
position of 0 in each factor.  A nonzero isolated product point is
classified from the list of all its factorizations: it is an accumulation
point as soon as one factor of some pair is a cluster limit, otherwise it
is a non-pole as soon as some pair has a non-pole factor, and a pole when
every pair is pole times pole.

The elementary operator is handled as ``B^T (x) A``; a profile is invariant
under transposition, so both modes go through the same tensor rule with
the arguments in opposite order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import EmptyFactorization, NotFinitelyRepresentable
from .exact import ZERO, GaussianRational
from .profile import (
    Atom,
    ClusterAtom,
    IsolatedAtom,
    Kind,
    Rank,
    SpectralProfile,
    ZeroClass,
    check_profile,
    derive_flags,
    merge_atoms,
    zero_class,
)
from .sets import DEFAULT_DEPTH


class Mode(str, Enum):
    TENSOR = "tensor"
    ELEMENTARY = "elementary"

    @classmethod
    def parse(cls, text: str) -> "Mode":
        if text in ("elem", "elementary"):
            return cls.ELEMENTARY
        return cls(text)


@dataclass(frozen=True)
class Factor:
    """A spectral point of one factor with its class (``acc`` for limits)."""

    point: GaussianRational
    kind: Kind
    rank: Rank


@dataclass(frozen=True)
class Factorization:
    lam: GaussianRational
    pairs: tuple[tuple[Factor, Factor], ...]


# zero-class provenance labels
ZERO_ABSENT = "zero_not_in_spectrum"
ZERO_ACC = "zero_accumulates"
ZERO_NILPOTENT = "nilpotent_factor"
ZERO_QUASINILPOTENT = "quasinilpotent_factor"
ZERO_POLE_INVERTIBLE = "pole_times_invertible"
ZERO_NONPOLE_INVERTIBLE = "nonpole_times_invertible"
ZERO_POLE_POLE = "pole_times_pole"
ZERO_NONPOLE_MIXED = "nonpole_times_non_nilpotent"

NONZERO_ACC = "accumulation"
NONZERO_NONPOLE = "nonpole_factor"
NONZERO_POLE = "pole_pairs"
SCALED_CLUSTER = "scaled_cluster"


def zero_case(pa: SpectralProfile, pb: SpectralProfile) -> tuple[ZeroClass, str]:
    """Class of 0 in the product together with the rule that decided it."""
    za, zb = zero_class(pa), zero_class(pb)
    if za is ZeroClass.ABSENT and zb is ZeroClass.ABSENT:
        return ZeroClass.ABSENT, ZERO_ABSENT
    rest_a, rest_b = pa.nonzero_points_exist(), pb.nonzero_points_exist()
    if (za is ZeroClass.ACC and rest_b) or (zb is ZeroClass.ACC and rest_a):
        return ZeroClass.ACC, ZERO_ACC
    fa, fb = derive_flags(pa), derive_flags(pb)
    if fa.nilpotent or fb.nilpotent:
        return ZeroClass.POLE, ZERO_NILPOTENT
    # spectrum {0} made of a non-nilpotent quasi-nilpotent operator
    if fa.quasinilpotent or fb.quasinilpotent:
        return ZeroClass.ISO_NONPOLE, ZERO_QUASINILPOTENT
    # from here 0 is isolated in each factor where present, and both
    # factors have a nonzero invertible part
    pair = {za, zb}
    if pair == {ZeroClass.POLE, ZeroClass.ABSENT}:
        return ZeroClass.POLE, ZERO_POLE_INVERTIBLE
    if pair == {ZeroClass.ISO_NONPOLE, ZeroClass.ABSENT}:
        return ZeroClass.ISO_NONPOLE, ZERO_NONPOLE_INVERTIBLE
    if pair == {ZeroClass.POLE}:
        return ZeroClass.POLE, ZERO_POLE_POLE
    if pair <= {ZeroClass.POLE, ZeroClass.ISO_NONPOLE}:
        return ZeroClass.ISO_NONPOLE, ZERO_NONPOLE_MIXED
    raise AssertionError(f"unclassified zero configuration {za}, {zb}")


def classify_zero(pa: SpectralProfile, pb: SpectralProfile) -> ZeroClass:
    return zero_case(pa, pb)[0]


def _pair_kind(x: Factor, y: Factor) -> Kind:
    if Kind.ACC in (x.kind, y.kind):
        return Kind.ACC
    if Kind.ISO_NONPOLE in (x.kind, y.kind):
        return Kind.ISO_NONPOLE
    return Kind.POLE


def nonzero_case(f: Factorization) -> tuple[Kind, str]:
    if f.lam.is_zero():
        raise ValueError("nonzero classification called at 0")
    if not f.pairs:
        raise EmptyFactorization(f"no factorization of {f.lam}")
    kinds = {_pair_kind(x, y) for x, y in f.pairs}
    if Kind.ACC in kinds:
        return Kind.ACC, NONZERO_ACC
    if Kind.ISO_NONPOLE in kinds:
        return Kind.ISO_NONPOLE, NONZERO_NONPOLE
    return Kind.POLE, NONZERO_POLE


def classify_nonzero(f: Factorization) -> Kind:
    return nonzero_case(f)[0]


def _isolated_factors(p: SpectralProfile) -> list[Factor]:
    return [Factor(a.point, a.kind, a.rank) for a in p.isolated if not a.point.is_zero()]


def factorizations(pa: SpectralProfile, pb: SpectralProfile) -> dict[GaussianRational, Factorization]:
    """Every nonzero product of isolated points, with all ways of reaching it.

    ``pb`` must not contain clusters; cluster members and limits of ``pa``
    are matched against each candidate with exact sequence membership.
    """
    fa, fb = _isolated_factors(pa), _isolated_factors(pb)
    found: dict[GaussianRational, list[tuple[Factor, Factor]]] = {}
    for x in fa:
        for y in fb:
            found.setdefault(x.point * y.point, []).append((x, y))
    for lam, pairs in found.items():
        for c in pa.clusters:
            fam = c.family
            for y in fb:
                mu = lam / y.point
                if mu == c.limit:
                    pairs.append((Factor(mu, Kind.ACC, Rank.INF), y))
                elif fam.index_of(mu) is not None:
                    pairs.append((Factor(mu, c.seq_kind, c.seq_rank), y))
    return {lam: Factorization(lam, tuple(pairs)) for lam, pairs in found.items()}


@dataclass(frozen=True)
class ProductResult:
    profile: SpectralProfile
    provenance: tuple[tuple[str, str], ...]


def _tensor(pa: SpectralProfile, pb: SpectralProfile, depth: int) -> ProductResult:
    if pb.has_clusters():
        if pa.has_clusters():
            raise NotFinitelyRepresentable(
                "both factors have accumulating clusters; the product's "
                "accumulation set is infinite"
            )
        # only the roles matter here, and the point set is symmetric
        pa, pb = pb, pa
    atoms: list[Atom] = []
    labels: dict[GaussianRational, str] = {}

    zc, zlabel = zero_case(pa, pb)
    if zc in (ZeroClass.POLE, ZeroClass.ISO_NONPOLE):
        atoms.append(IsolatedAtom(ZERO, Kind(zc.value), Rank.INF))
    labels[ZERO] = zlabel

    for lam, fac in factorizations(pa, pb).items():
        kind, label = nonzero_case(fac)
        labels[lam] = label
        if kind is Kind.ACC:
            continue
        rank = Rank.join(Rank.tensor(x.rank, y.rank) for x, y in fac.pairs)
        atoms.append(IsolatedAtom(lam, kind, rank))

    for c in pa.clusters:
        seq = Factor(c.limit, c.seq_kind, c.seq_rank)
        for y in _isolated_factors(pb):
            kind = _pair_kind(seq, y)
            atoms.append(
                ClusterAtom(
                    y.point * c.limit,
                    y.point * c.r,
                    c.q,
                    kind,
                    Rank.tensor(c.seq_rank, y.rank),
                )
            )
            labels.setdefault(y.point * c.limit, NONZERO_ACC)

    profile = check_profile(merge_atoms(atoms, depth), depth)
    prov = []
    for a in profile.atoms:
        if isinstance(a, IsolatedAtom):
            prov.append((str(a.point), labels.get(a.point, SCALED_CLUSTER)))
    for c in profile.clusters:
        prov.append((str(c.limit), labels.get(c.limit, NONZERO_ACC)))
    return ProductResult(profile, tuple(dict.fromkeys(prov)))


def product_with_provenance(
    pa: SpectralProfile,
    pb: SpectralProfile,
    mode: Mode = Mode.TENSOR,
    depth: int = DEFAULT_DEPTH,
) -> ProductResult:
    check_profile(pa, depth)
    check_profile(pb, depth)
    if Mode(mode) is Mode.ELEMENTARY:
        # U -> AUB acts as B^T (x) A on column-stacked U
        return _tensor(pb, pa, depth)
    return _tensor(pa, pb, depth)


def product_profile(
    pa: SpectralProfile,
    pb: SpectralProfile,
    mode: Mode = Mode.TENSOR,
    depth: int = DEFAULT_DEPTH,
) -> SpectralProfile:
    return product_with_provenance(pa, pb, mode, depth).profile

