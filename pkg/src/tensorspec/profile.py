"""Spectral profiles: finite descriptions of a classified spectrum.

A profile is a finite set of atoms.  An :class:`IsolatedAtom` is a single
isolated spectral point, either a pole (``A - lambda`` has finite ascent
and descent) or an isolated point that is not a pole (the local part of
``A - lambda`` is quasi-nilpotent but not nilpotent).  A
:class:`ClusterAtom` is a geometric sequence of isolated points converging
to an accumulation point.

Every operator described by a valid profile satisfies the generalized
Browder's theorem, so the B-Weyl spectrum equals the Drazin spectrum and
both are the accumulation points together with the non-pole isolated
points.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Union

from .errors import CollisionDepthExceeded, InvalidProfile
from .exact import ZERO, GaussianRational
from .sets import DEFAULT_DEPTH, Family, SymbolicSet, align_offset, family_collisions, normalize


class Kind(str, Enum):
    """Classification of a spectral point, ordered by dominance."""

    POLE = "pole"
    ISO_NONPOLE = "iso_nonpole"
    ACC = "acc"

    @property
    def rank_order(self) -> int:
        return _KIND_ORDER[self]


_KIND_ORDER = {Kind.POLE: 0, Kind.ISO_NONPOLE: 1, Kind.ACC: 2}


def dominant(kinds: Iterable[Kind]) -> Kind:
    return max(kinds, key=lambda k: _KIND_ORDER[k])


class ZeroClass(str, Enum):
    ABSENT = "absent"
    POLE = "pole"
    ISO_NONPOLE = "iso_nonpole"
    ACC = "acc"


class Rank(str, Enum):
    """Dimension of the spectral subspace at a point."""

    FIN = "fin"
    INF = "inf"

    @staticmethod
    def join(ranks: Iterable["Rank"]) -> "Rank":
        return Rank.INF if any(r is Rank.INF for r in ranks) else Rank.FIN

    @staticmethod
    def tensor(a: "Rank", b: "Rank") -> "Rank":
        return Rank.FIN if a is Rank.FIN and b is Rank.FIN else Rank.INF


@dataclass(frozen=True)
class IsolatedAtom:
    point: GaussianRational
    kind: Kind
    rank: Rank = Rank.INF
    order: Optional[int] = None

    def sort_key(self):
        return (0, self.point.sort_key())


@dataclass(frozen=True)
class ClusterAtom:
    limit: GaussianRational
    r: GaussianRational
    q: GaussianRational
    seq_kind: Kind = Kind.POLE
    seq_rank: Rank = Rank.FIN

    @property
    def family(self) -> Family:
        return Family(self.limit, self.r, self.q)

    def sort_key(self):
        return (1, self.limit.sort_key(), self.q.sort_key(), self.r.sort_key())


Atom = Union[IsolatedAtom, ClusterAtom]


def pole(point, rank: Rank = Rank.INF, order: Optional[int] = None) -> IsolatedAtom:
    return IsolatedAtom(GaussianRational.coerce(point), Kind.POLE, Rank(rank), order)


def quasinil(point) -> IsolatedAtom:
    return IsolatedAtom(GaussianRational.coerce(point), Kind.ISO_NONPOLE, Rank.INF)


def cluster(limit, r, q, kind: Kind = Kind.POLE, rank: Rank = Rank.FIN) -> ClusterAtom:
    c = GaussianRational.coerce
    return ClusterAtom(c(limit), c(r), c(q), Kind(kind), Rank(rank))


@dataclass(frozen=True)
class SpectralProfile:
    atoms: tuple[Atom, ...]

    def __init__(self, atoms: Iterable[Atom]):
        object.__setattr__(self, "atoms", tuple(sorted(atoms, key=lambda a: a.sort_key())))

    @classmethod
    def of(cls, *atoms: Atom) -> "SpectralProfile":
        return cls(atoms)

    @property
    def isolated(self) -> tuple[IsolatedAtom, ...]:
        return tuple(a for a in self.atoms if isinstance(a, IsolatedAtom))

    @property
    def clusters(self) -> tuple[ClusterAtom, ...]:
        return tuple(a for a in self.atoms if isinstance(a, ClusterAtom))

    def has_clusters(self) -> bool:
        return any(isinstance(a, ClusterAtom) for a in self.atoms)

    def isolated_at(self, p: GaussianRational) -> Optional[IsolatedAtom]:
        for a in self.isolated:
            if a.point == p:
                return a
        return None

    def nonzero_points_exist(self) -> bool:
        """True when the spectrum is not contained in ``{0}``."""
        return any(isinstance(a, ClusterAtom) or not a.point.is_zero() for a in self.atoms)


def validate_profile(p: SpectralProfile, depth: int = DEFAULT_DEPTH) -> list[str]:
    """Return every violated invariant (empty list when valid)."""
    out: list[str] = []
    if not p.atoms:
        return ["profile has no atoms"]
    seen: set[GaussianRational] = set()
    fams: list[tuple[ClusterAtom, Family]] = []
    for a in p.atoms:
        if isinstance(a, IsolatedAtom):
            if a.kind is Kind.ACC:
                out.append(f"isolated atom at {a.point} cannot be an accumulation point")
            if a.kind is Kind.ISO_NONPOLE and a.rank is Rank.FIN:
                out.append(f"non-pole isolated point {a.point} must have infinite rank")
            if a.order is not None and (a.kind is not Kind.POLE or a.order < 1):
                out.append(f"invalid pole order at {a.point}")
            if a.point in seen:
                out.append(f"duplicate isolated point {a.point}")
            seen.add(a.point)
        else:
            if a.seq_kind is Kind.ACC:
                out.append(f"cluster at {a.limit} has accumulation sequence class")
            if a.seq_kind is Kind.ISO_NONPOLE and a.seq_rank is Rank.FIN:
                out.append(f"non-pole cluster at {a.limit} must have infinite rank")
            if a.r.is_zero():
                out.append(f"cluster at {a.limit} has r = 0")
                continue
            if not 0 < a.q.abs_sq() < 1:
                out.append(f"cluster at {a.limit} needs 0 < |q| < 1")
                continue
            fams.append((a, a.family))
    limits = {a.limit for a, _ in fams}
    for a in p.isolated:
        if a.point in limits:
            out.append(f"cluster limit {a.point} collides with isolated point")
    for a, f in fams:
        if f.index_of(ZERO) is not None:
            out.append(f"cluster at {a.limit} passes through 0")
        for b in p.isolated:
            n = f.index_of(b.point)
            if n is not None:
                out.append(f"isolated point {b.point} lies on cluster at {a.limit} (index {n})")
        for c in limits:
            n = f.index_of(c)
            if n is not None:
                out.append(f"cluster limit {c} lies on cluster at {a.limit} (index {n})")
    for i in range(len(fams)):
        for j in range(i + 1, len(fams)):
            f, g = fams[i][1], fams[j][1]
            if align_offset(f, g) is not None:
                out.append(f"clusters at {f.limit} share a tail")
                continue
            try:
                hits = family_collisions(f, g, depth)
            except CollisionDepthExceeded as exc:
                out.append(f"collision depth exceeded: {exc}")
                continue
            if hits:
                out.append(f"clusters at {f.limit} and {g.limit} meet at {f.point(hits[0][0])}")
    if not any(
        isinstance(a, ClusterAtom) or a.kind is Kind.ISO_NONPOLE or a.rank is Rank.INF
        for a in p.atoms
    ):
        out.append("no infinite-dimensional atom")
    return out


def check_profile(p: SpectralProfile, depth: int = DEFAULT_DEPTH) -> SpectralProfile:
    violations = validate_profile(p, depth)
    if violations:
        raise InvalidProfile(violations)
    return p


def _combine(labels: list[tuple[Kind, Rank, Optional[int]]]):
    kind = dominant(k for k, _, _ in labels)
    rank = Rank.join(r for _, r, _ in labels)
    order = None
    if kind is Kind.POLE and all(o is not None for _, _, o in labels):
        order = max(o for _, _, o in labels)
    return kind, rank, order


def merge_atoms(atoms: Iterable[Atom], depth: int = DEFAULT_DEPTH) -> SpectralProfile:
    """Combine possibly overlapping atom contributions into a profile.

    Coinciding points take the dominant class (acc > iso_nonpole > pole),
    infinite rank absorbs finite rank, and a point equal to a cluster limit
    is absorbed by the accumulation point.
    """
    points = []
    fams = []
    for a in atoms:
        if isinstance(a, IsolatedAtom):
            points.append((a.point, (a.kind, a.rank, a.order)))
        else:
            fams.append((a.family, (a.seq_kind, a.seq_rank, None)))
    pts, out_fams = normalize(
        points, fams, _combine, limits=[f.limit for f, _ in fams], depth=depth
    )
    result: list[Atom] = []
    for pt, (kind, rank, order) in pts.items():
        result.append(IsolatedAtom(pt, kind, rank, order))
    for fam, (kind, rank, _) in out_fams:
        result.append(ClusterAtom(fam.limit, fam.r, fam.q, kind, rank))
    return SpectralProfile(result)


@dataclass(frozen=True)
class DerivedSets:
    sigma: SymbolicSet
    sigma_iso: tuple[tuple[Union[GaussianRational, Family], Kind], ...]
    sigma_acc: SymbolicSet
    pi: SymbolicSet
    pi0: SymbolicSet
    iso_nonpole: SymbolicSet
    sigma_dr: SymbolicSet
    sigma_bw: SymbolicSet
    sigma_w: SymbolicSet


def derive_sets(p: SpectralProfile, depth: int = DEFAULT_DEPTH) -> DerivedSets:
    check_profile(p, depth)
    build = lambda pts, fams=(): SymbolicSet.build(pts, fams, depth)  # noqa: E731
    iso = p.isolated
    cl = p.clusters
    poles = [a.point for a in iso if a.kind is Kind.POLE]
    pole_fams = [c.family for c in cl if c.seq_kind is Kind.POLE]
    inp = [a.point for a in iso if a.kind is Kind.ISO_NONPOLE]
    inp_fams = [c.family for c in cl if c.seq_kind is Kind.ISO_NONPOLE]
    limits = sorted({c.limit for c in cl}, key=GaussianRational.sort_key)
    finite_poles = [a.point for a in iso if a.kind is Kind.POLE and a.rank is Rank.FIN]
    finite_pole_fams = [
        c.family for c in cl if c.seq_kind is Kind.POLE and c.seq_rank is Rank.FIN
    ]
    infinite_poles = [a.point for a in iso if a.kind is Kind.POLE and a.rank is Rank.INF]
    infinite_pole_fams = [
        c.family for c in cl if c.seq_kind is Kind.POLE and c.seq_rank is Rank.INF
    ]

    sigma_iso = tuple(
        [(a.point, a.kind) for a in iso] + [(c.family, c.seq_kind) for c in cl]
    )
    dr = build(limits + inp, inp_fams)
    return DerivedSets(
        sigma=build([a.point for a in iso] + limits, [c.family for c in cl]),
        sigma_iso=sigma_iso,
        sigma_acc=build(limits),
        pi=build(poles, pole_fams),
        pi0=build(finite_poles, finite_pole_fams),
        iso_nonpole=build(inp, inp_fams),
        sigma_dr=dr,
        sigma_bw=dr,
        # sigma minus the finite-rank poles
        sigma_w=build(limits + inp + infinite_poles, inp_fams + infinite_pole_fams),
    )


@dataclass(frozen=True)
class OperatorFlags:
    nilpotent: bool
    quasinilpotent: bool
    algebraic: bool
    drazin_invertible: bool
    zero_in_spectrum: bool
    zero_class: ZeroClass


def zero_class(p: SpectralProfile) -> ZeroClass:
    a = p.isolated_at(ZERO)
    if a is not None:
        return ZeroClass(a.kind.value)
    if any(c.limit.is_zero() for c in p.clusters):
        return ZeroClass.ACC
    return ZeroClass.ABSENT


def derive_flags(p: SpectralProfile, depth: int = DEFAULT_DEPTH) -> OperatorFlags:
    check_profile(p, depth)
    zc = zero_class(p)
    only_zero = len(p.atoms) == 1 and isinstance(p.atoms[0], IsolatedAtom) and p.atoms[0].point.is_zero()
    return OperatorFlags(
        nilpotent=only_zero and p.atoms[0].kind is Kind.POLE,
        quasinilpotent=only_zero,
        algebraic=all(isinstance(a, IsolatedAtom) and a.kind is Kind.POLE for a in p.atoms),
        drazin_invertible=zc in (ZeroClass.ABSENT, ZeroClass.POLE),
        zero_in_spectrum=zc is not ZeroClass.ABSENT,
        zero_class=zc,
    )
