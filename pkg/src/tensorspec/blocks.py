"""Operators as formal direct sums of primitive blocks.

This is the construction path used to cross-check
:mod:`tensorspec.products`.  A product of two direct sums is the direct sum
of all blockwise products, and each blockwise product is classified from a
small rules table about single-point spectra and nilpotent algebra alone.
Nothing here calls the factorization-based classifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .errors import NotFinitelyRepresentable
from .exact import ZERO, GaussianRational
from .products import Mode, product_profile
from .profile import (
    Atom,
    ClusterAtom,
    IsolatedAtom,
    Kind,
    Rank,
    SpectralProfile,
    check_profile,
    merge_atoms,
)
from .sets import DEFAULT_DEPTH


@dataclass(frozen=True)
class JordanPole:
    """``lam + N`` with ``N`` nilpotent of the given order."""

    lam: GaussianRational
    order: int = 1
    rank: Rank = Rank.INF


@dataclass(frozen=True)
class QuasiNil:
    """``lam + Q`` with ``Q`` quasi-nilpotent but not nilpotent."""

    lam: GaussianRational


@dataclass(frozen=True)
class ClusterDiag:
    """Diagonal operator with eigenvalues ``limit + r*q**n``, ``n >= 1``."""

    limit: GaussianRational
    r: GaussianRational
    q: GaussianRational
    rank_each: Rank = Rank.FIN


PrimitiveBlock = Union[JordanPole, QuasiNil, ClusterDiag]


@dataclass(frozen=True)
class BlockModel:
    blocks: tuple[PrimitiveBlock, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))

    def __add__(self, other: "BlockModel") -> "BlockModel":
        return BlockModel(self.blocks + other.blocks)

    def has_clusters(self) -> bool:
        return any(isinstance(b, ClusterDiag) for b in self.blocks)


def _block_rank(b: PrimitiveBlock) -> Rank:
    # a quasi-nilpotent non-nilpotent part or infinitely many eigenvalues
    # need an infinite-dimensional space
    if isinstance(b, JordanPole):
        return b.rank
    return Rank.INF


def model_profile(m: BlockModel, depth: int = DEFAULT_DEPTH) -> SpectralProfile:
    """Profile of the direct sum.  Blocks sharing an isolated point merge
    (non-pole beats pole, infinite rank absorbs finite); anything touching a
    cluster makes the model invalid."""
    merged: dict[GaussianRational, list[PrimitiveBlock]] = {}
    clusters: list[Atom] = []
    for b in m.blocks:
        if isinstance(b, ClusterDiag):
            clusters.append(ClusterAtom(b.limit, b.r, b.q, Kind.POLE, b.rank_each))
        else:
            merged.setdefault(b.lam, []).append(b)
    atoms: list[Atom] = list(clusters)
    for lam, bs in merged.items():
        if any(isinstance(b, QuasiNil) for b in bs):
            atoms.append(IsolatedAtom(lam, Kind.ISO_NONPOLE, Rank.INF))
        else:
            rank = Rank.INF if any(b.rank is Rank.INF for b in bs) else Rank.FIN
            atoms.append(IsolatedAtom(lam, Kind.POLE, rank, max(b.order for b in bs)))
    return check_profile(SpectralProfile(atoms), depth)


def primitive_product(p: PrimitiveBlock, s: PrimitiveBlock) -> list[Atom]:
    """Classified spectrum of the product of two primitive blocks."""
    if isinstance(p, ClusterDiag) and isinstance(s, ClusterDiag):
        raise NotFinitelyRepresentable("product of two cluster blocks")
    if isinstance(s, ClusterDiag):
        p, s = s, p
    rank = Rank.tensor(_block_rank(p), _block_rank(s))

    if isinstance(p, ClusterDiag):
        mu = s.lam
        seq_kind = Kind.ISO_NONPOLE if isinstance(s, QuasiNil) else Kind.POLE
        if mu.is_zero():
            # the whole cluster block is multiplied into a single point
            return [IsolatedAtom(ZERO, seq_kind, Rank.INF)]
        each = Rank.tensor(p.rank_each, _block_rank(s))
        return [ClusterAtom(mu * p.limit, mu * p.r, p.q, seq_kind, each)]

    lam = p.lam * s.lam
    if isinstance(p, JordanPole) and isinstance(s, JordanPole):
        # nilpotent perturbations of commuting scalars stay nilpotent
        return [IsolatedAtom(lam, Kind.POLE, rank)]
    if isinstance(p, QuasiNil) and isinstance(s, QuasiNil):
        # powers of Q (x) Q' are Q^k (x) Q'^k, never zero
        return [IsolatedAtom(lam, Kind.ISO_NONPOLE, Rank.INF)]
    if isinstance(p, JordanPole):
        p, s = s, p
    # p quasi-nilpotent part, s Jordan pole
    if s.lam.is_zero():
        # (Q (x) N)^k = Q^k (x) N^k vanishes once N^k does
        return [IsolatedAtom(ZERO, Kind.POLE, rank)]
    return [IsolatedAtom(lam, Kind.ISO_NONPOLE, Rank.INF)]


def oracle_product(
    a: BlockModel, b: BlockModel, depth: int = DEFAULT_DEPTH
) -> SpectralProfile:
    if a.has_clusters() and b.has_clusters():
        raise NotFinitelyRepresentable("both models contain cluster blocks")
    model_profile(a, depth)
    model_profile(b, depth)
    atoms: list[Atom] = []
    for x in a.blocks:
        for y in b.blocks:
            atoms.extend(primitive_product(x, y))
    return check_profile(merge_atoms(atoms, depth), depth)


@dataclass(frozen=True)
class Agreement:
    equal: bool
    oracle: SpectralProfile
    calculus: SpectralProfile
    only_oracle: tuple[Atom, ...]
    only_calculus: tuple[Atom, ...]


def oracle_agreement(
    a: BlockModel, b: BlockModel, mode: Mode = Mode.TENSOR, depth: int = DEFAULT_DEPTH
) -> Agreement:
    """Compare the construction path with the factorization calculus on one pair."""
    if Mode(mode) is Mode.ELEMENTARY:
        built = oracle_product(b, a, depth)
    else:
        built = oracle_product(a, b, depth)
    derived = product_profile(model_profile(a, depth), model_profile(b, depth), mode, depth)
    left, right = set(built.atoms), set(derived.atoms)
    return Agreement(
        equal=built == derived,
        oracle=built,
        calculus=derived,
        only_oracle=tuple(a for a in built.atoms if a not in right),
        only_calculus=tuple(a for a in derived.atoms if a not in left),
    )
