"""Seeded random block models for the property corpus.

Generation is a pure function of :class:`GenParams`: the same parameters
always give the same model.  Candidates that violate the profile invariants
(a point on a cluster, two clusters sharing a tail, ...) are redrawn from
the same stream, so the retry loop stays deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Iterator, Optional

from .blocks import BlockModel, ClusterDiag, JordanPole, QuasiNil, model_profile
from .errors import SpectralError
from .exact import GaussianRational, gq
from .profile import Rank

_HALF = gq(1, 0) / 2

DEFAULT_SCALARS: tuple[GaussianRational, ...] = (
    gq(0), gq(1), gq(-1), gq(2), _HALF, gq(0, 1), gq(1, 1), -_HALF, gq(3),
)
DEFAULT_RATIOS: tuple[GaussianRational, ...] = (
    _HALF, -_HALF, gq(1, 0) / 3, gq(0, 1) / 2, gq(2) / 3,
)

MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class GenParams:
    seed: int
    max_blocks: int = 4
    allow_clusters: bool = True
    scalar_pool: tuple[GaussianRational, ...] = DEFAULT_SCALARS
    ratio_pool: tuple[GaussianRational, ...] = DEFAULT_RATIOS
    max_order: int = 3

    def __post_init__(self):
        if self.max_blocks < 1:
            raise ValueError("max_blocks must be positive")
        if not self.scalar_pool:
            raise ValueError("scalar_pool must not be empty")
        object.__setattr__(self, "scalar_pool", tuple(GaussianRational.coerce(x) for x in self.scalar_pool))
        object.__setattr__(self, "ratio_pool", tuple(GaussianRational.coerce(x) for x in self.ratio_pool))


def _draw(rng: random.Random, p: GenParams, cluster_ok: bool) -> BlockModel:
    blocks = []
    for _ in range(rng.randint(1, p.max_blocks)):
        roll = rng.random()
        point = rng.choice(p.scalar_pool)
        if cluster_ok and roll < 0.2:
            nonzero = [x for x in p.scalar_pool if not x.is_zero()] or [GaussianRational(1)]
            blocks.append(
                ClusterDiag(
                    point,
                    rng.choice(nonzero),
                    rng.choice(p.ratio_pool),
                    Rank.INF if rng.random() < 0.2 else Rank.FIN,
                )
            )
            cluster_ok = False
        elif roll < 0.45:
            blocks.append(QuasiNil(point))
        else:
            rank = Rank.FIN if rng.random() < 0.3 else Rank.INF
            blocks.append(JordanPole(point, rng.randint(1, p.max_order), rank))
    return BlockModel(tuple(blocks))


def gen_random(p: GenParams) -> BlockModel:
    rng = random.Random(p.seed)
    cluster_ok = p.allow_clusters and bool(p.ratio_pool)
    for _ in range(MAX_ATTEMPTS):
        model = _draw(rng, p, cluster_ok)
        try:
            model_profile(model)
        except SpectralError:
            continue
        return model
    # a lone pole always validates
    return BlockModel((JordanPole(p.scalar_pool[0]),))


@dataclass(frozen=True)
class CorpusPair:
    index: int
    a: BlockModel
    b: BlockModel


def corpus_pairs(
    seed: int, count: int, params: Optional[GenParams] = None
) -> Iterator[CorpusPair]:
    """Pairs with at most one cluster between them, so every product is
    finitely representable."""
    base = params or GenParams(seed)
    for k in range(count):
        s = seed * 1_000_003 + 2 * k
        a = gen_random(replace(base, seed=s))
        b = gen_random(replace(base, seed=s + 1, allow_clusters=base.allow_clusters and not a.has_clusters()))
        yield CorpusPair(k, a, b)
