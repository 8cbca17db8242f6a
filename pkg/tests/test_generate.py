import pytest
from hypothesis import given
from hypothesis import strategies as st

from tensorspec.blocks import ClusterDiag, model_profile
from tensorspec.dsl import render_operator
from tensorspec.exact import gq
from tensorspec.generate import GenParams, corpus_pairs, gen_random

seeds = st.integers(0, 2**63 - 1)


def test_pinned_single_block():
    p = GenParams(seed=1, max_blocks=1, scalar_pool=(gq(1),))
    assert render_operator(gen_random(p)) == "sum(pole(1, ord=1, rank=inf))"


@given(seeds, st.integers(1, 6))
def test_deterministic_and_valid(seed, max_blocks):
    p = GenParams(seed, max_blocks=max_blocks)
    m = gen_random(p)
    assert m == gen_random(p)
    assert 1 <= len(m.blocks) <= max_blocks
    model_profile(m)
    assert sum(isinstance(b, ClusterDiag) for b in m.blocks) <= 1


@given(seeds)
def test_no_clusters_when_disallowed(seed):
    m = gen_random(GenParams(seed, allow_clusters=False))
    assert not m.has_clusters()


def test_corpus_has_at_most_one_cluster_per_pair():
    pairs = list(corpus_pairs(3, 400))
    assert pairs == list(corpus_pairs(3, 400))
    assert all(not (p.a.has_clusters() and p.b.has_clusters()) for p in pairs)
    assert any(p.a.has_clusters() or p.b.has_clusters() for p in pairs)


def test_rejects_bad_params():
    with pytest.raises(ValueError):
        GenParams(0, max_blocks=0)
    with pytest.raises(ValueError):
        GenParams(0, scalar_pool=())
