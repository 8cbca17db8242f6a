from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from tensorspec.blocks import model_profile
from tensorspec.exact import ZERO, gq
from tensorspec.generate import corpus_pairs
from tensorspec.products import Mode
from tensorspec.profile import SpectralProfile, cluster, pole, quasinil
from tensorspec.sets import SymbolicSet
from tensorspec.transfer import (
    Scenario,
    bweyl_inclusion_holds,
    reverse_inclusion_check,
    s_set,
    transfer_report,
)

h = Fraction(1, 2)
P = SpectralProfile.of
pts = lambda *xs: SymbolicSet.build([gq(x) for x in xs])  # noqa: E731

ALG_TIMES_CLUSTER = (P(pole(1)), P(cluster(0, 1, h)))
QN_SQUARED = (P(quasinil(1)), P(quasinil(1)))
MIXED_SQUARED = (P(pole(0), quasinil(1)), P(pole(0), quasinil(1)))
NILPOTENT_PAIR = (P(pole(0)), P(cluster(3, 1, h)))


def test_s_set_examples():
    assert s_set(*ALG_TIMES_CLUSTER).same_as(pts(0))
    assert s_set(P(pole(1), pole(2)), P(pole(0), pole(3))).is_empty()
    assert s_set(P(quasinil(1)), P(pole(2))).same_as(pts(2))


def test_inclusion_examples():
    assert bweyl_inclusion_holds(*ALG_TIMES_CLUSTER).holds
    inc = bweyl_inclusion_holds(*QN_SQUARED)
    assert inc.holds and s_set(*QN_SQUARED).same_as(pts(1))
    inc = bweyl_inclusion_holds(*MIXED_SQUARED)
    assert not inc.holds and inc.witnesses.same_as(pts(0))
    for pair in (ALG_TIMES_CLUSTER, QN_SQUARED, MIXED_SQUARED, NILPOTENT_PAIR):
        assert reverse_inclusion_check(*pair)


def test_report_algebraic_factor():
    r = transfer_report(*ALG_TIMES_CLUSTER)
    assert r.scenario is Scenario.A_ALGEBRAIC_NOT_NILPOTENT
    assert r.inclusion_holds and r.s_minus_bw == "equal"
    p = r.prediction
    assert p.rule == "algebraic_factor" and p.predicted and p.agrees
    # 0 is not a pole of the algebraic factor, so the pair is outside the gate
    assert not p.gated


def test_report_gated_algebraic_factor():
    # the cluster factor is Drazin invertible (0 is not in its spectrum)
    r = transfer_report(P(pole(0), pole(1)), P(cluster(3, 1, h)))
    assert r.prediction.gated and r.prediction.agrees
    assert r.prediction.predicted is False and not r.inclusion_holds
    r = transfer_report(P(pole(0), pole(1)), P(quasinil(0), pole(2)))
    assert r.prediction.gated and r.prediction.predicted and r.inclusion_holds


def test_report_non_algebraic():
    r = transfer_report(*MIXED_SQUARED)
    assert r.scenario is Scenario.BOTH_NON_ALGEBRAIC
    assert not r.inclusion_holds and r.s_minus_bw == "equal_plus_zero"
    assert r.prediction.rule == "non_algebraic" and r.prediction.predicted is False
    assert r.prediction.agrees


def test_report_nilpotent_factor():
    r = transfer_report(*NILPOTENT_PAIR)
    assert r.scenario is Scenario.NILPOTENT_FACTOR
    assert r.weyl_identity_holds
    assert r.sigma_bw_product.is_empty()
    # sigma(A) sigma_bw(B) = {0} * {3} = {0}, which the product does not reach
    assert r.s_set.same_as(pts(0)) and not r.inclusion_holds


@given(st.integers(0, 2**32))
def test_transfer_invariants(seed):
    pair = next(corpus_pairs(seed, 1))
    a, b = model_profile(pair.a), model_profile(pair.b)
    r = transfer_report(a, b)
    assert r.reverse_inclusion_holds
    if not r.inclusion_holds:
        assert r.s_minus_bw == "equal_plus_zero"
        assert r.s_set.same_as(r.sigma_bw_product.union(SymbolicSet((ZERO,))))
    if r.scenario is Scenario.BOTH_NON_ALGEBRAIC:
        assert r.inclusion_holds == r.zero_not_pole_product == r.invertible_or_not_drazin
    if r.prediction.gated:
        assert r.prediction.agrees
    if r.weyl_hypotheses:
        assert r.bw_equals_s and r.weyl_identity_holds
    e = transfer_report(a, b, Mode.ELEMENTARY)
    assert (e.scenario, e.inclusion_holds, e.s_minus_bw, e.prediction, e.product) == (
        r.scenario, r.inclusion_holds, r.s_minus_bw, r.prediction, r.product,
    )
    assert e.s_set == r.s_set and e.witnesses == r.witnesses
