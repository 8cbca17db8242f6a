from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tensorspec.blocks import BlockModel, ClusterDiag, JordanPole, QuasiNil
from tensorspec.dsl import parse_blocks, parse_operator, render_gq, render_operator, tokenize
from tensorspec.errors import DslSyntaxError, DslValidationError
from tensorspec.exact import GaussianRational, gq, parse_gq
from tensorspec.generate import GenParams, corpus_pairs, gen_random
from tensorspec.profile import Rank

from conftest import gqs

h = Fraction(1, 2)


def test_spec_examples():
    assert parse_operator("sum(pole(1, ord=1, rank=inf))") == BlockModel((JordanPole(gq(1), 1, Rank.INF),))
    m = parse_operator("sum(quasinil(0), pole(1, ord=2, rank=fin))")
    assert m.blocks == (QuasiNil(gq(0)), JordanPole(gq(1), 2, Rank.FIN))
    with pytest.raises(DslValidationError):
        parse_operator("sum(cluster(0, r=1, q=1/2), cluster(0, r=1, q=1/2))")


def test_defaults_and_keyword_order():
    assert parse_operator("sum(pole(2))").blocks == (JordanPole(gq(2), 1, Rank.INF),)
    assert parse_blocks("sum(pole(2, rank=fin, ord=3))").blocks == (JordanPole(gq(2), 3, Rank.FIN),)
    c = parse_operator("sum(cluster(0, q=1/2, r=1, rank=inf))").blocks[0]
    assert c == ClusterDiag(gq(0), gq(1), gq(h), Rank.INF)


@pytest.mark.parametrize(
    "text, value",
    [
        ("3", gq(3)),
        ("-1/2", gq(-h)),
        ("1/2+1/3i", gq(h, Fraction(1, 3))),
        ("0+1i", gq(0, 1)),
        ("2i", gq(0, 2)),
        ("-i", gq(0, -1)),
        ("1/2-i", gq(h, -1)),
        ("+4", gq(4)),
    ],
)
def test_scalar_forms(text, value):
    assert parse_blocks(f"sum(quasinil({text}))").blocks[0].lam == value


def test_comments_and_newlines():
    text = "# header\nsum(\n  pole(1),  # the pole\n  quasinil(0)\n)\n"
    assert len(parse_operator(text).blocks) == 2


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("sum(pole(1)", 1, 12),
        ("sum(pol(1))", 1, 5),
        ("sum(pole(1, ord=0))", 1, 5),
        ("sum(pole(1, ord=1, ord=2))", 1, 20),
        ("sum(\n  pole(1, rank=maybe))", 2, 16),
        ("sum(quasinil(1/0))", 1, 16),
        ("sum(cluster(0, r=1))", 1, 5),
        ("sum(pole(1)) extra", 1, 14),
        ("sum(pole(1 $))", 1, 12),
        ("sum(quasinil(1+2))", 1, 17),
    ],
)
def test_syntax_errors_carry_positions(text, line, column):
    with pytest.raises(DslSyntaxError) as info:
        parse_operator(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


def test_validation_errors():
    # a pole on the cluster's sequence
    with pytest.raises(DslValidationError):
        parse_operator("sum(cluster(0, r=1, q=1/2), pole(1/4))")
    assert parse_blocks("sum(cluster(0, r=1, q=1/2), pole(1/4))").has_clusters()


def test_tokenize_positions():
    toks = tokenize("sum(\n pole(1))")
    assert [(t.text, t.line, t.column) for t in toks[:3]] == [("sum", 1, 1), ("(", 1, 4), ("pole", 2, 2)]
    assert toks[-1].kind == "eof"


@given(gqs)
def test_render_gq_round_trip(z):
    assert parse_gq(render_gq(z)) == z
    assert parse_blocks(f"sum(quasinil({render_gq(z)}))").blocks[0].lam == z


def test_render_canonical_forms():
    assert render_gq(gq(0, 1)) == "0+1i"
    assert render_gq(gq(h, Fraction(-2, 3))) == "1/2-2/3i"
    m = BlockModel((JordanPole(gq(1)), ClusterDiag(gq(0), gq(1), gq(h)), QuasiNil(gq(0, -1))))
    assert render_operator(m) == "sum(pole(1, ord=1, rank=inf), cluster(0, r=1, q=1/2), quasinil(0-1i))"


@given(st.integers(0, 2**63 - 1))
def test_round_trip_on_generated_models(seed):
    m = gen_random(GenParams(seed))
    text = render_operator(m)
    assert parse_operator(text) == m
    assert render_operator(parse_operator(text)) == text


def test_round_trip_on_corpus():
    for pair in corpus_pairs(7, 300):
        for m in (pair.a, pair.b):
            assert parse_operator(render_operator(m)) == m
