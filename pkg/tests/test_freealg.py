"""Free graded algebra: polynomials, commutators, g-family, evaluation,
identity templates."""

import pytest
from hypothesis import given, settings, strategies as st

from grasgk.scalar import FieldSpec, Scalar
from grasgk.grassmann import GradingSpec, GrassmannElement, random_homogeneous
from grasgk.freealg import (
    FreePoly,
    MultiDegree,
    ParityError,
    Variable,
    build_g,
    commutator,
    evaluate,
    identity_templates,
    left_normed_commutator,
    parse_word,
    verify_identity,
    y,
    z,
)

Q = FieldSpec(0)
F5 = FieldSpec(5)


def test_variable_parity_and_order():
    assert y(1).parity == 0
    assert z(1).parity == 1
    assert y(1) < y(2) < z(1) < z(2)
    assert Variable.parse("y3") == y(3)
    assert Variable.parse("z10") == z(10)
    with pytest.raises(ValueError):
        Variable.parse("x1")


def test_multidegree_of_word():
    w = (y(1), z(2), y(1), z(1))
    d = MultiDegree.of_word(w, 2)
    assert d.y_exponents == (2, 0)
    assert d.z_exponents == (1, 1)
    assert d.total == 4


def test_poly_ring_ops():
    f = FreePoly.var(Q, y(1))
    g = FreePoly.var(Q, z(1))
    fg = f.mul(g)
    gf = g.mul(f)
    assert fg != gf
    assert commutator(f, g) == fg.sub(gf)
    assert f.mul(f.add(g)) == f.mul(f).add(fg)


def test_commutator_bilinear_antisymmetric_on_words():
    f = FreePoly.var(Q, y(1))
    g = FreePoly.var(Q, z(2))
    assert commutator(f, g) == commutator(g, f).neg()
    assert commutator(f, f).is_zero()


def test_g_family_pinned():
    # g_1(z) = z
    g1 = build_g(Q, (z(1),))
    assert g1 == FreePoly.var(Q, z(1))
    # g_2 = z1 z2 - (1/2)[z1, z2] = (1/2)(z1z2 + z2z1)
    g2 = build_g(Q, (z(1), z(2)))
    half = Scalar.of(Q, 1, 2)
    expected = FreePoly.from_word(Q, (z(1), z(2))).scale(half).add(
        FreePoly.from_word(Q, (z(2), z(1))).scale(half)
    )
    assert g2 == expected
    direct = FreePoly.from_word(Q, (z(1), z(2))).sub(
        commutator(FreePoly.var(Q, z(1)), FreePoly.var(Q, z(2))).scale(half)
    )
    assert g2 == direct


def test_g3_matches_defining_sum():
    g3 = build_g(Q, (z(1), z(2), z(3)))
    half = Scalar.of(Q, 1, 2)
    zs = [FreePoly.var(Q, z(i)) for i in (1, 2, 3)]
    expected = FreePoly.from_word(Q, (z(1), z(2), z(3)))
    expected = expected.sub(zs[2].mul(commutator(zs[0], zs[1])).scale(half))
    expected = expected.sub(zs[1].mul(commutator(zs[0], zs[2])).scale(half))
    expected = expected.sub(zs[0].mul(commutator(zs[1], zs[2])).scale(half))
    assert g3 == expected


def test_g_equal_letters_collapses_to_power():
    # commutators of equal letters vanish, so g_m(z,...,z) = z^m
    for mdeg in (2, 3, 4):
        g = build_g(Q, tuple([z(1)] * mdeg))
        assert g == FreePoly.from_word(Q, tuple([z(1)] * mdeg))


def test_evaluate_is_homomorphism():
    g = GradingSpec("kstar", 2)
    n = 10
    import random

    rng = random.Random(5)
    assign = {
        y(1): random_homogeneous(g, 0, n, 3, rng, Q),
        z(1): random_homogeneous(g, 1, n, 3, rng, Q),
    }
    f1 = FreePoly.var(Q, y(1)).add(FreePoly.var(Q, z(1)))
    f2 = FreePoly.var(Q, z(1)).mul(FreePoly.var(Q, y(1)))
    lhs = evaluate(f1.mul(f2), assign, g)
    rhs = evaluate(f1, assign, g).mul(evaluate(f2, assign, g))
    assert lhs == rhs


def test_evaluate_rejects_inhomogeneous_images():
    g = GradingSpec("inf")
    n = 6
    # under inf, e1 is odd and e2 is even, so the sum is not homogeneous
    bad = GrassmannElement.monomial(Q, n, (1,)).add(
        GrassmannElement.monomial(Q, n, (2,))
    )
    with pytest.raises(ParityError):
        evaluate(FreePoly.var(Q, z(1)), {z(1): bad}, g)


def test_triple_commutator_is_identity_everywhere():
    # the triple commutator vanishes on E under all three gradings
    f = left_normed_commutator(Q, [y(1), z(2), y(3)])
    for label in ("kstar:1", "inf", "k:2"):
        g = GradingSpec.parse(label)
        rep = verify_identity(f, g, Q, 10, trials=12, seed=2, name="[y1,z2,y3]")
        assert rep.status == "PASS"


def test_nonidentity_detected_with_witness():
    g = GradingSpec("inf")
    rep = verify_identity(FreePoly.var(Q, z(1)), g, Q, 8, trials=5, seed=0, name="z1")
    assert rep.status == "FAIL"
    assert rep.witness is not None


def test_z5_not_identity_char0():
    # z^5 vanishes in characteristic 5 but not characteristic 0
    g = GradingSpec("inf")
    f = FreePoly.from_word(Q, tuple([z(1)] * 5))
    # explicit witness: (e1 + e2e3 + e4e5 + e6e7 + e8e9)^5 = 5! e1...e9
    n = 12
    witness = GrassmannElement.monomial(Q, n, (1,))
    for pair in ((2, 3), (4, 5), (6, 7), (8, 9)):
        witness = witness.add(GrassmannElement.monomial(Q, n, pair))
    value = evaluate(f, {z(1): witness}, g)
    assert value == GrassmannElement.monomial(Q, n, tuple(range(1, 10)), 120)
    rep = verify_identity(f, g, Q, 12, trials=40, seed=1, name="z1^5")
    assert rep.status == "FAIL"
    f5 = FreePoly.from_word(F5, tuple([z(1)] * 5))
    rep5 = verify_identity(f5, g, F5, 12, trials=40, seed=1, name="z1^5")
    assert rep5.status == "PASS"


def test_templates_cover_char_p_cases():
    templates, _ = identity_templates(GradingSpec("kstar", 5), FieldSpec(3), 7)
    names = [t.name for t in templates]
    assert "z1^3" in names
    templates0, _ = identity_templates(GradingSpec("kstar", 5), Q, 7)
    assert "z1^3" not in [t.name for t in templates0]


def test_templates_skipped_when_m_small():
    templates, skipped = identity_templates(GradingSpec("kstar", 1), Q, 1)
    assert templates == []
    assert skipped


def test_parse_word():
    f = parse_word(Q, "y1*z2^3")
    ((word, coef),) = f.sorted_terms()
    assert word == (y(1), z(2), z(2), z(2))
    assert parse_word(Q, "z1z2") == FreePoly.from_word(Q, (z(1), z(2)))


def test_poly_serialization_roundtrip():
    f = build_g(Q, (z(1), z(2)))
    assert FreePoly.from_dict(f.to_dict(), Q) == f
