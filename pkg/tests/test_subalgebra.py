import random
from fractions import Fraction

import pytest
from hypothesis import given

from sptri.errors import AmbientMismatch, NotASubalgebra
from sptri.families import INF, HFamily
from sptri.identities import rand_lower, rand_nonzero, rand_q
from sptri.matrix import B, I2, J2, LAMBDA, SIGMA2, SIGMA4, SIGMA5, Mat
from sptri.subalgebra import (
    LieSub, bracket, canonical_basis, classify_subalgebra, exponentiate, label_of_family, span_equal,
)

from .conftest import nonzero, rationals


def test_bracket_examples():
    assert bracket(SIGMA4, B) == B
    assert bracket(I2, Mat([[1, 2], [3, 4]])) == Mat.zeros(2)
    assert bracket(J2, SIGMA5) == SIGMA2 * 2


def test_classify_examples():
    lab = classify_subalgebra(LieSub("sigma1", [I2 - J2 * 3]))
    assert (lab.name, lab.param) == ("h_alpha", 3) and lab.witness == LAMBDA
    lab = classify_subalgebra(LieSub("sigma3", [I2 * 5 + B * 5]))
    assert (lab.name, lab.param) == ("h_1", None)
    lab = classify_subalgebra(LieSub("sigma3", [I2, B * 7 + SIGMA4]))
    assert (lab.name, lab.param) == ("k_0", None)
    assert span_equal(LieSub("sigma3", [I2, B * 7 + SIGMA4]).conjugate(lab.witness).basis, [I2, SIGMA4])
    lab = classify_subalgebra(LieSub("sigma3", [B, I2 * Fraction(-1, 2) + SIGMA4]))
    assert (lab.name, lab.param) == ("l_gamma", Fraction(-1, 2))


def test_classify_special_values():
    assert classify_subalgebra(LieSub("sigma2", [SIGMA5])).param is INF
    assert classify_subalgebra(LieSub("sigma2", [I2])).param == 0
    assert classify_subalgebra(LieSub("sigma2", [I2, SIGMA5])).name == "full"
    assert classify_subalgebra(LieSub("sigma3", [I2, SIGMA4, B])).name == "full"
    assert classify_subalgebra(LieSub("sigma3", [B * 3])).name == "h_0"
    assert classify_subalgebra(LieSub("sigma3", [I2 * 2])).name == "h_inf"
    assert classify_subalgebra(LieSub("sigma3", [I2, B])).name == "k_inf"
    lab = classify_subalgebra(LieSub("sigma3", [I2 * 2 + SIGMA4 * 4 + B]))
    assert (lab.name, lab.param) == ("h_gamma0", Fraction(1, 2))


def test_classify_errors():
    with pytest.raises(AmbientMismatch):
        LieSub("sigma1", [SIGMA5])
    with pytest.raises(AmbientMismatch):
        LieSub("sigma4", [I2])
    with pytest.raises(NotASubalgebra):
        LieSub("sigma3", [SIGMA4, SIGMA4 * 2])
    with pytest.raises(NotASubalgebra):
        LieSub("sigma3", [SIGMA4, I2 + B])


def test_distinct_one_dimensional_labels():
    keys = {classify_subalgebra(LieSub("sigma3", x)).key for x in
            ([B], [I2 + B], [I2], [SIGMA4], [I2 + SIGMA4], [I2 * -1 + SIGMA4])}
    assert len(keys) == 6


def test_exponentiate_examples():
    lab = classify_subalgebra(LieSub("sigma2", [I2 + SIGMA5 * 2]))
    assert exponentiate(lab) == HFamily("H_alpha(sigma2)", Fraction(2))
    assert exponentiate(classify_subalgebra(LieSub("sigma3", [B]))) == HFamily("H_0(sigma3)")
    assert exponentiate(classify_subalgebra(LieSub("sigma3", [B, SIGMA4]))) == HFamily("L_gamma(sigma3)", 0)
    assert exponentiate(classify_subalgebra(LieSub("sigma1", [J2]))) == HFamily("H_inf(sigma1)")


def test_exponentiate_generators_match_canonical_basis():
    for amb, name, param in [("sigma1", "h_alpha", Fraction(2)), ("sigma1", "full", None),
                             ("sigma2", "h_alpha", Fraction(1, 3)), ("sigma3", "h_0", None),
                             ("sigma3", "h_1", None), ("sigma3", "h_inf", None),
                             ("sigma3", "h_gamma0", Fraction(-1)), ("sigma3", "k_0", None),
                             ("sigma3", "k_inf", None), ("sigma3", "l_gamma", Fraction(3)),
                             ("sigma3", "full", None)]:
        fam = exponentiate(classify_subalgebra(LieSub(amb, canonical_basis(amb, name, param))))
        assert span_equal(fam.generators(), canonical_basis(amb, name, param), 1e-6)
        assert label_of_family(fam) == (amb, name, param)


def random_h_sigma(rng, ambient):
    """A random rational element of the symmetrizer group of the ambient."""
    if ambient == "sigma3":
        return rand_lower(rng)
    other = J2 if ambient == "sigma1" else SIGMA5
    while True:
        m = I2 * rand_q(rng) + other * rand_q(rng)
        if m.det() != 0:
            break
    flip = rng.choice([I2, LAMBDA] + ([SIGMA5] if ambient == "sigma2" else []))
    return flip @ m


def random_subalgebra(rng, ambient):
    if ambient != "sigma3":
        if rng.random() < 0.15:
            return LieSub(ambient, [I2, J2 if ambient == "sigma1" else SIGMA5])
        other = J2 if ambient == "sigma1" else SIGMA5
        while True:
            x = I2 * rand_q(rng) + other * rand_q(rng)
            if x != Mat.zeros(2):
                return LieSub(ambient, [x])
    kind = rng.randrange(4)
    if kind == 0:
        while True:
            x = I2 * rand_q(rng) + SIGMA4 * rand_q(rng) + B * rand_q(rng)
            if x != Mat.zeros(2):
                return LieSub(ambient, [x])
    if kind == 1:
        return LieSub(ambient, [I2 * rand_q(rng) + SIGMA4 * rand_nonzero(rng) + B * rand_q(rng), I2])
    if kind == 2:
        return LieSub(ambient, [B * rand_nonzero(rng), I2 * rand_q(rng) + SIGMA4 * rand_nonzero(rng) + B])
    return LieSub(ambient, [B * rand_nonzero(rng), I2 * rand_nonzero(rng) + B * rand_q(rng)])


def conjugation_invariance_failures(ambient, n, seed=0):
    rng = random.Random(f"{seed}:{ambient}")
    bad = 0
    for _ in range(n):
        s = random_subalgebra(rng, ambient)
        lab = classify_subalgebra(s)
        if classify_subalgebra(s.conjugate(random_h_sigma(rng, ambient))).key != lab.key:
            bad += 1
    return bad


@pytest.mark.parametrize("ambient", ["sigma1", "sigma2", "sigma3"])
def test_conjugation_invariance(ambient):
    assert conjugation_invariance_failures(ambient, 200) == 0


@given(rationals, nonzero)
def test_alpha_sign_folding(p, q):
    for amb, other in (("sigma1", J2), ("sigma2", SIGMA5)):
        a = classify_subalgebra(LieSub(amb, [I2 * p + other * q]))
        b = classify_subalgebra(LieSub(amb, [I2 * p - other * q]))
        assert a.key == b.key
        assert a.param is INF if p == 0 else a.param == abs(q / p)


@given(rationals, rationals)
def test_l_gamma_parameter_preserved(gamma, mu):
    s = LieSub("sigma3", [B, I2 * gamma + SIGMA4 + B * mu])
    lab = classify_subalgebra(s)
    assert (lab.name, lab.param) == ("l_gamma", gamma)


@given(rationals, nonzero, rationals)
def test_canonicalization_idempotent(g, a, b):
    lab = classify_subalgebra(LieSub("sigma3", [I2 * g + SIGMA4 * a + B * b]))
    again = classify_subalgebra(LieSub("sigma3", canonical_basis("sigma3", lab.name, lab.param)))
    assert again.key == lab.key and again.witness == I2
