import math
import random
from fractions import Fraction

import pytest
from hypothesis import given

from sptri.canonical import (
    ENTRY, MA_CATALOG, iso_split, ma_catalog, ma_reduce, signature_of, sylvester_reduce, symmetrizer_membership,
)
from sptri.errors import NotClassE, NotInHSigma, SigmaDimZero
from sptri.families import INF, HFamily
from sptri.identities import rand_gl
from sptri.matrix import I2, LAMBDA, SIGMA1, SIGMA2, SIGMA3, SIGMA5, Mat, dagger
from sptri.triple import SPANS, SymSpan, Triple, dual, invariance_defect, is_class_E

from .conftest import gl2, symmetric


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return Mat([[c, s], [-s, c]])


def test_sylvester_examples():
    s = sylvester_reduce(SIGMA5)
    assert s.triple == (1, 1, 0)
    assert dagger(s.witness, s.canonical).close(SIGMA5 * s.sign, 1e-12)
    s = sylvester_reduce(Mat.diag(2, 0))
    assert s.triple == (1, 0, 1)
    assert s.witness.close(Mat.diag(1 / math.sqrt(2), 1), 1e-12)
    assert dagger(s.witness, SIGMA3).close(Mat.diag(2, 0), 1e-12)
    s = sylvester_reduce(SIGMA1)
    assert s.triple == (2, 0, 0) and s.witness == I2
    assert sylvester_reduce(Mat.zeros(2)).triple == (0, 0, 2)


def test_sylvester_flips_negative_forms():
    s = sylvester_reduce(Mat.diag(-1, -4))
    assert s.triple == (2, 0, 0) and s.sign == -1
    assert dagger(s.witness, SIGMA1) == Mat.diag(1, 4)


@given(symmetric)
def test_sylvester_witness_identity(sigma):
    s = sylvester_reduce(sigma)
    assert s.p >= s.q and s.p + s.q + s.r == 2
    assert dagger(s.witness, s.canonical).close(sigma * s.sign, 1e-9 * max(1.0, sigma.norm()))


@given(symmetric, gl2)
def test_signature_is_congruence_invariant(sigma, h):
    assert signature_of(dagger(h, sigma)) == signature_of(sigma)


def test_symmetrizer_membership_examples():
    assert symmetrizer_membership(I2 * 3, Mat([[1, 2], [2, 7]])) == Fraction(1, 9)
    assert symmetrizer_membership(Mat([[2, 0], [5, 3]]), SIGMA3) == Fraction(1, 4)
    assert symmetrizer_membership(rotation(math.pi / 4), SIGMA3) is None


def test_iso_split_examples():
    es, f, eps = iso_split(I2 * 2, SIGMA1)
    assert es == Fraction(1, 4) and eps == 1 and f.close(I2, 1e-12)
    r = rotation(0.7)
    es, f, eps = iso_split(r, SIGMA1)
    assert math.isclose(es, 1) and f.close(r, 1e-12)
    boost = Mat([[math.cosh(0.3), math.sinh(0.3)], [math.sinh(0.3), math.cosh(0.3)]])
    es, f, eps = iso_split(boost * math.e, SIGMA2)
    assert math.isclose(es, math.exp(-2)) and f.close(boost, 1e-12) and eps == 1
    with pytest.raises(NotInHSigma):
        iso_split(rotation(0.5), SIGMA3)


@given(gl2)
def test_no_sign_flip_for_definite_or_degenerate(h):
    for sigma in (SIGMA1, SIGMA3):
        lam = symmetrizer_membership(h, sigma)
        if lam is not None:
            assert iso_split(h, sigma)[2] == 1


def test_catalog_contents():
    cat = ma_catalog()
    assert len(cat) == 24
    assert [e.ident for e in cat[:4]] == ["(1.i)", "(1.ii)", "(1.iii)", "(1.iv)"]
    assert ENTRY["(1.ii)"].family(Fraction(2)) == HFamily("H_alpha(sigma1)", Fraction(2))
    assert ENTRY["(1.ii)"].param_range == "[0, inf]"
    assert ENTRY["(3.vii)"].triple() == Triple(SPANS["Sigma3"], HFamily("K_inf(sigma3)"))
    assert ENTRY["(3.xvi)"].triple(Fraction(1)) == Triple(SPANS["Sigma3"].perp(),
                                                          HFamily("L_gamma(sigma3)", Fraction(1), True))


def test_catalog_entries_are_invariant():
    for e in MA_CATALOG:
        for p in ([None] if e.kind is None else [Fraction(0), Fraction(1), Fraction(-1, 2)]):
            t = e.triple(p)
            assert is_class_E(t), e.label(p)
            assert invariance_defect(t) <= 1e-9, e.label(p)


def test_ma_reduce_examples():
    d = Mat.diag(1 / math.sqrt(2), 1)
    t = Triple(SymSpan.of(Mat.diag(2, 0)), HFamily("H_0(sigma3)").conjugate(d.inv()))
    assert ma_reduce(t).label == "(3.ii)"
    red = ma_reduce(Triple(SPANS["Sigma1"], HFamily("H_alpha(sigma1)", Fraction(-2))))
    assert red.label == "(1.ii):alpha=2"
    assert red.h == LAMBDA
    red = ma_reduce(Triple(SPANS["Sigma2"], HFamily("H_inf(sigma2)")))
    assert red.label == "(2.ii):alpha=inf" and red.h == I2


def test_ma_reduce_errors():
    with pytest.raises(SigmaDimZero):
        ma_reduce(Triple(SPANS["zero"], HFamily("H_0(sigma3)")))
    with pytest.raises(NotClassE):
        ma_reduce(Triple(SPANS["Sigma3"], HFamily("trivial")))


def test_ma_reduce_is_idempotent_on_catalog():
    for e in MA_CATALOG:
        for p in ([None] if e.kind is None else [Fraction(0), Fraction(2), INF] if e.kind == "alpha"
                  else [Fraction(0), Fraction(-1, 2), Fraction(3)]):
            red = ma_reduce(e.triple(p))
            assert red.label == e.label(p)
            assert red.h == I2 or e.kind is not None


def test_ma_reduce_dual_rows():
    red = ma_reduce(dual(ENTRY["(1.ii)"].triple(Fraction(3))))
    assert red.label == "(1.iv):alpha=3"


def test_ma_reduce_random_conjugates():
    rng = random.Random(7)
    for e in MA_CATALOG:
        p = {None: None, "alpha": Fraction(1, 2), "gamma": Fraction(-1, 3)}[e.kind]
        t = e.triple(p)
        for _ in range(3):
            h = rand_gl(rng)
            conj = Triple(SymSpan([dagger(h, b) for b in t.sigma.basis]), t.h.conjugate(h))
            assert ma_reduce(conj).label == e.label(p)
