import math
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given

from sptri.errors import InsufficientSamples, SigmaNotInSpan, SpecError, TauNotZero
from sptri.families import HFamily
from sptri.matrix import I2, SIGMA2, SIGMA3, SIGMA4, SIGMA5, Mat, dagger
from sptri.parabolic import g
from sptri.scalar import SYMBOLIC
from sptri.triple import (
    GIOVANNI, SPANS, Coboundary, SymSpan, Triple, Zero, check_cocycle, detect_coboundary, dual, dumps_spec,
    extract_triple, is_class_E, loads_spec, tau_equivalent, triple_to_spec,
)

from .conftest import gl2, symmetric

SPECS = sorted((Path(__file__).parent.parent / "specs").glob("*.json"))
UNIPOTENT = HFamily("H_0(sigma3)")
DIAGONAL = HFamily("H_gamma0(sigma3)", Fraction(-1, 2))  # x -> diag(e^(-x/2), e^(x/2))
TAU0 = Mat.diag(1, -1)


def test_build_group_element():
    t = Triple(SPANS["Sigma3"], UNIPOTENT)
    x, y = Fraction(5), Fraction(2)
    assert t.element(SIGMA3 * x, (y,)).matrix == Mat([[1, 0, 0, 0], [y, 1, 0, 0], [x, 0, 1, -y], [0, 0, 0, 1]])
    assert t.element(SIGMA3 * 0, (0,)) == g()
    with pytest.raises(SigmaNotInSpan):
        t.element(SIGMA5, (0,))


def test_twisted_group_element():
    # g(tau0, I) (Sigma3 x| H_0) g(tau0, I)^-1 at x = 5, y = 2
    t = Triple(SPANS["Sigma3"], UNIPOTENT, Coboundary(TAU0))
    expected = Mat([[1, 0, 0, 0], [2, 1, 0, 0], [5, -2, 1, -2], [-2, 0, 0, 1]])
    assert t.element(SIGMA3 * 5, (2,)).matrix == expected
    plain = Triple(SPANS["Sigma3"], UNIPOTENT).element(SIGMA3 * 5, (2,))
    assert g(TAU0).matrix @ plain.matrix @ g(TAU0).inverse().matrix == expected


def test_twisted_diagonal_group_element():
    t = Triple(SPANS["Sigma3"], DIAGONAL, GIOVANNI)
    x = t.element(SIGMA3 * 2, (-2,))
    e = math.e
    assert x.matrix.close(Mat([[e, 0, 0, 0], [0, 1 / e, 0, 0], [2 * e, -1 / e, 1 / e, 0], [-e, 0, 0, e]]), 1e-12)


def test_cocycle_examples():
    r = check_cocycle(Triple(SPANS["Sigma3"], UNIPOTENT))
    assert r.passed and r.exact_zero and r.worst == 0
    r = check_cocycle(Triple(SPANS["Sigma3"], DIAGONAL, GIOVANNI), backend=SYMBOLIC)
    assert r.passed and r.exact_zero
    assert check_cocycle(Triple(SPANS["Sigma3"], UNIPOTENT, Coboundary(TAU0))).passed


def test_cocycle_failure_is_detected():
    # a tau that is not a cocycle: tau(h) = h00 sigma5 on unipotents is constant, defect = sigma5 off Sigma3
    from sptri.triple import Homomorphic

    bad = Homomorphic(lambda h, bk: SIGMA5 * (h[0, 0]), "h00*sigma5")
    r = check_cocycle(Triple(SPANS["Sigma3"], UNIPOTENT, bad))
    assert not r.passed and r.worst > 0


def test_tau_equivalent_examples():
    fam = HFamily("H_gamma0(sigma3)", Fraction(1))
    assert tau_equivalent(GIOVANNI, GIOVANNI, SPANS["Sigma3"], DIAGONAL)
    assert tau_equivalent(Zero(), Coboundary(SIGMA3), SPANS["Sigma3"], fam)
    assert not tau_equivalent(Zero(), GIOVANNI, SPANS["Sigma3"], DIAGONAL)


def test_detect_coboundary_examples():
    t0 = detect_coboundary(Coboundary(TAU0), UNIPOTENT)
    assert t0 is not None
    assert tau_equivalent(Coboundary(t0), Coboundary(TAU0), SPANS["zero"], UNIPOTENT)
    assert detect_coboundary(GIOVANNI, DIAGONAL) is None
    assert detect_coboundary(Zero(), UNIPOTENT) == Mat.zeros(2)
    with pytest.raises(InsufficientSamples):
        detect_coboundary(Zero(), UNIPOTENT, samples=[(0,), (1,)])


def test_class_e_examples():
    assert is_class_E(Triple(SPANS["Sigma3"], UNIPOTENT))
    assert not is_class_E(Triple(SPANS["Sigma3"], DIAGONAL, GIOVANNI))
    assert not is_class_E(Triple(SPANS["Sigma3"], HFamily("trivial")))
    assert is_class_E(Triple(SPANS["Sigma3"], UNIPOTENT, Coboundary(SIGMA3)))


def test_dual_examples():
    assert SPANS["Sigma3"].perp() == SymSpan.of(SIGMA4, SIGMA5)
    assert SPANS["Sigma1"].perp() == SymSpan.of(SIGMA2, SIGMA5)
    t = Triple(SPANS["Sigma1"], HFamily("H_alpha(sigma1)", Fraction(3)))
    assert dual(dual(t)) == t
    with pytest.raises(TauNotZero):
        dual(Triple(SPANS["Sigma3"], DIAGONAL, GIOVANNI))


def test_extract_round_trip():
    t = Triple(SPANS["Sigma3"], UNIPOTENT)
    ex = extract_triple([x.matrix for x in t.sample_elements()] + [g(SIGMA3 * k).matrix for k in (1, -1, 2)])
    assert ex.sigma == SPANS["Sigma3"]
    assert all(UNIPOTENT.contains(h) for h in ex.h_samples)
    assert not ex.discrete_sigma


def test_extract_rotation_lattice():
    def rot_elem(theta):
        c, s = math.cos(theta), math.sin(theta)
        r = Mat([[c, s], [-s, c]])
        return Mat.from_blocks(r, Mat.zeros(2), r * theta, r)

    ex = extract_triple([rot_elem(k * 2 * math.pi) for k in (0, 1, 2)], 1e-9)
    assert ex.discrete_sigma


def test_extract_trivial():
    ex = extract_triple([Mat.identity(4)])
    assert ex.trivial and ex.sigma.dim == 0


@pytest.mark.parametrize("path", SPECS, ids=[p.name for p in SPECS])
def test_spec_files_round_trip(path):
    text = path.read_text()
    if "H_nope" in text:
        with pytest.raises(SpecError, match="h_family.name"):
            loads_spec(text)
        return
    t = loads_spec(text)
    again = loads_spec(dumps_spec(t))
    assert again == t and triple_to_spec(again) == triple_to_spec(t)


@pytest.mark.parametrize("text,field", [
    ('{"schema_version": 2, "sigma_basis": [], "h_family": {"name": "T0"}}', "schema_version"),
    ('{"schema_version": 1, "sigma_basis": [[[1,2],[3,4]]], "h_family": {"name": "T0"}}', "sigma_basis[0]"),
    ('{"schema_version": 1, "sigma_basis": [[[1,0],[0,0]]], "h_family": {"name": "T0"}, "extra": 1}', "spec"),
    ('{"schema_version": 1, "sigma_basis": [[[1,0],[0,0]]], "h_family": {"name": "T0"},'
     ' "tau": {"kind": "weird"}}', "tau.kind"),
])
def test_spec_errors_name_the_field(text, field):
    with pytest.raises(SpecError) as err:
        loads_spec(text)
    assert field in str(err.value)


def test_spec_json_errors_have_position():
    with pytest.raises(SpecError, match="line 2"):
        loads_spec('{\n  "schema_version": 1,,\n}')


@given(gl2, symmetric)
def test_coboundary_is_a_cocycle(h, t0):
    tau = Coboundary(t0)
    h2 = Mat([[1, 0], [1, 1]])
    defect = tau.value(h) + dagger(h, tau.value(h2)) - tau.value(h @ h2)
    assert defect == Mat.zeros(2)
    assert tau.value(I2) == Mat.zeros(2)
