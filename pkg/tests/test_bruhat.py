import random

import pytest
from hypothesis import given

from sptri.bruhat import IDENTITY_CELL, W0, W0_ELEMENT, WEYL, WeylElement, bruhat_cell
from sptri.errors import NotSymplectic
from sptri.identities import rand_lower, rand_sym
from sptri.matrix import I2, ZERO2, Mat, is_symplectic
from sptri.parabolic import g

from .conftest import gl2, lower, symmetric


def random_p(rng):
    return g(rand_sym(rng), rand_lower(rng)).matrix


def cell_failures(w, n, seed=0):
    rng = random.Random(f"{seed}:{w.tag}")
    return sum(bruhat_cell(random_p(rng) @ w.matrix @ random_p(rng), 0) != w for _ in range(n))


def test_weyl_representatives_are_distinct_and_symplectic():
    assert len({w.matrix for w in WEYL}) == 8
    assert all(is_symplectic(w.matrix, 0) for w in WEYL)
    assert all(bruhat_cell(w.matrix) == w for w in WEYL)


def test_bruhat_examples():
    assert bruhat_cell(g(Mat.diag(1, 2), Mat([[1, 0], [3, 2]])).matrix) == IDENTITY_CELL
    assert bruhat_cell(W0) == W0_ELEMENT
    minus_j = Mat.from_blocks(ZERO2, -I2, I2, ZERO2)
    assert bruhat_cell(minus_j) == WeylElement("0", "I")


def test_float_input():
    m = g(Mat.diag(0.5, 1.25), Mat([[2.0, 0.0], [0.1, 0.5]])).matrix @ W0
    assert bruhat_cell(m, 1e-9) == W0_ELEMENT


def test_not_symplectic():
    with pytest.raises(NotSymplectic):
        bruhat_cell(Mat.identity(4) * 2)
    with pytest.raises(NotSymplectic):
        bruhat_cell(I2)


@pytest.mark.parametrize("w", WEYL, ids=[w.tag for w in WEYL])
def test_cells_of_random_products(w):
    assert cell_failures(w, 30) == 0


@given(symmetric, lower)
def test_minimal_parabolic_is_identity_cell(s, h):
    assert bruhat_cell(g(s, h).matrix) == IDENTITY_CELL


@given(symmetric, gl2)
def test_q_elements_avoid_cells_outside_q(s, h):
    # Q = P u P w P for the Weyl elements with S+ = I
    assert bruhat_cell(g(s, h).matrix).s_plus == "I"
