import numpy as np
import pytest
from sympy import QQ

from pylie.errors import InputError
from pylie.chevalley import (
    cartan_matrix, root_system, build_simple, weighted_dynkin, element_from_combination,
    element_from_roots,
)
from pylie.liecore import bracket, check_jacobi
from pylie.slice import jacobson_morozov


@pytest.mark.parametrize("type_, rank, dim, positive", [
    ("A", 1, 3, 1),
    ("A", 3, 15, 6),
    ("B", 3, 21, 9),
    ("C", 3, 21, 9),
    ("D", 4, 28, 12),
    ("G", 2, 14, 6),
    ("F", 4, 52, 24),
    ("E", 6, 78, 36),
    pytest.param("E", 7, 133, 63, marks=pytest.mark.slow),
    pytest.param("E", 8, 248, 120, marks=pytest.mark.slow),
])
def test_dimensions(type_, rank, dim, positive):
    algebra, R, _ = build_simple(type_, rank)
    assert algebra.dim == dim
    assert R.num_positive == positive
    assert algebra.rank == rank


@pytest.mark.parametrize("type_, rank", [("A", 2), ("B", 2), ("C", 3), ("G", 2), ("F", 4), ("E", 6)])
def test_jacobi_exhaustive(type_, rank):
    algebra, _, _ = build_simple(type_, rank)
    n = algebra.dim
    assert check_jacobi(algebra) == n * (n - 1) * (n - 2) // 6
    assert algebra.jacobi == ("exhaustive", n * (n - 1) * (n - 2) // 6)


@pytest.mark.slow
def test_jacobi_e7_exhaustive():
    algebra, _, _ = build_simple("E", 7)
    assert algebra.jacobi == ("exhaustive", 133 * 132 * 131 // 6)


@pytest.mark.slow
def test_jacobi_e8_sampled():
    algebra, _, _ = build_simple("E", 8)
    assert algebra.jacobi == ("sampled", 100000)
    assert check_jacobi(algebra, samples=20000, rng=np.random.default_rng(8)) == 20000


@pytest.mark.parametrize("type_, rank", [("F", 5), ("E", 9), ("E", 5), ("G", 3), ("B", 1), ("X", 2)])
def test_invalid_types(type_, rank):
    with pytest.raises(InputError):
        cartan_matrix(type_, rank)


def test_cartan_matrix_g2_and_f4():
    assert cartan_matrix("G", 2) == [[2, -3], [-1, 2]]
    A = cartan_matrix("F", 4)
    assert A[1][2] == -1 and A[2][1] == -2


def test_highest_roots():
    assert root_system("E", 8).highest_root == (2, 3, 4, 6, 5, 4, 3, 2)
    assert root_system("G", 2).highest_root == (3, 2)
    assert root_system("F", 4).highest_root == (2, 3, 4, 2)


def test_simple_roots_come_first():
    R = root_system("E", 6)
    assert R.positive_roots[:6] == tuple(R.unit(i) for i in range(6))


def test_roots_of_equal_height_descend():
    assert root_system("A", 3).positive_roots == (
        (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1),
    )
    assert root_system("B", 2).positive_roots == ((1, 0), (0, 1), (1, 1), (1, 2))


def test_structure_constants_are_small_integers():
    algebra, R, basis = build_simple("G", 2)
    for r in R.positive_roots:
        for s in R.positive_roots:
            value = bracket(element_from_roots(basis, [(r, 1)]), element_from_roots(basis, [(s, 1)]))
            assert all(abs(c) <= 3 and QQ.denom(c) == 1 for c in value.coeffs)


def test_x_y_bracket_is_coroot():
    algebra, R, basis = build_simple("B", 2)
    x = element_from_combination(basis, [("x", 1, 1)])
    y = element_from_combination(basis, [("y", 1, 1)])
    h = element_from_combination(basis, [("h", 1, 1)])
    assert bracket(x, y) == h
    assert bracket(h, x) == x * 2


def test_element_from_combination_range():
    _, _, basis = build_simple("A", 2)
    with pytest.raises(InputError):
        element_from_combination(basis, [("x", 4, 1)])
    with pytest.raises(InputError):
        element_from_combination(basis, [("z", 1, 1)])


@pytest.mark.parametrize("type_, rank", [("A", 3), ("G", 2), ("F", 4), ("E", 6)])
def test_regular_nilpotent_has_characteristic_two(type_, rank):
    _, R, basis = build_simple(type_, rank)
    e = element_from_roots(basis, [(R.unit(i), 1) for i in range(rank)])
    t = jacobson_morozov(e)
    assert weighted_dynkin(t.h) == [2] * rank


def test_weighted_dynkin_rejects_non_cartan():
    _, R, basis = build_simple("A", 2)
    with pytest.raises(InputError):
        weighted_dynkin(element_from_roots(basis, [(R.unit(0), 1)]))


def test_reflect_to_dominant():
    R = root_system("A", 2)
    assert R.reflect_to_dominant([-2, 2]) == [2, 0]
