import numpy as np
import pytest
from sympy import QQ, Poly, Rational, symbols

from pylie.errors import InputError, UnsupportedError
from pylie.exactla import (
    QMatrix, Frame, rational, to_int, rref, rank, kernel_basis, solve, nilpotency_index,
    poly_gcd_binary, strip_factors, rational_root, linear_poly, maximal_minors, param_symbols,
)

s, t = symbols("s t")


def binary(expr):
    return Poly(expr, s, t, domain=QQ)


def value_at(form, point):
    return form.as_expr().subs({s: Rational(str(point[0])), t: Rational(str(point[1]))})


@pytest.mark.parametrize("text, expected", [
    ("3/4", QQ(3, 4)),
    (" -2 ", QQ(-2)),
    ("6/4", QQ(3, 2)),
    (7, QQ(7)),
])
def test_rational_parses(text, expected):
    assert rational(text) == expected


@pytest.mark.parametrize("bad", ["x", "1/0", "1.5", True])
def test_rational_rejects(bad):
    with pytest.raises(InputError):
        rational(bad)


def test_to_int_requires_integer():
    assert to_int(QQ(6, 3)) == 2
    with pytest.raises(InputError):
        to_int(QQ(1, 2))


def test_ragged_rows_rejected():
    with pytest.raises(InputError):
        QMatrix.from_rows([[1, 2], [3]])


def test_matrix_arithmetic():
    A = QMatrix.from_rows([[1, 2], [3, 4]])
    B = QMatrix.identity(2)
    assert (A @ B) == A
    assert (A - A).is_zero()
    assert A.det() == QQ(-2)
    assert A.transpose().entry(0, 1) == QQ(3)
    assert A.scale("1/2").entry(1, 1) == QQ(2)
    assert A.apply([1, 1]) == [QQ(3), QQ(7)]
    with pytest.raises(InputError):
        A @ QMatrix.zeros(3, 1)


def test_charpoly_of_nilpotent():
    N = QMatrix.from_rows([[0, 1], [0, 0]])
    assert N.charpoly() == [QQ(1), QQ(0), QQ(0)]


def test_rref_and_kernel():
    M = QMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    R, pivots = rref(M)
    assert pivots == [0, 1]
    assert rank(M) == 2
    K = kernel_basis(M)
    assert K.rows == M.cols - rank(M)
    for v in K.to_rows():
        assert not any(M.apply(v))


def test_kernel_of_full_rank_is_empty():
    K = kernel_basis(QMatrix.identity(3))
    assert K.shape == (0, 3)


def test_solve():
    M = QMatrix.from_rows([[1, 1], [1, -1]])
    assert solve(M, [2, 0]) == [QQ(1), QQ(1)]
    singular = QMatrix.from_rows([[1, 1], [2, 2]])
    assert solve(singular, [1, 3]) is None
    with pytest.raises(InputError):
        solve(M, [1])


def test_nilpotency_index():
    J = QMatrix.from_dod({i: {i + 1: 1} for i in range(3)}, (4, 4))
    assert nilpotency_index(J) == 4
    assert nilpotency_index(QMatrix.identity(3)) is None


def test_frame_coordinates():
    basis = QMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    frame = Frame(basis)
    assert frame.coordinates([2, 5, 3]) == [QQ(2), QQ(3)]
    with pytest.raises(InputError):
        frame.coordinates([1, 0, 0])
    with pytest.raises(InputError):
        Frame(QMatrix.from_rows([[1, 2], [2, 4]]))


def test_gcd_of_coprime_forms_is_constant():
    g = poly_gcd_binary([binary(s), binary(t)])
    assert g.total_degree() == 0


def test_gcd_finds_common_factor():
    g = poly_gcd_binary([binary(s * t), binary(s * (s + t)), binary(0)])
    assert g == binary(s)


def test_gcd_rejects_inhomogeneous_and_zero():
    with pytest.raises(InputError):
        poly_gcd_binary([binary(s + 1)])
    with pytest.raises(InputError):
        poly_gcd_binary([binary(0)])


def test_rational_root():
    form = binary((2 * s - 3 * t) * (s ** 2 + t ** 2))
    root = rational_root(form)
    assert root is not None and any(root)
    assert value_at(form, root) == 0
    assert rational_root(binary(s ** 2 + t ** 2)) is None


def test_strip_factors():
    g = binary(s * t * (s + t))
    stripped = strip_factors(g, [linear_poly([1, 0], (s, t))])
    assert stripped.total_degree() == 2
    assert value_at(stripped, (0, 1)) != 0


def test_maximal_minors_of_linear_forms():
    # [[s, t, 0], [0, s, t]]
    entries = [[(1, 0), (0, 1), (0, 0)], [(0, 0), (1, 0), (0, 1)]]
    minors = [m for m in maximal_minors(entries, (s, t))]
    assert len(minors) == 3
    assert poly_gcd_binary(minors).total_degree() == 0


def test_param_symbols_limit():
    assert len(param_symbols(4)) == 4
    with pytest.raises(UnsupportedError):
        param_symbols(5)


def random_matrix(rng, max_dim=7, bound=4):
    """A random rational matrix, often rank deficient: a product of two random factors."""
    rows, cols, inner = (int(v) for v in rng.integers(1, max_dim, size=3, endpoint=True))
    A = QMatrix.from_rows(rng.integers(-bound, bound, size=(rows, inner), endpoint=True).tolist(), inner)
    B = QMatrix.from_rows(rng.integers(-bound, bound, size=(inner, cols), endpoint=True).tolist(), cols)
    return (A @ B).scale(QQ(1, int(rng.integers(1, 5, endpoint=True))))


@pytest.mark.parametrize("seed", range(5))
def test_random_matrix_invariants(seed):
    rng = np.random.default_rng(seed)
    for _ in range(20):
        M = random_matrix(rng)
        r = rank(M)
        assert r == rank(M.transpose())
        K = kernel_basis(M)
        assert r + K.rows == M.cols
        if K.rows:
            assert (M @ K.transpose()).is_zero()
        R, pivots = rref(M)
        assert rref(R) == (R, pivots)
        x = [int(v) for v in rng.integers(-3, 3, size=M.cols, endpoint=True)]
        y = solve(M, M.apply(x))
        assert y is not None and M.apply(y) == M.apply(x)
