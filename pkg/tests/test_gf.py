import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fix3.errors import FieldArithmeticError, GeometryError
from fix3.gf import (
    GF,
    MatrixFq,
    companion_matrix,
    hermitian_isotropic_points,
    is_irreducible,
    is_unitary,
    least_primitive_polynomial,
    matrix_perm,
    primitive_polynomial,
    projective_points,
)

FIELD_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81]


def poly_code_mul(x, y, p, a, modulus):
    """Reference product of two codes by schoolbook multiplication mod ``modulus``."""
    dx = [(x // p**i) % p for i in range(a)]
    dy = [(y // p**i) % p for i in range(a)]
    prod = [0] * (2 * a - 1)
    for i, u in enumerate(dx):
        for j, v in enumerate(dy):
            prod[i + j] = (prod[i + j] + u * v) % p
    for k in range(2 * a - 2, a - 1, -1):
        c = prod[k]
        if c:
            for i in range(a + 1):
                prod[k - a + i] = (prod[k - a + i] - c * modulus[i]) % p
    return sum(prod[i] * p**i for i in range(a))


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_multiplication_matches_schoolbook(q):
    F = GF(q)
    mod = F.spec.modulus
    rng = np.random.default_rng(q)
    for x, y in rng.integers(0, q, size=(200, 2)):
        assert F.mul[x, y] == poly_code_mul(int(x), int(y), F.p, F.a, mod)


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_field_tables(q):
    F = GF(q)
    xs = np.arange(q)
    assert np.all(F.add[xs, F.neg] == 0)
    nz = xs[1:]
    assert np.all(F.mul[nz, F.inv(nz)] == 1)
    assert F.element_order(F.primitive) == q - 1
    # Frobenius is additive and multiplicative
    assert np.array_equal(F.frob[F.add], F.add[F.frob[:, None], F.frob[None, :]])
    assert np.array_equal(F.frob[F.mul], F.mul[F.frob[:, None], F.frob[None, :]])


def test_prime_field_is_modular_arithmetic():
    F = GF(7)
    for x in range(7):
        for y in range(7):
            assert F.add[x, y] == (x + y) % 7
            assert F.mul[x, y] == (x * y) % 7


def test_inverse_of_zero_raises():
    with pytest.raises(FieldArithmeticError):
        GF(9).inv(0)


def test_frobenius_fixes_prime_subfield():
    F = GF(8)
    assert {x for x in range(8) if F.frob[x] == x} == {0, 1}
    assert sorted(GF(16).subfield(4)) == sorted(x for x in range(16) if GF(16).frobenius(x, 2) == x)


def test_least_primitive_polynomial_is_sympy_primitive():
    for p, a in [(2, 3), (2, 6), (3, 3), (5, 2), (3, 4)]:
        f = least_primitive_polynomial(p, a)
        x = sympy.symbols("x")
        poly = sympy.Poly(list(reversed(f)), x, modulus=p)
        assert poly.is_irreducible
        assert is_irreducible(f, p)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 5, 9]), st.data())
def test_matrix_algebra(q, data):
    F = GF(q)
    n = data.draw(st.integers(1, 4))
    cells = st.lists(st.integers(0, q - 1), min_size=n * n, max_size=n * n)
    A = MatrixFq(F, np.array(data.draw(cells)).reshape(n, n))
    B = MatrixFq(F, np.array(data.draw(cells)).reshape(n, n))
    assert (A @ B).det() == F.mul[A.det(), B.det()]
    if A.det() != 0:
        assert (A @ A.inverse()).is_identity()


def test_determinant_matches_sympy_mod_p():
    rng = np.random.default_rng(1)
    F = GF(7)
    for _ in range(20):
        m = rng.integers(0, 7, size=(4, 4))
        assert MatrixFq(F, m).det() == int(sympy.Matrix(m.tolist()).det()) % 7


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_singer_companion_order(q):
    C = companion_matrix(GF(q), primitive_polynomial(q, 3))
    assert C.order() == q**3 - 1


@pytest.mark.parametrize("n,q,count", [(3, 2, 7), (3, 4, 21), (4, 3, 40)])
def test_projective_point_counts(n, q, count):
    assert projective_points(n, q).size == count


@pytest.mark.parametrize("n,q,count", [(3, 3, 28), (3, 2, 9), (4, 3, 280)])
def test_hermitian_point_counts(n, q, count):
    # (q^n - (-1)^n)(q^(n-1) - (-1)^(n-1)) / (q^2 - 1)
    expected = (q**n - (-1) ** n) * (q ** (n - 1) - (-1) ** (n - 1)) // (q * q - 1)
    assert expected == count
    assert hermitian_isotropic_points(n, q).size == count


def test_matrix_perm_rejects_non_isometry():
    geom = hermitian_isotropic_points(3, 3)
    F = geom.F
    M = MatrixFq.diagonal(F, [F.primitive, 1, 1])
    assert not is_unitary(M)
    with pytest.raises(GeometryError):
        matrix_perm(M, geom)
