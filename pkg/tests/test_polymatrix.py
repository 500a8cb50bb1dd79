import random

import pytest

from ulrichmf import binary
from ulrichmf.fields import QQ, PrimeField
from ulrichmf.poly import Poly
from ulrichmf.polymatrix import GradedFreeModule, MatrixError, PolyMatrix

ST = binary.ST


def cofactor_det(m: PolyMatrix) -> Poly:
    """Cofactor-expansion determinant oracle (first row), exact."""
    n = m.nrows
    if n == 1:
        return m.entry(0, 0)
    acc = Poly.zero(m.field, m.vars)
    for j in range(n):
        a = m.entry(0, j)
        if a.is_zero():
            continue
        minor_rows = [
            [m.entry(i, k) for k in range(n) if k != j] for i in range(1, n)
        ]
        minor = PolyMatrix(m.field, m.vars, minor_rows)
        term = a * cofactor_det(minor)
        acc = acc + term.scale(m.field.of((-1) ** j))
    return acc


def random_binary_matrix(rng, field, n, max_deg=2):
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            d = rng.randrange(max_deg + 1)
            coeffs = [rng.randrange(5) for _ in range(d + 1)]
            row.append(binary.binary_form(field, coeffs) if any(coeffs) else Poly.zero(field, ST))
        rows.append(row)
    return PolyMatrix(field, ST, rows)


def test_graded_free_module():
    m = GradedFreeModule([0, 2])
    assert m.rank == 2
    assert [m.hilbert(n) for n in range(4)] == [1, 2, 4, 6]
    assert m.twist(1).degrees == (-1, 1)


def test_mf_square_is_f_times_identity():
    f = binary.binary_form(QQ, [1, 0, 0, 0, -1])  # s^4 - t^4
    one = Poly.const(QQ, ST, 1)
    zero = Poly.zero(QQ, ST)
    phi = PolyMatrix(QQ, ST, [[zero, f], [one, zero]])
    prod = phi @ phi
    assert prod == PolyMatrix.scalar_matrix(QQ, ST, f, 2)


def test_identity_product():
    rng = random.Random(1)
    a = random_binary_matrix(rng, PrimeField(13), 3)
    assert a @ PolyMatrix.identity(PrimeField(13), ST, 3) == a


def test_dimension_mismatch():
    a = PolyMatrix.zero(QQ, ST, 2, 3)
    b = PolyMatrix.zero(QQ, ST, 2, 2)
    with pytest.raises(MatrixError):
        a @ b


def test_det_2x2_symmetric():
    s = Poly.variable(QQ, ST, "s")
    t = Poly.variable(QQ, ST, "t")
    m = PolyMatrix(QQ, ST, [[s, t], [t, s]])
    assert m.determinant() == s * s - t * t


def test_det_antidiagonal():
    f13 = PrimeField(13)
    s = Poly.variable(f13, ST, "s")
    t = Poly.variable(f13, ST, "t")
    ell = s + t.scale(5)
    zero = Poly.zero(f13, ST)
    m = PolyMatrix(f13, ST, [[zero, ell], [ell, zero]])
    assert m.determinant() == (ell * ell).scale(f13.of(-1))


def test_det_against_cofactor_oracle():
    rng = random.Random(77)
    for field in (QQ, PrimeField(10009)):
        for n in range(1, 5):
            for _ in range(6):
                m = random_binary_matrix(rng, field, n)
                assert m.determinant() == cofactor_det(m)


def test_det_interpolation_matches_bareiss():
    rng = random.Random(5)
    field = PrimeField(10009)
    for n in (2, 3, 4):
        rows = []
        for _ in range(n):
            rows.append([binary.binary_form(field, [rng.randrange(7), rng.randrange(7)]) for _ in range(n)])
        m = PolyMatrix(field, ST, rows, row_degrees=[0] * n, col_degrees=[1] * n)
        assert m._det_interpolate(n) == m._det_bareiss()


def test_det_small_field_falls_back():
    # F_3 has too few points to interpolate a degree-4 determinant
    f3 = PrimeField(3)
    rows = [[binary.binary_form(f3, [1, k + j]) for j in range(4)] for k in range(4)]
    m = PolyMatrix(f3, ST, rows, row_degrees=[0] * 4, col_degrees=[1] * 4)
    assert m.determinant() == cofactor_det(m)


def test_det_non_homogeneous_uses_bareiss():
    s = Poly.variable(QQ, ST, "s")
    one = Poly.const(QQ, ST, 1)
    m = PolyMatrix(QQ, ST, [[s, one], [one, s]])
    assert m.determinant() == s * s - one


def test_multivariate_bareiss():
    f101 = PrimeField(101)
    xyz = ("x", "y", "z")
    x, y, z = (Poly.variable(f101, xyz, v) for v in xyz)
    m = PolyMatrix(f101, xyz, [[x, y, z], [y, z, x], [z, x, y]])
    expect = (x * y * z).scale(3) - (x**3 + y**3 + z**3)
    got = m.determinant()
    assert got == expect
    assert got == cofactor_det(m)


def test_non_square_rejected():
    with pytest.raises(MatrixError):
        PolyMatrix.zero(QQ, ST, 2, 3).determinant()


def test_homogeneity_check():
    f = binary.binary_form(QQ, [1, 0, 0, 0, -1])
    one = Poly.const(QQ, ST, 1)
    zero = Poly.zero(QQ, ST)
    phi = PolyMatrix(
        QQ, ST, [[zero, f], [one, zero]], row_degrees=[-2, 0], col_degrees=[0, 2]
    )
    assert phi.check_homogeneous()
    bad = phi.relabel(row_degrees=[0, 0], col_degrees=[0, 0])
    assert not bad.check_homogeneous()


def test_kron_shapes_and_values():
    f13 = PrimeField(13)
    s = Poly.variable(f13, ST, "s")
    t = Poly.variable(f13, ST, "t")
    a = PolyMatrix(f13, ST, [[s]])
    b = PolyMatrix(f13, ST, [[t, s], [s, t]])
    k = a.kron(b)
    assert (k.nrows, k.ncols) == (2, 2)
    assert k.entry(0, 0) == s * t
    k2 = b.kron(a)
    assert k2.entry(1, 1) == t * s


def test_stacking():
    a = PolyMatrix.identity(QQ, ST, 2)
    z = PolyMatrix.zero(QQ, ST, 2, 2)
    h = a.hstack(z)
    assert (h.nrows, h.ncols) == (2, 4)
    v = a.vstack(z)
    assert (v.nrows, v.ncols) == (4, 2)


def test_json_round_trip():
    rng = random.Random(11)
    m = random_binary_matrix(rng, PrimeField(10009), 3)
    m = m.relabel(row_degrees=[0, 1, 2], col_degrees=[1, 2, 3])
    back = PolyMatrix.from_json(PrimeField(10009), ST, m.to_json())
    assert back == m
    assert back.row_degrees == m.row_degrees
    assert back.col_degrees == m.col_degrees


def test_substitute():
    f13 = PrimeField(13)
    xy = ("x", "y")
    x, y = (Poly.variable(f13, xy, v) for v in xy)
    m = PolyMatrix(f13, xy, [[x + y, x]])
    s = Poly.variable(f13, ST, "s")
    t = Poly.variable(f13, ST, "t")
    sub = m.substitute({"x": s, "y": t})
    assert sub.entry(0, 0) == s + t
    assert sub.entry(0, 1) == s
