"""Pencils of quadrics s*q1 + t*q2: discriminants and simultaneous diagonalization.

The diagonalization produces the hyperelliptic data consumed by the matrix
factorization and Clifford modules: an ordered list of pairwise
non-proportional linear forms f_1, ..., f_r with f = prod f_i equal to the
pencil discriminant up to a scalar, together with the change of basis that
diagonalizes both quadrics at once.

Subsets of branch indices are 1-based throughout the package, matching the
usual f_I notation.
"""

from __future__ import annotations

from . import binary, linalg
from .fields import Field
from .poly import Poly
from .polymatrix import PolyMatrix


class PencilError(ValueError):
    pass


def bilinear_matrix(q: Poly):
    """Symmetric scalar matrix B with x^T B x = q, for homogeneous quadratic q."""
    if q.is_zero() or not q.is_homogeneous() or q.homogeneous_degree() != 2:
        raise PencilError("bilinear_matrix needs a nonzero homogeneous quadratic")
    field = q.field
    r = len(q.vars)
    half = field.inv(field.of(2))
    b = [[field.zero] * r for _ in range(r)]
    for exp, c in q.terms.items():
        support = [i for i, e in enumerate(exp) if e]
        if len(support) == 1:
            i = support[0]
            b[i][i] = c
        else:
            i, j = support
            b[i][j] = b[j][i] = field.mul(c, half)
    return b


def _mat_vec(field, m, v):
    return [
        _dot(field, row, v)
        for row in m
    ]


def _dot(field, u, v):
    acc = field.zero
    for a, b in zip(u, v):
        acc = field.add(acc, field.mul(a, b))
    return acc


def _mat_mul(field, a, b):
    bt = list(zip(*b))
    return [[_dot(field, row, col) for col in bt] for row in a]


def _quad_value(field, b, v):
    return _dot(field, v, _mat_vec(field, b, v))


class QuadricPencil:
    """A pair of symmetric scalar matrices (B1, B2) for the pencil s*q1 + t*q2."""

    def __init__(self, field: Field, b1, b2, variables=None):
        self.field = field
        r = len(b1)
        for m in (b1, b2):
            if len(m) != r or any(len(row) != r for row in m):
                raise PencilError("pencil matrices must be square of equal size")
            for i in range(r):
                for j in range(r):
                    if m[i][j] != m[j][i]:
                        raise PencilError("pencil matrices must be symmetric")
        self.b1 = [list(row) for row in b1]
        self.b2 = [list(row) for row in b2]
        self.dim = r
        self.variables = tuple(variables) if variables else tuple(f"x{i}" for i in range(r))
        self._disc = None

    @staticmethod
    def from_quadrics(q1: Poly, q2: Poly) -> "QuadricPencil":
        if q1.vars != q2.vars or q1.field != q2.field:
            raise PencilError("quadrics must live in one ring")
        return QuadricPencil(q1.field, bilinear_matrix(q1), bilinear_matrix(q2), q1.vars)

    def matrix_poly(self) -> PolyMatrix:
        """s*B1 + t*B2 as a graded matrix of linear binary forms."""
        field = self.field
        rows = []
        for i in range(self.dim):
            rows.append(
                [
                    binary.linear_form(field, self.b1[i][j], self.b2[i][j])
                    for j in range(self.dim)
                ]
            )
        return PolyMatrix(
            field, binary.ST, rows, row_degrees=[0] * self.dim, col_degrees=[1] * self.dim
        )

    def member(self, s_val, t_val):
        """The scalar matrix s_val*B1 + t_val*B2."""
        f = self.field
        return [
            [
                f.add(f.mul(f.of(s_val), self.b1[i][j]), f.mul(f.of(t_val), self.b2[i][j]))
                for j in range(self.dim)
            ]
            for i in range(self.dim)
        ]

    def discriminant(self) -> Poly:
        """det(s*B1 + t*B2), normalized so its first nonzero coefficient is 1.

        The Hessian convention of the literature differs from this bilinear
        determinant by the fixed scalar 2^dim; the normalization makes the
        root set the actual contract.
        """
        if self._disc is None:
            det = self.matrix_poly().determinant()
            if det.is_zero():
                raise PencilError("degenerate pencil: identically singular")
            self._disc = binary.normalize(det)
        return self._disc

    def to_json(self) -> dict:
        return {
            "vars": self.dim,
            "q1": self.quadric(1).to_json(),
            "q2": self.quadric(2).to_json(),
        }

    def quadric(self, which: int) -> Poly:
        b = self.b1 if which == 1 else self.b2
        field = self.field
        pairs = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                c = b[i][j] if i == j else field.mul(b[i][j], field.of(2))
                exp = [0] * self.dim
                exp[i] += 1
                exp[j] += 1
                pairs.append((tuple(exp), c))
        return Poly.from_pairs(field, self.variables, pairs)


def smoothness_check(pencil: QuadricPencil):
    """True iff the pencil discriminant is squarefree with no root at infinity.

    Returns (flag, diagnosis string).
    """
    disc = pencil.discriminant()
    issues = []
    if binary.t_valuation(disc) > 0:
        issues.append("root at infinity")
    found, inf_mult, splits = binary.roots(disc)
    repeated = [lam for lam, mult in found if mult > 1]
    if inf_mult > 1:
        issues.append("double root at infinity")
    if repeated:
        if len(repeated) == len(found) and all(m == 2 for _, m in found) and splits:
            issues.append("all roots double")
        else:
            issues.append(f"repeated roots {repeated}")
    if not binary.squarefree_distinct(disc):
        if not issues:
            issues.append("repeated roots outside the base field")
    elif not issues:
        return True, "smooth: discriminant squarefree of full degree"
    return False, "; ".join(issues)


class Diagonalization:
    """Result of simultaneous diagonalization of a pencil."""

    def __init__(self, field, factors, basis, pencil=None):
        self.field = field
        self.factors = list(factors)
        self.basis = basis
        self.pencil = pencil
        for f in self.factors:
            binary.check_binary(f, 1)
        n = len(self.factors)
        for i in range(n):
            for j in range(i + 1, n):
                if _proportional(field, self.factors[i], self.factors[j]):
                    raise PencilError("diagonal factors must be pairwise non-proportional")

    @property
    def size(self) -> int:
        return len(self.factors)

    def product(self) -> Poly:
        acc = Poly.const(self.field, binary.ST, 1)
        for f in self.factors:
            acc = acc * f
        return acc


def _proportional(field, f, g) -> bool:
    a1, b1 = f.coefficient((1, 0)), f.coefficient((0, 1))
    a2, b2 = g.coefficient((1, 0)), g.coefficient((0, 1))
    return field.is_zero(field.sub(field.mul(a1, b2), field.mul(a2, b1)))


class HyperellipticData(Diagonalization):
    """Diagonalized pencil of even size 2g+2: the hyperelliptic curve y^2 = f."""

    def __init__(self, field, factors, basis=None, pencil=None):
        super().__init__(field, factors, basis, pencil)
        if len(self.factors) % 2:
            raise PencilError("hyperelliptic data needs an even number of factors")
        self.genus = len(self.factors) // 2 - 1
        self._subset_cache: dict = {}

    @staticmethod
    def from_factors(field, factors) -> "HyperellipticData":
        return HyperellipticData(field, factors)

    @property
    def nbranch(self) -> int:
        return len(self.factors)

    @property
    def f(self) -> Poly:
        return self.subset_product(range(1, self.nbranch + 1))

    def factor(self, i: int) -> Poly:
        """f_i for a 1-based branch index."""
        return self.factors[i - 1]

    def subset_product(self, indices) -> Poly:
        """f_I = prod_{i in I} f_i for 1-based indices."""
        key = frozenset(indices)
        if any(i < 1 or i > self.nbranch for i in key):
            raise PencilError(f"subset {sorted(key)} out of range 1..{self.nbranch}")
        if key not in self._subset_cache:
            acc = Poly.const(self.field, binary.ST, 1)
            for i in sorted(key):
                acc = acc * self.factors[i - 1]
            self._subset_cache[key] = acc
        return self._subset_cache[key]

    def complement(self, indices) -> frozenset:
        return frozenset(range(1, self.nbranch + 1)) - frozenset(indices)


def simultaneous_diagonalize(pencil: QuadricPencil) -> Diagonalization:
    """Diagonalize both quadrics at once.

    Requires the discriminant to be squarefree and fully split over the base
    field with no root at infinity.  (Absence of a root at infinity already
    forces B1 to be invertible: det B1 is the coefficient of s^r.)  No square
    roots are taken, so the diagonal entries need not be monic.
    """
    field = pencil.field
    disc = pencil.discriminant()
    found, inf_mult, splits = binary.roots(disc)
    if inf_mult:
        raise PencilError("discriminant has a root at infinity; renormalize the pencil")
    if not splits:
        raise PencilError(
            "discriminant does not split over the base field; change the prime"
        )
    if any(mult > 1 for _, mult in found):
        raise PencilError("discriminant is not squarefree")
    # no root at infinity means disc(1, 0) = det B1 != 0, so B1 is invertible
    inv_b1 = linalg.inverse(field, pencil.b1)
    if inv_b1 is None:
        raise PencilError("internal error: B1 singular despite disc(1,0) != 0")
    w = _mat_mul(field, inv_b1, pencil.b2)
    basis_cols = []
    factors = []
    for lam_root, _ in found:
        # eigenvalue of B1^-1 B2 attached to the discriminant factor (s - lam*t)
        mu = field.neg(lam_root)
        shifted = [
            [field.sub(w[i][j], mu if i == j else field.zero) for j in range(pencil.dim)]
            for i in range(pencil.dim)
        ]
        ns = linalg.nullspace(field, shifted, pencil.dim)
        if len(ns) != 1:
            raise PencilError("unexpected eigenspace dimension (repeated eigenvalue?)")
        v = ns[0]
        c1 = _quad_value(field, pencil.b1, v)
        c2 = _quad_value(field, pencil.b2, v)
        f_i = binary.linear_form(field, c1, c2)
        if f_i.is_zero():
            raise PencilError("isotropic eigenvector encountered; pencil is degenerate")
        factors.append(f_i)
        basis_cols.append(v)
    basis = [[basis_cols[j][i] for j in range(pencil.dim)] for i in range(pencil.dim)]
    result = (
        HyperellipticData(field, factors, basis, pencil)
        if pencil.dim % 2 == 0
        else Diagonalization(field, factors, basis, pencil)
    )
    _verify_diagonalization(pencil, result)
    return result


def _verify_diagonalization(pencil: QuadricPencil, diag: Diagonalization):
    """Exact check: M^T (s B1 + t B2) M = diag(f_1, ..., f_r)."""
    field = pencil.field
    m = diag.basis
    mt = [list(row) for row in zip(*m)]
    for which, b in ((0, pencil.b1), (1, pencil.b2)):
        conj = _mat_mul(field, mt, _mat_mul(field, b, m))
        for i in range(pencil.dim):
            for j in range(pencil.dim):
                expect = field.zero
                if i == j:
                    exp = (1, 0) if which == 0 else (0, 1)
                    expect = diag.factors[i].coefficient(exp)
                if conj[i][j] != expect:
                    raise PencilError("diagonalization verification failed")
    prod = diag.product()
    disc = pencil.discriminant()
    if binary.normalize(prod) != disc:
        raise PencilError("product of diagonal factors does not match the discriminant")
