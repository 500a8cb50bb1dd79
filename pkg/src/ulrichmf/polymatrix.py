"""Matrices of polynomials, graded free modules, and exact determinants.

Grading convention, fixed repo-wide: a homogeneous map between graded free
modules (+)k[s,t](-a_j) -> (+)k[s,t](-b_i) carries col_degrees = (a_j) and
row_degrees = (b_i); entry (i, j) must be zero or homogeneous of degree
a_j - b_i.

Determinants use evaluation/interpolation on P^1 when the matrix is a graded
matrix of binary forms (degree of det is then known), and fraction-free
Bareiss elimination otherwise.
"""

from __future__ import annotations

from . import binary, linalg
from .fields import Field, PrimeField
from .poly import Poly


class MatrixError(ValueError):
    pass


class GradedFreeModule:
    """A free k[s,t]-module described by its generator degrees (+)k[s,t](-a_j)."""

    __slots__ = ("degrees",)

    def __init__(self, degrees):
        self.degrees = tuple(int(d) for d in degrees)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def hilbert(self, n: int) -> int:
        """dim_k of the degree-n piece: sum_j max(0, n - a_j + 1)."""
        return sum(max(0, n - a + 1) for a in self.degrees)

    def twist(self, k: int) -> "GradedFreeModule":
        """M(k): generator degrees drop by k."""
        return GradedFreeModule(tuple(a - k for a in self.degrees))

    def __eq__(self, other):
        return isinstance(other, GradedFreeModule) and self.degrees == other.degrees

    def __repr__(self):
        return f"GradedFreeModule{self.degrees}"


class PolyMatrix:
    __slots__ = ("field", "vars", "nrows", "ncols", "entries", "row_degrees", "col_degrees")

    def __init__(self, field: Field, variables, entries, row_degrees=None, col_degrees=None):
        self.field = field
        self.vars = tuple(variables)
        rows = [tuple(row) for row in entries]
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != self.ncols:
                raise MatrixError("ragged rows")
            for p in row:
                if not isinstance(p, Poly) or p.vars != self.vars or p.field != field:
                    raise MatrixError("entries must be Polys in the matrix ring")
        self.entries = tuple(rows)
        self.row_degrees = None if row_degrees is None else tuple(int(d) for d in row_degrees)
        self.col_degrees = None if col_degrees is None else tuple(int(d) for d in col_degrees)
        if self.row_degrees is not None and len(self.row_degrees) != self.nrows:
            raise MatrixError("row degree label count mismatch")
        if self.col_degrees is not None and len(self.col_degrees) != self.ncols:
            raise MatrixError("col degree label count mismatch")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(field, variables, nrows, ncols, row_degrees=None, col_degrees=None):
        z = Poly.zero(field, variables)
        return PolyMatrix(
            field, variables, [[z] * ncols for _ in range(nrows)], row_degrees, col_degrees
        )

    @staticmethod
    def identity(field, variables, n, scalar=None):
        z = Poly.zero(field, variables)
        diag = Poly.const(field, variables, 1 if scalar is None else scalar)
        rows = [[diag if i == j else z for j in range(n)] for i in range(n)]
        return PolyMatrix(field, variables, rows)

    @staticmethod
    def scalar_matrix(field, variables, f: Poly, n: int):
        """f times the n x n identity."""
        z = Poly.zero(field, variables)
        rows = [[f if i == j else z for j in range(n)] for i in range(n)]
        return PolyMatrix(field, variables, rows)

    @staticmethod
    def from_scalars(field, variables, rows, row_degrees=None, col_degrees=None):
        mk = lambda c: Poly.const(field, variables, c)
        return PolyMatrix(
            field, variables, [[mk(c) for c in row] for row in rows], row_degrees, col_degrees
        )

    # -- basic structure -----------------------------------------------------

    def entry(self, i, j) -> Poly:
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.nrows))

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def transpose(self) -> "PolyMatrix":
        rows = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return PolyMatrix(self.field, self.vars, rows, self.col_degrees, self.row_degrees)

    def relabel(self, row_degrees=None, col_degrees=None) -> "PolyMatrix":
        return PolyMatrix(self.field, self.vars, self.entries, row_degrees, col_degrees)

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.vars == other.vars
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols} over {self.vars})"

    def __str__(self):
        cells = [[str(p) for p in row] for row in self.entries]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "PolyMatrix"):
        if self.field != other.field or self.vars != other.vars:
            raise MatrixError("mixed matrix rings")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise MatrixError("shape mismatch in add")
        rows = [
            [a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)
        ]
        return PolyMatrix(self.field, self.vars, rows, self.row_degrees, self.col_degrees)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + other.scale_scalar(self.field.of(-1))

    def scale_scalar(self, scalar) -> "PolyMatrix":
        rows = [[p.scale(scalar) for p in row] for row in self.entries]
        return PolyMatrix(self.field, self.vars, rows, self.row_degrees, self.col_degrees)

    def scale_poly(self, f: Poly) -> "PolyMatrix":
        rows = [[p * f for p in row] for row in self.entries]
        return PolyMatrix(self.field, self.vars, rows)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self.mul(other)

    def mul(self, other: "PolyMatrix") -> "PolyMatrix":
        """Exact product, skipping zero entries (matrices here are often sparse)."""
        self._check(other)
        if self.ncols != other.nrows:
            raise MatrixError(
                f"dimension mismatch: {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}"
            )
        zero = Poly.zero(self.field, self.vars)
        out = [[zero for _ in range(other.ncols)] for _ in range(self.nrows)]
        bcols_by_row = [
            [(j, p) for j, p in enumerate(other.entries[k]) if not p.is_zero()]
            for k in range(other.nrows)
        ]
        for i in range(self.nrows):
            arow = self.entries[i]
            for k in range(self.ncols):
                a = arow[k]
                if a.is_zero():
                    continue
                for j, b in bcols_by_row[k]:
                    out[i][j] = out[i][j] + a * b
        if (
            self.col_degrees is not None
            and other.row_degrees is not None
            and self.col_degrees == other.row_degrees
        ):
            row_deg, col_deg = self.row_degrees, other.col_degrees
        else:
            row_deg = col_deg = None
        return PolyMatrix(self.field, self.vars, out, row_deg, col_deg)

    def kron(self, other: "PolyMatrix") -> "PolyMatrix":
        """Kronecker product (self tensor other)."""
        self._check(other)
        rows = []
        for i in range(self.nrows):
            for k in range(other.nrows):
                row = []
                for j in range(self.ncols):
                    a = self.entries[i][j]
                    for l in range(other.ncols):
                        row.append(a * other.entries[k][l])
                rows.append(row)
        return PolyMatrix(self.field, self.vars, rows)

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if self.nrows != other.nrows:
            raise MatrixError("row count mismatch in hstack")
        rows = [list(r1) + list(r2) for r1, r2 in zip(self.entries, other.entries)]
        return PolyMatrix(self.field, self.vars, rows)

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if self.ncols != other.ncols:
            raise MatrixError("column count mismatch in vstack")
        return PolyMatrix(self.field, self.vars, list(self.entries) + list(other.entries))

    def substitute(self, images: dict, target_vars=None) -> "PolyMatrix":
        rows = [[p.substitute(images, target_vars) for p in row] for row in self.entries]
        sample_vars = rows[0][0].vars if rows and rows[0] else (target_vars or self.vars)
        return PolyMatrix(self.field, sample_vars, rows)

    def evaluate(self, values: dict):
        """Evaluate every entry at scalars; returns a list-of-lists scalar matrix."""
        return [[p.evaluate(values) for p in row] for row in self.entries]

    # -- grading ---------------------------------------------------------------

    def check_homogeneous(self) -> bool:
        """Verify entry (i,j) is zero or homogeneous of degree col_deg[j] - row_deg[i]."""
        if self.row_degrees is None or self.col_degrees is None:
            raise MatrixError("matrix carries no degree labels")
        for i in range(self.nrows):
            for j in range(self.ncols):
                p = self.entries[i][j]
                if p.is_zero():
                    continue
                want = self.col_degrees[j] - self.row_degrees[i]
                if not p.is_homogeneous() or p.homogeneous_degree() != want:
                    return False
        return True

    # -- determinant -------------------------------------------------------------

    def determinant(self) -> Poly:
        if self.nrows != self.ncols:
            raise MatrixError("determinant of a non-square matrix")
        if self.nrows == 0:
            return Poly.const(self.field, self.vars, 1)
        deg = self._graded_det_degree()
        if deg is not None and self.vars == binary.ST:
            enough_points = not isinstance(self.field, PrimeField) or self.field.p >= deg + 1
            if enough_points:
                return self._det_interpolate(deg)
        return self._det_bareiss()

    def _graded_det_degree(self):
        """Degree of det for a graded matrix; None when grading is unavailable."""
        row_deg, col_deg = self.row_degrees, self.col_degrees
        if row_deg is None or col_deg is None:
            # infer: zero row labels, column-constant entry degrees
            col_deg = []
            for j in range(self.ncols):
                degs = set()
                for i in range(self.nrows):
                    p = self.entries[i][j]
                    if p.is_zero():
                        continue
                    if not p.is_homogeneous():
                        return None
                    degs.add(p.homogeneous_degree())
                if len(degs) > 1:
                    return None
                col_deg.append(degs.pop() if degs else 0)
            return sum(col_deg)
        if not self.check_homogeneous():
            return None
        return sum(col_deg) - sum(row_deg)

    def _det_interpolate(self, deg: int) -> Poly:
        field = self.field
        points = []
        for x in field.elements(deg + 1):
            points.append(field.of(x))
        values = []
        for lam in points:
            scalar = self.evaluate({"s": lam, "t": field.one})
            values.append(linalg.det(field, scalar))
        coeffs = binary.interpolate_univariate(field, points, values)
        return binary.homogenize(field, coeffs, deg)

    def _det_bareiss(self) -> Poly:
        """Fraction-free elimination; every division is exact."""
        field = self.field
        n = self.nrows
        m = [[p for p in row] for row in self.entries]
        sign = 1
        prev = Poly.const(field, self.vars, 1)
        for k in range(n - 1):
            if m[k][k].is_zero():
                pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
                if pivot_row is None:
                    return Poly.zero(field, self.vars)
                m[k], m[pivot_row] = m[pivot_row], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                    m[i][j] = num.divexact(prev)
            for i in range(k + 1, n):
                m[i][k] = Poly.zero(field, self.vars)
            prev = m[k][k]
        det = m[n - 1][n - 1]
        return det.scale(field.of(sign))

    # -- JSON ---------------------------------------------------------------------

    def to_json(self) -> dict:
        data = {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [p.to_json() for row in self.entries for p in row],
        }
        if self.row_degrees is not None:
            data["row_degrees"] = list(self.row_degrees)
        if self.col_degrees is not None:
            data["col_degrees"] = list(self.col_degrees)
        return data

    @staticmethod
    def from_json(field, variables, data) -> "PolyMatrix":
        nrows, ncols = data["rows"], data["cols"]
        flat = [Poly.from_json(field, variables, t) for t in data["entries"]]
        if len(flat) != nrows * ncols:
            raise MatrixError("entry count mismatch in matrix JSON")
        rows = [flat[i * ncols : (i + 1) * ncols] for i in range(nrows)]
        return PolyMatrix(
            field, variables, rows, data.get("row_degrees"), data.get("col_degrees")
        )
