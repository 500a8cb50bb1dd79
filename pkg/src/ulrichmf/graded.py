"""Degree-by-degree exact linear algebra for graded modules.

The central routine is :func:`graded_kernel`: minimal generators of the
kernel of a homogeneous map of graded free k[s,t]-modules, computed by
sweeping graded pieces and adjoining complement bases (graded Nakayama).
Everything reduces to scalar rank/nullspace computations over the base
field, routed through :mod:`ulrichmf.linalg`.
"""

from __future__ import annotations

import itertools
from math import comb

from . import linalg
from .fields import Field
from .poly import Poly
from .polymatrix import PolyMatrix


class GradedError(ValueError):
    pass


# optional global override for the default kernel degree cap (CLI --degree-cap)
_DEGREE_CAP_OVERRIDE: int | None = None


def set_degree_cap(value: int | None):
    global _DEGREE_CAP_OVERRIDE
    _DEGREE_CAP_OVERRIDE = value


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree, in a fixed sorted order."""
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev = -1
        exp = []
        for b in bars:
            exp.append(b - prev - 1)
            prev = b
        exp.append(degree + nvars - 2 - prev)
        out.append(tuple(exp))
    return sorted(out)


def dim_poly_ring(nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return comb(degree + nvars - 1, nvars - 1)


def degree_basis(gen_degrees, d: int, nvars: int = 2):
    """Basis of the degree-d piece of (+)_j k[vars](-a_j): pairs (j, exponent)."""
    basis = []
    for j, a in enumerate(gen_degrees):
        for exp in monomials(nvars, d - a):
            basis.append((j, exp))
    return basis


def vector_coords(field: Field, vec, gen_degrees, d: int, basis=None, nvars: int = 2):
    """Coordinates of a homogeneous degree-d module element in the degree-d basis.

    ``vec`` is a list of Polys, entry j homogeneous of degree d - a_j (or zero).
    """
    if basis is None:
        basis = degree_basis(gen_degrees, d, nvars)
    index = {key: i for i, key in enumerate(basis)}
    coords = [field.zero] * len(basis)
    for j, p in enumerate(vec):
        for exp, c in p.terms.items():
            key = (j, exp)
            if key not in index:
                raise GradedError(f"entry {j} has a term of the wrong degree")
            coords[index[key]] = c
    return coords


def coords_to_vector(field: Field, coords, basis, ncomponents: int, variables):
    vec = [Poly.zero(field, variables) for _ in range(ncomponents)]
    for (j, exp), c in zip(basis, coords):
        if not field.is_zero(c):
            vec[j] = vec[j] + Poly(field, variables, {exp: c})
    return vec


def degree_map_matrix(m: PolyMatrix, d: int):
    """Scalar matrix of the degree-d piece of a homogeneous map.

    Returns (rows, src_basis, tgt_basis); rows are indexed by tgt_basis and
    columns by src_basis.  Entry coefficients are read off directly: the
    coefficient of x^e_t in entry * x^e_s is the entry's coefficient at
    e_t - e_s.
    """
    nvars = len(m.vars)
    src = degree_basis(m.col_degrees, d, nvars)
    tgt = degree_basis(m.row_degrees, d, nvars)
    field = m.field
    rows = []
    for i_t, exp_t in tgt:
        row = []
        for j_s, exp_s in src:
            diff = tuple(a - b for a, b in zip(exp_t, exp_s))
            if any(x < 0 for x in diff):
                row.append(field.zero)
            else:
                row.append(m.entry(i_t, j_s).coefficient(diff))
        rows.append(row)
    return rows, src, tgt


def poly_matrix_rank(m: PolyMatrix) -> int:
    """Rank over the fraction field, by fraction-free elimination with full pivoting."""
    field = m.field
    work = [[p for p in row] for row in m.entries]
    nrows, ncols = m.nrows, m.ncols
    prev = Poly.const(field, m.vars, 1)
    r = 0
    while True:
        pivot = None
        for i in range(r, nrows):
            for j in range(r, ncols):
                if not work[i][j].is_zero():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            return r
        pi, pj = pivot
        if pi != r:
            work[pi], work[r] = work[r], work[pi]
        if pj != r:
            for row in work:
                row[pj], row[r] = row[r], row[pj]
        for i in range(r + 1, nrows):
            for j in range(r + 1, ncols):
                num = work[r][r] * work[i][j] - work[i][r] * work[r][j]
                work[i][j] = num.divexact(prev)
            work[i][r] = Poly.zero(field, m.vars)
        prev = work[r][r]
        r += 1
        if r == min(nrows, ncols):
            return r


class IncrementalEchelon:
    """Row echelon accumulator over an exact field; tests independence."""

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        self.rows: list = []
        self.pivots: list[int] = []

    def reduce(self, vec):
        f = self.field
        v = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if not f.is_zero(c):
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        """Insert if independent of current rows; returns True when added."""
        f = self.field
        v = self.reduce(vec)
        piv = next((i for i, c in enumerate(v) if not f.is_zero(c)), None)
        if piv is None:
            return False
        inv = f.inv(v[piv])
        v = [f.mul(c, inv) for c in v]
        self.rows.append(v)
        self.pivots.append(piv)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def graded_kernel(m: PolyMatrix, degree_cap: int | None = None) -> PolyMatrix:
    """Minimal generators of ker(m) for a homogeneous map of graded free modules.

    The result's columns are homogeneous vectors in the source module; its
    row labels repeat the source generator degrees and its column labels are
    the kernel generator degrees.  Raises GradedError when the input is not
    homogeneous or the degree cap is hit before the kernel stabilizes.
    """
    if m.row_degrees is None or m.col_degrees is None:
        raise GradedError("graded_kernel needs degree labels")
    if not m.check_homogeneous():
        raise GradedError("matrix is not homogeneous for its degree labels")
    field = m.field
    nvars = len(m.vars)
    kappa = m.ncols - poly_matrix_rank(m)
    if kappa == 0:
        return PolyMatrix(
            field,
            m.vars,
            [[] for _ in range(m.ncols)],
            row_degrees=m.col_degrees,
            col_degrees=(),
        )
    if _DEGREE_CAP_OVERRIDE is not None:
        degree_cap = _DEGREE_CAP_OVERRIDE  # explicit user override wins
    elif degree_cap is None:
        degree_cap = sum(m.col_degrees) + 2
    gens: list[tuple[int, list[Poly]]] = []
    confirmed = 0
    # generators must appear by degree_cap; two confirmation degrees may follow
    for d in range(min(m.col_degrees), degree_cap + 3):
        rows, src, _ = degree_map_matrix(m, d)
        if not src:
            continue
        ker_basis = linalg.nullspace(field, rows, len(src))
        span = IncrementalEchelon(field, len(src))
        for e_g, gvec in gens:
            for mono in monomials(nvars, d - e_g):
                mono_poly = Poly(field, m.vars, {mono: field.one})
                shifted = [p * mono_poly for p in gvec]
                span.add(vector_coords(field, shifted, m.col_degrees, d, src, nvars))
        if len(gens) < kappa:
            for vec in ker_basis:
                if span.add(vec):
                    gens.append(
                        (d, coords_to_vector(field, vec, src, m.ncols, m.vars))
                    )
            confirmed = 0
            if len(gens) > kappa:
                raise GradedError("found more kernel generators than the rank predicts")
        else:
            if span.rank != len(ker_basis):
                raise GradedError("kernel generation gap after expected rank reached")
            confirmed += 1
            if confirmed == 2:
                break
    else:
        raise GradedError(
            f"kernel did not stabilize below degree cap {degree_cap} "
            "(inconsistent degree labels?)"
        )
    if len(gens) != kappa:
        raise GradedError("degree cap reached before all kernel generators appeared")
    cols = [vec for _, vec in gens]
    entries = [[cols[k][j] for k in range(kappa)] for j in range(m.ncols)]
    result = PolyMatrix(
        field,
        m.vars,
        entries,
        row_degrees=m.col_degrees,
        col_degrees=[e for e, _ in gens],
    )
    check = m @ result
    if not check.is_zero():
        raise GradedError("internal error: kernel generators fail m @ g = 0")
    return result


def module_span_rank(field: Field, gen_vectors, gen_degrees, target_degrees, d: int, nvars=2):
    """Rank of the degree-d span of module elements inside (+)k[vars](-a_j)."""
    basis = degree_basis(target_degrees, d, nvars)
    ech = IncrementalEchelon(field, len(basis))
    variables = gen_vectors[0][0].vars if gen_vectors else None
    for e_g, vec in zip(gen_degrees, gen_vectors):
        for mono in monomials(nvars, d - e_g):
            mono_poly = Poly(field, variables, {mono: field.one})
            shifted = [p * mono_poly for p in vec]
            ech.add(vector_coords(field, shifted, target_degrees, d, basis, nvars))
    return ech.rank


def express_in_module(
    field: Field,
    gen_vectors,
    gen_degrees,
    module_degrees,
    target_vec,
    target_degree: int,
    variables,
    nvars: int = 2,
):
    """Write a homogeneous element as a combination of module generators.

    Solves target = sum_g h_g * gen_g with h_g homogeneous of degree
    target_degree - e_g.  Returns the list of Poly coefficients h_g, or None
    when the element is not in the span.
    """
    basis = degree_basis(module_degrees, target_degree, nvars)
    columns = []
    unknown_slots = []
    for g, (e_g, vec) in enumerate(zip(gen_degrees, gen_vectors)):
        for mono in monomials(nvars, target_degree - e_g):
            mono_poly = Poly(field, variables, {mono: field.one})
            shifted = [p * mono_poly for p in vec]
            columns.append(
                vector_coords(field, shifted, module_degrees, target_degree, basis, nvars)
            )
            unknown_slots.append((g, mono))
    rhs = vector_coords(field, target_vec, module_degrees, target_degree, basis, nvars)
    if not columns:
        return None if any(not field.is_zero(c) for c in rhs) else [
            Poly.zero(field, variables) for _ in gen_vectors
        ]
    rows = [[col[i] for col in columns] for i in range(len(basis))]
    solution = linalg.solve(field, rows, rhs, len(columns))
    if solution is None:
        return None
    out = [Poly.zero(field, variables) for _ in gen_vectors]
    for (g, mono), c in zip(unknown_slots, solution):
        if not field.is_zero(c):
            out[g] = out[g] + Poly(field, variables, {mono: c})
    return out


def graded_quotient_dims(field: Field, variables, generators, degrees, rank: int = 1):
    """Graded dimensions of S^rank / <generators> over S = k[variables].

    ``generators`` holds homogeneous Polys (ideal case, rank 1) or lists of
    Polys of length ``rank`` (column vectors of a module presentation).  The
    dimension in each degree is rank * dim S_d minus the rank of the Macaulay
    matrix of monomial multiples of the generators.
    """
    variables = tuple(variables)
    nvars = len(variables)
    gens = []
    for g in generators:
        vec = [g] if isinstance(g, Poly) else list(g)
        if len(vec) != rank:
            raise GradedError("generator vector length does not match rank")
        degs = {p.homogeneous_degree() for p in vec if not p.is_zero()}
        if not degs:
            continue  # zero generators contribute nothing
        if len(degs) != 1:
            raise GradedError("generators must be homogeneous")
        gens.append((degs.pop(), vec))
    out = []
    for d in degrees:
        mono_list = monomials(nvars, d)
        index = {exp: i for i, exp in enumerate(mono_list)}
        width = rank * len(mono_list)
        ech = IncrementalEchelon(field, width)
        for e_g, vec in gens:
            for mono in monomials(nvars, d - e_g):
                mono_poly = Poly(field, variables, {mono: field.one})
                coords = [field.zero] * width
                for comp, p in enumerate(vec):
                    shifted = p * mono_poly
                    for exp, c in shifted.terms.items():
                        coords[comp * len(mono_list) + index[exp]] = c
                ech.add(coords)
        out.append(rank * dim_poly_ring(nvars, d) - ech.rank)
    return out
