"""Vector bundles on the hyperelliptic curve y^2 = f as matrix factorizations.

A matrix factorization here is a pair (phi, psi) of graded matrices over
k[s,t] with phi @ psi = psi @ phi = f * id, f of degree 2g+2.  The module
records the generator degrees of the pushforward to P^1; phi is homogeneous
of degree g+1 as a map module -> module(g+1).

Subsets of branch indices are 1-based frozensets.  The distinguished
ramification point p is the root of the first diagonal factor f_1, so odd
twists are realized by tensoring with the index-{1} line bundle.
"""

from __future__ import annotations

from itertools import combinations

from . import graded
from .binary import ST, check_binary
from .fields import Field
from .pencil import HyperellipticData
from .poly import Poly
from .polymatrix import GradedFreeModule, PolyMatrix


class MFError(ValueError):
    pass


def verify_mf_data(h: HyperellipticData, degrees, phi: PolyMatrix, psi: PolyMatrix):
    """Check the matrix factorization conditions; returns (ok, detail)."""
    f = h.f
    g = h.genus
    n = len(degrees)
    try:
        check_binary(f, 2 * (g + 1))
    except Exception as exc:  # malformed curve data
        return False, f"bad curve polynomial: {exc}"
    for name, m in (("phi", phi), ("psi", psi)):
        if m.vars != ST:
            return False, f"{name} lives in variables {m.vars}, expected {ST}"
        if (m.nrows, m.ncols) != (n, n):
            return False, f"{name} is {m.nrows}x{m.ncols}, expected {n}x{n}"
    for name, m in (("phi", phi), ("psi", psi)):
        for i in range(n):
            for j in range(n):
                p = m.entry(i, j)
                if p.is_zero():
                    continue
                want = degrees[j] - degrees[i] + (g + 1)
                if not p.is_homogeneous() or p.homogeneous_degree() != want:
                    return False, (
                        f"{name}[{i}][{j}] is not homogeneous of degree {want}"
                    )
    fid = PolyMatrix.scalar_matrix(h.field, ST, f, n)
    prod = phi @ psi
    if prod != fid:
        where = _first_mismatch(prod, fid)
        return False, f"phi @ psi != f*id at entry {where}"
    prod = psi @ phi
    if prod != fid:
        where = _first_mismatch(prod, fid)
        return False, f"psi @ phi != f*id at entry {where}"
    return True, "ok"


def _first_mismatch(a: PolyMatrix, b: PolyMatrix):
    for i in range(a.nrows):
        for j in range(a.ncols):
            if a.entry(i, j) != b.entry(i, j):
                return (i, j)
    return None


class MatrixFactorization:
    """A verified matrix factorization of f over k[s,t]."""

    def __init__(self, h: HyperellipticData, degrees, phi: PolyMatrix, psi=None, label=""):
        self.h = h
        self.module = GradedFreeModule(degrees)
        self.phi = phi
        self.psi = phi if psi is None else psi
        self.label = label
        ok, detail = verify_mf_data(h, self.module.degrees, self.phi, self.psi)
        if not ok:
            raise MFError(f"invalid matrix factorization: {detail}")

    @property
    def field(self) -> Field:
        return self.h.field

    @property
    def genus(self) -> int:
        return self.h.genus

    @property
    def f(self) -> Poly:
        return self.h.f

    def rank_degree(self):
        """(rank, degree, chi) of the bundle on the curve."""
        n = self.module.rank
        if n % 2:
            raise MFError("odd number of generators: not a pushforward from the curve")
        rank = n // 2
        deg_push = -sum(self.module.degrees)
        degree = deg_push + rank * (self.genus + 1)
        chi = degree + rank * (1 - self.genus)
        return rank, degree, chi

    def twist_h(self, k: int = 1) -> "MatrixFactorization":
        """Tensor with H^k (pullback of O(1) from P^1): degrees drop by k."""
        return MatrixFactorization(
            self.h,
            [a - k for a in self.module.degrees],
            self.phi,
            self.psi,
            label=f"{self.label}({k}H)" if self.label else "",
        )

    def h0(self, half_twist: int = 0) -> int:
        """dim H^0 of the bundle twisted by H^half_twist."""
        return self.module.hilbert(half_twist)

    def __repr__(self):
        name = self.label or "MF"
        return f"{name}(degrees={self.module.degrees})"


def subset_key(h: HyperellipticData, indices) -> frozenset:
    key = frozenset(int(i) for i in indices)
    if any(i < 1 or i > h.nbranch for i in key):
        raise MFError(f"subset {sorted(key)} out of range 1..{h.nbranch}")
    return key


def canonical_subset(h: HyperellipticData, indices) -> frozenset:
    """The lex-smaller of I and its complement: one name per line bundle."""
    key = subset_key(h, indices)
    comp = frozenset(range(1, h.nbranch + 1)) - key
    return min(key, comp, key=lambda k: sorted(k) + [len(k)])


def canonical_classes(h: HyperellipticData, parity=None):
    """All canonical subset representatives, optionally filtered by |I| parity."""
    seen = set()
    out = []
    universe = range(1, h.nbranch + 1)
    for size in range(h.nbranch + 1):
        if parity is not None and size % 2 != parity:
            continue
        for combo in combinations(universe, size):
            rep = canonical_subset(h, combo)
            if rep not in seen:
                seen.add(rep)
                out.append(rep)
    return out


def line_bundle_mf(h: HyperellipticData, indices) -> MatrixFactorization:
    """The rank-1 factorization with antidiagonal (f_{I^c}, f_I)."""
    key = subset_key(h, indices)
    comp = h.complement(key)
    f_i = h.subset_product(key)
    f_ic = h.subset_product(comp)
    zero = Poly.zero(h.field, ST)
    phi = PolyMatrix(h.field, ST, [[zero, f_ic], [f_i, zero]])
    degrees = (len(key) // 2, len(comp) // 2)
    label = "L{" + ",".join(str(i) for i in sorted(key)) + "}"
    return MatrixFactorization(h, degrees, phi, label=label)


def _phi_as_graded(m: MatrixFactorization) -> PolyMatrix:
    g = m.genus
    degs = m.module.degrees
    return m.phi.relabel(
        row_degrees=[a - (g + 1) for a in degs], col_degrees=list(degs)
    )


def tensor_mf(m1: MatrixFactorization, m2: MatrixFactorization) -> MatrixFactorization:
    """Tensor product of bundles, computed as a graded syzygy kernel.

    Builds phi1 (x) 1 - 1 (x) phi2 on B1 (x) B2 (g+1), takes minimal kernel
    generators, and restricts the action of phi1 (x) 1 to them by solving
    exact membership systems degree by degree.
    """
    if m1.h is not m2.h and m1.h.f != m2.h.f:
        raise MFError("tensor factors must share one curve")
    h = m1.h
    field = h.field
    g = h.genus
    deg1, deg2 = m1.module.degrees, m2.module.degrees
    tensor_degs = [a + b for a in deg1 for b in deg2]
    n = len(tensor_degs)
    id1 = PolyMatrix.identity(field, ST, len(deg1))
    id2 = PolyMatrix.identity(field, ST, len(deg2))
    diff = m1.phi.kron(id2) - id1.kron(m2.phi)
    diff = diff.relabel(
        row_degrees=[c - 2 * (g + 1) for c in tensor_degs],
        col_degrees=[c - (g + 1) for c in tensor_degs],
    )
    # provable cap on kernel generator degrees: their sum is rank*(g+1) - deg
    # (pushforward degree bookkeeping), and each is at least the smallest
    # source generator degree
    r1, d1, _ = m1.rank_degree()
    r2, d2, _ = m2.rank_degree()
    rank_new = r1 * r2
    deg_new = d1 * r2 + d2 * r1
    gen_sum = rank_new * (g + 1) - deg_new
    kappa = len(tensor_degs) // 2
    e_min = min(tensor_degs) - (g + 1)
    cap = max(gen_sum - (kappa - 1) * e_min, e_min)
    kernel = graded.graded_kernel(diff, degree_cap=cap)
    expected = (len(deg1) * len(deg2)) // 2
    if kernel.ncols != expected:
        raise MFError(
            f"kernel rank {kernel.ncols} != {expected}: inconsistent factorizations"
        )
    gen_degs = list(kernel.col_degrees)
    gen_vecs = [list(kernel.column(k)) for k in range(kernel.ncols)]
    action = m1.phi.kron(id2)
    phi_cols = []
    level2 = [c - 2 * (g + 1) for c in tensor_degs]
    shifted_degs = [e - (g + 1) for e in gen_degs]
    for k in range(kernel.ncols):
        w = [
            sum(
                (action.entry(i, j) * gen_vecs[k][j] for j in range(n)),
                Poly.zero(field, ST),
            )
            for i in range(n)
        ]
        combo = graded.express_in_module(
            field, gen_vecs, shifted_degs, level2, w, gen_degs[k], ST
        )
        if combo is None:
            raise MFError("y-action does not preserve the computed kernel")
        phi_cols.append(combo)
    rows = [[phi_cols[k][l] for k in range(kernel.ncols)] for l in range(kernel.ncols)]
    phi_new = PolyMatrix(field, ST, rows)
    label = f"({m1.label})@({m2.label})" if m1.label and m2.label else ""
    return MatrixFactorization(h, gen_degs, phi_new, label=label)


def twist_by_p(m: MatrixFactorization) -> MatrixFactorization:
    """Tensor with the degree-1 line bundle O(p), p the root of f_1."""
    return tensor_mf(m, line_bundle_mf(m.h, {1}))


class CohomologyTable:
    """h^0 and h^1 over a twist range in steps of the ramification point p."""

    def __init__(self, twists, h0, h1, rank, degree, genus):
        self.twists = list(twists)
        self.h0 = list(h0)
        self.h1 = list(h1)
        self.rank = rank
        self.degree = degree
        self.genus = genus
        for n, a, b in zip(self.twists, self.h0, self.h1):
            if a < 0 or b < 0:
                raise MFError("negative cohomology dimension")
            chi = self.chi(n)
            if a - b != chi:
                raise MFError(f"h0 - h1 != chi at twist {n}")

    def chi(self, n: int) -> int:
        return self.degree + n * self.rank + self.rank * (1 - self.genus)

    def rows(self):
        return self.h0, self.h1

    def __repr__(self):
        return f"CohomologyTable(twists={self.twists}, h0={self.h0}, h1={self.h1})"


def cohomology_table(m: MatrixFactorization, n0: int, n1: int) -> CohomologyTable:
    """h^i(M(n p)) for n0 <= n <= n1; odd twists go through twist_by_p."""
    rank, degree, _ = m.rank_degree()
    odd = None
    h0 = []
    twists = list(range(n0, n1 + 1))
    for n in twists:
        if n % 2 == 0:
            h0.append(m.module.hilbert(n // 2))
        else:
            if odd is None:
                odd = twist_by_p(m)
            h0.append(odd.module.hilbert((n - 1) // 2))
    chi = lambda n: degree + n * rank + rank * (1 - m.genus)
    h1 = [a - chi(n) for a, n in zip(h0, twists)]
    return CohomologyTable(twists, h0, h1, rank, degree, m.genus)


def hom_space(m1: MatrixFactorization, m2: MatrixFactorization, twist: int = 0):
    """Basis of degree-``twist`` maps T: B1 -> B2(twist) with T phi1 = phi2 T.

    Returns (dimension, list of PolyMatrix witnesses).
    """
    if m1.h.f != m2.h.f:
        raise MFError("hom_space needs factorizations of one f")
    field = m1.field
    g = m1.genus
    a = m1.module.degrees
    b = m2.module.degrees
    n1, n2 = len(a), len(b)
    slots = []
    slot_index = {}
    for i in range(n2):
        for j in range(n1):
            d = a[j] - b[i] + twist
            for mono in graded.monomials(2, d):
                slot_index[(i, j, mono)] = len(slots)
                slots.append((i, j, mono))
    if not slots:
        return 0, []
    equations = {}

    def accumulate(i, j, factor: Poly, ti, tj, sign):
        # contribution of factor * T[ti][tj] to result entry (i, j)
        d_t = a[tj] - b[ti] + twist
        for mono in graded.monomials(2, d_t):
            col = slot_index[(ti, tj, mono)]
            for exp, c in factor.terms.items():
                key = (i, j, tuple(x + y for x, y in zip(exp, mono)))
                row = equations.setdefault(key, {})
                val = field.add(row.get(col, field.zero), c if sign > 0 else field.neg(c))
                if field.is_zero(val):
                    row.pop(col, None)
                else:
                    row[col] = val

    for i in range(n2):
        for j in range(n1):
            # (T phi1)[i][j] = sum_k T[i][k] phi1[k][j]
            for k in range(n1):
                p = m1.phi.entry(k, j)
                if not p.is_zero():
                    accumulate(i, j, p, i, k, +1)
            # (phi2 T)[i][j] = sum_k phi2[i][k] T[k][j]
            for k in range(n2):
                q = m2.phi.entry(i, k)
                if not q.is_zero():
                    accumulate(i, j, q, k, j, -1)
    rows = []
    for key in sorted(equations):
        row = equations[key]
        rows.append([row.get(c, field.zero) for c in range(len(slots))])
    from . import linalg

    basis = linalg.nullspace(field, rows, len(slots)) if rows else [
        [field.one if i == k else field.zero for i in range(len(slots))]
        for k in range(len(slots))
    ]
    witnesses = []
    for vec in basis:
        entries = [
            [Poly.zero(field, ST) for _ in range(n1)] for _ in range(n2)
        ]
        for (i, j, mono), c in zip(slots, vec):
            if not field.is_zero(c):
                entries[i][j] = entries[i][j] + Poly(field, ST, {mono: c})
        witnesses.append(PolyMatrix(field, ST, entries))
    return len(witnesses), witnesses


def is_isomorphic_line_bundle(m1: MatrixFactorization, m2: MatrixFactorization) -> bool:
    """Isomorphism test for rank-1 factorizations of equal rank and degree."""
    r1 = m1.rank_degree()
    r2 = m2.rank_degree()
    if r1[0] != 1 or r2[0] != 1:
        raise MFError("isomorphism test is restricted to rank-1 bundles")
    if r1 != r2:
        return False
    dim, basis = hom_space(m1, m2, 0)
    if dim == 0:
        return False
    for t in basis:
        if graded.poly_matrix_rank(t) == t.nrows:
            return True
    # a generic combination of the basis elements, in case single witnesses drop rank
    if dim > 1:
        acc = basis[0]
        for k, t in enumerate(basis[1:], start=2):
            acc = acc + t.scale_scalar(m1.field.of(k))
        if graded.poly_matrix_rank(acc) == acc.nrows:
            return True
    return False


def raynaud_check(m: MatrixFactorization) -> bool:
    """True iff h^0(M) = 0 and h^1(M) = 0 at twist zero."""
    _, _, chi = m.rank_degree()
    h0 = m.module.hilbert(0)
    return h0 == 0 and chi == 0


def verify_group_law(h: HyperellipticData, idx_i, idx_j) -> dict:
    """Check L_I (x) L_J = L_{I delta J}, with an H-twist when |I|,|J| are both odd."""
    key_i = subset_key(h, idx_i)
    key_j = subset_key(h, idx_j)
    li = line_bundle_mf(h, key_i)
    lj = line_bundle_mf(h, key_j)
    prod = tensor_mf(li, lj)
    delta = key_i.symmetric_difference(key_j)
    expected = line_bundle_mf(h, delta)
    twisted = len(key_i) % 2 == 1 and len(key_j) % 2 == 1
    if twisted:
        expected = expected.twist_h(1)
    ok = is_isomorphic_line_bundle(prod, expected)
    return {
        "I": sorted(key_i),
        "J": sorted(key_j),
        "delta": sorted(delta),
        "h_twist": twisted,
        "product_rank_degree": prod.rank_degree(),
        "expected_rank_degree": expected.rank_degree(),
        "pass": ok,
    }
