import random

import pytest

from ulrichmf import binary, clifford, mf
from ulrichmf.fields import NotASquare, PrimeField
from ulrichmf.pencil import HyperellipticData
from ulrichmf.poly import Poly

ST = binary.ST
F = PrimeField(10009)
F13 = PrimeField(13)


def curve(genus, field=F, roots=None):
    roots = roots or list(range(1, 2 * genus + 3))
    return HyperellipticData.from_factors(
        field, [binary.root_factor(field, c) for c in roots]
    )


H1 = curve(1)
H2 = curve(2)


def brute_sign(subset_i, subset_j):
    """Sign oracle: move each generator of J left past the larger elements of I."""
    word = sorted(subset_i) + sorted(subset_j)
    # bubble sort counting transpositions of distinct generators; equal pairs
    # annihilate into f_i and do not move past each other in the count below
    sign = 1
    arr = list(word)
    # insertion sort counting swaps of strictly larger left neighbors
    for k in range(1, len(arr)):
        j = k
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            sign = -sign
            j -= 1
    return sign


def test_epsilon_examples():
    assert clifford.epsilon_sign({1}, {1}) == 1
    assert clifford.epsilon_sign({2}, {1}) == -1
    assert clifford.epsilon_sign({1, 2}, {2, 3}) == 1


def test_basis_product_examples():
    sign, factor, subset = clifford.basis_product(H1, {1}, {1})
    assert (sign, subset) == (1, frozenset())
    assert factor == H1.factor(1)

    sign, factor, subset = clifford.basis_product(H1, {2}, {1})
    assert sign == -1 and subset == frozenset({1, 2})
    assert factor == Poly.const(F, ST, 1)

    sign, factor, subset = clifford.basis_product(H1, {1, 2}, {2, 3})
    assert sign == 1 and subset == frozenset({1, 3})
    assert factor == H1.factor(2)


def test_basis_product_sign_against_sorting_oracle():
    rng = random.Random(3)
    universe = list(range(1, H2.nbranch + 1))
    for _ in range(60):
        size_i = rng.randrange(0, 4)
        size_j = rng.randrange(0, 4)
        key_i = frozenset(rng.sample(universe, size_i))
        key_j = frozenset(rng.sample(universe, size_j))
        if key_i & key_j:
            continue  # the oracle only orders disjoint words
        sign, _, _ = clifford.basis_product(H2, key_i, key_j)
        assert sign == brute_sign(key_i, key_j)


def test_square_of_sum_cross_terms_cancel():
    e1 = clifford.CliffordElement.generator(H1, 1)
    e2 = clifford.CliffordElement.generator(H1, 2)
    sq = (e1 + e2) * (e1 + e2)
    expected = clifford.CliffordElement.basis(
        H1, frozenset(), H1.factor(1) + H1.factor(2)
    )
    assert sq == expected


def test_unit_and_scaling():
    a = clifford.CliffordElement.basis(H1, {1, 3}, binary.linear_form(F, 2, 5))
    one = clifford.CliffordElement.one(H1)
    assert one * a == a
    assert a * one == a
    assert a.parity() == "even"
    assert (a + clifford.CliffordElement.generator(H1, 2)).parity() == "mixed"


def random_element(rng, h, max_terms=3):
    terms = {}
    universe = list(range(1, h.nbranch + 1))
    for _ in range(max_terms):
        size = rng.randrange(0, h.nbranch + 1)
        subset = frozenset(rng.sample(universe, size))
        coeff = binary.linear_form(h.field, rng.randrange(h.field.p), rng.randrange(h.field.p))
        if not coeff.is_zero():
            terms[subset] = terms.get(subset, Poly.zero(h.field, ST)) + coeff
    return clifford.CliffordElement(h, terms)


def test_associativity_random():
    rng = random.Random(99)
    for h in (H1, H2):
        for _ in range(25):
            a, b, c = (random_element(rng, h) for _ in range(3))
            assert (a * b) * c == a * (b * c)


def test_grading_additivity():
    rng = random.Random(5)
    for _ in range(20):
        size_a = rng.randrange(0, 4)
        size_b = rng.randrange(0, 4)
        a = clifford.CliffordElement.basis(H2, frozenset(random.Random(size_a).sample(range(1, 7), size_a)))
        b = clifford.CliffordElement.basis(H2, frozenset(random.Random(size_b + 17).sample(range(1, 7), size_b)))
        prod = a * b
        if not prod.is_zero():
            assert prod.degree() == a.degree() + b.degree()


def test_central_element_odd_genus():
    y = clifford.central_element_y(H1)
    top = frozenset(range(1, 5))
    # g odd: y is plus or minus the top word
    assert set(y.terms) == {top}
    assert y * y == clifford.CliffordElement.basis(H1, frozenset(), H1.f)


def test_central_element_even_genus_needs_sqrt_minus_one():
    y = clifford.central_element_y(curve(2, F13, [1, 2, 3, 4, 5, 6]))
    coeff = y.coefficient(frozenset(range(1, 7)))
    # sqrt(-1) = 5 mod 13; the canonical root is used
    assert coeff.constant_value() in (5, 8)
    h_bad = curve(2, PrimeField(10007), [1, 2, 3, 4, 5, 6])
    with pytest.raises(NotASquare):
        clifford.central_element_y(h_bad)


def test_y_central_even_anticommutes_odd():
    for h in (H1, H2):
        y = clifford.central_element_y(h)
        universe = range(1, h.nbranch + 1)
        from itertools import combinations

        for size in range(h.nbranch + 1):
            for combo in combinations(universe, size):
                w = clifford.CliffordElement.basis(h, combo)
                if size % 2 == 0:
                    assert y * w == w * y
                else:
                    assert (y * w + w * y).is_zero()


def test_even_decomposition_empty_set():
    report = clifford.even_decomposition_check(H1, set())
    assert report["pass"], report


def test_even_decomposition_pair():
    report = clifford.even_decomposition_check(H1, {1, 2})
    assert report["pass"], report
    c1, c2 = report["c"], report["c_prime"]
    assert F.mul(c1, c2) == F.one


def test_even_decomposition_all_even_subsets_small_genus():
    for h in (H1, H2):
        for rep in mf.canonical_classes(h, parity=0):
            report = clifford.even_decomposition_check(h, rep)
            assert report["pass"], report


def test_even_decomposition_rejects_odd():
    with pytest.raises(clifford.CliffordError):
        clifford.even_decomposition_check(H1, {1})


def test_epsilon_commutation_identity():
    rng = random.Random(8)
    universe = list(range(1, 7))
    for _ in range(40):
        key_i = frozenset(rng.sample(universe, rng.randrange(0, 5)))
        key_j = frozenset(rng.sample(universe, rng.randrange(0, 5)))
        lhs = clifford.epsilon_sign(key_i, key_j) * clifford.epsilon_sign(key_j, key_i)
        rhs = (-1) ** (len(key_i) * len(key_j) - len(key_i & key_j))
        assert lhs == rhs


def test_regular_module_dimensions():
    window = clifford.regular_module_window(H1, 0, 5)
    dims = [window.dim(k) for k in range(6)]
    assert dims == [clifford.clifford_dimension(H1, k) for k in range(6)]
    assert dims == [1, 4, 8, 12, 16, 20]


def test_regular_module_satisfies_relations():
    for h in (H1, H2):
        window = clifford.regular_module_window(h, 0, 4)
        window.verify_relations()


def test_bgg_complex_regular_module():
    window = clifford.regular_module_window(H1, 0, 5)
    result = clifford.bgg_complex(window, 0, 3)
    assert all(result["certificates"].values())
    assert [result["matrices"][k].ncols for k in range(4)] == [1, 4, 8, 12]
    d0 = result["matrices"][0]
    # first differential is the column of the x variables, up to sign
    entries = {d0.entry(i, 0) for i in range(4)}
    names = d0.vars
    from ulrichmf.poly import Poly as P

    for i, v in enumerate(names):
        x = P.variable(F, names, v)
        assert x in entries or -x in entries


def test_bgg_broken_sign_rejected():
    window = clifford.regular_module_window(H1, 0, 4)
    mat = [row[:] for row in window.e_action[(1, 1)]]
    mat[0][0] = F.add(mat[0][0], F.one)
    window.e_action[(1, 1)] = mat
    with pytest.raises(clifford.CliffordError):
        clifford.bgg_complex(window, 0, 2)
