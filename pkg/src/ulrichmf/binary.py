"""Homogeneous binary forms in (s, t): roots, squarefree tests, interpolation.

A binary form is a homogeneous Poly in the fixed variables ("s", "t").
Roots are reported as scalars lam with linear factor (s - lam*t); the factor
t itself is the root at infinity and is tracked separately.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import Field, PrimeField, RationalField
from .poly import Poly, PolyError

ST = ("s", "t")


def binary_form(field: Field, coeffs) -> Poly:
    """Form with descending s-coefficients: coeffs[i] multiplies s^(d-i) t^i."""
    d = len(coeffs) - 1
    return Poly.from_pairs(field, ST, (((d - i, i), c) for i, c in enumerate(coeffs)))


def linear_form(field: Field, a, b) -> Poly:
    """a*s + b*t."""
    return binary_form(field, [a, b])


def root_factor(field: Field, lam) -> Poly:
    """The linear factor s - lam*t."""
    return binary_form(field, [1, field.neg(field.of(lam))])


def check_binary(f: Poly, degree: int | None = None) -> int:
    """Validate a nonzero homogeneous (s, t)-form; returns its degree."""
    if f.vars != ST:
        raise PolyError(f"expected a form in {ST}, got variables {f.vars}")
    if f.is_zero():
        raise PolyError("zero binary form")
    d = f.homogeneous_degree()
    if degree is not None and d != degree:
        raise PolyError(f"expected degree {degree}, got {d}")
    return d


def coeff_list(f: Poly) -> list:
    """Ascending s-coefficients of a binary form: entry i multiplies s^i."""
    d = check_binary(f)
    return [f.coefficient((i, d - i)) for i in range(d + 1)]


def evaluate(f: Poly, s_val, t_val):
    return f.evaluate({"s": s_val, "t": t_val})


def t_valuation(f: Poly) -> int:
    check_binary(f)
    return min(e[1] for e in f.terms)


def normalize(f: Poly) -> Poly:
    """Scale so the lexicographically first nonzero coefficient (s^d, s^{d-1}t, ...) is 1."""
    d = check_binary(f)
    for i in range(d, -1, -1):
        c = f.coefficient((i, d - i))
        if not f.field.is_zero(c):
            return f.scale(f.field.inv(c))
    raise PolyError("zero binary form")


def roots(f: Poly):
    """All linear-factor roots of a binary form.

    Returns (root_list, infinity_multiplicity, splits) where root_list holds
    (lam, multiplicity) pairs for factors (s - lam*t), infinity_multiplicity
    is the multiplicity of the factor t, and splits reports whether the found
    factors account for f up to a nonzero scalar.
    """
    field = f.field
    d = check_binary(f)
    k = t_valuation(f)
    g = f
    tpoly = Poly.variable(field, ST, "t")
    for _ in range(k):
        g = g.divexact(tpoly)
    found = []
    for lam in _root_candidates(field, g):
        lam = field.of(lam)
        if not field.is_zero(evaluate(g, lam, field.one)):
            continue
        factor = root_factor(field, lam)
        mult = 0
        while True:
            try:
                g2 = g.divexact(factor)
            except PolyError:
                break
            g, mult = g2, mult + 1
        if mult:
            found.append((lam, mult))
    found.sort(key=_root_sort_key)
    splits = k + sum(m for _, m in found) == d
    return found, k, splits


def _root_sort_key(item):
    lam = item[0]
    if isinstance(lam, Fraction):
        return (lam.numerator, lam.denominator)
    return (int(lam), 1)


def _root_candidates(field: Field, g: Poly):
    if isinstance(field, PrimeField):
        return range(field.p)
    if isinstance(field, RationalField):
        return _rational_candidates(g)
    raise PolyError("root search supports F_p and Q only")


def _rational_candidates(g: Poly):
    """Rational root candidates of the dehomogenized form (includes 0)."""
    coeffs = coeff_list(g)
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // _gcd_int(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    while ints and ints[0] == 0:
        ints = ints[1:]
    yield Fraction(0)
    if not ints:
        return
    a0, an = abs(ints[0]), abs(ints[-1])
    for r in _divisors(a0):
        for q in _divisors(an):
            yield Fraction(r, q)
            yield Fraction(-r, q)


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int):
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            out.append(n // i)
        i += 1
    return sorted(set(out))


def squarefree_distinct(f: Poly) -> bool:
    """True iff f has no repeated linear factor over the algebraic closure.

    The factor t (root at infinity) participates: t^2 | f fails the test.
    """
    field = f.field
    check_binary(f)
    if t_valuation(f) > 1:
        return False
    g = f
    tpoly = Poly.variable(field, ST, "t")
    if t_valuation(f) == 1:
        g = g.divexact(tpoly)
    coeffs = coeff_list(g)
    deriv = [field.mul(field.of(i), coeffs[i]) for i in range(1, len(coeffs))]
    gc = _gcd_univ(field, coeffs, deriv)
    return len(gc) == 1


def _trim(field: Field, c: list) -> list:
    while c and field.is_zero(c[-1]):
        c.pop()
    return c


def _poly_mod(field: Field, a: list, b: list) -> list:
    """Remainder of a mod b for ascending coefficient lists, b nonzero."""
    r = _trim(field, list(a))
    inv = field.inv(b[-1])
    while len(r) >= len(b):
        shift = len(r) - len(b)
        q = field.mul(r[-1], inv)
        for i, c in enumerate(b):
            r[shift + i] = field.sub(r[shift + i], field.mul(q, c))
        _trim(field, r)
    return r


def _gcd_univ(field: Field, a: list, b: list) -> list:
    """Monic gcd of univariate coefficient lists (ascending), len-1 list if coprime."""
    a, b = _trim(field, list(a)), _trim(field, list(b))
    while b:
        a, b = b, _poly_mod(field, a, b)
    if not a:
        return []
    inv = field.inv(a[-1])
    return [field.mul(c, inv) for c in a]


def interpolate_univariate(field: Field, points, values) -> list:
    """Lagrange interpolation; returns ascending coefficients, length len(points)."""
    n = len(points)
    if len(values) != n:
        raise PolyError("points/values length mismatch")
    coeffs = [field.zero] * n
    for i in range(n):
        # numerator polynomial prod_{j != i} (x - points[j]), built incrementally
        num = [field.one]
        denom = field.one
        for j in range(n):
            if j == i:
                continue
            num = _mul_linear(field, num, field.neg(points[j]))
            denom = field.mul(denom, field.sub(points[i], points[j]))
        scale = field.div(values[i], denom)
        for k, c in enumerate(num):
            coeffs[k] = field.add(coeffs[k], field.mul(scale, c))
    return coeffs


def _mul_linear(field: Field, coeffs: list, const) -> list:
    """Multiply an ascending coefficient list by (x + const)."""
    out = [field.zero] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] = field.add(out[i], field.mul(c, const))
        out[i + 1] = field.add(out[i + 1], c)
    return out


def homogenize(field: Field, coeffs: list, degree: int) -> Poly:
    """Ascending univariate coefficients -> binary form of the given degree."""
    if len(coeffs) > degree + 1:
        raise PolyError("too many coefficients for the stated degree")
    pairs = [((i, degree - i), c) for i, c in enumerate(coeffs)]
    return Poly.from_pairs(field, ST, pairs)


def dehomogenize(f: Poly) -> Poly:
    """Set t = 1, producing a Poly in the single variable s."""
    check_binary(f)
    return Poly.from_pairs(f.field, ("s",), (((e[0],), c) for e, c in f.terms.items()))
