#!/usr/bin/env python3
"""Frozen reference values for the Rust test suite.

Every constant the tests compare against is produced here by an
implementation-independent route:

  * gamma-family anchors come from mpmath's own polygamma/loggamma at 40
    significant digits;
  * mean-capacity targets are obtained by direct arbitrary-precision
    quadrature of u(x) against the correlation-kernel one-point density
    (mpmath's jacobi + quad), never from the closed-form expressions the
    library implements;
  * exact rationals use the fractions module.

Run manually (python3 tools/reference_values.py) and paste the printed Rust
constants into the tests. Values are printed with 22 significant digits so
the nearest f64 is pinned exactly.
"""

from fractions import Fraction

import mpmath as mp

mp.mp.dps = 40


def r(x, digits=22):
    """Format an mpmath value for embedding in Rust source."""
    return mp.nstr(mp.mpf(x), digits, strip_zeros=False)


# ---------------------------------------------------------------- special_fn

DIGAMMA_POINTS = [
    "1", "2", "0.5", "0.25", "3.75", "10.5", "17", "42", "100.5", "200",
    "1e-6", "1e-3", "0.1", "7.5", "33.25",
]
TRIGAMMA_POINTS = [
    "1", "2", "0.5", "0.25", "3.75", "10", "10.5", "17", "100.5", "200",
    "1e-6", "0.1", "7.5", "55.125",
]
LOG_GAMMA_POINTS = [
    "0.5", "1", "2", "3.7", "5", "10", "42.25", "100.3", "170.5", "1e-4",
    "0.999999", "12.0001",
]
GAMMA_REFLECT_POINTS = [
    "0.5", "-0.5", "-1.5", "2.5", "-3.25", "-7.75", "0.1", "-0.1", "-12.5",
    "4.0",
]
POCHHAMMER_CASES = [
    ("3", 2), ("0.5", 5), ("-2.5", 4), ("1e-3", 3), ("1", 0), ("-7", 3),
    ("2.25", 11), ("-0.75", 6),
]


def print_special():
    print("// --- paste into special-function tests ---")
    print("const DIGAMMA_REFS: &[(f64, f64)] = &[")
    for p in DIGAMMA_POINTS:
        x = mp.mpf(p)
        print(f"    ({p}, {r(mp.digamma(x))}),")
    print("];")
    print("const TRIGAMMA_REFS: &[(f64, f64)] = &[")
    for p in TRIGAMMA_POINTS:
        x = mp.mpf(p)
        print(f"    ({p}, {r(mp.polygamma(1, x))}),")
    print("];")
    print("const LOG_GAMMA_REFS: &[(f64, f64)] = &[")
    for p in LOG_GAMMA_POINTS:
        x = mp.mpf(p)
        print(f"    ({p}, {r(mp.loggamma(x))}),")
    print("];")
    print("const GAMMA_REFLECT_REFS: &[(f64, f64)] = &[")
    for p in GAMMA_REFLECT_POINTS:
        x = mp.mpf(p)
        print(f"    ({p}, {r(mp.gamma(x))}),")
    print("];")
    print("const POCHHAMMER_REFS: &[(f64, u32, f64)] = &[")
    for p, n in POCHHAMMER_CASES:
        a = mp.mpf(p)
        print(f"    ({p}, {n}, {r(mp.rf(a, n))}),")
    print("];")


# ------------------------------------------------------- kernel densities

def u(x):
    if abs(x) >= 1:
        return mp.mpf(0)
    return (1 - x * x) / 4 * mp.log((1 + x) / (1 - x)) ** 2


def norm_h(k, a, b):
    return (2 * mp.gamma(k + a + 1) * mp.gamma(k + b + 1)
            / ((2 * k + a + b + 1) * mp.gamma(k + 1) * mp.gamma(k + a + b + 1)))


def norm_h_even(k, a):
    return (mp.gamma(2 * k + a + 1) ** 2
            / ((4 * k + 2 * a + 1) * mp.gamma(2 * k + 1) * mp.gamma(2 * k + 2 * a + 1)))


def kernel_fixed(x, m, a, b):
    w = ((1 - x) / 2) ** a * ((1 + x) / 2) ** b
    s = mp.fsum(mp.jacobi(k, a, b, x) ** 2 / norm_h(k, a, b) for k in range(m))
    return w * s


def kernel_arbitrary(x, m, a):
    w = ((1 - x * x) / 4) ** a
    s = mp.fsum(mp.jacobi(2 * k, a, a, x) ** 2 / norm_h_even(k, a) for k in range(m))
    return w * s


def capacity_fixed_quad(m, n, p):
    a, b = n - p, p - m
    return mp.quad(lambda x: u(x) * kernel_fixed(x, m, a, b), [-1, 0, 1])


def capacity_arbitrary_quad(m, n):
    a = n - m
    return mp.quad(lambda x: u(x) * kernel_arbitrary(x, m, a), [0, 0.5, 1])


FIXED_SPECS = [
    (1, 1, 1), (1, 3, 2), (2, 3, 2), (2, 4, 3), (3, 4, 3), (3, 5, 4),
    (4, 6, 5), (2, 6, 3), (5, 9, 7), (6, 6, 6),
]
ARBITRARY_SPECS = [
    (1, 1), (1, 2), (2, 2), (2, 3), (2, 4), (3, 5), (4, 6), (3, 3),
]


def print_capacities():
    anchor = mp.pi ** 2 / 18 - mp.mpf(1) / 3
    v111 = capacity_fixed_quad(1, 1, 1)
    assert abs(v111 - anchor) < mp.mpf("1e-30"), (v111, anchor)
    a11 = capacity_arbitrary_quad(1, 1)
    assert abs(a11 - anchor) < mp.mpf("1e-30"), (a11, anchor)
    print("// pi^2/18 - 1/3 =", r(anchor))
    print("// pi^2/15 - 1/2 =", r(mp.pi ** 2 / 15 - mp.mpf(1) / 2))
    print("// 2 pi^2/21 - 1/2 =", r(2 * mp.pi ** 2 / 21 - mp.mpf(1) / 2))
    print("// pi^2/8 - 1 =", r(mp.pi ** 2 / 8 - 1))
    print("// u(1/2) = (3/16) ln^2 3 =", r(mp.mpf(3) / 16 * mp.log(3) ** 2))
    print("// --- paste into exact-capacity tests ---")
    print("const FIXED_QUAD_REFS: &[(u32, u32, u32, f64)] = &[")
    for m, n, p in FIXED_SPECS:
        v = capacity_fixed_quad(m, n, p)
        print(f"    ({m}, {n}, {p}, {r(v)}),")
    print("];")
    print("const ARBITRARY_QUAD_REFS: &[(u32, u32, f64)] = &[")
    for m, n in ARBITRARY_SPECS:
        v = capacity_arbitrary_quad(m, n)
        print(f"    ({m}, {n}, {r(v)}),")
    print("];")


# ------------------------------------------------------------- exact phi

def phi_rational(c, d):
    total = Fraction(0)
    for k in range(1, c + 1):
        term = Fraction(1, k * k)
        # (c+d-k)! / (c-k)!
        prod = 1
        for t in range(c - k + 1, c + d - k + 1):
            prod *= t
        total += term * prod
    # c! / (c+d)!
    denom = 1
    for t in range(c + 1, c + d + 1):
        denom *= t
    return total / denom


def print_phi():
    print("// --- paste into phi tests ---")
    for c, d in [(1, 0), (1, 1), (2, 1), (3, 2), (1, 2), (5, 3), (12, 7)]:
        v = phi_rational(c, d)
        print(f"// phi({c},{d}) = {v.numerator}/{v.denominator}")
    f = phi_rational(30, 7)
    print("// phi(30,7) as float =", r(mp.mpf(f.numerator) / f.denominator))


def print_gamma_q():
    print("// --- paste into GAMMA_Q_REFS (tests/statistical.rs) ---")
    pairs = [
        (0.5, 1.2),
        (15, 9.3),
        (19.5, 30.25),
        (9.5, 12.5),
        (1, 0.7),
        (40, 55.5),
        (3.5, 0.25),
    ]
    for a, x in pairs:
        q = mp.gammainc(mp.mpf(a), mp.mpf(x), mp.inf, regularized=True)
        print(f"// Q({a}, {x}) = {r(q)}")


if __name__ == "__main__":
    print_special()
    print_capacities()
    print_phi()
    print_gamma_q()
