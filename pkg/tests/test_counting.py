from fractions import Fraction

import numpy as np
import pytest
from conftest import brute_points

from ffprog import (
    CharTooSmall,
    CountReport,
    DegreeTooSmall,
    FiberDistribution,
    GridFunction,
    Inadmissible,
    NotMeanZero,
    SubsetSpec,
    balance,
    count_progressions,
    decomposition_residual,
    expander_image,
    field_new,
    indicator,
    l2_norm,
    lambda2,
    lambda3,
    lambda_prime,
    main_theorem_ratio,
    parse_poly,
    prop22_sides,
    random_subset,
)

Y = parse_poly("y")
Y2 = parse_poly("y^2")
Y3 = parse_poly("y^3")


def rand_fn(field, seed):
    rng = np.random.default_rng(seed)
    return GridFunction(field, rng.normal(size=field.p))


# --- exact counts ------------------------------------------------------------


def test_count_full_sets():
    f = field_new(7)
    full = SubsetSpec.full(f)
    rep = count_progressions(full, full, full, Y, Y2, f)
    assert rep.exact_count == 49
    assert rep.expected == Fraction(343, 7)
    assert rep.error == 0


def test_count_empty_c():
    f = field_new(7)
    full = SubsetSpec.full(f)
    rep = count_progressions(full, full, SubsetSpec.empty(f), Y, Y2, f)
    assert rep.exact_count == 0


def test_count_singletons_p5():
    f = field_new(5)
    z = SubsetSpec.from_members(f, [0])
    rep = count_progressions(z, z, z, Y, Y2, f)
    assert rep.exact_count == 1
    assert rep.expected == Fraction(1, 5)
    assert rep.error == Fraction(4, 5)


def test_count_error_is_exact_rational():
    f = field_new(11)
    a = SubsetSpec.from_members(f, [0, 1, 2])
    b = SubsetSpec.from_members(f, [3, 4])
    c = SubsetSpec.full(f)
    rep = count_progressions(a, b, c, Y, Y2, f)
    assert rep.error == abs(Fraction(rep.exact_count) - Fraction(3 * 2 * 11, 11))
    assert rep.bound == pytest.approx(
        (3 * 2 * 11) ** 0.5 * 11 ** (0.5 - 1 / 16), rel=1e-12
    )


def test_count_gates():
    f3 = field_new(3)
    full = SubsetSpec.full(f3)
    with pytest.raises(CharTooSmall):
        count_progressions(full, full, full, Y2, Y3, f3)
    f7 = field_new(7)
    full7 = SubsetSpec.full(f7)
    with pytest.raises(Inadmissible):
        count_progressions(full7, full7, full7, Y, parse_poly("2*y"), f7)


# --- averaged forms ----------------------------------------------------------


def test_lambda3_constants():
    f = field_new(7)
    one = GridFunction(f, np.ones(7))
    zero = GridFunction(f, np.zeros(7))
    assert lambda3(one, one, one, Y, Y2, f) == pytest.approx(1.0, abs=1e-12)
    assert lambda3(one, one, zero, Y, Y2, f) == 0.0


def test_lambda3_matches_count_and_brute_force():
    f = field_new(5)
    s = SubsetSpec.from_members(f, [0, 1])
    ind = indicator(s)
    val = lambda3(ind, ind, ind, Y, Y2, f)
    rep = count_progressions(s, s, s, Y, Y2, f)
    assert val == pytest.approx(rep.exact_count / 25, abs=1e-12)
    # independent 25-term double loop
    member = set(s.members)
    brute = sum(
        1
        for x in range(5)
        for y in range(5)
        if x in member and (x + y) % 5 in member and (x + y * y) % 5 in member
    )
    assert rep.exact_count == brute


def test_lambda3_count_identity_random_sweep(standard_pairs):
    for p in (5, 7, 11):
        f = field_new(p)
        for pair in standard_pairs.values():
            if pair.min_char > p:
                continue
            for seed in range(50):
                rng = np.random.default_rng(seed)
                sets = [
                    SubsetSpec.from_members(f, np.flatnonzero(rng.random(p) < 0.5))
                    for _ in range(3)
                ]
                rep = count_progressions(*sets, pair.p1, pair.p2, f)
                lam = lambda3(*(indicator(s) for s in sets), pair.p1, pair.p2, f)
                assert abs(lam * p * p - rep.exact_count) < 1e-6


def test_lambda2_constants_and_linear_shift():
    f = field_new(11)
    one = GridFunction(f, np.ones(11))
    assert lambda2(one, one, Y2, f) == pytest.approx(1.0, abs=1e-12)
    fb = balance(random_subset(f, 0.5, seed=3))
    # P1 = y shifts uniformly, so the mean-zero factor kills the average
    assert abs(lambda2(one, fb, Y, f)) < 1e-12


def test_lambda2_matches_brute_force():
    f = field_new(7)
    f0, f1 = rand_fn(f, 10), rand_fn(f, 11)
    want = sum(
        f0.values[x] * f1.values[(x + y * y) % 7] for x in range(7) for y in range(7)
    ) / 49
    assert lambda2(f0, f1, Y2, f) == pytest.approx(want, rel=1e-12)


def test_lambda2_weil_flavored_bound(standard_pairs):
    f = field_new(31)
    for seed in range(10):
        f0 = rand_fn(f, 100 + seed)
        fb = balance(random_subset(f, 0.4, seed=seed))
        for poly in (Y2, Y3):
            got = abs(lambda2(f0, fb, poly, f))
            cap = poly.degree * l2_norm(f0) * l2_norm(fb) * 31**-0.5
            assert got <= cap + 1e-9


# --- decomposition -----------------------------------------------------------


def test_decomposition_full_c():
    f = field_new(11)
    a = random_subset(f, 0.5, seed=1)
    b = random_subset(f, 0.5, seed=2)
    assert decomposition_residual(a, b, SubsetSpec.full(f), Y, Y2, f) < 1e-10


def test_decomposition_empty_a():
    f = field_new(11)
    b = random_subset(f, 0.5, seed=2)
    c = random_subset(f, 0.5, seed=3)
    assert decomposition_residual(SubsetSpec.empty(f), b, c, Y, Y2, f) == 0.0


def test_decomposition_random_halves(standard_pairs):
    f = field_new(31)
    for pair in standard_pairs.values():
        for seed in range(5):
            a = random_subset(f, 0.5, seed=3 * seed)
            b = random_subset(f, 0.5, seed=3 * seed + 1)
            c = random_subset(f, 0.5, seed=3 * seed + 2)
            assert decomposition_residual(a, b, c, pair.p1, pair.p2, f) < 1e-10


# --- variety-averaged correlation ---------------------------------------------


def test_lambda_prime_constants(standard_pairs, fibers_cache):
    pair = standard_pairs["y,y^2"]
    fibers = fibers_cache(pair, 7)
    f = field_new(7)
    one = GridFunction(f, np.ones(7))
    assert lambda_prime(one, one, fibers) == pytest.approx(1.0, abs=1e-12)


def test_lambda_prime_uniform_fibers_kill_mean_zero(standard_pairs):
    pair = standard_pairs["y,y^2"]
    f = field_new(5)
    uniform = FiberDistribution.from_histogram(
        f, pair, np.full(5, 5**3, dtype=np.int64)
    )
    f0 = rand_fn(f, 20)
    fb = balance(random_subset(f, 0.6, seed=21))
    assert abs(lambda_prime(f0, fb, uniform)) < 1e-12


def test_lambda_prime_matches_naive_oracle(standard_pairs, fibers_cache):
    pair = standard_pairs["y,y^2"]
    p = 3
    vq = brute_points(pair, p)
    f = field_new(p)
    f0, f1 = rand_fn(f, 30), rand_fn(f, 31)
    direct = sum(
        f0.values[x] * f1.values[(x + q) % p] for q in vq.values() for x in range(p)
    ) / (p * len(vq))
    got = lambda_prime(f0, f1, fibers_cache(pair, p))
    assert got == pytest.approx(direct, rel=1e-12)


def test_lambda_prime_field_mismatch(standard_pairs, fibers_cache):
    pair = standard_pairs["y,y^2"]
    fibers = fibers_cache(pair, 7)
    f11 = field_new(11)
    with pytest.raises(ValueError):
        lambda_prime(GridFunction(f11, np.ones(11)), GridFunction(f11, np.ones(11)), fibers)


# --- the degree-lowering inequality --------------------------------------------


def test_prop22_constant_functions(standard_pairs, fibers_cache):
    pair = standard_pairs["y,y^2"]
    fibers = fibers_cache(pair, 7)
    f = field_new(7)
    one = GridFunction(f, np.ones(7))
    zero = GridFunction(f, np.zeros(7))
    lhs, rhs = prop22_sides(one, one, one, pair, fibers)
    assert lhs == pytest.approx(1.0, abs=1e-12)
    assert rhs == pytest.approx(fibers.v_size / 7**4, rel=1e-12)
    assert rhs >= 1.0
    lhs0, rhs0 = prop22_sides(one, one, zero, pair, fibers)
    assert lhs0 == 0.0
    assert rhs0 == 0.0


def test_prop22_inequality_random(standard_pairs, fibers_cache):
    f = field_new(31)
    for pair in standard_pairs.values():
        fibers = fibers_cache(pair, 31)
        for seed in range(8):
            f0 = balance(random_subset(f, 0.5, seed=50 + seed))
            f1 = balance(random_subset(f, 0.45, seed=150 + seed))
            f2 = balance(random_subset(f, 0.55, seed=250 + seed))
            lhs, rhs = prop22_sides(f0, f1, f2, pair, fibers)
            assert lhs <= rhs + 1e-9, (pair.key(), seed)


# --- main bound ratio -----------------------------------------------------------


def test_main_theorem_ratio_finite(standard_pairs, fibers_cache):
    pair = standard_pairs["y,y^2"]
    f = field_new(31)
    f0 = indicator(random_subset(f, 0.5, seed=60))
    f1 = indicator(random_subset(f, 0.5, seed=61))
    f2 = balance(random_subset(f, 0.5, seed=62))
    ratio = main_theorem_ratio(f0, f1, f2, pair, fibers_cache(pair, 31))
    assert np.isfinite(ratio)
    assert ratio >= 0.0


def test_main_theorem_ratio_zero_function(standard_pairs):
    pair = standard_pairs["y,y^2"]
    f = field_new(7)
    zero = GridFunction(f, np.zeros(7))
    f1 = GridFunction(f, np.ones(7))
    f2 = balance(random_subset(f, 0.5, seed=1))
    assert main_theorem_ratio(zero, f1, f2, pair) == 0.0


def test_main_theorem_ratio_requires_mean_zero(standard_pairs):
    pair = standard_pairs["y,y^2"]
    f = field_new(7)
    one = GridFunction(f, np.ones(7))
    with pytest.raises(NotMeanZero):
        main_theorem_ratio(one, one, one, pair)


# --- expander image --------------------------------------------------------------


def test_expander_full_sets():
    f = field_new(13)
    full = SubsetSpec.full(f)
    assert expander_image(full, full, Y2, f) == 13


def test_expander_singletons():
    f = field_new(13)
    z = SubsetSpec.from_members(f, [0])
    assert expander_image(z, z, Y2, f) == 1


def test_expander_degree_gate():
    f = field_new(13)
    full = SubsetSpec.full(f)
    with pytest.raises(DegreeTooSmall):
        expander_image(full, full, Y, f)


def test_expander_matches_brute_force():
    f = field_new(31)
    a = random_subset(f, 0.9, seed=70)
    b = random_subset(f, 0.9, seed=71)
    want = len({(u + (v - u) ** 2) % 31 for u in a.members for v in b.members})
    assert expander_image(a, b, Y2, f) == want


def test_expander_empty_input():
    f = field_new(13)
    assert expander_image(SubsetSpec.empty(f), SubsetSpec.full(f), Y2, f) == 0
