#include <catch2/catch_amalgamated.hpp>

#include "fanocm/delta.hpp"
#include "oracles.hpp"

using namespace fanocm;

TEST_CASE("s_q closed values") {
    SECTION("(P^1, O(2)), point, any q") {
        PolarizedModel m(1, Rational(2));
        for (long q = 1; q <= 10; ++q) CHECK(s_q(m, ValuationModel::point_blowup(), q) == 1);
    }
    SECTION("(P^1, O(d)), point -> d/2") {
        for (long d = 1; d <= 6; ++d) {
            PolarizedModel m(1, Rational(d));
            CHECK(s_q(m, ValuationModel::point_blowup(), 3) == make_rational(d, 2));
        }
    }
    SECTION("(P^n, O(d)), hyperplane, q = 1 -> binomial sum") {
        for (unsigned n = 1; n <= 4; ++n) {
            for (long d = 1; d <= 5; ++d) {
                PolarizedModel m(n, Rational(d));
                Integer sum = 0;
                for (long i = 1; i <= d; ++i)
                    sum += binomial(static_cast<unsigned long>(n + d - i), n);
                Rational expected =
                    Rational(sum) / Rational(binomial(static_cast<unsigned long>(n + d), n));
                CHECK(s_q(m, ValuationModel::hyperplane(), 1) == expected);
            }
        }
    }
    SECTION("monomial basis oracle at q <= 3") {
        for (long q = 1; q <= 3; ++q) {
            CHECK(s_q(PolarizedModel(1, Rational(2)), ValuationModel::point_blowup(), q) ==
                  oracles::monomial_basis_s_q(1, 2, q, true));
            CHECK(s_q(PolarizedModel(2, Rational(3)), ValuationModel::hyperplane(), q) ==
                  oracles::monomial_basis_s_q(2, 3, q, false));
            CHECK(s_q(PolarizedModel(2, Rational(3)), ValuationModel::point_blowup(), q) ==
                  oracles::monomial_basis_s_q(2, 3, q, true));
        }
    }
    SECTION("fractional polarization needs q d integral") {
        PolarizedModel m(2, Rational(3, 2));
        CHECK_THROWS_AS(s_q(m, ValuationModel::hyperplane(), 1), scaling_error);
        CHECK(s_q(m, ValuationModel::hyperplane(), 2) == Rational(1, 2));
    }
}

TEST_CASE("s_infinity closed values and convergence") {
    SECTION("anticanonical P^n") {
        for (unsigned n = 1; n <= 5; ++n) {
            PolarizedModel m = PolarizedModel::anticanonical(n);
            CHECK(s_infinity(m, ValuationModel::hyperplane()) == 1);
            CHECK(s_infinity(m, ValuationModel::point_blowup()) == Rational(static_cast<long>(n)));
        }
    }
    SECTION("s_q equals the limit for every q (both families are exact)") {
        for (unsigned n = 1; n <= 3; ++n) {
            for (long d = 1; d <= 4; ++d) {
                PolarizedModel m(n, Rational(d));
                for (long q = 1; q <= 200; q += (q < 8 ? 1 : 37)) {
                    CHECK(s_q(m, ValuationModel::hyperplane(), q) ==
                          s_infinity(m, ValuationModel::hyperplane()));
                    CHECK(s_q(m, ValuationModel::point_blowup(), q) ==
                          s_infinity(m, ValuationModel::point_blowup()));
                }
            }
        }
    }
}

TEST_CASE("ratio A over S") {
    SECTION("anticanonical P^n has ratio 1 for both valuations") {
        for (unsigned n = 1; n <= 4; ++n) {
            PolarizedModel m = PolarizedModel::anticanonical(n);
            CHECK(ratio_A_over_S(m, ValuationModel::hyperplane()) == 1);
            CHECK(ratio_A_over_S(m, ValuationModel::point_blowup()) == 1);
            CHECK(ratio_A_over_S(m, ValuationModel::hyperplane(), 5) == 1);
        }
    }
    SECTION("(P^1, O(d)), point -> 2/d") {
        for (long d = 1; d <= 5; ++d)
            CHECK(ratio_A_over_S(PolarizedModel(1, Rational(d)), ValuationModel::point_blowup()) ==
                  make_rational(2, d));
    }
}

TEST_CASE("delta_q on P^1") {
    SECTION("anticanonical degree 2 is K-semistable for all q") {
        for (long q = 1; q <= 50; ++q) CHECK(delta_q_p1(2, q) == 1);
    }
    SECTION("2/d and scaling") {
        for (long q = 1; q <= 10; ++q) CHECK(delta_q_p1(4, q) == Rational(1, 2));
        for (long d = 1; d <= 4; ++d)
            for (long r = 1; r <= 4; ++r)
                for (long q = 1; q <= 5; ++q)
                    CHECK(delta_q_p1(r * d, q) == delta_q_p1(d, q) / Rational(r));
    }
    SECTION("q-independence up to 50") {
        for (long d : {1L, 3L, 5L}) {
            Rational first = delta_q_p1(d, 1);
            for (long q = 2; q <= 50; ++q) CHECK(delta_q_p1(d, q) == first);
        }
    }
    SECTION("adapted-basis oracle at q <= 3") {
        // A basis of binary forms of degree N = qd is a matrix of coefficient
        // rows; the order of a form at [0:1] is the index of its first
        // nonzero coefficient. The basis adapted to that filtration (any
        // triangular matrix) maximizes the basis-divisor coefficient at the
        // point, giving sum(i)/(q h^0) = d/2; random bases stay below it.
        auto gen = oracles::rng(1618);
        for (long d = 1; d <= 4; ++d) {
            for (long q = 1; q <= 3; ++q) {
                const long N = q * d;
                auto divisor_coeff = [&](const std::vector<std::vector<Rational>>& basis) -> Rational {
                    Integer order_sum = 0;
                    for (const auto& row : basis) {
                        long ord = 0;
                        while (ord <= N && row[ord] == 0) ++ord;
                        REQUIRE(ord <= N);  // nonzero form
                        order_sum += ord;
                    }
                    return Rational(order_sum) / (Rational(q) * Rational(N + 1));
                };
                // adapted (triangular) basis with random nonzero pivots
                std::vector<std::vector<Rational>> adapted(N + 1,
                                                           std::vector<Rational>(N + 1, Rational(0)));
                for (long i = 0; i <= N; ++i) {
                    adapted[i][i] = Rational(1 + (gen() % 5));
                    for (long j = i + 1; j <= N; ++j) adapted[i][j] = oracles::random_rational(gen);
                }
                Rational smax = divisor_coeff(adapted);
                CHECK(smax == make_rational(d, 2));
                CHECK(delta_q_p1(d, q) == Rational(1) / smax);
                // random dense bases cannot exceed the adapted one
                for (int trial = 0; trial < 5; ++trial) {
                    std::vector<std::vector<Rational>> dense;
                    for (long i = 0; i <= N; ++i) {
                        std::vector<Rational> row;
                        bool nonzero = false;
                        for (long j = 0; j <= N; ++j) {
                            row.push_back(oracles::random_rational(gen));
                            nonzero = nonzero || row.back() != 0;
                        }
                        if (!nonzero) row[0] = 1;
                        dense.push_back(std::move(row));
                    }
                    CHECK(divisor_coeff(dense) <= smax);
                }
            }
        }
    }
}

TEST_CASE("s_q and its limit scale linearly in the polarization") {
    for (unsigned n = 1; n <= 3; ++n) {
        for (long d = 1; d <= 3; ++d) {
            for (long r = 2; r <= 4; ++r) {
                PolarizedModel base(n, Rational(d)), scaled(n, Rational(r * d));
                for (auto v : {ValuationModel::hyperplane(), ValuationModel::point_blowup()}) {
                    CHECK(s_infinity(scaled, v) == Rational(r) * s_infinity(base, v));
                    for (long q = 1; q <= 4; ++q)
                        CHECK(s_q(scaled, v, q) == Rational(r) * s_q(base, v, q));
                    // hence A/S scales by 1/r
                    CHECK(ratio_A_over_S(scaled, v) == ratio_A_over_S(base, v) / Rational(r));
                }
            }
        }
    }
}

TEST_CASE("pseudo-effective threshold and the S-T bounds") {
    for (unsigned n = 1; n <= 4; ++n) {
        for (long d = 1; d <= 4; ++d) {
            PolarizedModel m(n, Rational(d));
            for (long q = 1; q <= 5; ++q) {
                CHECK(pseff_threshold(m, ValuationModel::hyperplane(), q) == Rational(d));
                CHECK(pseff_threshold(m, ValuationModel::point_blowup(), q) == Rational(d));
            }
            for (auto v : {ValuationModel::hyperplane(), ValuationModel::point_blowup()}) {
                Rational s = s_infinity(m, v);
                Rational t = pseff_threshold(m, v, 1);
                CHECK(Rational(static_cast<long>(n)) / Rational(static_cast<long>(n) + 1) * t >= s);
                CHECK(s >= t / Rational(static_cast<long>(n) + 1));
            }
        }
    }
}

TEST_CASE("alpha delta sandwich") {
    SECTION("equality on P^1") {
        for (long d = 1; d <= 5; ++d) {
            BoundsReport r = alpha_delta_bounds_check(make_rational(1, d), make_rational(2, d), 1);
            CHECK(r.both());
            CHECK(r.lower_margin == 0);
            CHECK(r.upper_margin == 0);
        }
    }
    SECTION("violations are reported with margins") {
        BoundsReport r = alpha_delta_bounds_check(Rational(1, 2), Rational(2), 2);
        CHECK(r.lower_holds);
        CHECK_FALSE(r.upper_holds);
        CHECK(r.upper_margin == Rational(-1, 2));
    }
    SECTION("tight upper bound") {
        BoundsReport r = alpha_delta_bounds_check(Rational(1, 3), Rational(1), 2);
        CHECK(r.upper_holds);
        CHECK(r.upper_margin == 0);
    }
}

TEST_CASE("product lct bound") {
    CHECK(product_lct_bound({Rational(1), Rational(1)}) == 1);
    CHECK(product_lct_bound({Rational(2, 3), Rational(5, 4)}) == Rational(2, 3));
    CHECK(product_lct_bound(std::vector<Rational>(7, Rational(1))) == 1);
    CHECK_THROWS_AS(product_lct_bound(std::vector<Rational>{}), validation_error);
}

TEST_CASE("stability classification") {
    CHECK(classify_stability(Rational(1), std::nullopt, 2).classification ==
          StabilityVerdict::Class::K_semistable);
    CHECK(classify_stability(Rational(3, 2), std::nullopt, 2).classification ==
          StabilityVerdict::Class::uniformly_K_stable);
    for (long d = 3; d <= 6; ++d)
        CHECK(classify_stability(make_rational(2, d), std::nullopt, 1).classification ==
              StabilityVerdict::Class::not_K_semistable);
    CHECK(classify_stability(std::nullopt, Rational(3, 4), 2).classification ==
          StabilityVerdict::Class::uniformly_K_stable);
    CHECK(classify_stability(std::nullopt, Rational(2, 3), 2).classification ==
          StabilityVerdict::Class::K_semistable);
    CHECK(classify_stability(std::nullopt, Rational(1, 4), 2).classification ==
          StabilityVerdict::Class::not_K_semistable);
    CHECK(classify_stability(std::nullopt, Rational(1, 2), 2).classification ==
          StabilityVerdict::Class::inconclusive);
    CHECK_THROWS_AS(classify_stability(std::nullopt, std::nullopt, 2), validation_error);

    // an upper-bound ratio below 1 forces instability regardless of other valuations
    Rational ratio = ratio_A_over_S(PolarizedModel(1, Rational(4)), ValuationModel::point_blowup());
    CHECK(ratio < 1);
    CHECK(classify_stability(ratio, std::nullopt, 1).classification ==
          StabilityVerdict::Class::not_K_semistable);
}

TEST_CASE("nef threshold coefficient") {
    CHECK(nef_threshold_coefficient(Rational(2), Rational(6), 2) == Rational(1, 9));
    CHECK_THROWS_AS(nef_threshold_coefficient(Rational(1), Rational(6), 2), hypothesis_error);
    CHECK_THROWS_AS(nef_threshold_coefficient(Rational(1, 2), Rational(6), 2), hypothesis_error);

    // monotone limit towards 1/(v(n+1)) as delta grows
    Rational prev(0);
    bool first = true;
    for (long k = 1; k <= 6; ++k) {
        Rational delta = pow_rational(Rational(10), k);
        Rational c = nef_threshold_coefficient(delta, Rational(6), 2);
        CHECK(c > Rational(1, 18));
        if (!first) CHECK(c < prev);
        prev = c;
        first = false;
    }
}

TEST_CASE("volume bounds") {
    SECTION("sharp surface and threefold values") {
        VolumeBoundReport a = volume_bound_check(Rational(8), 2, Rational(2));
        CHECK(a.fiber_bound_holds);
        CHECK(a.fiber_margin == 0);
        CHECK(a.absolute_bound_holds);
        CHECK(a.absolute_margin == 0);

        VolumeBoundReport b = volume_bound_check(Rational(54), 3, Rational(9));
        CHECK(b.fiber_bound_holds);
        CHECK(b.fiber_margin == 0);
        CHECK(b.absolute_margin == 0);
    }
    SECTION("violation") {
        VolumeBoundReport r = volume_bound_check(Rational(55), 3, Rational(9));
        CHECK_FALSE(r.fiber_bound_holds);
        CHECK(r.fiber_margin == -1);
    }
}
