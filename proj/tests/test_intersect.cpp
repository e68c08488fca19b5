#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "fanocm/intersect.hpp"
#include "oracles.hpp"

using namespace fanocm;

namespace {

FamilyDescriptor negative_degree() {
    return FamilyDescriptor(0, {-2, 1, 1}, {BlowupCenter::summand(1)});
}
FamilyDescriptor positive_and_big() {
    return FamilyDescriptor(0, {2, -1, -1}, {BlowupCenter::summand(1)});
}
FamilyDescriptor not_nef() {
    return FamilyDescriptor(0, {2, -1, -1},
                            {BlowupCenter::summand(1), BlowupCenter::summand(2),
                             BlowupCenter::summand(3)});
}
FamilyDescriptor graph_family(long d) {
    return FamilyDescriptor(0, {0, 0, 0},
                            {BlowupCenter::curve(d, 3 * d), BlowupCenter::curve(0, 0),
                             BlowupCenter::curve(0, 0), BlowupCenter::curve(0, 0),
                             BlowupCenter::curve(0, 0)});
}

}  // namespace

TEST_CASE("top intersection ledger values") {
    FamilyDescriptor fam = negative_degree();
    DivisorClass o3 = DivisorClass::pullback_xi(fam, Rational(3));
    DivisorClass e = DivisorClass::exceptional(fam, 0);

    CHECK(top_intersection(fam, {o3, e, e}) == 6);
    CHECK(top_intersection(fam, {e, e, e}) == 6);
    DivisorClass f = DivisorClass::fiber(fam);
    CHECK(top_intersection(fam, {f, f, o3}) == 0);
    CHECK(top_intersection(fam, {f, f, e}) == 0);

    FamilyDescriptor nn = not_nef();
    DivisorClass e1 = DivisorClass::exceptional(nn, 0);
    DivisorClass e2 = DivisorClass::exceptional(nn, 1);
    DivisorClass e3 = DivisorClass::exceptional(nn, 2);
    CHECK(top_intersection(nn, {e1, e1, e1}) == -6);
    CHECK(top_intersection(nn, {e2, e2, e2}) == 3);
    CHECK(top_intersection(nn, {e3, e3, e3}) == 3);
    DivisorClass o3n = DivisorClass::pullback_xi(nn, Rational(3));
    CHECK(top_intersection(nn, {o3n, e1, e1}) == -6);
    CHECK(top_intersection(nn, {o3n, e2, e2}) == 3);
    // mixed exceptional divisors vanish
    CHECK(top_intersection(nn, {e1, e2, e3}) == 0);
    CHECK(top_intersection(nn, {o3n, e1, e2}) == 0);
}

TEST_CASE("fiber times exceptional square") {
    // pi^*f . E_j^2 = f . (-C_j) = -1 for any section center
    FamilyDescriptor fam = negative_degree();
    DivisorClass f = DivisorClass::fiber(fam);
    DivisorClass e = DivisorClass::exceptional(fam, 0);
    CHECK(top_intersection(fam, {f, e, e}) == -1);

    FamilyDescriptor graph = graph_family(3);
    DivisorClass fg = DivisorClass::fiber(graph);
    for (std::size_t j = 0; j < graph.centers().size(); ++j) {
        DivisorClass eg = DivisorClass::exceptional(graph, j);
        CHECK(top_intersection(graph, {fg, eg, eg}) == -1);
    }
}

TEST_CASE("curve-center intersection data") {
    FamilyDescriptor graph = graph_family(2);
    DivisorClass h = DivisorClass::pullback_xi(graph, Rational(1));
    // the graph center: xi.C = d, deg N = 3d, so E^3 = -3d and xi.E^2 = -d
    DivisorClass eg = DivisorClass::exceptional(graph, 0);
    CHECK(top_intersection(graph, {eg, eg, eg}) == -6);
    CHECK(top_intersection(graph, {h, eg, eg}) == -2);
    // constant sections: xi.C = 0, deg N = 0
    DivisorClass e1 = DivisorClass::exceptional(graph, 1);
    CHECK(top_intersection(graph, {e1, e1, e1}) == 0);
    CHECK(top_intersection(graph, {h, e1, e1}) == 0);
    CHECK(top_intersection(graph, {h, h, h}) == 0);  // deg V = 0
}

TEST_CASE("top intersection arity errors") {
    FamilyDescriptor fam = negative_degree();
    DivisorClass e = DivisorClass::exceptional(fam, 0);
    CHECK_THROWS_AS(top_intersection(fam, {e, e}), validation_error);
    DivisorClass wrong(Rational(1), Rational(0), {});
    CHECK_THROWS_AS(top_intersection(fam, {wrong, e, e}), validation_error);
}

TEST_CASE("E^3 and xi.E^2 reproduce the conormal data on summand centers") {
    for (const auto& fam : {negative_degree(), positive_and_big(), not_nef()}) {
        for (std::size_t j = 0; j < fam.centers().size(); ++j) {
            DivisorClass e = DivisorClass::exceptional(fam, j);
            DivisorClass xi = DivisorClass::pullback_xi(fam, Rational(1));
            CHECK(top_intersection(fam, {e, e, e}) == Rational(fam.center_conormal_degree(j)));
            CHECK(top_intersection(fam, {xi, e, e}) == Rational(-fam.center_xi_degree(j)));
        }
    }
}

TEST_CASE("top intersection is symmetric and multilinear") {
    auto gen = oracles::rng(5150);
    FamilyDescriptor fam = not_nef();
    auto random_class = [&]() {
        return DivisorClass(oracles::random_rational(gen), oracles::random_rational(gen),
                            {oracles::random_rational(gen), oracles::random_rational(gen),
                             oracles::random_rational(gen)});
    };
    for (int trial = 0; trial < 20; ++trial) {
        DivisorClass a = random_class(), b = random_class(), c = random_class();
        Rational abc = top_intersection(fam, {a, b, c});
        CHECK(abc == top_intersection(fam, {b, a, c}));
        CHECK(abc == top_intersection(fam, {c, b, a}));
        // linearity in the first slot
        Rational s = oracles::random_rational(gen);
        DivisorClass d = random_class();
        Rational lhs = top_intersection(fam, {a * s + d, b, c});
        CHECK(lhs == s * abc + top_intersection(fam, {d, b, c}));
    }
}

TEST_CASE("cm degree on the bundled families") {
    CHECK(cm_degree(negative_degree()) == -12);
    CHECK(cm_degree(positive_and_big()) == 12);
    CHECK(cm_degree(not_nef()) == 0);
    for (long d = 1; d <= 4; ++d) CHECK(cm_degree(graph_family(d)) == 6 * d);
}

TEST_CASE("cm degree vanishes on every center-free family") {
    // all twist multisets with r <= 5, |a_i| <= 5 (the value is symmetric)
    long checked = 0;
    for (std::size_t r = 2; r <= 5; ++r) {
        std::vector<long> a(r, 0);
        auto enumerate = [&](auto&& self, std::size_t pos, long lo) -> void {
            if (pos == r) {
                FamilyDescriptor fam(0, a, {});
                REQUIRE(cm_degree(fam) == 0);
                ++checked;
                return;
            }
            for (long v = lo; v <= 5; ++v) {
                a[pos] = v;
                self(self, pos + 1, v);
            }
        };
        enumerate(enumerate, 0, -5);
    }
    CHECK(checked > 3000);
}

TEST_CASE("cm degree ledger sums to the expansion") {
    for (const auto& fam : {negative_degree(), positive_and_big(), not_nef(), graph_family(2)}) {
        auto rows = cm_degree_ledger(fam);
        Rational total(0);
        for (const auto& row : rows) total += row.contribution;
        CHECK(-total == cm_degree(fam));
    }
}

TEST_CASE("fiber intersection numbers") {
    SECTION("dP6 fiber") {
        FamilyDescriptor fam = not_nef();
        DivisorClass mk = anticanonical_class(fam);
        std::vector<DivisorClass> sq(2, mk);
        CHECK(fiber_intersection(fam, sq) == 6);  // classical degree of dP6
    }
    SECTION("P2 fiber") {
        FamilyDescriptor fam(0, {0, 0, 0}, {});
        DivisorClass h = DivisorClass::pullback_xi(fam, Rational(1));
        CHECK(fiber_intersection(fam, {h, h}) == 1);
    }
    SECTION("dP8 fiber") {
        FamilyDescriptor fam = negative_degree();
        DivisorClass mk = anticanonical_class(fam);
        CHECK(fiber_intersection(fam, {mk, mk}) == 8);
    }
    SECTION("arity") {
        FamilyDescriptor fam = negative_degree();
        DivisorClass mk = anticanonical_class(fam);
        CHECK_THROWS_AS(fiber_intersection(fam, {mk, mk, mk}), validation_error);
    }
}

TEST_CASE("nef test") {
    FamilyDescriptor nn = not_nef();
    DivisorClass mk = anticanonical_class(nn);

    SECTION("the anticanonical class is not nef, witnessed on E_2") {
        NefCertificate cert = nef_test(nn, mk);
        REQUIRE(cert.verdict == NefCertificate::Verdict::not_nef);
        REQUIRE(cert.witness.has_value());
        CHECK(cert.witness->value == -3);
        CHECK(cert.witness->description == "(class|_E2)^2");
        CHECK(cert.restriction_squares_checked);
    }
    SECTION("adding multiples of the trivial f^*lambda does not change the verdict") {
        // deg lambda = 0 here, so -K + a f^*lambda = -K for every a
        for (long a : {-5L, -1L, 0L, 1L, 5L}) {
            DivisorClass cls = mk + DivisorClass::fiber(nn) * (Rational(a) * cm_degree(nn));
            NefCertificate cert = nef_test(nn, cls);
            REQUIRE(cert.verdict == NefCertificate::Verdict::not_nef);
            CHECK(cert.witness->value == -3);
        }
    }
    SECTION("small fiber twists keep the same witness") {
        for (Rational a : {Rational(-2), Rational(-1), Rational(0), Rational(1)}) {
            DivisorClass cls = mk + DivisorClass::fiber(nn) * a;
            NefCertificate cert = nef_test(nn, cls);
            REQUIRE(cert.verdict == NefCertificate::Verdict::not_nef);
            CHECK(cert.witness->value == Rational(2) * a - 3);
        }
    }
    SECTION("the fiber class passes") {
        NefCertificate cert = nef_test(nn, DivisorClass::fiber(nn));
        CHECK(cert.verdict == NefCertificate::Verdict::passes_test_set);
        CHECK_FALSE(cert.witness.has_value());
    }
    SECTION("the exceptional divisor itself fails on its ruling") {
        // E_2 pairs to -1 with its own ruling; e_2 = -1 in the sign convention
        NefCertificate cert = nef_test(nn, DivisorClass::exceptional(nn, 1));
        REQUIRE(cert.verdict == NefCertificate::Verdict::not_nef);
        CHECK(cert.witness->description == "ruling of E2");
        CHECK(cert.witness->value == -1);
    }
    SECTION("r != 3 reports a partial certificate") {
        FamilyDescriptor p1xp1(0, {0, 0}, {});
        NefCertificate cert = nef_test(p1xp1, anticanonical_class(p1xp1));
        CHECK_FALSE(cert.restriction_squares_checked);
        CHECK(cert.verdict == NefCertificate::Verdict::passes_test_set);
    }
}
