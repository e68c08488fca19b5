#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "fanocm/family.hpp"
#include "fanocm/intersect.hpp"
#include "oracles.hpp"

using namespace fanocm;

namespace {

FamilyDescriptor negative_degree() {
    return FamilyDescriptor(0, {-2, 1, 1}, {BlowupCenter::summand(1)});
}
FamilyDescriptor not_nef() {
    return FamilyDescriptor(0, {2, -1, -1},
                            {BlowupCenter::summand(1), BlowupCenter::summand(2),
                             BlowupCenter::summand(3)});
}

}  // namespace

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS(FamilyDescriptor(0, {1}, {}), validation_error);
    CHECK_THROWS_AS(FamilyDescriptor(0, {0, 0, 0}, {BlowupCenter::summand(4)}), validation_error);
    CHECK_THROWS_AS(
        FamilyDescriptor(0, {0, 0, 0}, {BlowupCenter::summand(1), BlowupCenter::summand(1)}),
        validation_error);
    // centers are codimension-2 sections, so they need rank >= 3
    CHECK_THROWS_AS(FamilyDescriptor(0, {0, 0}, {BlowupCenter::summand(1)}), validation_error);
}

TEST_CASE("descriptor JSON round trip and parse errors") {
    FamilyDescriptor fam = not_nef();
    FamilyDescriptor back = FamilyDescriptor::parse(fam.to_json().dump());
    CHECK(back.twists() == fam.twists());
    CHECK(back.centers().size() == fam.centers().size());
    CHECK(back.hash() == fam.hash());

    CHECK_THROWS_AS(FamilyDescriptor::parse("{not json"), validation_error);
    CHECK_THROWS_AS(FamilyDescriptor::parse(R"({"twists":[0,0]})"), validation_error);
    CHECK_THROWS_AS(
        FamilyDescriptor::parse(R"({"base":{"genus":0},"twists":[0,0],"centers":[{"type":"x"}]})"),
        validation_error);
}

TEST_CASE("center derived data") {
    FamilyDescriptor fam = negative_degree();
    CHECK(fam.center_xi_degree(0) == -2);         // xi . C = a_1
    CHECK(fam.center_normal_degree(0) == -6);     // r a_1 - deg V = 3(-2) - 0
    CHECK(fam.center_conormal_degree(0) == 6);    // deg W = O(3) + O(3)

    FamilyDescriptor nn = not_nef();
    CHECK(nn.center_conormal_degree(0) == -6);
    CHECK(nn.center_conormal_degree(1) == 3);
    CHECK(nn.center_conormal_degree(2) == 3);
}

TEST_CASE("anticanonical class") {
    SECTION("one summand center, deg V = 0") {
        DivisorClass k = anticanonical_class(negative_degree());
        CHECK(k.xi == 3);
        CHECK(k.f == 0);
        REQUIRE(k.e.size() == 1);
        CHECK(k.e[0] == 1);
    }
    SECTION("three summand centers") {
        DivisorClass k = anticanonical_class(not_nef());
        CHECK(k.xi == 3);
        CHECK(k.f == 0);
        CHECK(k.e == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});
    }
    SECTION("P1 x P1") {
        DivisorClass k = anticanonical_class(FamilyDescriptor(0, {0, 0}, {}));
        CHECK(k.xi == 2);
        CHECK(k.f == 0);
        CHECK(k.e.empty());
    }
}

TEST_CASE("anticanonical class is invariant under permuting twists with their centers") {
    FamilyDescriptor a(0, {-2, 1, 1}, {BlowupCenter::summand(1)});
    FamilyDescriptor b(0, {1, 1, -2}, {BlowupCenter::summand(3)});
    DivisorClass ka = anticanonical_class(a), kb = anticanonical_class(b);
    CHECK(ka.xi == kb.xi);
    CHECK(ka.f == kb.f);
    CHECK(ka.e == kb.e);
    CHECK(cm_degree(a) == cm_degree(b));
}

TEST_CASE("pullback cover") {
    SECTION("identity cover") {
        FamilyDescriptor fam = negative_degree();
        FamilyDescriptor same = pullback_cover(fam, 1);
        CHECK(same.twists() == fam.twists());
    }
    SECTION("twists scale with the cover") {
        CHECK(pullback_cover(negative_degree(), 2).twists() ==
              std::vector<long>{-4, 2, 2});
        CHECK(pullback_cover(not_nef(), 3).twists() == std::vector<long>{6, -3, -3});
    }
    SECTION("curve center degrees scale") {
        FamilyDescriptor graph(0, {0, 0, 0}, {BlowupCenter::curve(2, 6)});
        FamilyDescriptor cover = pullback_cover(graph, 4);
        CHECK(cover.centers()[0].xi_degree == 8);
        CHECK(cover.centers()[0].normal_degree == 24);
    }
    CHECK_THROWS_AS(pullback_cover(negative_degree(), 0), validation_error);
}

TEST_CASE("cm degree scales linearly under base change covers") {
    std::vector<FamilyDescriptor> fams = {
        negative_degree(), not_nef(),
        FamilyDescriptor(0, {2, -1, -1}, {BlowupCenter::summand(1)}),
        FamilyDescriptor(0, {0, 0, 0},
                         {BlowupCenter::curve(2, 6), BlowupCenter::curve(0, 0),
                          BlowupCenter::curve(0, 0), BlowupCenter::curve(0, 0),
                          BlowupCenter::curve(0, 0)})};
    for (const auto& fam : fams) {
        const Rational base = cm_degree(fam);
        for (unsigned e = 1; e <= 5; ++e)
            CHECK(cm_degree(pullback_cover(fam, e)) == Rational(static_cast<long>(e)) * base);
    }
}
