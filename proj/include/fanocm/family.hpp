#pragma once

// Data model for the families the toolkit computes on:
//
//   X = Bl_{C_1,...,C_k} P(V) --> T,   T a smooth curve, V = O(a_1) + ... + O(a_r).
//
// P(V) is the bundle of rank-one *quotients*: O_Y(1) restricts to O(a_j) on
// the section cut out by the quotient V ->> O(a_j), and the top power of the
// relative hyperplane class is xi^r = deg V (pinned by h^0(P(V), O(m)) =
// h^0(Sym^m V)). Centers are disjoint sections of Y -> T, either coordinate
// (summand) sections or general sections given by their intersection data.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fanocm/errors.hpp"
#include "fanocm/numeric.hpp"

namespace fanocm {

struct BlowupCenter {
    enum class Kind { summand, curve };

    Kind kind = Kind::summand;
    int summand_index = 0;   // 1-based index into the twists, Kind::summand only
    long xi_degree = 0;      // xi . C, Kind::curve only
    long normal_degree = 0;  // deg N_{C/Y}, Kind::curve only

    static BlowupCenter summand(int index) {
        BlowupCenter c;
        c.kind = Kind::summand;
        c.summand_index = index;
        return c;
    }
    static BlowupCenter curve(long xi_deg, long normal_deg) {
        BlowupCenter c;
        c.kind = Kind::curve;
        c.xi_degree = xi_deg;
        c.normal_degree = normal_deg;
        return c;
    }
};

class FamilyDescriptor {
  public:
    FamilyDescriptor(unsigned genus, std::vector<long> twists,
                     std::vector<BlowupCenter> centers)
        : genus_(genus), twists_(std::move(twists)), centers_(std::move(centers)) {
        validate();
    }

    unsigned base_genus() const { return genus_; }
    const std::vector<long>& twists() const { return twists_; }
    const std::vector<BlowupCenter>& centers() const { return centers_; }

    /// rank of V
    std::size_t rank() const { return twists_.size(); }
    /// fiber dimension n = r - 1
    std::size_t fiber_dim() const { return rank() - 1; }

    long deg_v() const {
        long s = 0;
        for (long a : twists_) s += a;
        return s;
    }

    /// xi . C_j for center j (0-based).
    long center_xi_degree(std::size_t j) const {
        const BlowupCenter& c = centers_.at(j);
        return c.kind == BlowupCenter::Kind::summand ? twists_[c.summand_index - 1]
                                                     : c.xi_degree;
    }

    /// deg N_{C_j/Y}; for a summand center this is r*a_j - deg V.
    long center_normal_degree(std::size_t j) const {
        const BlowupCenter& c = centers_.at(j);
        if (c.kind == BlowupCenter::Kind::curve) return c.normal_degree;
        return static_cast<long>(rank()) * twists_[c.summand_index - 1] - deg_v();
    }

    /// deg W_j of the projectivized conormal bundle E_j = P(W_j); equals -deg N.
    long center_conormal_degree(std::size_t j) const { return -center_normal_degree(j); }

    bool has_curve_center() const {
        return std::any_of(centers_.begin(), centers_.end(), [](const BlowupCenter& c) {
            return c.kind == BlowupCenter::Kind::curve;
        });
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["base"] = {{"genus", genus_}};
        j["twists"] = twists_;
        j["centers"] = nlohmann::ordered_json::array();
        for (const auto& c : centers_) {
            if (c.kind == BlowupCenter::Kind::summand)
                j["centers"].push_back({{"type", "summand"}, {"index", c.summand_index}});
            else
                j["centers"].push_back({{"type", "curve"},
                                        {"xi_degree", c.xi_degree},
                                        {"normal_degree", c.normal_degree}});
        }
        return j;
    }

    static FamilyDescriptor from_json(const nlohmann::json& j) {
        try {
            unsigned genus = j.at("base").at("genus").get<unsigned>();
            std::vector<long> twists = j.at("twists").get<std::vector<long>>();
            std::vector<BlowupCenter> centers;
            for (const auto& cj : j.value("centers", nlohmann::json::array())) {
                std::string type = cj.at("type").get<std::string>();
                if (type == "summand")
                    centers.push_back(BlowupCenter::summand(cj.at("index").get<int>()));
                else if (type == "curve")
                    centers.push_back(BlowupCenter::curve(cj.at("xi_degree").get<long>(),
                                                          cj.at("normal_degree").get<long>()));
                else
                    throw validation_error("unknown center type: '" + type + "'");
            }
            return FamilyDescriptor(genus, std::move(twists), std::move(centers));
        } catch (const nlohmann::json::exception& e) {
            throw validation_error(std::string("malformed descriptor: ") + e.what());
        }
    }

    static FamilyDescriptor parse(const std::string& text) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw validation_error(std::string("descriptor parse error: ") + e.what());
        }
        return from_json(j);
    }

    /// Stable FNV-1a hash of the canonical serialization; cache/report key only.
    std::string hash() const {
        const std::string dump = to_json().dump();
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char ch : dump) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016lx", static_cast<unsigned long>(h));
        return std::string(buf);
    }

  private:
    void validate() const {
        if (twists_.size() < 2) throw validation_error("rank of V must be at least 2");
        if (!centers_.empty() && twists_.size() < 3)
            throw validation_error("blow-up centers need rank >= 3 (codimension-2 sections)");
        std::set<int> seen;
        for (const auto& c : centers_) {
            if (c.kind == BlowupCenter::Kind::summand) {
                if (c.summand_index < 1 || c.summand_index > static_cast<int>(twists_.size()))
                    throw validation_error("summand center index " +
                                           std::to_string(c.summand_index) + " out of range 1.." +
                                           std::to_string(twists_.size()));
                if (!seen.insert(c.summand_index).second)
                    throw validation_error("duplicate summand center index " +
                                           std::to_string(c.summand_index));
            }
        }
    }

    unsigned genus_;
    std::vector<long> twists_;
    std::vector<BlowupCenter> centers_;
};

/// Rational combination of the generators of the relative Picard group:
///   class = xi * pi^* xi + f * pi^* fiber - sum_j e[j] * E_j.
/// Note the sign convention: e[j] stores the *subtracted* coefficient.
struct DivisorClass {
    Rational xi{0};
    Rational f{0};
    std::vector<Rational> e;

    DivisorClass() = default;
    DivisorClass(Rational xi_, Rational f_, std::vector<Rational> e_)
        : xi(std::move(xi_)), f(std::move(f_)), e(std::move(e_)) {}

    /// pi^* of a multiple of xi (no exceptional part).
    static DivisorClass pullback_xi(const FamilyDescriptor& fam, const Rational& mult) {
        return DivisorClass(mult, Rational(0), std::vector<Rational>(fam.centers().size(), Rational(0)));
    }
    static DivisorClass fiber(const FamilyDescriptor& fam) {
        return DivisorClass(Rational(0), Rational(1), std::vector<Rational>(fam.centers().size(), Rational(0)));
    }
    /// The exceptional divisor E_j itself (j is 0-based).
    static DivisorClass exceptional(const FamilyDescriptor& fam, std::size_t j) {
        std::vector<Rational> e(fam.centers().size(), Rational(0));
        e.at(j) = Rational(-1);
        return DivisorClass(Rational(0), Rational(0), std::move(e));
    }

    DivisorClass operator*(const Rational& s) const {
        DivisorClass r = *this;
        r.xi *= s;
        r.f *= s;
        for (auto& c : r.e) c *= s;
        return r;
    }
    DivisorClass operator+(const DivisorClass& o) const {
        if (e.size() != o.e.size()) throw validation_error("divisor classes of different families");
        DivisorClass r = *this;
        r.xi += o.xi;
        r.f += o.f;
        for (std::size_t j = 0; j < e.size(); ++j) r.e[j] += o.e[j];
        return r;
    }
    bool operator==(const DivisorClass& o) const { return xi == o.xi && f == o.f && e == o.e; }

    std::string to_string() const {
        std::string s = xi.get_str() + "*xi + " + f.get_str() + "*f";
        for (std::size_t j = 0; j < e.size(); ++j)
            s += " - " + e[j].get_str() + "*E" + std::to_string(j + 1);
        return s;
    }
};

/// -K_{X/T} = pi^*(r xi - (deg V) fiber) - sum_j E_j.
inline DivisorClass anticanonical_class(const FamilyDescriptor& fam) {
    return DivisorClass(Rational(static_cast<long>(fam.rank())), Rational(-fam.deg_v()),
                        std::vector<Rational>(fam.centers().size(), Rational(1)));
}

/// Base change along a degree-e cover of the base: twists and curve-center
/// degrees scale by e, summand centers are untouched structurally.
inline FamilyDescriptor pullback_cover(const FamilyDescriptor& fam, unsigned e) {
    if (e < 1) throw validation_error("cover degree must be >= 1");
    std::vector<long> twists;
    twists.reserve(fam.twists().size());
    for (long a : fam.twists()) twists.push_back(a * static_cast<long>(e));
    std::vector<BlowupCenter> centers = fam.centers();
    for (auto& c : centers) {
        if (c.kind == BlowupCenter::Kind::curve) {
            c.xi_degree *= static_cast<long>(e);
            c.normal_degree *= static_cast<long>(e);
        }
    }
    return FamilyDescriptor(fam.base_genus(), std::move(twists), std::move(centers));
}

}  // namespace fanocm
