#pragma once

// Harder-Narasimhan slope combinatorics for tensor and symmetric powers of
// a graded object on a curve, the globally-generated rank fraction against
// the 2g threshold, and exact/approximate tail bounds for its m -> infinity
// limit. Spectra are computed by exact convolution on an integer slope
// lattice, never by l^m enumeration.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fanocm/errors.hpp"
#include "fanocm/numeric.hpp"

namespace fanocm {

struct HNPiece {
    Rational slope;
    Integer rank;  // positive
};

/// Strictly decreasing (slope, rank) pairs of a Harder-Narasimhan graded
/// object, together with the genus of the base curve.
class HNProfile {
  public:
    HNProfile(std::vector<HNPiece> pieces, unsigned genus)
        : pieces_(std::move(pieces)), genus_(genus) {
        if (pieces_.empty()) throw validation_error("profile needs at least one piece");
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (pieces_[i].rank < 1) throw validation_error("profile ranks must be positive");
            if (i > 0 && !(pieces_[i - 1].slope > pieces_[i].slope))
                throw validation_error("profile slopes must be strictly decreasing");
        }
    }

    const std::vector<HNPiece>& pieces() const { return pieces_; }
    unsigned genus() const { return genus_; }

    Integer total_rank() const {
        Integer r = 0;
        for (const auto& p : pieces_) r += p.rank;
        return r;
    }
    Rational degree() const {
        Rational d(0);
        for (const auto& p : pieces_) d += p.slope * Rational(p.rank);
        return d;
    }
    Rational slope() const { return degree() / Rational(total_rank()); }

    /// Variance of the slope under the rank-weighted distribution.
    Rational slope_variance() const {
        const Rational mean = slope();
        Rational acc(0);
        const Rational r(total_rank());
        for (const auto& p : pieces_) {
            Rational d = p.slope - mean;
            acc += Rational(p.rank) / r * d * d;
        }
        return acc;
    }

    /// "2:1,-1:1" = slope:rank pairs, slopes may be rational ("3/2:1").
    static HNProfile parse(const std::string& text, unsigned genus) {
        std::vector<HNPiece> pieces;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            std::string item = text.substr(pos, comma - pos);
            std::size_t colon = item.find(':');
            if (colon == std::string::npos)
                throw validation_error("profile piece '" + item + "' is not slope:rank");
            Rational rank = rational_from_string(item.substr(colon + 1));
            if (!is_integer(rank)) throw validation_error("rank must be an integer in '" + item + "'");
            pieces.push_back({rational_from_string(item.substr(0, colon)), rank.get_num()});
            pos = comma + 1;
        }
        std::sort(pieces.begin(), pieces.end(),
                  [](const HNPiece& a, const HNPiece& b) { return a.slope > b.slope; });
        return HNProfile(std::move(pieces), genus);
    }

  private:
    std::vector<HNPiece> pieces_;
    unsigned genus_;
};

struct SpectrumPiece {
    Rational slope;  // the minimal slope nu of the graded piece
    Integer rank;
};

/// Multiset of (slope, rank) pieces of a tensor/symmetric power, sorted by
/// strictly decreasing slope; total rank r^m for the m-th tensor power.
struct GradedSpectrum {
    std::vector<SpectrumPiece> pieces;

    Integer total_rank() const {
        Integer r = 0;
        for (const auto& p : pieces) r += p.rank;
        return r;
    }
    Rational mean_slope() const {
        Rational acc(0);
        for (const auto& p : pieces) acc += p.slope * Rational(p.rank);
        return acc / Rational(total_rank());
    }
    /// Total rank of the pieces with slope >= threshold.
    Integer rank_at_least(const Rational& threshold) const {
        Integer r = 0;
        for (const auto& p : pieces)
            if (p.slope >= threshold) r += p.rank;
        return r;
    }
};

/// On P^1 the HN data of a split bundle groups equal summand degrees.
inline HNProfile from_splitting(const std::vector<long>& degrees, unsigned genus) {
    if (degrees.empty()) throw validation_error("empty splitting type");
    std::map<long, Integer> groups;
    for (long d : degrees) groups[d] += 1;
    std::vector<HNPiece> pieces;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it)
        pieces.push_back({Rational(it->first), it->second});
    return HNProfile(std::move(pieces), genus);
}

/// Distribution of (sum of m slopes, product of ranks) over all selections
/// s in {1..l}^m, by exact convolution over the integer slope lattice.
/// Pieces of equal slope sum merge.
inline GradedSpectrum tensor_graded(const HNProfile& profile, unsigned long m) {
    if (m < 1) throw validation_error("tensor power m must be positive");
    // Scale all slopes to a common integer lattice.
    Integer denom = 1;
    for (const auto& p : profile.pieces()) {
        Integer d = p.slope.get_den();
        mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<long> scaled;
    std::vector<Integer> ranks;
    for (const auto& p : profile.pieces()) {
        scaled.push_back(to_long(to_integer(p.slope * Rational(denom))));
        ranks.push_back(p.rank);
    }
    std::map<long, Integer> dist{{0, Integer(1)}};
    for (unsigned long step = 0; step < m; ++step) {
        std::map<long, Integer> next;
        for (const auto& [value, count] : dist)
            for (std::size_t i = 0; i < scaled.size(); ++i) next[value + scaled[i]] += count * ranks[i];
        dist = std::move(next);
    }
    GradedSpectrum spec;
    for (auto it = dist.rbegin(); it != dist.rend(); ++it)
        spec.pieces.push_back({make_rational(it->first, denom), it->second});
    return spec;
}

/// Rank fraction of the m-th tensor power with slope at least the threshold
/// (defaults to 2g, the global-generation threshold), exact.
inline Rational gg_fraction(const HNProfile& profile, unsigned long m, const Rational& threshold) {
    GradedSpectrum spec = tensor_graded(profile, m);
    return Rational(spec.rank_at_least(threshold)) / Rational(spec.total_rank());
}

inline Rational gg_fraction(const HNProfile& profile, unsigned long m) {
    return gg_fraction(profile, m, Rational(2 * static_cast<long>(profile.genus())));
}

/// Central-limit-theorem tail estimate of the fraction; the one place in
/// the toolkit where floating point appears, and explicitly approximate.
inline double clt_estimate_approx(const HNProfile& profile, unsigned long m,
                                  const Rational& threshold) {
    const double mean = profile.slope().get_d();
    const double var = profile.slope_variance().get_d();
    const double thr = threshold.get_d();
    const double shifted = static_cast<double>(m) * mean - thr;
    if (var == 0.0) return shifted >= 0.0 ? 1.0 : 0.0;
    const double z = shifted / std::sqrt(var * static_cast<double>(m));
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

inline double clt_estimate_approx(const HNProfile& profile, unsigned long m) {
    return clt_estimate_approx(profile, m, Rational(2 * static_cast<long>(profile.genus())));
}

/// Exact rational lower bound 1 - m sigma^2 / (m mu - threshold)^2 for the
/// fraction, valid whenever m mu > threshold; 0 otherwise.
inline Rational chebyshev_lower_bound(const HNProfile& profile, unsigned long m,
                                      const Rational& threshold) {
    const Rational var = profile.slope_variance();
    const Rational gap = Rational(static_cast<long>(m)) * profile.slope() - threshold;
    if (var == 0) return gap >= 0 ? Rational(1) : Rational(0);
    if (gap <= 0) return Rational(0);
    Rational bound = Rational(1) - Rational(static_cast<long>(m)) * var / (gap * gap);
    return bound > 0 ? bound : Rational(0);
}

inline Rational chebyshev_lower_bound(const HNProfile& profile, unsigned long m) {
    return chebyshev_lower_bound(profile, m, Rational(2 * static_cast<long>(profile.genus())));
}

/// Least m with gg_fraction(m) >= 1 - epsilon. Requires positive degree;
/// the Chebyshev bound supplies a cutoff that guarantees termination.
inline unsigned long min_m_for_fraction(const HNProfile& profile, const Rational& epsilon) {
    if (!(epsilon > 0)) throw validation_error("epsilon must be positive");
    if (!(profile.degree() > 0))
        throw hypothesis_error("profile degree must be positive for the fraction limit to be 1");
    const Rational target = Rational(1) - epsilon;
    unsigned long cutoff = 1;
    while (chebyshev_lower_bound(profile, cutoff) < target) ++cutoff;
    for (unsigned long m = 1; m <= cutoff; ++m)
        if (gg_fraction(profile, m) >= target) return m;
    return cutoff;  // unreachable: gg_fraction(cutoff) >= chebyshev(cutoff) >= target
}

/// Fraction of Sym^m summands of a split bundle (exponent-vector model,
/// degree sum k_i a_i) with degree >= threshold.
inline Rational sym_fraction(const std::vector<long>& degrees, unsigned long m,
                             const Rational& threshold) {
    if (degrees.empty()) throw validation_error("empty splitting type");
    // dp over (variables used so far -> exponent budget spent, degree) counts
    std::map<std::pair<unsigned long, long>, Integer> dp{{{0, 0}, Integer(1)}};
    for (long a : degrees) {
        std::map<std::pair<unsigned long, long>, Integer> next;
        for (const auto& [key, count] : dp) {
            for (unsigned long k = 0; key.first + k <= m; ++k)
                next[{key.first + k, key.second + static_cast<long>(k) * a}] += count;
        }
        dp = std::move(next);
    }
    Integer qualifying = 0, total = 0;
    for (const auto& [key, count] : dp) {
        if (key.first != m) continue;
        total += count;
        if (Rational(key.second) >= threshold) qualifying += count;
    }
    return Rational(qualifying) / Rational(total);
}

/// mu(E) = deg / rank; additive under tensor products.
inline Rational slope(const HNProfile& profile) { return profile.slope(); }

}  // namespace fanocm
