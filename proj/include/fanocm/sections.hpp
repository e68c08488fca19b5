#pragma once

// Section counting through the monomial model. For a family with summand
// centers only, sections of m * (x xi + y f - sum_j e_j E_j) decompose into
// monomial eigen-bundles: exponent vectors k >= 0 with |k| = m*x contribute
// the line bundle O(sum_i k_i a_i + m*y) on the base, subject to vanishing
// order sum_{i != j} k_i >= m*e_j along every center j. On a genus-0 base
// h^0(O(d)) = max(0, d+1).

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "fanocm/errors.hpp"
#include "fanocm/family.hpp"
#include "fanocm/intersect.hpp"
#include "fanocm/numeric.hpp"

namespace fanocm {

/// Summand degrees of a split bundle on P^1, as a sorted multiset.
struct SplittingType {
    std::vector<long> degrees;  // ascending

    Integer h0() const {
        Integer total = 0;
        for (long d : degrees)
            if (d >= -1) total += d + 1;
        return total;
    }
    Integer degree_sum() const {
        Integer total = 0;
        for (long d : degrees) total += d;
        return total;
    }
    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < degrees.size(); ++i)
            s += (i ? ", " : "") + std::to_string(degrees[i]);
        return s + "}";
    }
};

struct HilbertData {
    Rational a0;      // coefficient of q^n in chi(q)
    Rational a1;      // coefficient of q^{n-1}
    Rational mu;      // 2 a1 / a0
    Rational volume;  // n! * a0
    Polynomial chi;   // the fitted fiber Hilbert polynomial
};

struct KMCoefficients {
    std::vector<Rational> m_degrees;  // deg M_0 .. deg M_{n+1}
    Rational lcm_degree;              // degree of the Paul-Tian bundle
    Rational mu_sl;                   // slope constant used in the exponent
    Polynomial pushforward_degree;    // deg f_* O(q s L) as a polynomial in q
};

namespace detail {

struct SectionProblem {
    long total;                   // |k| = m * xi
    long fiber_twist;             // m * f
    std::vector<long> min_order;  // per center: m * e_j
    std::vector<std::size_t> center_summand;  // 0-based summand of each center
};

/// Validates the preconditions shared by h0 / splitting / degree sums and
/// converts the class data to integers.
inline SectionProblem make_section_problem(const FamilyDescriptor& fam, const DivisorClass& cls,
                                           long m) {
    if (m < 1) throw validation_error("multiple m must be positive");
    if (fam.base_genus() != 0)
        throw model_error("section counting requires a genus-0 base");
    if (fam.has_curve_center())
        throw model_error("section counting supports summand centers only");
    if (cls.e.size() != fam.centers().size())
        throw validation_error("divisor class does not match the family's centers");
    SectionProblem p;
    Rational mx = Rational(m) * cls.xi, mf = Rational(m) * cls.f;
    if (!is_integer(mx) || !is_integer(mf))
        throw scaling_error("m*class is not integral at m = " + std::to_string(m));
    p.total = to_long(to_integer(mx));
    p.fiber_twist = to_long(to_integer(mf));
    for (std::size_t j = 0; j < cls.e.size(); ++j) {
        Rational me = Rational(m) * cls.e[j];
        if (!is_integer(me))
            throw scaling_error("m*class is not integral at m = " + std::to_string(m));
        p.min_order.push_back(to_long(to_integer(me)));
        p.center_summand.push_back(
            static_cast<std::size_t>(fam.centers()[j].summand_index - 1));
    }
    return p;
}

/// Walks all admissible exponent vectors and feeds their twist degree to fn.
template <class Fn>
void for_each_admissible_degree(const FamilyDescriptor& fam, const SectionProblem& p, Fn&& fn) {
    if (p.total < 0) return;
    const std::size_t r = fam.rank();
    std::vector<long> k(r, 0);
    auto admissible = [&]() {
        for (std::size_t j = 0; j < p.min_order.size(); ++j) {
            if (p.total - k[p.center_summand[j]] < p.min_order[j]) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t pos, long left, long degree) -> void {
        if (pos + 1 == r) {
            k[pos] = left;
            degree += left * fam.twists()[pos];
            if (admissible()) fn(degree + p.fiber_twist);
            return;
        }
        for (long v = 0; v <= left; ++v) {
            k[pos] = v;
            self(self, pos + 1, left - v, degree + v * fam.twists()[pos]);
        }
    };
    rec(rec, 0, p.total, 0);
}

struct H0Cache {
    std::shared_mutex mutex;
    std::map<std::string, Integer> values;

    static H0Cache& instance() {
        static H0Cache cache;
        return cache;
    }
};

}  // namespace detail

/// Pushforward splitting type of m*class: the multiset of all monomial twist
/// degrees, including negative ones.
inline SplittingType pushforward_splitting(const FamilyDescriptor& fam, const DivisorClass& cls,
                                           long m) {
    auto p = detail::make_section_problem(fam, cls, m);
    SplittingType st;
    detail::for_each_admissible_degree(fam, p, [&](long d) { st.degrees.push_back(d); });
    std::sort(st.degrees.begin(), st.degrees.end());
    return st;
}

/// h^0(X, m*class) = sum over admissible monomials of max(0, degree + 1).
/// Memoized per process; concurrent reads are safe.
inline Integer h0(const FamilyDescriptor& fam, const DivisorClass& cls, long m) {
    auto p = detail::make_section_problem(fam, cls, m);
    const std::string key = fam.hash() + "|" + cls.to_string() + "|" + std::to_string(m);
    auto& cache = detail::H0Cache::instance();
    {
        std::shared_lock lock(cache.mutex);
        auto it = cache.values.find(key);
        if (it != cache.values.end()) return it->second;
    }
    Integer total = 0;
    detail::for_each_admissible_degree(fam, p, [&](long d) {
        if (d >= 0) total += d + 1;
    });
    {
        std::unique_lock lock(cache.mutex);
        cache.values.emplace(key, total);
    }
    return total;
}

/// deg f_* O(m*class): the sum of all splitting degrees, negative ones included.
inline Integer pushforward_degree(const FamilyDescriptor& fam, const DivisorClass& cls, long m) {
    auto p = detail::make_section_problem(fam, cls, m);
    Integer total = 0;
    detail::for_each_admissible_degree(fam, p, [&](long d) { total += d; });
    return total;
}

/// #monomials of the anticanonical fiber system at level q:
/// |k| = r*q with order sum_{i != j} k_i >= q at every center.
inline Integer fiber_section_count(const FamilyDescriptor& fam, long q) {
    if (q < 0) throw validation_error("q must be nonnegative");
    if (fam.has_curve_center())
        throw model_error("fiber counts support summand centers only");
    const std::size_t r = fam.rank();
    const long total = static_cast<long>(r) * q;
    std::vector<std::size_t> centers;
    for (const auto& c : fam.centers())
        centers.push_back(static_cast<std::size_t>(c.summand_index - 1));
    Integer count = 0;
    std::vector<long> k(r, 0);
    auto rec = [&](auto&& self, std::size_t pos, long left) -> void {
        if (pos + 1 == r) {
            k[pos] = left;
            for (std::size_t c : centers)
                if (total - k[c] < q) return;
            ++count;
            return;
        }
        for (long v = 0; v <= left; ++v) {
            k[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, total);
    return count;
}

/// Fits the exact fiber Hilbert polynomial chi(q) of -K on the fiber and
/// reads off a_0, a_1, mu = 2a_1/a_0 and the volume n! * a_0. The fit is
/// validated on three extra sample points.
inline HilbertData fiber_hilbert(const FamilyDescriptor& fam) {
    const std::size_t n = fam.fiber_dim();
    std::vector<std::pair<Rational, Rational>> pts;
    for (long q = 1; q <= static_cast<long>(n) + 1; ++q)
        pts.emplace_back(Rational(q), Rational(fiber_section_count(fam, q)));
    Polynomial chi = interpolate(pts);
    for (long q = static_cast<long>(n) + 2; q <= static_cast<long>(n) + 4; ++q) {
        if (chi.evaluate(Rational(q)) != Rational(fiber_section_count(fam, q)))
            throw model_error("fiber Hilbert fit failed to stabilize (non-polynomial data)");
    }
    HilbertData h;
    h.chi = chi;
    h.a0 = chi.coeff(n);
    h.a1 = n >= 1 ? chi.coeff(n - 1) : Rational(0);
    if (h.a0 == 0) throw model_error("degenerate fiber Hilbert polynomial");
    h.mu = Rational(2) * h.a1 / h.a0;
    h.volume = Rational(factorial(static_cast<unsigned long>(n))) * h.a0;
    return h;
}

struct VolumeEstimate {
    Rational volume;
    Polynomial fit;         // fitted h^0(m*class) on the sampled progression
    long m_start = 1;
    long stride = 1;
};

/// (dim X)! times the leading coefficient of the exact polynomial fitted to
/// h^0(m*class) on an arithmetic progression, validated on 3 extra points.
/// Retries on coarser progressions if the fit does not validate.
inline VolumeEstimate volume_estimate(const FamilyDescriptor& fam, const DivisorClass& cls) {
    const std::size_t dim = fam.rank();
    long stride = 1;
    for (int attempt = 0; attempt < 6; ++attempt, stride *= 2) {
        const long m0 = stride;
        std::vector<std::pair<Rational, Rational>> pts;
        bool integral = true;
        for (std::size_t i = 0; i <= dim + 3; ++i) {
            const long m = m0 + stride * static_cast<long>(i);
            try {
                pts.emplace_back(Rational(m), Rational(h0(fam, cls, m)));
            } catch (const scaling_error&) {
                integral = false;
                break;
            }
        }
        if (!integral) continue;
        std::vector<std::pair<Rational, Rational>> fit_pts(pts.begin(), pts.begin() + dim + 1);
        Polynomial fit = interpolate(fit_pts);
        bool ok = true;
        for (std::size_t i = dim + 1; i <= dim + 3; ++i)
            if (fit.evaluate(pts[i].first) != pts[i].second) ok = false;
        if (!ok) continue;  // quasi-polynomial period detected; coarsen
        VolumeEstimate est;
        est.fit = fit;
        est.m_start = m0;
        est.stride = stride;
        est.volume = Rational(factorial(static_cast<unsigned long>(dim))) * fit.coeff(dim);
        return est;
    }
    throw model_error("volume fit failed to stabilize on every sampled progression");
}

/// Knudsen-Mumford coefficients of s*(-K_{X/T}): solves
///   deg f_* O(q s L) = sum_i deg M_i * C(q, i)
/// for the deg M_i, forms the Paul-Tian combination
///   deg L_CM = (n(n+1) + mu_{sL}) deg M_{n+1} - 2(n+1) deg M_n,
/// and cross-checks deg M_{n+1} = -s^{n+1} deg lambda, deg L_CM = s^n deg
/// lambda, and the q^{n+1}, q^n coefficients of the degree polynomial
/// against the intersection numbers M^{n+1}/(n+1)! and -(K.M^n)/(2 n!).
/// Any failed identity throws consistency_error.
inline KMCoefficients km_coefficients(const FamilyDescriptor& fam, long s) {
    if (s < 1) throw validation_error("scale s must be positive");
    const std::size_t n = fam.fiber_dim();
    const DivisorClass antik = anticanonical_class(fam);

    std::vector<Rational> values;  // deg f_* O(q s L) for q = 0 .. n+3
    for (long q = 0; q <= static_cast<long>(n) + 3; ++q) {
        values.emplace_back(q == 0 ? Integer(0) : pushforward_degree(fam, antik, q * s));
    }
    std::vector<Rational> solved =
        binomial_transform_solve(std::vector<Rational>(values.begin(), values.begin() + n + 2));
    for (long q = static_cast<long>(n) + 2; q <= static_cast<long>(n) + 3; ++q)
        if (binomial_resum(solved, static_cast<unsigned long>(q)) != values[q])
            throw consistency_error("Knudsen-Mumford expansion does not reproduce sample points");

    std::vector<std::pair<Rational, Rational>> pts;
    for (std::size_t q = 0; q < values.size(); ++q) pts.emplace_back(Rational(q), values[q]);
    Polynomial degpoly = interpolate(pts);

    const Rational deg_lambda = cm_degree(fam);
    const Rational s_pow_n = pow_rational(Rational(s), static_cast<long>(n));
    const Rational s_pow_n1 = s_pow_n * Rational(s);
    if (solved[n + 1] != -s_pow_n1 * deg_lambda)
        throw consistency_error("deg M_{n+1} != -s^{n+1} deg lambda");

    // Appendix expansion: top two coefficients against the intersection ring.
    const Rational minus_k_top = -deg_lambda;  // (-K)^{n+1}
    if (degpoly.coeff(n + 1) !=
        s_pow_n1 * minus_k_top / Rational(factorial(static_cast<unsigned long>(n + 1))))
        throw consistency_error("q^{n+1} coefficient disagrees with M^{n+1}/(n+1)!");
    if (degpoly.coeff(n) !=
        s_pow_n * minus_k_top / (Rational(2) * Rational(factorial(static_cast<unsigned long>(n)))))
        throw consistency_error("q^n coefficient disagrees with -(K.M^n)/(2 n!)");

    KMCoefficients km;
    km.m_degrees = solved;
    km.mu_sl = fiber_hilbert(fam).mu / Rational(s);
    km.lcm_degree = (Rational(static_cast<long>(n * (n + 1))) + km.mu_sl) * solved[n + 1] -
                    Rational(2 * static_cast<long>(n + 1)) * solved[n];
    km.pushforward_degree = degpoly;
    if (km.lcm_degree != s_pow_n * deg_lambda)
        throw consistency_error("deg L_CM != s^n deg lambda");
    return km;
}

}  // namespace fanocm
