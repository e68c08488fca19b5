#pragma once

// Delta/alpha invariant arithmetic on the model spaces (P^n, O(d)). Two
// valuation families are modeled: the hyperplane divisor and the
// exceptional divisor of a point blow-up. Both have closed-form filtration
// dimensions and volume functions, so S_q, its limit S, and the derived
// ratios are exact. Ratios A(v)/S(v) are upper bounds for delta; on P^1
// (where divisorial valuations are points) they compute it.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fanocm/errors.hpp"
#include "fanocm/numeric.hpp"

namespace fanocm {

/// The pair (P^n, O(d)); d = n+1 is the anti-canonical polarization.
struct PolarizedModel {
    unsigned n;   // n >= 1
    Rational d;   // d > 0

    PolarizedModel(unsigned n_, Rational d_) : n(n_), d(std::move(d_)) {
        if (n < 1) throw validation_error("model dimension must be >= 1");
        if (!(d > 0)) throw validation_error("polarization degree must be positive");
    }
    static PolarizedModel anticanonical(unsigned n_) {
        return PolarizedModel(n_, Rational(static_cast<long>(n_) + 1));
    }
};

struct ValuationModel {
    enum class Kind { hyperplane, point_blowup };
    Kind kind;

    /// Log discrepancy: 1 for the hyperplane, n for the point blow-up.
    Rational log_discrepancy(const PolarizedModel& model) const {
        return kind == Kind::hyperplane ? Rational(1) : Rational(static_cast<long>(model.n));
    }
    static ValuationModel hyperplane() { return {Kind::hyperplane}; }
    static ValuationModel point_blowup() { return {Kind::point_blowup}; }
};

namespace detail {

/// q*d as a machine integer, or scaling_error.
inline long integral_level(const PolarizedModel& model, long q) {
    if (q < 1) throw validation_error("q must be positive");
    Rational qd = Rational(q) * model.d;
    if (!is_integer(qd)) throw scaling_error("q*d is not integral at q = " + std::to_string(q));
    return to_long(to_integer(qd));
}

/// dim F_i of the valuation filtration on H^0(P^n, O(N)).
inline Integer filtration_dim(const PolarizedModel& model, const ValuationModel& v, long N,
                              long i) {
    if (i > N) return 0;
    const unsigned long n = model.n;
    if (v.kind == ValuationModel::Kind::hyperplane) {
        // forms divisible by the i-th power of the hyperplane
        return binomial(static_cast<unsigned long>(n + N - i), n);
    }
    // monomials of degree N with order >= i at the point
    return binomial(static_cast<unsigned long>(N + n), n) -
           binomial(static_cast<unsigned long>(n + i - 1), n);
}

}  // namespace detail

/// S_q(v) = (1/(q h^0)) sum_{i>=1} dim F_i, exact.
inline Rational s_q(const PolarizedModel& model, const ValuationModel& v, long q) {
    const long N = detail::integral_level(model, q);
    Integer sum = 0;
    for (long i = 1; i <= N; ++i) sum += detail::filtration_dim(model, v, N, i);
    const Integer h0 = binomial(static_cast<unsigned long>(N + model.n), model.n);
    return Rational(sum) / (Rational(q) * Rational(h0));
}

/// S(v) = (1/vol L) * integral of vol(pi^* L - x E) dx, via the closed-form
/// volume functions (d-x)^n (hyperplane) and d^n - x^n (point blow-up) on
/// [0, d]; equals d/(n+1) resp. n d/(n+1).
inline Rational s_infinity(const PolarizedModel& model, const ValuationModel& v) {
    const long n = model.n;
    const Rational d = model.d;
    if (v.kind == ValuationModel::Kind::hyperplane) {
        // int_0^d (d-x)^n dx = d^{n+1}/(n+1)
        return pow_rational(d, n + 1) / Rational(n + 1) / pow_rational(d, n);
    }
    // int_0^d (d^n - x^n) dx = d^{n+1} * n/(n+1)
    return pow_rational(d, n + 1) * Rational(n) / Rational(n + 1) / pow_rational(d, n);
}

/// A(v)/S_q(v) (finite q) or A(v)/S(v) (limit): an upper bound for delta_q
/// resp. delta.
inline Rational ratio_A_over_S(const PolarizedModel& model, const ValuationModel& v,
                               std::optional<long> q = std::nullopt) {
    const Rational denom = q ? s_q(model, v, *q) : s_infinity(model, v);
    return v.log_discrepancy(model) / denom;
}

/// delta_q of (P^1, O(d)): lct(P^1, D) = 1/(max coefficient), and the
/// maximal coefficient over q-basis-type divisors is S_q(point) = d/2.
inline Rational delta_q_p1(long d, long q) {
    if (d < 1) throw validation_error("degree d must be positive");
    PolarizedModel model(1, Rational(d));
    Rational max_mult = s_q(model, ValuationModel::point_blowup(), q);
    return Rational(1) / max_mult;
}

/// q-th pseudo-effective threshold T_q(v) = max_{D in |qdL|} v(D)/q; equals
/// d for both modeled valuation kinds.
inline Rational pseff_threshold(const PolarizedModel& model, const ValuationModel& v, long q) {
    const long N = detail::integral_level(model, q);
    (void)v;  // max order of vanishing over degree-N forms is N for both kinds
    return Rational(N) / Rational(q);
}

struct BoundsReport {
    bool lower_holds;        // (n+1)/n * alpha <= delta
    bool upper_holds;        // delta <= (n+1) * alpha
    Rational lower_margin;   // delta - (n+1)/n * alpha
    Rational upper_margin;   // (n+1) * alpha - delta
    bool both() const { return lower_holds && upper_holds; }
};

/// The alpha-delta sandwich (n+1)/n * alpha <= delta <= (n+1) * alpha,
/// evaluated exactly with margins.
inline BoundsReport alpha_delta_bounds_check(const Rational& alpha, const Rational& delta,
                                             unsigned n) {
    if (!(alpha > 0) || !(delta > 0)) throw validation_error("alpha and delta must be positive");
    if (n < 1) throw validation_error("dimension must be >= 1");
    BoundsReport r;
    r.lower_margin = delta - Rational(static_cast<long>(n) + 1) / Rational(static_cast<long>(n)) * alpha;
    r.upper_margin = Rational(static_cast<long>(n) + 1) * alpha - delta;
    r.lower_holds = r.lower_margin >= 0;
    r.upper_holds = r.upper_margin >= 0;
    return r;
}

/// Guaranteed lct lower bound for q-product basis type divisors on a
/// product: the minimum of the factors' delta_q values.
inline Rational product_lct_bound(std::span<const Rational> delta_q_values) {
    if (delta_q_values.empty()) throw validation_error("empty delta_q sequence");
    Rational m = delta_q_values[0];
    for (const auto& v : delta_q_values) {
        if (!(v > 0)) throw validation_error("delta_q values must be positive");
        if (v < m) m = v;
    }
    return m;
}

inline Rational product_lct_bound(const std::vector<Rational>& v) {
    return product_lct_bound(std::span<const Rational>(v));
}

struct StabilityVerdict {
    enum class Class { K_semistable, uniformly_K_stable, not_K_semistable, inconclusive };
    Class classification = Class::inconclusive;
    std::string source;  // which bound produced the verdict

    std::string to_string() const {
        switch (classification) {
            case Class::K_semistable: return "K_semistable";
            case Class::uniformly_K_stable: return "uniformly_K_stable";
            case Class::not_K_semistable: return "not_K_semistable";
            default: return "inconclusive";
        }
    }
};

/// delta >= 1 -> K-semistable, delta > 1 -> uniformly K-stable, delta < 1
/// -> not K-semistable. With only alpha: > n/(n+1) uniform, >= n/(n+1)
/// semistable, < 1/(n+1) unstable, anything else inconclusive.
inline StabilityVerdict classify_stability(std::optional<Rational> delta,
                                           std::optional<Rational> alpha, unsigned n) {
    StabilityVerdict v;
    if (delta) {
        if (!(*delta > 0)) throw validation_error("delta must be positive");
        v.source = "delta";
        if (*delta > 1) v.classification = StabilityVerdict::Class::uniformly_K_stable;
        else if (*delta == 1) v.classification = StabilityVerdict::Class::K_semistable;
        else v.classification = StabilityVerdict::Class::not_K_semistable;
        return v;
    }
    if (!alpha) throw validation_error("need delta or alpha");
    if (!(*alpha > 0)) throw validation_error("alpha must be positive");
    v.source = "alpha";
    const Rational lo = Rational(1) / Rational(static_cast<long>(n) + 1);
    const Rational hi = Rational(static_cast<long>(n)) / Rational(static_cast<long>(n) + 1);
    if (*alpha > hi) v.classification = StabilityVerdict::Class::uniformly_K_stable;
    else if (*alpha >= hi) v.classification = StabilityVerdict::Class::K_semistable;
    else if (*alpha < lo) v.classification = StabilityVerdict::Class::not_K_semistable;
    else v.classification = StabilityVerdict::Class::inconclusive;
    return v;
}

/// delta/((delta-1) v (n+1)); the coefficient making
/// -K_{X/T} + c f^* lambda_f nef for a uniformly K-stable family.
/// Rejects delta <= 1: the delta = 1 model family admits no such threshold.
inline Rational nef_threshold_coefficient(const Rational& delta, const Rational& v, unsigned n) {
    if (!(v > 0)) throw validation_error("fiber volume must be positive");
    if (!(delta > 1))
        throw hypothesis_error(
            "nef threshold needs delta > 1; at delta = 1 no multiple of f^*lambda makes the "
            "relative anticanonical class nef");
    return delta / ((delta - 1) * v * Rational(static_cast<long>(n) + 1));
}

struct VolumeBoundReport {
    bool fiber_bound_holds;     // vol X <= 2 dim(X) vol F
    bool absolute_bound_holds;  // vol X <= 2 dim(X)^{dim X}
    Rational fiber_margin;
    Rational absolute_margin;
};

/// The fibration volume bound and its boundary-free absolute form, with
/// exact margins.
inline VolumeBoundReport volume_bound_check(const Rational& vol_x, unsigned dim_x,
                                            const Rational& vol_f) {
    if (!(vol_x > 0) || !(vol_f > 0)) throw validation_error("volumes must be positive");
    if (dim_x < 1) throw validation_error("dimension must be >= 1");
    VolumeBoundReport r;
    r.fiber_margin = Rational(2 * static_cast<long>(dim_x)) * vol_f - vol_x;
    r.absolute_margin =
        Rational(2) * pow_rational(Rational(static_cast<long>(dim_x)), static_cast<long>(dim_x)) -
        vol_x;
    r.fiber_bound_holds = r.fiber_margin >= 0;
    r.absolute_bound_holds = r.absolute_margin >= 0;
    return r;
}

}  // namespace fanocm
