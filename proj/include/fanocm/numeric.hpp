#pragma once

// Exact integer/rational arithmetic, binomials, Lagrange interpolation and
// the inverse binomial transform. Everything here is exact; no floating
// point enters any computation in this header.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fanocm/errors.hpp"

namespace fanocm {

using Integer = mpz_class;
using Rational = mpq_class;

/// num/den in lowest terms with positive denominator.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw validation_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p/q" or a plain integer string.
inline Rational rational_from_string(const std::string& s) {
    try {
        Rational r(s);
        if (r.get_den() == 0) throw validation_error("rational with zero denominator: " + s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw validation_error("cannot parse rational: '" + s + "'");
    }
}

/// "p/q" for non-integers, plain integer string otherwise.
inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer to_integer(const Rational& r) {
    if (!is_integer(r)) throw scaling_error("expected an integer, got " + r.get_str());
    return r.get_num();
}

inline long to_long(const Integer& z) {
    if (!z.fits_slong_p()) throw validation_error("integer out of machine range: " + z.get_str());
    return z.get_si();
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// C(n, k) for n, k >= 0.
inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// x^e for integer e (negative e inverts; x must be nonzero then).
inline Rational pow_rational(const Rational& x, long e) {
    if (e < 0) {
        if (x == 0) throw validation_error("zero raised to a negative power");
        return pow_rational(Rational(1) / x, -e);
    }
    Rational r(1), b(x);
    unsigned long n = static_cast<unsigned long>(e);
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

/// Dense univariate polynomial over Q; coefficient i belongs to q^i.
/// The leading coefficient is nonzero unless the polynomial is zero.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    static Polynomial constant(const Rational& c) { return Polynomial({c}); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

    Rational leading_coefficient() const {
        return coeffs_.empty() ? Rational(0) : coeffs_.back();
    }

    const std::vector<Rational>& coefficients() const { return coeffs_; }

    Rational evaluate(const Rational& q) const {
        Rational acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * q + coeffs_[i];
        return acc;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial();
        std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(c));
    }

    friend Polynomial operator*(const Rational& s, Polynomial p) {
        for (auto& c : p.coeffs_) c *= s;
        p.trim();
        return p;
    }

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

    /// e.g. "3q^2 + 3q + 1"; var names the indeterminate.
    std::string to_string(const std::string& var = "q") const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const Rational& c = coeffs_[i];
            if (c == 0) continue;
            if (!out.empty()) out += (c > 0) ? " + " : " - ";
            else if (c < 0) out += "-";
            Rational a = abs(c);
            if (a != 1 || i == 0) out += a.get_str();
            if (i >= 1) {
                out += var;
                if (i >= 2) out += "^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

/// Unique polynomial of degree < points.size() through all points, by the
/// Lagrange formula over exact rationals. Abscissae must be distinct.
inline Polynomial interpolate(std::span<const std::pair<Rational, Rational>> points) {
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first)
                throw validation_error("duplicate abscissa in interpolation: " +
                                       points[i].first.get_str());
    Polynomial result;
    for (std::size_t i = 0; i < points.size(); ++i) {
        Polynomial basis({Rational(1)});
        Rational denom(1);
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            basis = basis * Polynomial({-points[j].first, Rational(1)});
            denom *= points[i].first - points[j].first;
        }
        result += (points[i].second / denom) * basis;
    }
    return result;
}

inline Polynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
    return interpolate(std::span<const std::pair<Rational, Rational>>(points));
}

/// Solves v(q) = sum_i c_i * C(q, i) for c, given v(0), ..., v(N).
/// The system is triangular in q and always solvable.
inline std::vector<Rational> binomial_transform_solve(std::span<const Rational> values) {
    std::vector<Rational> c(values.size());
    for (std::size_t q = 0; q < values.size(); ++q) {
        Rational acc = values[q];
        for (std::size_t i = 0; i < q; ++i) acc -= c[i] * Rational(binomial(q, i));
        c[q] = acc;
    }
    return c;
}

inline std::vector<Rational> binomial_transform_solve(const std::vector<Rational>& values) {
    return binomial_transform_solve(std::span<const Rational>(values));
}

/// sum_i c_i * C(q, i); inverse of binomial_transform_solve.
inline Rational binomial_resum(std::span<const Rational> c, unsigned long q) {
    Rational acc(0);
    for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * Rational(binomial(q, i));
    return acc;
}

inline Rational binomial_resum(const std::vector<Rational>& c, unsigned long q) {
    return binomial_resum(std::span<const Rational>(c), q);
}

}  // namespace fanocm
