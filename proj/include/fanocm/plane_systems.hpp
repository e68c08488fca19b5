#pragma once

// Linear systems of plane curves with assigned base points and a fixed
// divisorial component, over exact rationals. Dimensions are computed by
// factoring the divisor out and imposing the remaining multiplicity
// conditions as derivative functionals, then taking a rank.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fanocm/errors.hpp"
#include "fanocm/numeric.hpp"

namespace fanocm {

struct PlanePoint {
    Rational x, y, z;  // projective coordinates, not all zero
};

/// Homogeneous polynomial in x, y, z with exact rational coefficients,
/// stored densely over the monomials x^a y^b z^(d-a-b).
class HomogeneousPoly {
  public:
    explicit HomogeneousPoly(unsigned degree)
        : degree_(degree), coeffs_(monomial_count(degree), Rational(0)) {}

    static std::size_t monomial_count(unsigned d) {
        return static_cast<std::size_t>(d + 1) * (d + 2) / 2;
    }

    unsigned degree() const { return degree_; }

    /// Coefficient of x^a y^b z^(d-a-b).
    Rational& coeff(unsigned a, unsigned b) { return coeffs_[index(a, b)]; }
    const Rational& coeff(unsigned a, unsigned b) const { return coeffs_[index(a, b)]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    Rational evaluate(const PlanePoint& p) const {
        Rational total(0);
        for (unsigned a = 0; a <= degree_; ++a)
            for (unsigned b = 0; a + b <= degree_; ++b) {
                const Rational& c = coeff(a, b);
                if (c == 0) continue;
                total += c * pow_rational(p.x, a) * pow_rational(p.y, b) *
                         pow_rational(p.z, degree_ - a - b);
            }
        return total;
    }

    /// Partial derivative d/d{var} (0 = x, 1 = y, 2 = z); degree drops by one.
    HomogeneousPoly derivative(int var) const {
        if (degree_ == 0) return HomogeneousPoly(0);
        HomogeneousPoly out(degree_ - 1);
        for (unsigned a = 0; a <= degree_; ++a)
            for (unsigned b = 0; a + b <= degree_; ++b) {
                const Rational& c = coeff(a, b);
                if (c == 0) continue;
                const unsigned g = degree_ - a - b;
                if (var == 0 && a > 0) out.coeff(a - 1, b) += Rational(a) * c;
                if (var == 1 && b > 0) out.coeff(a, b - 1) += Rational(b) * c;
                if (var == 2 && g > 0) out.coeff(a, b) += Rational(g) * c;
            }
        return out;
    }

    /// Order of vanishing at p: the least t with some t-th derivative nonzero.
    unsigned multiplicity_at(const PlanePoint& p) const {
        std::vector<HomogeneousPoly> level{*this};
        for (unsigned t = 0; t <= degree_; ++t) {
            for (const auto& poly : level)
                if (poly.evaluate(p) != 0) return t;
            std::vector<HomogeneousPoly> next;
            for (const auto& poly : level)
                for (int v = 0; v < 3; ++v) next.push_back(poly.derivative(v));
            level = std::move(next);
        }
        return degree_ + 1;  // identically zero
    }

    /// x^d + y^d + z^d; smooth for every d >= 1 and avoids the four default
    /// general points.
    static HomogeneousPoly fermat(unsigned d) {
        HomogeneousPoly g(d);
        g.coeff(d, 0) = 1;
        g.coeff(0, d) = 1;
        g.coeff(0, 0) = 1;
        return g;
    }

  private:
    std::size_t index(unsigned a, unsigned b) const {
        if (a + b > degree_) throw validation_error("monomial exponent out of range");
        // monomials ordered by a, then b
        std::size_t idx = 0;
        for (unsigned i = 0; i < a; ++i) idx += degree_ - i + 1;
        return idx + b;
    }

    unsigned degree_;
    std::vector<Rational> coeffs_;
};

struct BasePoint {
    PlanePoint point;
    unsigned multiplicity;
};

/// (1:0:0), (0:1:0), (0:0:1), (1:1:1).
inline std::vector<PlanePoint> default_general_points() {
    return {{Rational(1), Rational(0), Rational(0)},
            {Rational(0), Rational(1), Rational(0)},
            {Rational(0), Rational(0), Rational(1)},
            {Rational(1), Rational(1), Rational(1)}};
}

namespace detail {

/// Rank of an exact rational matrix by Gaussian elimination.
inline std::size_t matrix_rank(std::vector<std::vector<Rational>> m) {
    std::size_t rank = 0;
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t row = rank + 1; row < m.size(); ++row) {
            if (m[row][col] == 0) continue;
            Rational factor = m[row][col] / m[rank][col];
            for (std::size_t c = col; c < cols; ++c) m[row][c] -= factor * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Dimension of the space of homogeneous forms F of the given degree with
/// mult_{p_i} F >= m_i and divisor^divisor_mult dividing F. Writing
/// F = divisor^w * G, the conditions transfer to G as
/// mult_{p_i} G >= m_i - w * mult_{p_i}(divisor); a degree deficit after
/// factoring yields dimension 0 (not an error).
inline unsigned long plane_system_dim(unsigned degree, std::span<const BasePoint> base_points,
                                      const HomogeneousPoly& divisor, unsigned divisor_mult) {
    if (divisor.is_zero()) throw validation_error("divisor polynomial is identically zero");
    const long residual =
        static_cast<long>(degree) - static_cast<long>(divisor_mult) * divisor.degree();
    if (residual < 0) return 0;
    const unsigned gdeg = static_cast<unsigned>(residual);
    const std::size_t ncols = HomogeneousPoly::monomial_count(gdeg);

    std::vector<std::vector<Rational>> rows;
    for (const auto& bp : base_points) {
        const unsigned div_mult = divisor.multiplicity_at(bp.point);
        const long needed = static_cast<long>(bp.multiplicity) -
                            static_cast<long>(divisor_mult) * static_cast<long>(div_mult);
        if (needed <= 0) continue;
        // All derivative functionals of order < needed, evaluated monomial-wise.
        std::vector<HomogeneousPoly> basis;
        for (unsigned a = 0; a <= gdeg; ++a)
            for (unsigned b = 0; a + b <= gdeg; ++b) {
                HomogeneousPoly mono(gdeg);
                mono.coeff(a, b) = 1;
                basis.push_back(std::move(mono));
            }
        std::vector<std::array<unsigned, 3>> orders;
        for (unsigned dx = 0; dx < static_cast<unsigned>(needed); ++dx)
            for (unsigned dy = 0; dx + dy < static_cast<unsigned>(needed); ++dy)
                for (unsigned dz = 0; dx + dy + dz < static_cast<unsigned>(needed); ++dz)
                    orders.push_back({dx, dy, dz});
        for (const auto& ord : orders) {
            std::vector<Rational> row;
            row.reserve(ncols);
            for (const auto& mono : basis) {
                HomogeneousPoly d = mono;
                for (unsigned i = 0; i < ord[0]; ++i) d = d.derivative(0);
                for (unsigned i = 0; i < ord[1]; ++i) d = d.derivative(1);
                for (unsigned i = 0; i < ord[2]; ++i) d = d.derivative(2);
                row.push_back(d.evaluate(bp.point));
            }
            rows.push_back(std::move(row));
        }
    }
    const std::size_t rank = detail::matrix_rank(std::move(rows));
    return static_cast<unsigned long>(ncols - rank);
}

inline unsigned long plane_system_dim(unsigned degree, const std::vector<BasePoint>& base_points,
                                      const HomogeneousPoly& divisor, unsigned divisor_mult) {
    return plane_system_dim(degree, std::span<const BasePoint>(base_points), divisor,
                            divisor_mult);
}

}  // namespace fanocm
