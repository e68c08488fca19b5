#pragma once

// Exact top-intersection numbers on X = Bl_{C_1..C_k} P(V) over a curve.
//
// Every degree-r monomial in the generators pi^*xi, pi^*f, E_j closes under
// six rules (a = xi-exponent, b = f-exponent, k = E_j-exponent, a+b+k = r):
//
//   (r,0,0)            -> deg V
//   (r-1,1,0)          -> 1
//   b >= 2             -> 0
//   1 <= k <= r-2      -> 0           (forced by b >= 2 on the E_j side too)
//   k = r-1, a+b = 1   -> (-1)^r * (xi.C_j  if a=1,  1 if b=1)
//   k = r              -> (-1)^(r-1) * deg W_j,   deg W_j = -deg N_{C_j}
//
// Monomials mixing distinct E_i, E_j vanish (the centers are disjoint
// sections). These rules come from O_{E_j}(-E_j) = O_{P(W_j)}(1) together
// with the projection formula.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fanocm/errors.hpp"
#include "fanocm/family.hpp"
#include "fanocm/numeric.hpp"

namespace fanocm {

namespace detail {

/// Value of pi^*xi^a . pi^*f^b . prod_j E_j^{k_j} with a+b+sum k = r.
inline Rational monomial_value(const FamilyDescriptor& fam, std::size_t a, std::size_t b,
                               const std::vector<std::size_t>& k) {
    const std::size_t r = fam.rank();
    std::size_t j = 0, nonzero = 0, kj = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] > 0) {
            ++nonzero;
            j = i;
            kj = k[i];
        }
    }
    if (nonzero >= 2) return Rational(0);
    if (nonzero == 0) {
        if (b == 0) return Rational(fam.deg_v());
        if (b == 1) return Rational(1);
        return Rational(0);
    }
    if (kj <= r - 2) return Rational(0);
    const int sign_r = (r % 2 == 0) ? 1 : -1;
    if (kj == r - 1) {
        if (a == 1) return Rational(sign_r) * Rational(fam.center_xi_degree(j));
        return Rational(sign_r);  // b == 1
    }
    // kj == r
    return Rational(-sign_r) * Rational(fam.center_conormal_degree(j));
}

}  // namespace detail

/// Multilinear expansion of the product of exactly r divisor classes.
inline Rational top_intersection(const FamilyDescriptor& fam,
                                 std::span<const DivisorClass> classes) {
    const std::size_t r = fam.rank();
    if (classes.size() != r)
        throw validation_error("top_intersection needs exactly " + std::to_string(r) +
                               " classes, got " + std::to_string(classes.size()));
    for (const auto& c : classes)
        if (c.e.size() != fam.centers().size())
            throw validation_error("divisor class has " + std::to_string(c.e.size()) +
                                   " exceptional coefficients, family has " +
                                   std::to_string(fam.centers().size()) + " centers");

    const std::size_t ngen = 2 + fam.centers().size();
    Rational total(0);
    std::vector<std::size_t> kcount(fam.centers().size(), 0);

    // Distribute each class over the generators; (ngen)^r terms, r is tiny.
    auto expand = [&](auto&& self, std::size_t depth, std::size_t a, std::size_t b,
                      const Rational& coeff) -> void {
        if (coeff == 0) return;
        if (depth == r) {
            total += coeff * detail::monomial_value(fam, a, b, kcount);
            return;
        }
        const DivisorClass& c = classes[depth];
        for (std::size_t g = 0; g < ngen; ++g) {
            if (g == 0) {
                self(self, depth + 1, a + 1, b, coeff * c.xi);
            } else if (g == 1) {
                self(self, depth + 1, a, b + 1, coeff * c.f);
            } else {
                const std::size_t j = g - 2;
                ++kcount[j];
                self(self, depth + 1, a, b, coeff * (-c.e[j]));
                --kcount[j];
            }
        }
    };
    expand(expand, 0, 0, 0, Rational(1));
    return total;
}

inline Rational top_intersection(const FamilyDescriptor& fam,
                                 const std::vector<DivisorClass>& classes) {
    return top_intersection(fam, std::span<const DivisorClass>(classes));
}

/// deg lambda_f = -(-K_{X/T})^{n+1}.
inline Rational cm_degree(const FamilyDescriptor& fam) {
    std::vector<DivisorClass> classes(fam.rank(), anticanonical_class(fam));
    return -top_intersection(fam, classes);
}

/// One term of the multinomial expansion of (-K_{X/T})^r; emitted by the CLI.
struct LedgerRow {
    std::string monomial;      // e.g. "xi^1.E1^2"
    Integer multiplicity;      // multinomial coefficient
    Rational coefficient;      // product of class coefficients
    Rational value;            // generator-rule value of the monomial
    Rational contribution;     // multiplicity * coefficient * value
};

/// Full monomial ledger of (-K)^r; the rows sum to -cm_degree.
inline std::vector<LedgerRow> cm_degree_ledger(const FamilyDescriptor& fam) {
    const std::size_t r = fam.rank();
    const DivisorClass mk = anticanonical_class(fam);
    const std::size_t ncen = fam.centers().size();
    std::vector<LedgerRow> rows;

    std::vector<std::size_t> expo(2 + ncen, 0);
    auto emit = [&]() {
        const std::size_t a = expo[0], b = expo[1];
        std::vector<std::size_t> k(expo.begin() + 2, expo.end());
        Rational value = detail::monomial_value(fam, a, b, k);
        Integer mult = factorial(r);
        Rational coeff(1);
        mult /= factorial(a) * factorial(b);
        coeff *= pow_rational(mk.xi, static_cast<long>(a)) * pow_rational(mk.f, static_cast<long>(b));
        auto power = [](const std::string& base, std::size_t exp) {
            return exp == 1 ? base : base + "^" + std::to_string(exp);
        };
        std::string name;
        if (a) name += power("xi", a);
        if (b) name += std::string(name.empty() ? "" : ".") + power("f", b);
        for (std::size_t j = 0; j < ncen; ++j) {
            if (!k[j]) continue;
            mult /= factorial(k[j]);
            coeff *= pow_rational(-mk.e[j], static_cast<long>(k[j]));
            name += std::string(name.empty() ? "" : ".") + power("E" + std::to_string(j + 1), k[j]);
        }
        Rational contrib = Rational(mult) * coeff * value;
        rows.push_back({name.empty() ? "1" : name, mult, coeff, value, contrib});
    };
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == expo.size()) {
            expo[pos] = left;
            emit();
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            expo[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, r);
    return rows;
}

/// Intersection numbers on the fiber Bl_{points} P^{r-1}. Classes restrict
/// as xi -> h, E_j -> E_j; the f component restricts to zero and is dropped.
/// Rules: h^{r-1} = 1, E_j^{r-1} = (-1)^{r-2}, all mixed monomials vanish.
inline Rational fiber_intersection(const FamilyDescriptor& fam,
                                   std::span<const DivisorClass> classes) {
    const std::size_t m = fam.fiber_dim();
    if (classes.size() != m)
        throw validation_error("fiber_intersection needs exactly " + std::to_string(m) +
                               " classes, got " + std::to_string(classes.size()));
    for (const auto& c : classes)
        if (c.e.size() != fam.centers().size())
            throw validation_error("divisor class does not match the family's centers");

    const std::size_t ncen = fam.centers().size();
    Rational total(0);
    std::vector<std::size_t> kcount(ncen, 0);
    auto expand = [&](auto&& self, std::size_t depth, std::size_t a, const Rational& coeff) -> void {
        if (coeff == 0) return;
        if (depth == m) {
            std::size_t nonzero = 0, kj = 0;
            for (std::size_t j = 0; j < ncen; ++j)
                if (kcount[j] > 0) {
                    ++nonzero;
                    kj = kcount[j];
                }
            Rational value(0);
            if (nonzero == 0 && a == m) value = 1;
            else if (nonzero == 1 && a == 0 && kj == m) value = ((m % 2 == 1) ? 1 : -1);
            total += coeff * value;
            return;
        }
        const DivisorClass& c = classes[depth];
        self(self, depth + 1, a + 1, coeff * c.xi);
        for (std::size_t j = 0; j < ncen; ++j) {
            ++kcount[j];
            self(self, depth + 1, a, coeff * (-c.e[j]));
            --kcount[j];
        }
    };
    expand(expand, 0, 0, Rational(1));
    return total;
}

inline Rational fiber_intersection(const FamilyDescriptor& fam,
                                   const std::vector<DivisorClass>& classes) {
    return fiber_intersection(fam, std::span<const DivisorClass>(classes));
}

struct NefWitness {
    std::string description;
    Rational value;  // strictly negative for a not_nef verdict
};

/// One-sided certificate: "passes_test_set" is not a nefness proof.
struct NefCertificate {
    enum class Verdict { not_nef, passes_test_set };
    Verdict verdict = Verdict::passes_test_set;
    std::optional<NefWitness> witness;
    // false when r != 3: only the test curves were evaluated (partial check).
    bool restriction_squares_checked = false;
};

/// Pairs the class against a curated curve set: the general fiber line, the
/// strict transform of a line through each center, each exceptional ruling,
/// and (for r = 3) the self-intersection of the restriction to each E_j via
///   (pi^*xi)|_{E_j} = (xi.C_j) F,  (pi^*f)|_{E_j} = F,  E_j|_{E_j} = -h,
///   h^2 = deg W_j,  h.F = 1,  F^2 = 0.
inline NefCertificate nef_test(const FamilyDescriptor& fam, const DivisorClass& cls) {
    if (cls.e.size() != fam.centers().size())
        throw validation_error("divisor class does not match the family's centers");
    NefCertificate cert;
    cert.restriction_squares_checked = (fam.rank() == 3);

    auto fail = [&](std::string what, Rational value) {
        cert.verdict = NefCertificate::Verdict::not_nef;
        cert.witness = NefWitness{std::move(what), std::move(value)};
    };

    // class . (general fiber line) = xi
    if (cls.xi < 0) {
        fail("general fiber line", cls.xi);
        return cert;
    }
    for (std::size_t j = 0; j < cls.e.size(); ++j) {
        Rational v = cls.xi - cls.e[j];  // strict transform of a line through C_j
        if (v < 0) {
            fail("line through center " + std::to_string(j + 1), v);
            return cert;
        }
        if (cls.e[j] < 0) {  // ruling F_j of E_j: E_j.F_j = -1
            fail("ruling of E" + std::to_string(j + 1), cls.e[j]);
            return cert;
        }
    }
    if (cert.restriction_squares_checked) {
        for (std::size_t j = 0; j < cls.e.size(); ++j) {
            // (class|_{E_j})^2 = 2 (xi * (xi.C_j) + f) e_j + e_j^2 deg W_j
            Rational sq = Rational(2) * (cls.xi * Rational(fam.center_xi_degree(j)) + cls.f) *
                              cls.e[j] +
                          cls.e[j] * cls.e[j] * Rational(fam.center_conormal_degree(j));
            if (sq < 0) {
                fail("(class|_E" + std::to_string(j + 1) + ")^2", sq);
                return cert;
            }
        }
    }
    return cert;
}

}  // namespace fanocm
