#pragma once

// Exact arithmetic over small finite fields F_{p^n} and point counting on
// short Weierstrass curves over them.

#include <cstdint>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "torsion/arith.hpp"

namespace torsion::ff {

inline constexpr u64 kDefaultBudget = 10'000'000;

/// F_p[x]/(f) with f the first monic irreducible of degree n, where monic
/// polynomials are ordered by their coefficient vectors read as base-p
/// integers (constant term least significant). Only p >= 5 is supported.
class FiniteField {
public:
    static std::shared_ptr<const FiniteField> create(u64 p, unsigned n);

    u64 characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return n_; }
    /// Monic modulus, coefficients low to high, size n + 1.
    const std::vector<u64>& modulus() const noexcept { return modulus_; }
    /// p^n exactly.
    const mpz_class& order() const noexcept { return order_; }

    bool operator==(const FiniteField& other) const noexcept {
        return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
    }

private:
    FiniteField(u64 p, unsigned n, std::vector<u64> modulus);

    u64 p_;
    unsigned n_;
    std::vector<u64> modulus_;
    mpz_class order_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// Lowest monic irreducible of degree n over F_p in the ordering above.
std::vector<u64> lowest_irreducible(u64 p, unsigned n);

/// Rabin's test for a monic polynomial (coefficients low to high).
bool is_irreducible(const std::vector<u64>& monic, u64 p);

class FqElement {
public:
    FqElement(FieldPtr field, std::vector<u64> coeffs);
    static FqElement zero(FieldPtr field);
    static FqElement constant(FieldPtr field, i64 c);
    static FqElement constant(FieldPtr field, const mpz_class& c);

    const FieldPtr& field() const noexcept { return field_; }
    const std::vector<u64>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept;

    FqElement operator+(const FqElement& rhs) const;
    FqElement operator-(const FqElement& rhs) const;
    FqElement operator-() const;
    FqElement operator*(const FqElement& rhs) const;
    FqElement pow(const mpz_class& exp) const;
    FqElement inverse() const;

    bool operator==(const FqElement& rhs) const;
    bool operator!=(const FqElement& rhs) const { return !(*this == rhs); }

private:
    void check_compatible(const FqElement& rhs) const;

    FieldPtr field_;
    std::vector<u64> coeffs_;
};

/// y^2 = x^3 + a4 x + a6 over F_{p^n}, nonsingular.
class CurveOverFq {
public:
    CurveOverFq(FqElement a4, FqElement a6);
    /// Convenience for prime fields.
    static CurveOverFq over_prime(u64 p, i64 a4, i64 a6);

    const FieldPtr& field() const noexcept { return a4_.field(); }
    u64 characteristic() const noexcept { return field()->characteristic(); }
    unsigned degree() const noexcept { return field()->degree(); }
    const FqElement& a4() const noexcept { return a4_; }
    const FqElement& a6() const noexcept { return a6_; }

    /// The same equation read over F_{p^m}; requires a prime-field curve.
    CurveOverFq base_change(unsigned m) const;

private:
    FqElement a4_;
    FqElement a6_;
};

struct TowerCount {
    u64 p = 0;
    unsigned n = 0;
    mpz_class group_order;
    mpz_class trace;
    mpz_class p_primary_order;
};

/// |E(F_{p^n})| by exhaustive enumeration, point at infinity included.
u64 count_points(const CurveOverFq& curve, u64 budget = kDefaultBudget);

/// a_p = p + 1 - N_p for a curve over a prime field.
i64 trace_of_frobenius(const CurveOverFq& curve, u64 budget = kDefaultBudget);

/// a_{p^m} from a_p via a_{p^k} = a_p a_{p^{k-1}} - p a_{p^{k-2}}, a_{p^0} = 2.
mpz_class weil_trace(i64 a_p, u64 p, unsigned m);

/// Group order and p-primary part over F_{p^m}, without enumeration.
TowerCount tower_count(const CurveOverFq& curve, unsigned m, u64 budget = kDefaultBudget);
TowerCount tower_count_from_trace(i64 a_p, u64 p, unsigned m);

/// a_p == 0 (mod p), which for p >= 5 means a_p == 0.
bool is_supersingular(const CurveOverFq& curve, u64 budget = kDefaultBudget);

}  // namespace torsion::ff
