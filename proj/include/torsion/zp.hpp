#pragma once

// Fixed-precision p-adic integers, Hensel lifting, square classes of Q_p^x
// and the quadratic extensions of Q_p for odd p.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "torsion/arith.hpp"

namespace torsion::zp {

inline constexpr unsigned kDefaultPrecision = 20;

/// An element of Z_p known modulo p^N. Values at different precisions are
/// never compared or combined implicitly.
class PadicInt {
public:
    PadicInt(u64 p, unsigned precision, const mpz_class& value);
    static PadicInt from_rational(const mpq_class& x, u64 p, unsigned precision);

    u64 prime() const noexcept { return p_; }
    unsigned precision() const noexcept { return precision_; }
    const mpz_class& value() const noexcept { return value_; }
    mpz_class modulus() const { return ipow(p_, precision_); }

    bool is_unit() const { return mod_floor(value_, p_) != 0; }
    bool is_zero() const { return value_ == 0; }
    /// nullopt when the value is 0 mod p^N.
    std::optional<unsigned> valuation() const;

    PadicInt operator+(const PadicInt& rhs) const;
    PadicInt operator-(const PadicInt& rhs) const;
    PadicInt operator-() const;
    PadicInt operator*(const PadicInt& rhs) const;
    PadicInt pow(const mpz_class& exp) const;
    PadicInt inverse() const;
    /// Image modulo p^M for M <= N.
    PadicInt reduce(unsigned precision) const;

    bool operator==(const PadicInt& rhs) const;
    bool operator!=(const PadicInt& rhs) const { return !(*this == rhs); }

private:
    void check_compatible(const PadicInt& rhs) const;

    u64 p_;
    unsigned precision_;
    mpz_class value_;
};

/// The unit root of T^2 - a_p T + p, i.e. the Frobenius eigenvalue on the
/// etale part of the p-divisible group of an ordinary reduction.
PadicInt hensel_unit_root(const mpz_class& a_p, u64 p, unsigned precision = kDefaultPrecision);

/// Square root of a modulo p^N for a unit a that is a square mod p.
std::optional<mpz_class> sqrt_mod_prime_power(const mpz_class& a, u64 p, unsigned precision);

/// The (p-1)-th root of unity congruent to a mod p.
PadicInt teichmuller_lift(u64 residue, u64 p, unsigned precision);

/// For w == 1 (mod p): the n modulo p^{N-1} with (1+p)^n == w (mod p^N).
PadicInt principal_log(const PadicInt& w);

/// Q_p^x / (Q_p^x)^2 for odd p: bit 0 = non-residue unit u, bit 1 = uniformiser p.
enum class SquareClass : unsigned { One = 0, U = 1, P = 2, UP = 3 };

inline SquareClass operator*(SquareClass a, SquareClass b) {
    return static_cast<SquareClass>(static_cast<unsigned>(a) ^ static_cast<unsigned>(b));
}

std::string to_string(SquareClass c);

SquareClass square_class(const mpq_class& x, u64 p);

/// 1, u, p or u*p, with u the smallest positive non-residue mod p.
mpz_class representative(SquareClass c, u64 p);

class QuadraticLocalField {
public:
    enum class Kind { Trivial, Unramified, RamifiedP, RamifiedUP };

    QuadraticLocalField(u64 p, Kind kind);
    static QuadraticLocalField from_class(u64 p, SquareClass c);
    /// Q_p(sqrt(d)).
    static QuadraticLocalField from_discriminant(const mpq_class& d, u64 p);

    u64 prime() const noexcept { return p_; }
    Kind kind() const noexcept { return kind_; }
    SquareClass square_class() const noexcept;
    bool is_degenerate() const noexcept { return kind_ == Kind::Trivial; }
    /// Canonical d with this field equal to Q_p(sqrt(d)).
    mpz_class discriminant() const { return representative(square_class(), p_); }

    bool operator==(const QuadraticLocalField& rhs) const noexcept { return p_ == rhs.p_ && kind_ == rhs.kind_; }

private:
    u64 p_;
    Kind kind_;
};

std::string to_string(QuadraticLocalField::Kind k);
std::optional<QuadraticLocalField::Kind> kind_from_string(const std::string& s);

/// Same square class; both fields must be genuine quadratic extensions.
bool quadratic_fields_equal(const QuadraticLocalField& f1, const QuadraticLocalField& f2);

using NormOnePair = std::pair<mpz_class, mpz_class>;

/// At least `count` distinct (x, y) modulo p^N with x^2 - d y^2 == 1, found by
/// lifting x from x^2 = 1 + d y^2. The first pair is always (1, 0).
std::vector<NormOnePair> norm_one_units(const mpz_class& d, u64 p, unsigned precision, std::size_t count);
std::vector<NormOnePair> norm_one_units(const QuadraticLocalField& field, unsigned precision, std::size_t count);

}  // namespace torsion::zp
