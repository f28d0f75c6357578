#pragma once

// Supernatural numbers as degrees of infinite algebraic extensions of a
// finite field, and declarative descriptors of extensions L/K.

#include <map>
#include <optional>
#include <string>

#include "torsion/arith.hpp"
#include "torsion/reduction.hpp"

namespace torsion::towers {

/// An exponent in N u {inf}, or "finite but not computed".
struct Exponent {
    enum class Kind { Finite, FiniteUnknown, Infinite };
    Kind kind = Kind::Finite;
    unsigned value = 0;  // meaningful for Kind::Finite only

    static Exponent finite(unsigned v) { return {Kind::Finite, v}; }
    static Exponent unknown() { return {Kind::FiniteUnknown, 0}; }
    static Exponent infinite() { return {Kind::Infinite, 0}; }

    bool is_finite() const noexcept { return kind != Kind::Infinite; }
    bool is_zero() const noexcept { return kind == Kind::Finite && value == 0; }
    bool operator==(const Exponent&) const = default;
};

std::string to_string(const Exponent& e);
std::optional<Exponent> exponent_from_string(const std::string& s);

Exponent max(const Exponent& a, const Exponent& b);
/// a <= b, or nullopt when an unknown finite value makes it undecidable.
std::optional<bool> less_equal(const Exponent& a, const Exponent& b);

/// prod over primes l of l^{e_l}. Primes not listed carry the `rest` exponent.
class Supernatural {
public:
    Supernatural() = default;
    /// The ordinary integer n >= 1.
    static Supernatural of(u64 n);
    /// Exponent e at every prime.
    static Supernatural uniform(Exponent e);

    Exponent exponent(u64 prime) const;
    const Exponent& rest() const noexcept { return rest_; }
    const std::map<u64, Exponent>& entries() const noexcept { return entries_; }

    Supernatural& set(u64 prime, Exponent e);
    Supernatural& set_rest(Exponent e);

    bool is_integer() const;
    /// The value when all exponents are known and finite.
    std::optional<mpz_class> to_integer() const;

    std::string to_string() const;
    bool operator==(const Supernatural&) const = default;

private:
    void normalize();

    std::map<u64, Exponent> entries_;
    Exponent rest_ = Exponent::finite(0);
};

Supernatural lcm(const Supernatural& a, const Supernatural& b);
/// Pointwise <=; nullopt when unknown finite exponents leave it open.
std::optional<bool> divides(const Supernatural& a, const Supernatural& b);

/// True iff the p-exponent of deg is finite.
bool is_potential_prime_to_p(const Supernatural& deg, u64 p);

/// Declarative description of an algebraic extension L of K. Nothing here is
/// verified by the engine.
struct ExtensionDescriptor {
    Supernatural residue_degree;  // [k_L : k]
    bool contains_mu_p_infinity = false;
    bool is_galois_over_K = false;
    /// L contains every root of unity, i.e. models K(mu_inf).
    bool contains_all_roots_of_unity = false;
    /// L contains K(E[p]) for the curve under consideration.
    bool contains_E_p = false;
    /// Whether L contains the full p-power division field K_{E,p}; nullopt if unstated.
    std::optional<bool> contains_K_E_p;
    std::string label;

    bool operator==(const ExtensionDescriptor&) const = default;
};

/// Residue degree over k of L(mu_{p^inf}).
Supernatural cyclotomic_residue(const ExtensionDescriptor& base, u64 p);

/// Residue degree over k of K_{E,p}, the field of all p-power torsion of E.
Supernatural division_tower_residue(const reduction::ReductionProfile& profile, u64 p);

}  // namespace torsion::towers
