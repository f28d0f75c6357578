#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include <gmpxx.h>

namespace torsion {

using u64 = std::uint64_t;
using i64 = std::int64_t;

u64 mulmod(u64 a, u64 b, u64 m) noexcept;
u64 powmod(u64 base, u64 exp, u64 m) noexcept;

/// Deterministic for all 64-bit inputs.
bool is_prime(u64 n) noexcept;

/// Trial-division factorisation; intended for group orders like p - 1.
std::map<u64, unsigned> factor(u64 n);

/// Least non-negative residue of a mod m.
u64 mod_floor(i64 a, u64 m) noexcept;
u64 mod_floor(const mpz_class& a, u64 m);

/// Legendre symbol (a | p) for an odd prime p.
int legendre(const mpz_class& a, u64 p);

/// Order of a in (Z/p)^x; a must be a unit.
u64 multiplicative_order(u64 a, u64 p);

/// Smallest positive generator of (Z/p)^x.
u64 primitive_root(u64 p);

/// Smallest positive quadratic non-residue mod an odd prime p.
u64 smallest_nonresidue(u64 p);

/// Discrete logarithm of a to base g in (Z/p)^x, by exhaustive walk.
u64 discrete_log(u64 a, u64 g, u64 p);

/// p-adic valuation; nullopt stands for +infinity (x == 0).
std::optional<long> valuation(const mpz_class& x, u64 p);
std::optional<long> valuation(const mpq_class& x, u64 p);

/// x * p^{-v_p(x)}, i.e. strip every factor of p from numerator and denominator.
mpq_class unit_part(const mpq_class& x, u64 p);

/// Reduce a p-integral rational modulo p^k.
mpz_class reduce_mod(const mpq_class& x, const mpz_class& modulus);

mpz_class ipow(u64 base, unsigned long exp);

}  // namespace torsion
