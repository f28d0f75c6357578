#pragma once

// The unramified unit-root character of an ordinary elliptic curve and the
// comparison of two such characters.

#include <vector>

#include "torsion/arith.hpp"
#include "torsion/reduction.hpp"
#include "torsion/zp.hpp"

namespace torsion::chars {

/// chi(Frob_k) for k = F_{p^f}, split along Z_p^x = Z/(p-1) x (1 + pZ_p).
struct UnramifiedCharacter {
    u64 p;
    unsigned residue_degree;
    zp::PadicInt frobenius_value;
    u64 mod_p_value;
    u64 order_mod_p;
    /// Discrete log of mod_p_value to the smallest primitive root mod p.
    u64 m;
    /// log_{1+p} of frobenius_value / teichmuller(mod_p_value), precision N - 1.
    zp::PadicInt n;
};

UnramifiedCharacter character_from_trace(i64 a_p, u64 p, unsigned residue_degree, unsigned precision);
/// Requires good ordinary reduction.
UnramifiedCharacter character_of(const reduction::ReductionProfile& profile,
                                 unsigned precision = zp::kDefaultPrecision);

/// Im(chi1 mod p) inside Im(chi2 mod p).
bool condition_d(const UnramifiedCharacter& chi1, const UnramifiedCharacter& chi2);
/// ker(chi2) inside ker(chi1), through the index (p-1)/gcd(p-1, m).
bool condition_c(const UnramifiedCharacter& chi1, const UnramifiedCharacter& chi2);

/// Kernel index of a character with finite part m: (p-1)/gcd(p-1, m).
u64 kernel_index(u64 m, u64 p);
/// The subgroup of F_p^x generated by g^m, listed by repeated multiplication.
std::vector<u64> generated_subgroup(u64 m, u64 p);
bool subgroup_contains(u64 m1, u64 m2, u64 p);

/// [k(E~[p]) : k].
u64 division_field_mod_p_degree(const UnramifiedCharacter& chi);

}  // namespace torsion::chars
