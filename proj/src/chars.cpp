#include "torsion/chars.hpp"

#include <algorithm>
#include <numeric>

#include "torsion/error.hpp"

namespace torsion::chars {

UnramifiedCharacter character_from_trace(i64 a_p, u64 p, unsigned residue_degree, unsigned precision) {
    if (precision < 2) throw Error(ErrorKind::InvalidArgument, "character needs precision >= 2");
    if (residue_degree == 0) throw Error(ErrorKind::InvalidArgument, "residue degree must be >= 1");
    // Frobenius of F_{p^f} is the f-th power of Frobenius of F_p
    const auto frob = zp::hensel_unit_root(a_p, p, precision).pow(residue_degree);
    const u64 residue = mod_floor(frob.value(), p);
    const u64 g = primitive_root(p);
    const auto teich = zp::teichmuller_lift(residue, p, precision);
    return UnramifiedCharacter{
        p,
        residue_degree,
        frob,
        residue,
        multiplicative_order(residue, p),
        discrete_log(residue, g, p),
        zp::principal_log(frob * teich.inverse()),
    };
}

UnramifiedCharacter character_of(const reduction::ReductionProfile& profile, unsigned precision) {
    if (profile.type != reduction::ReductionType::GoodOrdinary || !profile.trace) {
        throw Error(ErrorKind::NotOrdinary, "unit-root character needs good ordinary reduction, got " +
                                                reduction::to_string(profile.type));
    }
    return character_from_trace(*profile.trace, profile.p, profile.residue_degree, precision);
}

namespace {

void check_same_prime(const UnramifiedCharacter& a, const UnramifiedCharacter& b) {
    if (a.p != b.p) throw Error(ErrorKind::PrimeMismatch, "characters at different primes");
}

}  // namespace

bool condition_d(const UnramifiedCharacter& chi1, const UnramifiedCharacter& chi2) {
    check_same_prime(chi1, chi2);
    // cyclic group: subgroup containment is divisibility of orders
    return chi2.order_mod_p % chi1.order_mod_p == 0;
}

u64 kernel_index(u64 m, u64 p) { return (p - 1) / std::gcd(p - 1, m); }

bool condition_c(const UnramifiedCharacter& chi1, const UnramifiedCharacter& chi2) {
    check_same_prime(chi1, chi2);
    for (const auto* chi : {&chi1, &chi2}) {
        if (chi->n.is_zero()) {
            throw Error(ErrorKind::PrecisionLoss, "cannot certify infinite order: n vanishes mod p^" +
                                                      std::to_string(chi->n.precision()));
        }
    }
    return kernel_index(chi2.m, chi2.p) % kernel_index(chi1.m, chi1.p) == 0;
}

std::vector<u64> generated_subgroup(u64 m, u64 p) {
    const u64 h = powmod(primitive_root(p), m, p);
    std::vector<u64> out{1};
    for (u64 x = h; x != 1; x = mulmod(x, h, p)) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

bool subgroup_contains(u64 m1, u64 m2, u64 p) {
    const auto sub = generated_subgroup(m1, p);
    const auto super = generated_subgroup(m2, p);
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

u64 division_field_mod_p_degree(const UnramifiedCharacter& chi) { return chi.order_mod_p; }

}  // namespace torsion::chars
