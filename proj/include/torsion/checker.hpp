#pragma once

// Brute-force cross-checks of the residue-level and precision-level facts
// the verdict engine relies on.

#include <string>
#include <vector>

#include <json.hpp>

#include "torsion/reduction.hpp"
#include "torsion/zp.hpp"

namespace torsion::checker {

struct CheckReport {
    std::string check_name;
    nlohmann::json parameters = nlohmann::json::object();
    u64 cases_run = 0;
    /// Each failure carries every input needed to replay it.
    std::vector<nlohmann::json> failures;
    std::vector<std::string> notes;
    double elapsed_seconds = 0.0;
    u64 seed = 0;

    bool passed() const noexcept { return failures.empty(); }
};

/// p | N_{p^m} exactly when ord(a_p mod p) | m (ordinary), never (supersingular), for m <= m_max.
/// Levels with p^m <= kEnumerationLimit are also counted by enumeration.
CheckReport check_tower_law(const reduction::RationalWeierstrass& curve, unsigned m_max);
inline constexpr u64 kEnumerationLimit = 20'000;

/// Kernel containment by the gcd formula against subgroup containment in F_p^x,
/// over all (m1, m2) in (Z/(p-1))^2.
CheckReport check_condition_equivalence(u64 p);

/// Norm-one elements of F1 whose norm from the compositum down to F1 is not 1,
/// and symmetrically for F2, each checked by two norm computations.
CheckReport check_norm_kernel(const zp::QuadraticLocalField& f1, const zp::QuadraticLocalField& f2,
                              unsigned precision, u64 seed = 0);

/// u^2 - a_p u + p == 0 mod p^N, u == a_p mod p, v(p/u) == 1.
CheckReport check_unit_root(const reduction::RationalWeierstrass& curve, unsigned precision);

/// Every check at p, with curves sampled from the seed.
std::vector<CheckReport> run_all(u64 p, u64 seed = 0, unsigned precision = zp::kDefaultPrecision);

}  // namespace torsion::checker
