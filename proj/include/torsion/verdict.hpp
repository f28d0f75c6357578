#pragma once

// Finiteness verdicts for E1(K_{E2,p})[p^inf], for E(L)[p^inf] over a
// described extension L, for the maximal unramified extension, and across
// different primes. Every verdict carries the rule that produced it and the
// status of each premise.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "torsion/reduction.hpp"
#include "torsion/towers.hpp"
#include "torsion/zp.hpp"

namespace torsion::verdict {

enum class Outcome { Finite, Infinite, ConditionallyFinite, Undetermined };
enum class PremiseStatus { Certified, Assumed, Unverifiable };

std::string to_string(Outcome o);
std::string to_string(PremiseStatus s);
std::optional<Outcome> outcome_from_string(const std::string& s);
std::optional<PremiseStatus> premise_status_from_string(const std::string& s);

struct Premise {
    std::string text;
    PremiseStatus status = PremiseStatus::Certified;
    bool operator==(const Premise&) const = default;
};

struct RuleTrace {
    std::string rule_id;
    std::string citation;
    std::vector<Premise> premises;
    bool operator==(const RuleTrace&) const = default;
};

struct Verdict {
    Outcome outcome = Outcome::Undetermined;
    RuleTrace trace;
    /// Unmet or unverifiable hypotheses behind a ConditionallyFinite outcome.
    std::vector<std::string> hypotheses;
    /// Why an Undetermined outcome was not decided.
    std::string reason;
    /// The invariant e(E) reported by the unramified-tower rule.
    std::optional<int> e;

    bool operator==(const Verdict&) const = default;
};

/// Polynomials over Q, lowest degree first.
using Poly = std::vector<mpq_class>;

/// (x, y) -> (xn(x)/xd(x), y * yn(x)/yd(x)) between models with a1 = a3 = 0.
struct RationalMap {
    Poly x_num, x_den, y_num, y_den;
    bool operator==(const RationalMap&) const = default;
};

/// Evidence of a non-zero isogeny E2 -> E1 defined over K.
struct IsogenyCertificate {
    enum class Kind { SameCurve, ExplicitMap, UserAsserted };
    Kind kind = Kind::UserAsserted;
    std::optional<RationalMap> map;
    /// Set once the map has been checked against both curve equations.
    bool verified = false;
    std::string note;

    bool operator==(const IsogenyCertificate&) const = default;
};

std::string to_string(IsogenyCertificate::Kind k);

/// SameCurve certificate when E1 and E2 are isomorphic over K (detected for
/// identical models and, when j != 0, 1728, through the square class of the scaling).
std::optional<IsogenyCertificate> detect_isomorphism(const reduction::RationalWeierstrass& e1,
                                                     const reduction::RationalWeierstrass& e2);

/// Checks an ExplicitMap certificate from E2 to E1 exactly over Q; throws
/// InvalidCertificate on failure and returns the certificate marked verified.
IsogenyCertificate verify_certificate(IsogenyCertificate cert, const reduction::RationalWeierstrass& e1,
                                      const reduction::RationalWeierstrass& e2);

struct DecideOptions {
    unsigned precision = zp::kDefaultPrecision;
};

/// Finiteness of E1(K_{E2,p})[p^inf].
Verdict decide_pair(const reduction::ReductionProfile& e1, const reduction::ReductionProfile& e2,
                    const std::optional<IsogenyCertificate>& isogeny = std::nullopt,
                    const DecideOptions& options = {});

/// Classifies both curves, detects isomorphisms and verifies explicit maps, then decides.
Verdict decide_pair_curves(const reduction::RationalWeierstrass& e1, const reduction::RationalWeierstrass& e2,
                           std::optional<IsogenyCertificate> isogeny = std::nullopt,
                           const reduction::ClassifyOptions& classify_options = {},
                           const DecideOptions& options = {});

/// Finiteness of E(L)[p^inf] for a declaratively described L.
Verdict decide_over_extension(const reduction::ReductionProfile& profile, const towers::ExtensionDescriptor& ext);

/// Finiteness of E(K^ur)[p^inf] for good ordinary E.
Verdict decide_unramified(const reduction::ReductionProfile& profile);

/// A(K_{B,l2})[l1^inf] for distinct primes.
Verdict cross_prime(u64 l1, u64 l2);

/// Rule identifiers the engine can emit, with their citation statements.
struct RuleInfo {
    const char* rule_id;
    const char* citation;
};
const std::vector<RuleInfo>& rule_table();

}  // namespace torsion::verdict
