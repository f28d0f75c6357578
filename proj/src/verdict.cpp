#include "torsion/verdict.hpp"

#include <algorithm>
#include <map>

#include "torsion/chars.hpp"
#include "torsion/error.hpp"

namespace torsion::verdict {

using reduction::CmStatus;
using reduction::FcmStatus;
using reduction::PotentialType;
using reduction::Provenance;
using reduction::ReductionProfile;
using reduction::ReductionType;

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Finite: return "Finite";
        case Outcome::Infinite: return "Infinite";
        case Outcome::ConditionallyFinite: return "ConditionallyFinite";
        case Outcome::Undetermined: return "Undetermined";
    }
    return "?";
}

std::string to_string(PremiseStatus s) {
    switch (s) {
        case PremiseStatus::Certified: return "certified";
        case PremiseStatus::Assumed: return "assumed";
        case PremiseStatus::Unverifiable: return "unverifiable";
    }
    return "?";
}

std::optional<Outcome> outcome_from_string(const std::string& s) {
    for (auto o : {Outcome::Finite, Outcome::Infinite, Outcome::ConditionallyFinite, Outcome::Undetermined}) {
        if (to_string(o) == s) return o;
    }
    return std::nullopt;
}

std::optional<PremiseStatus> premise_status_from_string(const std::string& s) {
    for (auto st : {PremiseStatus::Certified, PremiseStatus::Assumed, PremiseStatus::Unverifiable}) {
        if (to_string(st) == s) return st;
    }
    return std::nullopt;
}

std::string to_string(IsogenyCertificate::Kind k) {
    switch (k) {
        case IsogenyCertificate::Kind::SameCurve: return "same_curve";
        case IsogenyCertificate::Kind::ExplicitMap: return "explicit_map";
        case IsogenyCertificate::Kind::UserAsserted: return "user_asserted";
    }
    return "?";
}

const std::vector<RuleInfo>& rule_table() {
    static const std::vector<RuleInfo> rules = {
        {"ord_over_nonordinary_tower",
         "A curve with potentially ordinary good reduction has finite torsion over K_{E,p} whenever E has "
         "potentially multiplicative or potentially supersingular reduction: the residue field of K_{E,p} is finite."},
        {"ord_ord_image_containment",
         "Ordinary E1, E2 and p >= 3: if the image of the mod-p unit-root character of E1 lies in that of E2, "
         "then E1(K_{E2,p})[p^inf] is infinite."},
        {"ord_ord_open",
         "Ordinary E1, E2 with non-nested mod-p character images: infinitude is known to imply only the weaker "
         "Galois-kernel condition, so finiteness is left open (infinite in many cases)."},
        {"ss_over_ordinary_tower",
         "Potentially supersingular E1 and potentially ordinary E2: E1(K_{E2,p})[p^inf] is finite, by comparing "
         "the Lie algebras of the two p-adic images."},
        {"ss_over_multiplicative_tower",
         "Potentially supersingular E1 and E2 with v(j(E2)) < 0: E1(K_{E2,p})[p^inf] is finite, by comparing "
         "the Lie algebras of the two p-adic images."},
        {"ss_fcm_mismatch",
         "Potentially supersingular E1, E2 of which exactly one has formal complex multiplication: "
         "E1(K_{E2,p})[p^inf] is finite."},
        {"ss_fcm_distinct_fields",
         "Supersingular E1, E2 with formal complex multiplication by distinct quadratic fields F1 != F2: "
         "E1(K_{E2,p})[p^inf] is finite, since the norm-one kernels of F1 and F2 are not nested."},
        {"ss_fcm_equal_fields_open",
         "Supersingular E1, E2 with formal complex multiplication by the same quadratic field: the decision "
         "table does not settle this case."},
        {"ss_formal_isogeny",
         "Supersingular E1, E2 without formal complex multiplication: a non-trivial homomorphism of formal "
         "groups from E2 to E1 over O_K makes E1(K_{E2,p})[p^inf] infinite."},
        {"ss_nonfcm_open",
         "Supersingular E1, E2 without formal complex multiplication: finite or infinite case by case; infinitude "
         "forces a formal-group homomorphism over some finite extension of K."},
        {"split_mult_tate_curve",
         "Split multiplicative E1 is a Tate curve, so E1(K(mu_{p^inf}))[p^inf] is infinite; every K_{E2,p} "
         "contains mu_{p^inf}."},
        {"nonsplit_mult_rational_p_torsion",
         "Non-split multiplicative E1, p odd, and E2[p] rational over K: E1(K_{E2,p})[p^inf] is finite."},
        {"nonsplit_mult_character_hypothesis",
         "Non-split multiplicative E1 over L containing mu_{p^inf}: E1(L)[p^inf] is finite exactly when the "
         "quadratic unramified character of E1 stays non-trivial on G_L, i.e. K_chi is not inside L."},
        {"isogeny_hom",
         "A non-zero G_K-equivariant map T_p(E2) -> T_p(E1) leaves a non-zero quotient of T_p(E2) inside "
         "T_p(E1) fixed by G_{K_{E2,p}}, so E1(K_{E2,p})[p^inf] is infinite."},
        {"ordinary_prime_to_p_residue",
         "Potentially ordinary A and an algebraic extension L: if the residue field of L(mu_{p^inf}) is a "
         "potential prime-to-p extension of k, then A(L)[p^inf] is finite."},
        {"ordinary_wild_residue",
         "Good ordinary A and L Galois over K containing K(mu_{p^inf}) and K(A[p]): A(L)[p^inf] is finite "
         "exactly when k_L is a potential prime-to-p extension of k."},
        {"nonsplit_mult_prime_to_2",
         "Non-split multiplicative E over L containing mu_{p^inf}: when k_L has odd degree over k the quadratic "
         "unramified character stays non-trivial on G_L and E(L)[p^inf] is finite."},
        {"nonsplit_mult_character_killed",
         "Non-split multiplicative E over L containing mu_{p^inf}: when k_L contains the quadratic extension of k "
         "the character becomes trivial on G_L and E(L)[p^inf] is infinite."},
        {"split_mult_cyclotomic",
         "Split multiplicative E: E(L)[p^inf] is infinite for every L containing mu_{p^inf} (Tate parametrisation)."},
        {"supersingular_division_field",
         "Supersingular E and L Galois over K: E(L)[p^inf] is finite exactly when K_{E,p} is not contained in L, "
         "since V_p(E) is an irreducible G_K-module."},
        {"unramified_cm",
         "Good ordinary E: E(K^ur)[p^inf] is infinite exactly when the p-adic representation is abelian, i.e. "
         "when E has complex multiplication; then e(E) = 1."},
        {"unramified_non_cm",
         "Good ordinary E without complex multiplication: the p-adic representation is not abelian, "
         "E(K^ur)[p^inf] is finite and e(E) = 0."},
        {"cross_prime",
         "For distinct primes l1 != l2, K_{B,l2} is a potential prime-to-l1 extension of K, so A(K_{B,l2})[l1^inf] "
         "is finite."},
    };
    return rules;
}

namespace {

const char* citation_of(const std::string& rule_id) {
    for (const auto& rule : rule_table()) {
        if (rule_id == rule.rule_id) return rule.citation;
    }
    throw Error(ErrorKind::InvalidArgument, "internal: unknown rule " + rule_id);
}

class Builder {
public:
    explicit Builder(std::string rule_id) { v_.trace.rule_id = std::move(rule_id); }

    Builder& certified(std::string text) { return add(std::move(text), PremiseStatus::Certified); }
    Builder& sourced(std::string text, Provenance source) {
        switch (source) {
            case Provenance::Computed: return add(std::move(text), PremiseStatus::Certified);
            case Provenance::Annotated: return add(text + " (annotated)", PremiseStatus::Certified);
            case Provenance::Assumed: return add(text + " (assumed)", PremiseStatus::Assumed);
        }
        return *this;
    }
    Builder& unverifiable(std::string text) {
        v_.hypotheses.push_back(text);
        return add(std::move(text), PremiseStatus::Unverifiable);
    }

    Verdict finite() { return finish(Outcome::Finite); }
    Verdict infinite() { return finish(Outcome::Infinite); }
    Verdict conditionally_finite() { return finish(Outcome::ConditionallyFinite); }
    Verdict undetermined(std::string reason) {
        v_.reason = std::move(reason);
        return finish(Outcome::Undetermined);
    }
    Builder& e(int value) {
        v_.e = value;
        return *this;
    }

private:
    Builder& add(std::string text, PremiseStatus status) {
        v_.trace.premises.push_back({std::move(text), status});
        return *this;
    }

    Verdict finish(Outcome outcome) {
        v_.outcome = outcome;
        v_.trace.citation = citation_of(v_.trace.rule_id);
        // a definite answer may only rest on certified premises
        std::vector<std::string> assumed;
        for (const auto& premise : v_.trace.premises) {
            if (premise.status == PremiseStatus::Assumed) assumed.push_back(premise.text);
        }
        if (!assumed.empty() && outcome == Outcome::Finite) {
            v_.outcome = Outcome::ConditionallyFinite;
            v_.hypotheses.insert(v_.hypotheses.end(), assumed.begin(), assumed.end());
        } else if (!assumed.empty() && outcome == Outcome::Infinite) {
            v_.outcome = Outcome::Undetermined;
            v_.reason = "infinitude rests on assumed premises";
            for (const auto& text : assumed) v_.reason += "; " + text;
        }
        return v_;
    }

    Verdict v_;
};

std::string name_of(int which) { return which == 1 ? "E1" : "E2"; }

std::string type_phrase(const ReductionProfile& prof) {
    switch (prof.type) {
        case ReductionType::GoodOrdinary: return "good ordinary reduction";
        case ReductionType::GoodSupersingular: return "good supersingular reduction";
        case ReductionType::MultSplit: return "split multiplicative reduction";
        case ReductionType::MultNonsplit: return "non-split multiplicative reduction";
        case ReductionType::Additive: break;
    }
    std::string out = "additive reduction (" + prof.kodaira.to_string() + "), ";
    switch (prof.potential_type) {
        case PotentialType::PotGoodOrdinary: out += "potentially good ordinary"; break;
        case PotentialType::PotGoodSupersingular: out += "potentially good supersingular"; break;
        case PotentialType::PotMultiplicative: out += "potentially multiplicative"; break;
    }
    if (!prof.potential_resolution.empty()) out += " after a finite base change: " + prof.potential_resolution;
    return out;
}

void require_resolved(const ReductionProfile& prof, const std::string& who) {
    if (prof.type != ReductionType::Additive) return;
    if (prof.potential_resolution.empty()) {
        throw Error(ErrorKind::UnresolvedProfile, who + " has additive reduction without a resolved potential type");
    }
    if (prof.potential_type == PotentialType::PotMultiplicative) {
        throw Error(ErrorKind::UnresolvedProfile,
                    who + " has additive, potentially multiplicative reduction; whether it splits depends on the "
                          "base change, so classify it over an extension where the reduction is multiplicative");
    }
}

std::string fcm_phrase(const FcmStatus& fcm) {
    if (fcm.kind == FcmStatus::Kind::Field) {
        return "formal complex multiplication by Q_p(sqrt(" + fcm.field->discriminant().get_str() + "))";
    }
    return "no formal complex multiplication";
}

std::string certificate_phrase(const IsogenyCertificate& cert) {
    switch (cert.kind) {
        case IsogenyCertificate::Kind::SameCurve: return "E1 and E2 are isomorphic over K";
        case IsogenyCertificate::Kind::ExplicitMap: return "explicit isogeny E2 -> E1 verified against both equations";
        case IsogenyCertificate::Kind::UserAsserted:
            return "non-zero isogeny E2 -> E1 over K" + (cert.note.empty() ? std::string() : ": " + cert.note) +
                   " (user-asserted)";
    }
    return "";
}

void check_certificate(const IsogenyCertificate& cert, const ReductionProfile& e1, const ReductionProfile& e2) {
    if (cert.kind == IsogenyCertificate::Kind::ExplicitMap && !cert.verified) {
        throw Error(ErrorKind::InvalidCertificate, "explicit isogeny has not been verified against the curves");
    }
    // isogenous curves over K share their reduction type and Frobenius trace
    if (e1.type != e2.type || e1.potential_type != e2.potential_type || e1.trace != e2.trace) {
        throw Error(ErrorKind::InvalidCertificate, "isogeny certificate joins curves with different reduction ("
                                                       + reduction::to_string(e1.type) + " vs " +
                                                       reduction::to_string(e2.type) + ")");
    }
}

Verdict hom_rule(const IsogenyCertificate& cert) {
    return Builder("isogeny_hom").certified(certificate_phrase(cert)).infinite();
}

Verdict decide_table(const ReductionProfile& e1, const ReductionProfile& e2,
                     const std::optional<IsogenyCertificate>& cert, const DecideOptions& options) {
    const std::string t1 = "E1 has " + type_phrase(e1);
    const std::string t2 = "E2 has " + type_phrase(e2);

    if (e1.type == ReductionType::MultSplit) {
        return Builder("split_mult_tate_curve").certified(t1).infinite();
    }
    if (e1.type == ReductionType::MultNonsplit) {
        if (e2.p_torsion_rational) {
            return Builder("nonsplit_mult_rational_p_torsion")
                .certified(t1)
                .certified("p = " + std::to_string(e1.p) + " is odd")
                .sourced("E2[p] is rational over K", Provenance::Annotated)
                .finite();
        }
        if (cert) return hom_rule(*cert);
        return Builder("nonsplit_mult_character_hypothesis")
            .certified(t1)
            .unverifiable("K_chi, the unramified quadratic extension cut out by the character of E1, is not "
                          "contained in K_{E2,p}")
            .conditionally_finite();
    }

    if (e1.potential_type == PotentialType::PotGoodOrdinary) {
        if (e2.potential_type != PotentialType::PotGoodOrdinary) {
            return Builder("ord_over_nonordinary_tower").certified(t1).certified(t2).finite();
        }
        for (const auto* prof : {&e1, &e2}) {
            if (prof->type != ReductionType::GoodOrdinary) {
                throw Error(ErrorKind::UnresolvedProfile,
                            std::string(prof == &e1 ? "E1" : "E2") +
                                " is only potentially ordinary; its unit-root character is defined after a base "
                                "change to good reduction");
            }
        }
        const auto chi1 = chars::character_of(e1, options.precision);
        const auto chi2 = chars::character_of(e2, options.precision);
        const std::string images = "Im(chi1 mod p) = <" + std::to_string(chi1.mod_p_value) + "> of order " +
                                   std::to_string(chi1.order_mod_p) + ", Im(chi2 mod p) = <" +
                                   std::to_string(chi2.mod_p_value) + "> of order " +
                                   std::to_string(chi2.order_mod_p) + " in F_p^x";
        if (chars::condition_d(chi1, chi2)) {
            return Builder("ord_ord_image_containment")
                .certified(t1)
                .certified(t2)
                .certified(images + ": the first lies in the second")
                .infinite();
        }
        if (cert) {
            throw Error(ErrorKind::InvalidCertificate, "isogenous ordinary curves have equal mod-p characters");
        }
        return Builder("ord_ord_open")
            .certified(t1)
            .certified(t2)
            .certified(images + ": the first does not lie in the second")
            .undetermined("*1: infinite in many cases, but without image containment only the converse "
                          "implication is known");
    }

    // E1 potentially supersingular
    if (e2.potential_type == PotentialType::PotGoodOrdinary) {
        return Builder("ss_over_ordinary_tower").certified(t1).certified(t2).finite();
    }
    if (e2.potential_type == PotentialType::PotMultiplicative) {
        return Builder("ss_over_multiplicative_tower")
            .certified(t1)
            .certified("v(j(E2)) = " + std::to_string(e2.v_j.value_or(0)) + " < 0")
            .finite();
    }
    for (int which : {1, 2}) {
        const auto& prof = which == 1 ? e1 : e2;
        if (prof.fcm.kind == FcmStatus::Kind::Unknown) {
            throw Error(ErrorKind::UnknownCMStatus,
                        name_of(which) + " is supersingular with unknown formal CM status; annotate it with fcm=... "
                                         "or non-cm");
        }
    }
    const bool f1 = e1.fcm.kind == FcmStatus::Kind::Field;
    const bool f2 = e2.fcm.kind == FcmStatus::Kind::Field;
    const std::string fcm1 = "E1 has " + fcm_phrase(e1.fcm);
    const std::string fcm2 = "E2 has " + fcm_phrase(e2.fcm);
    if (f1 != f2) {
        return Builder("ss_fcm_mismatch")
            .certified(t1)
            .certified(t2)
            .sourced(fcm1, e1.fcm.source)
            .sourced(fcm2, e2.fcm.source)
            .finite();
    }
    if (f1 && f2) {
        if (!zp::quadratic_fields_equal(*e1.fcm.field, *e2.fcm.field)) {
            return Builder("ss_fcm_distinct_fields")
                .certified(t1)
                .certified(t2)
                .sourced(fcm1, e1.fcm.source)
                .sourced(fcm2, e2.fcm.source)
                .certified("the square classes " + zp::to_string(e1.fcm.field->square_class()) + " and " +
                           zp::to_string(e2.fcm.field->square_class()) + " differ, so F1 != F2")
                .finite();
        }
        if (cert) return hom_rule(*cert);
        return Builder("ss_fcm_equal_fields_open")
            .certified(t1)
            .certified(t2)
            .sourced(fcm1, e1.fcm.source)
            .sourced(fcm2, e2.fcm.source)
            .undetermined("formal CM by the same field F1 = F2: the distinct-field criterion does not apply");
    }
    if (cert) {
        const bool good = e1.type == ReductionType::GoodSupersingular && e2.type == ReductionType::GoodSupersingular;
        if (!good) return hom_rule(*cert);
        return Builder("ss_formal_isogeny")
            .certified(t1)
            .certified(t2)
            .sourced(fcm1, e1.fcm.source)
            .sourced(fcm2, e2.fcm.source)
            .certified("the isogeny induces a non-trivial formal-group homomorphism E2^ -> E1^ over O_K: " +
                       certificate_phrase(*cert))
            .infinite();
    }
    return Builder("ss_nonfcm_open")
        .certified(t1)
        .certified(t2)
        .sourced(fcm1, e1.fcm.source)
        .sourced(fcm2, e2.fcm.source)
        .undetermined("*3: finite or infinite case by case; no formal-group homomorphism E2^ -> E1^ was certified");
}

// ---- polynomials over Q ----

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

Poly add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    trim(out);
    return out;
}

Poly scale(const Poly& a, const mpq_class& c) {
    Poly out = a;
    for (auto& x : out) x *= c;
    trim(out);
    return out;
}

Poly power(const Poly& a, unsigned e) {
    Poly out{mpq_class(1)};
    for (unsigned i = 0; i < e; ++i) out = mul(out, a);
    return out;
}

long degree(const Poly& a) { return static_cast<long>(a.size()) - 1; }

}  // namespace

std::optional<IsogenyCertificate> detect_isomorphism(const reduction::RationalWeierstrass& e1,
                                                     const reduction::RationalWeierstrass& e2) {
    if (e1.prime() != e2.prime() || e1.residue_degree() != e2.residue_degree()) return std::nullopt;
    if (e1.j_invariant() != e2.j_invariant()) return std::nullopt;
    IsogenyCertificate cert;
    cert.kind = IsogenyCertificate::Kind::SameCurve;
    cert.verified = true;
    if (e1.same_model(e2)) {
        cert.note = "identical models";
        return cert;
    }
    if (e1.c4() == e2.c4() && e1.c6() == e2.c6()) {
        cert.note = "equal c4 and c6";
        return cert;
    }
    if (e1.c4() == 0 || e1.c6() == 0) return std::nullopt;
    // c4' = c4 / u^4 and c6' = c6 / u^6, so u^2 = (c6 c4') / (c6' c4) must be a square in K
    const mpq_class u2 = (e1.c6() * e2.c4()) / (e2.c6() * e1.c4());
    const auto cls = zp::square_class(u2, e1.prime());
    const bool square = cls == zp::SquareClass::One || (cls == zp::SquareClass::U && e1.residue_degree() % 2 == 0);
    if (!square) return std::nullopt;
    cert.note = "isomorphic over K with u^2 = " + u2.get_str();
    return cert;
}

IsogenyCertificate verify_certificate(IsogenyCertificate cert, const reduction::RationalWeierstrass& e1,
                                      const reduction::RationalWeierstrass& e2) {
    using Kind = IsogenyCertificate::Kind;
    if (e1.prime() != e2.prime()) throw Error(ErrorKind::PrimeMismatch, "curves at different primes");
    switch (cert.kind) {
        case Kind::UserAsserted:
            return cert;
        case Kind::SameCurve: {
            if (const auto detected = detect_isomorphism(e1, e2)) return *detected;
            throw Error(ErrorKind::InvalidCertificate, "E1 and E2 are not recognisably isomorphic over K");
        }
        case Kind::ExplicitMap:
            break;
    }
    if (!cert.map) throw Error(ErrorKind::InvalidCertificate, "explicit_map certificate without a map");
    for (const auto* e : {&e1, &e2}) {
        if (e->a1() != 0 || e->a3() != 0) {
            throw Error(ErrorKind::InvalidCertificate, "explicit maps are checked only between models with a1 = a3 = 0");
        }
    }
    RationalMap m = *cert.map;
    for (auto* poly : {&m.x_num, &m.x_den, &m.y_num, &m.y_den}) trim(*poly);
    if (m.x_den.empty() || m.y_den.empty() || m.y_num.empty()) {
        throw Error(ErrorKind::InvalidCertificate, "explicit map has a zero numerator or denominator");
    }
    if (degree(m.x_num) <= degree(m.x_den)) {
        throw Error(ErrorKind::InvalidCertificate, "explicit map does not send the point at infinity to itself");
    }
    // E2: y^2 = f2(x). Substituting X = N/D, Y = y M/R into E1 and clearing denominators:
    // f2 M^2 D^3 = R^2 (N^3 + a2 N^2 D + a4 N D^2 + a6 D^3)
    const Poly f2{e2.a6(), e2.a4(), e2.a2(), mpq_class(1)};
    const Poly& n = m.x_num;
    const Poly& d = m.x_den;
    const Poly lhs = mul(mul(f2, power(m.y_num, 2)), power(d, 3));
    Poly cubic = power(n, 3);
    cubic = add(cubic, scale(mul(power(n, 2), d), e1.a2()));
    cubic = add(cubic, scale(mul(n, power(d, 2)), e1.a4()));
    cubic = add(cubic, scale(power(d, 3), e1.a6()));
    const Poly rhs = mul(power(m.y_den, 2), cubic);
    if (lhs != rhs) throw Error(ErrorKind::InvalidCertificate, "explicit map does not carry E2 into E1");
    cert.verified = true;
    if (cert.note.empty()) {
        cert.note = "degree " + std::to_string(std::max(degree(m.x_num), degree(m.x_den))) + " map";
    }
    return cert;
}

Verdict decide_pair(const ReductionProfile& e1, const ReductionProfile& e2,
                    const std::optional<IsogenyCertificate>& isogeny, const DecideOptions& options) {
    if (e1.p != e2.p) {
        throw Error(ErrorKind::PrimeMismatch, "E1 is at p = " + std::to_string(e1.p) + " and E2 at p = " +
                                                  std::to_string(e2.p) + "; use cross_prime for distinct primes");
    }
    if (e1.residue_degree != e2.residue_degree) {
        throw Error(ErrorKind::InvalidArgument, "E1 and E2 are over different unramified fields");
    }
    require_resolved(e1, "E1");
    require_resolved(e2, "E2");
    if (isogeny) check_certificate(*isogeny, e1, e2);

    Verdict v = decide_table(e1, e2, isogeny, options);
    if (isogeny && v.outcome == Outcome::Finite) {
        throw Error(ErrorKind::InvalidCertificate,
                    "the isogeny certificate contradicts a finite verdict (rule " + v.trace.rule_id + ")");
    }
    return v;
}

Verdict decide_pair_curves(const reduction::RationalWeierstrass& e1, const reduction::RationalWeierstrass& e2,
                           std::optional<IsogenyCertificate> isogeny,
                           const reduction::ClassifyOptions& classify_options, const DecideOptions& options) {
    if (isogeny) {
        isogeny = verify_certificate(*isogeny, e1, e2);
    } else {
        isogeny = detect_isomorphism(e1, e2);
    }
    return decide_pair(reduction::classify(e1, classify_options), reduction::classify(e2, classify_options), isogeny,
                       options);
}

Verdict decide_over_extension(const ReductionProfile& profile, const towers::ExtensionDescriptor& ext) {
    using towers::Exponent;
    const u64 p = profile.p;
    require_resolved(profile, "E");
    const std::string te = "E has " + type_phrase(profile);
    const std::string label = ext.label.empty() ? "L" : ext.label;

    switch (profile.potential_type) {
        case PotentialType::PotGoodOrdinary: {
            const auto deg = towers::cyclotomic_residue(ext, p);
            const std::string deg_text =
                "[k_{" + label + "(mu_{p^inf})} : k] = " + deg.to_string() + " (descriptor)";
            if (towers::is_potential_prime_to_p(deg, p)) {
                return Builder("ordinary_prime_to_p_residue")
                    .certified(te)
                    .certified(deg_text + " has finite p-exponent")
                    .finite();
            }
            std::vector<std::string> missing;
            if (profile.type != ReductionType::GoodOrdinary) missing.push_back("good (not only potential) reduction");
            if (!ext.is_galois_over_K) missing.push_back("galois=true");
            if (!ext.contains_mu_p_infinity) missing.push_back("mu_p_inf=true");
            if (!ext.contains_E_p) missing.push_back("contains_E_p=true");
            if (!missing.empty()) {
                std::string what;
                for (const auto& m : missing) what += (what.empty() ? "" : ", ") + m;
                throw Error(ErrorKind::DescriptorInsufficient,
                            "residue degree has infinite p-exponent; deciding infinitude needs " + what);
            }
            return Builder("ordinary_wild_residue")
                .certified(te)
                .certified(label + " is Galois over K and contains K(mu_{p^inf}) and K(E[p]) (descriptor)")
                .certified(deg_text + " has infinite p-exponent")
                .infinite();
        }
        case PotentialType::PotMultiplicative: {
            if (!ext.contains_mu_p_infinity) {
                throw Error(ErrorKind::DescriptorInsufficient, "multiplicative reduction: need mu_p_inf=true");
            }
            const std::string mu = label + " contains mu_{p^inf} (descriptor)";
            if (profile.type == ReductionType::MultSplit) {
                return Builder("split_mult_cyclotomic").certified(te).certified(mu).infinite();
            }
            const Exponent two = ext.residue_degree.exponent(2);
            const std::string two_text = "2-exponent of [k_L : k] is " + towers::to_string(two) + " (descriptor)";
            if (profile.residue_degree % 2 == 0) {
                throw Error(ErrorKind::InvalidArgument, "non-split reduction over an even-degree residue field");
            }
            if (two.is_zero()) {
                return Builder("nonsplit_mult_prime_to_2").certified(te).certified(mu).certified(two_text).finite();
            }
            if (two.kind == Exponent::Kind::FiniteUnknown) {
                throw Error(ErrorKind::DescriptorInsufficient,
                            "non-split multiplicative reduction: need the 2-exponent of the residue degree");
            }
            return Builder("nonsplit_mult_character_killed").certified(te).certified(mu).certified(two_text).infinite();
        }
        case PotentialType::PotGoodSupersingular: {
            if (ext.contains_K_E_p == true) {
                return Builder("supersingular_division_field")
                    .certified(te)
                    .certified(label + " contains K_{E,p} (descriptor)")
                    .infinite();
            }
            if (ext.contains_K_E_p == false && ext.is_galois_over_K) {
                return Builder("supersingular_division_field")
                    .certified(te)
                    .certified(label + " is Galois over K and does not contain K_{E,p} (descriptor)")
                    .finite();
            }
            return Builder("supersingular_division_field")
                .certified(te)
                .undetermined(ext.contains_K_E_p == false
                                  ? "the criterion needs L Galois over K"
                                  : "the descriptor does not state whether K_{E,p} is contained in L");
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unreachable potential type");
}

Verdict decide_unramified(const ReductionProfile& profile) {
    if (profile.type != ReductionType::GoodOrdinary) {
        throw Error(ErrorKind::NotOrdinary,
                    "the unramified-tower criterion needs good ordinary reduction, got " + reduction::to_string(profile.type));
    }
    const std::string te = "E has good ordinary reduction";
    switch (profile.cm.kind) {
        case CmStatus::Kind::CM:
            return Builder("unramified_cm")
                .certified(te)
                .sourced("E has complex multiplication by the order of discriminant " +
                             std::to_string(profile.cm.discriminant),
                         profile.cm.source)
                .e(1)
                .infinite();
        case CmStatus::Kind::NonCM:
            return Builder("unramified_non_cm")
                .certified(te)
                .sourced("E has no complex multiplication", profile.cm.source)
                .e(0)
                .finite();
        case CmStatus::Kind::Unknown:
            break;
    }
    throw Error(ErrorKind::UnknownCMStatus,
                "CM status unknown: j is not a rational CM invariant; annotate with non-cm or pass --assume-non-cm");
}

Verdict cross_prime(u64 l1, u64 l2) {
    for (u64 l : {l1, l2}) {
        if (!is_prime(l)) throw Error(ErrorKind::InvalidArgument, std::to_string(l) + " is not prime");
    }
    if (l1 == l2) throw Error(ErrorKind::SamePrime, "l1 = l2 = " + std::to_string(l1) + "; use decide_pair");
    return Builder("cross_prime").certified("l1 = " + std::to_string(l1) + " and l2 = " + std::to_string(l2) + " are distinct primes").finite();
}

}  // namespace torsion::verdict
