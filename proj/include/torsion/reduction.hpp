#pragma once

// Reduction of elliptic curves over unramified extensions of Q_p (p >= 5):
// Kodaira symbols, minimal models, ordinary/supersingular refinement, CM and
// formal-CM bookkeeping, and the Lie algebra of the p-adic image.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "torsion/arith.hpp"
#include "torsion/ffcurve.hpp"
#include "torsion/zp.hpp"

namespace torsion::reduction {

/// Caller-supplied facts the engine cannot derive on its own.
struct Annotations {
    std::optional<long> cm_discriminant;  // cm=D
    bool non_cm = false;                  // non-cm
    /// fcm=none is stored as Kind::Trivial.
    std::optional<zp::QuadraticLocalField::Kind> fcm;
    bool p_torsion_rational = false;  // E[p] declared rational over K

    bool operator==(const Annotations&) const = default;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over the unramified extension
/// of Q_p with residue field F_{p^f}.
class RationalWeierstrass {
public:
    RationalWeierstrass(u64 p, std::array<mpq_class, 5> a, unsigned residue_degree = 1, Annotations notes = {});

    u64 prime() const noexcept { return p_; }
    unsigned residue_degree() const noexcept { return f_; }
    const Annotations& annotations() const noexcept { return notes_; }
    Annotations& annotations() noexcept { return notes_; }
    const std::array<mpq_class, 5>& coefficients() const noexcept { return a_; }
    const mpq_class& a1() const noexcept { return a_[0]; }
    const mpq_class& a2() const noexcept { return a_[1]; }
    const mpq_class& a3() const noexcept { return a_[2]; }
    const mpq_class& a4() const noexcept { return a_[3]; }
    const mpq_class& a6() const noexcept { return a_[4]; }

    const mpq_class& b2() const noexcept { return b2_; }
    const mpq_class& b4() const noexcept { return b4_; }
    const mpq_class& b6() const noexcept { return b6_; }
    const mpq_class& b8() const noexcept { return b8_; }
    const mpq_class& c4() const noexcept { return c4_; }
    const mpq_class& c6() const noexcept { return c6_; }
    const mpq_class& discriminant() const noexcept { return disc_; }
    const mpq_class& j_invariant() const noexcept { return j_; }

    /// x = u^2 x' + r, y = u^3 y' + u^2 s x' + t.
    RationalWeierstrass transform(const mpq_class& u, const mpq_class& r, const mpq_class& s,
                                  const mpq_class& t) const;
    /// y^2 = x^3 + d^2 A x + d^3 B from the short model y^2 = x^3 + A x + B.
    RationalWeierstrass quadratic_twist(const mpq_class& d) const;

    bool same_model(const RationalWeierstrass& rhs) const { return p_ == rhs.p_ && a_ == rhs.a_; }

    std::string to_string() const;

private:
    u64 p_;
    std::array<mpq_class, 5> a_;
    unsigned f_;
    Annotations notes_;
    mpq_class b2_, b4_, b6_, b8_, c4_, c6_, disc_, j_;
};

struct Kodaira {
    enum class Kind { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };
    Kind kind = Kind::I0;
    unsigned n = 0;

    std::string to_string() const;
    bool operator==(const Kodaira&) const = default;
};

enum class ReductionKind { Good, Multiplicative, Additive };

struct TateResult {
    Kodaira kodaira;
    ReductionKind kind = ReductionKind::Good;
    /// y^2 = x^3 - 27 c4 x - 54 c6 for the minimal c4, c6: integral, minimal
    /// and isomorphic to the input over Z_p.
    RationalWeierstrass minimal_model;
    long v_c4_min = 0;  // LONG_MAX when c4 == 0
    long v_c6_min = 0;  // LONG_MAX when c6 == 0
    long v_disc_min = 0;
};

/// Tate's algorithm in its p >= 5 form, driven by v(c4), v(c6), v(Delta) of a minimal model.
TateResult tate_classify(const RationalWeierstrass& curve);

enum class ReductionType { GoodOrdinary, GoodSupersingular, MultSplit, MultNonsplit, Additive };
enum class PotentialType { PotGoodOrdinary, PotGoodSupersingular, PotMultiplicative };

/// Where a CM/FCM status came from: derived by the engine, supplied as
/// input data, or coerced by the caller without evidence.
enum class Provenance { Computed, Annotated, Assumed };

struct CmStatus {
    enum class Kind { CM, NonCM, Unknown };
    Kind kind = Kind::Unknown;
    long discriminant = 0;  // when kind == CM
    Provenance source = Provenance::Computed;

    bool operator==(const CmStatus&) const = default;
};

struct FcmStatus {
    enum class Kind { None, Field, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<zp::QuadraticLocalField> field;
    Provenance source = Provenance::Computed;

    bool operator==(const FcmStatus&) const = default;
};

struct ReductionProfile {
    u64 p = 0;
    unsigned residue_degree = 1;
    Kodaira kodaira;
    ReductionType type = ReductionType::Additive;
    PotentialType potential_type = PotentialType::PotGoodOrdinary;
    std::optional<long> v_j;  // nullopt when j = 0
    CmStatus cm;
    FcmStatus fcm;
    /// Reduction of the minimal model over F_p, when reduction is good.
    std::optional<ff::CurveOverFq> reduced_curve;
    /// Trace of Frobenius of reduced_curve over F_p.
    std::optional<i64> trace;
    /// How an additive curve's potential type was resolved.
    std::string potential_resolution;
    bool p_torsion_rational = false;

    bool is_good() const noexcept {
        return type == ReductionType::GoodOrdinary || type == ReductionType::GoodSupersingular;
    }
    bool is_multiplicative() const noexcept {
        return type == ReductionType::MultSplit || type == ReductionType::MultNonsplit;
    }
    /// Trace of Frobenius over the residue field F_{p^f}.
    std::optional<mpz_class> residue_trace() const;
};

std::string to_string(ReductionType t);
std::string to_string(PotentialType t);
std::string to_string(CmStatus::Kind k);
std::string to_string(FcmStatus::Kind k);
std::string to_string(Provenance s);

struct ClassifyOptions {
    /// Treat an undecided CM status as non-CM (recorded as Provenance::Assumed).
    bool assume_non_cm = false;
    u64 budget = ff::kDefaultBudget;
};

ReductionProfile classify(const RationalWeierstrass& curve, const ClassifyOptions& options = {});

/// Rational CM j-invariants (class number one orders) with their discriminants.
struct CmEntry {
    long discriminant;
    const char* j;
};
const std::vector<CmEntry>& rational_cm_table();
std::optional<long> cm_discriminant_of(const mpq_class& j);

/// Violated profile invariants, empty when consistent.
std::vector<std::string> profile_violations(const ReductionProfile& profile);

struct LieClass {
    enum class Kind { SplitCartan, Borel, NonsplitCartan, FullGl2, NilpotentNX };
    Kind kind;
    int dim_g;
    int dim_i;
    bool operator==(const LieClass&) const = default;
};

std::string to_string(LieClass::Kind k);

/// Lie algebras of the images of G_K and of inertia in End(V_p E).
LieClass lie_class(const ReductionProfile& profile);

}  // namespace torsion::reduction
