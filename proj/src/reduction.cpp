#include "torsion/reduction.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "torsion/error.hpp"

namespace torsion::reduction {
namespace {

constexpr long kInfinite = LONG_MAX;

long val_or_inf(const mpq_class& x, u64 p) {
    const auto v = valuation(x, p);
    return v ? *v : kInfinite;
}

mpq_class pow_p(u64 p, long e) {
    mpq_class out(ipow(p, static_cast<unsigned long>(std::labs(e))));
    if (e < 0) out = 1 / out;
    return out;
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

}  // namespace

RationalWeierstrass::RationalWeierstrass(u64 p, std::array<mpq_class, 5> a, unsigned residue_degree, Annotations notes)
    : p_(p), a_(std::move(a)), f_(residue_degree), notes_(std::move(notes)) {
    if (!is_prime(p)) throw Error(ErrorKind::UnsupportedPrime, std::to_string(p) + " is not prime");
    if (p < 5) throw Error(ErrorKind::UnsupportedPrime, "p must be at least 5, got " + std::to_string(p));
    if (f_ == 0) throw Error(ErrorKind::InvalidArgument, "residue degree must be >= 1");
    for (auto& c : a_) c.canonicalize();
    const auto& [a1, a2, a3, a4, a6] = a_;
    b2_ = a1 * a1 + 4 * a2;
    b4_ = 2 * a4 + a1 * a3;
    b6_ = a3 * a3 + 4 * a6;
    b8_ = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c4_ = b2_ * b2_ - 24 * b4_;
    c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
    disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
    if (disc_ == 0) throw Error(ErrorKind::SingularCurve, "discriminant vanishes for " + to_string());
    j_ = c4_ * c4_ * c4_ / disc_;
    if (c4_ * c4_ * c4_ - c6_ * c6_ != 1728 * disc_) {
        throw Error(ErrorKind::InvalidArgument, "internal: c4^3 - c6^2 != 1728 Delta");
    }
}

RationalWeierstrass RationalWeierstrass::transform(const mpq_class& u, const mpq_class& r, const mpq_class& s,
                                                   const mpq_class& t) const {
    if (u == 0) throw Error(ErrorKind::InvalidArgument, "change of variables needs u != 0");
    const auto& [a1, a2, a3, a4, a6] = a_;
    const mpq_class u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    std::array<mpq_class, 5> out{
        (a1 + 2 * s) / u,
        (a2 - s * a1 + 3 * r - s * s) / u2,
        (a3 + r * a1 + 2 * t) / u3,
        (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4,
        (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6,
    };
    return RationalWeierstrass(p_, std::move(out), f_, notes_);
}

RationalWeierstrass RationalWeierstrass::quadratic_twist(const mpq_class& d) const {
    const mpq_class A = -27 * c4_;
    const mpq_class B = -54 * c6_;
    Annotations notes;  // CM/FCM facts do not transfer verbatim to a twist
    return RationalWeierstrass(p_, {0, 0, 0, d * d * A, d * d * d * B}, f_, notes);
}

std::string RationalWeierstrass::to_string() const {
    std::ostringstream os;
    os << p_ << "; ";
    for (std::size_t i = 0; i < a_.size(); ++i) os << (i ? "," : "") << rational_str(a_[i]);
    return os.str();
}

std::string Kodaira::to_string() const {
    switch (kind) {
        case Kind::I0: return "I0";
        case Kind::In: return "I" + std::to_string(n);
        case Kind::II: return "II";
        case Kind::III: return "III";
        case Kind::IV: return "IV";
        case Kind::I0Star: return "I0*";
        case Kind::InStar: return "I" + std::to_string(n) + "*";
        case Kind::IVStar: return "IV*";
        case Kind::IIIStar: return "III*";
        case Kind::IIStar: return "II*";
    }
    return "?";
}

TateResult tate_classify(const RationalWeierstrass& curve) {
    const u64 p = curve.prime();
    const long v4 = val_or_inf(curve.c4(), p);
    const long v6 = val_or_inf(curve.c6(), p);
    const long vd = val_or_inf(curve.discriminant(), p);

    // scale by p^k so that c4 p^{-4k}, c6 p^{-6k} are integral and minimal
    long k = LONG_MAX;
    if (v4 != kInfinite) k = std::min(k, floor_div(v4, 4));
    if (v6 != kInfinite) k = std::min(k, floor_div(v6, 6));
    const mpq_class c4 = curve.c4() * pow_p(p, -4 * k);
    const mpq_class c6 = curve.c6() * pow_p(p, -6 * k);
    const long v4m = v4 == kInfinite ? kInfinite : v4 - 4 * k;
    const long v6m = v6 == kInfinite ? kInfinite : v6 - 6 * k;
    const long vdm = vd - 12 * k;

    RationalWeierstrass minimal(p, {0, 0, 0, -27 * c4, -54 * c6}, curve.residue_degree(), curve.annotations());

    Kodaira kodaira;
    ReductionKind kind;
    using K = Kodaira::Kind;
    if (vdm == 0) {
        kind = ReductionKind::Good;
        kodaira = {K::I0, 0};
    } else if (v4m == 0) {
        kind = ReductionKind::Multiplicative;
        kodaira = {K::In, static_cast<unsigned>(vdm)};
    } else {
        kind = ReductionKind::Additive;
        if (v4m == 2 && v6m == 3 && vdm > 6) {
            kodaira = {K::InStar, static_cast<unsigned>(vdm - 6)};
        } else {
            switch (vdm) {
                case 2: kodaira = {K::II, 0}; break;
                case 3: kodaira = {K::III, 0}; break;
                case 4: kodaira = {K::IV, 0}; break;
                case 6: kodaira = {K::I0Star, 0}; break;
                case 8: kodaira = {K::IVStar, 0}; break;
                case 9: kodaira = {K::IIIStar, 0}; break;
                case 10: kodaira = {K::IIStar, 0}; break;
                default:
                    throw Error(ErrorKind::InvalidArgument,
                                "internal: unexpected minimal discriminant valuation " + std::to_string(vdm));
            }
        }
    }
    return TateResult{kodaira, kind, std::move(minimal), v4m, v6m, vdm};
}

std::optional<mpz_class> ReductionProfile::residue_trace() const {
    if (!trace) return std::nullopt;
    return ff::weil_trace(*trace, p, residue_degree);
}

std::string to_string(ReductionType t) {
    switch (t) {
        case ReductionType::GoodOrdinary: return "good_ordinary";
        case ReductionType::GoodSupersingular: return "good_supersingular";
        case ReductionType::MultSplit: return "mult_split";
        case ReductionType::MultNonsplit: return "mult_nonsplit";
        case ReductionType::Additive: return "additive";
    }
    return "?";
}

std::string to_string(PotentialType t) {
    switch (t) {
        case PotentialType::PotGoodOrdinary: return "pot_good_ordinary";
        case PotentialType::PotGoodSupersingular: return "pot_good_supersingular";
        case PotentialType::PotMultiplicative: return "pot_multiplicative";
    }
    return "?";
}

std::string to_string(CmStatus::Kind k) {
    switch (k) {
        case CmStatus::Kind::CM: return "CM";
        case CmStatus::Kind::NonCM: return "non_CM";
        case CmStatus::Kind::Unknown: return "unknown";
    }
    return "?";
}

std::string to_string(FcmStatus::Kind k) {
    switch (k) {
        case FcmStatus::Kind::None: return "none";
        case FcmStatus::Kind::Field: return "field";
        case FcmStatus::Kind::Unknown: return "unknown";
    }
    return "?";
}

std::string to_string(Provenance s) {
    switch (s) {
        case Provenance::Computed: return "computed";
        case Provenance::Annotated: return "annotated";
        case Provenance::Assumed: return "assumed";
    }
    return "?";
}

const std::vector<CmEntry>& rational_cm_table() {
    static const std::vector<CmEntry> table = {
        {-3, "0"},
        {-4, "1728"},
        {-7, "-3375"},
        {-8, "8000"},
        {-11, "-32768"},
        {-12, "54000"},
        {-16, "287496"},
        {-19, "-884736"},
        {-27, "-12288000"},
        {-28, "16581375"},
        {-43, "-884736000"},
        {-67, "-147197952000"},
        {-163, "-262537412640768000"},
    };
    return table;
}

std::optional<long> cm_discriminant_of(const mpq_class& j) {
    for (const auto& entry : rational_cm_table()) {
        if (j == mpq_class(entry.j)) return entry.discriminant;
    }
    return std::nullopt;
}

namespace {

bool supersingular_j(const mpq_class& j, u64 p, u64 budget) {
    // any curve over F_p with the reduced j-invariant; supersingularity is geometric
    const u64 jt = mod_floor(reduce_mod(j, mpz_class(static_cast<unsigned long>(p))), p);
    if (jt == 0) return ff::is_supersingular(ff::CurveOverFq::over_prime(p, 0, 1), budget);
    if (jt == 1728 % p) return ff::is_supersingular(ff::CurveOverFq::over_prime(p, 1, 0), budget);
    // y^2 = x^3 + 3k x + 2k(1728 - j) with k = j(1728 - j) has j-invariant j
    const u64 c = (1728 % p + p - jt) % p;
    const u64 k = mulmod(jt, c, p);
    const u64 a4 = mulmod(3, k, p);
    const u64 a6 = mulmod(mulmod(2, k, p), c, p);
    return ff::is_supersingular(ff::CurveOverFq::over_prime(p, static_cast<i64>(a4), static_cast<i64>(a6)), budget);
}

ff::CurveOverFq reduce_short(const RationalWeierstrass& minimal) {
    const u64 p = minimal.prime();
    const mpz_class pz(static_cast<unsigned long>(p));
    return ff::CurveOverFq::over_prime(p, static_cast<i64>(mod_floor(reduce_mod(minimal.a4(), pz), p)),
                                       static_cast<i64>(mod_floor(reduce_mod(minimal.a6(), pz), p)));
}

void resolve_potential(const RationalWeierstrass& curve, const TateResult& tate, ReductionProfile& out,
                       const ClassifyOptions& options) {
    const u64 p = curve.prime();
    if (out.v_j && *out.v_j < 0) {
        out.potential_type = PotentialType::PotMultiplicative;
        out.potential_resolution = "v(j) < 0: potentially multiplicative (" + tate.kodaira.to_string() + ")";
        return;
    }
    for (auto cls : {zp::SquareClass::U, zp::SquareClass::P, zp::SquareClass::UP}) {
        const mpz_class d = zp::representative(cls, p);
        const auto twisted = tate_classify(tate.minimal_model.quadratic_twist(d));
        if (twisted.kind == ReductionKind::Good) {
            const bool ss = ff::is_supersingular(reduce_short(twisted.minimal_model), options.budget);
            out.potential_type = ss ? PotentialType::PotGoodSupersingular : PotentialType::PotGoodOrdinary;
            out.potential_resolution = "quadratic twist by " + d.get_str() + " has good reduction";
            return;
        }
    }
    // types II, III, IV and their duals: the reduced j-invariant is 0 or 1728
    const bool ss = supersingular_j(curve.j_invariant(), p, options.budget);
    out.potential_type = ss ? PotentialType::PotGoodSupersingular : PotentialType::PotGoodOrdinary;
    out.potential_resolution = "quartic/sextic twist: reduced j-invariant " +
                               std::to_string(mod_floor(reduce_mod(curve.j_invariant(), mpz_class(static_cast<unsigned long>(p))), p));
}

void resolve_cm(const RationalWeierstrass& curve, ReductionProfile& out, const ClassifyOptions& options) {
    const auto& notes = curve.annotations();
    const auto table_d = cm_discriminant_of(curve.j_invariant());
    if (notes.cm_discriminant && notes.non_cm) {
        throw Error(ErrorKind::InvalidArgument, "annotations cm=D and non-cm are contradictory");
    }
    if (notes.cm_discriminant) {
        const long d = *notes.cm_discriminant;
        if (d >= 0) throw Error(ErrorKind::InvalidArgument, "CM discriminant must be negative");
        for (const auto& entry : rational_cm_table()) {
            if (entry.discriminant == d && curve.j_invariant() != mpq_class(entry.j)) {
                throw Error(ErrorKind::InvalidArgument, "cm=" + std::to_string(d) + " contradicts j = " +
                                                            curve.j_invariant().get_str());
            }
        }
        out.cm = {CmStatus::Kind::CM, d, table_d == d ? Provenance::Computed : Provenance::Annotated};
    } else if (notes.non_cm) {
        if (table_d) {
            throw Error(ErrorKind::InvalidArgument, "non-cm contradicts the CM j-invariant " + curve.j_invariant().get_str());
        }
        out.cm = {CmStatus::Kind::NonCM, 0, Provenance::Annotated};
    } else if (table_d) {
        out.cm = {CmStatus::Kind::CM, *table_d, Provenance::Computed};
    } else if (options.assume_non_cm) {
        out.cm = {CmStatus::Kind::NonCM, 0, Provenance::Assumed};
    } else {
        out.cm = {CmStatus::Kind::Unknown, 0, Provenance::Computed};
    }
}

void resolve_fcm(const RationalWeierstrass& curve, ReductionProfile& out) {
    const u64 p = curve.prime();
    const bool pot_ss = out.potential_type == PotentialType::PotGoodSupersingular;
    if (const auto& note = curve.annotations().fcm) {
        if (*note == zp::QuadraticLocalField::Kind::Trivial) {
            out.fcm = {FcmStatus::Kind::None, std::nullopt, Provenance::Annotated};
        } else {
            if (!pot_ss) {
                throw Error(ErrorKind::InvalidArgument, "formal CM is only meaningful for supersingular reduction");
            }
            out.fcm = {FcmStatus::Kind::Field, zp::QuadraticLocalField(p, *note), Provenance::Annotated};
        }
        return;
    }
    if (!pot_ss) {
        out.fcm = {FcmStatus::Kind::None, std::nullopt, Provenance::Computed};
        return;
    }
    switch (out.cm.kind) {
        case CmStatus::Kind::CM:
            // p inert or ramified in Q(sqrt D): the CM field completes to a quadratic field
            out.fcm = {FcmStatus::Kind::Field, zp::QuadraticLocalField::from_discriminant(out.cm.discriminant, p),
                       out.cm.source};
            break;
        case CmStatus::Kind::NonCM:
            out.fcm = {FcmStatus::Kind::None, std::nullopt, out.cm.source};
            break;
        case CmStatus::Kind::Unknown:
            out.fcm = {FcmStatus::Kind::Unknown, std::nullopt, Provenance::Computed};
            break;
    }
}

}  // namespace

ReductionProfile classify(const RationalWeierstrass& curve, const ClassifyOptions& options) {
    const u64 p = curve.prime();
    const TateResult tate = tate_classify(curve);

    ReductionProfile out;
    out.p = p;
    out.residue_degree = curve.residue_degree();
    out.kodaira = tate.kodaira;
    out.v_j = valuation(curve.j_invariant(), p);
    out.p_torsion_rational = curve.annotations().p_torsion_rational;

    switch (tate.kind) {
        case ReductionKind::Good: {
            auto reduced = reduce_short(tate.minimal_model);
            const i64 a_p = ff::trace_of_frobenius(reduced, options.budget);
            const bool ss = mod_floor(a_p, p) == 0;
            out.type = ss ? ReductionType::GoodSupersingular : ReductionType::GoodOrdinary;
            out.potential_type = ss ? PotentialType::PotGoodSupersingular : PotentialType::PotGoodOrdinary;
            out.reduced_curve = std::move(reduced);
            out.trace = a_p;
            break;
        }
        case ReductionKind::Multiplicative: {
            // split iff -c6 is a square in the residue field F_{p^f}
            const mpq_class c6 = -tate.minimal_model.a6() / 54;
            const bool square = legendre(reduce_mod(-c6, mpz_class(static_cast<unsigned long>(p))), p) == 1;
            const bool split = square || curve.residue_degree() % 2 == 0;
            out.type = split ? ReductionType::MultSplit : ReductionType::MultNonsplit;
            out.potential_type = PotentialType::PotMultiplicative;
            break;
        }
        case ReductionKind::Additive:
            out.type = ReductionType::Additive;
            resolve_potential(curve, tate, out, options);
            break;
    }
    resolve_cm(curve, out, options);
    resolve_fcm(curve, out);
    if (out.cm.kind == CmStatus::Kind::CM && out.potential_type == PotentialType::PotMultiplicative) {
        throw Error(ErrorKind::InvalidArgument, "CM annotation contradicts potentially multiplicative reduction");
    }
    return out;
}

std::vector<std::string> profile_violations(const ReductionProfile& profile) {
    std::vector<std::string> out;
    const bool vj_negative = profile.v_j && *profile.v_j < 0;
    if ((profile.potential_type == PotentialType::PotMultiplicative) != vj_negative) {
        out.emplace_back("potential_type is pot_multiplicative exactly when v(j) < 0");
    }
    if (profile.is_multiplicative() && !vj_negative) out.emplace_back("multiplicative reduction requires v(j) < 0");
    if (profile.fcm.kind != FcmStatus::Kind::None &&
        profile.potential_type != PotentialType::PotGoodSupersingular) {
        out.emplace_back("formal CM status set on a curve without potentially supersingular reduction");
    }
    if (profile.cm.kind == CmStatus::Kind::CM) {
        const int split = legendre(mpz_class(profile.cm.discriminant), profile.p);
        if (split == 1 && profile.potential_type != PotentialType::PotGoodOrdinary) {
            out.emplace_back("p splits in the CM field but reduction is not potentially ordinary");
        }
        if (split != 1 && profile.potential_type != PotentialType::PotGoodSupersingular) {
            out.emplace_back("p is inert or ramified in the CM field but reduction is not potentially supersingular");
        }
    }
    if (profile.is_good() != profile.reduced_curve.has_value()) {
        out.emplace_back("reduced_curve is present exactly for good reduction");
    }
    if (profile.type == ReductionType::GoodOrdinary && profile.potential_type != PotentialType::PotGoodOrdinary) {
        out.emplace_back("good ordinary reduction must be potentially ordinary");
    }
    if (profile.type == ReductionType::GoodSupersingular &&
        profile.potential_type != PotentialType::PotGoodSupersingular) {
        out.emplace_back("good supersingular reduction must be potentially supersingular");
    }
    return out;
}

std::string to_string(LieClass::Kind k) {
    switch (k) {
        case LieClass::Kind::SplitCartan: return "split_cartan";
        case LieClass::Kind::Borel: return "borel";
        case LieClass::Kind::NonsplitCartan: return "nonsplit_cartan";
        case LieClass::Kind::FullGl2: return "full_gl2";
        case LieClass::Kind::NilpotentNX: return "nilpotent_nX";
    }
    return "?";
}

LieClass lie_class(const ReductionProfile& profile) {
    using K = LieClass::Kind;
    switch (profile.potential_type) {
        case PotentialType::PotMultiplicative:
            return {K::NilpotentNX, 2, 2};
        case PotentialType::PotGoodOrdinary:
            if (profile.cm.kind == CmStatus::Kind::Unknown) {
                throw Error(ErrorKind::InsufficientProfile, "ordinary curve with unknown CM status");
            }
            return profile.cm.kind == CmStatus::Kind::CM ? LieClass{K::SplitCartan, 2, 1} : LieClass{K::Borel, 3, 2};
        case PotentialType::PotGoodSupersingular:
            if (profile.fcm.kind == FcmStatus::Kind::Unknown) {
                throw Error(ErrorKind::InsufficientProfile, "supersingular curve with unknown formal CM status");
            }
            return profile.fcm.kind == FcmStatus::Kind::Field ? LieClass{K::NonsplitCartan, 2, 2}
                                                              : LieClass{K::FullGl2, 4, 4};
    }
    throw Error(ErrorKind::InsufficientProfile, "unclassified profile");
}

}  // namespace torsion::reduction
