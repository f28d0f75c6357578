#include "torsion/checker.hpp"

#include <array>
#include <chrono>
#include <random>

#include "torsion/chars.hpp"
#include "torsion/error.hpp"
#include "torsion/ffcurve.hpp"

namespace torsion::checker {
namespace {

using json = nlohmann::json;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

mpz_class mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Z_p[sqrt(d1), sqrt(d2)] / p^N in the basis 1, s1, s2, s1*s2.
class Biquadratic {
public:
    using Elt = std::array<mpz_class, 4>;

    Biquadratic(mpz_class d1, mpz_class d2, mpz_class modulus)
        : d1_(std::move(d1)), d2_(std::move(d2)), m_(std::move(modulus)) {}

    Elt mul(const Elt& a, const Elt& b) const {
        const mpz_class d12 = d1_ * d2_;
        Elt c{
            a[0] * b[0] + d1_ * a[1] * b[1] + d2_ * a[2] * b[2] + d12 * a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + d2_ * (a[2] * b[3] + a[3] * b[2]),
            a[0] * b[2] + a[2] * b[0] + d1_ * (a[1] * b[3] + a[3] * b[1]),
            a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1],
        };
        return reduce(c);
    }

    /// The automorphism fixing Q_p(s1) (which = 1) or Q_p(s2) (which = 2).
    Elt conjugate_over(int which, const Elt& a) const {
        Elt c = a;
        c[which == 1 ? 2 : 1] = -c[which == 1 ? 2 : 1];
        c[3] = -c[3];
        return reduce(c);
    }

    /// Nr_{K/F} as z * tau(z), with tau generating Gal(K/F).
    Elt norm_by_conjugate(int which, const Elt& z) const { return mul(z, conjugate_over(which, z)); }

    /// Nr_{K/F} as the determinant of multiplication by z on K = F + F*s, for s the other root.
    Elt norm_by_determinant(int which, const Elt& z) const {
        // z = A + B s with A, B in F = Q_p(t): det [[A, e B], [B, A]] = A^2 - e B^2
        const mpz_class& t2 = which == 1 ? d1_ : d2_;
        const mpz_class& e = which == 1 ? d2_ : d1_;
        const std::array<mpz_class, 2> A = which == 1 ? std::array<mpz_class, 2>{z[0], z[1]}
                                                      : std::array<mpz_class, 2>{z[0], z[2]};
        const std::array<mpz_class, 2> B = which == 1 ? std::array<mpz_class, 2>{z[2], z[3]}
                                                      : std::array<mpz_class, 2>{z[1], z[3]};
        auto sq = [&](const std::array<mpz_class, 2>& x) {
            return std::array<mpz_class, 2>{x[0] * x[0] + t2 * x[1] * x[1], 2 * x[0] * x[1]};
        };
        const auto a2 = sq(A);
        const auto b2 = sq(B);
        const mpz_class r0 = a2[0] - e * b2[0];
        const mpz_class r1 = a2[1] - e * b2[1];
        Elt out{r0, 0, 0, 0};
        out[which == 1 ? 1 : 2] = r1;
        return reduce(out);
    }

    Elt reduce(Elt a) const {
        for (auto& x : a) x = mod(x, m_);
        return a;
    }

    static json to_json(const Elt& a) {
        return json::array({a[0].get_str(), a[1].get_str(), a[2].get_str(), a[3].get_str()});
    }

private:
    mpz_class d1_, d2_, m_;
};

bool is_one(const Biquadratic::Elt& a) { return a[0] == 1 && a[1] == 0 && a[2] == 0 && a[3] == 0; }

}  // namespace

CheckReport check_tower_law(const reduction::RationalWeierstrass& curve, unsigned m_max) {
    const Timer timer;
    const u64 p = curve.prime();
    if (m_max == 0) throw Error(ErrorKind::InvalidArgument, "m_max must be >= 1");
    const auto prof = reduction::classify(curve);
    if (!prof.is_good()) {
        throw Error(ErrorKind::InvalidArgument, "tower law needs good reduction, got " + reduction::to_string(prof.type));
    }
    if (prof.residue_degree != 1) throw Error(ErrorKind::InvalidArgument, "tower law check runs over Q_p only");
    CheckReport report;
    report.check_name = "tower_law";
    report.parameters = {{"curve", curve.to_string()}, {"p", p}, {"m_max", m_max}};
    const i64 a_p = *prof.trace;
    const bool ordinary = prof.type == reduction::ReductionType::GoodOrdinary;
    const u64 period = ordinary ? multiplicative_order(mod_floor(a_p, p), p) : 0;
    report.notes.push_back(ordinary ? "ordinary, a_p = " + std::to_string(a_p) + ", predicted period " +
                                          std::to_string(period)
                                    : "supersingular, p never divides N");

    for (unsigned m = 1; m <= m_max; ++m) {
        const auto tc = ff::tower_count_from_trace(a_p, p, m);
        const bool divisible = mod_floor(tc.group_order, p) == 0;
        const bool predicted = ordinary && m % period == 0;
        ++report.cases_run;
        if (divisible != predicted || (tc.p_primary_order > 1) != divisible) {
            report.failures.push_back({{"curve", curve.to_string()},
                                       {"m", m},
                                       {"group_order", tc.group_order.get_str()},
                                       {"predicted_p_divides", predicted},
                                       {"observed_p_divides", divisible}});
        }
        if (ipow(p, m) <= kEnumerationLimit) {
            const u64 counted = ff::count_points(prof.reduced_curve->base_change(m));
            ++report.cases_run;
            if (tc.group_order != counted) {
                report.failures.push_back({{"curve", curve.to_string()},
                                           {"m", m},
                                           {"recurrence", tc.group_order.get_str()},
                                           {"enumeration", counted}});
            }
        }
    }
    report.elapsed_seconds = timer.seconds();
    return report;
}

CheckReport check_condition_equivalence(u64 p) {
    const Timer timer;
    if (!is_prime(p) || p < 5) throw Error(ErrorKind::UnsupportedPrime, "condition check needs a prime p >= 5");
    CheckReport report;
    report.check_name = "condition_equivalence";
    report.parameters = {{"p", p}};
    for (u64 m1 = 0; m1 < p - 1; ++m1) {
        for (u64 m2 = 0; m2 < p - 1; ++m2) {
            const bool by_gcd = chars::kernel_index(m2, p) % chars::kernel_index(m1, p) == 0;
            const bool by_subgroups = chars::subgroup_contains(m1, m2, p);
            ++report.cases_run;
            if (by_gcd != by_subgroups) {
                report.failures.push_back({{"p", p}, {"m1", m1}, {"m2", m2}, {"gcd_route", by_gcd},
                                           {"subgroup_route", by_subgroups}});
            }
        }
    }
    report.elapsed_seconds = timer.seconds();
    return report;
}

CheckReport check_norm_kernel(const zp::QuadraticLocalField& f1, const zp::QuadraticLocalField& f2,
                              unsigned precision, u64 seed) {
    const Timer timer;
    if (f1.prime() != f2.prime()) throw Error(ErrorKind::PrimeMismatch, "fields over different primes");
    using Kind = zp::QuadraticLocalField::Kind;
    if (f1.kind() == Kind::Trivial || f2.kind() == Kind::Trivial) {
        throw Error(ErrorKind::InvalidArgument, "norm kernel check needs two quadratic fields");
    }
    CheckReport report;
    report.check_name = "norm_kernel";
    report.seed = seed;
    report.parameters = {{"p", f1.prime()},
                         {"F1", zp::to_string(f1.kind())},
                         {"F2", zp::to_string(f2.kind())},
                         {"precision", precision}};
    if (zp::quadratic_fields_equal(f1, f2)) {
        report.notes.push_back("equal fields: containment holds");
        report.elapsed_seconds = timer.seconds();
        return report;
    }
    const u64 p = f1.prime();
    const mpz_class modulus = ipow(p, precision);
    const Biquadratic k(f1.discriminant(), f2.discriminant(), modulus);
    std::mt19937_64 rng(seed);
    json witnesses = json::array();

    // a norm-one w of F_i (w != +-1) lies in ker Nr_{K/F_j} but Nr_{K/F_i}(w) = w^2 != 1
    for (int which : {1, 2}) {
        const int other = 3 - which;
        const auto& field = which == 1 ? f1 : f2;
        std::vector<zp::NormOnePair> candidates;
        try {
            for (auto& pair : zp::norm_one_units(field, precision, 16)) {
                if (mod(pair.second, modulus) != 0) candidates.push_back(std::move(pair));
            }
        } catch (const Error& e) {
            report.failures.push_back({{"direction", which}, {"error", e.what()}});
            continue;
        }
        ++report.cases_run;
        if (candidates.empty()) {
            report.failures.push_back({{"direction", which}, {"error", "no witness found within sampling budget"}});
            continue;
        }
        const auto& [x, y] = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
        Biquadratic::Elt w{x, 0, 0, 0};
        w[which == 1 ? 1 : 2] = y;
        w = k.reduce(w);
        const auto down_other_c = k.norm_by_conjugate(other, w);
        const auto down_other_d = k.norm_by_determinant(other, w);
        const auto down_own_c = k.norm_by_conjugate(which, w);
        const auto down_own_d = k.norm_by_determinant(which, w);
        const bool ok = down_other_c == down_other_d && down_own_c == down_own_d && is_one(down_other_c) &&
                        !is_one(down_own_c);
        json record = {{"witness_in", which == 1 ? "F1" : "F2"},
                       {"w", Biquadratic::to_json(w)},
                       {"norm_to_other", Biquadratic::to_json(down_other_c)},
                       {"norm_to_own", Biquadratic::to_json(down_own_c)}};
        if (ok) {
            witnesses.push_back(record);
        } else {
            record["p"] = p;
            record["precision"] = precision;
            report.failures.push_back(record);
        }
    }
    report.parameters["witnesses"] = witnesses;
    report.elapsed_seconds = timer.seconds();
    return report;
}

CheckReport check_unit_root(const reduction::RationalWeierstrass& curve, unsigned precision) {
    const Timer timer;
    const u64 p = curve.prime();
    CheckReport report;
    report.check_name = "unit_root";
    report.parameters = {{"curve", curve.to_string()}, {"p", p}, {"precision", precision}};
    const auto prof = reduction::classify(curve);
    if (prof.type != reduction::ReductionType::GoodOrdinary) {
        report.notes.push_back("skipped: " + reduction::to_string(prof.type) + " reduction is not ordinary");
        report.elapsed_seconds = timer.seconds();
        return report;
    }
    const i64 a_p = *prof.trace;
    const auto u = zp::hensel_unit_root(mpz_class(static_cast<long>(a_p)), p, precision);
    const zp::PadicInt a(p, precision, mpz_class(static_cast<long>(a_p)));
    const zp::PadicInt pp(p, precision, mpz_class(static_cast<unsigned long>(p)));
    const auto complementary = pp * u.inverse();
    const bool on_polynomial = (u * u - a * u + pp).is_zero();
    const bool congruent = mod_floor(u.value(), p) == mod_floor(a_p, p);
    const bool valuation_one = complementary.valuation() == 1u;
    const bool sums = u + complementary == a;
    report.cases_run = 4;
    if (!(u.is_unit() && on_polynomial && congruent && valuation_one && sums)) {
        report.failures.push_back({{"curve", curve.to_string()},
                                   {"a_p", a_p},
                                   {"u", u.value().get_str()},
                                   {"on_polynomial", on_polynomial},
                                   {"congruent", congruent},
                                   {"complementary_valuation_one", valuation_one},
                                   {"roots_sum_to_a_p", sums}});
    }
    report.elapsed_seconds = timer.seconds();
    return report;
}

std::vector<CheckReport> run_all(u64 p, u64 seed, unsigned precision) {
    using reduction::RationalWeierstrass;
    if (!is_prime(p) || p < 5) throw Error(ErrorKind::UnsupportedPrime, "checks need a prime p >= 5");
    constexpr unsigned kTowerLevels = 12;
    constexpr unsigned kNormPrecision = 10;
    constexpr int kSampledCurves = 6;

    std::vector<RationalWeierstrass> curves;
    auto nonsingular = [p](i64 a4, i64 a6) {
        const mpz_class d = 4 * mpz_class(a4) * a4 * a4 + 27 * mpz_class(a6) * a6;
        return mod_floor(d, p) != 0;
    };
    if (nonsingular(1, 1)) curves.emplace_back(p, std::array<mpq_class, 5>{0, 0, 0, 1, 1});
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<i64> coeff(0, static_cast<i64>(p) - 1);
    while (static_cast<int>(curves.size()) < kSampledCurves + 1) {
        const i64 a4 = coeff(rng), a6 = coeff(rng);
        if (nonsingular(a4, a6)) curves.emplace_back(p, std::array<mpq_class, 5>{0, 0, 0, a4, a6});
    }
    // the first supersingular short model in lexicographic order
    for (i64 a4 = 0; a4 < static_cast<i64>(p); ++a4) {
        bool found = false;
        for (i64 a6 = 0; a6 < static_cast<i64>(p) && !found; ++a6) {
            if (!nonsingular(a4, a6)) continue;
            if (ff::is_supersingular(ff::CurveOverFq::over_prime(p, a4, a6))) {
                curves.emplace_back(p, std::array<mpq_class, 5>{0, 0, 0, a4, a6});
                found = true;
            }
        }
        if (found) break;
    }

    std::vector<CheckReport> out;
    for (const auto& e : curves) {
        out.push_back(check_tower_law(e, kTowerLevels));
        out.push_back(check_unit_root(e, precision));
    }
    out.push_back(check_condition_equivalence(p));
    using Kind = zp::QuadraticLocalField::Kind;
    const Kind kinds[] = {Kind::Unramified, Kind::RamifiedP, Kind::RamifiedUP};
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            out.push_back(check_norm_kernel({p, kinds[i]}, {p, kinds[j]}, kNormPrecision, seed));
        }
    }
    for (auto& report : out) report.seed = seed;
    return out;
}

}  // namespace torsion::checker
