#include "torsion/ffcurve.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "torsion/error.hpp"

namespace torsion::ff {
namespace {

using Poly = std::vector<u64>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_sub(Poly a, const Poly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

// Remainder of a modulo a monic f.
Poly poly_rem_monic(Poly a, const Poly& f, u64 p) {
    const std::size_t n = f.size() - 1;
    trim(a);
    while (a.size() > n) {
        const u64 lead = a.back();
        const std::size_t shift = a.size() - 1 - n;
        for (std::size_t i = 0; i < n; ++i) {
            a[shift + i] = (a[shift + i] + p - mulmod(lead, f[i], p)) % p;
        }
        a.pop_back();
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
        }
    }
    trim(out);
    return out;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    return poly_rem_monic(poly_mul(a, b, p), f, p);
}

Poly poly_powmod(Poly base, mpz_class exp, const Poly& f, u64 p) {
    Poly result{1};
    base = poly_rem_monic(std::move(base), f, p);
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t()) != 0) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        exp >>= 1;
    }
    return result;
}

// General remainder (divisor need not be monic).
Poly poly_rem(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    const u64 inv = powmod(b.back(), p - 2, p);
    for (auto& c : b) c = mulmod(c, inv, p);
    return poly_rem_monic(std::move(a), b, p);
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

void check_prime(u64 p) {
    if (!is_prime(p)) throw Error(ErrorKind::UnsupportedPrime, std::to_string(p) + " is not prime");
    if (p < 5) throw Error(ErrorKind::UnsupportedPrime, "p must be at least 5, got " + std::to_string(p));
}

}  // namespace

bool is_irreducible(const std::vector<u64>& monic, u64 p) {
    const unsigned n = static_cast<unsigned>(monic.size() - 1);
    if (n == 0) return false;
    if (n == 1) return true;
    // frob[k] = x^{p^k} mod f
    std::vector<Poly> frob(n + 1);
    frob[0] = Poly{0, 1};
    const mpz_class pz(static_cast<unsigned long>(p));
    for (unsigned k = 1; k <= n; ++k) frob[k] = poly_powmod(frob[k - 1], pz, monic, p);
    Poly x = poly_rem_monic(Poly{0, 1}, monic, p);
    if (frob[n] != x) return false;
    for (const auto& [q, e] : factor(n)) {
        const Poly g = poly_gcd(monic, poly_sub(frob[n / q], x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<u64> lowest_irreducible(u64 p, unsigned n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "extension degree must be >= 1");
    Poly f(n + 1, 0);
    f[n] = 1;
    while (true) {
        if (is_irreducible(f, p)) return f;
        // odometer over the n low coefficients, constant term first
        unsigned i = 0;
        while (i < n) {
            if (++f[i] < p) break;
            f[i] = 0;
            ++i;
        }
        if (i == n) throw Error(ErrorKind::InvalidArgument, "no irreducible polynomial found");
    }
}

FiniteField::FiniteField(u64 p, unsigned n, std::vector<u64> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)), order_(ipow(p, n)) {}

std::shared_ptr<const FiniteField> FiniteField::create(u64 p, unsigned n) {
    check_prime(p);
    auto modulus = lowest_irreducible(p, n);
    return std::shared_ptr<const FiniteField>(new FiniteField(p, n, std::move(modulus)));
}

FqElement::FqElement(FieldPtr field, std::vector<u64> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    const u64 p = field_->characteristic();
    coeffs_.resize(field_->degree(), 0);
    for (auto& c : coeffs_) c %= p;
}

FqElement FqElement::zero(FieldPtr field) { return FqElement(std::move(field), {}); }

FqElement FqElement::constant(FieldPtr field, i64 c) {
    const u64 p = field->characteristic();
    return FqElement(std::move(field), {mod_floor(c, p)});
}

FqElement FqElement::constant(FieldPtr field, const mpz_class& c) {
    const u64 p = field->characteristic();
    return FqElement(std::move(field), {mod_floor(c, p)});
}

bool FqElement::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
}

void FqElement::check_compatible(const FqElement& rhs) const {
    if (field_ != rhs.field_ && !(*field_ == *rhs.field_)) {
        throw Error(ErrorKind::InvalidArgument, "finite field elements from different fields");
    }
}

FqElement FqElement::operator+(const FqElement& rhs) const {
    check_compatible(rhs);
    const u64 p = field_->characteristic();
    std::vector<u64> out(coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (coeffs_[i] + rhs.coeffs_[i]) % p;
    return FqElement(field_, std::move(out));
}

FqElement FqElement::operator-() const {
    const u64 p = field_->characteristic();
    std::vector<u64> out(coeffs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (p - coeffs_[i]) % p;
    return FqElement(field_, std::move(out));
}

FqElement FqElement::operator-(const FqElement& rhs) const { return *this + (-rhs); }

FqElement FqElement::operator*(const FqElement& rhs) const {
    check_compatible(rhs);
    const u64 p = field_->characteristic();
    return FqElement(field_, poly_mulmod(coeffs_, rhs.coeffs_, field_->modulus(), p));
}

FqElement FqElement::pow(const mpz_class& exp) const {
    if (exp < 0) return inverse().pow(-exp);
    const u64 p = field_->characteristic();
    return FqElement(field_, poly_powmod(coeffs_, exp, field_->modulus(), p));
}

FqElement FqElement::inverse() const {
    if (is_zero()) throw Error(ErrorKind::InvalidArgument, "inverse of zero in F_q");
    return pow(field_->order() - 2);
}

bool FqElement::operator==(const FqElement& rhs) const {
    check_compatible(rhs);
    return coeffs_ == rhs.coeffs_;
}

CurveOverFq::CurveOverFq(FqElement a4, FqElement a6) : a4_(std::move(a4)), a6_(std::move(a6)) {
    if (a4_.field() != a6_.field() && !(*a4_.field() == *a6_.field())) {
        throw Error(ErrorKind::InvalidArgument, "coefficients from different fields");
    }
    const auto& f = a4_.field();
    const FqElement disc = FqElement::constant(f, 4) * a4_ * a4_ * a4_ + FqElement::constant(f, 27) * a6_ * a6_;
    if (disc.is_zero()) throw Error(ErrorKind::SingularCurve, "4 a4^3 + 27 a6^2 vanishes");
}

CurveOverFq CurveOverFq::over_prime(u64 p, i64 a4, i64 a6) {
    auto field = FiniteField::create(p, 1);
    return CurveOverFq(FqElement::constant(field, a4), FqElement::constant(field, a6));
}

CurveOverFq CurveOverFq::base_change(unsigned m) const {
    if (degree() != 1) throw Error(ErrorKind::InvalidArgument, "base_change expects a prime-field curve");
    auto field = FiniteField::create(characteristic(), m);
    return CurveOverFq(FqElement(field, {a4_.coeffs()[0]}), FqElement(field, {a6_.coeffs()[0]}));
}

namespace {

u64 count_prime_field(u64 p, u64 a4, u64 a6) {
    // roots[r] = number of y with y^2 = r
    std::vector<std::uint8_t> roots(p, 0);
    roots[0] = 1;
    for (u64 y = 1; y <= (p - 1) / 2; ++y) roots[y * y % p] = 2;
    u64 total = 1;
    for (u64 x = 0; x < p; ++x) {
        const u64 rhs = ((x * x % p) * x % p + a4 * x % p + a6) % p;
        total += roots[rhs];
    }
    return total;
}

// Elements of F_q are encoded as sum c_i p^i; multiplication goes through
// discrete log tables for a primitive element.
class LogTables {
public:
    LogTables(const FieldPtr& field) : p_(field->characteristic()), n_(field->degree()) {
        q_ = field->order().get_ui();
        const FqElement g = find_primitive(field);
        exp_.resize(q_ - 1);
        log_.assign(q_, 0);
        FqElement cur = FqElement::constant(field, 1);
        for (u64 k = 0; k + 1 < q_; ++k) {
            const u64 idx = encode(cur);
            exp_[k] = static_cast<std::uint32_t>(idx);
            log_[idx] = static_cast<std::uint32_t>(k);
            cur = cur * g;
        }
    }

    u64 encode(const FqElement& e) const {
        u64 idx = 0;
        for (unsigned i = n_; i-- > 0;) idx = idx * p_ + e.coeffs()[i];
        return idx;
    }

    u64 add(u64 a, u64 b) const {
        u64 out = 0;
        u64 scale = 1;
        for (unsigned i = 0; i < n_; ++i) {
            out += ((a % p_ + b % p_) % p_) * scale;
            a /= p_;
            b /= p_;
            scale *= p_;
        }
        return out;
    }

    // a * b for nonzero a given by its log
    u64 mul_log(u64 log_a, u64 b) const {
        if (b == 0) return 0;
        return exp_[(log_a + log_[b]) % (q_ - 1)];
    }

    u64 order() const noexcept { return q_; }
    u64 log(u64 idx) const noexcept { return log_[idx]; }
    u64 exp(u64 k) const noexcept { return exp_[k % (q_ - 1)]; }

private:
    FqElement find_primitive(const FieldPtr& field) const {
        const mpz_class group = field->order() - 1;
        const auto primes = factor(q_ - 1);
        for (u64 idx = 2; idx < q_; ++idx) {
            std::vector<u64> coeffs(n_);
            u64 t = idx;
            for (unsigned i = 0; i < n_; ++i) {
                coeffs[i] = t % p_;
                t /= p_;
            }
            FqElement cand(field, coeffs);
            bool primitive = true;
            for (const auto& [l, e] : primes) {
                if (cand.pow(group / static_cast<unsigned long>(l)) == FqElement::constant(field, 1)) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) return cand;
        }
        throw Error(ErrorKind::InvalidArgument, "no primitive element found");
    }

    u64 p_;
    unsigned n_;
    u64 q_ = 0;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

u64 count_extension_field(const CurveOverFq& curve) {
    const LogTables tables(curve.field());
    const u64 q = tables.order();
    const u64 a4 = tables.encode(curve.a4());
    const u64 a6 = tables.encode(curve.a6());
    const bool a4_zero = a4 == 0;
    const u64 log_a4 = a4_zero ? 0 : tables.log(a4);
    auto roots = [&](u64 v) -> u64 {
        if (v == 0) return 1;
        return (tables.log(v) % 2 == 0) ? 2 : 0;
    };
    u64 total = 1 + roots(a6);  // infinity and x = 0
    for (u64 x = 1; x < q; ++x) {
        const u64 lx = tables.log(x);
        const u64 x3 = tables.exp(3 * lx);
        const u64 a4x = a4_zero ? 0 : tables.exp(log_a4 + lx);
        total += roots(tables.add(tables.add(x3, a4x), a6));
    }
    return total;
}

}  // namespace

u64 count_points(const CurveOverFq& curve, u64 budget) {
    const auto& field = curve.field();
    if (field->order() > budget) {
        throw Error(ErrorKind::BudgetExceeded,
                    "field of order " + field->order().get_str() + " exceeds enumeration budget " + std::to_string(budget));
    }
    if (field->degree() == 1) {
        return count_prime_field(field->characteristic(), curve.a4().coeffs()[0], curve.a6().coeffs()[0]);
    }
    return count_extension_field(curve);
}

i64 trace_of_frobenius(const CurveOverFq& curve, u64 budget) {
    if (curve.degree() != 1) throw Error(ErrorKind::InvalidArgument, "trace_of_frobenius expects a prime-field curve");
    const u64 p = curve.characteristic();
    return static_cast<i64>(p + 1) - static_cast<i64>(count_points(curve, budget));
}

mpz_class weil_trace(i64 a_p, u64 p, unsigned m) {
    mpz_class prev = 2;  // a_{p^0}
    mpz_class cur = a_p;
    if (m == 0) return prev;
    const mpz_class pz(static_cast<unsigned long>(p));
    for (unsigned k = 2; k <= m; ++k) {
        mpz_class next = a_p * cur - pz * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

TowerCount tower_count_from_trace(i64 a_p, u64 p, unsigned m) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "tower level must be >= 1");
    TowerCount out;
    out.p = p;
    out.n = m;
    out.trace = weil_trace(a_p, p, m);
    out.group_order = ipow(p, m) + 1 - out.trace;
    out.p_primary_order = 1;
    mpz_class rest = out.group_order;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        out.p_primary_order *= static_cast<unsigned long>(p);
    }
    return out;
}

TowerCount tower_count(const CurveOverFq& curve, unsigned m, u64 budget) {
    return tower_count_from_trace(trace_of_frobenius(curve, budget), curve.characteristic(), m);
}

bool is_supersingular(const CurveOverFq& curve, u64 budget) {
    const u64 p = curve.characteristic();
    if (p < 5) throw Error(ErrorKind::UnsupportedPrime, "supersingularity test needs p >= 5");
    const i64 a_p = trace_of_frobenius(curve, budget);
    return mod_floor(a_p, p) == 0;
}

}  // namespace torsion::ff
