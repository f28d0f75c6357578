#include "torsion/zp.hpp"

#include <set>

#include "torsion/error.hpp"

namespace torsion::zp {
namespace {

void check_odd_prime(u64 p) {
    if (!is_prime(p)) throw Error(ErrorKind::UnsupportedPrime, std::to_string(p) + " is not prime");
    if (p == 2) throw Error(ErrorKind::UnsupportedPrime, "p = 2 is not supported");
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Tonelli-Shanks; a must be a non-zero square mod p.
u64 sqrt_mod_prime(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1U) == 0) {
        q >>= 1U;
        ++s;
    }
    const u64 z = smallest_nonresidue(p);
    unsigned m = s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        unsigned i = 0;
        u64 t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        const u64 b = powmod(c, u64{1} << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

}  // namespace

PadicInt::PadicInt(u64 p, unsigned precision, const mpz_class& value) : p_(p), precision_(precision) {
    if (precision == 0) throw Error(ErrorKind::InvalidArgument, "p-adic precision must be >= 1");
    value_ = mod(value, modulus());
}

PadicInt PadicInt::from_rational(const mpq_class& x, u64 p, unsigned precision) {
    return PadicInt(p, precision, reduce_mod(x, ipow(p, precision)));
}

std::optional<unsigned> PadicInt::valuation() const {
    if (value_ == 0) return std::nullopt;
    return static_cast<unsigned>(*torsion::valuation(value_, p_));
}

void PadicInt::check_compatible(const PadicInt& rhs) const {
    if (p_ != rhs.p_) throw Error(ErrorKind::PrimeMismatch, "p-adic integers for different primes");
    if (precision_ != rhs.precision_) {
        throw Error(ErrorKind::PrecisionMismatch, "precisions " + std::to_string(precision_) + " and " +
                                                      std::to_string(rhs.precision_) + " differ");
    }
}

PadicInt PadicInt::operator+(const PadicInt& rhs) const {
    check_compatible(rhs);
    return PadicInt(p_, precision_, value_ + rhs.value_);
}

PadicInt PadicInt::operator-(const PadicInt& rhs) const {
    check_compatible(rhs);
    return PadicInt(p_, precision_, value_ - rhs.value_);
}

PadicInt PadicInt::operator-() const { return PadicInt(p_, precision_, -value_); }

PadicInt PadicInt::operator*(const PadicInt& rhs) const {
    check_compatible(rhs);
    return PadicInt(p_, precision_, value_ * rhs.value_);
}

PadicInt PadicInt::pow(const mpz_class& exp) const {
    if (exp < 0) return inverse().pow(-exp);
    mpz_class out;
    const mpz_class m = modulus();
    mpz_powm(out.get_mpz_t(), value_.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return PadicInt(p_, precision_, out);
}

PadicInt PadicInt::inverse() const {
    if (!is_unit()) throw Error(ErrorKind::InvalidArgument, "inverse of a non-unit in Z_p");
    mpz_class out;
    const mpz_class m = modulus();
    mpz_invert(out.get_mpz_t(), value_.get_mpz_t(), m.get_mpz_t());
    return PadicInt(p_, precision_, out);
}

PadicInt PadicInt::reduce(unsigned precision) const {
    if (precision > precision_) {
        throw Error(ErrorKind::PrecisionMismatch, "cannot raise precision from " + std::to_string(precision_));
    }
    return PadicInt(p_, precision, value_);
}

bool PadicInt::operator==(const PadicInt& rhs) const {
    check_compatible(rhs);
    return value_ == rhs.value_;
}

PadicInt hensel_unit_root(const mpz_class& a_p, u64 p, unsigned precision) {
    check_odd_prime(p);
    if (p < 5) throw Error(ErrorKind::UnsupportedPrime, "unit roots are computed for p >= 5");
    if (mod_floor(a_p, p) == 0) {
        throw Error(ErrorKind::NotOrdinary, "p divides a_p = " + a_p.get_str() + "; no unit root");
    }
    const mpz_class m = ipow(p, precision);
    const mpz_class pz(static_cast<unsigned long>(p));
    mpz_class u = mod(a_p, m);
    // Newton: the derivative 2u - a_p is congruent to a_p, a unit
    for (unsigned known = 1; known < precision; known *= 2) {
        const mpz_class f = mod(u * u - a_p * u + pz, m);
        mpz_class df = mod(2 * u - a_p, m);
        mpz_invert(df.get_mpz_t(), df.get_mpz_t(), m.get_mpz_t());
        u = mod(u - f * df, m);
    }
    return PadicInt(p, precision, u);
}

std::optional<mpz_class> sqrt_mod_prime_power(const mpz_class& a, u64 p, unsigned precision) {
    check_odd_prime(p);
    const u64 a0 = mod_floor(a, p);
    if (a0 == 0) throw Error(ErrorKind::InvalidArgument, "sqrt_mod_prime_power expects a unit");
    if (powmod(a0, (p - 1) / 2, p) != 1) return std::nullopt;
    const mpz_class m = ipow(p, precision);
    mpz_class x = static_cast<unsigned long>(sqrt_mod_prime(a0, p));
    for (unsigned known = 1; known < precision; known *= 2) {
        mpz_class inv = mod(2 * x, m);
        mpz_invert(inv.get_mpz_t(), inv.get_mpz_t(), m.get_mpz_t());
        x = mod(x - (x * x - a) * inv, m);
    }
    return x;
}

PadicInt teichmuller_lift(u64 residue, u64 p, unsigned precision) {
    if (residue % p == 0) throw Error(ErrorKind::InvalidArgument, "Teichmuller lift of a non-unit");
    // x -> x^p converges to the root of unity; each step gains one digit
    PadicInt x(p, precision, static_cast<unsigned long>(residue % p));
    const mpz_class pz(static_cast<unsigned long>(p));
    for (unsigned i = 1; i < precision; ++i) x = x.pow(pz);
    return x;
}

PadicInt principal_log(const PadicInt& w) {
    const u64 p = w.prime();
    const unsigned precision = w.precision();
    if (mod_floor(w.value(), p) != 1) throw Error(ErrorKind::InvalidArgument, "principal_log needs w == 1 mod p");
    if (precision < 2) throw Error(ErrorKind::PrecisionLoss, "principal_log needs precision >= 2");
    const PadicInt base(p, precision, mpz_class(static_cast<unsigned long>(p + 1)));
    mpz_class n = 0;
    mpz_class pk = static_cast<unsigned long>(p);  // p^k
    mpz_class pk1 = 1;                             // p^{k-1}
    for (unsigned k = 1; k < precision; ++k) {
        // (1+p)^{j p^{k-1}} == 1 + j p^k (mod p^{k+1})
        const mpz_class rest = (w * base.pow(-n)).value();
        const mpz_class level = pk * static_cast<unsigned long>(p);
        const mpz_class digit = mod((mod(rest, level) - 1) / pk, mpz_class(static_cast<unsigned long>(p)));
        n += digit * pk1;
        pk1 = pk;
        pk *= static_cast<unsigned long>(p);
    }
    return PadicInt(p, precision - 1, n);
}

std::string to_string(SquareClass c) {
    switch (c) {
        case SquareClass::One: return "1";
        case SquareClass::U: return "u";
        case SquareClass::P: return "p";
        case SquareClass::UP: return "up";
    }
    return "?";
}

SquareClass square_class(const mpq_class& x, u64 p) {
    if (x == 0) throw Error(ErrorKind::ZeroInput, "square class of zero");
    check_odd_prime(p);
    const long v = *valuation(x, p);
    const mpq_class unit = unit_part(x, p);
    const int chi = legendre(mpz_class(unit.get_num() * unit.get_den()), p);
    unsigned bits = 0;
    if (chi == -1) bits |= 1U;
    if (v % 2 != 0) bits |= 2U;
    return static_cast<SquareClass>(bits);
}

mpz_class representative(SquareClass c, u64 p) {
    mpz_class out = 1;
    const auto bits = static_cast<unsigned>(c);
    if ((bits & 1U) != 0) out *= static_cast<unsigned long>(smallest_nonresidue(p));
    if ((bits & 2U) != 0) out *= static_cast<unsigned long>(p);
    return out;
}

QuadraticLocalField::QuadraticLocalField(u64 p, Kind kind) : p_(p), kind_(kind) { check_odd_prime(p); }

QuadraticLocalField QuadraticLocalField::from_class(u64 p, SquareClass c) {
    switch (c) {
        case SquareClass::One: return {p, Kind::Trivial};
        case SquareClass::U: return {p, Kind::Unramified};
        case SquareClass::P: return {p, Kind::RamifiedP};
        case SquareClass::UP: return {p, Kind::RamifiedUP};
    }
    return {p, Kind::Trivial};
}

QuadraticLocalField QuadraticLocalField::from_discriminant(const mpq_class& d, u64 p) {
    return from_class(p, zp::square_class(d, p));
}

SquareClass QuadraticLocalField::square_class() const noexcept {
    switch (kind_) {
        case Kind::Trivial: return SquareClass::One;
        case Kind::Unramified: return SquareClass::U;
        case Kind::RamifiedP: return SquareClass::P;
        case Kind::RamifiedUP: return SquareClass::UP;
    }
    return SquareClass::One;
}

std::string to_string(QuadraticLocalField::Kind k) {
    switch (k) {
        case QuadraticLocalField::Kind::Trivial: return "trivial";
        case QuadraticLocalField::Kind::Unramified: return "unramified";
        case QuadraticLocalField::Kind::RamifiedP: return "ramified_p";
        case QuadraticLocalField::Kind::RamifiedUP: return "ramified_up";
    }
    return "?";
}

std::optional<QuadraticLocalField::Kind> kind_from_string(const std::string& s) {
    using K = QuadraticLocalField::Kind;
    if (s == "trivial") return K::Trivial;
    if (s == "unramified" || s == "unram") return K::Unramified;
    if (s == "ramified_p" || s == "ram_p") return K::RamifiedP;
    if (s == "ramified_up" || s == "ram_up") return K::RamifiedUP;
    return std::nullopt;
}

bool quadratic_fields_equal(const QuadraticLocalField& f1, const QuadraticLocalField& f2) {
    if (f1.is_degenerate() || f2.is_degenerate()) {
        throw Error(ErrorKind::DegenerateField, "Q_p itself is not a quadratic extension");
    }
    if (f1.prime() != f2.prime()) throw Error(ErrorKind::PrimeMismatch, "fields over different Q_p");
    return f1.square_class() == f2.square_class();
}

std::vector<NormOnePair> norm_one_units(const mpz_class& d, u64 p, unsigned precision, std::size_t count) {
    check_odd_prime(p);
    if (precision == 0 || count == 0) throw Error(ErrorKind::InvalidArgument, "precision and count must be >= 1");
    if (d == 0) throw Error(ErrorKind::ZeroInput, "d must be non-zero");
    constexpr std::size_t kSampleBudget = 100'000;
    const mpz_class m = ipow(p, precision);
    std::vector<NormOnePair> out;
    std::set<std::pair<std::string, std::string>> seen;
    auto add = [&](const mpz_class& x, const mpz_class& y) {
        auto key = std::make_pair(x.get_str(), y.get_str());
        if (seen.insert(key).second) out.emplace_back(x, y);
    };
    auto try_y = [&](const mpz_class& y) {
        const mpz_class rhs = mod(1 + d * y * y, m);
        if (mod_floor(rhs, p) == 0) return;
        if (auto x = sqrt_mod_prime_power(rhs, p, precision)) {
            if (mod_floor(*x, p) != 1 && y % static_cast<unsigned long>(p) == 0) *x = mod(-*x, m);
            add(*x, y);
            add(mod(-*x, m), y);
        }
    };
    // y in pZ_p first: 1 + d y^2 is a principal unit, always a square
    std::size_t sampled = 0;
    const mpz_class pz(static_cast<unsigned long>(p));
    for (mpz_class y = 0; y < m && out.size() < count && sampled < kSampleBudget; y += pz, ++sampled) try_y(y);
    for (mpz_class y = 1; y < m && out.size() < count && sampled < kSampleBudget; ++y, ++sampled) {
        if (y % pz != 0) try_y(y);
    }
    if (out.size() < count) {
        throw Error(ErrorKind::ExhaustedSearch, "found only " + std::to_string(out.size()) + " of " +
                                                    std::to_string(count) + " norm-one units");
    }
    return out;
}

std::vector<NormOnePair> norm_one_units(const QuadraticLocalField& field, unsigned precision, std::size_t count) {
    if (field.is_degenerate()) throw Error(ErrorKind::DegenerateField, "norm-one units of Q_p itself");
    return norm_one_units(field.discriminant(), field.prime(), precision, count);
}

}  // namespace torsion::zp
