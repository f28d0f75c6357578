#include "torsion/arith.hpp"

#include <array>

#include "torsion/error.hpp"

namespace torsion {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::SingularCurve: return "SingularCurve";
        case ErrorKind::UnsupportedPrime: return "UnsupportedPrime";
        case ErrorKind::NotOrdinary: return "NotOrdinary";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::DegenerateField: return "DegenerateField";
        case ErrorKind::ExhaustedSearch: return "ExhaustedSearch";
        case ErrorKind::PrecisionMismatch: return "PrecisionMismatch";
        case ErrorKind::PrecisionLoss: return "PrecisionLoss";
        case ErrorKind::PrimeMismatch: return "PrimeMismatch";
        case ErrorKind::InsufficientProfile: return "InsufficientProfile";
        case ErrorKind::AdditiveUnresolved: return "AdditiveUnresolved";
        case ErrorKind::UnresolvedProfile: return "UnresolvedProfile";
        case ErrorKind::UnknownCMStatus: return "UnknownCMStatus";
        case ErrorKind::DescriptorInsufficient: return "DescriptorInsufficient";
        case ErrorKind::SamePrime: return "SamePrime";
        case ErrorKind::InvalidCertificate: return "InvalidCertificate";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

u64 mulmod(u64 a, u64 b, u64 m) noexcept {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) noexcept {
    u64 result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

bool is_prime(u64 n) noexcept {
    if (n < 2) return false;
    static constexpr std::array<u64, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 q : kWitnesses) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (u64 a : kWitnesses) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::map<u64, unsigned> factor(u64 n) {
    std::map<u64, unsigned> out;
    if (n < 2) return out;
    for (u64 q = 2; q <= n / q; ++q) {
        while (n % q == 0) {
            ++out[q];
            n /= q;
        }
    }
    if (n > 1) ++out[n];
    return out;
}

u64 mod_floor(i64 a, u64 m) noexcept {
    const i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

u64 mod_floor(const mpz_class& a, u64 m) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), m);
    return r.get_ui();
}

int legendre(const mpz_class& a, u64 p) {
    const mpz_class pz(static_cast<unsigned long>(p));
    return mpz_legendre(a.get_mpz_t(), pz.get_mpz_t());
}

u64 multiplicative_order(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw Error(ErrorKind::InvalidArgument, "multiplicative_order of a non-unit");
    u64 order = p - 1;
    for (const auto& [q, e] : factor(p - 1)) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(a, order / q, p) == 1) {
                order /= q;
            } else {
                break;
            }
        }
    }
    return order;
}

u64 primitive_root(u64 p) {
    if (p == 2) return 1;
    const auto factors = factor(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& [q, e] : factors) {
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw Error(ErrorKind::InvalidArgument, "no primitive root found; modulus not prime?");
}

u64 smallest_nonresidue(u64 p) {
    for (u64 u = 2; u < p; ++u) {
        if (powmod(u, (p - 1) / 2, p) == p - 1) return u;
    }
    throw Error(ErrorKind::UnsupportedPrime, "no quadratic non-residue mod " + std::to_string(p));
}

u64 discrete_log(u64 a, u64 g, u64 p) {
    a %= p;
    u64 acc = 1;
    for (u64 k = 0; k < p - 1; ++k) {
        if (acc == a) return k;
        acc = mulmod(acc, g, p);
    }
    throw Error(ErrorKind::InvalidArgument, "element not in the cyclic group generated by g");
}

std::optional<long> valuation(const mpz_class& x, u64 p) {
    if (x == 0) return std::nullopt;
    mpz_class t = x;
    long v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p) != 0) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

std::optional<long> valuation(const mpq_class& x, u64 p) {
    if (x == 0) return std::nullopt;
    return *valuation(mpz_class(x.get_num()), p) - *valuation(mpz_class(x.get_den()), p);
}

mpq_class unit_part(const mpq_class& x, u64 p) {
    if (x == 0) throw Error(ErrorKind::ZeroInput, "unit part of zero");
    mpz_class num = x.get_num();
    mpz_class den = x.get_den();
    while (mpz_divisible_ui_p(num.get_mpz_t(), p) != 0) mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), p);
    while (mpz_divisible_ui_p(den.get_mpz_t(), p) != 0) mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
    mpq_class out(num, den);
    out.canonicalize();
    return out;
}

mpz_class reduce_mod(const mpq_class& x, const mpz_class& modulus) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), x.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0) {
        throw Error(ErrorKind::InvalidArgument, "rational is not integral at the modulus");
    }
    mpz_class r = x.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

mpz_class ipow(u64 base, unsigned long exp) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
    return out;
}

}  // namespace torsion
