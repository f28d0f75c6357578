#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "torsion/error.hpp"
#include "torsion/zp.hpp"

using namespace torsion;
using namespace torsion::zp;

namespace {

mpz_class modp(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// every unit u mod p^N with u^2 - a u + p == 0
std::vector<mpz_class> brute_unit_roots(long a, u64 p, unsigned n) {
    const mpz_class m = ipow(p, n);
    std::vector<mpz_class> out;
    for (mpz_class u = 0; u < m; ++u) {
        if (mod_floor(u, p) == 0) continue;
        if (modp(u * u - a * u + static_cast<unsigned long>(p), m) == 0) out.push_back(u);
    }
    return out;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an exception");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("unit root examples") {
    CHECK(hensel_unit_root(-3, 5, 1).value() == 2);

    const auto u = hensel_unit_root(1, 5, 3);
    CHECK(modp(u.value() * u.value() - u.value() + 5, 125) == 0);
    CHECK(u.is_unit());
    CHECK(brute_unit_roots(1, 5, 3) == std::vector<mpz_class>{u.value()});

    CHECK(kind_of([] { hensel_unit_root(5, 5, 2); }) == ErrorKind::NotOrdinary);
}

TEST_CASE("unit root agrees with exhaustive search and is stable under more precision") {
    for (u64 p : {5, 7, 11}) {
        const long bound = 2 * static_cast<long>(std::sqrt(static_cast<double>(p)));
        for (long a = -bound; a <= bound; ++a) {
            if (a % static_cast<long>(p) == 0) continue;
            const auto u = hensel_unit_root(a, p, 3);
            CHECK(brute_unit_roots(a, p, 3) == std::vector<mpz_class>{u.value()});
            const auto hi = hensel_unit_root(a, p, 25);
            const auto lo = hensel_unit_root(a, p, 20);
            CHECK(hi.reduce(20) == lo);
            CHECK(mod_floor(lo.value(), p) == mod_floor(mpz_class(a), p));
        }
    }
}

TEST_CASE("square classes") {
    CHECK(square_class(4, 5) == SquareClass::One);
    CHECK(square_class(2, 5) == SquareClass::U);
    CHECK(square_class(10, 5) == SquareClass::UP);
    CHECK(square_class(mpq_class(1, 5), 5) == SquareClass::P);
    CHECK(square_class(mpq_class(3, 2), 5) == SquareClass::One);  // 3/2 == 4 mod 5
    CHECK(kind_of([] { square_class(0, 5); }) == ErrorKind::ZeroInput);
    CHECK(representative(SquareClass::UP, 7) == 21);
}

TEST_CASE("square class is multiplicative") {
    for (u64 p : {5, 7, 11}) {
        for (long x = 1; x <= 50; ++x) {
            for (long y = 1; y <= 50; ++y) {
                CHECK(square_class(x * y, p) == square_class(x, p) * square_class(y, p));
            }
        }
    }
}

TEST_CASE("quadratic field equality") {
    using K = QuadraticLocalField::Kind;
    CHECK(quadratic_fields_equal({5, K::Unramified}, {5, K::Unramified}));
    CHECK_FALSE(quadratic_fields_equal({5, K::RamifiedP}, {5, K::RamifiedUP}));
    // 2 and 3 are both non-residues mod 5
    CHECK(quadratic_fields_equal(QuadraticLocalField::from_discriminant(2, 5),
                                 QuadraticLocalField::from_discriminant(3, 5)));
    CHECK(QuadraticLocalField::from_discriminant(-3, 5).kind() == K::Unramified);
    CHECK(QuadraticLocalField::from_discriminant(5, 5).kind() == K::RamifiedP);
    CHECK(kind_of([] { quadratic_fields_equal({5, K::Trivial}, {5, K::Unramified}); }) == ErrorKind::DegenerateField);
}

TEST_CASE("norm-one units") {
    const auto one = norm_one_units(2, 5, 1, 1);
    CHECK(one.front() == NormOnePair{1, 0});

    // -3 is a non-residue mod 5: the norm-one group mod 25 has (p+1)p = 30 elements
    for (auto [d, count] : {std::pair<long, std::size_t>{2, 3}, {10, 2}, {5, 6}, {-3, 30}}) {
        const auto units = norm_one_units(d, 5, 2, count);
        CHECK(units.size() >= count);
        std::set<std::pair<std::string, std::string>> distinct;
        for (const auto& [x, y] : units) {
            CHECK(modp(x * x - d * y * y, 25) == 1);
            distinct.emplace(x.get_str(), y.get_str());
        }
        CHECK(distinct.size() == units.size());
    }

    CHECK(kind_of([] { norm_one_units(2, 5, 1, 1000); }) == ErrorKind::ExhaustedSearch);
}

TEST_CASE("norm-one units are closed under multiplication") {
    for (long d : {2L, 5L, 10L}) {
        const auto units = norm_one_units(d, 5, 6, 12);
        const mpz_class m = ipow(5, 6);
        for (const auto& [x1, y1] : units) {
            for (const auto& [x2, y2] : units) {
                const mpz_class x = modp(x1 * x2 + d * y1 * y2, m);
                const mpz_class y = modp(x1 * y2 + x2 * y1, m);
                CHECK(modp(x * x - d * y * y, m) == 1);
            }
        }
    }
}

TEST_CASE("Teichmuller lift and principal log") {
    for (u64 p : {5, 7, 13}) {
        for (u64 a = 1; a < p; ++a) {
            const auto w = teichmuller_lift(a, p, 12);
            CHECK(w.pow(p - 1) == PadicInt(p, 12, 1));
            CHECK(mod_floor(w.value(), p) == a);
        }
        const PadicInt base(p, 10, static_cast<unsigned long>(p + 1));
        for (unsigned long n : {0UL, 1UL, 7UL, 12345UL}) {
            const auto log = principal_log(base.pow(n));
            CHECK(log.precision() == 9);
            CHECK(log.value() == modp(n, ipow(p, 9)));
        }
    }
}

TEST_CASE("padic arithmetic guards precision") {
    const PadicInt a(5, 3, 7), b(5, 4, 7);
    CHECK(kind_of([&] { (void)(a + b); }) == ErrorKind::PrecisionMismatch);
    CHECK((a * a.inverse()).value() == 1);
    CHECK(PadicInt(5, 3, 50).valuation() == 2u);
    CHECK_FALSE(PadicInt(5, 3, 125).valuation().has_value());
    CHECK(PadicInt::from_rational(mpq_class(1, 2), 5, 2).value() == 13);
}
