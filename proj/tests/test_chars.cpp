#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "torsion/chars.hpp"
#include "torsion/error.hpp"

using namespace torsion;
using namespace torsion::chars;

namespace {

reduction::ReductionProfile short_profile(u64 p, long a4, long a6, unsigned f = 1) {
    return reduction::classify(reduction::RationalWeierstrass(p, {0, 0, 0, a4, a6}, f));
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

TEST_CASE("character of y^2 = x^3 + x + 1 over Q_5") {
    const auto chi = character_of(short_profile(5, 1, 1));
    CHECK(chi.mod_p_value == 2);
    CHECK(chi.order_mod_p == 4);
    CHECK(chi.m == 1);  // 2 is the smallest primitive root mod 5
    CHECK(division_field_mod_p_degree(chi) == 4);
    CHECK(chi.frobenius_value.precision() == 20);
    CHECK(chi.n.precision() == 19);
}

TEST_CASE("character decomposition is consistent") {
    for (u64 p : {5, 7, 11, 13}) {
        const long bound = 2 * static_cast<long>(std::sqrt(static_cast<double>(p)));
        for (long a = -bound; a <= bound; ++a) {
            if (a % static_cast<long>(p) == 0) continue;
            for (unsigned f : {1u, 2u, 3u}) {
                const auto chi = character_from_trace(a, p, f, 12);
                CHECK(chi.mod_p_value == mod_floor(ff::weil_trace(a, p, f), p));
                CHECK((p - 1) % chi.order_mod_p == 0);
                CHECK(kernel_index(chi.m, p) == chi.order_mod_p);
                CHECK(powmod(primitive_root(p), chi.m, p) == chi.mod_p_value);
                // teichmuller(chi mod p) * (1+p)^n recovers chi
                const auto rebuilt = zp::teichmuller_lift(chi.mod_p_value, p, 12) *
                                     zp::PadicInt(p, 12, static_cast<unsigned long>(p + 1)).pow(chi.n.value());
                CHECK(rebuilt == chi.frobenius_value);
                CHECK(condition_d(chi, chi));
            }
        }
    }
}

TEST_CASE("mod p value is a_p mod p for every ordinary curve") {
    for (u64 p : {5, 7}) {
        for (long a4 = 0; a4 < static_cast<long>(p); ++a4) {
            for (long a6 = 0; a6 < static_cast<long>(p); ++a6) {
                if ((4 * a4 * a4 * a4 + 27 * a6 * a6) % static_cast<long>(p) == 0) continue;
                const auto prof = short_profile(p, a4, a6);
                if (prof.type != reduction::ReductionType::GoodOrdinary) {
                    CHECK(kind_of([&] { character_of(prof); }) == ErrorKind::NotOrdinary);
                    continue;
                }
                CHECK(character_of(prof).mod_p_value == mod_floor(*prof.trace, p));
            }
        }
    }
}

TEST_CASE("trivial and surjective characters") {
    const auto trivial = character_from_trace(1, 5, 1, 20);
    CHECK(trivial.order_mod_p == 1);
    CHECK(division_field_mod_p_degree(trivial) == 1);
    const auto full = character_from_trace(2, 5, 1, 20);
    CHECK(full.order_mod_p == 4);
    const auto half = character_from_trace(-1, 5, 1, 20);
    CHECK(half.order_mod_p == 2);
    CHECK(division_field_mod_p_degree(half) == 2);
    for (const auto& other : {trivial, full, half}) {
        CHECK(condition_d(trivial, other));
        CHECK(condition_d(other, full));
    }
    CHECK_FALSE(condition_d(full, half));
}

TEST_CASE("condition (c) examples") {
    const auto a = character_from_trace(2, 5, 1, 20);
    const auto b = character_from_trace(-2, 5, 1, 20);  // 3 mod 5, also order 4
    CHECK(a.order_mod_p == 4);
    CHECK(b.order_mod_p == 4);
    CHECK(condition_c(a, b));
    CHECK(condition_c(a, a));

    const auto six = character_from_trace(3, 7, 1, 20);
    const auto three = character_from_trace(2, 7, 1, 20);
    REQUIRE(six.order_mod_p == 6);
    REQUIRE(three.order_mod_p == 3);
    CHECK_FALSE(condition_c(six, three));
    CHECK(condition_c(three, six));
    // subgroup enumeration inside Z/6
    CHECK_FALSE(subgroup_contains(six.m, three.m, 7));

    CHECK(kind_of([&] { condition_d(a, six); }) == ErrorKind::PrimeMismatch);
}

TEST_CASE("condition (c) needs a nonzero logarithm") {
    // a character whose 1-unit part is exactly trivial at this precision
    auto chi = character_from_trace(2, 5, 1, 4);
    chi.n = zp::PadicInt(5, 3, 0);
    CHECK(kind_of([&] { condition_c(chi, chi); }) == ErrorKind::PrecisionLoss);
}

TEST_CASE("gcd route equals subgroup enumeration") {
    for (u64 p : {5, 7, 11, 13}) {
        for (u64 m1 = 0; m1 < p - 1; ++m1) {
            for (u64 m2 = 0; m2 < p - 1; ++m2) {
                CHECK((kernel_index(m2, p) % kernel_index(m1, p) == 0) == subgroup_contains(m1, m2, p));
            }
        }
        CHECK(generated_subgroup(0, p) == std::vector<u64>{1});
        CHECK(generated_subgroup(1, p).size() == p - 1);
    }
}

TEST_CASE("residue degree raises Frobenius to the f-th power") {
    const auto chi = character_of(short_profile(5, 1, 1, 2));
    CHECK(chi.residue_degree == 2);
    CHECK(chi.mod_p_value == 4);  // 2^2
    CHECK(chi.order_mod_p == 2);
    const auto base = character_of(short_profile(5, 1, 1));
    CHECK(chi.frobenius_value == base.frobenius_value * base.frobenius_value);
}
