#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "torsion/error.hpp"
#include "torsion/towers.hpp"

using namespace torsion;
using namespace torsion::towers;

namespace {

constexpr u64 kPrimes[] = {2, 3, 5, 7};

// every map {2,3,5,7} -> {0,1,2,inf}, other primes 0
std::vector<Supernatural> small_supernaturals() {
    const Exponent choices[] = {Exponent::finite(0), Exponent::finite(1), Exponent::finite(2), Exponent::infinite()};
    std::vector<Supernatural> out;
    for (int code = 0; code < 256; ++code) {
        Supernatural s;
        int c = code;
        for (u64 prime : kPrimes) {
            s.set(prime, choices[c % 4]);
            c /= 4;
        }
        out.push_back(s);
    }
    return out;
}

reduction::ReductionProfile profile_of(u64 p, long a1, long a2, long a3, long a4, long a6) {
    return reduction::classify(reduction::RationalWeierstrass(p, {a1, a2, a3, a4, a6}));
}

}  // namespace

TEST_CASE("supernatural basics") {
    const auto twelve = Supernatural::of(12);
    CHECK(twelve.exponent(2) == Exponent::finite(2));
    CHECK(twelve.exponent(3) == Exponent::finite(1));
    CHECK(twelve.exponent(5) == Exponent::finite(0));
    CHECK(twelve.to_integer() == 12);
    CHECK(twelve.to_string() == "2:2,3:1");
    CHECK(Supernatural::of(1).to_string() == "1");
    CHECK(lcm(Supernatural::of(12), Supernatural::of(18)).to_integer() == 36);
    CHECK(divides(Supernatural::of(4), Supernatural::of(12)) == true);
    CHECK(divides(Supernatural::of(8), Supernatural::of(12)) == false);
    CHECK(divides(Supernatural::of(8), Supernatural::uniform(Exponent::infinite())) == true);
    CHECK_FALSE(divides(Supernatural::of(2), Supernatural::uniform(Exponent::unknown())).has_value());
    CHECK(Supernatural::uniform(Exponent::unknown()).to_string() == "default=fin?");
    CHECK_FALSE(Supernatural::uniform(Exponent::unknown()).is_integer());
}

TEST_CASE("divisibility of integer supernaturals matches integer divisibility") {
    for (u64 a = 1; a <= 60; ++a) {
        for (u64 b = 1; b <= 60; ++b) {
            CHECK(divides(Supernatural::of(a), Supernatural::of(b)) == (b % a == 0));
            CHECK(lcm(Supernatural::of(a), Supernatural::of(b)).to_integer() == std::lcm(a, b));
        }
    }
}

TEST_CASE("lattice laws on small supernaturals") {
    const auto all = small_supernaturals();
    for (const auto& a : all) {
        CHECK(lcm(a, a) == a);
        CHECK(divides(a, a) == true);
        for (const auto& b : all) {
            const auto j = lcm(a, b);
            CHECK(j == lcm(b, a));
            CHECK(divides(a, j) == true);
            CHECK(divides(b, j) == true);
            if (divides(a, b) == true && divides(b, a) == true) CHECK(a == b);
            CHECK(is_potential_prime_to_p(j, 5) == (is_potential_prime_to_p(a, 5) && is_potential_prime_to_p(b, 5)));
        }
    }
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 20000; ++trial) {
        const auto& a = all[pick(rng)];
        const auto& b = all[pick(rng)];
        const auto& c = all[pick(rng)];
        CHECK(lcm(lcm(a, b), c) == lcm(a, lcm(b, c)));
        // least upper bound
        if (divides(a, c) == true && divides(b, c) == true) CHECK(divides(lcm(a, b), c) == true);
        // transitivity
        if (divides(a, b) == true && divides(b, c) == true) CHECK(divides(a, c) == true);
    }
}

TEST_CASE("potential prime-to-p degrees") {
    Supernatural all_but_p = Supernatural::uniform(Exponent::infinite());
    all_but_p.set(5, Exponent::finite(0));
    CHECK(is_potential_prime_to_p(all_but_p, 5));
    CHECK_FALSE(is_potential_prime_to_p(Supernatural().set(5, Exponent::infinite()), 5));
    CHECK(is_potential_prime_to_p(Supernatural::of(125), 5));
    CHECK(is_potential_prime_to_p(Supernatural().set(5, Exponent::unknown()), 5));
}

TEST_CASE("cyclotomic residue") {
    ExtensionDescriptor base;
    CHECK(cyclotomic_residue(base, 5) == Supernatural::of(1));

    ExtensionDescriptor p_tower;
    p_tower.residue_degree.set(5, Exponent::infinite());
    CHECK(cyclotomic_residue(p_tower, 5) == p_tower.residue_degree);

    // F_p(mu_m) has degree ord_m(p): every prime power, p included, occurs for some m prime to p
    ExtensionDescriptor all_roots;
    all_roots.contains_all_roots_of_unity = true;
    const auto deg = cyclotomic_residue(all_roots, 5);
    for (u64 ell : {2, 3, 5, 7}) {
        for (unsigned k = 1; k <= 2; ++k) {
            const u64 target = static_cast<u64>(ipow(ell, k).get_ui());
            bool found = false;
            for (u64 m = 2; m < 200000 && !found; ++m) {
                if (m % 5 == 0 || !is_prime(m)) continue;
                found = multiplicative_order(5 % m, m) % target == 0;
            }
            CHECK(found);
            CHECK(deg.exponent(ell) == Exponent::infinite());
        }
    }
    CHECK(multiplicative_order(5, 11) == 5);
}

TEST_CASE("division tower residue") {
    const auto ord = division_tower_residue(profile_of(5, 0, 0, 0, 1, 1), 5);
    CHECK(ord.exponent(5) == Exponent::infinite());
    CHECK(ord.exponent(2) == Exponent::finite(2));  // ord(2 mod 5) = 4
    CHECK(ord.exponent(3) == Exponent::finite(0));
    CHECK_FALSE(is_potential_prime_to_p(ord, 5));

    const auto ss = division_tower_residue(profile_of(5, 0, 0, 0, 0, 1), 5);
    CHECK(ss.exponent(5).is_finite());
    CHECK(ss.rest().is_finite());
    for (u64 ell : {2, 3, 5, 7, 11}) CHECK(ss.exponent(ell).is_finite());

    const auto ns = profile_of(5, 0, 2, 0, 0, 5);
    REQUIRE(ns.type == reduction::ReductionType::MultNonsplit);
    const auto mult = division_tower_residue(ns, 5);
    for (u64 ell : {2, 3, 5, 7, 11}) CHECK(mult.exponent(ell).is_finite());

    auto additive = profile_of(5, 0, 0, 0, 0, 5);
    additive.potential_resolution.clear();
    CHECK_THROWS_AS(division_tower_residue(additive, 5), Error);
    try {
        division_tower_residue(additive, 5);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AdditiveUnresolved);
    }
}

TEST_CASE("ordinary division towers are never potential prime-to-p") {
    for (u64 p : {5, 7, 11}) {
        for (long a4 = 0; a4 < static_cast<long>(p); ++a4) {
            for (long a6 = 0; a6 < static_cast<long>(p); ++a6) {
                if ((4 * a4 * a4 * a4 + 27 * a6 * a6) % static_cast<long>(p) == 0) continue;
                const auto prof = profile_of(p, 0, 0, 0, a4, a6);
                const auto deg = division_tower_residue(prof, p);
                CHECK(is_potential_prime_to_p(deg, p) == (prof.type != reduction::ReductionType::GoodOrdinary));
            }
        }
    }
}
