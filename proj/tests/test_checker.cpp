#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torsion/checker.hpp"
#include "torsion/error.hpp"

using namespace torsion;
using namespace torsion::checker;
using Kind = zp::QuadraticLocalField::Kind;

namespace {

reduction::RationalWeierstrass short_curve(u64 p, long a4, long a6) {
    return reduction::RationalWeierstrass(p, {0, 0, 0, a4, a6});
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

TEST_CASE("tower law on an ordinary curve with period 4") {
    const auto report = check_tower_law(short_curve(5, 1, 1), 4);
    CHECK(report.passed());
    // four recurrence levels, enumeration up to 5^4 = 625 <= limit
    CHECK(report.cases_run == 8);
    CHECK(ff::tower_count_from_trace(-3, 5, 4).group_order == 675);
}

TEST_CASE("tower law on a supersingular curve") {
    const auto report = check_tower_law(short_curve(5, 0, 1), 6);
    CHECK(report.passed());
    CHECK(report.notes.front().find("supersingular") != std::string::npos);
}

TEST_CASE("tower law over several primes up to level 12") {
    for (u64 p : {5u, 7u, 11u, 13u}) {
        for (long a4 = 0; a4 < 4; ++a4) {
            for (long a6 = 1; a6 < 4; ++a6) {
                const auto e = short_curve(p, a4, a6);
                if (!reduction::classify(e).is_good()) continue;
                const auto report = check_tower_law(e, 12);
                CHECK_MESSAGE(report.passed(), e.to_string());
            }
        }
    }
}

TEST_CASE("tower law rejects bad reduction") {
    CHECK(kind_of([] { check_tower_law(reduction::RationalWeierstrass(5, {0, 1, 0, 0, 5}), 4); }) ==
          ErrorKind::InvalidArgument);
}

TEST_CASE("condition equivalence covers every pair") {
    for (u64 p : {5u, 7u, 11u}) {
        const auto report = check_condition_equivalence(p);
        CHECK(report.passed());
        CHECK(report.cases_run == (p - 1) * (p - 1));
    }
    CHECK(kind_of([] { check_condition_equivalence(3); }) == ErrorKind::UnsupportedPrime);
}

TEST_CASE("norm kernel witnesses for distinct quadratic fields") {
    for (u64 p : {5u, 7u}) {
        const Kind kinds[] = {Kind::Unramified, Kind::RamifiedP, Kind::RamifiedUP};
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                const auto report = check_norm_kernel({p, kinds[i]}, {p, kinds[j]}, 10, 7);
                CHECK(report.passed());
                CHECK(report.cases_run == 2);
                CHECK(report.parameters["witnesses"].size() == 2);
            }
        }
    }
}

TEST_CASE("norm kernel on equal fields passes vacuously") {
    const auto report = check_norm_kernel({5, Kind::RamifiedP}, {5, Kind::RamifiedP}, 10);
    CHECK(report.passed());
    CHECK(report.cases_run == 0);
    CHECK(report.notes.front() == "equal fields: containment holds");
}

TEST_CASE("norm kernel seed fixes the witness") {
    const zp::QuadraticLocalField f1(5, Kind::Unramified), f2(5, Kind::RamifiedP);
    CHECK(check_norm_kernel(f1, f2, 10, 3).parameters == check_norm_kernel(f1, f2, 10, 3).parameters);
}

TEST_CASE("norm kernel input errors") {
    CHECK(kind_of([] { check_norm_kernel({5, Kind::RamifiedP}, {7, Kind::RamifiedP}, 10); }) ==
          ErrorKind::PrimeMismatch);
    CHECK(kind_of([] { check_norm_kernel({5, Kind::Trivial}, {5, Kind::RamifiedP}, 10); }) ==
          ErrorKind::InvalidArgument);
}

TEST_CASE("unit root check") {
    CHECK(check_unit_root(short_curve(5, 1, 1), 20).passed());
    const auto ss = check_unit_root(short_curve(5, 0, 1), 20);
    CHECK(ss.passed());
    CHECK(ss.cases_run == 0);
}

TEST_CASE("run_all is deterministic and green") {
    for (u64 p : {5u, 7u}) {
        const auto a = run_all(p, 11);
        const auto b = run_all(p, 11);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK_MESSAGE(a[i].passed(), a[i].check_name);
            CHECK(a[i].parameters == b[i].parameters);
        }
    }
}
