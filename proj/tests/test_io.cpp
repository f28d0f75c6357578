#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torsion/error.hpp"
#include "torsion/io.hpp"

using namespace torsion;
using namespace torsion::io;
using towers::Exponent;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an exception");
    return ErrorKind::InvalidArgument;
}

std::size_t parse_position(auto&& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e.position();
    }
    FAIL("expected a parse error");
    return 0;
}

}  // namespace

TEST_CASE("curve text parses exact rationals") {
    const auto e = parse_curve("5; 0,0,0,1,1");
    CHECK(e.prime() == 5);
    CHECK(e.a4() == 1);
    CHECK(e.a6() == 1);
    CHECK(e.discriminant() == -496);

    const auto r = parse_curve("7;1/2, -3/4, 0, 5, -1/3");
    CHECK(r.a1() == mpq_class(1, 2));
    CHECK(r.a2() == mpq_class(-3, 4));
    CHECK(r.a6() == mpq_class(-1, 3));
}

TEST_CASE("curve flags") {
    const auto e = parse_curve("5; 0,0,0,0,1; cm=-3");
    REQUIRE(e.annotations().cm_discriminant);
    CHECK(*e.annotations().cm_discriminant == -3);

    const auto f = parse_curve("7; 0,0,0,1,7; non-cm, fcm=none f=2 p-torsion-rational");
    CHECK(f.annotations().non_cm);
    CHECK(f.annotations().fcm == zp::QuadraticLocalField::Kind::Trivial);
    CHECK(f.residue_degree() == 2);
    CHECK(f.annotations().p_torsion_rational);
    CHECK(parse_curve("7; 0,0,0,1,0; fcm=ram_up").annotations().fcm == zp::QuadraticLocalField::Kind::RamifiedUP);
}

TEST_CASE("curve text errors") {
    CHECK(kind_of([] { parse_curve("4; 0,0,0,1,1"); }) == ErrorKind::UnsupportedPrime);
    CHECK(kind_of([] { parse_curve("3; 0,0,0,1,1"); }) == ErrorKind::UnsupportedPrime);
    CHECK(kind_of([] { parse_curve("5; 0,0,0,0,0"); }) == ErrorKind::SingularCurve);
    CHECK(parse_position([] { parse_curve("5; 0,0,x,1,1"); }) == 7);
    CHECK(parse_position([] { parse_curve("5; 0,0,0,1"); }) == 10);
    CHECK(parse_position([] { parse_curve("5; 0,0,0,1,1/0"); }) == 13);
    CHECK(parse_position([] { parse_curve("5; 0,0,0,1,1; bogus"); }) == 14);
    CHECK(parse_position([] { parse_curve("5; 0,0,0,1,1; fcm=wild"); }) == 18);
    CHECK(parse_position([] { parse_curve("x; 0,0,0,1,1"); }) == 0);
    CHECK(kind_of([] { parse_curve("5"); }) == ErrorKind::ParseError);
}

TEST_CASE("curve text round trip") {
    for (const char* text : {"5; 0,0,0,1,1", "7; 1,-1,0,-2,-1; cm=-7 fcm=ram_up", "11; 0,0,0,1/2,3; f=3 non-cm",
                             "13; 0,1,0,0,13; p-torsion-rational"}) {
        const auto e = parse_curve(text);
        const auto back = parse_curve(format_curve(e));
        CHECK(back.same_model(e));
        CHECK(back.annotations() == e.annotations());
        CHECK(back.residue_degree() == e.residue_degree());
        const auto via_json = curve_from_json(to_json(e));
        CHECK(via_json.same_model(e));
        CHECK(via_json.annotations() == e.annotations());
        CHECK(to_json(via_json) == to_json(e));
    }
}

TEST_CASE("supernatural text") {
    CHECK(parse_supernatural("1") == towers::Supernatural());
    CHECK(parse_supernatural("2:2,3:1") == towers::Supernatural::of(12));
    const auto s = parse_supernatural("5:inf;default=fin?");
    CHECK(s.exponent(5) == Exponent::infinite());
    CHECK(s.exponent(2) == Exponent::unknown());
    CHECK(parse_supernatural("default=inf") == towers::Supernatural::uniform(Exponent::infinite()));
    for (const char* text : {"1", "2:2,3:1", "5:inf;default=fin?", "default=inf", "2:0;default=3"}) {
        const auto v = parse_supernatural(text);
        CHECK(parse_supernatural(v.to_string()) == v);
    }
    CHECK(parse_position([] { parse_supernatural("4:1"); }) == 0);
    CHECK(parse_position([] { parse_supernatural("2:x"); }) == 2);
    CHECK(kind_of([] { parse_supernatural("2:1,2:3"); }) == ErrorKind::ParseError);
}

TEST_CASE("descriptor text") {
    const auto d = parse_descriptor("residue=2:1;default=0 mu_p_inf=true galois=false");
    CHECK(d.residue_degree == towers::Supernatural::of(2));
    CHECK(d.contains_mu_p_infinity);
    CHECK_FALSE(d.is_galois_over_K);
    CHECK_FALSE(d.contains_K_E_p);

    const auto e = parse_descriptor("residue=5:inf mu_p_inf=1 galois=1 contains_E_p=true contains_K_E_p=false "
                                    "label=the p-adic tower");
    CHECK(e.contains_E_p);
    CHECK(e.contains_K_E_p == false);
    CHECK(e.label == "the p-adic tower");
    CHECK(parse_descriptor(format_descriptor(e)) == e);
    CHECK(descriptor_from_json(to_json(e)) == e);

    CHECK(kind_of([] { parse_descriptor("mu_p_inf=true"); }) == ErrorKind::ParseError);
    CHECK(parse_position([] { parse_descriptor("residue=1 colour=red"); }) == 10);
    CHECK(parse_position([] { parse_descriptor("residue=1 galois=maybe"); }) == 17);
}

TEST_CASE("rational map text") {
    const auto m = parse_rational_map("-3,-2,1; 0,1; -3,0,-1; 0,0,1");
    CHECK(m.x_num == verdict::Poly{-3, -2, 1});
    CHECK(m.y_den == verdict::Poly{0, 0, 1});
    CHECK(parse_rational_map(format_rational_map(m)) == m);
    CHECK(kind_of([] { parse_rational_map("1;2;3"); }) == ErrorKind::ParseError);
}

TEST_CASE("profile JSON round trip") {
    for (const char* text : {"5; 0,0,0,1,1", "5; 0,0,0,0,1", "5; 0,1,0,0,5", "7; 1,-1,0,-2,-1",
                             "7; 0,0,0,1,7; non-cm", "5; 0,0,0,0,125", "7; 0,0,0,1,1; f=2"}) {
        const auto prof = reduction::classify(parse_curve(text));
        const auto j = to_json(prof);
        const auto back = profile_from_json(j);
        CHECK(to_json(back) == j);
        CHECK(back.kodaira == prof.kodaira);
        CHECK(back.type == prof.type);
        CHECK(back.cm == prof.cm);
        CHECK(back.fcm == prof.fcm);
        CHECK(back.trace == prof.trace);
        CHECK(back.reduced_curve.has_value() == prof.reduced_curve.has_value());
    }
    CHECK(kind_of([] { profile_from_json(json{{"p", 5}}); }) == ErrorKind::ParseError);
}

TEST_CASE("verdict JSON round trip") {
    const auto e1 = reduction::classify(parse_curve("5; 0,0,0,1,1"));
    const auto e2 = reduction::classify(parse_curve("5; 0,0,0,0,1"));
    const auto non_cm = reduction::classify(parse_curve("5; 0,0,0,1,1; non-cm"));
    for (const auto& v : {verdict::decide_pair(e1, e2), verdict::decide_pair(e1, e1), verdict::decide_pair(e2, e1),
                          verdict::decide_unramified(non_cm), verdict::cross_prime(5, 7)}) {
        const auto j = to_json(v);
        CHECK(verdict_from_json(j) == v);
        CHECK(j.contains("citation"));
        CHECK(j.at("premises").is_array());
    }
}

TEST_CASE("check report JSON round trip") {
    const auto report = checker::check_tower_law(parse_curve("5; 0,0,0,1,1"), 4);
    const auto j = to_json(report);
    CHECK_FALSE(j.contains("elapsed_seconds"));
    CHECK(to_json(report, true).contains("elapsed_seconds"));
    const auto back = report_from_json(j);
    CHECK(back.check_name == report.check_name);
    CHECK(back.parameters == report.parameters);
    CHECK(back.cases_run == report.cases_run);
    CHECK(back.failures == report.failures);
    CHECK(back.notes == report.notes);
    CHECK(to_json(back) == j);
}
