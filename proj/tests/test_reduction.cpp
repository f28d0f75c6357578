#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torsion/error.hpp"
#include "torsion/reduction.hpp"

using namespace torsion;
using namespace torsion::reduction;

namespace {

RationalWeierstrass curve(u64 p, long a1, long a2, long a3, long a4, long a6, Annotations notes = {}) {
    return RationalWeierstrass(p, {a1, a2, a3, a4, a6}, 1, notes);
}

RationalWeierstrass short_curve(u64 p, long a4, long a6, Annotations notes = {}) {
    return curve(p, 0, 0, 0, a4, a6, notes);
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

// projective points on the (possibly singular) reduction of an integral model
long count_reduction(const RationalWeierstrass& e) {
    const long p = static_cast<long>(e.prime());
    std::array<long, 5> a{};
    for (int i = 0; i < 5; ++i) a[i] = static_cast<long>(mod_floor(reduce_mod(e.coefficients()[i], p), p));
    long count = 1;
    for (long x = 0; x < p; ++x) {
        for (long y = 0; y < p; ++y) {
            const long lhs = y * y + a[0] * x * y + a[2] * y;
            const long rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
            if ((lhs - rhs) % p == 0) ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("invariants of y^2 = x^3 + x + 1") {
    const auto e = short_curve(5, 1, 1);
    CHECK(e.discriminant() == -496);
    CHECK(e.c4() == -48);
    CHECK(e.c6() == -864);
    CHECK(e.j_invariant() == mpq_class(6912, 31));
    CHECK(e.c4() * e.c4() * e.c4() - e.c6() * e.c6() == 1728 * e.discriminant());
}

TEST_CASE("good ordinary example") {
    const auto prof = classify(short_curve(5, 1, 1));
    CHECK(prof.type == ReductionType::GoodOrdinary);
    CHECK(prof.kodaira.to_string() == "I0");
    CHECK(prof.trace == -3);
    CHECK(prof.reduced_curve.has_value());
    CHECK(prof.cm.kind == CmStatus::Kind::Unknown);
    CHECK(prof.fcm.kind == FcmStatus::Kind::None);
    CHECK(profile_violations(prof).empty());
    CHECK(kind_of([&] { lie_class(prof); }) == ErrorKind::InsufficientProfile);

    const auto assumed = classify(short_curve(5, 1, 1), {.assume_non_cm = true});
    CHECK(assumed.cm.kind == CmStatus::Kind::NonCM);
    CHECK(assumed.cm.source == Provenance::Assumed);
    CHECK(lie_class(assumed) == LieClass{LieClass::Kind::Borel, 3, 2});

    const auto annotated = classify(short_curve(5, 1, 1, {.non_cm = true}));
    CHECK(annotated.cm.source == Provenance::Annotated);
}

TEST_CASE("good supersingular CM example") {
    const auto prof = classify(short_curve(5, 0, 1));
    CHECK(prof.type == ReductionType::GoodSupersingular);
    CHECK(prof.trace == 0);
    CHECK(prof.cm.kind == CmStatus::Kind::CM);
    CHECK(prof.cm.discriminant == -3);
    CHECK(prof.fcm.kind == FcmStatus::Kind::Field);
    CHECK(prof.fcm.field->kind() == zp::QuadraticLocalField::Kind::Unramified);
    CHECK(lie_class(prof) == LieClass{LieClass::Kind::NonsplitCartan, 2, 2});
    CHECK(profile_violations(prof).empty());
}

TEST_CASE("ordinary CM curve has split Cartan image") {
    // -3 is a square mod 7
    const auto prof = classify(short_curve(7, 0, 1));
    CHECK(prof.type == ReductionType::GoodOrdinary);
    CHECK(lie_class(prof) == LieClass{LieClass::Kind::SplitCartan, 2, 1});
}

TEST_CASE("multiplicative reduction: split vs nonsplit agrees with point counts") {
    const auto split = curve(5, 0, 1, 0, 0, 5);
    const auto nonsplit = curve(5, 0, 2, 0, 0, 5);
    const auto ps = classify(split);
    const auto pn = classify(nonsplit);
    CHECK(ps.type == ReductionType::MultSplit);
    CHECK(pn.type == ReductionType::MultNonsplit);
    CHECK(ps.kodaira.to_string() == "I1");
    CHECK(ps.potential_type == PotentialType::PotMultiplicative);
    // a node with rational tangents leaves p - 1 smooth points, otherwise p + 1
    CHECK(count_reduction(split) == 5);
    CHECK(count_reduction(nonsplit) == 7);
    CHECK(lie_class(ps) == LieClass{LieClass::Kind::NilpotentNX, 2, 2});

    // over F_25 every node splits
    const RationalWeierstrass over_f2(5, {0, 2, 0, 0, 5}, 2);
    CHECK(classify(over_f2).type == ReductionType::MultSplit);

    for (long a2 = 1; a2 < 7; ++a2) {
        for (long a6 : {7L, 14L, 49L}) {
            const auto e = curve(7, 0, a2, 0, 0, a6);
            const auto prof = classify(e);
            if (!prof.is_multiplicative()) continue;
            CHECK(count_reduction(e) == (prof.type == ReductionType::MultSplit ? 7 : 9));
        }
    }
}

TEST_CASE("Kodaira symbols of y^2 = x^3 + 5^k and y^2 = x^3 + 5^k x") {
    auto symbol = [](long a4, long a6) { return tate_classify(short_curve(5, a4, a6)).kodaira.to_string(); };
    CHECK(symbol(0, 5) == "II");
    CHECK(symbol(5, 0) == "III");
    CHECK(symbol(0, 25) == "IV");
    CHECK(symbol(0, 125) == "I0*");
    CHECK(symbol(0, 625) == "IV*");
    CHECK(symbol(125, 0) == "III*");
    CHECK(symbol(0, 3125) == "II*");
    CHECK(symbol(0, 15625) == "I0");  // 5^6: not minimal
    CHECK(tate_classify(short_curve(5, 0, 15625)).v_disc_min == 0);

    // twisting the I1 curve by 5 gives I1*
    const auto star = tate_classify(tate_classify(curve(5, 0, 1, 0, 0, 5)).minimal_model.quadratic_twist(5));
    CHECK(star.kodaira.to_string() == "I1*");
}

TEST_CASE("additive reduction resolves potential type") {
    const auto ii = classify(short_curve(5, 0, 5));
    CHECK(ii.type == ReductionType::Additive);
    CHECK(ii.potential_type == PotentialType::PotGoodSupersingular);  // j = 0, 5 == 2 mod 3
    CHECK(ii.fcm.field->kind() == zp::QuadraticLocalField::Kind::Unramified);

    const auto ii7 = classify(short_curve(7, 0, 7));
    CHECK(ii7.potential_type == PotentialType::PotGoodOrdinary);  // j = 0, 7 == 1 mod 3

    // quadratic twist of the ordinary curve by 5: I0*, potentially ordinary
    const auto tw = classify(short_curve(5, 25, 125, {.non_cm = true}));
    CHECK(tw.kodaira.to_string() == "I0*");
    CHECK(tw.potential_type == PotentialType::PotGoodOrdinary);
    CHECK(profile_violations(tw).empty());

    // CM by -7 with 7 ramified: additive, potentially supersingular, formal CM by Q_7(sqrt(-7))
    const auto cm7 = classify(curve(7, 1, -1, 0, -2, -1));
    CHECK(cm7.cm.discriminant == -7);
    CHECK(cm7.type == ReductionType::Additive);
    CHECK(cm7.potential_type == PotentialType::PotGoodSupersingular);
    CHECK(cm7.fcm.field->kind() == zp::QuadraticLocalField::Kind::RamifiedUP);
    CHECK(profile_violations(cm7).empty());

    // potentially multiplicative
    const auto i1star = classify(tate_classify(curve(5, 0, 1, 0, 0, 5)).minimal_model.quadratic_twist(5));
    CHECK(i1star.type == ReductionType::Additive);
    CHECK(i1star.potential_type == PotentialType::PotMultiplicative);
    CHECK(i1star.v_j == -1);
}

TEST_CASE("j = 1728 at p = 7 has formal CM by the unramified field") {
    const auto prof = classify(short_curve(7, 1, 0));
    CHECK(prof.type == ReductionType::GoodSupersingular);
    CHECK(prof.cm.discriminant == -4);
    CHECK(prof.fcm.field->kind() == zp::QuadraticLocalField::Kind::Unramified);
}

TEST_CASE("classification is invariant under change of variables") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> small(-6, 6);
    const std::vector<RationalWeierstrass> base = {
        short_curve(5, 1, 1), short_curve(5, 0, 1), curve(5, 0, 1, 0, 0, 5),
        short_curve(5, 0, 25), short_curve(7, 1, 3), curve(7, 1, -1, 0, -2, -1),
    };
    for (const auto& e : base) {
        const auto ref = classify(e);
        for (int trial = 0; trial < 20; ++trial) {
            long u = small(rng);
            if (u == 0) u = 1;
            const mpq_class uu = trial % 3 == 0 ? mpq_class(u * 5) : mpq_class(u);
            const auto moved = e.transform(uu, small(rng), small(rng), mpq_class(small(rng), 2));
            CHECK(moved.j_invariant() == e.j_invariant());
            CHECK(moved.discriminant() * uu * uu * uu * uu * uu * uu * uu * uu * uu * uu * uu * uu ==
                  e.discriminant());
            const auto prof = classify(moved);
            CHECK(prof.kodaira == ref.kodaira);
            CHECK(prof.type == ref.type);
            CHECK(prof.potential_type == ref.potential_type);
            CHECK(prof.trace == ref.trace);
            CHECK(profile_violations(prof).empty());
        }
    }
}

TEST_CASE("quadratic twist by a non-residue negates the trace") {
    for (long a4 = 0; a4 < 7; ++a4) {
        for (long a6 = 0; a6 < 7; ++a6) {
            if ((4 * a4 * a4 * a4 + 27 * a6 * a6) % 7 == 0) continue;
            const auto e = short_curve(7, a4, a6);
            const auto t = classify(e.quadratic_twist(3));
            CHECK(t.trace == -*classify(e).trace);
        }
    }
}

TEST_CASE("residue degree and residue trace") {
    const RationalWeierstrass e(5, {0, 0, 0, 1, 1}, 2);
    const auto prof = classify(e);
    CHECK(prof.residue_degree == 2);
    CHECK(prof.residue_trace() == -1);  // (-3)^2 - 2*5
}

TEST_CASE("annotation consistency and errors") {
    CHECK(kind_of([] { classify(short_curve(5, 1, 1, {.cm_discriminant = -3})); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { classify(short_curve(5, 0, 1, {.non_cm = true})); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { short_curve(3, 1, 1); }) == ErrorKind::UnsupportedPrime);
    CHECK(kind_of([] { short_curve(6, 1, 1); }) == ErrorKind::UnsupportedPrime);
    CHECK(kind_of([] { short_curve(5, 0, 0); }) == ErrorKind::SingularCurve);
    CHECK(kind_of([] { short_curve(5, -3, 2); }) == ErrorKind::SingularCurve);

    Annotations fcm_note;
    fcm_note.non_cm = true;
    fcm_note.fcm = zp::QuadraticLocalField::Kind::RamifiedP;
    // reduces to y^2 = x^3 + x, so supersingular, but j is not a CM invariant
    const auto prof = classify(short_curve(7, 1, 7, fcm_note));
    CHECK(prof.type == ReductionType::GoodSupersingular);
    CHECK(prof.fcm.kind == FcmStatus::Kind::Field);
    CHECK(prof.fcm.source == Provenance::Annotated);
    CHECK(lie_class(prof).kind == LieClass::Kind::NonsplitCartan);

    const auto plain = classify(short_curve(7, 1, 7, {.non_cm = true}));
    CHECK(plain.fcm.kind == FcmStatus::Kind::None);
    CHECK(lie_class(plain) == LieClass{LieClass::Kind::FullGl2, 4, 4});
    CHECK(classify(short_curve(7, 1, 7)).fcm.kind == FcmStatus::Kind::Unknown);
    CHECK(kind_of([] { classify(short_curve(5, 1, 1, {.fcm = zp::QuadraticLocalField::Kind::Unramified})); }) ==
          ErrorKind::InvalidArgument);
}

TEST_CASE("rational CM table") {
    CHECK(rational_cm_table().size() == 13);
    for (const auto& entry : rational_cm_table()) {
        CHECK(cm_discriminant_of(mpq_class(entry.j)) == entry.discriminant);
    }
    CHECK_FALSE(cm_discriminant_of(mpq_class(6912, 31)).has_value());
}
