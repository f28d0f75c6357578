#include "torsion/towers.hpp"

#include <sstream>

#include "torsion/error.hpp"

namespace torsion::towers {

std::string to_string(const Exponent& e) {
    switch (e.kind) {
        case Exponent::Kind::Finite: return std::to_string(e.value);
        case Exponent::Kind::FiniteUnknown: return "fin?";
        case Exponent::Kind::Infinite: return "inf";
    }
    return "?";
}

std::optional<Exponent> exponent_from_string(const std::string& s) {
    if (s == "inf") return Exponent::infinite();
    if (s == "fin?") return Exponent::unknown();
    if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    return Exponent::finite(static_cast<unsigned>(std::stoul(s)));
}

Exponent max(const Exponent& a, const Exponent& b) {
    using K = Exponent::Kind;
    if (a.kind == K::Infinite || b.kind == K::Infinite) return Exponent::infinite();
    if (a.kind == K::FiniteUnknown) return a;
    if (b.kind == K::FiniteUnknown) return b;
    return Exponent::finite(std::max(a.value, b.value));
}

std::optional<bool> less_equal(const Exponent& a, const Exponent& b) {
    using K = Exponent::Kind;
    if (b.kind == K::Infinite) return true;
    if (a.kind == K::Infinite) return false;
    if (a.is_zero()) return true;
    if (a.kind == K::Finite && b.kind == K::Finite) return a.value <= b.value;
    return std::nullopt;
}

Supernatural Supernatural::of(u64 n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "supernatural numbers are positive");
    Supernatural out;
    for (const auto& [prime, e] : factor(n)) out.entries_[prime] = Exponent::finite(e);
    return out;
}

Supernatural Supernatural::uniform(Exponent e) {
    Supernatural out;
    out.rest_ = e;
    return out;
}

Exponent Supernatural::exponent(u64 prime) const {
    const auto it = entries_.find(prime);
    return it == entries_.end() ? rest_ : it->second;
}

Supernatural& Supernatural::set(u64 prime, Exponent e) {
    if (!is_prime(prime)) throw Error(ErrorKind::InvalidArgument, std::to_string(prime) + " is not prime");
    entries_[prime] = e;
    normalize();
    return *this;
}

Supernatural& Supernatural::set_rest(Exponent e) {
    rest_ = e;
    normalize();
    return *this;
}

void Supernatural::normalize() {
    std::erase_if(entries_, [&](const auto& kv) { return kv.second == rest_; });
}

bool Supernatural::is_integer() const {
    if (!rest_.is_zero()) return false;
    for (const auto& [prime, e] : entries_) {
        if (e.kind != Exponent::Kind::Finite) return false;
    }
    return true;
}

std::optional<mpz_class> Supernatural::to_integer() const {
    if (!is_integer()) return std::nullopt;
    mpz_class out = 1;
    for (const auto& [prime, e] : entries_) out *= ipow(prime, e.value);
    return out;
}

std::string Supernatural::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [prime, e] : entries_) {
        os << (first ? "" : ",") << prime << ':' << towers::to_string(e);
        first = false;
    }
    if (first) os << (rest_.is_zero() ? "1" : "");
    if (!rest_.is_zero()) os << (first ? "" : ";") << "default=" << towers::to_string(rest_);
    return os.str();
}

Supernatural lcm(const Supernatural& a, const Supernatural& b) {
    Supernatural out = Supernatural::uniform(max(a.rest(), b.rest()));
    for (const auto& [prime, e] : a.entries()) out.set(prime, max(e, b.exponent(prime)));
    for (const auto& [prime, e] : b.entries()) out.set(prime, max(a.exponent(prime), e));
    return out;
}

std::optional<bool> divides(const Supernatural& a, const Supernatural& b) {
    bool undecided = false;
    auto fold = [&](const Exponent& x, const Exponent& y) {
        const auto le = less_equal(x, y);
        if (!le) undecided = true;
        return le.value_or(true);
    };
    if (!fold(a.rest(), b.rest())) return false;
    for (const auto& [prime, e] : a.entries()) {
        if (!fold(e, b.exponent(prime))) return false;
    }
    for (const auto& [prime, e] : b.entries()) {
        if (!fold(a.exponent(prime), e)) return false;
    }
    if (undecided) return std::nullopt;
    return true;
}

bool is_potential_prime_to_p(const Supernatural& deg, u64 p) { return deg.exponent(p).is_finite(); }

Supernatural cyclotomic_residue(const ExtensionDescriptor& base, u64 p) {
    // K(mu_{p^inf})/K is totally ramified. Prime-to-p roots of unity of every
    // order generate all of F_p-bar, including the p-power degree layers.
    (void)p;
    if (base.contains_all_roots_of_unity) return Supernatural::uniform(Exponent::infinite());
    return base.residue_degree;
}

Supernatural division_tower_residue(const reduction::ReductionProfile& profile, u64 p) {
    using reduction::PotentialType;
    using reduction::ReductionType;
    if (profile.p != p) throw Error(ErrorKind::PrimeMismatch, "profile is at a different prime");
    if (profile.type == ReductionType::Additive && profile.potential_resolution.empty()) {
        throw Error(ErrorKind::AdditiveUnresolved, "additive reduction without a resolved potential type");
    }
    if (profile.type == ReductionType::GoodOrdinary) {
        const auto a_q = profile.residue_trace();
        if (!a_q) throw Error(ErrorKind::InsufficientProfile, "ordinary profile without a trace of Frobenius");
        // k(E~[p^inf]) has degree ord(a_q mod p) times a full p-power tower
        Supernatural out = Supernatural::of(multiplicative_order(mod_floor(*a_q, p), p));
        out.set(p, Exponent::infinite());
        return out;
    }
    if (profile.type == ReductionType::Additive && profile.potential_type == PotentialType::PotGoodOrdinary) {
        // the base change achieving good reduction has unknown finite degree
        Supernatural out = Supernatural::uniform(Exponent::unknown());
        out.set(p, Exponent::infinite());
        return out;
    }
    // supersingular or multiplicative: the residue field of K_{E,p} is finite
    return Supernatural::uniform(Exponent::unknown());
}

}  // namespace torsion::towers
