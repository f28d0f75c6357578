#include "torsion/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "torsion/error.hpp"

namespace torsion::io {
namespace {

using reduction::RationalWeierstrass;
using QKind = zp::QuadraticLocalField::Kind;

bool is_blank(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

/// A slice of the input remembering where it starts, for error positions.
struct Span {
    std::string_view text;
    std::size_t offset = 0;

    Span trimmed() const {
        std::size_t b = 0, e = text.size();
        while (b < e && is_blank(text[b])) ++b;
        while (e > b && is_blank(text[e - 1])) --e;
        return {text.substr(b, e - b), offset + b};
    }
    bool empty() const { return text.empty(); }
    std::string str() const { return std::string(text); }
};

std::vector<Span> split(Span s, char sep) {
    std::vector<Span> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.text.size(); ++i) {
        if (i == s.text.size() || s.text[i] == sep) {
            out.push_back({s.text.substr(start, i - start), s.offset + start});
            start = i + 1;
        }
    }
    return out;
}

/// Blank- or comma-separated tokens.
std::vector<Span> tokens(Span s) {
    std::vector<Span> out;
    std::size_t i = 0;
    while (i < s.text.size()) {
        while (i < s.text.size() && (is_blank(s.text[i]) || s.text[i] == ',')) ++i;
        const std::size_t start = i;
        while (i < s.text.size() && !is_blank(s.text[i]) && s.text[i] != ',') ++i;
        if (i > start) out.push_back({s.text.substr(start, i - start), s.offset + start});
    }
    return out;
}

bool all_digits(std::string_view s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
}

u64 parse_unsigned(Span s, const char* what) {
    const Span t = s.trimmed();
    if (!all_digits(t.text) || t.text.size() > 18) throw ParseError(t.offset, std::string("expected ") + what);
    return std::stoull(t.str());
}

long parse_signed(Span s, const char* what) {
    const Span t = s.trimmed();
    const std::string_view body = !t.text.empty() && t.text[0] == '-' ? t.text.substr(1) : t.text;
    if (!all_digits(body) || body.size() > 18) throw ParseError(t.offset, std::string("expected ") + what);
    return std::stol(t.str());
}

mpq_class parse_rational(Span s) {
    const Span t = s.trimmed();
    const auto slash = t.text.find('/');
    const std::string_view num = t.text.substr(0, slash);
    const std::string_view num_body = !num.empty() && (num[0] == '-' || num[0] == '+') ? num.substr(1) : num;
    if (!all_digits(num_body)) throw ParseError(t.offset, "expected a rational num/den");
    mpq_class q;
    q.get_num() = mpz_class(std::string(num[0] == '+' ? num.substr(1) : num));
    q.get_den() = 1;
    if (slash != std::string_view::npos) {
        const std::string_view den = t.text.substr(slash + 1);
        if (!all_digits(den)) throw ParseError(t.offset + slash + 1, "expected a denominator");
        q.get_den() = mpz_class(std::string(den));
        if (q.get_den() == 0) throw ParseError(t.offset + slash + 1, "zero denominator");
    }
    q.canonicalize();
    return q;
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

bool parse_bool(Span s) {
    const std::string v = s.trimmed().str();
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParseError(s.offset, "expected a boolean");
}

std::string fcm_flag(QKind k) {
    switch (k) {
        case QKind::Trivial: return "none";
        case QKind::Unramified: return "unram";
        case QKind::RamifiedP: return "ram_p";
        case QKind::RamifiedUP: return "ram_up";
    }
    return "?";
}

std::optional<QKind> fcm_from_flag(const std::string& s) {
    if (s == "none") return QKind::Trivial;
    return zp::kind_from_string(s);
}

/// Looks up an enum value by its to_string spelling.
template <typename E, std::size_t N>
E enum_from(const std::string& s, const E (&values)[N], const char* what) {
    for (E v : values) {
        if (reduction::to_string(v) == s) return v;
    }
    throw Error(ErrorKind::ParseError, std::string("unknown ") + what + " '" + s + "'");
}

reduction::Kodaira kodaira_from_string(const std::string& s) {
    using K = reduction::Kodaira::Kind;
    static const std::pair<const char*, K> fixed[] = {{"I0", K::I0},       {"II", K::II},        {"III", K::III},
                                                      {"IV", K::IV},       {"I0*", K::I0Star},   {"IV*", K::IVStar},
                                                      {"III*", K::IIIStar}, {"II*", K::IIStar}};
    for (const auto& [name, kind] : fixed) {
        if (s == name) return {kind, 0};
    }
    const bool star = !s.empty() && s.back() == '*';
    const std::string_view digits = std::string_view(s).substr(1, s.size() - 1 - (star ? 1 : 0));
    if (s.size() >= 2 && s[0] == 'I' && all_digits(digits)) {
        return {star ? K::InStar : K::In, static_cast<unsigned>(std::stoul(std::string(digits)))};
    }
    throw Error(ErrorKind::ParseError, "unknown Kodaira symbol '" + s + "'");
}

json coeffs_json(const std::vector<u64>& c) { return json(c); }

/// Runs a JSON decoder, reporting structural mismatches as parse errors.
template <typename F>
auto decoding(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed ") + what + " JSON: " + e.what());
    }
}

}  // namespace

RationalWeierstrass parse_curve(std::string_view text) {
    const auto sections = split({text, 0}, ';');
    if (sections.size() < 2) throw ParseError(text.size(), "expected 'p; a1,a2,a3,a4,a6'");
    if (sections.size() > 3) throw ParseError(sections[3].offset - 1, "unexpected ';'");
    const u64 p = parse_unsigned(sections[0], "a prime");

    const auto fields = split(sections[1], ',');
    if (fields.size() != 5) {
        throw ParseError(sections[1].offset + sections[1].text.size(),
                         "expected 5 coefficients, got " + std::to_string(fields.size()));
    }
    std::array<mpq_class, 5> a;
    for (std::size_t i = 0; i < 5; ++i) a[i] = parse_rational(fields[i]);

    reduction::Annotations notes;
    unsigned f = 1;
    if (sections.size() == 3) {
        for (const Span& tok : tokens(sections[2])) {
            const std::string t = tok.str();
            const auto eq = t.find('=');
            const std::string key = t.substr(0, eq);
            const Span value{tok.text.substr(eq == std::string::npos ? tok.text.size() : eq + 1),
                             tok.offset + (eq == std::string::npos ? tok.text.size() : eq + 1)};
            if (t == "non-cm") {
                notes.non_cm = true;
            } else if (t == "p-torsion-rational") {
                notes.p_torsion_rational = true;
            } else if (eq != std::string::npos && key == "cm") {
                notes.cm_discriminant = parse_signed(value, "a discriminant");
            } else if (eq != std::string::npos && key == "fcm") {
                const auto kind = fcm_from_flag(value.str());
                if (!kind) throw ParseError(value.offset, "fcm must be unram, ram_p, ram_up or none");
                notes.fcm = *kind;
            } else if (eq != std::string::npos && key == "f") {
                const u64 deg = parse_unsigned(value, "a residue degree");
                if (deg == 0 || deg > 64) throw ParseError(value.offset, "residue degree must be in 1..64");
                f = static_cast<unsigned>(deg);
            } else {
                throw ParseError(tok.offset, "unknown flag '" + t + "'");
            }
        }
    }
    return RationalWeierstrass(p, std::move(a), f, notes);
}

std::string format_curve(const RationalWeierstrass& curve) {
    std::vector<std::string> flags;
    const auto& n = curve.annotations();
    if (curve.residue_degree() != 1) flags.push_back("f=" + std::to_string(curve.residue_degree()));
    if (n.cm_discriminant) flags.push_back("cm=" + std::to_string(*n.cm_discriminant));
    if (n.non_cm) flags.push_back("non-cm");
    if (n.fcm) flags.push_back("fcm=" + fcm_flag(*n.fcm));
    if (n.p_torsion_rational) flags.push_back("p-torsion-rational");
    std::string out = curve.to_string();
    for (std::size_t i = 0; i < flags.size(); ++i) out += (i ? " " : "; ") + flags[i];
    return out;
}

towers::Supernatural parse_supernatural(std::string_view text) {
    const Span whole = Span{text, 0}.trimmed();
    towers::Supernatural out;
    if (whole.text == "1") return out;
    auto exponent = [](Span s) {
        const auto e = towers::exponent_from_string(s.trimmed().str());
        if (!e) throw ParseError(s.offset, "expected an exponent (n, inf or fin?)");
        return *e;
    };
    const auto parts = split(whole, ';');
    if (parts.size() > 2) throw ParseError(parts[2].offset - 1, "unexpected ';'");
    std::optional<Span> entries, rest;
    for (const Span& part : parts) {
        const Span t = part.trimmed();
        if (t.text.substr(0, 8) == "default=") {
            if (rest) throw ParseError(t.offset, "duplicate default");
            rest = Span{t.text.substr(8), t.offset + 8};
        } else {
            if (entries || rest) throw ParseError(t.offset, "entries must precede default=");
            entries = t;
        }
    }
    if (rest) out.set_rest(exponent(*rest));
    if (entries) {
        std::vector<u64> seen;
        for (const Span& entry : split(*entries, ',')) {
            const auto colon = entry.text.find(':');
            if (colon == std::string_view::npos) throw ParseError(entry.offset, "expected prime:exponent");
            const u64 prime = parse_unsigned({entry.text.substr(0, colon), entry.offset}, "a prime");
            if (!is_prime(prime)) throw ParseError(entry.trimmed().offset, std::to_string(prime) + " is not prime");
            if (std::find(seen.begin(), seen.end(), prime) != seen.end()) {
                throw ParseError(entry.trimmed().offset, "duplicate prime " + std::to_string(prime));
            }
            seen.push_back(prime);
            out.set(prime, exponent({entry.text.substr(colon + 1), entry.offset + colon + 1}));
        }
    }
    return out;
}

towers::ExtensionDescriptor parse_descriptor(std::string_view text) {
    towers::ExtensionDescriptor ext;
    bool have_residue = false;
    const Span whole{text, 0};
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_blank(text[i])) ++i;
        if (i == text.size()) break;
        std::size_t end = i;
        while (end < text.size() && !is_blank(text[end])) ++end;
        const Span tok{text.substr(i, end - i), i};
        const auto eq = tok.text.find('=');
        if (eq == std::string_view::npos) throw ParseError(tok.offset, "expected key=value");
        const std::string key(tok.text.substr(0, eq));
        Span value{tok.text.substr(eq + 1), tok.offset + eq + 1};
        if (key == "label") {
            // the label runs to the end of the text
            ext.label = Span{text.substr(value.offset), value.offset}.trimmed().str();
            break;
        }
        if (key == "residue") {
            ext.residue_degree = parse_supernatural(value.text);
            have_residue = true;
        } else if (key == "mu_p_inf") {
            ext.contains_mu_p_infinity = parse_bool(value);
        } else if (key == "galois") {
            ext.is_galois_over_K = parse_bool(value);
        } else if (key == "mu_inf") {
            ext.contains_all_roots_of_unity = parse_bool(value);
        } else if (key == "contains_E_p") {
            ext.contains_E_p = parse_bool(value);
        } else if (key == "contains_K_E_p") {
            ext.contains_K_E_p = parse_bool(value);
        } else {
            throw ParseError(tok.offset, "unknown descriptor key '" + key + "'");
        }
        i = end;
    }
    if (!have_residue) throw ParseError(whole.text.size(), "missing residue=");
    return ext;
}

std::string format_descriptor(const towers::ExtensionDescriptor& ext) {
    auto b = [](bool v) { return v ? "true" : "false"; };
    std::ostringstream os;
    os << "residue=" << ext.residue_degree.to_string() << " mu_p_inf=" << b(ext.contains_mu_p_infinity)
       << " galois=" << b(ext.is_galois_over_K);
    if (ext.contains_all_roots_of_unity) os << " mu_inf=true";
    if (ext.contains_E_p) os << " contains_E_p=true";
    if (ext.contains_K_E_p) os << " contains_K_E_p=" << b(*ext.contains_K_E_p);
    if (!ext.label.empty()) os << " label=" << ext.label;
    return os.str();
}

verdict::RationalMap parse_rational_map(std::string_view text) {
    const auto parts = split({text, 0}, ';');
    if (parts.size() != 4) throw ParseError(text.size(), "expected four polynomials xn;xd;yn;yd");
    std::array<verdict::Poly, 4> polys;
    for (std::size_t i = 0; i < 4; ++i) {
        if (parts[i].trimmed().empty()) throw ParseError(parts[i].offset, "empty polynomial");
        for (const Span& c : split(parts[i], ',')) polys[i].push_back(parse_rational(c));
    }
    return {polys[0], polys[1], polys[2], polys[3]};
}

std::string format_rational_map(const verdict::RationalMap& map) {
    std::string out;
    const verdict::Poly* polys[] = {&map.x_num, &map.x_den, &map.y_num, &map.y_den};
    for (std::size_t i = 0; i < 4; ++i) {
        if (i) out += ';';
        for (std::size_t k = 0; k < polys[i]->size(); ++k) out += (k ? "," : "") + rational_str((*polys[i])[k]);
    }
    return out;
}

json to_json(const RationalWeierstrass& curve) {
    const auto& n = curve.annotations();
    json a = json::array();
    for (const auto& c : curve.coefficients()) a.push_back(rational_str(c));
    return {{"text", format_curve(curve)},
            {"p", curve.prime()},
            {"a", a},
            {"f", curve.residue_degree()},
            {"annotations",
             {{"cm", n.cm_discriminant ? json(*n.cm_discriminant) : json(nullptr)},
              {"non_cm", n.non_cm},
              {"fcm", n.fcm ? json(fcm_flag(*n.fcm)) : json(nullptr)},
              {"p_torsion_rational", n.p_torsion_rational}}}};
}

RationalWeierstrass curve_from_json(const json& j) {
    return decoding("curve", [&] {
        std::array<mpq_class, 5> a;
        const auto& arr = j.at("a");
        if (arr.size() != 5) throw Error(ErrorKind::ParseError, "curve JSON needs 5 coefficients");
        for (std::size_t i = 0; i < 5; ++i) {
            const std::string s = arr[i].get<std::string>();
            a[i] = parse_rational({s, 0});
        }
        reduction::Annotations notes;
        const auto& n = j.at("annotations");
        if (!n.at("cm").is_null()) notes.cm_discriminant = n.at("cm").get<long>();
        notes.non_cm = n.at("non_cm").get<bool>();
        if (!n.at("fcm").is_null()) {
            const auto kind = fcm_from_flag(n.at("fcm").get<std::string>());
            if (!kind) throw Error(ErrorKind::ParseError, "unknown fcm in curve JSON");
            notes.fcm = *kind;
        }
        notes.p_torsion_rational = n.at("p_torsion_rational").get<bool>();
        return RationalWeierstrass(j.at("p").get<u64>(), std::move(a), j.at("f").get<unsigned>(), notes);
    });
}

json to_json(const reduction::ReductionProfile& profile) {
    json reduced = nullptr;
    if (profile.reduced_curve) {
        const auto& c = *profile.reduced_curve;
        reduced = {{"degree", c.degree()}, {"a4", coeffs_json(c.a4().coeffs())}, {"a6", coeffs_json(c.a6().coeffs())}};
    }
    return {{"p", profile.p},
            {"residue_degree", profile.residue_degree},
            {"kodaira", profile.kodaira.to_string()},
            {"type", reduction::to_string(profile.type)},
            {"potential_type", reduction::to_string(profile.potential_type)},
            {"v_j", profile.v_j ? json(*profile.v_j) : json(nullptr)},
            {"cm",
             {{"kind", reduction::to_string(profile.cm.kind)},
              {"discriminant", profile.cm.discriminant},
              {"source", reduction::to_string(profile.cm.source)}}},
            {"fcm",
             {{"kind", reduction::to_string(profile.fcm.kind)},
              {"field", profile.fcm.field ? json(zp::to_string(profile.fcm.field->kind())) : json(nullptr)},
              {"source", reduction::to_string(profile.fcm.source)}}},
            {"reduced_curve", reduced},
            {"trace", profile.trace ? json(*profile.trace) : json(nullptr)},
            {"potential_resolution", profile.potential_resolution},
            {"p_torsion_rational", profile.p_torsion_rational}};
}

reduction::ReductionProfile profile_from_json(const json& j) {
    using namespace reduction;
    static const ReductionType types[] = {ReductionType::GoodOrdinary, ReductionType::GoodSupersingular,
                                          ReductionType::MultSplit, ReductionType::MultNonsplit,
                                          ReductionType::Additive};
    static const PotentialType potentials[] = {PotentialType::PotGoodOrdinary, PotentialType::PotGoodSupersingular,
                                               PotentialType::PotMultiplicative};
    static const CmStatus::Kind cm_kinds[] = {CmStatus::Kind::CM, CmStatus::Kind::NonCM, CmStatus::Kind::Unknown};
    static const FcmStatus::Kind fcm_kinds[] = {FcmStatus::Kind::None, FcmStatus::Kind::Field,
                                                FcmStatus::Kind::Unknown};
    static const Provenance sources[] = {Provenance::Computed, Provenance::Annotated, Provenance::Assumed};
    return decoding("profile", [&] {
        ReductionProfile out;
        out.p = j.at("p").get<u64>();
        out.residue_degree = j.at("residue_degree").get<unsigned>();
        out.kodaira = kodaira_from_string(j.at("kodaira").get<std::string>());
        out.type = enum_from(j.at("type").get<std::string>(), types, "reduction type");
        out.potential_type = enum_from(j.at("potential_type").get<std::string>(), potentials, "potential type");
        if (!j.at("v_j").is_null()) out.v_j = j.at("v_j").get<long>();
        const auto& cm = j.at("cm");
        out.cm.kind = enum_from(cm.at("kind").get<std::string>(), cm_kinds, "CM status");
        out.cm.discriminant = cm.at("discriminant").get<long>();
        out.cm.source = enum_from(cm.at("source").get<std::string>(), sources, "provenance");
        const auto& fcm = j.at("fcm");
        out.fcm.kind = enum_from(fcm.at("kind").get<std::string>(), fcm_kinds, "FCM status");
        if (!fcm.at("field").is_null()) {
            const auto kind = zp::kind_from_string(fcm.at("field").get<std::string>());
            if (!kind) throw Error(ErrorKind::ParseError, "unknown FCM field kind");
            out.fcm.field = zp::QuadraticLocalField(out.p, *kind);
        }
        out.fcm.source = enum_from(fcm.at("source").get<std::string>(), sources, "provenance");
        if (const auto& rc = j.at("reduced_curve"); !rc.is_null()) {
            const auto field = ff::FiniteField::create(out.p, rc.at("degree").get<unsigned>());
            out.reduced_curve.emplace(ff::FqElement(field, rc.at("a4").get<std::vector<u64>>()),
                                      ff::FqElement(field, rc.at("a6").get<std::vector<u64>>()));
        }
        if (!j.at("trace").is_null()) out.trace = j.at("trace").get<i64>();
        out.potential_resolution = j.at("potential_resolution").get<std::string>();
        out.p_torsion_rational = j.at("p_torsion_rational").get<bool>();
        return out;
    });
}

json to_json(const towers::ExtensionDescriptor& ext) {
    return {{"text", format_descriptor(ext)},
            {"residue_degree", ext.residue_degree.to_string()},
            {"contains_mu_p_infinity", ext.contains_mu_p_infinity},
            {"is_galois_over_K", ext.is_galois_over_K},
            {"contains_all_roots_of_unity", ext.contains_all_roots_of_unity},
            {"contains_E_p", ext.contains_E_p},
            {"contains_K_E_p", ext.contains_K_E_p ? json(*ext.contains_K_E_p) : json(nullptr)},
            {"label", ext.label}};
}

towers::ExtensionDescriptor descriptor_from_json(const json& j) {
    return decoding("descriptor", [&] {
        towers::ExtensionDescriptor ext;
        ext.residue_degree = parse_supernatural(j.at("residue_degree").get<std::string>());
        ext.contains_mu_p_infinity = j.at("contains_mu_p_infinity").get<bool>();
        ext.is_galois_over_K = j.at("is_galois_over_K").get<bool>();
        ext.contains_all_roots_of_unity = j.at("contains_all_roots_of_unity").get<bool>();
        ext.contains_E_p = j.at("contains_E_p").get<bool>();
        if (!j.at("contains_K_E_p").is_null()) ext.contains_K_E_p = j.at("contains_K_E_p").get<bool>();
        ext.label = j.at("label").get<std::string>();
        return ext;
    });
}

json to_json(const verdict::Verdict& v) {
    json premises = json::array();
    for (const auto& p : v.trace.premises) premises.push_back({{"text", p.text}, {"status", to_string(p.status)}});
    return {{"outcome", to_string(v.outcome)},
            {"rule_id", v.trace.rule_id},
            {"citation", v.trace.citation},
            {"premises", premises},
            {"hypotheses", v.hypotheses},
            {"reason", v.reason},
            {"e", v.e ? json(*v.e) : json(nullptr)}};
}

verdict::Verdict verdict_from_json(const json& j) {
    return decoding("verdict", [&] {
        verdict::Verdict v;
        const auto outcome = verdict::outcome_from_string(j.at("outcome").get<std::string>());
        if (!outcome) throw Error(ErrorKind::ParseError, "unknown outcome");
        v.outcome = *outcome;
        v.trace.rule_id = j.at("rule_id").get<std::string>();
        v.trace.citation = j.at("citation").get<std::string>();
        for (const auto& p : j.at("premises")) {
            const auto status = verdict::premise_status_from_string(p.at("status").get<std::string>());
            if (!status) throw Error(ErrorKind::ParseError, "unknown premise status");
            v.trace.premises.push_back({p.at("text").get<std::string>(), *status});
        }
        v.hypotheses = j.value("hypotheses", std::vector<std::string>{});
        v.reason = j.value("reason", std::string{});
        if (j.contains("e") && !j.at("e").is_null()) v.e = j.at("e").get<int>();
        return v;
    });
}

json to_json(const checker::CheckReport& report, bool include_timing) {
    json out = {{"check", report.check_name},
                {"passed", report.passed()},
                {"parameters", report.parameters},
                {"cases_run", report.cases_run},
                {"failures", report.failures},
                {"notes", report.notes},
                {"seed", report.seed}};
    if (include_timing) out["elapsed_seconds"] = report.elapsed_seconds;
    return out;
}

checker::CheckReport report_from_json(const json& j) {
    return decoding("check report", [&] {
        checker::CheckReport r;
        r.check_name = j.at("check").get<std::string>();
        r.parameters = j.at("parameters");
        r.cases_run = j.at("cases_run").get<u64>();
        r.failures = j.at("failures").get<std::vector<json>>();
        r.notes = j.at("notes").get<std::vector<std::string>>();
        r.seed = j.at("seed").get<u64>();
        r.elapsed_seconds = j.value("elapsed_seconds", 0.0);
        return r;
    });
}

}  // namespace torsion::io
