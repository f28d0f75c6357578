// Command-line front end for classification, finiteness verdicts, tower
// scans and the checker suite.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "torsion/checker.hpp"
#include "torsion/error.hpp"
#include "torsion/ffcurve.hpp"
#include "torsion/io.hpp"
#include "torsion/reduction.hpp"
#include "torsion/verdict.hpp"

using namespace torsion;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitCheckFailed = 3;

struct Options {
    std::string format = "text";
    unsigned precision = zp::kDefaultPrecision;
    bool assume_non_cm = false;
    std::string curve, e1, e2, ext, isogeny;
    unsigned m_max = 12;
    bool all = false;
    std::string check_name;
    u64 p = 5;
    u64 seed = 0;
    std::string f1, f2;
};

bool json_mode(const Options& o) { return o.format == "json"; }

void emit(const Options& o, const json& j, const std::string& text) {
    if (json_mode(o)) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << text;
    }
}

reduction::ClassifyOptions classify_options(const Options& o) {
    reduction::ClassifyOptions c;
    c.assume_non_cm = o.assume_non_cm;
    return c;
}

std::string verdict_text(const verdict::Verdict& v) {
    std::string out = "outcome: " + verdict::to_string(v.outcome) + "\nrule: " + v.trace.rule_id +
                      "\ncitation: " + v.trace.citation + '\n';
    for (const auto& p : v.trace.premises) out += "premise [" + verdict::to_string(p.status) + "]: " + p.text + '\n';
    for (const auto& h : v.hypotheses) out += "hypothesis: " + h + '\n';
    if (!v.reason.empty()) out += "reason: " + v.reason + '\n';
    if (v.e) out += "e: " + std::to_string(*v.e) + '\n';
    return out;
}

int verdict_exit(const verdict::Verdict& v) {
    return v.outcome == verdict::Outcome::Undetermined ? kExitUndetermined : kExitOk;
}

int emit_verdict(const Options& o, const verdict::Verdict& v) {
    emit(o, io::to_json(v), verdict_text(v));
    return verdict_exit(v);
}

std::string report_text(const checker::CheckReport& r) {
    std::string out = (r.passed() ? "PASS " : "FAIL ") + r.check_name + " " + r.parameters.dump() + " cases=" +
                      std::to_string(r.cases_run) + '\n';
    for (const auto& n : r.notes) out += "  note: " + n + '\n';
    for (const auto& f : r.failures) out += "  failure: " + f.dump() + '\n';
    return out;
}

int emit_reports(const Options& o, const std::vector<checker::CheckReport>& reports) {
    json arr = json::array();
    std::string text;
    bool ok = true;
    for (const auto& r : reports) {
        arr.push_back(io::to_json(r));
        text += report_text(r);
        ok = ok && r.passed();
    }
    emit(o, arr, text);
    return ok ? kExitOk : kExitCheckFailed;
}

int run_classify(const Options& o) {
    const auto curve = io::parse_curve(o.curve);
    const auto prof = reduction::classify(curve, classify_options(o));
    json lie = nullptr;
    std::string lie_text = "unknown (CM status undecided)";
    try {
        const auto lc = reduction::lie_class(prof);
        lie = {{"kind", reduction::to_string(lc.kind)}, {"dim_g", lc.dim_g}, {"dim_i", lc.dim_i}};
        lie_text = reduction::to_string(lc.kind) + " (dim g = " + std::to_string(lc.dim_g) +
                   ", dim i = " + std::to_string(lc.dim_i) + ")";
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InsufficientProfile) throw;
    }
    std::string text = "curve: " + io::format_curve(curve) + "\nkodaira: " + prof.kodaira.to_string() +
                       "\ntype: " + reduction::to_string(prof.type) +
                       "\npotential: " + reduction::to_string(prof.potential_type);
    if (!prof.potential_resolution.empty()) text += " (" + prof.potential_resolution + ")";
    if (prof.trace) text += "\ntrace: " + std::to_string(*prof.trace);
    text += "\ncm: " + reduction::to_string(prof.cm.kind);
    if (prof.cm.kind == reduction::CmStatus::Kind::CM) text += " D=" + std::to_string(prof.cm.discriminant);
    text += " (" + reduction::to_string(prof.cm.source) + ")\nfcm: " + reduction::to_string(prof.fcm.kind);
    if (prof.fcm.field) text += " " + zp::to_string(prof.fcm.field->kind());
    text += " (" + reduction::to_string(prof.fcm.source) + ")\nlie: " + lie_text + '\n';
    emit(o, {{"curve", io::to_json(curve)}, {"profile", io::to_json(prof)}, {"lie_class", lie}}, text);
    return kExitOk;
}

std::optional<verdict::IsogenyCertificate> parse_isogeny(const std::string& text) {
    using Kind = verdict::IsogenyCertificate::Kind;
    if (text.empty()) return std::nullopt;
    verdict::IsogenyCertificate cert;
    if (text == "same") {
        cert.kind = Kind::SameCurve;
    } else if (text == "asserted") {
        cert.kind = Kind::UserAsserted;
        cert.note = "asserted on the command line";
    } else if (text.rfind("map:", 0) == 0) {
        cert.kind = Kind::ExplicitMap;
        cert.map = io::parse_rational_map(std::string_view(text).substr(4));
    } else {
        throw Error(ErrorKind::InvalidArgument, "--isogeny takes same, asserted or map:xn;xd;yn;yd");
    }
    return cert;
}

int run_decide_pair(const Options& o) {
    const auto e1 = io::parse_curve(o.e1);
    const auto e2 = io::parse_curve(o.e2);
    verdict::DecideOptions d;
    d.precision = o.precision;
    return emit_verdict(o, verdict::decide_pair_curves(e1, e2, parse_isogeny(o.isogeny), classify_options(o), d));
}

int run_decide_extension(const Options& o) {
    const auto prof = reduction::classify(io::parse_curve(o.curve), classify_options(o));
    return emit_verdict(o, verdict::decide_over_extension(prof, io::parse_descriptor(o.ext)));
}

int run_decide_unramified(const Options& o) {
    const auto prof = reduction::classify(io::parse_curve(o.curve), classify_options(o));
    return emit_verdict(o, verdict::decide_unramified(prof));
}

int run_scan_tower(const Options& o) {
    const auto curve = io::parse_curve(o.curve);
    const auto prof = reduction::classify(curve, classify_options(o));
    if (!prof.trace) throw Error(ErrorKind::InvalidArgument, "tower scan needs good reduction");
    const auto report = checker::check_tower_law(curve, o.m_max);
    json levels = json::array();
    std::string text = "curve: " + io::format_curve(curve) + "\ntrace: " + std::to_string(*prof.trace) + '\n';
    for (unsigned m = 1; m <= o.m_max; ++m) {
        const auto tc = ff::tower_count_from_trace(*prof.trace, prof.p, m);
        const bool divisible = mod_floor(tc.group_order, prof.p) == 0;
        levels.push_back({{"m", m},
                          {"group_order", tc.group_order.get_str()},
                          {"trace", tc.trace.get_str()},
                          {"p_primary_order", tc.p_primary_order.get_str()},
                          {"p_divides", divisible}});
        text += "m=" + std::to_string(m) + " N=" + tc.group_order.get_str() +
                (divisible ? " p|N p-part=" + tc.p_primary_order.get_str() : "") + '\n';
    }
    text += report_text(report);
    emit(o, {{"curve", io::to_json(curve)}, {"levels", levels}, {"report", io::to_json(report)}}, text);
    return report.passed() ? kExitOk : kExitCheckFailed;
}

int run_check(const Options& o) {
    if (o.all) return emit_reports(o, checker::run_all(o.p, o.seed, o.precision));
    if (o.check_name == "condition_equivalence") return emit_reports(o, {checker::check_condition_equivalence(o.p)});
    if (o.check_name == "tower_law") return emit_reports(o, {checker::check_tower_law(io::parse_curve(o.curve), o.m_max)});
    if (o.check_name == "unit_root") {
        return emit_reports(o, {checker::check_unit_root(io::parse_curve(o.curve), o.precision)});
    }
    if (o.check_name == "norm_kernel") {
        const auto k1 = zp::kind_from_string(o.f1);
        const auto k2 = zp::kind_from_string(o.f2);
        if (!k1 || !k2) throw Error(ErrorKind::InvalidArgument, "--f1/--f2 take unram, ram_p or ram_up");
        return emit_reports(o, {checker::check_norm_kernel({o.p, *k1}, {o.p, *k2}, 10, o.seed)});
    }
    throw Error(ErrorKind::InvalidArgument, "check needs --all or --name");
}

int report_error(const Options& o, const Error& e) {
    if (json_mode(o)) {
        json err = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        if (const auto* pe = dynamic_cast<const ParseError*>(&e)) err["position"] = pe->position();
        std::cout << json{{"error", err}}.dump(2) << '\n';
    }
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
}

std::optional<unsigned> precision_from_env() {
    const char* env = std::getenv("TORSION_ORACLE_PRECISION");
    if (!env || !*env) return std::nullopt;
    const std::string s(env);
    if (s.size() > 4 || s.find_first_not_of("0123456789") != std::string::npos || std::stoul(s) == 0) {
        throw Error(ErrorKind::InvalidArgument, "TORSION_ORACLE_PRECISION must be a positive integer");
    }
    return static_cast<unsigned>(std::stoul(s));
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"p-adic torsion finiteness toolkit"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    auto* precision_opt =
        app.add_option("--precision", o.precision, "p-adic precision N")->check(CLI::Range(1u, 2000u));

    auto* classify = app.add_subcommand("classify", "Reduction profile of a curve");
    classify->add_option("--curve", o.curve, "p; a1,a2,a3,a4,a6 [; flags]")->required();
    classify->add_flag("--assume-non-cm", o.assume_non_cm, "Treat an undecided CM status as non-CM");

    auto* pair = app.add_subcommand("decide-pair", "Finiteness of E1(K_{E2,p})[p^inf]");
    pair->add_option("--e1", o.e1, "First curve")->required();
    pair->add_option("--e2", o.e2, "Second curve")->required();
    pair->add_option("--isogeny", o.isogeny, "same | asserted | map:xn;xd;yn;yd (E2 -> E1)");
    pair->add_flag("--assume-non-cm", o.assume_non_cm, "Treat an undecided CM status as non-CM");

    auto* ext = app.add_subcommand("decide-extension", "Finiteness of E(L)[p^inf] for a described L");
    ext->add_option("--curve", o.curve, "Curve")->required();
    ext->add_option("--ext", o.ext, "residue=<supernatural> mu_p_inf=<bool> galois=<bool> ...")->required();
    ext->add_flag("--assume-non-cm", o.assume_non_cm, "Treat an undecided CM status as non-CM");

    auto* unram = app.add_subcommand("decide-unramified", "Finiteness of E(K^ur)[p^inf]");
    unram->add_option("--curve", o.curve, "Curve")->required();
    unram->add_flag("--assume-non-cm", o.assume_non_cm, "Treat an undecided CM status as non-CM");

    auto* scan = app.add_subcommand("scan-tower", "|E(F_{p^m})| along the residue tower");
    scan->add_option("--curve", o.curve, "Curve")->required();
    scan->add_option("--m-max", o.m_max, "Highest level")->check(CLI::Range(1u, 200u));

    auto* check = app.add_subcommand("check", "Brute-force cross-checks");
    check->add_flag("--all", o.all, "Every check at --p");
    check->add_option("--name", o.check_name, "A single check")
        ->check(CLI::IsMember({"tower_law", "condition_equivalence", "norm_kernel", "unit_root"}));
    check->add_option("--p", o.p, "Prime");
    check->add_option("--seed", o.seed, "Sampling seed");
    check->add_option("--curve", o.curve, "Curve for tower_law and unit_root");
    check->add_option("--m-max", o.m_max, "Highest level for tower_law")->check(CLI::Range(1u, 200u));
    check->add_option("--f1", o.f1, "First quadratic field for norm_kernel");
    check->add_option("--f2", o.f2, "Second quadratic field for norm_kernel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (precision_opt->count() == 0) {
            if (const auto env = precision_from_env()) o.precision = *env;
        }
        if (classify->parsed()) return run_classify(o);
        if (pair->parsed()) return run_decide_pair(o);
        if (ext->parsed()) return run_decide_extension(o);
        if (unram->parsed()) return run_decide_unramified(o);
        if (scan->parsed()) return run_scan_tower(o);
        if (check->parsed()) return run_check(o);
    } catch (const Error& e) {
        return report_error(o, e);
    }
    return kExitError;
}
