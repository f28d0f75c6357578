#pragma once

// Text and JSON encodings of curves, extension descriptors, profiles,
// verdicts and check reports.

#include <string>
#include <string_view>

#include <json.hpp>

#include "torsion/checker.hpp"
#include "torsion/reduction.hpp"
#include "torsion/towers.hpp"
#include "torsion/verdict.hpp"

namespace torsion::io {

using json = nlohmann::json;

/// `p; a1,a2,a3,a4,a6 [; flags]`, rationals as num/den. Flags, separated by
/// commas or blanks: cm=D, non-cm, fcm=unram|ram_p|ram_up|none, f=<degree>,
/// p-torsion-rational.
reduction::RationalWeierstrass parse_curve(std::string_view text);
/// Inverse of parse_curve; flags are emitted only when set.
std::string format_curve(const reduction::RationalWeierstrass& curve);

/// `2:1,3:inf;default=fin?`, or `1` for the trivial supernatural number.
towers::Supernatural parse_supernatural(std::string_view text);

/// Blank-separated key=value pairs: residue=<supernatural> mu_p_inf=<bool>
/// galois=<bool> mu_inf=<bool> contains_E_p=<bool> contains_K_E_p=<bool> label=<text>.
towers::ExtensionDescriptor parse_descriptor(std::string_view text);
std::string format_descriptor(const towers::ExtensionDescriptor& ext);

/// `xn;xd;yn;yd` with each polynomial a comma list of rationals, lowest degree first.
verdict::RationalMap parse_rational_map(std::string_view text);
std::string format_rational_map(const verdict::RationalMap& map);

json to_json(const reduction::RationalWeierstrass& curve);
reduction::RationalWeierstrass curve_from_json(const json& j);

json to_json(const reduction::ReductionProfile& profile);
reduction::ReductionProfile profile_from_json(const json& j);

json to_json(const towers::ExtensionDescriptor& ext);
towers::ExtensionDescriptor descriptor_from_json(const json& j);

json to_json(const verdict::Verdict& v);
verdict::Verdict verdict_from_json(const json& j);

/// Timing is left out unless asked for, so equal seeds give identical bytes.
json to_json(const checker::CheckReport& report, bool include_timing = false);
checker::CheckReport report_from_json(const json& j);

}  // namespace torsion::io
