#pragma once

#include <array>
#include <string>

#include <json.hpp>

#include "sphere_re/euler_re.hpp"
#include "sphere_re/geometry.hpp"
#include "sphere_re/lagrange_re.hpp"
#include "sphere_re/lagrange_scan.hpp"
#include "sphere_re/verify.hpp"

namespace sphere_re::cli {

using nlohmann::ordered_json;

ordered_json vec_json(const Vec3& v);
ordered_json arr_json(const std::array<double, 3>& a);

ordered_json to_json(const VerificationReport& r);
ordered_json to_json(const EreSolution& s);
ordered_json to_json(const LreCandidate& c);
ordered_json to_json(const ScaleneSearchReport& r);

/// Reads candidates: either a bare array or an object with "candidates".
/// Each entry needs "theta" (3), "omega2", optional "phi" (3), "meridian",
/// "label".
std::vector<ReCandidate> candidates_from_json(const ordered_json& j);

/// %.17g, or "nan" for non-finite values.
std::string num17(double v);

}  // namespace sphere_re::cli
