#include "json_io.hpp"

#include <cmath>
#include <cstdio>

#include "sphere_re/error.hpp"

namespace sphere_re::cli {

namespace {

ordered_json finite_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(); }

}  // namespace

std::string num17(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json vec_json(const Vec3& v) { return ordered_json::array({v[0], v[1], v[2]}); }
ordered_json arr_json(const std::array<double, 3>& a) {
  return ordered_json::array({a[0], a[1], a[2]});
}

ordered_json to_json(const VerificationReport& r) {
  ordered_json j;
  j["label"] = r.label;
  j["meridian"] = r.meridian;
  j["omega2"] = r.omega2;
  j["pass"] = r.pass;
  j["sigma_drift"] = r.sigma_drift;
  j["theta_drift"] = r.theta_drift;
  j["rate_drift"] = r.rate_drift;
  j["rotating_frame_drift"] = r.rotating_frame_drift;
  j["energy_drift"] = r.energy_drift;
  j["momentum_drift"] = vec_json(r.momentum_drift);
  j["cxy_max"] = r.cxy_max;
  j["steps"] = r.steps;
  j["dt"] = r.dt;
  j["T"] = r.T;
  j["aborted"] = r.aborted;
  if (r.aborted) {
    j["abort_reason"] = r.abort_reason;
    j["abort_time"] = r.abort_time;
  }
  return j;
}

ordered_json to_json(const EreSolution& s) {
  ordered_json j;
  j["shape"] = {{"a", s.shape.a}, {"x", s.shape.x}, {"y", s.shape.y()}};
  j["theta"] = arr_json(s.theta);
  j["s"] = s.s;
  j["omega2"] = s.omega2;
  j["fixed_point"] = s.fixed_point;
  j["degenerate"] = s.degenerate;
  j["residuals"] = arr_json(s.residuals);
  j["relative_residual"] = s.relative_residual;
  return j;
}

ordered_json to_json(const LreCandidate& c) {
  ordered_json j;
  j["shape"] = arr_json({c.shape.sigma12, c.shape.sigma23, c.shape.sigma31});
  j["psi_L"] = vec_json(c.psi_L);
  j["lambda"] = c.lambda;
  j["cos_theta"] = arr_json(c.cos_theta);
  j["phi_diffs"] = arr_json(c.phi_diffs);
  j["omega2"] = c.omega2;
  j["orientation"] = {{"north", c.orientation.north},
                      {"negative_dphi", c.orientation.negative_dphi}};
  j["shape_mismatch"] = c.shape_mismatch;
  j["winding_mismatch"] = c.winding_mismatch;
  const Config3 cfg = c.config();
  j["theta"] = arr_json({cfg[0].theta, cfg[1].theta, cfg[2].theta});
  j["phi"] = arr_json({cfg[0].phi, cfg[1].phi, cfg[2].phi});
  return j;
}

ordered_json to_json(const ScaleneSearchReport& r) {
  auto shape = [](const Shape3& s) { return arr_json({s.sigma12, s.sigma23, s.sigma31}); };
  ordered_json j;
  j["resolution"] = r.resolution;
  j["shapes_scanned"] = r.shapes_scanned;
  j["grid_min_residual"] = finite_or_null(r.grid_min_residual);
  j["grid_min_shape"] = shape(r.grid_min_shape);
  j["starts_polished"] = r.starts_polished;
  j["converged_to_locus"] = r.converged_to_locus;
  j["left_region"] = r.left_region;
  j["stayed_off_locus"] = r.stayed_off_locus;
  j["off_locus_min_residual"] = finite_or_null(r.off_locus_min_residual);
  j["off_locus_min_shape"] = shape(r.off_locus_min_shape);
  j["floor"] = r.floor;
  j["found_below_floor"] = r.found_below_floor;
  j["note"] = r.note;
  return j;
}

std::vector<ReCandidate> candidates_from_json(const ordered_json& j) {
  const ordered_json* list = &j;
  if (j.is_object()) {
    if (!j.contains("candidates"))
      throw Error(ErrorCode::invalid_argument, "input object has no \"candidates\" array");
    list = &j.at("candidates");
  }
  if (!list->is_array()) throw Error(ErrorCode::invalid_argument, "candidates must be an array");

  auto triple = [](const ordered_json& v, const char* what) {
    if (!v.is_array() || v.size() != 3)
      throw Error(ErrorCode::invalid_argument, std::string(what) + " needs 3 numbers");
    std::array<double, 3> a{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!v[i].is_number()) throw Error(ErrorCode::invalid_argument, std::string(what) + " must be numeric");
      a[i] = v[i].get<double>();
    }
    return a;
  };

  std::vector<ReCandidate> out;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const auto& e = (*list)[i];
    if (!e.is_object()) throw Error(ErrorCode::invalid_argument, "candidate must be an object");
    ReCandidate c;
    c.label = e.value("label", "candidate-" + std::to_string(i));
    if (!e.contains("theta") || !e.contains("omega2"))
      throw Error(ErrorCode::invalid_argument, "candidate needs \"theta\" and \"omega2\"");
    const auto th = triple(e.at("theta"), "theta");
    std::array<double, 3> ph{};
    if (e.contains("phi")) ph = triple(e.at("phi"), "phi");
    for (std::size_t k = 0; k < 3; ++k) c.config[k] = {th[k], ph[k]};
    if (!e.at("omega2").is_number())
      throw Error(ErrorCode::invalid_argument, "omega2 must be numeric");
    c.omega2 = e.at("omega2").get<double>();
    c.meridian = e.value("meridian", false);
    out.push_back(c);
  }
  return out;
}

}  // namespace sphere_re::cli
