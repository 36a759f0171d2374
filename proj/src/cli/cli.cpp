#include "sphere_re/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "json_io.hpp"
#include "sphere_re/dynamics.hpp"
#include "sphere_re/error.hpp"
#include "sphere_re/euler_re.hpp"
#include "sphere_re/euler_scan.hpp"
#include "sphere_re/inertia.hpp"
#include "sphere_re/lagrange_re.hpp"
#include "sphere_re/lagrange_scan.hpp"
#include "sphere_re/parallel.hpp"
#include "sphere_re/verify.hpp"

namespace sphere_re::cli {
namespace {

constexpr const char* kEreScanColumns =
    "CSV columns: a,x,y,det,kind (a = theta2 - theta1, x = theta3 - theta1, y = x - a/2,\n"
    "det = ERE shape determinant or nan where undefined, kind in\n"
    "{scalene,isosceles,degenerate,singular}). With --verify: omega2,relative_residual,\n"
    "verify_pass,sigma_drift. Angles in radians, 17 significant digits.";
constexpr const char* kLreScanColumns =
    "CSV columns: sigma12,sigma,omega2,lambda,residual,equilateral (sigma = sigma23 =\n"
    "sigma31, residual = |J Psi_L - lambda Psi_L|). Angles in radians, 17 significant digits.";

struct Context {
  Masses masses;
  Potential potential;
  IntegrationOptions integration;
};

ordered_json header(const JobConfig& job) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = job.mode;
  j["masses"] = arr_json(job.masses);
  j["potential"] = job.potential;
  return j;
}

std::string resolved_format(const JobConfig& job, const char* fallback) {
  const std::string f = job.format.empty() ? fallback : job.format;
  if (f != "json" && f != "csv")
    throw Error(ErrorCode::invalid_argument, "format must be json or csv");
  return f;
}

void require_json(const JobConfig& job) {
  if (resolved_format(job, "json") != "json")
    throw Error(ErrorCode::invalid_argument, job.mode + " only writes JSON");
}

void require_equal_cotangent(const Context& ctx, const std::string& mode) {
  const auto& m = ctx.masses;
  if (!(m[0] == m[1] && m[1] == m[2]) || ctx.potential.kind() != PotentialKind::cotangent)
    throw Error(ErrorCode::invalid_argument,
                mode + " covers equal masses with the cotangent potential only");
}

void need_count(const std::vector<double>& v, std::size_t n, const char* what) {
  if (v.size() != n)
    throw Error(ErrorCode::invalid_argument,
                std::string(what) + " needs " + std::to_string(n) + " comma-separated values");
  for (double x : v)
    if (!std::isfinite(x)) throw Error(ErrorCode::invalid_argument, std::string(what) + " must be finite");
}

ReCandidate meridian_candidate(const EreSolution& s, std::string label) {
  ReCandidate c;
  c.label = std::move(label);
  c.meridian = true;
  c.omega2 = s.omega2;
  for (std::size_t k = 0; k < 3; ++k) c.config[k] = {s.theta[k], 0.0};
  return c;
}

double rigid_eom_residual(const Config3& cfg, double omega2, const Context& ctx) {
  const Accelerations a =
      eom_accelerations(PhaseState::rigid(cfg, std::sqrt(omega2)), ctx.masses, ctx.potential);
  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k)
    worst = std::max({worst, std::abs(a.theta_ddot[k]), std::abs(a.phi_ddot[k])});
  return worst;
}

void ere_scan_mode(const JobConfig& job, const Context& ctx, std::ostream& out) {
  const std::string fmt = resolved_format(job, "csv");
  EreScanOptions opt;
  opt.grid = job.grid;
  const EreScanResult res = ere_scan(ctx.masses, ctx.potential, opt);

  struct Row {
    double det = std::nan("");
    std::optional<EreSolution> sol;
    std::optional<VerificationReport> rep;
  };
  std::vector<Row> rows(res.hits.size());
  parallel_for(res.hits.size(), [&](std::size_t i) {
    const EreHit& h = res.hits[i];
    if (h.kind == EreHitKind::singular) return;
    if (h.kind != EreHitKind::degenerate) {
      try {
        rows[i].det = ere_shape_det(h.shape, ctx.masses, ctx.potential).det;
      } catch (const Error&) {
      }
    }
    if (!job.verify) return;
    try {
      rows[i].sol = ere_solve(h.shape, ctx.masses, ctx.potential);
      rows[i].rep = verify_re(meridian_candidate(*rows[i].sol, "hit-" + std::to_string(i)),
                              ctx.masses, ctx.potential, ctx.integration);
    } catch (const Error&) {
    }
  });

  if (fmt == "csv") {
    out << "a,x,y,det,kind";
    if (job.verify) out << ",omega2,relative_residual,verify_pass,sigma_drift";
    out << '\n';
    for (std::size_t i = 0; i < res.hits.size(); ++i) {
      const EreHit& h = res.hits[i];
      out << num17(h.shape.a) << ',' << num17(h.shape.x) << ',' << num17(h.shape.y()) << ','
          << num17(rows[i].det) << ',' << to_string(h.kind);
      if (job.verify) {
        const auto& r = rows[i];
        out << ',' << num17(r.sol ? r.sol->omega2 : std::nan("")) << ','
            << num17(r.sol ? r.sol->relative_residual : std::nan("")) << ','
            << (r.rep && r.rep->pass ? "true" : "false") << ','
            << num17(r.rep ? r.rep->sigma_drift : std::nan(""));
      }
      out << '\n';
    }
    return;
  }

  ordered_json j = header(job);
  j["grid"] = res.grid;
  j["rows"] = res.rows;
  j["cols"] = res.cols;
  j["counts"] = {{"scalene", res.count(EreHitKind::scalene)},
                 {"isosceles", res.count(EreHitKind::isosceles)},
                 {"degenerate", res.count(EreHitKind::degenerate)},
                 {"singular", res.count(EreHitKind::singular)}};
  ordered_json hits = ordered_json::array();
  for (std::size_t i = 0; i < res.hits.size(); ++i) {
    const EreHit& h = res.hits[i];
    ordered_json e;
    e["a"] = h.shape.a;
    e["x"] = h.shape.x;
    e["y"] = h.shape.y();
    e["det"] = std::isfinite(rows[i].det) ? ordered_json(rows[i].det) : ordered_json();
    e["kind"] = to_string(h.kind);
    if (rows[i].sol) e["solution"] = to_json(*rows[i].sol);
    if (rows[i].rep) e["verification"] = to_json(*rows[i].rep);
    hits.push_back(e);
  }
  j["hits"] = hits;
  out << j.dump(2) << '\n';
}

void ere_solve_mode(const JobConfig& job, const Context& ctx, std::ostream& out) {
  require_json(job);
  need_count(job.shape, 2, "--shape a,x");
  const MeridianShape3 shape{job.shape[0], job.shape[1]};
  const EreSolution sol = ere_solve(shape, ctx.masses, ctx.potential);
  ordered_json j = header(job);
  const ordered_json body = to_json(sol);
  for (const auto& [k, v] : body.items()) j[k] = v;
  if (job.verify) {
    const ReCandidate c = meridian_candidate(sol, "ere");
    j["verification"] = to_json(verify_re(c, ctx.masses, ctx.potential, ctx.integration));
    j["verification_cartesian"] =
        to_json(verify_re_cartesian(c, ctx.masses, ctx.potential, ctx.integration));
  }
  out << j.dump(2) << '\n';
}

void lre_scan_mode(const JobConfig& job, const Context& ctx, std::ostream& out) {
  require_equal_cotangent(ctx, job.mode);
  const std::string fmt = resolved_format(job, "csv");
  IsoscelesScanOptions opt;
  opt.sigma12_grid = job.sigma12_grid;
  opt.sigma_grid = job.sigma_grid;
  const IsoscelesScanResult res = isosceles_lre_scan(opt);

  if (fmt == "csv") {
    out << "sigma12,sigma,omega2,lambda,residual,equilateral\n";
    for (const auto& p : res.points)
      out << num17(p.sigma12) << ',' << num17(p.sigma) << ',' << num17(p.omega2) << ','
          << num17(p.lambda) << ',' << num17(p.residual) << ','
          << (p.equilateral ? "true" : "false") << '\n';
    return;
  }
  ordered_json j = header(job);
  j["sigma12_grid"] = job.sigma12_grid;
  j["sigma_grid"] = job.sigma_grid;
  j["max_residual"] = res.max_residual;
  j["max_symmetry_q"] = res.max_symmetry_q;
  j["max_pairing_mismatch"] = res.max_pairing_mismatch;
  ordered_json pts = ordered_json::array();
  for (const auto& p : res.points)
    pts.push_back({{"sigma12", p.sigma12},
                   {"sigma", p.sigma},
                   {"omega2", p.omega2},
                   {"lambda", p.lambda},
                   {"residual", p.residual},
                   {"equilateral", p.equilateral}});
  j["points"] = pts;
  out << j.dump(2) << '\n';
}

void lre_solve_mode(const JobConfig& job, const Context& ctx, std::ostream& out) {
  require_json(job);
  need_count(job.shape, 3, "--shape s12,s23,s31");
  const Shape3 input{job.shape[0], job.shape[1], job.shape[2]};
  Shape3 shape = input;
  if (job.polish) {
    require_equal_cotangent(ctx, "--polish");
    if (std::abs(shape.sigma23 - shape.sigma31) > 1e-3)
      throw Error(ErrorCode::invalid_argument, "--polish needs sigma23 = sigma31");
    const double s = polish_isosceles_lre(0.5 * (shape.sigma23 + shape.sigma31), shape.sigma12);
    shape.sigma23 = shape.sigma31 = s;
  }
  if (job.orientation != "north" && job.orientation != "south")
    throw Error(ErrorCode::invalid_argument, "--orientation must be north or south");
  if (job.dphi != "negative" && job.dphi != "positive")
    throw Error(ErrorCode::invalid_argument, "--dphi must be negative or positive");
  const Orientation chosen{job.orientation == "north", job.dphi == "negative"};

  const LreCandidate cand = lre_reconstruct(shape, ctx.masses, ctx.potential, chosen);
  const Vec3 res = lre_condition_residual(shape, ctx.masses, ctx.potential);

  ordered_json j = header(job);
  j["input_shape"] = arr_json({input.sigma12, input.sigma23, input.sigma31});
  const ordered_json body = to_json(cand);
  for (const auto& [k, v] : body.items()) j[k] = v;
  j["omega2_from_config"] = lre_omega2_from_config(cand.config(), ctx.masses, ctx.potential);
  j["residuals"] = vec_json(res);
  j["residual_norm"] = norm(res);
  j["fixed_point_excluded"] = no_fixed_point_lre_check(cand.omega2);
  ordered_json ors = ordered_json::array();
  for (bool north : {true, false}) {
    for (bool neg : {true, false}) {
      const LreCandidate c = lre_reconstruct(shape, ctx.masses, ctx.potential, {north, neg});
      const Config3 cfg = c.config();
      ors.push_back({{"north", north},
                     {"negative_dphi", neg},
                     {"theta", arr_json({cfg[0].theta, cfg[1].theta, cfg[2].theta})},
                     {"phi", arr_json({cfg[0].phi, cfg[1].phi, cfg[2].phi})},
                     {"omega2", c.omega2},
                     {"eom_residual", rigid_eom_residual(cfg, c.omega2, ctx)}});
    }
  }
  j["orientations"] = ors;
  if (job.verify) {
    ReCandidate rc;
    rc.label = "lre";
    rc.config = cand.config();
    rc.omega2 = cand.omega2;
    j["verification"] = to_json(verify_re(rc, ctx.masses, ctx.potential, ctx.integration));
  }
  out << j.dump(2) << '\n';
}

ordered_json axes_json(const Mat3& m, const Masses* masses) {
  ordered_json list = ordered_json::array();
  for (const auto& a : principal_axes(m)) {
    ordered_json e{{"lambda", a.lambda}, {"psi", vec_json(a.psi)}, {"multiplicity", a.multiplicity}};
    if (masses) {
      try {
        e["cos_theta"] = arr_json(cos_theta_from_eigenpair(a, *masses));
      } catch (const Error&) {
        e["cos_theta"] = nullptr;
      }
    }
    list.push_back(e);
  }
  return list;
}

ordered_json poly_json(const CharPoly& p) { return ordered_json::array({p.c2, p.c1, p.c0}); }

void axis_mode(const JobConfig& job, const Context& ctx, std::ostream& out) {
  require_json(job);
  ordered_json j = header(job);
  if (!job.config.empty()) {
    need_count(job.config, 6, "--config t1,p1,t2,p2,t3,p3");
    Config3 cfg;
    for (std::size_t k = 0; k < 3; ++k) cfg[k] = {job.config[2 * k], job.config[2 * k + 1]};
    const Shape3 shape = shape_of(cfg);
    const Mat3 I = inertia_of(cfg, ctx.masses).m;
    const Mat3 J = shape_matrix(shape, ctx.masses).m;
    j["shape"] = arr_json({shape.sigma12, shape.sigma23, shape.sigma31});
    j["inertia_axes"] = axes_json(I, nullptr);
    j["shape_axes"] = axes_json(J, &ctx.masses);
    j["char_poly_inertia"] = poly_json(char_poly_coeffs(I));
    j["char_poly_shape"] = poly_json(char_poly_coeffs(J));
    const AxisConditions c = axis_conditions_check(cfg, ctx.masses);
    j["conditions"] = {{"z_is_eigenvector", c.s1},
                       {"ixz_iyz_vanish", c.s2},
                       {"psi_theta_is_eigenvector", c.s3},
                       {"residuals", arr_json({c.residual_s1, c.residual_s2, c.residual_s3})},
                       {"agree", c.agree()}};
  } else {
    need_count(job.shape, 3, "--shape s12,s23,s31 (or --config)");
    const Shape3 shape{job.shape[0], job.shape[1], job.shape[2]};
    require_realizable(shape);
    const Mat3 J = shape_matrix(shape, ctx.masses).m;
    j["shape"] = arr_json({shape.sigma12, shape.sigma23, shape.sigma31});
    j["shape_axes"] = axes_json(J, &ctx.masses);
    j["char_poly_shape"] = poly_json(char_poly_coeffs(J));
  }
  out << j.dump(2) << '\n';
}

void verify_mode(const JobConfig& job, const Context& ctx, std::ostream& out) {
  require_json(job);
  if (job.input.empty()) throw Error(ErrorCode::invalid_argument, "verify needs --input");
  std::ifstream in(job.input);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot read " + job.input);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("malformed JSON: ") + e.what());
  }
  Masses masses = ctx.masses;
  Potential pot = ctx.potential;
  std::array<double, 3> mv = job.masses;
  std::string pname = job.potential;
  if (doc.is_object() && doc.contains("masses")) {
    const auto& jm = doc.at("masses");
    if (!jm.is_array() || jm.size() != 3)
      throw Error(ErrorCode::invalid_argument, "\"masses\" needs 3 numbers");
    for (std::size_t k = 0; k < 3; ++k) mv[k] = jm[k].get<double>();
    masses = Masses(mv[0], mv[1], mv[2]);
  }
  if (doc.is_object() && doc.contains("potential")) {
    pname = doc.at("potential").get<std::string>();
    pot = Potential::by_name(pname);
  }
  const auto cands = candidates_from_json(doc);
  std::vector<VerificationReport> reps(cands.size());
  parallel_for(cands.size(), [&](std::size_t i) {
    reps[i] = verify_re(cands[i], masses, pot, ctx.integration);
  });
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = job.mode;
  j["masses"] = arr_json(mv);
  j["potential"] = pname;
  ordered_json arr = ordered_json::array();
  for (const auto& r : reps) arr.push_back(to_json(r));
  j["reports"] = arr;
  out << j.dump(2) << '\n';
}

void euclid_mode(const JobConfig& job, const Context& ctx, std::ostream& out) {
  require_json(job);
  if (!(job.epsilon > 0.0 && job.epsilon < 0.1))
    throw Error(ErrorCode::invalid_argument, "--epsilon must lie in (0, 0.1)");
  std::mt19937_64 rng(job.seed);
  std::uniform_real_distribution<double> radius(0.5, 2.0), angle(-pi, pi), rate(-1.0, 1.0);
  PlanarState p;
  for (std::size_t k = 0; k < 3; ++k) {
    p.r[k] = radius(rng);
    p.phi[k] = angle(rng);
    p.r_dot[k] = rate(rng);
    p.phi_dot[k] = rate(rng);
  }
  const auto r1 = euclidean_limit_check(p, ctx.masses, job.epsilon);
  const auto r2 = euclidean_limit_check(p, ctx.masses, job.epsilon / 2.0);
  ordered_json j = header(job);
  j["seed"] = job.seed;
  j["planar_state"] = {{"r", arr_json(p.r)},
                       {"phi", arr_json(p.phi)},
                       {"r_dot", arr_json(p.r_dot)},
                       {"phi_dot", arr_json(p.phi_dot)}};
  auto rep = [](const EuclideanLimitReport& r) {
    return ordered_json{{"epsilon", r.epsilon},
                        {"spherical", vec_json(r.spherical)},
                        {"planar", vec_json(r.planar)},
                        {"deviation", r.deviation}};
  };
  j["at_epsilon"] = rep(r1);
  j["at_half_epsilon"] = rep(r2);
  j["deviation_ratio"] = r2.deviation > 0.0 ? ordered_json(r2.deviation / r1.deviation) : ordered_json();
  out << j.dump(2) << '\n';
}

void scalene_mode(const JobConfig& job, const Context& ctx, std::ostream& out) {
  require_json(job);
  require_equal_cotangent(ctx, job.mode);
  ScaleneSearchOptions opt;
  opt.resolution = job.resolution;
  ordered_json j = header(job);
  j["report"] = to_json(scalene_lre_search(opt));
  out << j.dump(2) << '\n';
}

void emit_error(std::ostream& err, std::string_view code, const std::string& msg) {
  ordered_json e{{"error", code}, {"message", msg}};
  err << e.dump() << '\n';
}

}  // namespace

int run(const JobConfig& job, std::ostream& out, std::ostream& err) {
  try {
    if (!(job.T > 0.0) || !(job.dt > 0.0) || job.dt > job.T)
      throw Error(ErrorCode::invalid_argument, "need 0 < dt <= T");
    if (job.grid < 2 || job.sigma12_grid < 2 || job.sigma_grid < 2 || job.resolution < 8)
      throw Error(ErrorCode::invalid_argument, "grids need at least 2 points (resolution 8)");
    Context ctx{Masses(job.masses[0], job.masses[1], job.masses[2]),
                Potential::by_name(job.potential), IntegrationOptions{job.T, job.dt, 0}};

    if (job.mode == "ere-scan") ere_scan_mode(job, ctx, out);
    else if (job.mode == "ere-solve") ere_solve_mode(job, ctx, out);
    else if (job.mode == "lre-scan") lre_scan_mode(job, ctx, out);
    else if (job.mode == "lre-solve") lre_solve_mode(job, ctx, out);
    else if (job.mode == "axis") axis_mode(job, ctx, out);
    else if (job.mode == "verify") verify_mode(job, ctx, out);
    else if (job.mode == "euclid-limit") euclid_mode(job, ctx, out);
    else if (job.mode == "scalene-lre-search") scalene_mode(job, ctx, out);
    else throw Error(ErrorCode::invalid_argument, "unknown mode " + job.mode);
    return kExitOk;
  } catch (const Error& e) {
    emit_error(err, to_string(e.code()), e.what());
    return is_validation_error(e.code()) ? kExitValidation : kExitNumerical;
  } catch (const std::exception& e) {
    emit_error(err, "internal_error", e.what());
    return kExitNumerical;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Relative equilibria of three bodies on the unit sphere"};
  app.require_subcommand(1);
  JobConfig job;
  std::vector<double> masses;

  auto common = [&](CLI::App* sc) {
    sc->add_option("--masses", masses, "Body masses m1,m2,m3 (default 1,1,1)")
        ->delimiter(',')
        ->expected(3);
    sc->add_option("--potential", job.potential, "cotangent or negated-cotangent")
        ->capture_default_str();
    sc->add_option("--output,-o", job.output, "Output path, - for stdout")->capture_default_str();
    sc->add_option("--format", job.format, "json or csv");
    sc->add_flag("--verify", job.verify, "Attach a dynamical verification report");
    sc->add_option("--T", job.T, "Verification window")->capture_default_str();
    sc->add_option("--dt", job.dt, "RK4 step")->capture_default_str();
  };

  auto* ere_scan_cmd = app.add_subcommand("ere-scan", "Zero set of the ERE shape condition");
  common(ere_scan_cmd);
  ere_scan_cmd->add_option("--grid", job.grid, "Grid parameter N")->capture_default_str();
  ere_scan_cmd->footer(kEreScanColumns);

  auto* ere_solve_cmd = app.add_subcommand("ere-solve", "Solve one meridian shape");
  common(ere_solve_cmd);
  ere_solve_cmd->add_option("--shape", job.shape, "a,x")->delimiter(',')->required();

  auto* lre_scan_cmd = app.add_subcommand("lre-scan", "Equal-mass isosceles LRE family");
  common(lre_scan_cmd);
  lre_scan_cmd->add_option("--sigma12-grid", job.sigma12_grid, "sigma12 nodes")->capture_default_str();
  lre_scan_cmd->add_option("--sigma-grid", job.sigma_grid, "sigma bracketing nodes")->capture_default_str();
  lre_scan_cmd->footer(kLreScanColumns);

  auto* lre_solve_cmd = app.add_subcommand("lre-solve", "Reconstruct one LRE shape");
  common(lre_solve_cmd);
  lre_solve_cmd->add_option("--shape", job.shape, "s12,s23,s31")->delimiter(',')->required();
  lre_solve_cmd->add_option("--orientation", job.orientation, "north or south")->capture_default_str();
  lre_solve_cmd->add_option("--dphi", job.dphi, "negative or positive")->capture_default_str();
  lre_solve_cmd->add_flag("--polish", job.polish, "Newton-refine an isosceles shape first");

  auto* axis_cmd = app.add_subcommand("axis", "Principal axes of J (and I for a configuration)");
  common(axis_cmd);
  axis_cmd->add_option("--shape", job.shape, "s12,s23,s31")->delimiter(',');
  axis_cmd->add_option("--config", job.config, "t1,p1,t2,p2,t3,p3")->delimiter(',');

  auto* verify_cmd = app.add_subcommand("verify", "Integrate candidates and report drifts");
  common(verify_cmd);
  verify_cmd->add_option("--input", job.input, "Candidates JSON")->required();

  auto* euclid_cmd = app.add_subcommand("euclid-limit", "Angular momentum in the planar limit");
  common(euclid_cmd);
  euclid_cmd->add_option("--epsilon", job.epsilon, "Scale")->capture_default_str();
  euclid_cmd->add_option("--seed", job.seed, "Planar state seed")->capture_default_str();

  auto* scalene_cmd = app.add_subcommand("scalene-lre-search", "Search for scalene equal-mass LRE");
  common(scalene_cmd);
  scalene_cmd->add_option("--resolution", job.resolution, "Nodes per axis")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }
  job.mode = app.get_subcommands().front()->get_name();
  if (!masses.empty()) {
    if (masses.size() != 3) {
      emit_error(std::cerr, "invalid_argument", "--masses needs 3 values");
      return kExitValidation;
    }
    job.masses = {masses[0], masses[1], masses[2]};
  }

  if (job.output == "-") return run(job, std::cout, std::cerr);
  std::ostringstream buf;
  const int code = run(job, buf, std::cerr);
  if (code != kExitOk) return code;
  std::ofstream f(job.output, std::ios::binary);
  f << buf.str();
  if (!f) {
    emit_error(std::cerr, "invalid_argument", "cannot write " + job.output);
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace sphere_re::cli
