#pragma once
// Command-line front end: run configuration, subcommand dispatch, and the
// report envelope.  One binary, six subcommands:
//
//   threshold      summand-count thresholds for a thickness constant
//   sf-decompose   exact-plus-convexified decomposition of a sum point
//   round          full decompose-then-round pipeline with its error bound
//   thickness      thickness certification of a discretized set
//   certify        interior ball certificate for a Minkowski sum
//   oracle         brute-force cross-checks (sum-distance, residual, absorb)
//
// Every run emits a Report envelope: command echo, configuration echo
// (including the sampling seed, recorded verbatim), a deterministic payload,
// pass/fail status, and wall time.  Re-running with an identical
// configuration reproduces the payload byte for byte; wall time lives
// outside the payload for exactly that reason.
//
// Exit codes: 0 success | 2 premise/witness failure | 3 validation error
// (also caps and degenerate input) | 64 unknown command | 65 malformed file.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "thicksum/errors.hpp"
#include "thicksum/geometry.hpp"
#include "thicksum/ifs.hpp"
#include "thicksum/interior.hpp"
#include "thicksum/io.hpp"
#include "thicksum/minimal_ball.hpp"
#include "thicksum/shapley_folkman.hpp"
#include "thicksum/thickness.hpp"
#include "thicksum/thresholds.hpp"

namespace thicksum {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitPremise = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitUnknownCommand = 64;
inline constexpr int kExitBadFile = 65;

struct RunConfig {
  std::uint64_t seed = 0;       // threads every sampling oracle
  double tol_abs = Tolerance{}.abs;
  std::size_t point_cap = 200000;   // max points accepted per parsed cloud
  std::size_t sum_cap = kDefaultSumCap;
  std::string output;           // optional report file; empty = stdout only
  bool json_only = false;
  bool text_only = false;

  Tolerance tolerance() const { return Tolerance{tol_abs}; }
};

inline json to_json(const RunConfig& cfg) {
  return json{{"seed", cfg.seed},
              {"tol_abs", cfg.tol_abs},
              {"point_cap", cfg.point_cap},
              {"sum_cap", cfg.sum_cap},
              {"output", cfg.output}};
}

struct Report {
  std::string command;
  std::vector<std::string> argv_echo;
  RunConfig config;
  json payload;       // deterministic under identical config
  bool passed = true;
  double wall_ms = 0.0;  // measured, hence outside the payload
};

inline json to_json(const Report& rep) {
  return json{{"command", rep.command},
              {"argv", rep.argv_echo},
              {"config", to_json(rep.config)},
              {"payload", rep.payload},
              {"status", rep.passed ? "pass" : "fail"},
              {"wall_time_ms", rep.wall_ms}};
}

namespace cli_detail {

inline std::vector<double> parse_reals_csv(const std::string& text,
                                           const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
        ++used;
      if (used != item.size() || !std::isfinite(v))
        throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError(flag + ": cannot parse \"" + item + "\" as a real");
    }
  }
  if (out.empty())
    throw ValidationError(flag + ": at least one coordinate required");
  return out;
}

// Load one cloud per file; a single file with copies > 1 is replicated.
inline std::vector<PointCloud> clouds_from_files(
    const std::vector<std::string>& files, int copies, std::size_t point_cap,
    const Tolerance& tol) {
  std::vector<PointCloud> clouds;
  for (const auto& f : files)
    clouds.push_back(parse_point_cloud(load_json_file(f), point_cap, tol));
  if (copies > 0) {
    if (clouds.size() == 1 && copies > 1) {
      clouds.assign(static_cast<std::size_t>(copies), clouds.front());
    } else if (clouds.size() != static_cast<std::size_t>(copies)) {
      throw ValidationError("--copies must match the number of input files, "
                            "or exactly one file must be given");
    }
  }
  return clouds;
}

inline std::vector<DiscretizedSet> sets_from_files(
    const std::vector<std::string>& files, int copies, int ifs_depth,
    std::size_t point_cap, const Tolerance& tol) {
  std::vector<DiscretizedSet> sets;
  for (const auto& f : files)
    sets.push_back(parse_set_document(load_json_file(f), ifs_depth, point_cap, tol));
  if (copies > 0) {
    if (sets.size() == 1 && copies > 1) {
      sets.assign(static_cast<std::size_t>(copies), sets.front());
    } else if (sets.size() != static_cast<std::size_t>(copies)) {
      throw ValidationError("--copies must match the number of input files, "
                            "or exactly one file must be given");
    }
  }
  return sets;
}

inline double max_circumradius(const std::vector<PointCloud>& clouds) {
  double radius = 0.0;
  for (const auto& c : clouds)
    radius = std::max(radius, minimal_enclosing_ball(c).radius);
  return radius;
}

inline void render_row(std::ostream& out, const std::string& name, double v) {
  out << "  " << std::left << std::setw(16) << name << format_real(v) << "\n";
}

inline void render_text(const Report& rep, std::ostream& out) {
  const json& p = rep.payload;
  if (rep.command == "threshold") {
    out << "threshold report (c = " << format_real(p["c"].get<double>())
        << ", d = " << p["d"].get<int>() << ")\n";
    render_row(out, "n_main", p["n_main"].get<double>());
    render_row(out, "n_fw", p["n_fw"].get<double>());
    render_row(out, "n_min", p["n_min"].get<double>());
    render_row(out, "lambda_star", p["lambda_star"].get<double>());
    render_row(out, "crossover_dim", p["crossover_dim"].get<double>());
  } else if (rep.command == "thickness") {
    const json& c = p["certificate"];
    out << "thickness certificate: " << (rep.passed ? "PASS" : "FAIL")
        << "  c_raw = " << format_real(c["c_raw"].get<double>())
        << "  c_certified = " << format_real(c["c_certified"].get<double>())
        << "  target = " << format_real(c["c_target"].get<double>())
        << "  floor = " << format_real(c["caveat_floor"].get<double>()) << "\n";
    if (!rep.passed && c.contains("worst") && !c["worst"].is_null()) {
      const json& w = c["worst"];
      out << "  worst cell: x = " << w.value("center", json::array()).dump()
          << "  r = " << format_real(w["scale"].get<double>())
          << "  achieved ratio = "
          << format_real(w["achieved_ratio"].get<double>()) << "\n";
    }
  } else if (rep.command == "certify") {
    out << "interior certificate: " << (rep.passed ? "PASS" : "FAIL")
        << "  ball center " << p["ball"]["center"].dump() << "  radius "
        << format_real(p["ball"]["radius"].get<double>()) << "\n"
        << "  gap = " << format_real(p["gap"].get<double>())
        << "  depth = " << p["depth"].get<int>() << "  checks: step1 "
        << (p["checks"]["step1"]["passed"].get<bool>() ? "ok" : "FAIL")
        << ", step2 "
        << (p["checks"]["step2"]["passed"].get<bool>() ? "ok" : "FAIL")
        << ", step3 "
        << (p["checks"]["step3"]["passed"].get<bool>() ? "ok" : "FAIL")
        << ", absorption "
        << (p["checks"]["absorption"]["passed"].get<bool>() ? "ok" : "FAIL")
        << "\n";
  } else if (rep.command == "sf-decompose" || rep.command == "round") {
    out << rep.command << ": " << (rep.passed ? "PASS" : "FAIL")
        << "  exceptional = " << p["exceptional"].dump()
        << "  error = " << format_real(p["error"].get<double>())
        << "  bound = " << format_real(p["bound"].get<double>()) << "\n";
  } else if (rep.command.rfind("oracle", 0) == 0) {
    out << rep.command << ": " << (rep.passed ? "PASS" : "FAIL")
        << "  measured = " << format_real(p["measured"].get<double>())
        << "  bound = " << format_real(p["bound"].get<double>()) << "\n";
  }
}

inline json error_body(const std::string& type, const std::exception& e) {
  return json{{"type", type}, {"message", e.what()}};
}

}  // namespace cli_detail

// Parses argv, dispatches to the named subcommand, and emits the report to
// `out` (text and/or JSON per flags, plus the optional --out file).
// Diagnostics go to `err`.  Returns the process exit code.
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  using cli_detail::clouds_from_files;
  using cli_detail::sets_from_files;

  RunConfig cfg;
  std::string command;
  std::function<std::pair<json, bool>()> pending;

  CLI::App app{"constructive certificates for Minkowski sums of thick sets"};
  app.name("thicksum");
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "seed for sampling oracles (recorded)");
  app.add_option("--tol", cfg.tol_abs, "absolute numeric tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--point-cap", cfg.point_cap, "max points per parsed cloud")
      ->check(CLI::PositiveNumber);
  app.add_option("--sum-cap", cfg.sum_cap, "max enumerated sum points")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.output, "also write the JSON report to a file");
  app.add_flag("--json", cfg.json_only, "suppress the text summary");
  app.add_flag("--text", cfg.text_only, "suppress the JSON report on stdout");

  // --- threshold ------------------------------------------------------
  double th_c = 0.0;
  int th_d = 1;
  auto* th = app.add_subcommand(
      "threshold", "summand-count thresholds for a thickness constant");
  th->fallthrough();
  th->add_option("--c", th_c, "thickness constant in (0,1]")->required();
  th->add_option("--d", th_d, "ambient dimension");
  th->callback([&] {
    command = "threshold";
    pending = [&]() -> std::pair<json, bool> {
      return {to_json(threshold_report(th_c, th_d)), true};
    };
  });

  // --- sf-decompose / round --------------------------------------------
  std::vector<std::string> sf_points;
  std::string sf_coeffs;
  const auto add_sf_flags = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--points", sf_points, "point-cloud JSON file(s)")
        ->required()
        ->expected(-1);
    sub->add_option("--coeffs", sf_coeffs,
                    "combinations JSON file, one row per summand")
        ->required();
  };
  const auto load_sf_instance = [&]() {
    const ConvexWitness coeffs = parse_coeffs(load_json_file(sf_coeffs));
    std::vector<PointCloud> clouds;
    for (const auto& f : sf_points)
      clouds.push_back(
          parse_point_cloud(load_json_file(f), cfg.point_cap, cfg.tolerance()));
    if (clouds.size() == 1 && coeffs.size() > 1)
      clouds.assign(coeffs.size(), clouds.front());
    return std::make_pair(std::move(clouds), coeffs);
  };

  auto* sfd = app.add_subcommand(
      "sf-decompose", "exact-plus-convexified decomposition of a sum point");
  add_sf_flags(sfd);
  sfd->callback([&] {
    command = "sf-decompose";
    pending = [&, load_sf_instance]() -> std::pair<json, bool> {
      const auto [clouds, coeffs] = load_sf_instance();
      const Tolerance tol = cfg.tolerance();
      SfRoundReport rep;
      rep.decomposition = sf_decompose(clouds, coeffs, tol);
      const int d = rep.decomposition.d;
      rep.target = Point(static_cast<std::size_t>(d), 0.0);
      for (std::size_t i = 0; i < clouds.size(); ++i)
        for (std::size_t j = 0; j < clouds[i].points.size(); ++j)
          axpy(rep.target, coeffs[i][j], clouds[i].points[j]);
      rep.radius = cli_detail::max_circumradius(clouds);
      rep.rounding.error = dist(rep.target, decomposition_value(rep.decomposition, clouds));
      rep.rounding.bound = 10.0 * tol.abs;  // reconstruction is exact up to roundoff
      return {to_json(rep, /*rounded=*/false),
              rep.rounding.error <= rep.rounding.bound};
    };
  });

  auto* rnd = app.add_subcommand(
      "round", "decompose, then round the convexified summands");
  add_sf_flags(rnd);
  rnd->callback([&] {
    command = "round";
    pending = [&, load_sf_instance]() -> std::pair<json, bool> {
      const auto [clouds, coeffs] = load_sf_instance();
      const SfRoundReport rep = sf_round(clouds, coeffs, cfg.tolerance());
      return {to_json(rep, /*rounded=*/true),
              rep.rounding.error <= rep.rounding.bound + cfg.tol_abs};
    };
  });

  // --- thickness --------------------------------------------------------
  std::string tk_set;
  int tk_depth = 0;
  ThicknessRequest tk_req;
  auto* tk = app.add_subcommand(
      "thickness", "certify a thickness constant for a discretized set");
  tk->fallthrough();
  tk->add_option("--set", tk_set, "IFS or point-cloud JSON file")->required();
  tk->add_option("--depth", tk_depth, "IFS recursion depth (ignored for clouds)")
      ->check(CLI::NonNegativeNumber);
  tk->add_option("--target", tk_req.c_target, "thickness constant to certify")
      ->required();
  tk->add_option("--ratio", tk_req.scale_ratio, "scale ladder ratio in (0,1)");
  tk->add_option("--floor", tk_req.floor, "finest scale to certify");
  tk->add_option("--stride", tk_req.center_stride, "center subsampling stride")
      ->check(CLI::PositiveNumber);
  tk->callback([&] {
    command = "thickness";
    pending = [&]() -> std::pair<json, bool> {
      const DiscretizedSet set = parse_set_document(
          load_json_file(tk_set), tk_depth, cfg.point_cap, cfg.tolerance());
      const ThicknessCertificate cert =
          certify_thickness(set, tk_req, cfg.tolerance());
      json payload{{"certificate", to_json(cert, &set.cloud)},
                   {"points", set.cloud.points.size()},
                   {"delta", set.delta},
                   {"diam", set.diam}};
      return {std::move(payload), cert.passed};
    };
  });

  // --- certify ----------------------------------------------------------
  std::vector<std::string> cf_sets;
  CertifierParams cf_params;
  int cf_copies = 0;
  int cf_ifs_depth = 6;
  auto* cf = app.add_subcommand(
      "certify", "interior ball certificate for a Minkowski sum");
  cf->fallthrough();
  cf->add_option("--sets", cf_sets, "summand JSON file(s)")->required()->expected(-1);
  cf->add_option("--alpha", cf_params.alpha, "witness ball fraction in (lambda,1)")
      ->required();
  cf->add_option("--lambda", cf_params.lambda, "scale contraction in (0,alpha)")
      ->required();
  cf->add_option("--depth", cf_params.depth, "verification depth K >= 0")
      ->required();
  cf->add_option("--copies", cf_copies, "replicate a single input this many times");
  cf->add_option("--cert-ratio", cf_params.cert_ratio,
                 "scale ladder ratio for the thickness gate");
  cf->add_option("--ifs-depth", cf_ifs_depth,
                 "recursion depth when a summand file is an IFS model");
  cf->callback([&] {
    command = "certify";
    pending = [&]() -> std::pair<json, bool> {
      const std::vector<DiscretizedSet> sets = sets_from_files(
          cf_sets, cf_copies, cf_ifs_depth, cfg.point_cap, cfg.tolerance());
      const InteriorCertificate cert =
          certify_interior(sets, cf_params, cfg.tolerance());
      return {to_json(cert), true};  // certify_interior throws on failure
    };
  });

  // --- oracle -----------------------------------------------------------
  auto* orc = app.add_subcommand(
      "oracle", "brute-force measurements next to their theoretical bounds");
  orc->require_subcommand(1);
  orc->fallthrough();

  std::vector<std::string> od_points;
  int od_copies = 0;
  std::string od_x;
  auto* od = orc->add_subcommand(
      "sum-distance", "exhaustive distance from a point to the exact sum");
  od->fallthrough();
  od->add_option("--points", od_points, "point-cloud JSON file(s)")
      ->required()
      ->expected(-1);
  od->add_option("--copies", od_copies, "replicate a single input this many times");
  od->add_option("--x", od_x, "query point, comma-separated reals")->required();
  od->callback([&] {
    command = "oracle sum-distance";
    pending = [&]() -> std::pair<json, bool> {
      const Tolerance tol = cfg.tolerance();
      const std::vector<PointCloud> clouds =
          clouds_from_files(od_points, od_copies, cfg.point_cap, tol);
      const Point x = cli_detail::parse_reals_csv(od_x, "--x");
      const PointCloud sum = minkowski_sum_points(clouds, cfg.sum_cap, tol);
      if (static_cast<int>(x.size()) != sum.dim)
        throw ValidationError("--x has " + std::to_string(x.size()) +
                              " coordinates, clouds live in dimension " +
                              std::to_string(sum.dim));
      const double measured = distance_to_cloud(x, sum);
      const double bound = rounding_bound_sharp(
          cli_detail::max_circumradius(clouds),
          static_cast<int>(clouds.size()), sum.dim);
      json payload{{"n", clouds.size()}, {"d", sum.dim},
                   {"sum_points", sum.points.size()}, {"x", x},
                   {"measured", measured}, {"bound", bound}};
      return {std::move(payload), measured <= bound + tol.abs};
    };
  });

  std::vector<std::string> or_points;
  int or_copies = 0;
  int or_samples = 512;
  auto* orr = orc->add_subcommand(
      "residual", "sampled hull-to-sum residual against the radius bound");
  orr->fallthrough();
  orr->add_option("--points", or_points, "point-cloud JSON file(s)")
      ->required()
      ->expected(-1);
  orr->add_option("--copies", or_copies, "replicate a single input this many times");
  orr->add_option("--samples", or_samples, "sampled hull points")
      ->check(CLI::PositiveNumber);
  orr->callback([&] {
    command = "oracle residual";
    pending = [&]() -> std::pair<json, bool> {
      const Tolerance tol = cfg.tolerance();
      const std::vector<PointCloud> clouds =
          clouds_from_files(or_points, or_copies, cfg.point_cap, tol);
      const double measured =
          residual_measure(clouds, or_samples, cfg.seed, tol, cfg.sum_cap);
      const double bound = rounding_bound_sharp(
          cli_detail::max_circumradius(clouds),
          static_cast<int>(clouds.size()), clouds.front().dim);
      json payload{{"n", clouds.size()}, {"d", clouds.front().dim},
                   {"samples", or_samples}, {"seed", cfg.seed},
                   {"measured", measured}, {"bound", bound}};
      return {std::move(payload), measured <= bound + tol.abs};
    };
  });

  std::string oa_set;
  CertifierParams oa_params;
  int oa_copies = 0;
  auto* oab = orc->add_subcommand(
      "absorb", "one-dimensional absorption check on sampled ball points");
  oab->fallthrough();
  oab->add_option("--set", oa_set, "summand JSON file")->required();
  oab->add_option("--alpha", oa_params.alpha, "witness ball fraction")->required();
  oab->add_option("--lambda", oa_params.lambda, "scale contraction")->required();
  oab->add_option("--depth", oa_params.depth, "verification depth K >= 1")
      ->required();
  oab->add_option("--copies", oa_copies, "number of summand copies")->required();
  oab->add_option("--cert-ratio", oa_params.cert_ratio,
                  "scale ladder ratio for the thickness gate");
  oab->callback([&] {
    command = "oracle absorb";
    pending = [&]() -> std::pair<json, bool> {
      const Tolerance tol = cfg.tolerance();
      const std::vector<DiscretizedSet> sets = sets_from_files(
          {oa_set}, oa_copies, /*ifs_depth=*/6, cfg.point_cap, tol);
      const InteriorCertificate cert = certify_interior(sets, oa_params, tol);
      json payload{{"absorption", to_json(cert.absorption)},
                   {"ball", to_json(cert.ball)},
                   {"gap", cert.residual_gap},
                   {"measured", cert.absorption.worst_residual},
                   {"bound", tol.abs}};
      return {std::move(payload),
              cert.absorption.oracle_ran && cert.absorption.passed};
    };
  });

  // --- parse and dispatch ------------------------------------------------
  const std::vector<std::string> argv_echo = args;
  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::Success&) {
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const bool no_subcommand = app.get_subcommands().empty();
    const auto extras = app.remaining();
    if (no_subcommand && !extras.empty())
      err << "unknown command: " << extras.front() << "\n";
    else
      err << "argument error: " << e.what() << "\n";
    return no_subcommand ? kExitUnknownCommand : kExitValidation;
  }

  Report rep;
  rep.command = command;
  rep.argv_echo = argv_echo;
  rep.config = cfg;

  json error = nullptr;
  int code = kExitOk;
  const auto started = std::chrono::steady_clock::now();
  try {
    auto [payload, passed] = pending();
    rep.payload = std::move(payload);
    rep.passed = passed;
    if (!passed) code = kExitPremise;  // certificate or bound not attained
  } catch (const ParseError& e) {
    error = cli_detail::error_body("parse_error", e);
    err << "malformed file: " << e.what() << "\n";
    code = kExitBadFile;
  } catch (const WitnessFailure& e) {
    error = cli_detail::error_body("witness_failure", e);
    error["center"] = e.center;
    error["scale"] = e.scale;
    error["achieved_ratio"] = e.achieved;
    err << "witness failure: " << e.what() << "\n  at x = " << json(e.center).dump()
        << ", r = " << format_real(e.scale)
        << ", achieved ratio = " << format_real(e.achieved) << "\n";
    code = kExitPremise;
  } catch (const PremiseFailure& e) {
    error = cli_detail::error_body("premise_failure", e);
    error["check"] = e.check;
    error["path"] = e.path;
    error["margin"] = e.margin;
    err << "premise failure in check \"" << e.check << "\" at " << e.path
        << " (margin " << format_real(e.margin) << "): " << e.what() << "\n";
    code = kExitPremise;
  } catch (const CapExceeded& e) {
    error = cli_detail::error_body("cap_exceeded", e);
    error["requested"] = e.requested;
    error["cap"] = e.cap;
    err << "cap exceeded: " << e.what() << "\n";
    code = kExitValidation;
  } catch (const DegenerateInput& e) {
    error = cli_detail::error_body("degenerate_input", e);
    error["affine_dim"] = e.affine_dim;
    err << "degenerate input: " << e.what() << "\n";
    code = kExitValidation;
  } catch (const ValidationError& e) {
    error = cli_detail::error_body("validation_error", e);
    err << "validation error: " << e.what() << "\n";
    code = kExitValidation;
  } catch (const Error& e) {
    error = cli_detail::error_body("internal_error", e);
    err << "internal error: " << e.what() << "\n";
    code = kExitInternal;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - started)
                    .count();

  if (!error.is_null()) {
    rep.passed = false;
    rep.payload = json{{"error", error}};
  }

  const json envelope = to_json(rep);
  if (!cfg.json_only && error.is_null())
    cli_detail::render_text(rep, out);
  if (!cfg.text_only)
    out << envelope.dump(2) << "\n";
  if (!cfg.output.empty()) {
    std::ofstream file(cfg.output);
    if (!file.is_open()) {
      err << "cannot write report to " << cfg.output << "\n";
      return kExitInternal;
    }
    file << envelope.dump(2) << "\n";
  }
  return code;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(std::move(args), out, err);
}

}  // namespace thicksum
