#pragma once
// JSON ingestion and serialization for the command-line front end.
//
// Input documents are validated structurally (types, raggedness, finiteness)
// before any geometry runs; rejections carry the offending field so a user
// can fix the file without reading source code.  Serialization uses the
// shortest decimal form that re-parses to the identical double, so every
// emitted report round-trips to an equal JSON value.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "thicksum/errors.hpp"
#include "thicksum/geometry.hpp"
#include "thicksum/ifs.hpp"
#include "thicksum/interior.hpp"
#include "thicksum/shapley_folkman.hpp"
#include "thicksum/thickness.hpp"
#include "thicksum/thresholds.hpp"

namespace thicksum {

using json = nlohmann::json;

namespace io_detail {

inline const json& require_field(const json& doc, const std::string& key,
                                 const std::string& what) {
  if (!doc.is_object())
    throw ParseError(what + ": expected a JSON object");
  const auto it = doc.find(key);
  if (it == doc.end())
    throw ParseError(what + ": missing field \"" + key + "\"");
  return *it;
}

inline int require_positive_int(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    throw ParseError(where + ": expected a positive integer");
  return static_cast<int>(v.get<long long>());
}

inline double require_finite_number(const json& v, const std::string& where) {
  if (!v.is_number())
    throw ParseError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x))
    throw ParseError(where + ": non-finite number");
  return x;
}

inline std::vector<double> require_real_row(const json& v,
                                            const std::string& where) {
  if (!v.is_array())
    throw ParseError(where + ": expected an array of numbers");
  std::vector<double> row;
  row.reserve(v.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    row.push_back(require_finite_number(v[j], where + "[" + std::to_string(j) + "]"));
  return row;
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// File loading

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open())
    throw ParseError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Input documents

// {"dim": int, "points": [[real,...],...]}  (optional "delta": real >= 0)
inline PointCloud parse_point_cloud(const json& doc, std::size_t point_cap,
                                    const Tolerance& tol = {}) {
  using io_detail::require_field;
  const int dim =
      io_detail::require_positive_int(require_field(doc, "dim", "point cloud"),
                                      "point cloud: \"dim\"");
  const json& pts = require_field(doc, "points", "point cloud");
  if (!pts.is_array() || pts.empty())
    throw ParseError("point cloud: \"points\" must be a nonempty array");
  if (pts.size() > point_cap)
    throw CapExceeded("point cloud exceeds the point cap", pts.size(), point_cap);
  std::vector<Point> rows;
  rows.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = "point cloud: points[" + std::to_string(i) + "]";
    Point row = io_detail::require_real_row(pts[i], where);
    if (static_cast<int>(row.size()) != dim)
      throw ParseError(where + ": ragged row, expected " + std::to_string(dim) +
                       " coordinates, got " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  return make_cloud(dim, rows, tol);
}

// {"coeffs": [[real,...],...]}  (rows may differ in length: one per summand)
inline ConvexWitness parse_coeffs(const json& doc) {
  const json& rows =
      io_detail::require_field(doc, "coeffs", "combinations document");
  if (!rows.is_array() || rows.empty())
    throw ParseError("combinations document: \"coeffs\" must be a nonempty array");
  ConvexWitness out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.push_back(io_detail::require_real_row(
        rows[i], "combinations document: coeffs[" + std::to_string(i) + "]"));
  return out;
}

// {"dim": int, "maps": [{"ratio": real, "offset": [real,...]},...]}
inline IfsModel parse_ifs(const json& doc) {
  using io_detail::require_field;
  IfsModel model;
  model.dim = io_detail::require_positive_int(require_field(doc, "dim", "IFS"),
                                              "IFS: \"dim\"");
  const json& maps = require_field(doc, "maps", "IFS");
  if (!maps.is_array() || maps.empty())
    throw ParseError("IFS: \"maps\" must be a nonempty array");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string where = "IFS: maps[" + std::to_string(i) + "]";
    SimilarityMap f;
    f.ratio = io_detail::require_finite_number(
        require_field(maps[i], "ratio", where), where + ".ratio");
    f.offset = io_detail::require_real_row(require_field(maps[i], "offset", where),
                                           where + ".offset");
    if (static_cast<int>(f.offset.size()) != model.dim)
      throw ParseError(where + ".offset: expected " + std::to_string(model.dim) +
                       " coordinates, got " + std::to_string(f.offset.size()));
    model.maps.push_back(std::move(f));
  }
  ifs_detail::validate_model(model);
  return model;
}

// Dispatch on document shape: an IFS document carries "maps" and is expanded
// at the requested recursion depth; a point-set document carries "points" and
// an optional sampling resolution "delta".
inline DiscretizedSet parse_set_document(const json& doc, int ifs_depth,
                                         std::size_t point_cap,
                                         const Tolerance& tol = {}) {
  if (doc.is_object() && doc.contains("maps"))
    return discretize(parse_ifs(doc), ifs_depth, point_cap, tol);
  double delta = 0.0;
  if (doc.is_object() && doc.contains("delta")) {
    delta = io_detail::require_finite_number(doc["delta"], "set document: \"delta\"");
    if (delta < 0.0) throw ParseError("set document: \"delta\" must be >= 0");
  }
  return discretized_set(parse_point_cloud(doc, point_cap, tol), delta);
}

// ---------------------------------------------------------------------------
// Serialization

inline json to_json(const Ball& b) {
  return json{{"center", b.center}, {"radius", b.radius}};
}

inline json to_json(const PointCloud& cloud) {
  return json{{"dim", cloud.dim}, {"points", cloud.points}};
}

inline json to_json(const ThresholdReport& rep) {
  return json{{"c", rep.c},
              {"d", rep.d},
              {"n_main", rep.n_main},
              {"n_fw", rep.n_fw},
              {"n_min", rep.n_min},
              {"lambda_star", rep.lambda_star_at_c},
              {"crossover_dim", rep.crossover_dim}};
}

inline json to_json(const ThicknessCertificate& cert,
                    const PointCloud* cloud = nullptr) {
  json worst = nullptr;
  if (cert.worst_center >= 0 && cert.worst_scale >= 0 &&
      !cert.witnesses.empty()) {
    for (const auto& w : cert.witnesses) {
      if (w.center_index == cert.worst_center &&
          w.scale_index == cert.worst_scale) {
        worst = json{{"center_index", w.center_index},
                     {"scale", cert.scales[static_cast<std::size_t>(w.scale_index)]},
                     {"achieved_ratio", w.ratio},
                     {"inscribed_ball", to_json(w.ball)}};
        if (cloud)
          worst["center"] = cloud->points[static_cast<std::size_t>(w.center_index)];
        break;
      }
    }
  }
  return json{{"passed", cert.passed},
              {"c_raw", cert.c_raw},
              {"c_certified", cert.c_certified},
              {"c_target", cert.c_target},
              {"scale_ratio", cert.scale_ratio},
              {"caveat_floor", cert.caveat_floor},
              {"scales", cert.scales},
              {"witness_count", cert.witnesses.size()},
              {"worst", worst}};
}

inline json to_json(const StepReport& rep) {
  return json{{"passed", rep.passed},
              {"checked", rep.checked},
              {"worst_margin", rep.worst_margin},
              {"worst_sharp_margin", rep.worst_sharp_margin},
              {"worst_path", rep.worst_path}};
}

inline json to_json(const Step3Report& rep) {
  return json{{"passed", rep.passed}, {"margin", rep.margin}};
}

inline json to_json(const AbsorptionReport& rep) {
  return json{{"applicable", rep.applicable},
              {"passed", rep.passed},
              {"step1_margin", rep.step1_margin},
              {"step2_margin", rep.step2_margin},
              {"step3_margin", rep.step3_margin},
              {"oracle_ran", rep.oracle_ran},
              {"sampled", rep.sampled},
              {"worst_residual", rep.worst_residual}};
}

inline json to_json(const TreeStats& s) {
  return json{{"vertices", s.vertices},
              {"witnessed", s.witnessed},
              {"frontier", s.frontier},
              {"edges", s.edges},
              {"max_branching", s.max_branching}};
}

namespace io_detail {

// Fold per-tree step reports into one summary: worst margin wins.
inline StepReport fold_steps(const std::vector<StepReport>& reps) {
  StepReport out;
  for (const auto& r : reps) {
    out.passed = out.passed && r.passed;
    out.checked += r.checked;
    if (r.worst_margin < out.worst_margin) {
      out.worst_margin = r.worst_margin;
      out.worst_path = r.worst_path;
    }
    out.worst_sharp_margin = std::min(out.worst_sharp_margin, r.worst_sharp_margin);
  }
  return out;
}

}  // namespace io_detail

inline json to_json(const InteriorCertificate& cert) {
  json trees = json::array();
  for (std::size_t t = 0; t < cert.roots.size(); ++t) {
    trees.push_back(json{{"root_witness", cert.roots[t].z},
                         {"thickness_certified", cert.thickness[t]},
                         {"stats", to_json(cert.stats[t])},
                         {"step1", to_json(cert.step1[t])},
                         {"step2", to_json(cert.step2[t])},
                         {"containment", to_json(cert.containment[t])}});
  }
  return json{{"ball", to_json(cert.ball)},
              {"gap", cert.residual_gap},
              {"depth", cert.verified_depth},
              {"r0", cert.r0},
              {"scales", cert.scales},
              {"tree_of_set", cert.tree_of_set},
              {"trees", trees},
              {"checks",
               json{{"step1", to_json(io_detail::fold_steps(cert.step1))},
                    {"step2", to_json(io_detail::fold_steps(cert.step2))},
                    {"containment",
                     to_json(io_detail::fold_steps(cert.containment))},
                    {"step3", to_json(cert.step3)},
                    {"absorption", to_json(cert.absorption)}}}};
}

// Decomposition / rounding report with the summand-indexed views: which
// summands stayed exact, which were convexified, and what the final
// reconstruction error is against its guarantee.
inline json to_json(const SfRoundReport& rep, bool rounded) {
  json exact = json::array();
  for (const auto& [i, j] : rep.decomposition.exact)
    exact.push_back(json{{"summand", i}, {"point_index", j}});
  json convexified = json::array();
  for (const auto& [i, comb] : rep.decomposition.convexified) {
    json terms = json::array();
    for (const auto& t : comb.terms)
      terms.push_back(json{{"coefficient", t.lambda}, {"point", t.s}});
    convexified.push_back(
        json{{"summand", i},
             {"value", combination_value(comb, rep.decomposition.d)},
             {"terms", terms}});
  }
  json out{{"n", rep.decomposition.n},
           {"d", rep.decomposition.d},
           {"exceptional", rep.decomposition.exceptional},
           {"exact", exact},
           {"convexified", convexified},
           {"radius", rep.radius},
           {"target", rep.target},
           {"error", rep.rounding.error},
           {"bound", rep.rounding.bound}};
  if (rounded) {
    out["chosen"] = rep.rounding.chosen;
    out["chosen_indices"] = rep.rounding.chosen_indices;
  }
  return out;
}

// Decimal with enough significant digits to reconstruct the double exactly.
inline std::string format_real(double x, int precision = 17) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

}  // namespace thicksum
