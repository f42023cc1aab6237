#pragma once

// Multiscale interior certification for Minkowski sums of thick discretized
// sets.  For each summand a tree of local convexity witnesses is built: a
// vertex at depth k carries a center x in the cloud and the center z of a
// ball of radius alpha*r_k inscribed in the convex hull of the cloud points
// within r_k of x, where r_k = lambda^k * r_0.  Local checks at every vertex
// (ball spanning, radius control, and a scale-free counting inequality)
// combine into a certificate that an explicit ball lies within an explicit
// gap of the exact sum of the clouds.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "thicksum/errors.hpp"
#include "thicksum/geometry.hpp"
#include "thicksum/hull.hpp"
#include "thicksum/thickness.hpp"
#include "thicksum/thresholds.hpp"

namespace thicksum {

struct CertifierParams {
  double alpha = 0.0;       // inscribed-ball fraction demanded at each scale
  double lambda = 0.0;      // geometric scale step, 0 < lambda < alpha
  int depth = 0;            // finest verified level K (levels 0..K carry witnesses)
  int n = 0;                // summand count; 0 = infer from the input list
  int d = 0;                // ambient dimension; 0 = infer from the inputs
  double cert_ratio = 0.995;  // scale step of the thickness pre-certification
};

struct TreeVertex {
  int depth = 0;
  double scale = 0.0;  // r_k at this vertex's level
  Point x;             // cloud point the window is centered at
  Point z;             // inscribed-ball center of the window; empty on the frontier
  std::vector<std::shared_ptr<const TreeVertex>> children;
};

inline bool is_witnessed(const TreeVertex& v) { return !v.z.empty(); }

struct TreeStats {
  long long vertices = 0;   // distinct vertices (shared subtrees counted once)
  long long witnessed = 0;  // vertices carrying an inscribed-ball witness
  long long frontier = 0;   // center-only vertices below the verified depth
  long long edges = 0;
  int max_branching = 0;
};

struct StepReport {
  bool passed = true;
  long long checked = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  double worst_sharp_margin = std::numeric_limits<double>::infinity();
  std::string worst_path;
};

struct Step3Report {
  double margin = 0.0;  // n*lambda*(alpha-lambda) - sqrt(d)*(1+lambda)
  bool passed = false;
};

struct AbsorptionReport {
  bool applicable = false;  // false when the tuple has no witnessed children
  bool passed = true;
  double step1_margin = std::numeric_limits<double>::infinity();
  double step2_margin = std::numeric_limits<double>::infinity();
  double step3_margin = 0.0;
  bool oracle_ran = false;
  long long sampled = 0;
  double worst_residual = 0.0;
};

struct InteriorCertificate {
  Ball ball;                 // center: sum of root witness centers; radius n*(alpha-lambda)*r0
  double residual_gap = 0.0; // n*(1-lambda)*r_K
  int verified_depth = 0;
  double r0 = 0.0;
  std::vector<double> scales;        // r_0 .. r_K
  CertifierParams params;
  std::vector<int> tree_of_set;      // input index -> distinct tree index
  std::vector<TreeVertex> roots;     // one root per distinct summand description
  std::vector<double> thickness;     // certified thickness per distinct summand
  std::vector<TreeStats> stats;
  std::vector<StepReport> step1;     // per distinct tree
  std::vector<StepReport> step2;
  std::vector<StepReport> containment;
  Step3Report step3;
  AbsorptionReport absorption;
};

namespace interior_detail {

inline void validate_shape_params(const CertifierParams& p) {
  if (!(p.lambda > 0.0) || !(p.lambda < p.alpha) || !(p.alpha < 1.0))
    throw ValidationError(
        "certifier parameters must satisfy 0 < lambda < alpha < 1");
  if (p.depth < 0) throw ValidationError("certifier depth must be nonnegative");
  if (!(p.cert_ratio > 0.0) || !(p.cert_ratio < 1.0))
    throw ValidationError("thickness certification ratio must lie in (0, 1)");
}

// r_0 .. r_{K+1} by iterated multiplication, so that consecutive entries obey
// the recursion r_{k+1} = lambda * r_k exactly in floating point.
inline std::vector<double> scale_table(double r0, double lambda, int depth) {
  std::vector<double> scales(static_cast<std::size_t>(depth) + 2);
  scales[0] = r0;
  for (std::size_t k = 1; k < scales.size(); ++k)
    scales[k] = scales[k - 1] * lambda;
  return scales;
}

inline std::vector<int> indices_within(const PointCloud& cloud, const Point& x,
                                       double r, const Tolerance& tol) {
  const double rr = (r + tol.abs) * (r + tol.abs);
  std::vector<int> out;
  for (std::size_t i = 0; i < cloud.points.size(); ++i)
    if (dist2(cloud.points[i], x) <= rr) out.push_back(static_cast<int>(i));
  return out;
}

struct TreeBuilder {
  const DiscretizedSet& set;
  const CertifierParams& p;
  double beta;
  Tolerance tol;
  std::vector<double> scales;
  std::map<std::pair<int, int>, std::shared_ptr<const TreeVertex>> memo;

  std::shared_ptr<const TreeVertex> make(int k, int idx) {
    const auto key = std::make_pair(k, idx);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    auto v = std::make_shared<TreeVertex>();
    v->depth = k;
    v->scale = scales[static_cast<std::size_t>(k)];
    v->x = set.cloud.points[static_cast<std::size_t>(idx)];
    if (k <= p.depth) {
      const double r = v->scale;
      const auto w = finite_discretization_witness(set, v->x, r, p.alpha, beta);
      v->z = w.ball.center;
      const auto kids = indices_within(set.cloud, v->x, r, tol);
      v->children.reserve(kids.size());
      for (int j : kids) v->children.push_back(make(k + 1, j));
    }
    std::shared_ptr<const TreeVertex> out = v;
    memo.emplace(key, out);
    return out;
  }
};

// Deterministic preorder walk over the distinct vertices of a (possibly
// subtree-sharing) witness tree.  fn(vertex, path) runs once per vertex, at
// its first encounter.
template <class Fn>
inline void walk(const TreeVertex& root, Fn&& fn) {
  struct Item {
    const TreeVertex* v;
    std::string path;
  };
  std::set<const TreeVertex*> seen;
  std::vector<Item> stack;
  stack.push_back({&root, "root"});
  seen.insert(&root);
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    fn(*it.v, it.path);
    for (std::size_t j = it.v->children.size(); j-- > 0;) {
      const TreeVertex* c = it.v->children[j].get();
      if (seen.insert(c).second)
        stack.push_back({c, it.path + "/" + std::to_string(j)});
    }
  }
}

inline void note_check(StepReport& rep, double margin, const std::string& path,
                       const Tolerance& tol) {
  ++rep.checked;
  if (margin < rep.worst_margin) {
    rep.worst_margin = margin;
    rep.worst_path = path;
  }
  if (margin < -tol.abs) rep.passed = false;
}

inline void merge_reports(StepReport& dst, const StepReport& src,
                          const std::string& prefix) {
  dst.checked += src.checked;
  dst.passed = dst.passed && src.passed;
  if (src.checked > 0 && src.worst_margin < dst.worst_margin) {
    dst.worst_margin = src.worst_margin;
    dst.worst_path = prefix + ": " + src.worst_path;
  }
  dst.worst_sharp_margin = std::min(dst.worst_sharp_margin, src.worst_sharp_margin);
}

}  // namespace interior_detail

// Builds the witness tree for one summand.  r0 defaults to the summand's own
// diameter; a joint certification passes the common scale min_i diam(E_i).
// beta is the thickness level the witnesses are requested against and must
// exceed alpha; it defaults to the midpoint of [alpha, 1].
inline TreeVertex build_tree(const DiscretizedSet& set, const CertifierParams& params,
                             double r0 = -1.0, double beta = -1.0,
                             const Tolerance& tol = {}) {
  interior_detail::validate_shape_params(params);
  if (set.diam <= tol.abs)
    throw ValidationError(
        "interior certification requires summands of positive diameter");
  if (r0 < 0.0) r0 = set.diam;
  if (!(r0 > 0.0) || r0 > set.diam + tol.abs)
    throw ValidationError("root scale must lie in (0, diam]");
  if (beta < 0.0) beta = 0.5 * (1.0 + params.alpha);
  if (!(beta > params.alpha))
    throw ValidationError("witness thickness level must exceed alpha");

  interior_detail::TreeBuilder builder{set, params, beta, tol,
                                       interior_detail::scale_table(r0, params.lambda, params.depth),
                                       {}};
  const double r_last = builder.scales[static_cast<std::size_t>(params.depth)];
  if (set.delta > 0.0 && set.delta > r_last + tol.abs)
    throw ValidationError(
        "tree depth exceeds the resolution of the discretized set");
  return *builder.make(0, 0);
}

inline TreeStats tree_stats(const TreeVertex& root) {
  TreeStats s;
  interior_detail::walk(root, [&](const TreeVertex& v, const std::string&) {
    ++s.vertices;
    if (is_witnessed(v))
      ++s.witnessed;
    else
      ++s.frontier;
    s.edges += static_cast<long long>(v.children.size());
    s.max_branching = std::max(s.max_branching, static_cast<int>(v.children.size()));
  });
  return s;
}

// Step 1 at one vertex: each witnessed child's center z_u sits within
// (1-alpha)*r_{k+1} of its window center x_u, and the ball of radius
// q_k = (alpha-lambda)*r_k about this vertex's z lies in the convex hull of
// the children's z-points.  Vacuously passes when no child is witnessed.
inline StepReport verify_step1(const TreeVertex& v, const CertifierParams& params,
                               const Tolerance& tol = {}) {
  StepReport rep;
  if (!is_witnessed(v)) return rep;
  std::vector<Point> child_z;
  std::vector<std::size_t> child_idx;
  for (std::size_t j = 0; j < v.children.size(); ++j)
    if (is_witnessed(*v.children[j])) {
      child_z.push_back(v.children[j]->z);
      child_idx.push_back(j);
    }
  if (child_z.empty()) return rep;

  const double r_next = params.lambda * v.scale;
  const double disp_bound = (1.0 - params.alpha) * r_next;
  for (std::size_t t = 0; t < child_z.size(); ++t) {
    const TreeVertex& u = *v.children[child_idx[t]];
    interior_detail::note_check(
        rep, disp_bound - dist(u.z, u.x),
        "child " + std::to_string(child_idx[t]) + " displacement", tol);
  }

  const double q_k = (params.alpha - params.lambda) * v.scale;
  const int dim = static_cast<int>(v.x.size());
  try {
    const PointCloud zc = make_cloud(dim, child_z, tol);
    const auto bh = ball_in_hull(zc, Ball{v.z, q_k}, tol);
    interior_detail::note_check(rep, bh.margin, "ball-in-children-z-hull", tol);
  } catch (const DegenerateInput&) {
    interior_detail::note_check(rep, -std::numeric_limits<double>::infinity(),
                                "ball-in-children-z-hull (degenerate)", tol);
  }
  return rep;
}

// Step 2 at one vertex: every witnessed child's z stays within
// (1+lambda)*r_k of this vertex's center.  The sharper intermediate bound
// (1+lambda-alpha*lambda)*r_k is recorded as worst_sharp_margin.
inline StepReport verify_step2(const TreeVertex& v, const CertifierParams& params,
                               const Tolerance& tol = {}) {
  StepReport rep;
  if (!is_witnessed(v)) return rep;
  const double bound = (1.0 + params.lambda) * v.scale;
  const double sharp = (1.0 + params.lambda - params.alpha * params.lambda) * v.scale;
  for (std::size_t j = 0; j < v.children.size(); ++j) {
    const TreeVertex& u = *v.children[j];
    if (!is_witnessed(u)) continue;
    const double dd = dist(u.z, v.x);
    interior_detail::note_check(rep, bound - dd,
                                "child " + std::to_string(j) + " radius", tol);
    rep.worst_sharp_margin = std::min(rep.worst_sharp_margin, sharp - dd);
  }
  return rep;
}

// Scale-free counting inequality: n*lambda*(alpha-lambda) > sqrt(d)*(1+lambda).
inline Step3Report verify_step3_inequality(const CertifierParams& params) {
  interior_detail::validate_shape_params(params);
  if (params.n < 1 || params.d < 1)
    throw ValidationError("counting inequality needs positive n and d");
  Step3Report rep;
  rep.margin = static_cast<double>(params.n) * params.lambda *
                   (params.alpha - params.lambda) -
               std::sqrt(static_cast<double>(params.d)) * (1.0 + params.lambda);
  rep.passed = rep.margin > 0.0;
  return rep;
}

// Summand containment at one vertex: the witness center z stays within
// (1-lambda)*r_k - q_k of the cloud (so the whole ball B(z, q_k) is within
// (1-lambda)*r_k of the summand), and within (1-alpha)*r_k of the vertex's
// own center.
inline StepReport containment_check(const TreeVertex& v, const DiscretizedSet& set,
                                    const CertifierParams& params,
                                    const Tolerance& tol = {}) {
  StepReport rep;
  if (!is_witnessed(v)) return rep;
  const double q_k = (params.alpha - params.lambda) * v.scale;
  const double cloud_bound = (1.0 - params.lambda) * v.scale - q_k;
  interior_detail::note_check(rep, cloud_bound - distance_to_cloud(v.z, set.cloud),
                              "witness-center cloud distance", tol);
  interior_detail::note_check(rep, (1.0 - params.alpha) * v.scale - dist(v.z, v.x),
                              "witness-center displacement", tol);
  return rep;
}

namespace interior_detail {

template <class PerVertex>
inline StepReport run_over_tree(const TreeVertex& root, PerVertex&& check) {
  StepReport total;
  total.worst_path = "vacuous";
  walk(root, [&](const TreeVertex& v, const std::string& path) {
    merge_reports(total, check(v), path);
  });
  return total;
}

}  // namespace interior_detail

inline StepReport verify_step1_tree(const TreeVertex& root,
                                    const CertifierParams& params,
                                    const Tolerance& tol = {}) {
  return interior_detail::run_over_tree(
      root, [&](const TreeVertex& v) { return verify_step1(v, params, tol); });
}

inline StepReport verify_step2_tree(const TreeVertex& root,
                                    const CertifierParams& params,
                                    const Tolerance& tol = {}) {
  return interior_detail::run_over_tree(
      root, [&](const TreeVertex& v) { return verify_step2(v, params, tol); });
}

inline StepReport containment_check_tree(const TreeVertex& root,
                                         const DiscretizedSet& set,
                                         const CertifierParams& params,
                                         const Tolerance& tol = {}) {
  return interior_detail::run_over_tree(root, [&](const TreeVertex& v) {
    return containment_check(v, set, params, tol);
  });
}

namespace interior_detail {

struct Interval {
  double lo = 0.0, hi = 0.0;
};

inline std::vector<Interval> merge_intervals(std::vector<Interval> xs, double glue) {
  std::sort(xs.begin(), xs.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const auto& iv : xs) {
    if (!out.empty() && iv.lo <= out.back().hi + glue)
      out.back().hi = std::max(out.back().hi, iv.hi);
    else
      out.push_back(iv);
  }
  return out;
}

}  // namespace interior_detail

// One-step absorption at a tuple of same-depth parents, one per summand:
// verifies the spanning premise (step 1), the radius premise (step 2), and
// the counting premise (step 3) for the tuple; in dimension 1 with small
// clouds it additionally samples the summed parent ball and expresses each
// sample as a sum of points of the children's ball unions.
inline AbsorptionReport absorption_check(const std::vector<TreeVertex>& tuple,
                                         const CertifierParams& params,
                                         const Tolerance& tol = {}) {
  interior_detail::validate_shape_params(params);
  if (tuple.empty()) throw ValidationError("absorption needs a nonempty tuple");
  if (params.n != static_cast<int>(tuple.size()))
    throw ValidationError("absorption tuple must have one parent per summand");
  for (const auto& v : tuple) {
    if (!is_witnessed(v))
      throw ValidationError("absorption parents must carry witnesses");
    if (v.depth != tuple.front().depth ||
        std::abs(v.scale - tuple.front().scale) > tol.abs)
      throw ValidationError("absorption parents must share one depth and scale");
  }

  AbsorptionReport rep;
  long long witnessed_children = 0;
  for (const auto& v : tuple)
    for (const auto& c : v.children)
      if (is_witnessed(*c)) ++witnessed_children;
  if (witnessed_children == 0) return rep;  // not applicable (frontier parents)
  rep.applicable = true;

  for (const auto& v : tuple) {
    const StepReport s1 = verify_step1(v, params, tol);
    const StepReport s2 = verify_step2(v, params, tol);
    if (s1.checked == 0)
      throw ValidationError("absorption parents must have witnessed children");
    rep.step1_margin = std::min(rep.step1_margin, s1.worst_margin);
    rep.step2_margin = std::min(rep.step2_margin, s2.worst_margin);
    rep.passed = rep.passed && s1.passed && s2.passed;
  }
  const Step3Report s3 = verify_step3_inequality(params);
  rep.step3_margin = s3.margin;
  rep.passed = rep.passed && s3.passed;

  // Direct end-to-end oracle in dimension 1 at desk scale.
  const bool one_dim = params.d == 1 && tuple.front().x.size() == 1;
  if (rep.passed && one_dim && witnessed_children <= 50000) {
    using interior_detail::Interval;
    const double scale = tuple.front().scale;
    const double q_k = (params.alpha - params.lambda) * scale;
    const double q_next = params.lambda * q_k;

    double center = 0.0;
    std::vector<std::vector<Interval>> unions;
    for (const auto& v : tuple) {
      center += v.z[0];
      std::vector<Interval> u;
      for (const auto& c : v.children)
        if (is_witnessed(*c)) u.push_back({c->z[0] - q_next, c->z[0] + q_next});
      unions.push_back(interior_detail::merge_intervals(std::move(u), tol.abs));
    }

    // Prefix sums of the ball unions, as merged interval lists.
    std::vector<std::vector<Interval>> prefix(unions.size() + 1);
    prefix[0] = {Interval{0.0, 0.0}};
    for (std::size_t i = 0; i < unions.size(); ++i) {
      std::vector<Interval> sums;
      for (const auto& a : prefix[i])
        for (const auto& b : unions[i]) sums.push_back({a.lo + b.lo, a.hi + b.hi});
      if (sums.size() > 200000)
        throw SolverFailure("absorption oracle: interval bookkeeping blew up");
      prefix[i + 1] = interior_detail::merge_intervals(std::move(sums), tol.abs);
    }

    const double radius = static_cast<double>(params.n) * q_k;
    std::mt19937_64 rng(0x5eedab5000c1e125ULL);
    std::uniform_real_distribution<double> pick(center - radius, center + radius);
    const int samples = 128;
    for (int s = 0; s < samples; ++s) {
      double t = pick(rng);
      bool feasible = true;
      for (std::size_t i = unions.size(); i-- > 0 && feasible;) {
        bool found = false;
        for (const auto& b : unions[i]) {
          for (const auto& a : prefix[i]) {
            const double lo = std::max(b.lo, t - a.hi);
            const double hi = std::min(b.hi, t - a.lo);
            if (lo <= hi + tol.abs) {
              const double u = std::clamp(0.5 * (lo + hi), b.lo, b.hi);
              t -= u;
              found = true;
              break;
            }
          }
          if (found) break;
        }
        feasible = found;
      }
      ++rep.sampled;
      if (!feasible) {
        rep.passed = false;
        rep.worst_residual = std::numeric_limits<double>::infinity();
        continue;
      }
      // The remainder after peeling off one point per summand measures how
      // far the sample is from being an exact sum of union points.
      rep.worst_residual = std::max(rep.worst_residual, std::abs(t));
      if (std::abs(t) > tol.abs) rep.passed = false;
    }
    rep.oracle_ran = true;
  }
  return rep;
}

// Full certification pipeline: validates parameters and inputs, certifies
// each distinct summand's thickness above alpha, builds the witness trees,
// verifies every vertex, and emits the certified ball together with the
// residual gap at the verified depth.
inline InteriorCertificate certify_interior(const std::vector<DiscretizedSet>& sets,
                                            CertifierParams params,
                                            const Tolerance& tol = {}) {
  if (sets.empty())
    throw ValidationError("interior certification needs at least one summand");
  if (params.n <= 0) params.n = static_cast<int>(sets.size());
  if (params.n != static_cast<int>(sets.size()))
    throw ValidationError("parameter n must match the number of summands");
  if (params.d <= 0) params.d = sets.front().cloud.dim;
  for (const auto& s : sets)
    if (s.cloud.dim != params.d)
      throw ValidationError("all summands must share the ambient dimension");
  interior_detail::validate_shape_params(params);

  for (std::size_t i = 0; i < sets.size(); ++i)
    if (sets[i].diam <= tol.abs)
      throw ValidationError("summand " + std::to_string(i) +
                            " is a singleton; interior certification requires "
                            "summands of positive diameter");

  const double bound = phi(params.alpha, params.lambda, params.d);
  if (!(static_cast<double>(params.n) > bound))
    throw ValidationError(
        "summand count violates the parametric threshold: need n > "
        "sqrt(d)*(1+lambda)/(lambda*(alpha-lambda)) = " +
        std::to_string(bound) + ", got n = " + std::to_string(params.n));

  double r0 = sets.front().diam;
  for (const auto& s : sets) r0 = std::min(r0, s.diam);
  const auto scales = interior_detail::scale_table(r0, params.lambda, params.depth);
  const double r_last = scales[static_cast<std::size_t>(params.depth)];
  const double floor = r_last * params.cert_ratio * params.cert_ratio;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (sets[i].delta > 0.0 && sets[i].delta > floor + tol.abs)
      throw ValidationError("verification depth exceeds the resolution of summand " +
                            std::to_string(i));

  // Identical summand descriptions share one witness tree.
  InteriorCertificate cert;
  cert.params = params;
  cert.verified_depth = params.depth;
  cert.r0 = r0;
  cert.scales.assign(scales.begin(), scales.end() - 1);
  cert.tree_of_set.resize(sets.size());
  std::vector<int> rep_of_tree;
  auto same_set = [](const DiscretizedSet& a, const DiscretizedSet& b) {
    if (a.cloud.dim != b.cloud.dim || a.delta != b.delta ||
        a.cloud.points.size() != b.cloud.points.size())
      return false;
    for (std::size_t i = 0; i < a.cloud.points.size(); ++i)
      if (a.cloud.points[i] != b.cloud.points[i]) return false;
    return true;
  };
  for (std::size_t i = 0; i < sets.size(); ++i) {
    int found = -1;
    for (std::size_t t = 0; t < rep_of_tree.size() && found < 0; ++t)
      if (same_set(sets[static_cast<std::size_t>(rep_of_tree[t])], sets[i]))
        found = static_cast<int>(t);
    if (found < 0) {
      found = static_cast<int>(rep_of_tree.size());
      rep_of_tree.push_back(static_cast<int>(i));
    }
    cert.tree_of_set[i] = found;
  }

  // Thickness gate: every distinct summand must be certifiably thicker than
  // alpha down past the finest verified scale.
  for (std::size_t t = 0; t < rep_of_tree.size(); ++t) {
    const DiscretizedSet& set = sets[static_cast<std::size_t>(rep_of_tree[t])];
    ThicknessRequest req;
    req.c_target = params.alpha;
    req.scale_ratio = params.cert_ratio;
    req.floor = floor;
    const ThicknessCertificate tc = certify_thickness(set, req, tol);
    if (!(tc.c_certified > params.alpha))
      throw PremiseFailure(
          "summand is not certifiably thick enough for the requested alpha",
          "thickness", "set " + std::to_string(rep_of_tree[t]),
          tc.c_certified - params.alpha);
    cert.thickness.push_back(tc.c_certified);
  }

  for (std::size_t t = 0; t < rep_of_tree.size(); ++t) {
    const DiscretizedSet& set = sets[static_cast<std::size_t>(rep_of_tree[t])];
    cert.roots.push_back(build_tree(set, params, r0, cert.thickness[t], tol));
    cert.stats.push_back(tree_stats(cert.roots.back()));
  }

  for (std::size_t t = 0; t < cert.roots.size(); ++t) {
    const std::string where = "set " + std::to_string(rep_of_tree[t]);
    StepReport s1 = verify_step1_tree(cert.roots[t], params, tol);
    if (!s1.passed)
      throw PremiseFailure("ball-spanning check failed", "step1",
                           where + " " + s1.worst_path, s1.worst_margin);
    StepReport s2 = verify_step2_tree(cert.roots[t], params, tol);
    if (!s2.passed)
      throw PremiseFailure("radius-control check failed", "step2",
                           where + " " + s2.worst_path, s2.worst_margin);
    StepReport fc = containment_check_tree(
        cert.roots[t], sets[static_cast<std::size_t>(rep_of_tree[t])], params, tol);
    if (!fc.passed)
      throw PremiseFailure("summand-containment check failed", "containment",
                           where + " " + fc.worst_path, fc.worst_margin);
    cert.step1.push_back(std::move(s1));
    cert.step2.push_back(std::move(s2));
    cert.containment.push_back(std::move(fc));
  }

  cert.step3 = verify_step3_inequality(params);
  if (!cert.step3.passed)
    throw PremiseFailure("counting inequality failed", "step3", "global",
                         cert.step3.margin);

  if (params.depth >= 1) {
    std::vector<TreeVertex> tuple;
    tuple.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i)
      tuple.push_back(cert.roots[static_cast<std::size_t>(cert.tree_of_set[i])]);
    cert.absorption = absorption_check(tuple, params, tol);
    if (!cert.absorption.passed)
      throw PremiseFailure("absorption premises failed at the root tuple",
                           "absorption", "root tuple",
                           std::min(cert.absorption.step1_margin,
                                    std::min(cert.absorption.step2_margin,
                                             cert.absorption.step3_margin)));
  }

  Point center(static_cast<std::size_t>(params.d), 0.0);
  for (std::size_t i = 0; i < sets.size(); ++i)
    axpy(center, 1.0, cert.roots[static_cast<std::size_t>(cert.tree_of_set[i])].z);
  cert.ball.center = std::move(center);
  cert.ball.radius =
      static_cast<double>(params.n) * (params.alpha - params.lambda) * r0;
  cert.residual_gap = static_cast<double>(params.n) * (1.0 - params.lambda) * r_last;
  return cert;
}

}  // namespace thicksum
