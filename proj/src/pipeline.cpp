#include "schubert/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace schubert {

namespace {

std::vector<long long> rounded_key(const CVector& x) {
  std::vector<long long> key;
  key.reserve(2 * x.size());
  for (const auto& z : x) {
    key.push_back(std::llround(z.real() * 1e9));
    key.push_back(std::llround(z.imag() * 1e9));
  }
  return key;
}

}  // namespace

SolveReport solve_problem(const SchubertProblem& p, const std::vector<Flag>& flags,
                          const SolveOptions& opts) {
  return solve_formulation(formulate(opts.mode, p, flags, opts.hypersurfaces), opts);
}

SolveReport solve_formulation(Formulation f, const SolveOptions& opts) {
  SolveReport r;
  r.seed = opts.tracker.seed;
  r.expected = lr_number(f.problem);
  r.paths = track_all(f.system, opts.tracker);
  const PolynomialSystem& s = f.system;
  const bool real_system = s.has_real_coefficients();

  std::vector<SolutionRecord> records;
  for (const auto& path : r.paths) {
    if (path.status != PathStatus::Converged) continue;
    CVector x = path.x;
    try {
      x = newton_refine(s, path.x, opts.refine_iterations);
    } catch (const SingularJacobianError&) {
    }
    SolutionRecord rec;
    rec.path_id = path.path_id;
    rec.certificate = certify(s, x);
    records.push_back(std::move(rec));
  }

  std::vector<Certificate> certs;
  for (const auto& rec : records) certs.push_back(rec.certificate);
  const Clustering clusters = deduplicate(certs);
  for (std::size_t i = 0; i < records.size(); ++i) records[i].cluster = clusters.cluster_of[i];

  // Canonical order: certified points by their representative's rounded
  // coordinates, then path id; uncertified points last.
  std::vector<std::vector<long long>> rep_keys;
  for (std::size_t rep : clusters.representatives) rep_keys.push_back(rounded_key(certs[rep].x));
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ca = records[a].cluster;
    const auto& cb = records[b].cluster;
    if (ca.has_value() != cb.has_value()) return ca.has_value();
    if (ca && cb && *ca != *cb) return rep_keys[*ca] < rep_keys[*cb];
    return records[a].path_id < records[b].path_id;
  });
  std::vector<std::optional<std::size_t>> renumber(clusters.count());
  std::size_t next_id = 0;
  for (std::size_t i : order) {
    auto& c = records[i].cluster;
    if (!c) continue;
    if (!renumber[*c]) renumber[*c] = next_id++;
  }
  std::vector<std::size_t> representative_of(clusters.count());
  for (std::size_t c = 0; c < clusters.count(); ++c)
    representative_of[*renumber[c]] = clusters.representatives[c];

  for (std::size_t i : order) {
    SolutionRecord rec = records[i];
    if (rec.cluster) rec.cluster = renumber[*rec.cluster];
    if (real_system && rec.certificate.certified) rec.real = classify_real(s, rec.certificate);
    r.solutions.push_back(std::move(rec));
  }
  r.n_distinct = clusters.count();

  if (real_system) {
    std::size_t n_real = 0;
    for (std::size_t rep : representative_of)
      if (classify_real(s, certs[rep])) ++n_real;
    r.n_real = n_real;
  }

  for (std::size_t c = 0; c < representative_of.size(); ++c) {
    try {
      PlaneSolution plane = extract_planes(f, certs[representative_of[c]].x);
      plane.cluster = c;
      r.planes.push_back(std::move(plane));
    } catch (const InvalidInput&) {
    }
  }
  r.verify = verify_instance(f.problem, f.flags, r.planes, opts.verify_tolerance);
  r.formulation = std::move(f);
  return r;
}

std::vector<Certificate> certify_points(const PolynomialSystem& s, const std::vector<CVector>& xs) {
  if (!s.square()) {
    throw InvalidInput("system not square: " + std::to_string(s.size()) + " equations in " +
                       std::to_string(s.n_vars()) + " variables");
  }
  std::vector<Certificate> out;
  for (const auto& x : xs) {
    if (x.size() != static_cast<std::size_t>(s.n_vars())) {
      Certificate c;
      c.x = x;
      c.beta_val = c.gamma_val = c.alpha_val = std::numeric_limits<double>::infinity();
      c.system_fingerprint = s.fingerprint();
      out.push_back(std::move(c));
      continue;
    }
    out.push_back(certify(s, x));
  }
  return out;
}

std::string summary_line(const SolveReport& r) {
  std::ostringstream out;
  out << "distinct certified: " << r.n_distinct << " / expected N(𝛃): " << r.expected << "; real: ";
  if (r.n_real) out << *r.n_real;
  else out << "n/a";
  return out.str();
}

Json chart_blocks_to_json(const Formulation& f) {
  Json out = Json::array();
  for (const auto& b : f.blocks) {
    Json conds = Json::array();
    for (std::size_t c : b.conditions) conds.push_back(c + 1);
    out.push_back({{"role", b.role == BlockRole::Primal ? "primal" : "dual"},
                   {"conditions", conds},
                   {"flags", conds},
                   {"var_range", {b.var_begin, b.var_end}},
                   {"shape", {b.chart.rows(), b.chart.cols()}}});
  }
  return out;
}

Json formulation_to_json(const Formulation& f, const std::optional<std::vector<std::size_t>>& permutation) {
  Json hyp = Json::array();
  for (std::size_t h : f.hypersurfaces) hyp.push_back(h + 1);
  Json perm = nullptr;
  if (permutation) {
    perm = Json::array();
    for (std::size_t v : *permutation) perm.push_back(v + 1);
  }
  return Json{{"mode", to_string(f.mode)},
              {"hypersurfaces", hyp},
              {"permutation", perm},
              {"n_vars", f.system.n_vars()},
              {"n_polys", f.system.size()},
              {"shape", f.system.shape().to_string()}};
}

namespace {

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json certificate_to_json(const Certificate& c) {
  return Json{{"x", vector_to_json(c.x)},
              {"alpha", finite_or_null(c.alpha_val)},
              {"beta", finite_or_null(c.beta_val)},
              {"gamma", finite_or_null(c.gamma_val)},
              {"certified", c.certified}};
}

Json solve_report_to_json(const SolveReport& r, const std::optional<std::vector<std::size_t>>& permutation) {
  std::size_t converged = 0, diverged = 0, failed = 0;
  for (const auto& p : r.paths) {
    if (p.status == PathStatus::Converged) ++converged;
    else if (p.status == PathStatus::Diverged) ++diverged;
    else ++failed;
  }
  Json sols = Json::array();
  for (const auto& s : r.solutions) {
    Json j = certificate_to_json(s.certificate);
    j["path_id"] = s.path_id;
    j["real"] = s.real ? Json(*s.real) : Json(nullptr);
    j["cluster"] = s.cluster ? Json(*s.cluster) : Json(nullptr);
    sols.push_back(std::move(j));
  }
  return Json{{"formulation", formulation_to_json(r.formulation, permutation)},
              {"seed", r.seed},
              {"alpha0", kAlpha0},
              {"paths", r.paths.size()},
              {"path_summary", {{"converged", converged}, {"diverged", diverged}, {"failed", failed}}},
              {"solutions", sols},
              {"n_distinct", r.n_distinct},
              {"n_real", r.n_real ? Json(*r.n_real) : Json(nullptr)},
              {"expected", r.expected},
              {"verify", verify_report_to_json(r.verify)}};
}

Json paths_report_to_json(const SolveReport& r) {
  Json paths = Json::array();
  for (const auto& p : r.paths) {
    paths.push_back({{"path_id", p.path_id},
                     {"status", to_string(p.status)},
                     {"steps", p.steps},
                     {"residual", finite_or_null(p.residual)},
                     {"x", vector_to_json(p.x)}});
  }
  return Json{{"paths", paths}};
}

Json verify_report_to_json(const VerifyReport& r) {
  return Json{{"table", r.table},
              {"passing_planes", r.passing_planes},
              {"expected", r.expected},
              {"all_pass", r.all_pass},
              {"count_matches", r.count_matches}};
}

std::vector<CVector> solution_points(const Json& j) {
  std::vector<CVector> out;
  try {
    for (const auto& s : j.at("solutions")) {
      CVector x;
      try {
        x = vector_from_json(s.at("x"));
      } catch (const InvalidInput&) {
        // An unreadable entry keeps its slot so reports stay aligned.
        x.assign(1, Complex(std::nan(""), 0.0));
      }
      out.push_back(std::move(x));
    }
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed solution file: ") + e.what());
  }
  return out;
}

}  // namespace schubert
