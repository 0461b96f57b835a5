#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schubert/certify.hpp"
#include "schubert/formulate.hpp"
#include "schubert/io.hpp"
#include "schubert/solve.hpp"
#include "schubert/verify.hpp"

namespace schubert {

struct SolveOptions {
  FormulationMode mode = FormulationMode::Paired;
  std::vector<std::size_t> hypersurfaces;  // 0-based
  TrackerOptions tracker;
  int refine_iterations = 3;
  double verify_tolerance = 1e-8;
};

struct SolutionRecord {
  std::uint64_t path_id = 0;
  Certificate certificate;
  std::optional<bool> real;
  std::optional<std::size_t> cluster;
};

struct SolveReport {
  Formulation formulation;
  std::uint64_t seed = 0;
  std::vector<RawSolution> paths;        // by path_id
  std::vector<SolutionRecord> solutions;  // converged endpoints, canonical order
  std::size_t n_distinct = 0;
  std::optional<std::size_t> n_real;  // only for real-coefficient systems
  std::uint64_t expected = 0;
  std::vector<PlaneSolution> planes;  // one per cluster, in cluster order
  VerifyReport verify;
};

// formulate -> track_all -> newton_refine -> certify -> deduplicate ->
// classify_real -> verify_instance.
SolveReport solve_problem(const SchubertProblem& p, const std::vector<Flag>& flags,
                          const SolveOptions& opts);
SolveReport solve_formulation(Formulation f, const SolveOptions& opts);

// Certificates for externally supplied points, in order.
std::vector<Certificate> certify_points(const PolynomialSystem& s, const std::vector<CVector>& xs);

// "distinct certified: D / expected N(𝛃): N; real: R"
std::string summary_line(const SolveReport& r);

// Roles, 1-based condition and flag indices, and half-open variable ranges.
Json chart_blocks_to_json(const Formulation& f);
Json formulation_to_json(const Formulation& f, const std::optional<std::vector<std::size_t>>& permutation);
Json certificate_to_json(const Certificate& c);
Json solve_report_to_json(const SolveReport& r,
                          const std::optional<std::vector<std::size_t>>& permutation = std::nullopt);
Json paths_report_to_json(const SolveReport& r);
Json verify_report_to_json(const VerifyReport& r);

// Points listed under "solutions" (each with "x") in a solution file.
std::vector<CVector> solution_points(const Json& j);

}  // namespace schubert
