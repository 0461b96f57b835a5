#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "schubert/certify.hpp"
#include "schubert/errors.hpp"
#include "schubert/formulate.hpp"
#include "schubert/io.hpp"
#include "schubert/pipeline.hpp"
#include "schubert/solve.hpp"
#include "schubert/verify.hpp"
#include "support.hpp"

using namespace schubert;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(SCHUBERT_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string write_problem(const fs::path& dir, const std::string& name, const SchubertProblem& p,
                          const std::string& flag_type, std::uint64_t seed) {
  ProblemFile pf;
  pf.problem = p;
  pf.flag_type = flag_type;
  pf.flag_seed = seed;
  const fs::path path = dir / name;
  write_json_file(path.string(), problem_to_json(pf));
  return path.string();
}

// Number of r-subsets of an m-set, by enumeration.
std::uint64_t enumerate_subsets(int m, int r) {
  if (r < 0 || r > m) return 0;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask)
    if (__builtin_popcountll(mask) == r) ++count;
  return count;
}

// Solved Gr(2,6) instances shared by criteria 3, 6 and 7.
struct Gr26Run {
  std::uint64_t seed;
  SolveReport report;
  double seconds;
};

std::vector<Gr26Run>& gr26_runs() {
  static std::vector<Gr26Run> runs = [] {
    std::vector<Gr26Run> out;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto start = Clock::now();
      SolveOptions opts;
      opts.tracker.seed = seed;
      SolveReport r = solve_problem(support::gr26(), random_flags(4, 6, seed, false), opts);
      out.push_back({seed, std::move(r), seconds_since(start)});
    }
    return out;
  }();
  return runs;
}

Outcome criterion_1(const fs::path& dir) {
  Outcome o;
  const std::string ex = write_problem(dir, "gr26.json", support::gr26(), "random-complex", 1);
  const std::string g = write_problem(dir, "gr39.json", support::gr39(), "random-complex", 1);
  for (const auto& [file, expected] : {std::pair{ex, std::string("3")}, std::pair{g, std::string("437")}}) {
    const auto start = Clock::now();
    const Run r = run_cli("count " + file);
    const double t = seconds_since(start);
    o.require(r.code == 0 && r.out == expected + "\n", "count printed '" + r.out + "', expected " + expected);
    o.require(t < 10.0, "count took " + fmt(t) + " s");
  }
  // Independent oracles: Schur polynomial products and the Pieri rule.
  o.require(support::box_coefficient_oracle({{2}, {2}, {2}, {2}}, 2, 4) == 3, "Gr(2,6) oracle disagrees");
  o.require(support::pieri_box_count({1, 1, 1, 1, 1, 1, 3, 3, 3, 3}, 3, 6) == 437, "Gr(3,9) oracle disagrees");
  if (o.pass) o.detail = "count: Gr(2,6) 3, Gr(3,9) 437; oracles agree";
  return o;
}

Outcome criterion_2(const fs::path& dir) {
  Outcome o;
  const std::string ex = write_problem(dir, "gr26.json", support::gr26(), "random-complex", 1);
  const std::string g = write_problem(dir, "gr39.json", support::gr39(), "random-complex", 1);
  const std::array<std::pair<std::string, std::string>, 3> cases{{
      {"formulate " + ex + " --form paired", "(8, 8, {2:8})"},
      {"formulate " + g + " --form paired", "(72, 72, {2:72})"},
      {"formulate " + g + " --form hybrid --hypersurfaces 1..6", "(24, 24, {2:18, 3:6})"},
  }};
  for (const auto& [args, shape] : cases) {
    const Run r = run_cli(args);
    o.require(r.code == 0 && r.out == shape + "\n", args + " printed '" + r.out + "'");
  }
  Rng rng(2024);
  int checked = 0;
  while (checked < 200) {
    const int n = rng.uniform_int(3, 7);
    const int k = rng.uniform_int(1, n - 1);
    const SchubertProblem p = support::random_problem(n, k, rng);
    const int d = k * (n - k);
    const auto l = static_cast<int>(p.size());
    const Formulation f = primal_dual(p, random_flags(p.size(), static_cast<std::size_t>(n), rng.next_u64(), false));
    const SystemShape s = f.system.shape();
    o.require(s.n_vars == d * (l - 1) && s.n_polys == static_cast<std::size_t>(d * (l - 1)) &&
                  f.system.max_degree() <= 2,
              "full formulation shape " + s.to_string() + " for Gr(" + std::to_string(k) + "," +
                  std::to_string(n) + "), l = " + std::to_string(l));
    ++checked;
  }
  if (o.pass) o.detail = "paired and hybrid shapes exact; 200 random full formulations square of size k(n-k)(l-1)";
  return o;
}

Outcome criterion_3() {
  Outcome o;
  double worst = 0.0;
  for (const auto& run : gr26_runs()) {
    const SolveReport& r = run.report;
    const std::string tag = "seed " + std::to_string(run.seed) + ": ";
    o.require(r.n_distinct == 3, tag + std::to_string(r.n_distinct) + " distinct certified");
    // Pairwise distinctness of the cluster representatives.
    std::vector<Certificate> reps;
    for (const auto& s : r.solutions)
      if (s.cluster && reps.size() == *s.cluster) reps.push_back(s.certificate);
    for (std::size_t a = 0; a < reps.size(); ++a)
      for (std::size_t b = a + 1; b < reps.size(); ++b)
        o.require(distinct(reps[a], reps[b]), tag + "representatives not distinct");
    o.require(r.planes.size() == 3, tag + "planes extracted: " + std::to_string(r.planes.size()));
    o.require(r.verify.all_pass && r.verify.passing_planes == 3, tag + "verify_instance failed");
    o.require(run.seconds < 60.0, tag + "took " + fmt(run.seconds) + " s");
    worst = std::max(worst, run.seconds);
  }
  if (o.pass) o.detail = "20 complex instances, 3 distinct certified each, verify at 1e-8; slowest " + fmt(worst) + " s";
  return o;
}

Outcome criterion_4() {
  Outcome o;
  Rng rng(4004);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(2, 8);
    const int k = rng.uniform_int(1, n - 1);
    const auto c = support::random_condition(n, k, rng);
    const Flag f = random_flag(static_cast<std::size_t>(n), rng, false);
    const CMatrix h = sample_cell_point(pattern_single(c), rng) * f.matrix();
    AffineMatrix chart(h.rows(), h.cols());
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < h.cols(); ++j) chart(i, j).constant = h(i, j);
    const PolynomialSystem minors = minor_system(chart, c, f, 0);
    for (const auto& v : minors.evaluate(CVector{})) worst = std::max(worst, std::abs(v));

    std::uint64_t enumerated = 0;
    for (int i = 1; i <= k; ++i) {
      const int r = c.at(i) + k - i + 1;
      enumerated += enumerate_subsets(k + c.at(i), r) * enumerate_subsets(n, r);
    }
    o.require(minor_count(c) == enumerated && minors.size() == enumerated,
              c.to_string() + ": minor_count " + std::to_string(minor_count(c)) + ", enumerated " +
                  std::to_string(enumerated) + ", built " + std::to_string(minors.size()));
  }
  o.require(worst < 1e-9, "minor residual " + fmt(worst));
  const Formulation ex = primal_minors(support::gr26(), random_flags(4, 6, 1, false));
  o.require(ex.system.shape().to_string() == "(4, 12, {2:12})", "Gr(2,6) primal shape " + ex.system.shape().to_string());
  if (o.pass) o.detail = "200 cell points, max minor residual " + fmt(worst) + "; counts exact; Gr(2,6) (4, 12, {2:12})";
  return o;
}

Outcome criterion_5() {
  Outcome o;
  std::size_t conditions = 0;
  for (int n = 2; n <= 8; ++n)
    for (int k = 1; k < n; ++k)
      for (const auto& c : all_conditions(n, k)) {
        const auto d = dual_condition(c);
        o.require(dual_condition(d) == c, "dual is not an involution at " + c.to_string());
        o.require(d.k() == n - k && codim(d) == codim(c), "codim changes under duality at " + c.to_string());
        ++conditions;
      }

  Rng rng(5005);
  int members = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(3, 8);
    const int k = rng.uniform_int(1, n - 1);
    const auto c = support::random_condition(n, k, rng);
    const Flag f = random_flag(static_cast<std::size_t>(n), rng, false);
    CMatrix h;
    if (trial % 2 == 0) {
      h = sample_cell_point(pattern_single(c), rng) * f.matrix();
    } else {
      h = CMatrix(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = rng.complex_square();
    }
    const bool primal = check_membership(h, c, f, 1e-8);
    const bool dual = check_membership(annihilator(h).transpose(), dual_condition(c), dual_flag(f), 1e-8);
    o.require(primal == dual, "membership differs under duality for " + c.to_string());
    members += primal ? 1 : 0;
  }

  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const Flag f = random_flag(n, seed, seed % 2 == 0);
    const Flag d = dual_flag(f);
    for (std::size_t l = 1; l < n; ++l)
      worst = std::max(worst, (f.subspace(n - l) * d.subspace(l).transpose()).max_abs());
  }
  o.require(worst < 1e-10, "annihilation residual " + fmt(worst));
  if (o.pass)
    o.detail = std::to_string(conditions) + " conditions for n <= 8; 100 samples (" + std::to_string(members) +
               " members) agree; annihilation " + fmt(worst);
  return o;
}

Outcome criterion_6() {
  Outcome o;
  double residual = 0.0, angle = 0.0;
  std::size_t planes = 0;
  for (const auto& run : gr26_runs())
    for (const auto& plane : run.report.planes) {
      for (const auto& k : plane.duals) residual = std::max(residual, (plane.h * k).max_abs() / (plane.h.frobenius_norm() * k.frobenius_norm()));
      residual = std::max(residual, dual_residual(plane));
      angle = std::max(angle, dual_angle(plane));
      ++planes;
    }
  o.require(planes > 0, "no certified planes");
  o.require(residual < 1e-9, "H K residual " + fmt(residual));
  o.require(angle < 1e-7, "principal angle " + fmt(angle));

  // [X : I_k] against [I_{n-k} ; Y]: the bilinear block is X + Y = 0.
  for (int n = 3; n <= 7; ++n)
    for (int k = 1; k < n; ++k) {
      const int d = k * (n - k);
      const AffineMatrix m = instantiate_primal(pattern_single(trivial_condition(n, k)),
                                                CMatrix::identity(static_cast<std::size_t>(n)), 0);
      AffineMatrix nmat(static_cast<std::size_t>(n), static_cast<std::size_t>(n - k));
      for (int i = 0; i < n - k; ++i) nmat(static_cast<std::size_t>(i), static_cast<std::size_t>(i)).constant = 1.0;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < n - k; ++j)
          nmat(static_cast<std::size_t>(n - k + i), static_cast<std::size_t>(j)).terms.emplace_back(d + i * (n - k) + j, 1.0);
      nmat.set_var_range(d, 2 * d);
      const PolynomialSystem s = bilinear_block(m, nmat, 2 * d);
      bool ok = s.size() == static_cast<std::size_t>(d);
      for (int x = 0; ok && x < d; ++x)
        ok = s.poly(static_cast<std::size_t>(x)) == Polynomial({{1.0, {{x, 1}}}, {1.0, {{d + x, 1}}}});
      o.require(ok, "X + Y = 0 fails for Gr(" + std::to_string(k) + "," + std::to_string(n) + ")");
    }
  if (o.pass)
    o.detail = std::to_string(planes) + " planes: H K " + fmt(residual) + ", angle " + fmt(angle) + "; X + Y = 0 exact";
  return o;
}

Outcome criterion_7() {
  Outcome o;
  Rng rng(7007);
  double worst_ratio = 0.0;
  std::size_t points = 0;
  for (const auto& run : gr26_runs()) {
    const PolynomialSystem& s = run.report.formulation.system;
    for (const auto& sol : run.report.solutions) {
      const Certificate& c = sol.certificate;
      if (!c.certified) continue;
      ++points;
      const auto root = support::mp_newton(s, support::to_mp(c.x), 12);
      const double dist = static_cast<double>(support::mp_distance(root, support::to_mp(c.x)));
      o.require(dist <= 2.0 * c.beta_val, "root at distance " + fmt(dist) + " > 2 beta = " + fmt(2 * c.beta_val));

      // Quadratic convergence from a point still inside the certified region.
      CVector y = c.x;
      const double scale = 0.02 / std::max(c.gamma_val, 1.0);
      for (auto& z : y) z += scale * rng.complex_square();
      const Certificate cy = certify(s, y);
      o.require(cy.certified, "perturbed point not certified");
      if (!cy.certified) continue;
      auto x = support::to_mp(y);
      double e_prev = static_cast<double>(support::mp_distance(x, root));
      for (int j = 1; j <= 3; ++j) {
        x = support::mp_newton_step(s, x);
        const double e = static_cast<double>(support::mp_distance(x, root));
        // e_j <= gamma e_{j-1}^2 up to a constant, and digits double.
        const double ratio = e / (cy.gamma_val * e_prev * e_prev);
        worst_ratio = std::max(worst_ratio, ratio);
        o.require(e <= 2.0 * cy.gamma_val * e_prev * e_prev + 1e-90, "Newton step " + std::to_string(j) + " not quadratic");
        o.require(e <= std::pow(0.5, std::pow(2.0, j) - 1) * 2.0 * cy.beta_val, "Smale bound violated at step " + std::to_string(j));
        e_prev = e;
      }
    }
  }
  bool rejected = false;
  try {
    (void)certify(primal_minors(support::gr26(), random_flags(4, 6, 1, false)).system, CVector(4, 0.0));
  } catch (const InvalidInput& e) {
    rejected = std::string(e.what()).find("system not square") != std::string::npos;
  }
  o.require(rejected, "non-square minor system was not rejected");
  if (o.pass)
    o.detail = std::to_string(points) + " certified points within 2 beta of an extended-precision root; e_j / (gamma e_{j-1}^2) <= " +
               fmt(worst_ratio) + "; non-square rejected";
  return o;
}

Outcome criterion_8() {
  Outcome o;
  const auto flags = random_flags(10, 9, 1, false);
  const Formulation paired_form = paired(support::gr39(), flags);
  const Formulation hybrid_form = hybrid(support::gr39(), flags, {0, 1, 2, 3, 4, 5});
  const TrackerOptions opts;
  for (const Formulation* f : {&paired_form, &hybrid_form}) {
    const std::uint64_t paths = StartSystem(f->system).path_count();
    o.require(paths > opts.max_paths, "Gr(3,9) start system unexpectedly small");
    bool refused = false;
    try {
      (void)track_all(f->system, opts);
    } catch (const NumericalFailure&) {
      refused = true;
    }
    o.require(refused, "Gr(3,9) solve was not refused");
  }
  o.require(lr_number(support::gr39()) == 437, "Gr(3,9) count");
  if (o.pass)
    o.detail = "stated limitation: Gr(3,9) needs 2^72 (paired) or 2^18 3^6 (hybrid) total-degree paths, above the " +
               std::to_string(opts.max_paths) + " path limit; solve refuses, 437 covered by the count and the shapes";
  return o;
}

Outcome criterion_9(const fs::path& dir) {
  Outcome o;
  // In-process: the solution files of five criterion 3 instances, regenerated.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SolveOptions opts;
    opts.tracker.seed = seed;
    opts.tracker.threads = 1 + seed % 3;
    const SolveReport again = solve_problem(support::gr26(), random_flags(4, 6, seed, false), opts);
    const std::string first = solve_report_to_json(gr26_runs()[seed - 1].report).dump(2);
    o.require(solve_report_to_json(again).dump(2) == first, "seed " + std::to_string(seed) + " solution differs on rerun");
  }
  // Through the CLI: every output file twice, with different thread counts.
  const std::string ex = write_problem(dir, "gr26_real.json", support::gr26(), "random-real", 9);
  const std::string g = write_problem(dir, "gr39.json", support::gr39(), "random-complex", 1);
  for (int pass = 0; pass < 2; ++pass) {
    const fs::path out = dir / ("run" + std::to_string(pass));
    fs::create_directories(out);
    const std::string threads = pass == 0 ? "1" : "3";
    run_cli("formulate " + g + " --form hybrid --hypersurfaces 1..6 -o " + (out / "system_hybrid.json").string());
    run_cli("formulate " + ex + " -o " + (out / "system.json").string());
    run_cli("solve " + ex + " --seed 11 --threads " + threads + " -o " + (out / "sols.json").string() +
            " --paths-report " + (out / "paths.json").string());
    run_cli("certify " + (out / "system.json").string() + " " + (out / "sols.json").string() + " -o " +
            (out / "certs.json").string());
    run_cli("verify " + ex + " " + (out / "sols.json").string() + " -o " + (out / "verify.json").string());
  }
  std::size_t files = 0;
  for (const char* name : {"system_hybrid.json", "system.json", "sols.json", "paths.json", "certs.json", "verify.json"}) {
    const fs::path a = dir / "run0" / name, b = dir / "run1" / name;
    o.require(fs::exists(a) && fs::exists(b), std::string(name) + " was not written");
    o.require(slurp(a) == slurp(b), std::string(name) + " differs between runs");
    ++files;
  }
  if (o.pass) o.detail = "5 in-process reruns and " + std::to_string(files) + " CLI output files byte-identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / ("schubert_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::array<std::pair<const char*, std::function<Outcome()>>, 9> criteria{{
      {"LR counts", [&] { return criterion_1(dir); }},
      {"square shapes", [&] { return criterion_2(dir); }},
      {"solve and certify Gr(2,6)", [] { return criterion_3(); }},
      {"minor systems", [] { return criterion_4(); }},
      {"duality", [] { return criterion_5(); }},
      {"bilinear law", [] { return criterion_6(); }},
      {"certification behaviour", [] { return criterion_7(); }},
      {"Gr(3,9) at desk scale", [] { return criterion_8(); }},
      {"determinism", [&] { return criterion_9(dir); }},
  }};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << ", "
              << fmt(seconds_since(start)) << " s): " << o.detail << std::endl;
    failures += o.pass ? 0 : 1;
  }
  if (argc <= 1) fs::remove_all(dir);
  return failures == 0 ? 0 : 1;
}
