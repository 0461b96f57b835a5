#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "schubert/combinat.hpp"
#include "schubert/errors.hpp"
#include "schubert/io.hpp"
#include "schubert/pipeline.hpp"

namespace {

using namespace schubert;

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

// "1,3,5..8" -> {0, 2, 4, 5, 6, 7}
std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        const int v = std::stoi(item);
        if (v < 1) throw InvalidInput("");
        out.push_back(static_cast<std::size_t>(v - 1));
      } else {
        const int lo = std::stoi(item.substr(0, dots));
        const int hi = std::stoi(item.substr(dots + 2));
        if (lo < 1 || hi < lo) throw InvalidInput("");
        for (int v = lo; v <= hi; ++v) out.push_back(static_cast<std::size_t>(v - 1));
      }
    } catch (const std::exception&) {
      throw InvalidInput("bad index list '" + text + "' (use 1-based values like 1,2,5..8)");
    }
    pos = comma + 1;
  }
  return out;
}

struct FormArgs {
  std::string form = "paired";
  std::string hypersurfaces;
};

void add_form_options(CLI::App* cmd, FormArgs& args) {
  cmd->add_option("--form", args.form, "formulation: full, paired, hybrid or primal")
      ->check(CLI::IsMember({"full", "paired", "hybrid", "primal"}));
  cmd->add_option("--hypersurfaces", args.hypersurfaces,
                  "1-based box conditions imposed as determinants (hybrid), e.g. 1..6");
}

Formulation build(const ProblemFile& pf, const FormArgs& args) {
  return formulate(parse_mode(args.form), pf.problem, pf.flags, parse_index_list(args.hypersurfaces));
}

int cmd_count(const std::string& path) {
  const ProblemFile pf = problem_from_json(read_json_file(path));
  std::cout << lr_number(pf.problem) << '\n';
  return 0;
}

int cmd_formulate(const std::string& path, const FormArgs& args, const std::string& output) {
  const ProblemFile pf = problem_from_json(read_json_file(path));
  const Formulation f = build(pf, args);
  if (!output.empty()) {
    Json j = system_to_json(f.system);
    j["chart_blocks"] = chart_blocks_to_json(f);
    write_json_file(output, j);
  }
  std::cout << f.system.shape().to_string() << '\n';
  return 0;
}

int cmd_solve(const std::string& path, const FormArgs& args, std::uint64_t seed,
              std::size_t threads, const std::string& output, const std::string& paths_report) {
  const ProblemFile pf = problem_from_json(read_json_file(path));
  SolveOptions opts;
  opts.mode = parse_mode(args.form);
  opts.hypersurfaces = parse_index_list(args.hypersurfaces);
  opts.tracker.seed = seed;
  opts.tracker.threads = threads;
  const SolveReport r = solve_problem(pf.problem, pf.flags, opts);
  if (!output.empty()) write_json_file(output, solve_report_to_json(r, pf.permutation));
  if (!paths_report.empty()) write_json_file(paths_report, paths_report_to_json(r));
  std::cout << summary_line(r) << '\n';
  if (r.expected > 0 && r.n_distinct == 0) {
    std::cerr << "no certified solutions\n";
    return kExitNumerical;
  }
  return 0;
}

int cmd_certify(const std::string& system_path, const std::string& sols_path,
                const std::string& output) {
  const PolynomialSystem s = system_from_json(read_json_file(system_path));
  const auto points = solution_points(read_json_file(sols_path));
  const auto certs = certify_points(s, points);
  Json list = Json::array();
  std::size_t n_certified = 0;
  for (const auto& c : certs) {
    list.push_back(certificate_to_json(c));
    if (c.certified) ++n_certified;
  }
  const Json report{{"alpha0", kAlpha0}, {"certificates", list}, {"n_certified", n_certified}};
  if (!output.empty()) write_json_file(output, report);
  else std::cout << report.dump(2) << '\n';
  std::cout << "certified: " << n_certified << " / " << certs.size() << '\n';
  return 0;
}

int cmd_verify(const std::string& problem_path, const std::string& sols_path, FormArgs args,
               bool form_given, double tol, const std::string& output) {
  const ProblemFile pf = problem_from_json(read_json_file(problem_path));
  const Json sols = read_json_file(sols_path);
  if (!form_given && sols.contains("formulation")) {
    const Json& meta = sols.at("formulation");
    args.form = meta.value("mode", args.form);
    std::string hyp;
    for (const auto& h : meta.value("hypersurfaces", Json::array()))
      hyp += (hyp.empty() ? "" : ",") + std::to_string(h.get<int>());
    args.hypersurfaces = hyp;
  }
  const Formulation f = build(pf, args);
  std::vector<PlaneSolution> planes;
  std::vector<bool> seen;
  const auto points = solution_points(sols);
  const Json& entries = sols.at("solutions");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Json& e = entries[i];
    if (!e.value("certified", false)) continue;
    const auto cluster = e.contains("cluster") && e["cluster"].is_number()
                             ? std::optional<std::size_t>(e["cluster"].get<std::size_t>())
                             : std::nullopt;
    if (cluster) {
      if (*cluster >= seen.size()) seen.resize(*cluster + 1, false);
      if (seen[*cluster]) continue;
      seen[*cluster] = true;
    }
    PlaneSolution plane = extract_planes(f, points[i]);
    plane.cluster = cluster;
    planes.push_back(std::move(plane));
  }
  const VerifyReport r = verify_instance(f.problem, f.flags, planes, tol);
  if (!output.empty()) write_json_file(output, verify_report_to_json(r));
  std::cout << r.to_table() << '\n';
  return r.all_pass && r.count_matches ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formulate, solve and certify Schubert problems on Grassmannians"};
  app.require_subcommand(1);

  std::string problem, system_path, sols, output, paths_report;
  FormArgs form;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  double tol = 1e-8;

  auto* count = app.add_subcommand("count", "print the number of solutions N");
  count->add_option("problem", problem, "problem JSON")->required();

  auto* formulate_cmd = app.add_subcommand("formulate", "write the polynomial system");
  formulate_cmd->add_option("problem", problem, "problem JSON")->required();
  add_form_options(formulate_cmd, form);
  formulate_cmd->add_option("-o,--output", output, "system JSON");

  auto* solve = app.add_subcommand("solve", "solve, certify and verify");
  solve->add_option("problem", problem, "problem JSON")->required();
  add_form_options(solve, form);
  solve->add_option("--seed", seed, "seed for the homotopy constant");
  solve->add_option("--threads", threads, "worker threads (default SCHUBERT_THREADS or all cores)");
  solve->add_option("-o,--output", output, "solution JSON");
  solve->add_option("--paths-report", paths_report, "per-path status JSON");

  auto* certify_cmd = app.add_subcommand("certify", "recompute alpha, beta, gamma for given points");
  certify_cmd->add_option("system", system_path, "system JSON")->required();
  certify_cmd->add_option("solutions", sols, "solution JSON")->required();
  certify_cmd->add_option("-o,--output", output, "report JSON (default: standard output)");

  auto* verify = app.add_subcommand("verify", "check solution planes against the conditions");
  verify->add_option("problem", problem, "problem JSON")->required();
  verify->add_option("solutions", sols, "solution JSON")->required();
  add_form_options(verify, form);
  verify->add_option("--tol", tol, "membership tolerance");
  verify->add_option("-o,--output", output, "report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*count) return cmd_count(problem);
    if (*formulate_cmd) return cmd_formulate(problem, form, output);
    if (*solve) return cmd_solve(problem, form, seed, threads, output, paths_report);
    if (*certify_cmd) return cmd_certify(system_path, sols, output);
    if (*verify) {
      const bool form_given = verify->count("--form") > 0 || verify->count("--hypersurfaces") > 0;
      return cmd_verify(problem, sols, form, form_given, tol, output);
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
