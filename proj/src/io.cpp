#include "schubert/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "schubert/errors.hpp"
#include "schubert/formulate.hpp"

namespace schubert {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidInput("expected a complex number [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(std::span<const Complex> x) {
  Json out = Json::array();
  for (const auto& z : x) out.push_back(complex_to_json(z));
  return out;
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("expected a list of complex numbers");
  CVector x;
  for (const auto& z : j) x.push_back(complex_from_json(z));
  return x;
}

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
  return out;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("expected a non-empty matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const CVector r = vector_from_json(j[i]);
    if (r.size() != cols) throw InvalidInput("matrix rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = r[c];
  }
  return m;
}

Json system_to_json(const PolynomialSystem& s) {
  Json polys = Json::array();
  for (const auto& p : s.polys()) {
    Json terms = Json::array();
    for (const auto& m : p.terms()) {
      Json exps = Json::object();
      for (const auto& [v, e] : m.exponents) exps[std::to_string(v)] = e;
      terms.push_back(Json::array({m.coeff.real(), m.coeff.imag(), exps}));
    }
    polys.push_back(std::move(terms));
  }
  return Json{{"n_vars", s.n_vars()}, {"polys", std::move(polys)}, {"labels", s.labels()}};
}

PolynomialSystem system_from_json(const Json& j) {
  try {
    const int n_vars = j.at("n_vars").get<int>();
    if (n_vars < 0) throw InvalidInput("n_vars must be non-negative");
    const auto& polys = j.at("polys");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    PolynomialSystem s(n_vars);
    for (std::size_t i = 0; i < polys.size(); ++i) {
      std::vector<Monomial> terms;
      for (const auto& t : polys[i]) {
        if (!t.is_array() || t.size() != 3) throw InvalidInput("term must be [re, im, {var: exp}]");
        Monomial m{{t[0].get<double>(), t[1].get<double>()}, {}};
        for (const auto& [key, e] : t[2].items()) {
          std::size_t used = 0;
          const int v = std::stoi(key, &used);
          if (used != key.size() || v < 0) throw InvalidInput("bad variable id '" + key + "'");
          const int exp = e.get<int>();
          if (exp < 0) throw InvalidInput("negative exponent");
          if (exp > 0) m.exponents.emplace_back(v, exp);
        }
        std::sort(m.exponents.begin(), m.exponents.end());
        terms.push_back(std::move(m));
      }
      s.add(Polynomial(std::move(terms)), i < labels.size() ? labels[i] : "f" + std::to_string(i + 1));
    }
    return s;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed system JSON: ") + e.what());
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const InvalidInput*>(&e)) throw;
    throw InvalidInput(std::string("malformed system JSON: ") + e.what());
  }
}

ProblemFile problem_from_json(const Json& j, bool require_schubert) {
  ProblemFile out;
  try {
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    if (!(0 < k && k < n)) throw InvalidInput("need 0 < k < n");
    out.problem = {n, k, {}};
    for (const auto& c : j.at("conditions")) {
      const auto beta = c.get<std::vector<int>>();
      if (static_cast<int>(beta.size()) != k)
        throw InvalidInput("condition " + c.dump() + " does not have k = " + std::to_string(k) + " entries");
      out.problem.conditions.emplace_back(n, beta);
    }
    if (out.problem.conditions.empty()) throw InvalidInput("no conditions given");
    if (require_schubert && !validate_problem(out.problem)) {
      std::ostringstream msg;
      msg << "not a Schubert problem: Σ|β| = " << total_codim(out.problem) << " ≠ k(n−k) = "
          << out.problem.dimension();
      throw InvalidInput(msg.str());
    }

    const std::size_t count = out.problem.size();
    const Json& flags = j.contains("flags") ? j.at("flags") : Json{{"type", "random-complex"}, {"seed", 0}};
    out.flag_type = flags.at("type").get<std::string>();
    if (out.flag_type == "random-real" || out.flag_type == "random-complex") {
      out.flag_seed = flags.contains("seed") ? flags.at("seed").get<std::uint64_t>() : 0;
      out.flags = random_flags(count, static_cast<std::size_t>(n), *out.flag_seed,
                               out.flag_type == "random-real");
    } else if (out.flag_type == "explicit") {
      const auto& mats = flags.at("matrices");
      if (mats.size() != count)
        throw InvalidInput("explicit flags: expected " + std::to_string(count) + " matrices");
      for (const auto& m : mats) {
        CMatrix mat = matrix_from_json(m);
        if (mat.rows() != static_cast<std::size_t>(n) || mat.cols() != static_cast<std::size_t>(n))
          throw InvalidInput("explicit flags must be n x n");
        out.flags.emplace_back(std::move(mat));
      }
    } else {
      throw InvalidInput("unknown flag type '" + out.flag_type + "'");
    }

    if (j.contains("permutation") && !j.at("permutation").is_null()) {
      std::vector<std::size_t> perm;
      for (const auto& v : j.at("permutation")) {
        const int one_based = v.get<int>();
        if (one_based < 1) throw InvalidInput("permutation entries are 1-based");
        perm.push_back(static_cast<std::size_t>(one_based - 1));
      }
      out.problem = permute_problem(out.problem, perm);
      out.flags = permute_flags(out.flags, perm);
      out.permutation = std::move(perm);
    }
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed problem JSON: ") + e.what());
  }
  return out;
}

Json problem_to_json(const ProblemFile& p) {
  Json conds = Json::array();
  SchubertProblem original = p.problem;
  std::vector<Flag> flags = p.flags;
  if (p.permutation) {
    // Undo the permutation so the file reproduces itself.
    std::vector<std::size_t> inverse(p.permutation->size());
    for (std::size_t i = 0; i < inverse.size(); ++i) inverse[(*p.permutation)[i]] = i;
    original = permute_problem(p.problem, inverse);
    flags = permute_flags(p.flags, inverse);
  }
  for (const auto& c : original.conditions) conds.push_back(c.beta());
  Json out{{"n", p.problem.n}, {"k", p.problem.k}, {"conditions", conds}};
  if (p.flag_type == "explicit") {
    Json mats = Json::array();
    for (const auto& f : flags) mats.push_back(matrix_to_json(f.matrix()));
    out["flags"] = {{"type", "explicit"}, {"matrices", mats}};
  } else {
    out["flags"] = {{"type", p.flag_type}, {"seed", p.flag_seed.value_or(0)}};
  }
  if (p.permutation) {
    Json perm = Json::array();
    for (std::size_t v : *p.permutation) perm.push_back(v + 1);
    out["permutation"] = perm;
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace schubert
