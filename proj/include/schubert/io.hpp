#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "schubert/combinat.hpp"
#include "schubert/flags.hpp"
#include "schubert/polysys.hpp"

namespace schubert {

using Json = nlohmann::json;

// Complex numbers are [re, im]; matrices are row-major lists of rows.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json vector_to_json(std::span<const Complex> x);
CVector vector_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

// {"n_vars": V, "polys": [[[re, im, {"var": exp, ...}], ...], ...],
//  "labels": [...]}. Variable keys are decimal 0-based ids.
Json system_to_json(const PolynomialSystem& s);
// Throws InvalidInput on malformed input.
PolynomialSystem system_from_json(const Json& j);

struct ProblemFile {
  SchubertProblem problem;
  std::vector<Flag> flags;
  std::string flag_type;  // random-real | random-complex | explicit
  std::optional<std::uint64_t> flag_seed;
  // 0-based, already applied to `problem` and `flags`.
  std::optional<std::vector<std::size_t>> permutation;
};

// Throws InvalidInput for anything malformed, including a codimension sum
// other than k(n-k) when `require_schubert` is set.
ProblemFile problem_from_json(const Json& j, bool require_schubert = true);
Json problem_to_json(const ProblemFile& p);

Json read_json_file(const std::string& path);
// Pretty-printed with a trailing newline.
void write_json_file(const std::string& path, const Json& j);

}  // namespace schubert
