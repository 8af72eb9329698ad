#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "profinite/algebra.hpp"
#include "profinite/theory.hpp"

namespace profinite {

  // Algebra file format:
  //
  //   { "sorts": ["M"],
  //     "ops": [ {"name": "mul", "dom": ["M","M"], "cod": "M",
  //               "table": [[0,0],[0,1]]}, ... ],
  //     "carriers": {"M": 2},
  //     "order": {"M": [[true,true],[false,true]]} }      (optional)
  //
  // Tables are nested arrays indexed by the domain tuple (a bare number
  // for constants). The presence of "order" makes the signature ordered.

  nlohmann::ordered_json algebra_to_json(const FiniteAlgebra& a);

  /// Throws InputError on malformed documents and on algebras that fail
  /// validate_algebra (or the theory's laws, when a theory is given). With
  /// a theory, the parsed signature must equal the theory's (ordered flag
  /// aside, which follows the document) and the theory's signature object
  /// is reused.
  FiniteAlgebra algebra_from_json(const nlohmann::json& doc,
                                  const Theory*         theory = nullptr);

  std::string   serialize_algebra(const FiniteAlgebra& a);
  FiniteAlgebra parse_algebra(std::string_view text, const Theory* theory = nullptr);

  /// A JSON array of algebra documents.
  std::string                serialize_algebra_list(const std::vector<FiniteAlgebra>& as);
  std::vector<FiniteAlgebra> parse_algebra_list(std::string_view text,
                                                const Theory*    theory = nullptr);

  /// Whole file as a string; InputError when unreadable.
  std::string read_file(const std::string& path);

  /// Parses JSON text, mapping parser failures to InputError.
  nlohmann::json parse_json(std::string_view text);

  /// Compact JSON with one line per top-level member or array element.
  std::string pretty(const nlohmann::ordered_json& doc);

}  // namespace profinite
