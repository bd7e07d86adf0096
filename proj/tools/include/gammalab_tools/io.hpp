#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gammalab/hardy.hpp"
#include "gammalab/tuple.hpp"

namespace gammalab::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

json to_json(const CMatrix& m);
json to_json(const std::vector<CMatrix>& ms);
json to_json(cplx z);
json to_json(const GammaTuple& g);
json to_json(const MatrixPolynomial& p);

// `where` names the field in diagnostics, e.g. "S[1].data[3]".
CMatrix matrix_from_json(const json& j, const std::string& where);
std::vector<CMatrix> matrices_from_json(const json& j, const std::string& where);
GammaTuple tuple_from_json(const json& j, const std::string& where = "tuple");
MatrixPolynomial polynomial_from_json(const json& j, const std::string& where);

// Parse errors carry the line and column of the offending byte.
json parse_text(const std::string& text, const std::string& source);
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Canonical serialization used for every report: two-space indent and a trailing newline.
std::string dump(const json& j);

}  // namespace gammalab::io
