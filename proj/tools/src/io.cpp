#include "gammalab_tools/io.hpp"

#include <fstream>
#include <sstream>

#include "gammalab/error.hpp"

namespace gammalab::io {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw LabError(ErrorCode::SchemaError, "field " + where + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(where + "." + key, "missing");
  return *it;
}

long long integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer");
  return j.get<long long>();
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

}  // namespace

json to_json(const CMatrix& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) data.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json to_json(const std::vector<CMatrix>& ms) {
  json out = json::array();
  for (const CMatrix& m : ms) out.push_back(to_json(m));
  return out;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const GammaTuple& g) { return json{{"n", g.n}, {"S", to_json(g.S)}, {"P", to_json(g.P)}}; }

json to_json(const MatrixPolynomial& p) { return json{{"coeffs", to_json(p.coeffs)}}; }

CMatrix matrix_from_json(const json& j, const std::string& where) {
  const long long rows = integer(member(j, "rows", where), where + ".rows");
  const long long cols = integer(member(j, "cols", where), where + ".cols");
  if (rows < 0 || cols < 0) schema_error(where, "negative shape");
  const json& data = member(j, "data", where);
  if (!data.is_array()) schema_error(where + ".data", "expected an array");
  if (static_cast<long long>(data.size()) != rows * cols) {
    schema_error(where + ".data", "expected " + std::to_string(rows * cols) + " entries, found " +
                                      std::to_string(data.size()));
  }
  CMatrix m(rows, cols);
  for (long long k = 0; k < rows * cols; ++k) {
    const std::string at = where + ".data[" + std::to_string(k) + "]";
    const json& e = data[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2) schema_error(at, "expected [re, im]");
    m(k / cols, k % cols) = cplx(number(e[0], at + "[0]"), number(e[1], at + "[1]"));
  }
  return m;
}

std::vector<CMatrix> matrices_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array of matrices");
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(matrix_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

GammaTuple tuple_from_json(const json& j, const std::string& where) {
  GammaTuple g;
  const long long n = integer(member(j, "n", where), where + ".n");
  if (n < 1) schema_error(where + ".n", "must be at least 1");
  g.n = static_cast<int>(n);
  g.S = matrices_from_json(member(j, "S", where), where + ".S");
  g.P = matrix_from_json(member(j, "P", where), where + ".P");
  if (static_cast<long long>(g.S.size()) != n - 1) {
    schema_error(where + ".S", "expected " + std::to_string(n - 1) + " matrices, found " + std::to_string(g.S.size()));
  }
  return g;
}

MatrixPolynomial polynomial_from_json(const json& j, const std::string& where) {
  MatrixPolynomial p;
  p.coeffs = matrices_from_json(member(j, "coeffs", where), where + ".coeffs");
  if (p.coeffs.empty()) schema_error(where + ".coeffs", "needs at least one coefficient");
  for (std::size_t k = 1; k < p.coeffs.size(); ++k) {
    if (p.coeffs[k].rows() != p.coeffs[0].rows() || p.coeffs[k].cols() != p.coeffs[0].cols()) {
      schema_error(where + ".coeffs[" + std::to_string(k) + "]", "shape differs from coeffs[0]");
    }
  }
  return p;
}

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw LabError(ErrorCode::SchemaError, source + ": line " + std::to_string(line) + " column " +
                                               std::to_string(col) + ": malformed JSON");
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LabError(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LabError(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace gammalab::io
