#include "commutant/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace commutant::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

MatrixXd matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw ParseError("empty matrix");
  MatrixXd M(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) throw ParseError("ragged matrix rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      M(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }
  return M;
}

void append_matrix_json(std::string& out, const MatrixXd& M) {
  out += '[';
  for (Index i = 0; i < M.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (Index j = 0; j < M.cols(); ++j) {
      if (j) out += ',';
      out += format_number(M(i, j));
    }
    out += ']';
  }
  out += ']';
}

void append_matrices_json(std::string& out, const std::vector<MatrixXd>& mats) {
  out += '[';
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (k) out += ',';
    append_matrix_json(out, mats[k]);
  }
  out += ']';
}

void append_indices_json(std::string& out, const std::vector<Index>& values) {
  out += '[';
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(values[k]);
  }
  out += ']';
}

std::vector<MatrixXd> matrices_field(const json& j, const char* key) {
  const auto raw = field<std::vector<std::vector<std::vector<double>>>>(j, key);
  std::vector<MatrixXd> out;
  for (const auto& rows : raw) out.push_back(matrix_from_rows(rows));
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string tensor_to_json(const Tensor& t) {
  std::string out = "{\"shape\":";
  append_indices_json(out, t.shape().dims());
  out += ",\"values\":[";
  for (Index i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += format_number(t.values()(i));
  }
  out += "]}";
  return out;
}

Tensor tensor_from_json(const std::string& text) {
  const json j = parse_json(text);
  const auto dims = field<std::vector<Index>>(j, "shape");
  const auto values = field<std::vector<double>>(j, "values");
  Shape shape;
  try {
    shape = Shape(dims);
  } catch (const DimensionError& e) {
    throw ParseError(std::string("bad tensor shape: ") + e.what());
  }
  if (static_cast<Index>(values.size()) != shape.size())
    throw ParseError("tensor of shape " + shape.to_string() + " needs " +
                     std::to_string(shape.size()) + " values, got " +
                     std::to_string(values.size()));
  return Tensor(shape, Eigen::Map<const VectorXd>(values.data(), shape.size()));
}

std::string matrix_to_text(const MatrixXd& M) {
  std::string out;
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      if (j) out += ' ';
      out += format_number(M(i, j));
    }
    out += '\n';
  }
  return out;
}

MatrixXd matrix_from_text(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream tokens(line);
    std::vector<double> row;
    std::string token;
    while (tokens >> token) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        throw ParseError("not a number: \"" + token + "\"");
      }
      if (used != token.size()) throw ParseError("not a number: \"" + token + "\"");
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return matrix_from_rows(rows);
}

Tensor tensor_from_any(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return tensor_from_json(text);
  return Tensor::from_matrix(matrix_from_text(text));
}

std::string commutation_to_json(const CommutationMatrix& K) {
  std::string out = "{\"p\":" + std::to_string(K.p()) + ",\"q\":" + std::to_string(K.q()) +
                    ",\"perm\":";
  append_indices_json(out, K.perm().one_based());
  out += '}';
  return out;
}

std::string gct_to_json(const Gct<double>& G) {
  std::string out = "{\"m\":" + std::to_string(G.m()) + ",\"n\":" + std::to_string(G.n()) +
                    ",\"generators\":";
  append_matrices_json(out, G.generators());
  out += '}';
  return out;
}

Gct<double> gct_from_json(const std::string& text) {
  const json j = parse_json(text);
  auto gens = matrices_field(j, "generators");
  const auto m = field<Index>(j, "m");
  const auto n = field<Index>(j, "n");
  if (static_cast<Index>(gens.size()) != m || gens.empty() || gens.front().rows() != n)
    throw ParseError("GCT header (m, n) does not match its generators");
  return Gct<double>(std::move(gens));
}

std::string cp_to_json(const CpForm<double>& cp) {
  std::string out = "{\"m\":" + std::to_string(cp.m()) + ",\"n\":" + std::to_string(cp.n()) +
                    ",\"rank\":" + std::to_string(cp.rank()) + ",\"factors\":";
  append_matrices_json(out, cp.factors());
  out += '}';
  return out;
}

CpForm<double> cp_from_json(const std::string& text) {
  const json j = parse_json(text);
  auto factors = matrices_field(j, "factors");
  const auto m = field<Index>(j, "m");
  const auto n = field<Index>(j, "n");
  const auto rank = field<Index>(j, "rank");
  if (static_cast<Index>(factors.size()) != m || factors.empty() ||
      factors.front().rows() != n || factors.front().cols() != rank)
    throw ParseError("CP header (m, n, rank) does not match its factors");
  return CpForm<double>(std::move(factors));
}

std::string preserver_to_json(const RankPreserver<double>& phi) {
  std::string out = "{\"m\":" + std::to_string(phi.m()) + ",\"n\":" + std::to_string(phi.n()) +
                    ",\"tau\":";
  append_indices_json(out, phi.tau().one_based());
  out += ",\"matrices\":";
  append_matrices_json(out, phi.matrices());
  out += '}';
  return out;
}

std::string matrix_preserver_to_json(const MatrixPreserver<double>& phi) {
  std::string out = "{\"P\":";
  append_matrix_json(out, phi.P());
  out += ",\"Q\":";
  append_matrix_json(out, phi.Q());
  out += ",\"transposed\":";
  out += phi.transposed() ? "true" : "false";
  out += '}';
  return out;
}

AnyPreserver preserver_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (j.is_object() && j.contains("P")) {
    auto P = matrix_from_rows(field<std::vector<std::vector<double>>>(j, "P"));
    auto Q = matrix_from_rows(field<std::vector<std::vector<double>>>(j, "Q"));
    const bool transposed = j.contains("transposed") ? field<bool>(j, "transposed") : false;
    return MatrixPreserver<double>(std::move(P), std::move(Q), transposed);
  }
  auto mats = matrices_field(j, "matrices");
  const auto m = field<Index>(j, "m");
  const auto n = field<Index>(j, "n");
  const auto tau = field<std::vector<Index>>(j, "tau");
  if (static_cast<Index>(mats.size()) != m || mats.empty() || mats.front().rows() != n)
    throw ParseError("preserver header (m, n) does not match its matrices");
  Permutation perm;
  try {
    perm = Permutation::from_one_based(tau);
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("bad tau: ") + e.what());
  }
  return RankPreserver<double>(std::move(mats), std::move(perm));
}

std::string report_to_json(const RankPreservationReport& report) {
  std::string out = "{\"trials\":" + std::to_string(report.trials) +
                    ",\"passed\":" + std::to_string(report.passed) + ",\"failures\":";
  append_indices_json(out, report.failures);
  out += '}';
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace commutant::io
