#ifndef COMMUTANT_IO_HPP
#define COMMUTANT_IO_HPP

#include <string>
#include <variant>

#include "commutant/commutation_matrix.hpp"
#include "commutant/commutation_tensor.hpp"
#include "commutant/core.hpp"
#include "commutant/cp_rank.hpp"
#include "commutant/preserver.hpp"
#include "commutant/tensor.hpp"

// Canonical serialisation: keys in a fixed order, numbers with 17 significant
// digits ("%.17g", zero always as "0"), no whitespace inside JSON. Permutations
// are written 1-based. Parsing accepts any valid JSON with the same keys.
namespace commutant::io {

std::string format_number(double value);

std::string tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const std::string& text);

/// One row per line, entries separated by single spaces, trailing newline.
std::string matrix_to_text(const MatrixXd& M);
MatrixXd matrix_from_text(const std::string& text);

/// Tensor JSON when the text is a JSON object, otherwise the matrix text
/// format read as an order-2 tensor.
Tensor tensor_from_any(const std::string& text);

std::string commutation_to_json(const CommutationMatrix& K);

std::string gct_to_json(const Gct<double>& G);
Gct<double> gct_from_json(const std::string& text);

std::string cp_to_json(const CpForm<double>& cp);
CpForm<double> cp_from_json(const std::string& text);

std::string preserver_to_json(const RankPreserver<double>& phi);
std::string matrix_preserver_to_json(const MatrixPreserver<double>& phi);

/// A preserver file holds either {"m","n","tau","matrices"} or {"P","Q","transposed"}.
using AnyPreserver = std::variant<RankPreserver<double>, MatrixPreserver<double>>;
AnyPreserver preserver_from_json(const std::string& text);

std::string report_to_json(const RankPreservationReport& report);

std::string read_file(const std::string& path);

}  // namespace commutant::io

#endif  // COMMUTANT_IO_HPP
