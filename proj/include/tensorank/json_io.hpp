#pragma once
#include "tensorank/tensor.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace tensorank {

using json = nlohmann::json;

// Tensor interchange format, the contract for every CLI command:
//   { "shape": [n1,...,nd], "entries": [[re,im], ...] }  row-major.
// The exact backend also accepts [[re_num,re_den,im_num,im_den], ...].
json tensor_to_json(const CTensor& t);
json tensor_to_json(const QTensor& t); // rational quadruples
CTensor tensor_from_json(const json& j);
QTensor exact_tensor_from_json(const json& j, unsigned long den_bound = 1000000);

json decomposition_to_json(const Decomposition<Complex>& d);
json decomposition_to_json(const Decomposition<GaussianRational>& d);

CTensor read_tensor_file(const std::string& path_or_dash); // "-" reads stdin
QTensor read_exact_tensor_file(const std::string& path_or_dash, unsigned long den_bound);
void write_json(std::ostream& os, const json& j);

} // namespace tensorank
