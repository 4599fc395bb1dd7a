#pragma once

#include "egfp/blockmat.hpp"
#include "egfp/pencils.hpp"
#include "egfp/poly.hpp"
#include "egfp/rational.hpp"
#include "egfp/tuples.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace egfp::io {

using nlohmann::json;

/// Index tuples serialize to arrays of integers with -0 spelled as the
/// string "-0" (plain integer JSON cannot keep the sign of zero).
json tuple_to_json(const IndexTuple& t);
IndexTuple tuple_from_json(const json& j);

json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j);

json poly_to_json(const MatrixPolynomial& p);
MatrixPolynomial poly_from_json(const json& j);

json spec_to_json(const EgfpSpec& s);
EgfpSpec spec_from_json(const json& j);

json realization_to_json(const Realization& r);
Realization realization_from_json(const json& j);

/// Matrix Market, coordinate complex general.
void write_matrix_market(std::ostream& os, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd read_matrix_market(std::istream& is);

/// Sidecar mapping block coordinates to provenance tag strings.
json tag_sidecar(const BlockMatrix& m);

} // namespace egfp::io
