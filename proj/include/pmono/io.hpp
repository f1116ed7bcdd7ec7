#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "pmono/finite_op.hpp"
#include "pmono/grid.hpp"
#include "pmono/linear_rel.hpp"
#include "pmono/product_op.hpp"
#include "pmono/subspace.hpp"

namespace pmono::io {

using json = nlohmann::json;

/// Raised for malformed documents, unknown kinds, or bad grid syntax.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Extended reals: finite values stay numbers, infinities become the strings
/// "inf" / "-inf" (JSON has no native encoding for them).
json encode_real(double v);
double decode_real(const json& j);

json pair_to_json(const Pair& p);
Pair pair_from_json(const json& j, Eigen::Index expect_dim = -1);

json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const json& j);

json finite_to_json(const FiniteOperator& op);
FiniteOperator finite_from_json(const json& j);

json linear_to_json(const LinearRelation& rel);
json affine_to_json(const AffineRelation& aff);

using AnyOperator = std::variant<FiniteOperator, LinearRelation, AffineRelation>;

/// Dispatches on "kind": finite, linear, matrix (single-valued map), any of
/// which may carry a "base" pair, which makes it affine.
AnyOperator operator_from_json(const json& j);
json operator_to_json(const AnyOperator& op);

/// Reads a whole JSON document from a file, or stdin when path is "-".
AnyOperator load_operator_file(const std::string& path);

json verdict_to_json(const Verdict& v);

json transfer_to_json(const TransferReport& r, const json& instance, int p);
json maxtp_to_json(const MaxtpReport& r, const json& instance, int p);
json adjoint_inclusion_to_json(const AdjointInclusionReport& r, const json& instance, int p);
json brezis_browder_to_json(const BrezisBrowderReport& r, const json& instance, int p);

/// Grid syntax: comma-separated axes "lo:hi:step". A single axis broadcasts
/// to all 2d coordinates.
GridSpec parse_grid_spec(const std::string& text, Eigen::Index d);

/// Header x0,..,xstar0,..,member,value; one row per cell in flat order.
void write_grid_csv(std::ostream& os, const PolarGrid& grid);
json grid_to_json(const PolarGrid& grid);

}  // namespace pmono::io
