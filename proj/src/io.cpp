#include "pmono/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <ostream>
#include <sstream>

namespace pmono::io {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

VectorXd vector_from_json(const json& j, Eigen::Index expect = -1) {
  if (!j.is_array()) throw ParseError("expected an array of numbers");
  VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const json& e = j[static_cast<std::size_t>(i)];
    if (!e.is_number()) throw ParseError("expected an array of numbers");
    v(i) = e.get<double>();
  }
  if (expect >= 0 && v.size() != expect) throw ParseError("vector has wrong length");
  return v;
}

json vector_to_json(const VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::Index dim_field(const json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() < 1)
    throw ParseError("operator document needs a positive integer \"dim\"");
  return j["dim"].get<Eigen::Index>();
}

LinearRelation linear_from_json_inner(const json& j) {
  const Eigen::Index d = dim_field(j);
  const std::string kind = j.value("kind", "");
  if (kind == "matrix") {
    if (!j.contains("matrix") || !j["matrix"].is_array())
      throw ParseError("matrix operator needs a \"matrix\" array");
    MatrixXd a(d, d);
    if (static_cast<Eigen::Index>(j["matrix"].size()) != d)
      throw ParseError("matrix has wrong row count");
    for (Eigen::Index r = 0; r < d; ++r)
      a.row(r) = vector_from_json(j["matrix"][static_cast<std::size_t>(r)], d).transpose();
    return LinearRelation::from_matrix(a);
  }
  if (!j.contains("basis") || !j["basis"].is_array())
    throw ParseError("linear operator needs a \"basis\" array");
  std::vector<Pair> pairs;
  for (const json& row : j["basis"]) {
    const VectorXd v = vector_from_json(row, 2 * d);
    pairs.emplace_back(v.head(d), v.tail(d));
  }
  return LinearRelation::from_pairs(d, pairs);
}

}  // namespace

json encode_real(double v) {
  if (std::isnan(v)) return "nan";
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

double decode_real(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError("expected a number or \"inf\"/\"-inf\"");
}

json pair_to_json(const Pair& p) {
  return json{{"x", vector_to_json(p.x)}, {"xstar", vector_to_json(p.xstar)}};
}

Pair pair_from_json(const json& j, Eigen::Index expect_dim) {
  if (!j.is_object() || !j.contains("x") || !j.contains("xstar"))
    throw ParseError("pair needs \"x\" and \"xstar\" arrays");
  Pair out(vector_from_json(j["x"], expect_dim), vector_from_json(j["xstar"], expect_dim));
  if (out.x.size() != out.xstar.size()) throw ParseError("pair components differ in length");
  return out;
}

json subspace_to_json(const Subspace& s) {
  json basis = json::array();
  for (Eigen::Index j = 0; j < s.dim(); ++j) basis.push_back(vector_to_json(s.basis().col(j)));
  return json{{"ambient_dim", s.ambient_dim()}, {"basis", basis}};
}

Subspace subspace_from_json(const json& j) {
  if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("basis"))
    throw ParseError("subspace needs \"ambient_dim\" and \"basis\"");
  const Eigen::Index n = j["ambient_dim"].get<Eigen::Index>();
  std::vector<VectorXd> vectors;
  for (const json& row : j["basis"]) vectors.push_back(vector_from_json(row, n));
  return Subspace::span(n, vectors);
}

json finite_to_json(const FiniteOperator& op) {
  json points = json::array();
  for (const Pair& p : op.points()) points.push_back(pair_to_json(p));
  return json{{"kind", "finite"}, {"dim", op.dim()}, {"points", points}};
}

FiniteOperator finite_from_json(const json& j) {
  const Eigen::Index d = dim_field(j);
  if (!j.contains("points") || !j["points"].is_array())
    throw ParseError("finite operator needs a \"points\" array");
  std::vector<Pair> pts;
  for (const json& e : j["points"]) pts.push_back(pair_from_json(e, d));
  return FiniteOperator(d, std::move(pts));
}

json linear_to_json(const LinearRelation& rel) {
  json basis = json::array();
  for (Eigen::Index j = 0; j < rel.graph().dim(); ++j)
    basis.push_back(vector_to_json(rel.graph().basis().col(j)));
  return json{{"kind", "linear"}, {"dim", rel.dim()}, {"basis", basis}};
}

json affine_to_json(const AffineRelation& aff) {
  json out = linear_to_json(aff.direction);
  out["base"] = pair_to_json(aff.base);
  return out;
}

AnyOperator operator_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("operator document must be a JSON object");
  const std::string kind = j.value("kind", "");
  if (kind == "finite") {
    FiniteOperator op = finite_from_json(j);
    if (j.contains("base")) return translate(op, pair_from_json(j["base"], op.dim()));
    return op;
  }
  if (kind == "linear" || kind == "matrix") {
    LinearRelation rel = linear_from_json_inner(j);
    if (j.contains("base"))
      return AffineRelation{pair_from_json(j["base"], rel.dim()), std::move(rel)};
    return rel;
  }
  throw ParseError("unknown operator kind \"" + kind + "\"");
}

json operator_to_json(const AnyOperator& op) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteOperator>) return finite_to_json(v);
        else if constexpr (std::is_same_v<T, LinearRelation>) return linear_to_json(v);
        else return affine_to_json(v);
      },
      op);
}

AnyOperator load_operator_file(const std::string& path) {
  json doc;
  try {
    if (path == "-") {
      doc = json::parse(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) throw ParseError("cannot open " + path);
      doc = json::parse(in);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return operator_from_json(doc);
}

json verdict_to_json(const Verdict& v) {
  json out{{"decision", to_string(v.decision)},
           {"value", encode_real(v.value)},
           {"tol", v.tol},
           {"sampled", v.sampled}};
  if (!v.indices.empty()) out["indices"] = v.indices;
  if (!v.chain.empty()) {
    json chain = json::array();
    for (const Pair& p : v.chain) chain.push_back(pair_to_json(p));
    out["chain"] = chain;
  }
  return out;
}

namespace {

json report_shell(const json& instance, int p, bool pass) {
  return json{{"instance", instance}, {"p", p}, {"equivalence", pass ? "pass" : "fail"}};
}

void attach_certificates(json& out, std::initializer_list<const Verdict*> verdicts) {
  json certs = json::array();
  for (const Verdict* v : verdicts)
    if (v->fails() && !v->chain.empty()) certs.push_back(verdict_to_json(*v));
  out["certificates"] = certs;
}

}  // namespace

json transfer_to_json(const TransferReport& r, const json& instance, int p) {
  json out = report_shell(instance, p, r.pass);
  out["predicates"] = json{{"base_p_monotone", verdict_to_json(r.base)},
                           {"plus_monotone", verdict_to_json(r.plus)},
                           {"minus_monotone", verdict_to_json(r.minus)}};
  attach_certificates(out, {&r.base, &r.plus, &r.minus});
  return out;
}

json maxtp_to_json(const MaxtpReport& r, const json& instance, int p) {
  json out = report_shell(instance, p, r.pass);
  out["predicates"] = json{{"base_maximal", verdict_to_json(r.base)},
                           {"plus_maximal", verdict_to_json(r.plus)},
                           {"minus_maximal", verdict_to_json(r.minus)}};
  attach_certificates(out, {&r.base, &r.plus, &r.minus});
  return out;
}

json adjoint_inclusion_to_json(const AdjointInclusionReport& r, const json& instance, int p) {
  json out = report_shell(instance, p, r.pass);
  out["predicates"] = json{{"plus_in_minus_adjoint", r.plus_in_minus_adjoint},
                           {"minus_in_plus_adjoint", r.minus_in_plus_adjoint}};
  out["dimensions"] = json{{"star_plus", r.dim_star_plus},
                           {"adjoint_minus", r.dim_adjoint_minus},
                           {"star_minus", r.dim_star_minus},
                           {"adjoint_plus", r.dim_adjoint_plus}};
  out["certificates"] = json::array();
  return out;
}

json brezis_browder_to_json(const BrezisBrowderReport& r, const json& instance, int p) {
  json out = report_shell(instance, p, r.pass);
  out["applicable"] = r.applicable;
  out["agree"] = r.agree;
  out["predicates"] = json{{"base_maximal", verdict_to_json(r.base_maximal)},
                           {"adjoint_maximal", verdict_to_json(r.adjoint_maximal)},
                           {"adjoint_pmonotone", verdict_to_json(r.adjoint_pmonotone)}};
  attach_certificates(out, {&r.base_maximal, &r.adjoint_maximal, &r.adjoint_pmonotone});
  return out;
}

GridSpec parse_grid_spec(const std::string& text, Eigen::Index d) {
  std::vector<GridAxis> axes;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ',')) {
    std::stringstream parts(group);
    std::string item;
    std::vector<double> nums;
    while (std::getline(parts, item, ':')) {
      try {
        std::size_t used = 0;
        nums.push_back(std::stod(item, &used));
        if (used != item.size()) throw ParseError("bad grid number \"" + item + "\"");
      } catch (const std::exception&) {
        throw ParseError("bad grid number \"" + item + "\"");
      }
    }
    if (nums.size() != 3) throw ParseError("grid axis must be lo:hi:step");
    axes.push_back(GridAxis{nums[0], nums[1], nums[2]});
  }
  if (axes.empty()) throw ParseError("empty grid specification");
  if (axes.size() == 1) axes.assign(static_cast<std::size_t>(2 * d), axes[0]);
  if (axes.size() != static_cast<std::size_t>(2 * d))
    throw ParseError("grid needs 1 or " + std::to_string(2 * d) + " axes");
  GridSpec spec{std::move(axes)};
  for (const GridAxis& ax : spec.axes)
    if (!(ax.step > 0.0) || ax.hi < ax.lo) throw ParseError("grid axis must satisfy lo <= hi, step > 0");
  return spec;
}

void write_grid_csv(std::ostream& os, const PolarGrid& grid) {
  const Eigen::Index d = grid.dim;
  for (Eigen::Index i = 0; i < d; ++i) os << "x" << i << ",";
  for (Eigen::Index i = 0; i < d; ++i) os << "xstar" << i << ",";
  os << "member,value\n";
  os.precision(17);
  for (std::size_t flat = 0; flat < grid.value.size(); ++flat) {
    const Pair q = grid.spec.point(flat, d);
    for (Eigen::Index i = 0; i < d; ++i) os << q.x(i) << ",";
    for (Eigen::Index i = 0; i < d; ++i) os << q.xstar(i) << ",";
    os << static_cast<int>(grid.member[flat]) << ",";
    const double v = grid.value[flat];
    if (v == kInf) os << "inf";
    else if (v == -kInf) os << "-inf";
    else os << v;
    os << "\n";
  }
}

json grid_to_json(const PolarGrid& grid) {
  json axes = json::array();
  for (const GridAxis& ax : grid.spec.axes)
    axes.push_back(json{{"lo", ax.lo}, {"hi", ax.hi}, {"step", ax.step}});
  json values = json::array();
  json member = json::array();
  for (std::size_t i = 0; i < grid.value.size(); ++i) {
    values.push_back(encode_real(grid.value[i]));
    member.push_back(grid.member[i] != 0);
  }
  return json{{"dim", grid.dim}, {"tol", grid.tol},    {"axes", axes},
              {"member", member}, {"value", values}};
}

}  // namespace pmono::io
