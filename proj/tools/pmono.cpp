// Command-line frontend: operator I/O, predicate checks, polar and
// Fitzpatrick evaluation, extension/adjoint/product construction, and
// instance generation. Exit codes: 0 all requested predicates hold (or the
// command only produces data), 1 some predicate fails, 2 bad input or usage,
// 3 resource cap exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pmono/finite_op.hpp"
#include "pmono/generators.hpp"
#include "pmono/io.hpp"
#include "pmono/linear_rel.hpp"
#include "pmono/product_op.hpp"

namespace {

using pmono::AffineRelation;
using pmono::FiniteOperator;
using pmono::LinearRelation;
using pmono::Pair;
using pmono::Verdict;
using pmono::io::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Options {
  std::string input;
  std::string output = "-";
  std::string format = "json";
  std::string grid;
  std::string named;
  std::string kind = "finite";
  std::string sign = "plus";
  std::string query;
  int p = 1;
  int n = 6;
  int d = 2;
  std::int64_t budget = 200;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  bool cyclic = false;
  bool maximal = false;
  bool premaximal = false;
  bool inf_order = false;
  bool verify = false;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw pmono::io::ParseError("cannot open " + opt.output + " for writing");
  out << text;
}

void emit_json(const Options& opt, const json& doc) { emit(opt, doc.dump(2) + "\n"); }

std::uint64_t require_seed(const Options& opt, const char* what) {
  if (!opt.seed)
    throw pmono::io::ParseError(std::string(what) + " draws random samples; pass --seed");
  return *opt.seed;
}

// Comma-separated list of 2d reals: d coordinates of x then d of x*.
Pair parse_query(const std::string& text, Eigen::Index d) {
  std::vector<double> nums;
  std::stringstream parts(text);
  std::string item;
  while (std::getline(parts, item, ',')) {
    try {
      std::size_t used = 0;
      nums.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw pmono::io::ParseError("bad query number \"" + item + "\"");
    }
  }
  if (nums.size() != static_cast<std::size_t>(2 * d))
    throw pmono::io::ParseError("query needs " + std::to_string(2 * d) +
                                " comma-separated numbers");
  Eigen::Map<const pmono::VectorXd> all(nums.data(), static_cast<Eigen::Index>(nums.size()));
  return Pair(all.head(d), all.tail(d));
}

Eigen::Index operator_dim(const pmono::io::AnyOperator& op) {
  return std::visit(
      [](const auto& v) -> Eigen::Index {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AffineRelation>) return v.direction.dim();
        else return v.dim();
      },
      op);
}

json check_report(const json& instance, int p, const json& predicates, bool pass) {
  json certs = json::array();
  for (const auto& [name, verdict] : predicates.items())
    if (verdict.contains("chain") && verdict["decision"] == "fails")
      certs.push_back(json{{"predicate", name}, {"verdict", verdict}});
  return json{{"instance", instance}, {"p", p},           {"predicates", predicates},
              {"pass", pass},         {"certificates", certs}};
}

int cmd_check(const Options& opt) {
  const pmono::io::AnyOperator op = pmono::io::load_operator_file(opt.input);
  json predicates = json::object();
  bool pass = true;
  auto record = [&](const char* name, const Verdict& v) {
    predicates[name] = pmono::io::verdict_to_json(v);
    pass = pass && v.holds();
  };

  if (const auto* fin = std::get_if<FiniteOperator>(&op)) {
    if (opt.maximal || opt.premaximal)
      throw pmono::io::ParseError("maximality checks need a linear or affine operator");
    const double tol = opt.tol ? *opt.tol : pmono::default_tol(*fin);
    if (opt.cyclic) record("cyclically_monotone", pmono::is_cyclically_monotone(*fin, tol));
    else record("p_monotone", pmono::is_p_monotone(*fin, opt.p, tol));
  } else if (const auto* rel = std::get_if<LinearRelation>(&op)) {
    if (opt.cyclic)
      throw pmono::io::ParseError("the cyclic check applies to finite operators only");
    record("p_monotone", pmono::is_p_monotone_linear(*rel, opt.p, opt.tol));
    if (opt.maximal)
      record("maximal_p_monotone", pmono::is_maximal_p_monotone_linear(*rel, opt.p, opt.tol));
    if (opt.premaximal)
      record("premaximal",
             pmono::is_premaximal_linear(*rel, opt.p, static_cast<int>(opt.budget),
                                         require_seed(opt, "--premaximal"), opt.tol));
  } else {
    const auto& aff = std::get<AffineRelation>(op);
    if (opt.cyclic || opt.maximal || opt.premaximal)
      throw pmono::io::ParseError("only the order-p check applies to affine operators");
    // Cyclic sums are invariant under a common translation of every pair,
    // so the direction decides p-monotonicity of the affine graph.
    record("p_monotone", pmono::is_p_monotone_linear(aff.direction, opt.p, opt.tol));
  }

  emit_json(opt, check_report(pmono::io::operator_to_json(op), opt.p, predicates, pass));
  return pass ? kExitPass : kExitFail;
}

// Membership statistic for one query point: the supremum of closed cyclic
// sums through q, which is <= tol exactly on the polar.
double polar_excess(const pmono::io::AnyOperator& op, int p, const Pair& q,
                    std::optional<double> tol) {
  if (const auto* fin = std::get_if<FiniteOperator>(&op)) {
    const double t = tol ? *tol : pmono::default_tol(*fin);
    return pmono::polar_membership(*fin, p, q, t).value;
  }
  if (const auto* rel = std::get_if<LinearRelation>(&op))
    return pmono::polar_membership_linear(*rel, p, q, tol).value;
  const auto& aff = std::get<AffineRelation>(op);
  const Pair shifted(q.x - aff.base.x, q.xstar - aff.base.xstar);
  return pmono::polar_membership_linear(aff.direction, p, shifted, tol).value;
}

double resolve_scalar_tol(const pmono::io::AnyOperator& op, std::optional<double> tol) {
  if (tol) return *tol;
  if (const auto* fin = std::get_if<FiniteOperator>(&op)) return pmono::default_tol(*fin);
  return 1e-8;
}

int cmd_polar(const Options& opt) {
  const pmono::io::AnyOperator op = pmono::io::load_operator_file(opt.input);
  const Eigen::Index d = operator_dim(op);
  const double tol = resolve_scalar_tol(op, opt.tol);

  if (!opt.query.empty()) {
    const Pair q = parse_query(opt.query, d);
    const double excess = polar_excess(op, opt.p, q, opt.tol);
    const bool member = excess <= tol;
    emit_json(opt, json{{"p", opt.p},
                        {"query", pmono::io::pair_to_json(q)},
                        {"member", member},
                        {"value", pmono::io::encode_real(excess)},
                        {"tol", tol}});
    return member ? kExitPass : kExitFail;
  }

  if (opt.grid.empty()) throw pmono::io::ParseError("polar needs --grid or --query");
  const pmono::GridSpec spec = pmono::io::parse_grid_spec(opt.grid, d);
  pmono::PolarGrid grid;
  if (const auto* fin = std::get_if<FiniteOperator>(&op)) {
    grid = pmono::polar_region_grid(*fin, opt.p, spec, tol);
  } else {
    grid = pmono::evaluate_grid(
        spec, d, [&](const Pair& q) { return polar_excess(op, opt.p, q, opt.tol); }, tol);
  }
  if (opt.format == "csv") {
    std::ostringstream out;
    pmono::io::write_grid_csv(out, grid);
    emit(opt, out.str());
  } else {
    emit_json(opt, pmono::io::grid_to_json(grid));
  }
  return kExitPass;
}

int cmd_fitz(const Options& opt) {
  const pmono::io::AnyOperator op = pmono::io::load_operator_file(opt.input);
  const auto* fin = std::get_if<FiniteOperator>(&op);
  if (!fin)
    throw pmono::io::ParseError("fitz evaluates finite operators; use polar for relations");
  const double tol = opt.tol ? *opt.tol : pmono::default_tol(*fin);

  auto value_at = [&](const Pair& q) {
    return opt.inf_order ? pmono::fitzpatrick_inf(*fin, q, tol)
                         : pmono::fitzpatrick_p(*fin, opt.p, q);
  };

  if (!opt.query.empty()) {
    const Pair q = parse_query(opt.query, fin->dim());
    emit_json(opt, json{{"p", opt.inf_order ? json("inf") : json(opt.p)},
                        {"query", pmono::io::pair_to_json(q)},
                        {"value", pmono::io::encode_real(value_at(q))}});
    return kExitPass;
  }

  if (opt.grid.empty()) throw pmono::io::ParseError("fitz needs --grid or --query");
  const pmono::GridSpec spec = pmono::io::parse_grid_spec(opt.grid, fin->dim());
  const pmono::PolarGrid grid = pmono::evaluate_grid(spec, fin->dim(), value_at, tol);
  if (opt.format == "csv") {
    std::ostringstream out;
    pmono::io::write_grid_csv(out, grid);
    emit(opt, out.str());
  } else {
    emit_json(opt, pmono::io::grid_to_json(grid));
  }
  return kExitPass;
}

const LinearRelation& require_linear(const pmono::io::AnyOperator& op, const char* what) {
  const auto* rel = std::get_if<LinearRelation>(&op);
  if (!rel) throw pmono::io::ParseError(std::string(what) + " needs a linear operator");
  return *rel;
}

int cmd_extend(const Options& opt) {
  const pmono::io::AnyOperator op = pmono::io::load_operator_file(opt.input);
  emit_json(opt, pmono::io::linear_to_json(
                     pmono::maximalize(require_linear(op, "extend"))));
  return kExitPass;
}

int cmd_adjoint(const Options& opt) {
  const pmono::io::AnyOperator op = pmono::io::load_operator_file(opt.input);
  emit_json(opt,
            pmono::io::linear_to_json(pmono::adjoint(require_linear(op, "adjoint"))));
  return kExitPass;
}

int cmd_product(const Options& opt) {
  const pmono::io::AnyOperator op = pmono::io::load_operator_file(opt.input);
  const LinearRelation& rel = require_linear(op, "product");
  const json instance = pmono::io::linear_to_json(rel);

  if (opt.verify) {
    const pmono::TransferReport transfer = pmono::verify_transfer(rel, opt.p, opt.tol);
    const pmono::MaxtpReport maxtp = pmono::verify_maxtp(rel, opt.p, opt.tol);
    const pmono::AdjointInclusionReport incl =
        pmono::verify_adjoint_inclusion(rel, opt.p, opt.tol.value_or(pmono::kMemberTol));
    const bool pass = transfer.pass && maxtp.pass && incl.pass;
    emit_json(opt, json{{"instance", instance},
                        {"p", opt.p},
                        {"monotone_transfer", pmono::io::transfer_to_json(transfer, instance, opt.p)},
                        {"maximality_transfer", pmono::io::maxtp_to_json(maxtp, instance, opt.p)},
                        {"adjoint_inclusion",
                         pmono::io::adjoint_inclusion_to_json(incl, instance, opt.p)},
                        {"equivalence", pass ? "pass" : "fail"}});
    return pass ? kExitPass : kExitFail;
  }

  const pmono::ProductSign sign =
      opt.sign == "minus" ? pmono::ProductSign::Minus : pmono::ProductSign::Plus;
  const pmono::ProductRelation prod = pmono::build_product(rel, opt.p, sign);
  json doc = pmono::io::linear_to_json(prod.relation);
  doc["order"] = prod.order;
  doc["inner_dim"] = prod.inner_dim;
  doc["sign"] = pmono::to_string(prod.sign);
  emit_json(opt, doc);
  return kExitPass;
}

int cmd_bb(const Options& opt) {
  const pmono::io::AnyOperator op = pmono::io::load_operator_file(opt.input);
  const LinearRelation& rel = require_linear(op, "bb");
  const pmono::BrezisBrowderReport report = pmono::brezis_browder_verify(rel, opt.p, opt.tol);
  emit_json(opt,
            pmono::io::brezis_browder_to_json(report, pmono::io::linear_to_json(rel), opt.p));
  return report.pass ? kExitPass : kExitFail;
}

int cmd_gen(const Options& opt) {
  pmono::io::AnyOperator op = pmono::singleton_origin();
  if (!opt.named.empty()) {
    if (opt.named == "singleton") op = pmono::singleton_origin();
    else if (opt.named == "rotation") op = pmono::rotation_relation();
    else if (opt.named == "rotation-samples") op = pmono::rotation_samples();
    else if (opt.named == "psd") op = pmono::psd_example();
    else if (opt.named == "cubic-samples") op = pmono::cubic_samples();
    else if (opt.named == "zero") op = pmono::zero_example();
    else throw pmono::io::ParseError("unknown named instance \"" + opt.named + "\"");
  } else {
    const std::uint64_t seed = require_seed(opt, "gen without --named");
    if (opt.kind == "finite") op = pmono::random_finite(seed, opt.n, opt.d);
    else if (opt.kind == "lattice") op = pmono::random_finite_lattice(seed, opt.n, opt.d);
    else if (opt.kind == "gradient") op = pmono::random_gradient_samples(seed, opt.n, opt.d);
    else if (opt.kind == "linear") op = pmono::random_linear_mixed(seed, opt.d);
    else throw pmono::io::ParseError("unknown generator kind \"" + opt.kind + "\"");
  }
  emit_json(opt, pmono::io::operator_to_json(op));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-monotonicity toolkit for finite operators and linear relations"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input)
      cmd->add_option("--input", opt.input, "operator JSON file, or - for stdin")->required();
    cmd->add_option("--p", opt.p, "monotonicity order")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", opt.tol, "tolerance override");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--budget", opt.budget, "sample budget for randomized searches");
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", opt.output, "output file, - for stdout");
  };

  CLI::App* check = app.add_subcommand("check", "decide monotonicity predicates");
  add_common(check, true);
  check->add_flag("--cyclic", opt.cyclic, "cyclic monotonicity instead of a fixed order");
  check->add_flag("--maximal", opt.maximal, "also decide maximality at order p");
  check->add_flag("--premaximal", opt.premaximal, "also search for a second maximal extension");

  CLI::App* polar = app.add_subcommand("polar", "order-p polar membership or region");
  add_common(polar, true);
  polar->add_option("--grid", opt.grid, "axes lo:hi:step, comma separated");
  polar->add_option("--query", opt.query, "one point: 2d comma-separated reals");

  CLI::App* fitz = app.add_subcommand("fitz", "Fitzpatrick function of order p");
  add_common(fitz, true);
  fitz->add_option("--grid", opt.grid, "axes lo:hi:step, comma separated");
  fitz->add_option("--query", opt.query, "one point: 2d comma-separated reals");
  fitz->add_flag("--inf", opt.inf_order, "supremum over every order");

  CLI::App* extend = app.add_subcommand("extend", "smallest maximal extension");
  add_common(extend, true);

  CLI::App* adj = app.add_subcommand("adjoint", "adjoint relation");
  add_common(adj, true);

  CLI::App* product = app.add_subcommand("product", "product operator on p copies");
  add_common(product, true);
  product->add_option("--sign", opt.sign, "plus or minus")
      ->check(CLI::IsMember({"plus", "minus"}));
  product->add_flag("--verify", opt.verify,
                    "emit transfer, maximality, and adjoint-inclusion reports");

  CLI::App* bb = app.add_subcommand("bb", "maximality equivalence with the adjoint");
  add_common(bb, true);

  CLI::App* gen = app.add_subcommand("gen", "emit a named or random instance");
  add_common(gen, false);
  gen->add_option("--named", opt.named,
                  "singleton, rotation, rotation-samples, psd, cubic-samples, or zero");
  gen->add_option("--kind", opt.kind, "finite, lattice, gradient, or linear");
  gen->add_option("--n", opt.n, "point count for finite generators")
      ->check(CLI::PositiveNumber);
  gen->add_option("--d", opt.d, "ambient dimension")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(opt);
    if (polar->parsed()) return cmd_polar(opt);
    if (fitz->parsed()) return cmd_fitz(opt);
    if (extend->parsed()) return cmd_extend(opt);
    if (adj->parsed()) return cmd_adjoint(opt);
    if (product->parsed()) return cmd_product(opt);
    if (bb->parsed()) return cmd_bb(opt);
    if (gen->parsed()) return cmd_gen(opt);
  } catch (const pmono::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
