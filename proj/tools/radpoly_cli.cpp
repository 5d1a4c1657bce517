// radpoly: interpolation at scattered linear functionals from the command line.
//
// Exit status: 0 success, 1 usage or parse error, 2 mathematical failure
// (rank deficiency, cap exceeded, singular Gramian), 3 verification failures.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radpoly.hpp"
#include "radpoly/json_io.hpp"
#include "radpoly/verification.hpp"

namespace {

using namespace radpoly;
using json_io::Json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_math = 2;
constexpr int exit_verify = 3;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
  if (path.empty()) throw usage_error("--input is required");
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw parse_error("'" + path + "': " + e.what());
  }
}

void emit(const Json& j, const std::string& output) {
  const std::string text = j.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw usage_error("cannot write '" + output + "'");
  out << text;
}

/// Explicit cap in the problem, else RADPOLY_MAX_DEGREE, else the library default.
std::optional<int> degree_cap(const json_io::Problem& pb) {
  if (pb.degree_cap) return pb.degree_cap;
  if (const char* env = std::getenv("RADPOLY_MAX_DEGREE"); env && *env) {
    try {
      std::size_t used = 0;
      int v = std::stoi(env, &used);
      if (used == std::string(env).size() && v >= 0) return v;
    } catch (const std::exception&) {
    }
    throw usage_error("RADPOLY_MAX_DEGREE must be a nonnegative integer");
  }
  return std::nullopt;
}

QGradedBasis basis_for(const json_io::Problem& pb) {
  return build_graded_basis<Rational>(pb.functionals, degree_cap(pb));
}

Json decimals(const QVector& v, int precision) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(format_decimal(v(i), precision));
  return j;
}

struct CommonOptions {
  std::string input;
  std::string output;
  int precision = -1;
};

int cmd_basis(const CommonOptions& opt) {
  const auto pb = json_io::read_problem(read_json_file(opt.input));
  emit(json_io::write_basis(basis_for(pb)), opt.output);
  return exit_ok;
}

int cmd_interp(const CommonOptions& opt, const std::string& method) {
  const auto pb = json_io::read_problem(read_json_file(opt.input));
  if (pb.values.has_value() == pb.target.has_value())
    throw parse_error("interpolation needs exactly one of 'values' or 'target'");
  const auto basis = basis_for(pb);
  const QVector data = pb.values ? *pb.values : functional_values(basis, *pb.target);

  auto run = [&](Method m) {
    auto report = interpolate(interpolation_basis(basis, m), data);
    Json j = json_io::write_report(report);
    if (opt.precision >= 0) j["coefficients_decimal"] = decimals(report.coefficients, opt.precision);
    return std::make_pair(report, j);
  };
  if (method == "both") {
    auto [s, sj] = run(Method::schaback);
    auto [l, lj] = run(Method::least);
    const QPolynomial diff = s.interpolant - l.interpolant;
    emit({{"schaback", sj}, {"least", lj}, {"difference", json_io::write_polynomial(diff)},
          {"difference_text", to_string(diff)}},
         opt.output);
  } else {
    emit(run(method == "schaback" ? Method::schaback : Method::least).second, opt.output);
  }
  return exit_ok;
}

QPoint parse_point_text(const std::string& text, int d) {
  std::vector<Rational> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) coords.push_back(parse_rational(item));
  if (static_cast<int>(coords.size()) != d) throw dimension_mismatch("query point '" + text + "' has wrong dimension");
  QPoint x(d);
  for (int i = 0; i < d; ++i) x(i) = coords[static_cast<std::size_t>(i)];
  return x;
}

int cmd_eval(const CommonOptions& opt, const std::string& points_file, const std::vector<std::string>& at,
             const std::string& method) {
  const Json doc = read_json_file(opt.input);
  const Json* poly = &doc;
  if (doc.contains("schaback") && doc.contains("least")) {
    poly = &doc.at(method == "least" ? "least" : "schaback").at("interpolant");
  } else if (doc.contains("interpolant")) {
    poly = &doc.at("interpolant");
  }
  const QPolynomial f = json_io::read_polynomial(*poly);
  const int d = f.dimension();

  std::vector<QPoint> queries;
  if (!points_file.empty()) {
    const Json query = read_json_file(points_file);
    for (const auto& x : json_io::field(query, "points")) queries.push_back(json_io::read_point(x, d));
  }
  for (const auto& text : at) queries.push_back(parse_point_text(text, d));
  if (queries.empty()) throw usage_error("eval needs query points (--points FILE or --at x1,...,xd)");

  Json values = Json::array();
  for (const auto& x : queries) {
    const Rational v = evaluate(f, x);
    Json entry{{"at", json_io::write_point(x)}, {"value", json_io::write_rational(v)}};
    if (opt.precision >= 0) entry["decimal"] = format_decimal(v, opt.precision);
    values.push_back(entry);
  }
  emit({{"values", values}}, opt.output);
  return exit_ok;
}

int cmd_expand(const CommonOptions& opt, int k, int d) {
  if (k < 0 || d < 1) throw usage_error("expand needs k >= 0 and d >= 1");
  if (k > 8 || d > 4) throw usage_error("expand is limited to k <= 8 and d <= 4");
  std::vector<std::string> names;
  for (int i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= d; ++i) names.push_back("y" + std::to_string(i));

  Json terms = Json::array();
  for (const auto& t : radial_power_expansion(k, d)) {
    const QPolynomial xy = embed(radial_monomial<Rational>(t.a, t.beta), 2 * d, 0) *
                           embed(radial_monomial<Rational>(t.c, t.beta), 2 * d, d);
    terms.push_back({{"a", t.a},
                     {"beta", json_io::write_multi_index(t.beta)},
                     {"c", t.c},
                     {"coeff", json_io::write_rational(t.coeff)},
                     {"product", to_string(xy, names)}});
  }
  const QPolynomial reassembled = radial_expansion_polynomial<Rational>(k, d);
  QPolynomial dist2(2 * d);
  for (int i = 0; i < d; ++i) {
    const QPolynomial diff = QPolynomial::variable(2 * d, i) - QPolynomial::variable(2 * d, d + i);
    dist2 += diff * diff;
  }
  const bool match = reassembled == pow(dist2, k);
  emit({{"k", k},
        {"d", d},
        {"term_count", terms.size()},
        {"terms", terms},
        {"polynomial", json_io::write_polynomial(reassembled)},
        {"text", to_string(reassembled, names)},
        {"oracle_match", match}},
       opt.output);
  return match ? exit_ok : exit_math;
}

int cmd_verify(const CommonOptions& opt, const std::string& suite, std::uint64_t seed, int trials, bool timing,
               bool inject_fault) {
  std::vector<std::string> suites;
  if (suite == "all")
    suites = verification::suite_names();
  else
    suites = {suite};
  verification::Options vopt{inject_fault};
  Json reports = Json::array();
  bool ok = true;
  for (const auto& s : suites) {
    const auto r = verification::run_suite(s, seed, trials, vopt);
    Json failures = Json::array();
    for (const auto& f : r.failures) failures.push_back({{"check", f.check}, {"detail", f.detail}});
    Json j{{"suite", r.suite}, {"seed", r.seed}, {"trials", r.trials}, {"cases", r.cases},
           {"failure_count", r.failures.size()}, {"failures", failures}};
    if (timing) j["wall_seconds"] = r.wall_seconds;
    reports.push_back(j);
    ok = ok && r.passed();
  }
  emit({{"reports", reports}, {"passed", ok}}, opt.output);
  return ok ? exit_ok : exit_verify;
}

int cmd_compare(const CommonOptions& opt, int probe_degree) {
  const auto pb = json_io::read_problem(read_json_file(opt.input));
  if (!pb.points) throw parse_error("compare needs a point problem ('points')");
  const auto cmp = compare_interpolants<Rational>(*pb.points, probe_degree, degree_cap(pb));
  Json differing = Json::array(), moments = Json::array(), srange = Json::array(), lrange = Json::array();
  for (const auto& a : cmp.differing_probes) differing.push_back(json_io::write_multi_index(a));
  for (const auto& m : cmp.norm_moments) moments.push_back(json_io::write_rational(m));
  for (const auto& p : cmp.schaback_range) srange.push_back(to_string(p));
  for (const auto& p : cmp.least_range) lrange.push_back(to_string(p));
  emit({{"kappas", cmp.basis.kappas},
        {"ranges_equal", cmp.ranges_equal},
        {"interpolants_equal", cmp.interpolants_equal},
        {"probe_degree", probe_degree},
        {"probes", cmp.probes},
        {"differing_probes", differing},
        {"norm_moments", moments},
        {"schaback_range", srange},
        {"least_range", lrange}},
       opt.output);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate polynomial interpolation at scattered linear functionals"};
  app.require_subcommand(1);

  CommonOptions opt;
  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", opt.input, "input JSON file");
    if (needs_input) in->required();
    sub->add_option("--output", opt.output, "write JSON here instead of stdout");
    sub->add_option("--precision", opt.precision, "also render decimals with this many digits")->check(CLI::NonNegativeNumber);
  };

  auto* basis = app.add_subcommand("basis", "graded basis of the input functionals");
  add_common(basis, true);

  std::string method = "schaback";
  auto* interp = app.add_subcommand("interp", "interpolate values or a target polynomial");
  add_common(interp, true);
  interp->add_option("--method", method, "schaback, least or both")
      ->check(CLI::IsMember({"schaback", "least", "both"}));

  std::string points_file;
  std::vector<std::string> at;
  std::string eval_method = "schaback";
  auto* eval = app.add_subcommand("eval", "evaluate an interpolant at query points");
  add_common(eval, true);
  eval->add_option("--points", points_file, "JSON file with a 'points' array");
  eval->add_option("--at", at, "query point as comma-separated rationals")->take_all();
  eval->add_option("--method", eval_method, "which interpolant of a 'both' report")
      ->check(CLI::IsMember({"schaback", "least"}));

  int k = 1, d = 1;
  auto* expand = app.add_subcommand("expand", "list the terms of ||x - y||^{2k}");
  add_common(expand, false);
  expand->add_option("--k", k, "power")->required();
  expand->add_option("--d", d, "dimension")->required();

  std::string suite = "all";
  std::uint64_t seed = 1;
  int trials = 100;
  bool timing = false, inject_fault = false;
  auto* verify = app.add_subcommand("verify", "run randomized property suites");
  add_common(verify, false);
  verify->add_option("--suite", suite, "micchelli, schaback-lemma, projector, invariance or all")
      ->check(CLI::IsMember({"micchelli", "schaback-lemma", "projector", "invariance", "all"}));
  verify->add_option("--seed", seed, "PRNG seed");
  verify->add_option("--trials", trials, "trials per suite")->check(CLI::NonNegativeNumber);
  verify->add_flag("--timing", timing, "include wall time in the report");
  verify->add_flag("--inject-fault", inject_fault)->group("");

  int probe_degree = 3;
  auto* compare = app.add_subcommand("compare", "compare Schaback and least interpolants");
  add_common(compare, true);
  compare->add_option("--probe-degree", probe_degree, "compare projections of all monomials up to this degree")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*basis) return cmd_basis(opt);
    if (*interp) return cmd_interp(opt, method);
    if (*eval) return cmd_eval(opt, points_file, at, eval_method);
    if (*expand) return cmd_expand(opt, k, d);
    if (*verify) return cmd_verify(opt, suite, seed, trials, timing, inject_fault);
    if (*compare) return cmd_compare(opt, probe_degree);
  } catch (const rank_deficient& e) {
    std::cerr << "error: " << e.what() << " (achieved rank " << e.achieved_rank << ")\n";
    return exit_math;
  } catch (const cap_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_math;
  } catch (const singular_matrix& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_math;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
