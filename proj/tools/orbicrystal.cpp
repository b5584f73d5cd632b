#include "orbicrystal/crystal.hpp"
#include "orbicrystal/fock.hpp"
#include "orbicrystal/report.hpp"
#include "orbicrystal/tau.hpp"
#include "orbicrystal/toda.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace orbicrystal;
using ojson = nlohmann::ordered_json;

namespace {

const char* kCheckSchema = "orbicrystal.check/1";
const char* kSeriesSchema = "orbicrystal.zseries/1";

struct RunConfig {
  std::string subcommand;
  std::string suite;
  std::string model = "both";
  int a = 1;
  int b = 1;
  std::string u = "1/3";
  std::vector<std::string> p;
  std::vector<std::string> r;
  std::string Q0 = "1";
  int q_degree = 6;
  int fock_cutoff = 16;
  std::vector<int> cutoffs{16, 24};
  std::vector<int> tails{40, 80};
  unsigned precision_bits = 256;
  int jet_order = 1;
  int jet_symbols = 3;
  std::vector<int> charges{0};
  std::vector<int> window{-12, 12};
  int margin = 4;
  int kmax = 2;
  int k = 0;
  double tolerance = 0;
  unsigned long seed = 1;
  std::string format = "json";
};

ojson config_json(const RunConfig& c) {
  ojson j;
  j["subcommand"] = c.subcommand;
  if (!c.suite.empty()) j["suite"] = c.suite;
  j["model"] = c.model;
  j["a"] = c.a;
  j["b"] = c.b;
  j["u"] = c.u;
  j["p"] = c.p;
  j["r"] = c.r;
  j["Q0"] = c.Q0;
  j["q_degree"] = c.q_degree;
  j["fock_cutoff"] = c.fock_cutoff;
  j["cutoffs"] = c.cutoffs;
  j["tail_cutoffs"] = c.tails;
  j["precision_bits"] = c.precision_bits;
  j["jet_order"] = c.jet_order;
  j["jet_symbols"] = c.jet_symbols;
  j["charges"] = c.charges;
  j["window"] = c.window;
  j["margin"] = c.margin;
  j["kmax"] = c.kmax;
  j["k"] = c.k;
  j["tolerance"] = c.tolerance;
  j["seed"] = c.seed;
  j["format"] = c.format;
  return j;
}

Context make_context(const RunConfig& c) {
  Context ctx;
  ctx.a = c.a;
  ctx.b = c.b;
  ctx.u = parse_rational(c.u);
  for (const auto& x : c.p) ctx.p.push_back(parse_rational(x));
  for (const auto& x : c.r) ctx.r.push_back(parse_rational(x));
  ctx.Q0 = parse_rational(c.Q0);
  ctx.q_degree = c.q_degree;
  ctx.fock_cutoff = c.fock_cutoff;
  ctx.precision_bits = c.precision_bits;
  ctx.jet_order = c.jet_order;
  ctx.jet_symbols = c.jet_symbols;
  if (c.window.size() != 2) throw ConfigError("--window takes two integers lo,hi");
  ctx.window_lo = c.window[0];
  ctx.window_hi = c.window[1];
  ctx.validate();
  return ctx;
}

std::vector<ModelKind> models(const RunConfig& c) {
  if (c.model == "both") return {ModelKind::First, ModelKind::Second};
  return {parse_model(c.model)};
}

Rational random_scale(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 9), sign(0, 1);
  Rational x = Rational(num(rng)) / den(rng);
  return sign(rng) ? -x : x;
}

std::vector<CheckReport> run_suite(const RunConfig& c, const Context& ctx) {
  std::vector<CheckReport> out;
  const std::string& s = c.suite;
  if (s == "cauchy") {
    for (auto m : models(c)) out.push_back(product_form_check(ctx, m));
  } else if (s == "eigen") {
    out.push_back(eigenvalue_check(ctx, 8, 2, 3));
  } else if (s == "torus") {
    for (int k = -c.kmax; k <= c.kmax; ++k)
      for (int m = -c.kmax; m <= c.kmax; ++m)
        for (int l = -c.kmax; l <= c.kmax; ++l)
          for (int n = -c.kmax; n <= c.kmax; ++n)
            for (int ch : c.charges) out.push_back(commutator_check(ctx, ch, k, m, l, n, c.margin));
  } else if (s == "shift") {
    for (auto kind : {ShiftKind::I, ShiftKind::II, ShiftKind::III, ShiftKind::FracA, ShiftKind::FracB}) {
      for (int k = 1; k <= c.kmax; ++k) {
        if (kind == ShiftKind::FracA || kind == ShiftKind::FracB) {
          out.push_back(shift_symmetry_check(ctx, kind, k, 0, c.margin));
          continue;
        }
        for (int m = -c.kmax; m <= c.kmax; ++m) {
          if (kind != ShiftKind::III && std::max({0, -m, m + k}) > c.margin) continue;
          out.push_back(shift_symmetry_check(ctx, kind, k, m, c.margin));
        }
      }
    }
  } else if (s == "theorem1" || s == "theorem2") {
    for (int ch : c.charges) out.push_back(theorem_check(ctx, s == "theorem1" ? 1 : 2, ch, c.cutoffs, c.tolerance));
  } else if (s == "jg") {
    std::vector<int> ks;
    for (int k = 1; k <= c.kmax; ++k) ks.push_back(k);
    for (int ch : c.charges) out.push_back(jg_gj_check(ctx, ks, ch, 2, c.cutoffs, c.tolerance));
  } else if (s == "fermionic") {
    for (auto m : models(c))
      for (int ch : c.charges) out.push_back(fermionic_check(ctx, m, ch));
  } else if (s == "lemmas") {
    std::mt19937_64 rng(c.seed);
    const Rational u1 = random_scale(rng), v1 = random_scale(rng), w1 = random_scale(rng);
    out.push_back(gamma_conjugation_lemmas(ctx, u1, v1, w1, ctx.window_lo, ctx.window_hi));
  } else if (s == "lax") {
    for (auto m : models(c)) out.push_back(factorization_check(ctx, m));
  } else if (s == "tangency") {
    for (auto m : models(c)) out.push_back(tangency_check(ctx, m, c.k > 0 ? c.k : ctx.a));
  } else if (s == "ufactor") {
    for (auto m : models(c)) out.push_back(ufactor_check(ctx, m, c.tails, c.tolerance));
  } else {
    throw ConfigError("unknown suite '" + s + "'");
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CheckReport& x, const CheckReport& y) { return x.check < y.check; });
  return out;
}

int cmd_check(const RunConfig& c) {
  const Context ctx = make_context(c);
  const auto reports = run_suite(c, ctx);
  bool ok = true;
  if (c.format == "csv") {
    std::cout << "# config " << config_json(c).dump() << "\n";
    std::cout << "check,status,exact,max_residual,precision_bits,detail\n";
    for (const auto& r : reports) {
      ok = ok && r.pass;
      std::string detail = r.detail;
      std::replace(detail.begin(), detail.end(), ',', ';');
      std::cout << r.check << ',' << (r.pass ? "pass" : "fail") << ',' << (r.exact ? "true" : "false") << ','
                << r.max_residual << ',' << (r.exact ? "" : std::to_string(c.precision_bits)) << ',' << detail
                << "\n";
    }
  } else {
    ojson j;
    j["schema"] = kCheckSchema;
    j["config"] = config_json(c);
    ojson arr = ojson::array();
    for (const auto& r : reports) {
      ok = ok && r.pass;
      arr.push_back(ojson::parse(report_json(r, -1)));
    }
    j["reports"] = arr;
    j["status"] = ok ? "pass" : "fail";
    std::cout << j.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_zseries(const RunConfig& c) {
  const Context ctx = make_context(c);
  if (c.model == "both") throw ConfigError("zseries needs --model first or --model second");
  const ModelKind model = parse_model(c.model);
  const int s = c.charges.empty() ? 0 : c.charges.front();
  const ZSeries z = z_series(ctx, model, s);
  struct Row {
    int q_power;
    std::string monomial;
    std::string coefficient;
  };
  std::vector<Row> rows;
  for (int i = 0; i <= z.series.degree(); ++i) {
    const auto& jet = z.series[i];
    const int power = i + z.series.offset();
    if (jet.terms().empty()) {
      rows.push_back({power, "1", "0"});
      continue;
    }
    bool any = false;
    for (const auto& [mono, coeff] : jet.terms()) {
      if (is_zero(coeff) && total_degree(mono) > 0) continue;
      rows.push_back({power, monomial_name(mono), to_string(coeff)});
      any = true;
    }
    if (!any) rows.push_back({power, "1", "0"});
  }
  if (c.format == "csv") {
    std::cout << "# config " << config_json(c).dump() << "\n";
    std::cout << "q_power,monomial,coefficient\n";
    for (const auto& r : rows) std::cout << r.q_power << ',' << r.monomial << ',' << r.coefficient << "\n";
  } else {
    ojson j;
    j["schema"] = kSeriesSchema;
    j["config"] = config_json(c);
    ojson arr = ojson::array();
    for (const auto& r : rows) arr.push_back({{"q_power", r.q_power}, {"monomial", r.monomial}, {"coefficient", r.coefficient}});
    j["rows"] = arr;
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

void add_context_options(CLI::App* app, RunConfig& c) {
  app->add_option("--model", c.model, "first, second or both")->check(CLI::IsMember({"first", "second", "both"}));
  app->add_option("--a", c.a, "orbifold degree a")->check(CLI::Range(1, 1 << 20));
  app->add_option("--b", c.b, "orbifold degree b")->check(CLI::Range(1, 1 << 20));
  app->add_option("--u", c.u, "uniformizer, q = u^(2ab)");
  app->add_option("--p", c.p, "p_1..p_a (rationals)")->delimiter(',');
  app->add_option("--r", c.r, "r_1..r_b (rationals)")->delimiter(',');
  app->add_option("--Q0", c.Q0, "frozen Kahler parameter for the matrix suites");
  app->add_option("--qdeg", c.q_degree, "truncation order in Q")->check(CLI::Range(0, 1 << 20));
  app->add_option("--D", c.fock_cutoff, "Fock-space cutoff (max |lambda|)")->check(CLI::Range(0, 1 << 20));
  app->add_option("--cutoffs", c.cutoffs, "Fock cutoffs for the approximate suites")->delimiter(',');
  app->add_option("--tails", c.tails, "tail cutoffs for ufactor")->delimiter(',');
  app->add_option("--precision", c.precision_bits, "working precision in bits")->check(CLI::Range(1, 1 << 20));
  app->add_option("--jet-order", c.jet_order, "jet truncation order")->check(CLI::Range(0, 1 << 20));
  app->add_option("--jet-symbols", c.jet_symbols, "number of t_k (and tbar_k)")->check(CLI::Range(0, 1 << 20));
  app->add_option("--s", c.charges, "charges")->delimiter(',');
  app->add_option("--window", c.window, "matrix window lo,hi")->delimiter(',')->expected(2);
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbifold melting crystal partition functions and their integrable structure"};
  app.require_subcommand(1);
  RunConfig c;

  auto* zs = app.add_subcommand("zseries", "Q-expansion of the deformed partition function");
  add_context_options(zs, c);

  auto* ck = app.add_subcommand("check", "run an identity suite");
  ck->add_option("suite", c.suite,
                 "cauchy, eigen, torus, shift, theorem1, theorem2, jg, fermionic, lemmas, lax, tangency, ufactor")
      ->required()
      ->check(CLI::IsMember({"cauchy", "eigen", "torus", "shift", "theorem1", "theorem2", "jg", "fermionic", "lemmas",
                             "lax", "tangency", "ufactor"}));
  add_context_options(ck, c);
  ck->add_option("--margin", c.margin, "interior margin for Fock-space suites")->check(CLI::Range(0, 1 << 20));
  ck->add_option("--kmax", c.kmax, "range of mode indices")->check(CLI::Range(0, 1 << 20));
  ck->add_option("--k", c.k, "tangency flow index (default a)")->check(CLI::Range(0, 1 << 20));
  ck->add_option("--tol", c.tolerance, "tolerance for approximate suites (default 10^-(bits/8))");
  ck->add_option("--seed", c.seed, "seed for randomized parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (zs->parsed()) {
      c.subcommand = "zseries";
      // plain Q-expansion unless jets are asked for
      if (zs->count("--jet-order") == 0) c.jet_order = 0;
      if (zs->count("--model") == 0) c.model = "first";
      return cmd_zseries(c);
    }
    c.subcommand = "check";
    return cmd_check(c);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 2;
  }
}
