// Command-line front end: exact moments by route, index families, the
// enumeration oracle, Monte Carlo simulation, and the full cross-check
// report. Exit codes: 0 success, 1 verification mismatch found, 2 invalid
// arguments or a resource-limit refusal.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "erw/erw.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string p;
  std::string q;
  std::string format = "json";
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_params = true) {
  if (with_params) {
    cmd->add_option("--p", opts.p, "repeat probability, rational ('3/4') or decimal ('0.75')");
    cmd->add_option("--q", opts.q, "first-step right probability (default 1)");
  }
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("-o,--output", opts.output, "write to a file instead of stdout");
}

void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.output, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + opts.output);
  out << text;
}

std::optional<erw::WalkParams> maybe_params(const CommonOpts& opts) {
  if (opts.p.empty()) return std::nullopt;
  const erw::Rational p = erw::parse_rational(opts.p);
  const erw::Rational q = opts.q.empty() ? erw::Rational(1) : erw::parse_rational(opts.q);
  return erw::WalkParams(p, q);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------- exact ----

struct ExactOpts {
  CommonOpts common;
  std::string moment;
  std::string route;
  std::size_t n = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  bool use_float = false;
};

int run_exact(const ExactOpts& opts) {
  const std::string route = !opts.route.empty() ? opts.route
                            : (opts.moment == "product" || opts.moment == "s-squared")
                                ? "tower"
                                : "recursion";
  erw::AlphaPolynomial poly;
  bool beta_scaled = false;  // means are reported beta-normalized; value applies beta
  if (opts.moment == "mean-x" || opts.moment == "mean-s") {
    if (opts.n == 0) throw std::invalid_argument("--n is required and must be >= 1");
    beta_scaled = true;
    const bool increments = opts.moment == "mean-x";
    if (opts.use_float) {
      // double-precision recursions for horizons where exact rational
      // coefficients are no longer practical; never used by the test suites
      if (route != "recursion")
        throw std::invalid_argument("--float supports the recursion route only");
      const erw::MeanSeries<double> series(opts.n);
      const auto& fpoly = increments ? series.increment(opts.n) : series.displacement(opts.n);
      json doc{{"command", "exact"}, {"moment", opts.moment}, {"route", "recursion-float"},
               {"n", opts.n},        {"degree", fpoly.degree()}};
      doc["coefficients_float"] = fpoly.coefficients();
      doc["beta_normalized_coefficients"] = true;
      if (const auto params = maybe_params(opts.common)) {
        doc["params"] = erw::params_json(*params);
        doc["value_float"] = erw::to_double(params->beta()) *
                             fpoly.evaluate(erw::to_double(params->alpha()));
      }
      if (opts.common.format == "csv") {
        std::string text = erw::csv_row({"power", "coefficient_float"});
        const auto& coeffs = fpoly.coefficients();
        for (std::size_t i = 0; i < coeffs.size(); ++i)
          text += erw::csv_row({std::to_string(i), std::to_string(coeffs[i])});
        emit(opts.common, text);
      } else {
        emit(opts.common, dump(doc));
      }
      return 0;
    }
    if (route == "recursion") {
      poly = increments ? erw::mean_increment(opts.n) : erw::mean_displacement(opts.n);
    } else if (route == "explicit") {
      if (opts.n == 1) {
        poly = erw::AlphaPolynomial::constant(1);
      } else {
        poly = increments ? erw::explicit_mean_increment(opts.n)
                          : erw::explicit_mean_displacement(opts.n);
      }
    } else {
      throw std::invalid_argument("mean moments support --route {recursion|explicit}");
    }
  } else if (opts.moment == "product") {
    if (opts.a == 0 || opts.b == 0)
      throw std::invalid_argument("--a and --b are required for --moment product");
    const std::size_t lo = std::min(opts.a, opts.b);
    const std::size_t hi = std::max(opts.a, opts.b);
    if (route == "tower") {
      poly = erw::product_moment_tower(lo, hi);
    } else if (route == "paper") {
      if (lo < 2)
        throw std::invalid_argument(
            "the published recursion is stated for indices >= 2 (m, n >= 1)");
      poly = erw::product_moment_paper(lo - 1, hi - 1);
    } else {
      throw std::invalid_argument("products support --route {tower|paper}");
    }
  } else if (opts.moment == "s-squared") {
    if (opts.n == 0) throw std::invalid_argument("--n is required and must be >= 1");
    if (route == "tower") {
      poly = erw::second_moment_displacement(opts.n);
    } else if (route == "paper") {
      poly = erw::second_moment_paper_form(opts.n);
    } else {
      throw std::invalid_argument("s-squared supports --route {tower|paper}");
    }
  } else {
    throw std::invalid_argument("unknown moment: " + opts.moment);
  }

  const auto params = maybe_params(opts.common);
  std::optional<erw::Rational> value;
  if (params) {
    value = poly.evaluate(params->alpha());
    if (beta_scaled) *value = *value * params->beta();
  }

  if (opts.common.format == "csv") {
    std::string text = erw::csv_row({"power", "coefficient", "coefficient_float"});
    const auto& coeffs = poly.coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      text += erw::csv_row({std::to_string(i), erw::format_rational(coeffs[i]),
                            std::to_string(erw::to_double(coeffs[i]))});
    if (value)
      text += erw::csv_row(
          {"value", erw::format_rational(*value), std::to_string(erw::to_double(*value))});
    emit(opts.common, text);
    return 0;
  }

  json doc{{"command", "exact"},
           {"moment", opts.moment},
           {"route", route},
           {"coefficients", erw::polynomial_json(poly)},
           {"degree", poly.degree()}};
  if (opts.moment == "product") {
    doc["a"] = opts.a;
    doc["b"] = opts.b;
  } else {
    doc["n"] = opts.n;
  }
  if (beta_scaled) doc["beta_normalized_coefficients"] = true;
  if (params) {
    doc["params"] = erw::params_json(*params);
    doc["value"] = erw::format_rational(*value);
    doc["value_float"] = erw::to_double(*value);
  }
  emit(opts.common, dump(doc));
  return 0;
}

// ----------------------------------------------------------------- sets ----

struct SetsOpts {
  CommonOpts common;
  std::string family;
  std::string construction;
  std::size_t j = 0;
  std::size_t n = 0;
  int k = -1;
  std::size_t cap = erw::kDefaultMaterializeCap;
};

int run_sets(const SetsOpts& opts) {
  const bool is_phi_side = opts.family == "phi" || opts.family == "omega";
  std::string construction = opts.construction;
  if (construction.empty())
    construction = (opts.family == "phi" || opts.family == "theta") ? "recursive" : "c1";
  if ((opts.family == "omega" || opts.family == "psi") && construction != "c1")
    throw std::invalid_argument(opts.family + " families only have the c1 construction");

  erw::IndexFamily family;
  if (opts.k >= 0) {
    if (opts.family != "omega" && opts.family != "psi")
      throw std::invalid_argument("--k selects a fixed coordinate sum; use omega or psi");
    family = erw::build_fixed_sum_family(
        opts.family == "omega" ? erw::FamilyKind::omega : erw::FamilyKind::psi, opts.j,
        static_cast<std::size_t>(opts.k), opts.n, opts.cap);
  } else {
    erw::FamilyConstruction c;
    if (is_phi_side)
      c = construction == "recursive" ? erw::FamilyConstruction::phi_recursive
                                      : erw::FamilyConstruction::phi_c1;
    else
      c = construction == "recursive" ? erw::FamilyConstruction::theta_recursive
                                      : erw::FamilyConstruction::psi_c1;
    family = erw::build_family(c, opts.j, opts.n, opts.cap);
  }

  if (opts.common.format == "csv") {
    std::vector<std::string> header;
    for (std::size_t i = 2; i <= opts.n; ++i) header.push_back("x" + std::to_string(i));
    std::string text = erw::csv_row(header);
    for (const auto& member : family.members) {
      std::vector<std::string> row;
      for (auto v : member) row.push_back(std::to_string(static_cast<int>(v)));
      text += erw::csv_row(row);
    }
    emit(opts.common, text);
    return 0;
  }

  json doc = erw::family_json(family);
  doc["command"] = "sets";
  doc["family"] = opts.family;
  doc["construction"] = opts.k >= 0 ? "c1" : construction;
  doc["cardinality"] = family.members.size();
  doc["weight"] = erw::format_rational(erw::family_weight(family));
  if (opts.k >= 0) {
    doc["k"] = opts.k;
    doc["formula_cardinality"] = nullptr;  // closed forms exist for full unions only
  } else if (opts.j >= 1) {
    doc["formula_cardinality"] =
        erw::cardinality_formula(is_phi_side ? erw::CardinalityKind::phi
                                             : erw::CardinalityKind::theta,
                                 opts.j, opts.n)
            .str();
  } else {
    doc["formula_cardinality"] = "1";  // Theta^0_n is the all-zero singleton
  }
  emit(opts.common, dump(doc));
  return 0;
}

// --------------------------------------------------------------- oracle ----

struct OracleOpts {
  CommonOpts common;
  std::size_t n = 0;
  std::string mode = "history";
  bool override_cap = false;
  bool no_atoms = false;
  std::vector<std::size_t> mean_x, mean_s, s_squared, s_dist;
  std::vector<std::size_t> product;  // flat (a, b) pairs
};

int run_oracle(const OracleOpts& opts) {
  const auto params_opt = maybe_params(opts.common);
  const erw::WalkParams params =
      params_opt ? *params_opt : erw::WalkParams(erw::Rational(1, 2), erw::Rational(1, 2));
  const auto mode = opts.mode == "history" ? erw::OracleMode::history
                                           : erw::OracleMode::generative;
  if (opts.product.size() % 2 != 0)
    throw std::invalid_argument("--product takes index pairs: --product A B [A B ...]");
  const auto dist = erw::exact_distribution(opts.n, params, mode, opts.override_cap);

  if (opts.common.format == "csv") {
    std::string text = erw::csv_row({"signs", "prob", "prob_float"});
    std::vector<std::pair<std::string, erw::Rational>> rows;
    for (const auto& [mask, prob] : dist.atoms)
      rows.emplace_back(erw::signs_string(mask, dist.n), prob);
    std::sort(rows.begin(), rows.end());
    for (const auto& [signs, prob] : rows)
      text += erw::csv_row(
          {signs, erw::format_rational(prob), std::to_string(erw::to_double(prob))});
    emit(opts.common, text);
    return 0;
  }

  json doc = erw::distribution_json(dist);
  doc["command"] = "oracle";
  doc["params"] = erw::params_json(params);
  if (opts.no_atoms) doc.erase("atoms");
  json moments = json::object();
  auto fill = [&](const char* key, const std::vector<std::size_t>& ks, auto&& fn) {
    if (ks.empty()) return;
    json block = json::object();
    for (auto k : ks) block[std::to_string(k)] = fn(k);
    moments[key] = std::move(block);
  };
  fill("mean_x", opts.mean_x,
       [&](std::size_t k) { return erw::format_rational(erw::oracle_mean_x(dist, k)); });
  fill("mean_s", opts.mean_s,
       [&](std::size_t k) { return erw::format_rational(erw::oracle_mean_s(dist, k)); });
  fill("second_moment_s", opts.s_squared, [&](std::size_t k) {
    return erw::format_rational(erw::oracle_second_moment_s(dist, k));
  });
  fill("distribution_of_s", opts.s_dist, [&](std::size_t k) {
    json law = json::object();
    for (const auto& [pos, prob] : erw::oracle_distribution_of_s(dist, k))
      law[std::to_string(pos)] = erw::format_rational(prob);
    return law;
  });
  if (!opts.product.empty()) {
    json block = json::object();
    for (std::size_t i = 0; i + 1 < opts.product.size(); i += 2) {
      const auto a = opts.product[i], b = opts.product[i + 1];
      block[std::to_string(a) + "," + std::to_string(b)] =
          erw::format_rational(erw::oracle_product(dist, a, b));
    }
    moments["product"] = std::move(block);
  }
  if (!moments.empty()) doc["moments"] = std::move(moments);
  emit(opts.common, dump(doc));
  return 0;
}

// ------------------------------------------------------------- simulate ----

struct SimulateOpts {
  CommonOpts common;
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::vector<std::size_t> checkpoints;
  bool histogram = false;
  std::uint64_t block_size = 4096;
};

int run_simulate(const SimulateOpts& opts) {
  const auto params_opt = maybe_params(opts.common);
  const erw::WalkParams params =
      params_opt ? *params_opt : erw::WalkParams(erw::Rational(1, 2), erw::Rational(1, 2));
  erw::SimulationOptions sim;
  sim.trials = opts.trials;
  sim.seed = opts.seed;
  sim.checkpoints = opts.checkpoints.empty() ? std::vector<std::size_t>{opts.n}
                                             : opts.checkpoints;
  sim.threads = opts.threads;
  sim.histogram = opts.histogram;
  sim.block_size = opts.block_size;
  const auto rows = erw::run_simulation(params, opts.n, sim);

  if (opts.common.format == "csv") {
    std::string text = erw::csv_row({"n", "trials", "mean", "var", "stderr", "seed", "p", "q"});
    for (const auto& row : rows)
      text += erw::csv_row({std::to_string(row.n), std::to_string(row.trials),
                            std::to_string(row.sample_mean_s), std::to_string(row.sample_var_s),
                            std::to_string(row.stderr_mean), std::to_string(row.seed),
                            erw::format_rational(row.params.p()),
                            erw::format_rational(row.params.q())});
    emit(opts.common, text);
    return 0;
  }

  json doc{{"command", "simulate"}, {"params", erw::params_json(params)},
           {"rows", json::array()}};
  for (const auto& row : rows) doc["rows"].push_back(erw::summary_json(row));
  emit(opts.common, dump(doc));
  return 0;
}

// --------------------------------------------------------------- verify ----

struct VerifyCliOpts {
  CommonOpts common;
  std::size_t max_n = 8;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 424242;
  unsigned threads = 0;
};

int run_verify(const VerifyCliOpts& opts) {
  erw::VerifyOptions vo;
  vo.max_n = opts.max_n;
  vo.mc_trials = opts.trials;
  vo.seed = opts.seed;
  vo.threads = opts.threads;
  const erw::VerifyReport report = erw::run_verification(vo);

  if (opts.common.format == "csv") {
    std::string text = erw::csv_row({"category", "id", "status", "lhs", "rhs", "detail"});
    for (const auto& check : report.checks)
      text += erw::csv_row({check.category, check.id, erw::check_status_name(check.status),
                            check.lhs, check.rhs, check.detail});
    emit(opts.common, text);
  } else {
    emit(opts.common, dump(erw::report_json(report)));
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elephant random walk with random memory: exact moments, index families, "
               "enumeration oracle, Monte Carlo, cross-verification"};
  app.require_subcommand(1);

  ExactOpts exact_opts;
  auto* exact = app.add_subcommand("exact", "exact moments as polynomials in alpha");
  exact->add_option("--moment", exact_opts.moment, "which moment")
      ->required()
      ->check(CLI::IsMember({"mean-x", "mean-s", "product", "s-squared"}));
  exact->add_option("--n", exact_opts.n, "moment index k (meaning E(X_k), E(S_k), E(S_k^2))");
  exact->add_option("--a", exact_opts.a, "first product index");
  exact->add_option("--b", exact_opts.b, "second product index");
  exact->add_option("--route", exact_opts.route,
                    "mean-x/mean-s: recursion|explicit; product/s-squared: tower|paper");
  exact->add_flag("--float", exact_opts.use_float,
                  "also report the double-precision recursion value (means only)");
  add_common(exact, exact_opts.common);

  SetsOpts sets_opts;
  auto* sets = app.add_subcommand("sets", "index families Phi/Theta/Omega/Psi");
  sets->add_option("--family", sets_opts.family, "family name")
      ->required()
      ->check(CLI::IsMember({"phi", "theta", "omega", "psi"}));
  sets->add_option("--j", sets_opts.j, "power of alpha")->required();
  sets->add_option("--n", sets_opts.n, "walk index (vectors have length n-1)")->required();
  sets->add_option("--construction", sets_opts.construction, "recursive or c1")
      ->check(CLI::IsMember({"recursive", "c1"}));
  sets->add_option("--k", sets_opts.k, "fixed coordinate sum (omega/psi slices)");
  sets->add_option("--cap", sets_opts.cap, "materialization cap override");
  add_common(sets, sets_opts.common, /*with_params=*/false);

  OracleOpts oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "exact distribution by exhaustive enumeration");
  oracle->add_option("--n", oracle_opts.n, "horizon")->required();
  oracle->add_option("--mode", oracle_opts.mode, "enumeration mode")
      ->check(CLI::IsMember({"history", "generative"}));
  oracle->add_flag("--override-cap", oracle_opts.override_cap, "lift the soft horizon cap");
  oracle->add_flag("--no-atoms", oracle_opts.no_atoms, "suppress the atom listing");
  oracle->add_option("--mean-x", oracle_opts.mean_x, "report E(X_k) for these k");
  oracle->add_option("--mean-s", oracle_opts.mean_s, "report E(S_k) for these k");
  oracle->add_option("--s-squared", oracle_opts.s_squared, "report E(S_k^2) for these k");
  oracle->add_option("--s-dist", oracle_opts.s_dist, "report the law of S_k for these k");
  oracle->add_option("--product", oracle_opts.product, "report E(X_a X_b) for index pairs");
  add_common(oracle, oracle_opts.common);

  SimulateOpts sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo sampling of the walk");
  simulate->add_option("--n", sim_opts.n, "horizon")->required();
  simulate->add_option("--trials", sim_opts.trials, "number of independent walks")->required();
  simulate->add_option("--checkpoints", sim_opts.checkpoints, "horizons to summarize")
      ->delimiter(',');
  simulate->add_option("--seed", sim_opts.seed, "master seed");
  simulate->add_option("--threads", sim_opts.threads, "worker threads (0 = hardware)");
  simulate->add_flag("--histogram", sim_opts.histogram, "collect position histograms");
  simulate->add_option("--block-size", sim_opts.block_size, "trials per merge block");
  add_common(simulate, sim_opts.common);

  VerifyCliOpts verify_opts;
  auto* verify = app.add_subcommand("verify", "run the full cross-check report");
  verify->add_option("--max-n", verify_opts.max_n, "horizon bound for the exact checks");
  verify->add_option("--trials", verify_opts.trials,
                     "Monte Carlo trials (0 skips the statistical section)");
  verify->add_option("--seed", verify_opts.seed, "seed for the statistical section");
  verify->add_option("--threads", verify_opts.threads, "worker threads (0 = hardware)");
  add_common(verify, verify_opts.common, /*with_params=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(exact)) return run_exact(exact_opts);
    if (app.got_subcommand(sets)) return run_sets(sets_opts);
    if (app.got_subcommand(oracle)) return run_oracle(oracle_opts);
    if (app.got_subcommand(simulate)) return run_simulate(sim_opts);
    if (app.got_subcommand(verify)) return run_verify(verify_opts);
  } catch (const erw::resource_limit_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
