#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "erw/families.hpp"
#include "erw/moments.hpp"
#include "erw/montecarlo.hpp"
#include "erw/oracle.hpp"
#include "erw/polynomial.hpp"
#include "erw/walk.hpp"

namespace erw {

enum class CheckStatus { pass, fail, documented_divergence };

struct VerifyCheck {
  std::string category;
  std::string id;
  CheckStatus status = CheckStatus::pass;
  std::string lhs;  // for non-pass: the two values side by side
  std::string rhs;
  std::string detail;
};

struct VerifyOptions {
  std::size_t max_n = 8;        // horizon bound for the exact cross-checks
  std::uint64_t mc_trials = 100000;  // 0 disables the statistical section
  std::uint64_t seed = 424242;
  unsigned threads = 0;
};

/// Outcome of the full cross-check. The paper's product-moment recursion is
/// expected to disagree with the enumeration oracle away from alpha in
/// {-1,0,1}; those mismatches are classified documented_divergence, never
/// fail, so a clean build reports zero failures and a stable set of
/// documented divergences.
struct VerifyReport {
  VerifyOptions options;
  std::vector<VerifyCheck> checks;

  std::size_t count(CheckStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(),
                      [s](const VerifyCheck& c) { return c.status == s; }));
  }
  std::size_t passed() const { return count(CheckStatus::pass); }
  std::size_t failed() const { return count(CheckStatus::fail); }
  std::size_t divergences() const { return count(CheckStatus::documented_divergence); }
  bool all_pass() const { return failed() == 0 && divergences() == 0; }
};

namespace detail {

inline const std::vector<Rational>& verify_p_grid() {
  static const std::vector<Rational> grid = {Rational(0), Rational(1, 4), Rational(1, 2),
                                             Rational(3, 4), Rational(1)};
  return grid;
}

inline const std::vector<Rational>& verify_q_grid() {
  static const std::vector<Rational> grid = {Rational(1, 2), Rational(1)};
  return grid;
}

class VerifyRunner {
 public:
  explicit VerifyRunner(const VerifyOptions& options) : options_(options) {
    report_.options = options;
  }

  VerifyReport run() {
    if (options_.max_n < 1) throw std::invalid_argument("verification horizon must be >= 1");
    paper_values();
    mean_routes();
    mean_vs_oracle();
    family_equivalence();
    family_cardinalities();
    weight_identities();
    leading_coefficients();
    oracle_modes();
    sign_symmetry();
    q_independence();
    mean_scaling();
    tower_vs_oracle();
    paper_divergence_table();
    probability_bounds();
    if (options_.mc_trials > 0) {
      conditional_law_chi_square();
      step_frequency();
      monte_carlo();
    }
    return std::move(report_);
  }

 private:
  void add(std::string category, std::string id, bool ok, std::string lhs = {},
           std::string rhs = {}, std::string detail = {}, bool expected_divergence = false) {
    VerifyCheck c;
    c.category = std::move(category);
    c.id = std::move(id);
    c.status = ok ? CheckStatus::pass
                  : (expected_divergence ? CheckStatus::documented_divergence : CheckStatus::fail);
    if (!ok) {
      c.lhs = std::move(lhs);
      c.rhs = std::move(rhs);
    }
    c.detail = std::move(detail);
    report_.checks.push_back(std::move(c));
  }

  const ExactDistribution& dist(std::size_t n, const Rational& p, const Rational& q,
                                OracleMode mode) {
    auto key = std::make_tuple(n, p, q, mode == OracleMode::history);
    auto it = dist_cache_.find(key);
    if (it == dist_cache_.end())
      it = dist_cache_.emplace(key, exact_distribution(n, WalkParams(p, q), mode)).first;
    return it->second;
  }

  static AlphaPolynomial pinned(std::initializer_list<Rational> coeffs) {
    return AlphaPolynomial(std::vector<Rational>(coeffs));
  }

  void paper_values() {
    const MeanSeries<Rational> means(4);
    const std::vector<std::pair<std::string, bool>> results = {
        {"E(X2)", means.increment(2) == pinned({0, 1})},
        {"E(X3)", means.increment(3) == pinned({0, Rational(3, 4), Rational(1, 4)})},
        {"E(X4)", means.increment(4) ==
                      pinned({0, Rational(11, 18), Rational(13, 36), Rational(1, 36)})},
        {"E(S2)", means.displacement(2) == pinned({1, 1})},
        {"E(S3)", means.displacement(3) == pinned({1, Rational(7, 4), Rational(1, 4)})},
        {"E(S4)", means.displacement(4) ==
                      pinned({1, Rational(85, 36), Rational(11, 18), Rational(1, 36)})},
    };
    for (const auto& [id, ok] : results) add("paper-values", id, ok);
  }

  void mean_routes() {
    const std::size_t top = std::min<std::size_t>(options_.max_n, 12);
    const MeanSeries<Rational> means(std::max<std::size_t>(top, 2));
    for (std::size_t k = 2; k <= top; ++k) {
      const auto& rec_x = means.increment(k);
      const auto& rec_s = means.displacement(k);
      const auto fam_x = explicit_mean_increment(k, ExplicitRoute::recursive_families);
      const auto fam_s = explicit_mean_displacement(k, ExplicitRoute::recursive_families);
      const auto c1_x = explicit_mean_increment(k, ExplicitRoute::c1_streaming);
      const auto c1_s = explicit_mean_displacement(k, ExplicitRoute::c1_streaming);
      add("mean-route", "E(X_" + std::to_string(k) + ") recursion=families=C1",
          rec_x == fam_x && rec_x == c1_x, to_string(rec_x), to_string(fam_x) + " | " + to_string(c1_x));
      add("mean-route", "E(S_" + std::to_string(k) + ") recursion=families=C1",
          rec_s == fam_s && rec_s == c1_s, to_string(rec_s), to_string(fam_s) + " | " + to_string(c1_s));
    }
  }

  void mean_vs_oracle() {
    const std::size_t n = std::min<std::size_t>({options_.max_n, 12, kHistoryModeCap});
    if (n < 1) return;
    const MeanSeries<Rational> means(n);
    for (const auto& p : verify_p_grid()) {
      for (const auto& q : verify_q_grid()) {
        const WalkParams params(p, q);
        const auto& d = dist(n, p, q, OracleMode::history);
        bool ok = true;
        std::string lhs, rhs, where;
        for (std::size_t k = 1; k <= n && ok; ++k) {
          const Rational mx = oracle_mean_x(d, k);
          const Rational ms = oracle_mean_s(d, k);
          const Rational ex = params.beta() * means.increment(k).evaluate(params.alpha());
          const Rational es = params.beta() * means.displacement(k).evaluate(params.alpha());
          if (mx != ex || ms != es) {
            ok = false;
            lhs = "oracle mean_x=" + format_rational(mx) + " mean_s=" + format_rational(ms);
            rhs = "recursion mean_x=" + format_rational(ex) + " mean_s=" + format_rational(es);
            where = " first mismatch at k=" + std::to_string(k);
          }
        }
        add("mean-vs-oracle", "p=" + format_rational(p) + " q=" + format_rational(q), ok, lhs,
            rhs, "k <= " + std::to_string(n) + where);
      }
    }
  }

  void family_equivalence() {
    const std::size_t top = std::min<std::size_t>(options_.max_n, 10);
    for (std::size_t n = 2; n <= top; ++n) {
      bool phi_ok = true, theta_ok = true;
      std::string phi_where, theta_where;
      for (std::size_t j = 1; j <= n; ++j) {
        if (build_family(FamilyConstruction::phi_recursive, j, n).members !=
            build_family(FamilyConstruction::phi_c1, j, n).members) {
          phi_ok = false;
          phi_where = "j=" + std::to_string(j);
          break;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (build_family(FamilyConstruction::theta_recursive, j, n).members !=
            build_family(FamilyConstruction::psi_c1, j, n).members) {
          theta_ok = false;
          theta_where = "j=" + std::to_string(j);
          break;
        }
      }
      add("family-equivalence", "phi_recursive=phi_c1 n=" + std::to_string(n), phi_ok, {}, {},
          phi_where);
      add("family-equivalence", "theta_recursive=psi_c1 n=" + std::to_string(n), theta_ok, {},
          {}, theta_where);
    }
  }

  void family_cardinalities() {
    const std::size_t top = std::min<std::size_t>(options_.max_n, 10);
    for (std::size_t n = 2; n <= top; ++n) {
      bool ok = true;
      std::string lhs, rhs, where;
      for (std::size_t j = 1; j <= std::min<std::size_t>(n, 5) && ok; ++j) {
        const BigInt phi_formula = cardinality_formula(CardinalityKind::phi, j, n);
        const BigInt theta_formula = cardinality_formula(CardinalityKind::theta, j, n);
        const auto phi_size =
            build_family(FamilyConstruction::phi_recursive, j, n).members.size();
        const auto theta_size =
            build_family(FamilyConstruction::theta_recursive, j, n).members.size();
        if (phi_formula != phi_size || theta_formula != theta_size) {
          ok = false;
          lhs = "formula phi=" + phi_formula.str() + " theta=" + theta_formula.str();
          rhs = "enumerated phi=" + std::to_string(phi_size) +
                " theta=" + std::to_string(theta_size);
          where = "j=" + std::to_string(j);
        }
      }
      add("family-cardinality", "n=" + std::to_string(n), ok, lhs, rhs, where);
    }
  }

  void weight_identities() {
    const std::size_t top = std::min<std::size_t>(options_.max_n, 12);
    for (std::size_t n = 2; n <= top; ++n) {
      Rational phi_total = 0;
      Rational theta_total = 1;  // the Theta^0_n term
      for (std::size_t j = 1; j <= n; ++j) {
        phi_total += family_weight(build_family(FamilyConstruction::phi_recursive, j, n));
        theta_total += family_weight(build_family(FamilyConstruction::theta_recursive, j, n));
      }
      add("weight-identity", "sum_j weight(Phi^j_" + std::to_string(n) + ") = 1",
          phi_total == 1, format_rational(phi_total), "1/1");
      add("weight-identity",
          "1 + sum_j weight(Theta^j_" + std::to_string(n) + ") = " + std::to_string(n + 1),
          theta_total == static_cast<int>(n + 1), format_rational(theta_total),
          std::to_string(n + 1) + "/1");
    }
  }

  void leading_coefficients() {
    const std::size_t top = std::min<std::size_t>(options_.max_n, 12);
    const MeanSeries<Rational> means(top + 1);
    for (std::size_t n = 1; n <= top; ++n) {
      Rational factorial_sq = 1;
      for (std::size_t i = 2; i <= n; ++i) factorial_sq *= static_cast<int>(i * i);
      const auto& poly = means.increment(n + 1);
      const bool ok = poly.degree() == static_cast<std::ptrdiff_t>(n) &&
                      poly.leading_coefficient() == Rational(1) / factorial_sq;
      add("leading-coefficient",
          "deg E(X_" + std::to_string(n + 1) + ") = " + std::to_string(n) +
              ", lead = 1/(n!)^2",
          ok, to_string(poly), format_rational(Rational(1) / factorial_sq));
    }
  }

  void oracle_modes() {
    const std::size_t top = std::min<std::size_t>({options_.max_n, kGenerativeModeCap});
    for (const auto& p : verify_p_grid()) {
      for (const auto& q : verify_q_grid()) {
        bool agree = true, normalized = true;
        std::string where;
        for (std::size_t n = 1; n <= top && agree && normalized; ++n) {
          const auto& h = dist(n, p, q, OracleMode::history);
          const auto& g = dist(n, p, q, OracleMode::generative);
          if (h.atoms != g.atoms) {
            agree = false;
            where = "n=" + std::to_string(n);
          }
          Rational hsum = 0, gsum = 0;
          for (const auto& [mask, prob] : h.atoms) hsum += prob;
          for (const auto& [mask, prob] : g.atoms) gsum += prob;
          if (hsum != 1 || gsum != 1) {
            normalized = false;
            where = "n=" + std::to_string(n);
          }
        }
        const std::string grid_id = "p=" + format_rational(p) + " q=" + format_rational(q);
        add("oracle-mode-agreement", grid_id, agree, {}, {},
            "n <= " + std::to_string(top) + (agree ? "" : " first mismatch " + where));
        add("oracle-normalization", grid_id, normalized, {}, {},
            normalized ? "" : "at " + where);
      }
    }
  }

  void sign_symmetry() {
    const std::size_t n = std::min<std::size_t>(options_.max_n, kGenerativeModeCap);
    if (n < 1) return;
    const std::uint32_t full = n >= 32 ? ~0u : ((1u << n) - 1u);
    for (const auto& p : verify_p_grid()) {
      for (const auto& q : verify_q_grid()) {
        const auto& direct = dist(n, p, q, OracleMode::history);
        const auto& flipped = dist(n, p, Rational(1) - q, OracleMode::history);
        std::map<std::uint32_t, Rational> mirrored;
        for (const auto& [mask, prob] : flipped.atoms) mirrored[~mask & full] = prob;
        add("sign-symmetry",
            "negating steps maps (p," + format_rational(q) + ") to (p,1-q), p=" +
                format_rational(p),
            mirrored == direct.atoms, {}, {}, "n=" + std::to_string(n));
      }
    }
  }

  void q_independence() {
    const std::size_t n = std::min<std::size_t>(options_.max_n, kGenerativeModeCap);
    if (n < 2) return;
    for (const auto& p : verify_p_grid()) {
      const auto& half = dist(n, p, Rational(1, 2), OracleMode::history);
      const auto& one = dist(n, p, Rational(1), OracleMode::history);
      bool ok = true;
      std::string lhs, rhs, where;
      for (std::size_t b = 2; b <= n && ok; ++b) {
        for (std::size_t a = 1; a < b && ok; ++a) {
          const Rational lhs_v = oracle_product(half, a, b);
          const Rational rhs_v = oracle_product(one, a, b);
          if (lhs_v != rhs_v) {
            ok = false;
            lhs = format_rational(lhs_v);
            rhs = format_rational(rhs_v);
            where = "E(X_" + std::to_string(a) + " X_" + std::to_string(b) + ")";
          }
        }
        if (ok && oracle_second_moment_s(half, b) != oracle_second_moment_s(one, b)) {
          ok = false;
          lhs = format_rational(oracle_second_moment_s(half, b));
          rhs = format_rational(oracle_second_moment_s(one, b));
          where = "E(S_" + std::to_string(b) + "^2)";
        }
      }
      add("q-independence", "products and S^2 at q=1/2 vs q=1, p=" + format_rational(p), ok, lhs,
          rhs, where);
    }
  }

  void mean_scaling() {
    const std::size_t n = std::min<std::size_t>({options_.max_n, 10, kHistoryModeCap});
    for (const auto& p : verify_p_grid()) {
      for (const auto& q : verify_q_grid()) {
        const Rational beta = 2 * q - 1;
        const auto& scaled = dist(n, p, q, OracleMode::history);
        const auto& unit = dist(n, p, Rational(1), OracleMode::history);
        bool ok = true;
        std::string lhs, rhs, where;
        for (std::size_t k = 1; k <= n && ok; ++k) {
          const Rational lhs_v = oracle_mean_s(scaled, k);
          const Rational rhs_v = beta * oracle_mean_s(unit, k);
          if (lhs_v != rhs_v) {
            ok = false;
            lhs = format_rational(lhs_v);
            rhs = format_rational(rhs_v);
            where = "k=" + std::to_string(k);
          }
        }
        add("mean-scaling",
            "E(S_k) at (p,q) = beta * E(S_k) at (p,1), p=" + format_rational(p) +
                " q=" + format_rational(q),
            ok, lhs, rhs, where);
      }
    }
  }

  void tower_vs_oracle() {
    const std::size_t n = std::min<std::size_t>({options_.max_n, 10, kHistoryModeCap});
    if (n < 2) return;
    const MomentTable table(n, ProductSource::tower_recursion);

    {  // derived identity: the first product row is the increment series
      bool ok = true;
      std::string where;
      for (std::size_t k = 1; k <= n; ++k) {
        if (table.product(1, k) != table.mean_x(k)) {
          ok = false;
          where = "k=" + std::to_string(k);
          break;
        }
      }
      add("tower-row1-identity", "E(X_1 X_k) = E(X_k)/beta as polynomials", ok, {}, {}, where);
    }

    for (const auto& p : verify_p_grid()) {
      const Rational alpha = 2 * p - 1;
      const auto& d = dist(n, p, Rational(1), OracleMode::history);
      bool products_ok = true, s2_ok = true;
      std::string lhs, rhs, where;
      for (std::size_t b = 2; b <= n && products_ok; ++b)
        for (std::size_t a = 1; a < b && products_ok; ++a) {
          const Rational t = table.product(a, b).evaluate(alpha);
          const Rational o = oracle_product(d, a, b);
          if (t != o) {
            products_ok = false;
            lhs = format_rational(t);
            rhs = format_rational(o);
            where = "(a,b)=(" + std::to_string(a) + "," + std::to_string(b) + ")";
          }
        }
      add("tower-vs-oracle-product", "p=" + format_rational(p), products_ok, lhs, rhs, where);
      lhs.clear(), rhs.clear(), where.clear();
      for (std::size_t k = 1; k <= n && s2_ok; ++k) {
        const Rational t = table.second_moment(k).evaluate(alpha);
        const Rational o = oracle_second_moment_s(d, k);
        if (t != o) {
          s2_ok = false;
          lhs = format_rational(t);
          rhs = format_rational(o);
          where = "k=" + std::to_string(k);
        }
      }
      add("tower-vs-oracle-s2", "p=" + format_rational(p), s2_ok, lhs, rhs, where);
    }
  }

  // The published product recursion evaluated at alpha=1/2 against the
  // oracle: the expected, documented mismatch class.
  void paper_divergence_table() {
    const std::size_t n = std::min<std::size_t>({options_.max_n, kGenerativeModeCap});
    if (n < 3) return;
    const Rational p(3, 4), alpha(1, 2);
    const MomentTable table(n, ProductSource::paper_recursion);
    const auto& d = dist(n, p, Rational(1), OracleMode::history);
    for (std::size_t b = 3; b <= n; ++b) {
      for (std::size_t a = 2; a < b; ++a) {
        const Rational paper = table.product(a, b).evaluate(alpha);
        const Rational oracle = oracle_product(d, a, b);
        add("paper-product-divergence",
            "E(X_" + std::to_string(a) + " X_" + std::to_string(b) + ") at alpha=1/2",
            paper == oracle, format_rational(paper), format_rational(oracle),
            "paper recursion vs oracle", /*expected_divergence=*/true);
      }
    }
    for (std::size_t k = 2; k <= n; ++k) {
      const Rational paper = table.second_moment(k).evaluate(alpha);
      const Rational oracle = oracle_second_moment_s(d, k);
      add("paper-s2-divergence", "E(S_" + std::to_string(k) + "^2) at alpha=1/2",
          paper == oracle, format_rational(paper), format_rational(oracle),
          "paper second-moment form vs oracle", /*expected_divergence=*/true);
    }
  }

  void probability_bounds() {
    const std::size_t top = std::min<std::size_t>(options_.max_n, 8);
    bool ok = true;
    std::string where;
    for (const auto& p : verify_p_grid()) {
      const WalkParams params(p, Rational(1, 2));
      const Rational half(1, 2);
      const Rational radius = (params.alpha() < 0 ? -params.alpha() : params.alpha()) / 2;
      for (std::size_t n = 1; n <= top && ok; ++n) {
        for (std::uint32_t mask = 0; mask < (1u << n) && ok; ++mask) {
          std::vector<Step> h(n);
          for (std::size_t i = 0; i < n; ++i) h[i] = (mask >> i) & 1u ? Step{1} : Step{-1};
          const Rational prob = conditional_plus_probability(h, params);
          if (prob < half - radius || prob > half + radius || prob < 0 || prob > 1) {
            ok = false;
            where = "p=" + format_rational(p) + " n=" + std::to_string(n) + " mask=" +
                    std::to_string(mask);
          }
        }
      }
    }
    add("walk-probability-bounds",
        "P(+1|history) within [1/2-|alpha|/2, 1/2+|alpha|/2] for all histories", ok, {}, {},
        where.empty() ? "n <= " + std::to_string(top) : where);
  }

  void conditional_law_chi_square() {
    // chi^2 upper critical value at level 1e-3 with 31 degrees of freedom
    constexpr double kCritical = 61.0983060810581;
    constexpr std::size_t kHorizon = 5;
    constexpr std::uint64_t kDraws = 100000;
    const WalkParams params(Rational(3, 4), Rational(1, 2));
    const auto& d = dist(kHorizon, params.p(), params.q(), OracleMode::history);
    for (const bool closed_form : {false, true}) {
      std::map<std::uint32_t, std::uint64_t> counts;
      for (std::uint64_t t = 0; t < kDraws; ++t) {
        const Trajectory traj = closed_form
                                    ? sample_trajectory_closed_form(params, kHorizon,
                                                                    options_.seed, t)
                                    : sample_trajectory(params, kHorizon, options_.seed, t);
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < kHorizon; ++i)
          if (traj.steps[i] > 0) mask |= 1u << i;
        ++counts[mask];
      }
      double chi2 = 0.0;
      for (const auto& [mask, prob] : d.atoms) {
        const double expected = to_double(prob) * static_cast<double>(kDraws);
        const double observed = static_cast<double>(counts[mask]);
        chi2 += (observed - expected) * (observed - expected) / expected;
      }
      add("conditional-law-chi-square",
          std::string(closed_form ? "closed-form" : "generative") +
              " sampler vs oracle, n=5, 1e5 draws",
          chi2 < kCritical, std::to_string(chi2), std::to_string(kCritical),
          "level 1e-3, df=31, seed=" + std::to_string(options_.seed));
    }
  }

  void step_frequency() {
    constexpr std::uint64_t kDraws = 100000;
    const WalkParams params(Rational(2, 3), Rational(1, 2));
    const std::vector<Step> history = {1, -1, 1};
    const Rational plus = conditional_plus_probability(history, params);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < kDraws; ++t) {
      CounterRng rng(options_.seed ^ 0x57ef, t, history.size() + 1);
      if (sample_next_step(history, params, rng) > 0) ++hits;
    }
    const double p_hat = static_cast<double>(hits) / static_cast<double>(kDraws);
    const double p_exact = to_double(plus);
    const double se = std::sqrt(p_exact * (1.0 - p_exact) / static_cast<double>(kDraws));
    add("step-frequency", "empirical P(+1|+1,-1,+1) within 4 standard errors",
        std::abs(p_hat - p_exact) <= 4.0 * se, std::to_string(p_hat), std::to_string(p_exact),
        "1e5 draws, seed-deterministic");
  }

  void monte_carlo() {
    {  // mean against the exact engine
      const WalkParams params(Rational(3, 4), Rational(1));
      const std::size_t n = 50;
      const auto summaries =
          run_simulation(params, n, options_.mc_trials, options_.seed, {n}, options_.threads);
      const Rational exact =
          params.beta() * mean_displacement(n).evaluate(params.alpha());
      const double err = std::abs(summaries[0].sample_mean_s - to_double(exact));
      add("mc-mean", "p=3/4 q=1 n=50: sample mean within 5 stderr of exact",
          err <= 5.0 * summaries[0].stderr_mean + 1e-12, std::to_string(summaries[0].sample_mean_s),
          format_rational(exact), std::to_string(options_.mc_trials) + " trials");
    }
    {  // diffusive variance of the symmetric walk
      const WalkParams params(Rational(1, 2), Rational(1, 2));
      const std::size_t n = 100;
      const auto summaries =
          run_simulation(params, n, options_.mc_trials, options_.seed + 1, {n}, options_.threads);
      const double ratio = summaries[0].sample_var_s / static_cast<double>(n);
      add("mc-variance", "p=q=1/2 n=100: Var(S_n)/n within [0.95, 1.05]",
          ratio >= 0.95 && ratio <= 1.05, std::to_string(ratio), "1",
          std::to_string(options_.mc_trials) + " trials");
    }
    {  // thread-count invariance, bit for bit
      const WalkParams params(Rational(3, 4), Rational(1, 2));
      SimulationOptions opt;
      opt.trials = std::min<std::uint64_t>(options_.mc_trials, 20000);
      opt.seed = options_.seed + 2;
      opt.checkpoints = {10, 25};
      opt.histogram = true;
      opt.block_size = 1024;
      opt.threads = 1;
      const auto solo = run_simulation(params, 25, opt);
      opt.threads = 4;
      const auto pooled = run_simulation(params, 25, opt);
      bool identical = solo.size() == pooled.size();
      for (std::size_t i = 0; identical && i < solo.size(); ++i) {
        identical = solo[i].sample_mean_s == pooled[i].sample_mean_s &&
                    solo[i].sample_var_s == pooled[i].sample_var_s &&
                    solo[i].stderr_mean == pooled[i].stderr_mean &&
                    solo[i].histogram == pooled[i].histogram;
      }
      add("mc-determinism", "threads=1 and threads=4 produce bit-identical summaries", identical);
    }
  }

  VerifyOptions options_;
  VerifyReport report_;
  std::map<std::tuple<std::size_t, Rational, Rational, bool>, ExactDistribution> dist_cache_;
};

}  // namespace detail

inline VerifyReport run_verification(const VerifyOptions& options = {}) {
  return detail::VerifyRunner(options).run();
}

}  // namespace erw
