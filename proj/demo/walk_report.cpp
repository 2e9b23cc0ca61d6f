// Small tour of the library: exact mean table, the product-moment divergence,
// and a Monte Carlo cross-check against the exact engine.

#include <cmath>
#include <iostream>

#include "erw/erw.hpp"

int main() {
  using namespace erw;

  std::cout << "E(S_k)/beta as polynomials in alpha = 2p-1:\n";
  const MeanSeries<Rational> means(8);
  for (std::size_t k = 1; k <= 8; ++k)
    std::cout << "  k=" << k << ": " << to_string(means.displacement(k)) << "\n";

  const WalkParams params(Rational(3, 4), Rational(1));
  std::cout << "\nAt p=3/4, q=1 (alpha=1/2):\n";
  for (std::size_t k = 1; k <= 8; ++k)
    std::cout << "  E(S_" << k << ") = "
              << format_rational(params.beta() *
                                 means.displacement(k).evaluate(params.alpha()))
              << "\n";

  std::cout << "\nProduct moment E(X_2 X_3), two routes:\n"
            << "  tower/oracle:        " << to_string(product_moment_tower(2, 3)) << "\n"
            << "  published recursion: " << to_string(product_moment_paper(1, 2)) << "\n"
            << "  at alpha=1/2: "
            << format_rational(product_moment_tower(2, 3).evaluate(Rational(1, 2))) << " vs "
            << format_rational(product_moment_paper(1, 2).evaluate(Rational(1, 2))) << "\n";

  const std::size_t horizon = 50;
  const auto rows = run_simulation(params, horizon, 200000, 1, {horizon});
  const double exact =
      to_double(params.beta() * mean_displacement(horizon).evaluate(params.alpha()));
  std::cout << "\nMonte Carlo vs exact at n=50, 2e5 trials:\n"
            << "  sample mean " << rows[0].sample_mean_s << ", exact " << exact
            << ", |diff|/stderr = "
            << std::abs(rows[0].sample_mean_s - exact) / rows[0].stderr_mean << "\n";
  return 0;
}
