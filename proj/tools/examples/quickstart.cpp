// Simulate a two-scale model, recover its scales and forecast the held-out tail.

#include <iostream>
#include <span>

#include "amar/amar.hpp"

int main() {
  using namespace amar;
  const AmarModel truth({1, 3}, {0.3, 0.6}, InnovationSpec::gaussian(1.0, 42));
  const auto x = simulate(truth, 1600);
  const std::span<const double> all(x);
  const auto train = all.first(1500), test = all.subspan(1500);

  const FitReport fit = amar_fit(train);
  std::cout << "p = " << fit.chosen_p << ", scales:";
  for (std::size_t k = 0; k < fit.scales.size(); ++k) std::cout << ' ' << fit.scales[k] << " (" << fit.alpha[k] << ')';
  std::cout << "\nout-of-sample MSPE: " << rolling_mspe(ScaleModel::from(fit), test, train) << '\n';
}
