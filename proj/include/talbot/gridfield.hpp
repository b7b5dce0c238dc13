#pragma once

#include <complex>
#include <vector>

namespace talbot {

/// Uniform x-grid samples of U(t, .) at a fixed time.
struct GridField {
  double t = 0.0;
  std::vector<double> xs;
  std::vector<std::complex<double>> values;
};

}  // namespace talbot
