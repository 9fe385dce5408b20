#include "toeplitz/geom_series.hpp"

#include <cmath>

namespace toeplitz {

namespace {
constexpr double kHornerBand = 1e-6;
}

Complex F_geom(int n, Complex t) {
  if (n < 0) throw std::invalid_argument("F_geom: n must be >= 0");
  if (n == 0) return 0.0;
  if (std::abs(1.0 - t) > kHornerBand) {
    return (1.0 - std::pow(t, n)) / (1.0 - t);
  }
  Complex acc = 1.0;
  for (int k = 1; k < n; ++k) acc = acc * t + 1.0;
  return acc;
}

double F_geom(int n, double t) {
  if (n < 0) throw std::invalid_argument("F_geom: n must be >= 0");
  if (n == 0) return 0.0;
  if (std::abs(1.0 - t) > kHornerBand) {
    return (1.0 - std::pow(t, n)) / (1.0 - t);
  }
  double acc = 1.0;
  for (int k = 1; k < n; ++k) acc = acc * t + 1.0;
  return acc;
}

}  // namespace toeplitz
