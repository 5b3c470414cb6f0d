#include "decompound/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace decompound {

namespace {

// Lanczos coefficients, g = 7
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kLogSqrtTwoPi = 0.91893853320467274178032973640562;

} // namespace

std::complex<double> lgamma_complex(std::complex<double> z) {
  if (z.real() <= 0.0)
    throw std::invalid_argument("lgamma_complex requires Re(z) > 0");
  z -= 1.0;
  std::complex<double> sum = kLanczos[0];
  for (int k = 1; k < 9; ++k) sum += kLanczos[k] / (z + static_cast<double>(k));
  const std::complex<double> t = z + 7.5;
  return kLogSqrtTwoPi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

} // namespace decompound
