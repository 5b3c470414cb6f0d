#pragma once

#include <complex>

namespace decompound {

//! log Gamma(z) for Re(z) > 0, Lanczos approximation (g = 7, n = 9).
//! Accurate to ~1e-13 relative over the region used here.
std::complex<double> lgamma_complex(std::complex<double> z);

} // namespace decompound
