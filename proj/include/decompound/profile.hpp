#pragma once

#include <complex>
#include <string>
#include <vector>

#include "decompound/grid.hpp"

namespace decompound {

using Complex = std::complex<double>;

//! Complex values tabulated on a symmetric frequency grid.
//!
//! Carries empirical characteristic functions, their distinguished logarithms
//! and Mellin transforms. The hermitian flag is set by constructions that
//! guarantee value(-u) == conj(value(u)) exactly.
struct ComplexProfile {
  FrequencyGrid grid;
  std::vector<Complex> values;
  bool hermitian = false;

  ComplexProfile(FrequencyGrid g, std::vector<Complex> v, bool herm = false);

  const Complex& at(std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }

  //! Exact check of the hermitian pairing (used by tests and invariants).
  bool check_hermitian_exact() const;

  //! Restrict to |u| <= half_width (half_width snapped down to the lattice).
  ComplexProfile restricted(double half_width) const;
};

//! Mellin transform values on the vertical line c + i*t.
struct MellinProfile {
  FrequencyGrid grid; // over the imaginary coordinate t
  std::vector<Complex> values;
  double c = 1.0;
  bool hermitian = false;

  MellinProfile(FrequencyGrid g, std::vector<Complex> v, double line, bool herm = false);

  const Complex& at(std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }
  bool check_hermitian_exact() const;
  MellinProfile restricted(double half_width) const;
};

//! Real density values on a uniform x grid.
struct DensityEstimate {
  std::vector<double> x;
  std::vector<double> values;
  std::string meta; // config echo, free form

  std::size_t size() const { return values.size(); }
};

} // namespace decompound
