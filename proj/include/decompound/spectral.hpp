#pragma once

#include <span>

#include "decompound/law.hpp"
#include "decompound/profile.hpp"

namespace decompound {

//! Empirical characteristic function (1/N) sum e^{iuX_k} on the grid.
//!
//! Built for u >= 0 and mirrored by conjugation, so hermitian symmetry is
//! exact and value(0) == 1 exactly.
ComplexProfile empirical_cf(std::span<const double> data, const FrequencyGrid& grid);

//! (1/N) sum i X_k e^{iuX_k}; value(0) = i * sample mean. Anti-hermitian.
ComplexProfile empirical_cf_derivative(std::span<const double> data,
                                       const FrequencyGrid& grid);

struct CfPair {
  ComplexProfile cf;
  ComplexProfile derivative;
};

//! Both sums in one pass over the data.
CfPair empirical_cf_pair(std::span<const double> data, const FrequencyGrid& grid);

//! Distinguished logarithm via the cumulative quotient integral
//! log phi(u) = int_0^u phi'(z)/phi(z) dz (trapezoid, anchored log(0) = 0,
//! accumulated outward on each half grid separately).
//!
//! Near-vanishing denominators are not an error: the quotient clamps the
//! denominator modulus below at 1e-300 and downstream truncation discards
//! the blown-up region.
ComplexProfile distinguished_log(const ComplexProfile& cf, const ComplexProfile& cf_derivative);

//! Tabulate a law's analytic characteristic function (hermitian by mirror).
ComplexProfile tabulate_analytic_cf(const Law& law, const FrequencyGrid& grid);

namespace detail {

//! Shared core: mean of w_k e^{iu y_k} over the grid and, when requested,
//! the mean of i y_k w_k e^{iu y_k}. Empty weights mean w == 1. Mellin
//! transforms reuse this with y = ln Z and w = Z^{c-1}.
void weighted_exponential_sums(std::span<const double> points,
                               std::span<const double> weights,
                               const FrequencyGrid& grid, bool with_derivative,
                               std::vector<Complex>& sums,
                               std::vector<Complex>& derivative_sums);

//! Core of distinguished_log on raw grid/value arrays.
std::vector<Complex> quotient_log(const FrequencyGrid& grid,
                                  const std::vector<Complex>& values,
                                  const std::vector<Complex>& derivatives);

} // namespace detail

} // namespace decompound
