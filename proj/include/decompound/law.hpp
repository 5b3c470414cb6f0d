#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "decompound/rng.hpp"

namespace decompound {

//! Closed universe of jump/noise distributions.
//!
//! Every variant samples; the analytic characteristic function, Mellin
//! transform and density are exposed where a closed form exists so they can
//! serve as test oracles. Parameters are validated at construction.
class Law {
public:
  struct GaussianMixture {
    std::vector<double> weights;
    std::vector<double> means;
    std::vector<double> sds;
  };
  struct Gamma {
    double shape;
    double scale;
  };
  struct Cauchy {
    double location;
    double scale;
  };
  struct Gaussian {
    double mean;
    double sd;
  };
  struct Beta {
    double alpha;
    double beta;
  };
  struct PointMass {
    double x0;
  };
  struct Degenerate0 {};

  using Variant =
      std::variant<GaussianMixture, Gamma, Cauchy, Gaussian, Beta, PointMass, Degenerate0>;

  explicit Law(Variant v);

  static Law gaussian_mixture(std::vector<double> weights, std::vector<double> means,
                              std::vector<double> sds);
  static Law gamma(double shape, double scale);
  static Law cauchy(double location, double scale);
  static Law gaussian(double mean, double sd);
  static Law beta(double alpha, double beta);
  static Law point_mass(double x0);
  static Law degenerate0();

  const Variant& variant() const { return variant_; }

  bool has_cf() const;
  bool has_density() const;
  bool has_mellin() const;
  //! True when every draw is strictly positive (multiplicative model demand).
  bool positive_support() const;
  //! False for the cauchy variant; risk reports flag heavy-tailed jumps.
  bool has_finite_second_moment() const;

  double sample_one(RngStream& rng) const;
  std::vector<double> sample(std::size_t count, RngStream& rng) const;

  //! Exact characteristic function E[e^{iuX}]. Throws UnsupportedError for Beta.
  std::complex<double> analytic_cf(double u) const;

  //! Exact Mellin transform E[X^{c-1+it}] on the line c. Only PointMass(x0>0)
  //! and Beta carry a closed form here; others throw UnsupportedError.
  //! Throws NumericError when c lies outside the fundamental strip.
  std::complex<double> analytic_mellin(double c, double t) const;

  //! Exact density. Throws UnsupportedError for atomic laws.
  double analytic_density(double x) const;

  //! Law literal, e.g. "mixture(0.3:N(-3.5,1), 0.7:N(3.5,1))" or "gamma(2,1)".
  std::string to_string() const;

  bool operator==(const Law& other) const;

private:
  Variant variant_;
};

//! Parse a law literal: lowercase name with numeric parameters, or N(mu,sd),
//! or "none" for the zero law. Mixtures list weight:component pairs.
Law parse_law(const std::string& text);

} // namespace decompound
