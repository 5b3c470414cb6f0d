#include "decompound/law.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "decompound/errors.hpp"
#include "decompound/special_functions.hpp"

namespace decompound {

namespace {

constexpr double kSqrtTwoPi = 2.5066282746310005024157652848110;

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw NumericError(std::string(what) + " must be strictly positive");
}

void format_num(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  out += buf;
}

double gaussian_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * kSqrtTwoPi);
}

std::complex<double> gaussian_cf(double u, double mean, double sd) {
  return std::exp(std::complex<double>(-0.5 * sd * sd * u * u, mean * u));
}

} // namespace

Law::Law(Variant v) : variant_(std::move(v)) {
  std::visit(
      [](const auto& law) {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, GaussianMixture>) {
          const auto k = law.weights.size();
          if (k == 0 || law.means.size() != k || law.sds.size() != k)
            throw NumericError("mixture components and weights must align");
          double total = 0.0;
          for (double w : law.weights) {
            if (!(w >= 0.0)) throw NumericError("mixture weights must be nonnegative");
            total += w;
          }
          if (std::abs(total - 1.0) > 1e-12)
            throw NumericError("mixture weights must sum to 1");
          for (double s : law.sds) require_positive(s, "mixture sd");
        } else if constexpr (std::is_same_v<T, Gamma>) {
          require_positive(law.shape, "gamma shape");
          require_positive(law.scale, "gamma scale");
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          require_positive(law.scale, "cauchy scale");
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          require_positive(law.sd, "gaussian sd");
        } else if constexpr (std::is_same_v<T, Beta>) {
          require_positive(law.alpha, "beta alpha");
          require_positive(law.beta, "beta beta");
        }
      },
      variant_);
}

Law Law::gaussian_mixture(std::vector<double> weights, std::vector<double> means,
                          std::vector<double> sds) {
  return Law(GaussianMixture{std::move(weights), std::move(means), std::move(sds)});
}
Law Law::gamma(double shape, double scale) { return Law(Gamma{shape, scale}); }
Law Law::cauchy(double location, double scale) { return Law(Cauchy{location, scale}); }
Law Law::gaussian(double mean, double sd) { return Law(Gaussian{mean, sd}); }
Law Law::beta(double alpha, double beta) { return Law(Beta{alpha, beta}); }
Law Law::point_mass(double x0) { return Law(PointMass{x0}); }
Law Law::degenerate0() { return Law(Degenerate0{}); }

bool Law::has_cf() const { return !std::holds_alternative<Beta>(variant_); }

bool Law::has_density() const {
  return !std::holds_alternative<PointMass>(variant_) &&
         !std::holds_alternative<Degenerate0>(variant_);
}

bool Law::has_mellin() const {
  if (const auto* pm = std::get_if<PointMass>(&variant_)) return pm->x0 > 0.0;
  return std::holds_alternative<Beta>(variant_);
}

bool Law::positive_support() const {
  if (const auto* pm = std::get_if<PointMass>(&variant_)) return pm->x0 > 0.0;
  return std::holds_alternative<Beta>(variant_) || std::holds_alternative<Gamma>(variant_);
}

bool Law::has_finite_second_moment() const {
  return !std::holds_alternative<Cauchy>(variant_);
}

double Law::sample_one(RngStream& rng) const {
  return std::visit(
      [&rng](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, GaussianMixture>) {
          double u = rng.uniform01();
          std::size_t pick = law.weights.size() - 1;
          for (std::size_t i = 0; i < law.weights.size(); ++i) {
            if (u < law.weights[i]) {
              pick = i;
              break;
            }
            u -= law.weights[i];
          }
          return rng.normal(law.means[pick], law.sds[pick]);
        } else if constexpr (std::is_same_v<T, Gamma>) {
          return rng.gamma(law.shape, law.scale);
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          return rng.cauchy(law.location, law.scale);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          return rng.normal(law.mean, law.sd);
        } else if constexpr (std::is_same_v<T, Beta>) {
          return rng.beta(law.alpha, law.beta);
        } else if constexpr (std::is_same_v<T, PointMass>) {
          return law.x0;
        } else {
          return 0.0;
        }
      },
      variant_);
}

std::vector<double> Law::sample(std::size_t count, RngStream& rng) const {
  std::vector<double> out(count);
  for (auto& v : out) v = sample_one(rng);
  return out;
}

std::complex<double> Law::analytic_cf(double u) const {
  return std::visit(
      [u](const auto& law) -> std::complex<double> {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, GaussianMixture>) {
          std::complex<double> acc = 0.0;
          for (std::size_t i = 0; i < law.weights.size(); ++i)
            acc += law.weights[i] * gaussian_cf(u, law.means[i], law.sds[i]);
          return acc;
        } else if constexpr (std::is_same_v<T, Gamma>) {
          // (1 - i u theta)^{-k}
          return std::pow(std::complex<double>(1.0, -u * law.scale), -law.shape);
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          return std::exp(std::complex<double>(-law.scale * std::abs(u), law.location * u));
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          return gaussian_cf(u, law.mean, law.sd);
        } else if constexpr (std::is_same_v<T, Beta>) {
          throw UnsupportedError("beta law has no closed-form characteristic function here");
        } else if constexpr (std::is_same_v<T, PointMass>) {
          return std::complex<double>(std::cos(u * law.x0), std::sin(u * law.x0));
        } else {
          return 1.0;
        }
      },
      variant_);
}

std::complex<double> Law::analytic_mellin(double c, double t) const {
  if (const auto* pm = std::get_if<PointMass>(&variant_)) {
    if (!(pm->x0 > 0.0))
      throw UnsupportedError("mellin transform needs a law supported on (0,inf)");
    // x0^{c-1+it}
    const double lx = std::log(pm->x0);
    return std::pow(pm->x0, c - 1.0) *
           std::complex<double>(std::cos(t * lx), std::sin(t * lx));
  }
  if (const auto* b = std::get_if<Beta>(&variant_)) {
    // E[X^{s-1}] = Gamma(alpha+s-1) Gamma(alpha+beta) / (Gamma(alpha) Gamma(alpha+beta+s-1))
    const std::complex<double> z(c - 1.0, t);
    if (!(b->alpha + z.real() > 0.0))
      throw NumericError("mellin line outside the fundamental strip");
    const std::complex<double> lg = lgamma_complex(b->alpha + z) +
                                    lgamma_complex(std::complex<double>(b->alpha + b->beta)) -
                                    lgamma_complex(std::complex<double>(b->alpha)) -
                                    lgamma_complex(b->alpha + b->beta + z);
    return std::exp(lg);
  }
  throw UnsupportedError("no closed-form mellin transform for this law");
}

double Law::analytic_density(double x) const {
  return std::visit(
      [x](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, GaussianMixture>) {
          double acc = 0.0;
          for (std::size_t i = 0; i < law.weights.size(); ++i)
            acc += law.weights[i] * gaussian_pdf(x, law.means[i], law.sds[i]);
          return acc;
        } else if constexpr (std::is_same_v<T, Gamma>) {
          if (x <= 0.0) return 0.0;
          return std::exp((law.shape - 1.0) * std::log(x) - x / law.scale -
                          std::lgamma(law.shape) - law.shape * std::log(law.scale));
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          const double z = (x - law.location) / law.scale;
          return 1.0 / (M_PI * law.scale * (1.0 + z * z));
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          return gaussian_pdf(x, law.mean, law.sd);
        } else if constexpr (std::is_same_v<T, Beta>) {
          if (x <= 0.0 || x >= 1.0) return 0.0;
          const double lb = std::lgamma(law.alpha) + std::lgamma(law.beta) -
                            std::lgamma(law.alpha + law.beta);
          return std::exp((law.alpha - 1.0) * std::log(x) +
                          (law.beta - 1.0) * std::log1p(-x) - lb);
        } else {
          throw UnsupportedError("atomic law has no density");
        }
      },
      variant_);
}

std::string Law::to_string() const {
  return std::visit(
      [](const auto& law) -> std::string {
        using T = std::decay_t<decltype(law)>;
        std::string out;
        if constexpr (std::is_same_v<T, GaussianMixture>) {
          out = "mixture(";
          for (std::size_t i = 0; i < law.weights.size(); ++i) {
            if (i > 0) out += ", ";
            format_num(out, law.weights[i]);
            out += ":N(";
            format_num(out, law.means[i]);
            out += ",";
            format_num(out, law.sds[i]);
            out += ")";
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, Gamma>) {
          out = "gamma(";
          format_num(out, law.shape);
          out += ",";
          format_num(out, law.scale);
          out += ")";
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          out = "cauchy(";
          format_num(out, law.location);
          out += ",";
          format_num(out, law.scale);
          out += ")";
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          out = "N(";
          format_num(out, law.mean);
          out += ",";
          format_num(out, law.sd);
          out += ")";
        } else if constexpr (std::is_same_v<T, Beta>) {
          out = "beta(";
          format_num(out, law.alpha);
          out += ",";
          format_num(out, law.beta);
          out += ")";
        } else if constexpr (std::is_same_v<T, PointMass>) {
          out = "pointmass(";
          format_num(out, law.x0);
          out += ")";
        } else {
          out = "none";
        }
        return out;
      },
      variant_);
}

bool Law::operator==(const Law& other) const { return to_string() == other.to_string(); }

namespace {

// --- law literal parser ------------------------------------------------

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw ConfigError("expected '" + std::string(1, c) + "' in law literal: " + s);
  }
  double number() {
    skip_ws();
    std::size_t end = pos;
    while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) ||
                              s[end] == '+' || s[end] == '-' || s[end] == '.' ||
                              s[end] == 'e' || s[end] == 'E'))
      ++end;
    if (end == pos) throw ConfigError("expected a number in law literal: " + s);
    std::size_t used = 0;
    const double v = std::stod(s.substr(pos, end - pos), &used);
    pos += used;
    return v;
  }
  std::string ident() {
    skip_ws();
    std::size_t end = pos;
    while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) ||
                              s[end] == '_'))
      ++end;
    std::string out = s.substr(pos, end - pos);
    pos = end;
    return out;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
};

Law parse_component(Cursor& cur) {
  const std::string name = cur.ident();
  if (name == "none") return Law::degenerate0();
  cur.expect('(');
  if (name == "N") {
    const double mean = cur.number();
    cur.expect(',');
    const double sd = cur.number();
    cur.expect(')');
    return Law::gaussian(mean, sd);
  }
  if (name == "gamma") {
    const double shape = cur.number();
    cur.expect(',');
    const double scale = cur.number();
    cur.expect(')');
    return Law::gamma(shape, scale);
  }
  if (name == "cauchy") {
    const double loc = cur.number();
    cur.expect(',');
    const double scale = cur.number();
    cur.expect(')');
    return Law::cauchy(loc, scale);
  }
  if (name == "beta") {
    const double a = cur.number();
    cur.expect(',');
    const double b = cur.number();
    cur.expect(')');
    return Law::beta(a, b);
  }
  if (name == "pointmass") {
    const double x0 = cur.number();
    cur.expect(')');
    return Law::point_mass(x0);
  }
  throw ConfigError("unknown law name '" + name + "'");
}

} // namespace

Law parse_law(const std::string& text) {
  Cursor cur{text};
  cur.skip_ws();
  // leading lowercase name; mixture handled here, components elsewhere
  const std::size_t mark = cur.pos;
  const std::string name = cur.ident();
  if (name == "mixture") {
    cur.expect('(');
    std::vector<double> weights, means, sds;
    do {
      const double w = cur.number();
      cur.expect(':');
      const Law comp = parse_component(cur);
      const auto* g = std::get_if<Law::Gaussian>(&comp.variant());
      if (g == nullptr)
        throw ConfigError("mixture components must be gaussian N(mean,sd)");
      weights.push_back(w);
      means.push_back(g->mean);
      sds.push_back(g->sd);
    } while (cur.eat(','));
    cur.expect(')');
    if (!cur.done()) throw ConfigError("trailing characters in law literal: " + text);
    try {
      return Law::gaussian_mixture(std::move(weights), std::move(means), std::move(sds));
    } catch (const NumericError& e) {
      throw ConfigError(e.what());
    }
  }
  cur.pos = mark;
  try {
    Law law = parse_component(cur);
    if (!cur.done()) throw ConfigError("trailing characters in law literal: " + text);
    return law;
  } catch (const NumericError& e) {
    throw ConfigError(e.what());
  }
}

} // namespace decompound
