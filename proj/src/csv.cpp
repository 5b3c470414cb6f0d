#include "decompound/csv.hpp"

#include <cstdio>
#include <fstream>

#include "decompound/errors.hpp"
#include "decompound/version.hpp"

namespace decompound {

namespace {

class CsvFile {
public:
  CsvFile(const std::string& path, std::uint64_t seed) : path_(path) {
    out_.open(path, std::ios::binary); // binary: LF endings everywhere
    if (!out_) throw IoError("cannot open '" + path + "' for writing");
    out_ << "# decompound-kit " << kVersion << " seed=" << seed << "\n";
  }
  ~CsvFile() = default;

  void header(const char* line) { out_ << line << "\n"; }

  void field(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out_ << buf;
  }
  void field(std::size_t v) { out_ << v; }
  void sep() { out_ << ','; }
  void endrow() { out_ << '\n'; }

  void close() {
    out_.close();
    if (!out_) throw IoError("failed writing '" + path_ + "'");
  }

private:
  std::string path_;
  std::ofstream out_;
};

} // namespace

void write_density_csv(const std::string& path, std::uint64_t seed,
                       const DensityEstimate& density) {
  CsvFile f(path, seed);
  f.header("x,f_hat");
  for (std::size_t i = 0; i < density.size(); ++i) {
    f.field(density.x[i]);
    f.sep();
    f.field(density.values[i]);
    f.endrow();
  }
  f.close();
}

void write_panel_csv(const std::string& path, std::uint64_t seed, const Panel& panel) {
  CsvFile f(path, seed);
  f.header("channel,time,value");
  const std::size_t n = panel.times.size();
  for (std::size_t j = 0; j < panel.channels(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      f.field(j);
      f.sep();
      f.field(panel.times[i]);
      f.sep();
      f.field(panel.at(j, i));
      f.endrow();
    }
  }
  f.close();
}

void write_increments_csv(const std::string& path, std::uint64_t seed,
                          const IncrementSample& sample) {
  CsvFile f(path, seed);
  f.header("k,value");
  for (std::size_t k = 0; k < sample.increments.size(); ++k) {
    f.field(k + 1);
    f.sep();
    f.field(sample.increments[k]);
    f.endrow();
  }
  f.close();
}

void write_risk_csv(const std::string& path, std::uint64_t seed, const RiskReport& report) {
  CsvFile f(path, seed);
  f.header("param,mise,stderr");
  for (std::size_t i = 0; i < report.values.size(); ++i) {
    f.field(report.values[i]);
    f.sep();
    f.field(report.mise[i]);
    f.sep();
    f.field(report.std_error[i]);
    f.endrow();
  }
  f.close();
}

void write_profile_csv(const std::string& path, std::uint64_t seed,
                       const ComplexProfile& profile, const ComplexProfile* thresholded) {
  CsvFile f(path, seed);
  f.header(thresholded ? "u,re,im,thresholded" : "u,re,im");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    f.field(profile.grid.point(i));
    f.sep();
    f.field(profile.values[i].real());
    f.sep();
    f.field(profile.values[i].imag());
    if (thresholded) {
      f.sep();
      f.field(static_cast<std::size_t>(thresholded->values[i] == Complex(0.0, 0.0) ? 1 : 0));
    }
    f.endrow();
  }
  f.close();
}

void write_mellin_profile_csv(const std::string& path, std::uint64_t seed,
                              const MellinProfile& profile) {
  CsvFile f(path, seed);
  f.header("t,re,im");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    f.field(profile.grid.point(i));
    f.sep();
    f.field(profile.values[i].real());
    f.sep();
    f.field(profile.values[i].imag());
    f.endrow();
  }
  f.close();
}

} // namespace decompound
