#pragma once

#include <cstdint>
#include <string>

#include "decompound/fourier.hpp"
#include "decompound/profile.hpp"
#include "decompound/risk.hpp"
#include "decompound/simulate.hpp"

namespace decompound {

//! All writers emit a provenance comment line
//!   # decompound-kit <version> seed=<seed>
//! then a header row; floats are printed with 17 significant digits and LF
//! line endings so identical runs produce byte-identical files.

void write_density_csv(const std::string& path, std::uint64_t seed,
                       const DensityEstimate& density);

void write_panel_csv(const std::string& path, std::uint64_t seed, const Panel& panel);

void write_increments_csv(const std::string& path, std::uint64_t seed,
                          const IncrementSample& sample);

void write_risk_csv(const std::string& path, std::uint64_t seed, const RiskReport& report);

//! u,re,im[,thresholded]; the flag column marks points zeroed by thresholding.
void write_profile_csv(const std::string& path, std::uint64_t seed,
                       const ComplexProfile& profile,
                       const ComplexProfile* thresholded = nullptr);

void write_mellin_profile_csv(const std::string& path, std::uint64_t seed,
                              const MellinProfile& profile);

} // namespace decompound
