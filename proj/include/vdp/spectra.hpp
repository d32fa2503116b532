#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "vdp/errors.hpp"
#include "vdp/forced.hpp"
#include "vdp/ode.hpp"

namespace vdp {

// One-sided FFT magnitudes; freqs[k] = k / (n * dt), mags scaled by 1/sqrt(n)
// so relative peak strengths are sampling-invariant.
struct Spectrum {
    std::vector<double> freqs;
    std::vector<double> mags;
    double sample_dt = 0.0;
    std::size_t n = 0;  // FFT length actually used (power of two)
};

struct Peak {
    double freq = 0.0;
    double mag = 0.0;
    double rel = 0.0;  // mag / max mag, in (0, 1]
};

struct PeakList {
    std::vector<Peak> peaks;  // sorted by magnitude, descending
    double threshold_pct = 0.0;
};

enum class RegimeLabel { Periodic, QuasiPeriodic, Chaotic };

struct ClassifyConfig {
    double minp_pct = 0.5;
    int periodic_count_max = 15;
    int chaotic_count_min = 300;
    double background_fraction = 0.2;
};

// Magnitude spectrum of the series truncated to the largest power of two.
Spectrum power_spectrum(const std::vector<double>& series, double dt);

// Interior local maxima at or above minp_pct% of the global maximum.
// Plateaus count at their leftmost bin only.
PeakList detect_peaks(const Spectrum& spec, double minp_pct);

int count_significant(const Spectrum& spec, double minp_pct = 0.5);

RegimeLabel classify(const Spectrum& spec, const ClassifyConfig& cfg = {});

struct SweepRow {
    double param_value = 0.0;
    Spectrum spectrum;
};

// Sampling protocol for spectra of forced runs: settle for transient_periods
// forcing periods, then retain samples_per_period points per period over
// window_periods periods. Integration runs on a finer shared grid.
struct SpectrumSampling {
    double transient_periods = 9000.0;
    double window_periods = 1000.0;
    int samples_per_period = 20;
    int steps_per_period = 1000;  // integration grid; must be a multiple of samples_per_period
};

// x(t) series of the forced oscillator under the given sampling protocol.
std::vector<double> sample_series(const Params& params, const State& init,
                                  const SpectrumSampling& sampling, double* sample_dt = nullptr);

// One spectrum per grid value of the swept parameter; every row shares the
// frequency axis of the fixed parameter set.
std::vector<SweepRow> spectrum_sweep(ScanAxis axis, double lo, double hi, int n_values,
                                     Params fixed, const State& init,
                                     const SpectrumSampling& sampling);

const char* regime_name(RegimeLabel label);

void write_spectrum_csv(std::ostream& out, const Spectrum& spec);
void write_peaks_csv(std::ostream& out, const PeakList& peaks);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace vdp
