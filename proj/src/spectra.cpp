#include "vdp/spectra.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>

namespace vdp {

namespace {

std::mutex g_fftw_mutex;  // FFTW plan creation is not thread-safe

std::size_t largest_pow2_below(std::size_t n) {
    std::size_t p = 1;
    while (p * 2 <= n) p *= 2;
    return p;
}

}  // namespace

Spectrum power_spectrum(const std::vector<double>& series, double dt) {
    if (series.size() < 64) throw TooShortError("power_spectrum: need at least 64 samples");
    if (!(dt > 0)) throw InvalidStepError("power_spectrum: dt must be > 0");
    const std::size_t n = largest_pow2_below(series.size());

    std::vector<double> in(series.begin(), series.begin() + static_cast<long>(n));
    std::vector<fftw_complex> out(n / 2 + 1);
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(),
                                              FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    Spectrum spec;
    spec.sample_dt = dt;
    spec.n = n;
    const std::size_t half = n / 2;
    spec.freqs.reserve(half);
    spec.mags.reserve(half);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const double df = 1.0 / (static_cast<double>(n) * dt);
    for (std::size_t k = 0; k < half; ++k) {
        spec.freqs.push_back(static_cast<double>(k) * df);
        spec.mags.push_back(std::hypot(out[k][0], out[k][1]) * scale);
    }
    return spec;
}

PeakList detect_peaks(const Spectrum& spec, double minp_pct) {
    if (!(minp_pct > 0)) throw DomainError("detect_peaks: minp_pct must be > 0");
    PeakList list;
    list.threshold_pct = minp_pct;
    if (spec.mags.size() < 3) return list;

    const double max_mag = *std::max_element(spec.mags.begin(), spec.mags.end());
    if (max_mag <= 0) return list;
    const double floor = minp_pct / 100.0 * max_mag;

    for (std::size_t k = 1; k + 1 < spec.mags.size(); ++k) {
        // Leftmost-bin plateau rule: strict rise on the left, non-drop on the right.
        if (spec.mags[k] > spec.mags[k - 1] && spec.mags[k] >= spec.mags[k + 1] &&
            spec.mags[k] >= floor)
            list.peaks.push_back({spec.freqs[k], spec.mags[k], spec.mags[k] / max_mag});
    }
    std::stable_sort(list.peaks.begin(), list.peaks.end(),
                     [](const Peak& a, const Peak& b) { return a.mag > b.mag; });
    return list;
}

int count_significant(const Spectrum& spec, double minp_pct) {
    return static_cast<int>(detect_peaks(spec, minp_pct).peaks.size());
}

RegimeLabel classify(const Spectrum& spec, const ClassifyConfig& cfg) {
    const PeakList peaks = detect_peaks(spec, cfg.minp_pct);
    const int count = static_cast<int>(peaks.peaks.size());

    // Energy fraction outside peak bins +-1, DC excluded.
    std::vector<bool> near_peak(spec.mags.size(), false);
    for (const auto& pk : peaks.peaks) {
        const auto k = static_cast<std::size_t>(
            std::llround(pk.freq / (spec.freqs.size() > 1 ? spec.freqs[1] : 1.0)));
        for (std::size_t j = (k > 0 ? k - 1 : 0); j <= k + 1 && j < near_peak.size(); ++j)
            near_peak[j] = true;
    }
    double total = 0.0, background = 0.0;
    for (std::size_t k = 1; k < spec.mags.size(); ++k) {
        const double e = spec.mags[k] * spec.mags[k];
        total += e;
        if (!near_peak[k]) background += e;
    }
    const double beta = total > 0 ? background / total : 0.0;

    if (count >= cfg.chaotic_count_min || beta >= cfg.background_fraction)
        return RegimeLabel::Chaotic;

    if (count <= cfg.periodic_count_max && !peaks.peaks.empty()) {
        const double f0 = peaks.peaks.front().freq;
        const double bin = spec.freqs.size() > 1 ? spec.freqs[1] : 0.0;
        bool harmonic = f0 > 0;
        for (const auto& pk : peaks.peaks) {
            const double mult = std::max(1.0, std::round(pk.freq / f0));
            if (std::fabs(pk.freq - mult * f0) > bin) {
                harmonic = false;
                break;
            }
        }
        if (harmonic) return RegimeLabel::Periodic;
    }
    return RegimeLabel::QuasiPeriodic;
}

std::vector<double> sample_series(const Params& params, const State& init,
                                  const SpectrumSampling& sampling, double* sample_dt) {
    params.validate();
    if (params.b <= 0) throw DomainError("sample_series: forcing required");
    if (sampling.samples_per_period <= 0 || sampling.steps_per_period <= 0 ||
        sampling.steps_per_period % sampling.samples_per_period != 0)
        throw DomainError("sample_series: steps_per_period must be a positive multiple of samples_per_period");
    const double T = params.forcing_period();
    const double dt = T / sampling.steps_per_period;
    const std::size_t stride =
        static_cast<std::size_t>(sampling.steps_per_period / sampling.samples_per_period);
    const auto transient_steps = static_cast<std::size_t>(
        std::llround(sampling.transient_periods * sampling.steps_per_period));
    const auto window_steps = static_cast<std::size_t>(
        std::llround(sampling.window_periods * sampling.steps_per_period));

    std::vector<double> series;
    series.reserve(window_steps / stride + 1);

    // Incremental stepping with the trajectory time convention.
    double x = init.x, y = init.y;
    auto field = [&](double t, double xx, double yy) {
        return rhs(SystemForm::ForcedStandard, State{t, xx, yy}, params);
    };
    for (std::size_t i = 0; i < transient_steps + window_steps; ++i) {
        if (i >= transient_steps && (i - transient_steps) % stride == 0) series.push_back(x);
        rk4_step(field, init.t + static_cast<double>(i) * dt, dt, x, y);
        if (!std::isfinite(x) || !std::isfinite(y) || std::fabs(x) > 1e6 || std::fabs(y) > 1e6)
            throw NonFiniteError("sample_series: solution blew up");
    }
    series.push_back(x);
    if (sample_dt) *sample_dt = dt * static_cast<double>(stride);
    return series;
}

std::vector<SweepRow> spectrum_sweep(ScanAxis axis, double lo, double hi, int n_values,
                                     Params fixed, const State& init,
                                     const SpectrumSampling& sampling) {
    if (n_values < 1 || !(lo <= hi)) throw DomainError("spectrum_sweep: invalid range");
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(n_values));
    for (int i = 0; i < n_values; ++i) {
        const double v = n_values == 1
                             ? lo
                             : lo + (hi - lo) * static_cast<double>(i) / (n_values - 1);
        Params p = fixed;
        (axis == ScanAxis::B ? p.b : p.omega) = v;
        double dt = 0.0;
        auto series = sample_series(p, init, sampling, &dt);
        rows.push_back({v, power_spectrum(series, dt)});
    }
    return rows;
}

const char* regime_name(RegimeLabel label) {
    switch (label) {
        case RegimeLabel::Periodic: return "periodic";
        case RegimeLabel::QuasiPeriodic: return "quasi-periodic";
        case RegimeLabel::Chaotic: return "chaotic";
    }
    return "unknown";
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spec) {
    const double max_mag =
        spec.mags.empty() ? 0.0 : *std::max_element(spec.mags.begin(), spec.mags.end());
    out << "freq,mag,rel\n";
    for (std::size_t k = 0; k < spec.mags.size(); ++k)
        out << format_double(spec.freqs[k]) << ',' << format_double(spec.mags[k]) << ','
            << format_double(max_mag > 0 ? spec.mags[k] / max_mag : 0.0) << '\n';
}

void write_peaks_csv(std::ostream& out, const PeakList& peaks) {
    out << "freq,mag,rel\n";
    for (const auto& pk : peaks.peaks)
        out << format_double(pk.freq) << ',' << format_double(pk.mag) << ','
            << format_double(pk.rel) << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "param,freq,mag\n";
    for (const auto& row : rows)
        for (std::size_t k = 0; k < row.spectrum.mags.size(); ++k)
            out << format_double(row.param_value) << ',' << format_double(row.spectrum.freqs[k])
                << ',' << format_double(row.spectrum.mags[k]) << '\n';
}

}  // namespace vdp
