#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "vdp/ode.hpp"

namespace vdp {

// Stroboscopic sample set: (x, y) at t = t_min + k*T, T = 2*pi/omega.
struct PoincareSection {
    Params params;
    std::vector<std::array<double, 2>> points;
    double t_min = 0.0;
    double t_max = 0.0;
    double stride = 0.0;  // forcing period T
};

struct PeriodVerdict {
    enum class Kind { Locked, Drifting };
    Kind kind = Kind::Drifting;
    int m = 0;  // subharmonic order when Locked
    int clusters = 0;
    double tolerance = 0.0;

    bool locked() const { return kind == Kind::Locked; }
};

enum class ScanAxis { B, Omega };

struct BifurcationRow {
    double param_value = 0.0;
    std::vector<double> poincare_x;
    PeriodVerdict verdict;
};

struct BifurcationData {
    ScanAxis axis = ScanAxis::B;
    std::vector<BifurcationRow> rows;
};

struct LyapunovEstimate {
    double lambda = 0.0;  // per unit time
    double stderr_ = 0.0;
    int n_renorm = 0;
};

struct DivergenceResult {
    std::vector<double> series1;         // x(t) of the reference run
    std::vector<double> series2;         // x(t) of the perturbed run
    std::vector<double> log_separation;  // ln|separation| per sample (-inf when delta = 0)
    double dt = 0.0;
};

struct ScanOptions {
    std::size_t n_samples = 50;
    double transient = 0.0;          // in time units; 0 -> 500 forcing periods
    bool continuation = false;       // reuse previous row's final state as next init
    unsigned jobs = 1;
    double cluster_tol = 1e-3;
    double dt = 0.0;                 // 0 -> T/1000
};

PoincareSection poincare(const Params& params, const State& init, double t_transient,
                         std::size_t n_points, double dt);

// Greedy (x, y) clustering with radius tol; Locked(m) iff the visit sequence
// is exactly cyclic with period m = cluster count <= points/2.
PeriodVerdict detect_period(const PoincareSection& section, double tol = 1e-3);

BifurcationData bifurcation_scan(ScanAxis axis, double lo, double hi, double step,
                                 Params fixed, const State& init,
                                 const ScanOptions& opts = {});

using PlanarField = std::function<Derivative(double, double, double)>;

// Benettin two-trajectory estimate of the largest Lyapunov exponent for an
// arbitrary planar field (tests inject linear fields through this entry).
LyapunovEstimate lyapunov_max_field(const PlanarField& field, const State& init,
                                    double d0, double renorm_interval, int n_renorm,
                                    double transient, double dt);

LyapunovEstimate lyapunov_max(const Params& params, const State& init, double d0,
                              double renorm_interval, int n_renorm, double transient,
                              double dt = 0.0);

DivergenceResult divergence_experiment(const Params& params, const State& init,
                                       double delta, double t_span, double dt = 0.0);

// Levinson's descending waveform (3 - d) e^{-rho (t - t1)} - d cos t.
std::vector<double> levinson_template(double d, double rho, double t1,
                                      const std::vector<double>& t_grid);

void write_bifurcation_csv(std::ostream& points_out, std::ostream& periods_out,
                           const BifurcationData& data);

}  // namespace vdp
