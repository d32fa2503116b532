#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <numbers>
#include <vector>

#include "vdp/errors.hpp"

namespace vdp {

// Oscillator parameter set shared by every system form.
struct Params {
    double a = 0.0;      // damping strength
    double b = 0.0;      // forcing amplitude
    double omega = 1.0;  // forcing angular frequency
    double theta = 0.0;  // forcing phase, radians

    // Forcing period 2*pi/omega. Only meaningful when b > 0.
    double forcing_period() const { return 2.0 * std::numbers::pi / omega; }

    void validate() const;
};

struct State {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;  // velocity or Lienard variable, depending on the form
};

enum class SystemForm {
    ForcedStandard,    // xdot = y, ydot = -x + a(1-x^2)y + b cos(wt+theta)
    LienardPlane,      // xdot = y - a(x^3/3 - x), ydot = -x + b cos(wt+theta)
    RelaxationScaled,  // xdot = a(y - (x^3/3 - x)), ydot = -x/a
    Transformed,       // slow variables (z1, z2) of the van der Pol transformation
};

struct Derivative {
    double dx = 0.0;
    double dy = 0.0;
};

// Uniformly sampled solution record. Sample i sits at time t0 + i*dt,
// reconstructed multiplicatively so no drift accumulates over long runs.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<std::array<double, 2>> samples;  // (x, y)

    double time_at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    std::size_t size() const { return samples.size(); }
};

Derivative rhs(SystemForm form, const State& s, const Params& p);

// Classical fixed-step RK4. Deterministic: identical inputs give
// bit-identical trajectories. Aborts with NonFiniteError when |x| or |y|
// exceeds the blow-up guard (1e6) or turns NaN.
Trajectory integrate(SystemForm form, const Params& p, const State& init,
                     double dt, std::size_t n_steps);

// One RK4 step of an arbitrary planar field; used by the integrator and by
// the two-trajectory Lyapunov machinery (which also accepts injected fields).
template <typename Rhs>
inline void rk4_step(Rhs&& f, double t, double h, double& x, double& y) {
    const auto k1 = f(t, x, y);
    const auto k2 = f(t + h / 2, x + h / 2 * k1.dx, y + h / 2 * k1.dy);
    const auto k3 = f(t + h / 2, x + h / 2 * k2.dx, y + h / 2 * k2.dy);
    const auto k4 = f(t + h, x + h * k3.dx, y + h * k3.dy);
    x += h / 6 * (k1.dx + 2 * k2.dx + 2 * k3.dx + k4.dx);
    y += h / 6 * (k1.dy + 2 * k2.dy + 2 * k3.dy + k4.dy);
}

// CSV with header `t,x,y`, shortest round-trip decimal rendering.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace vdp
