#include "vdp/ode.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

namespace vdp {

namespace {

constexpr double kBlowupGuard = 1e6;

bool all_finite(double a, double b) { return std::isfinite(a) && std::isfinite(b); }

}  // namespace

void Params::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(omega) || !std::isfinite(theta))
        throw DomainError("Params: all fields must be finite");
    if (a < 0) throw DomainError("Params: a must be >= 0");
    if (b < 0) throw DomainError("Params: b must be >= 0");
    if (b > 0 && omega <= 0) throw DomainError("Params: omega must be > 0 when b > 0");
}

Derivative rhs(SystemForm form, const State& s, const Params& p) {
    Derivative d;
    switch (form) {
        case SystemForm::ForcedStandard:
            d.dx = s.y;
            d.dy = -s.x - p.a * (s.x * s.x - 1.0) * s.y +
                   p.b * std::cos(p.omega * s.t + p.theta);
            break;
        case SystemForm::LienardPlane:
            d.dx = s.y - p.a * (s.x * s.x * s.x / 3.0 - s.x);
            d.dy = -s.x + p.b * std::cos(p.omega * s.t + p.theta);
            break;
        case SystemForm::RelaxationScaled:
            if (p.a <= 0) throw DomainError("RelaxationScaled requires a > 0");
            d.dx = p.a * (s.y - (s.x * s.x * s.x / 3.0 - s.x));
            d.dy = -s.x / p.a;
            break;
        case SystemForm::Transformed: {
            // State carries the slow variables (z1, z2); the fast (x, y) are
            // reconstructed through the van der Pol transformation.
            if (p.b <= 0) throw DomainError("Transformed requires b > 0 (sigma = (omega^2-1)/b)");
            if (p.a <= 0) throw DomainError("Transformed requires a > 0");
            if (p.omega <= 0) throw DomainError("Transformed requires omega > 0");
            const double sigma = (p.omega * p.omega - 1.0) / p.b;
            const double c = std::cos(p.omega * s.t);
            const double sn = std::sin(p.omega * s.t);
            const double x = s.x * sn + s.y * c;
            const double y = p.omega * (s.x * c - s.y * sn);
            const double bracket = sigma * x + (1.0 - x * x) * y +
                                   p.b / p.a * std::cos(p.omega * s.t + p.theta);
            d.dx = p.a / p.omega * bracket * c;
            d.dy = -p.a / p.omega * bracket * sn;
            break;
        }
    }
    if (!all_finite(d.dx, d.dy)) throw NonFiniteError("rhs produced a non-finite derivative");
    return d;
}

Trajectory integrate(SystemForm form, const Params& p, const State& init,
                     double dt, std::size_t n_steps) {
    p.validate();
    if (!(dt > 0)) throw InvalidStepError("integrate: dt must be > 0");
    if (n_steps < 1) throw InvalidStepError("integrate: n_steps must be >= 1");

    Trajectory traj;
    traj.t0 = init.t;
    traj.dt = dt;
    traj.samples.reserve(n_steps + 1);
    traj.samples.push_back({init.x, init.y});

    auto field = [&](double t, double x, double y) {
        return rhs(form, State{t, x, y}, p);
    };

    double x = init.x;
    double y = init.y;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t = traj.time_at(i);
        rk4_step(field, t, dt, x, y);
        if (!all_finite(x, y) || std::fabs(x) > kBlowupGuard || std::fabs(y) > kBlowupGuard)
            throw NonFiniteError("integrate: solution blew up at t = " +
                                 std::to_string(traj.time_at(i + 1)));
        traj.samples.push_back({x, y});
    }
    return traj;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,x,y\n";
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        out << format_double(traj.time_at(i)) << ',' << format_double(traj.samples[i][0])
            << ',' << format_double(traj.samples[i][1]) << '\n';
    }
}

}  // namespace vdp
