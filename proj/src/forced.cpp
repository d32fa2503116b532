#include "vdp/forced.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

namespace vdp {

namespace {

constexpr double kBlowupGuard = 1e6;
constexpr double kDefaultTransientPeriods = 500.0;

struct Stepper {
    // Shares the arithmetic of integrate(): time is reconstructed as
    // t0 + i*dt so stroboscopic samples match Trajectory samples exactly.
    SystemForm form;
    const Params& p;
    double t0;
    double dt;
    double x, y;
    std::size_t i = 0;

    Stepper(SystemForm f, const Params& params, const State& init, double step)
        : form(f), p(params), t0(init.t), dt(step), x(init.x), y(init.y) {}

    void step() {
        auto field = [&](double t, double xx, double yy) {
            return rhs(form, State{t, xx, yy}, p);
        };
        rk4_step(field, t0 + static_cast<double>(i) * dt, dt, x, y);
        ++i;
        if (!std::isfinite(x) || !std::isfinite(y) || std::fabs(x) > kBlowupGuard ||
            std::fabs(y) > kBlowupGuard)
            throw NonFiniteError("solution blew up at t = " + std::to_string(time()));
    }

    double time() const { return t0 + static_cast<double>(i) * dt; }
};

struct SectionWithFinal {
    PoincareSection section;
    State final_state;
};

SectionWithFinal poincare_impl(const Params& params, const State& init, double t_transient,
                               std::size_t n_points, double dt) {
    params.validate();
    if (params.b <= 0)
        throw DomainError("poincare: b > 0 required (stroboscopic period undefined)");
    if (n_points < 1) throw DomainError("poincare: n_points >= 1");
    const double T = params.forcing_period();
    if (dt <= 0) dt = T / 1000.0;
    // Snap dt so sampling instants hit grid points exactly.
    const auto steps_per_period =
        static_cast<std::size_t>(std::max(1.0, std::round(T / dt)));
    dt = T / static_cast<double>(steps_per_period);
    const auto transient_periods =
        static_cast<std::size_t>(std::ceil(std::max(0.0, t_transient) / T));

    PoincareSection sec;
    sec.params = params;
    sec.stride = T;
    sec.t_min = init.t + static_cast<double>(transient_periods) * T;
    sec.t_max = sec.t_min + static_cast<double>(n_points - 1) * T;
    sec.points.reserve(n_points);

    Stepper st(SystemForm::ForcedStandard, params, init, dt);
    const std::size_t transient_steps = transient_periods * steps_per_period;
    for (std::size_t i = 0; i < transient_steps; ++i) st.step();
    sec.points.push_back({st.x, st.y});
    for (std::size_t k = 1; k < n_points; ++k) {
        for (std::size_t i = 0; i < steps_per_period; ++i) st.step();
        sec.points.push_back({st.x, st.y});
    }
    return {std::move(sec), State{st.time(), st.x, st.y}};
}

}  // namespace

PoincareSection poincare(const Params& params, const State& init, double t_transient,
                         std::size_t n_points, double dt) {
    return poincare_impl(params, init, t_transient, n_points, dt).section;
}

PeriodVerdict detect_period(const PoincareSection& section, double tol) {
    const auto& pts = section.points;
    PeriodVerdict v;
    v.tolerance = tol;
    if (pts.empty()) return v;

    // Greedy clustering: a point joins the first cluster whose seed lies
    // within tol (Euclidean), otherwise it seeds a new cluster.
    std::vector<std::array<double, 2>> seeds;
    std::vector<int> visits;
    visits.reserve(pts.size());
    for (const auto& p : pts) {
        int id = -1;
        for (std::size_t c = 0; c < seeds.size(); ++c) {
            const double dx = p[0] - seeds[c][0];
            const double dy = p[1] - seeds[c][1];
            if (std::hypot(dx, dy) <= tol) {
                id = static_cast<int>(c);
                break;
            }
        }
        if (id < 0) {
            id = static_cast<int>(seeds.size());
            seeds.push_back(p);
        }
        visits.push_back(id);
    }

    const int m = static_cast<int>(seeds.size());
    v.clusters = m;
    if (m <= static_cast<int>(pts.size()) / 2) {
        bool cyclic = true;
        for (std::size_t i = 0; i < visits.size(); ++i)
            if (visits[i] != static_cast<int>(i) % m) {
                cyclic = false;
                break;
            }
        if (cyclic) {
            v.kind = PeriodVerdict::Kind::Locked;
            v.m = m;
            return v;
        }
    }
    v.kind = PeriodVerdict::Kind::Drifting;
    return v;
}

BifurcationData bifurcation_scan(ScanAxis axis, double lo, double hi, double step,
                                 Params fixed, const State& init, const ScanOptions& opts) {
    if (!(step > 0) || !(lo < hi)) throw DomainError("bifurcation_scan: need step > 0, lo < hi");

    std::vector<double> grid;
    for (double v = lo; v <= hi + step / 2; v += step) grid.push_back(v);

    BifurcationData data;
    data.axis = axis;
    data.rows.resize(grid.size());

    auto run_row = [&](std::size_t idx, const State& row_init) -> State {
        Params p = fixed;
        (axis == ScanAxis::B ? p.b : p.omega) = grid[idx];
        const double T = p.forcing_period();
        const double transient =
            opts.transient > 0 ? opts.transient : kDefaultTransientPeriods * T;
        auto [sec, fin] = poincare_impl(p, row_init, transient, opts.n_samples, opts.dt);
        BifurcationRow row;
        row.param_value = grid[idx];
        row.poincare_x.reserve(sec.points.size());
        for (const auto& pt : sec.points) row.poincare_x.push_back(pt[0]);
        row.verdict = detect_period(sec, opts.cluster_tol);
        data.rows[idx] = std::move(row);
        return fin;
    };

    if (opts.continuation) {
        State carry = init;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            State fin = run_row(i, carry);
            carry = State{0.0, fin.x, fin.y};  // restart the forcing clock each row
        }
    } else if (opts.jobs <= 1 || grid.size() < 2) {
        for (std::size_t i = 0; i < grid.size(); ++i) run_row(i, init);
    } else {
        const unsigned jobs = std::min<unsigned>(opts.jobs, std::thread::hardware_concurrency());
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < std::max(1u, jobs); ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                    run_row(i, init);
            });
        for (auto& th : pool) th.join();
    }
    return data;
}

LyapunovEstimate lyapunov_max_field(const PlanarField& field, const State& init,
                                    double d0, double renorm_interval, int n_renorm,
                                    double transient, double dt) {
    if (!(d0 > 0)) throw DomainError("lyapunov: d0 must be > 0");
    if (!(dt > 0)) throw InvalidStepError("lyapunov: dt must be > 0");
    if (n_renorm < 100) throw DomainError("lyapunov: n_renorm must be >= 100");
    const auto steps =
        static_cast<std::size_t>(std::max(1.0, std::round(renorm_interval / dt)));
    const double interval = static_cast<double>(steps) * dt;

    double rx = init.x, ry = init.y;
    double cx = init.x + d0, cy = init.y;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            const double t = init.t + static_cast<double>(i) * dt;
            rk4_step(field, t, dt, rx, ry);
            rk4_step(field, t, dt, cx, cy);
            ++i;
            if (!std::isfinite(rx) || !std::isfinite(ry) || std::fabs(rx) > kBlowupGuard ||
                std::fabs(ry) > kBlowupGuard)
                throw NonFiniteError("lyapunov: reference trajectory blew up");
        }
    };

    auto renormalize = [&]() -> double {
        const double d = std::hypot(cx - rx, cy - ry);
        if (d < 1e-300) throw DegenerateSeparation("lyapunov: separation underflow");
        cx = rx + (cx - rx) * d0 / d;
        cy = ry + (cy - ry) * d0 / d;
        return d;
    };

    // Settle onto the attractor, renormalizing on the same cadence so strong
    // transient contraction cannot underflow the separation.
    auto transient_steps =
        static_cast<std::size_t>(std::round(std::max(0.0, transient) / dt));
    while (transient_steps > 0) {
        const std::size_t chunk = std::min(transient_steps, steps);
        advance(chunk);
        renormalize();
        transient_steps -= chunk;
    }

    std::vector<double> growth;
    growth.reserve(static_cast<std::size_t>(n_renorm));
    for (int k = 0; k < n_renorm; ++k) {
        advance(steps);
        growth.push_back(std::log(renormalize() / d0));
    }

    double mean = 0.0;
    for (double g : growth) mean += g;
    mean /= static_cast<double>(growth.size());
    double var = 0.0;
    for (double g : growth) var += (g - mean) * (g - mean);
    var /= static_cast<double>(growth.size() - 1);

    LyapunovEstimate est;
    est.lambda = mean / interval;
    est.stderr_ = std::sqrt(var) / (interval * std::sqrt(static_cast<double>(growth.size())));
    est.n_renorm = n_renorm;
    return est;
}

LyapunovEstimate lyapunov_max(const Params& params, const State& init, double d0,
                              double renorm_interval, int n_renorm, double transient,
                              double dt) {
    params.validate();
    const bool forced = params.b > 0;
    const double T = forced ? params.forcing_period() : 2.0 * std::numbers::pi;
    if (renorm_interval <= 0) renorm_interval = T;
    if (dt <= 0) dt = T / 1000.0;
    PlanarField field = [params](double t, double x, double y) {
        return rhs(SystemForm::ForcedStandard, State{t, x, y}, params);
    };
    return lyapunov_max_field(field, init, d0, renorm_interval, n_renorm, transient, dt);
}

DivergenceResult divergence_experiment(const Params& params, const State& init,
                                       double delta, double t_span, double dt) {
    params.validate();
    if (delta < 0) throw DomainError("divergence_experiment: delta must be >= 0");
    if (!(t_span > 0)) throw DomainError("divergence_experiment: t_span must be > 0");
    const double T = params.b > 0 ? params.forcing_period() : 2.0 * std::numbers::pi;
    if (dt <= 0) dt = T / 1000.0;
    const auto n = static_cast<std::size_t>(std::max(1.0, std::round(t_span / dt)));

    Stepper s1(SystemForm::ForcedStandard, params, init, dt);
    Stepper s2(SystemForm::ForcedStandard, params,
               State{init.t, init.x + delta, init.y + delta}, dt);

    DivergenceResult res;
    res.dt = dt;
    res.series1.reserve(n + 1);
    res.series2.reserve(n + 1);
    res.log_separation.reserve(n + 1);
    auto record = [&] {
        res.series1.push_back(s1.x);
        res.series2.push_back(s2.x);
        const double d = std::hypot(s2.x - s1.x, s2.y - s1.y);
        res.log_separation.push_back(d > 0 ? std::log(d)
                                           : -std::numeric_limits<double>::infinity());
    };
    record();
    for (std::size_t k = 0; k < n; ++k) {
        s1.step();
        s2.step();
        record();
    }
    return res;
}

std::vector<double> levinson_template(double d, double rho, double t1,
                                      const std::vector<double>& t_grid) {
    if (!(d > 0 && d < 1)) throw DomainError("levinson_template: d must lie in (0, 1)");
    if (!(rho > 0)) throw DomainError("levinson_template: rho must be > 0");
    std::vector<double> out;
    out.reserve(t_grid.size());
    for (double t : t_grid)
        out.push_back((3.0 - d) * std::exp(-rho * (t - t1)) - d * std::cos(t));
    return out;
}

void write_bifurcation_csv(std::ostream& points_out, std::ostream& periods_out,
                           const BifurcationData& data) {
    points_out << "param,x\n";
    periods_out << "param,period\n";
    for (const auto& row : data.rows) {
        for (double x : row.poincare_x)
            points_out << format_double(row.param_value) << ',' << format_double(x) << '\n';
        periods_out << format_double(row.param_value) << ','
                    << (row.verdict.locked() ? row.verdict.m : 0) << '\n';
    }
}

}  // namespace vdp
