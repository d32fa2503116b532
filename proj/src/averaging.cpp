#include "vdp/averaging.hpp"

#include <algorithm>
#include <cmath>

namespace vdp {

namespace {
constexpr double kAlgebraicTol = 1e-12;
constexpr double kNewtonTol = 1e-10;
constexpr int kNewtonBudget = 200;
}  // namespace

double DeterminingPoint::r() const { return std::hypot(a1, a2); }

double DeterminingPoint::phi() const { return std::atan2(a2, a1); }

DeterminingPoint DeterminingPoint::from_polar(double r, double phi, double sigma) {
    return {r * std::cos(phi), r * std::sin(phi), sigma};
}

bool LienardCheck::all() const {
    return std::all_of(conditions.begin(), conditions.end(), [](bool c) { return c; });
}

double f1_average(double r) {
    if (r < 0) throw DomainError("f1_average: r must be >= 0");
    return r * r * r / 8.0 - r / 2.0;
}

double averaged_amplitude(double r0, double a, double t) {
    if (r0 < 0) throw DomainError("averaged_amplitude: r0 must be >= 0");
    if (r0 == 0) return 0.0;
    // r(t) = r0 e^{at/2} / sqrt(1 + (r0^2/4)(e^{at} - 1)); stable for large t
    // when rewritten against e^{-at}.
    const double em = std::exp(-a * t);
    return r0 / std::sqrt(em + r0 * r0 / 4.0 * (1.0 - em));
}

Stability equilibrium_stability(double r_eq) {
    if (r_eq == 0.0) return Stability::Unstable;
    if (r_eq == 2.0) return Stability::Stable;
    throw NotEquilibriumError("equilibrium_stability: r must be 0 or 2");
}

double averaged_solution(SolutionOrder order, double r0, double psi0, double a, double t) {
    const double amp = averaged_amplitude(r0, a, t);
    const double freq = order == SolutionOrder::First ? 1.0 : 1.0 - a * a / 16.0;
    return amp * std::cos(freq * t + psi0);
}

LienardCheck lienard_check() {
    // f(x) = a(x^2 - 1), g(x) = x, F(x) = a(x^3/3 - x); a > 0 assumed.
    LienardCheck chk;
    chk.gamma = std::sqrt(3.0);

    auto F = [](double x) { return x * x * x / 3.0 - x; };  // a = 1; sign unaffected

    // f even, g odd, g > 0 for x > 0 hold identically; verify on a sample grid.
    bool f_even = true, g_odd = true, g_pos = true;
    for (int i = 1; i <= 40; ++i) {
        const double x = 0.1 * i;
        f_even &= std::fabs((x * x - 1.0) - ((-x) * (-x) - 1.0)) < kAlgebraicTol;
        g_odd &= std::fabs(x + (-x)) < kAlgebraicTol;
        g_pos &= x > 0;
    }
    chk.conditions[0] = f_even;
    chk.conditions[1] = g_odd;
    chk.conditions[2] = g_pos;
    // F vanishes on (0, inf) only at sqrt(3).
    chk.conditions[3] = std::fabs(F(chk.gamma)) < kAlgebraicTol;
    // F < 0 on (0, gamma), F > 0 and increasing beyond gamma.
    bool sign_ok = true;
    for (int i = 1; i <= 100; ++i) {
        const double x = 0.05 * i;
        if (x < chk.gamma - 1e-9) sign_ok &= F(x) < 0;
        if (x > chk.gamma + 1e-9) sign_ok &= F(x) > 0 && (x * x - 1.0) > 0;
    }
    chk.conditions[4] = sign_ok;
    return chk;
}

double amplitude_response(double a, double b, double omega) {
    if (a <= 0 || b <= 0 || omega <= 0)
        throw DomainError("amplitude_response: a, b, omega must be > 0");
    const double c = 4.0 * b / (a * omega * omega);
    auto f = [c](double r) { return r * r * r - 4.0 * r - c; };
    auto df = [](double r) { return 3.0 * r * r - 4.0; };

    // Unique positive root lies in [2, hi]: f(2) = -c < 0, and f grows cubically.
    double lo = 2.0;
    double hi = 2.0 + std::max(1.0, c);
    while (f(hi) < 0) hi *= 2.0;

    double r = 0.5 * (lo + hi);
    for (int it = 0; it < kNewtonBudget; ++it) {
        const double fr = f(r);
        if (std::fabs(fr) <= kAlgebraicTol) return r;
        (fr < 0 ? lo : hi) = r;
        const double step = fr / df(r);
        double next = r - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection safeguard
        r = next;
    }
    if (std::fabs(f(r)) <= kAlgebraicTol) return r;
    throw ConvergenceFailure("amplitude_response: root-finder exceeded iteration budget");
}

bool locking_predicate(double a, double b, double omega) {
    if (a <= 0 || b <= 0 || omega <= 0)
        throw DomainError("locking_predicate: a, b, omega must be > 0");
    const double detune = omega * omega - 1.0;
    if (detune == 0.0) return true;
    return b * b / (4.0 * detune * detune) >= 1.0;
}

std::pair<double, double> determining_residual(const DeterminingPoint& pt, double a,
                                               double b, double omega, double theta) {
    if (a == 0) throw DomainError("determining_residual: a must be nonzero");
    if (omega <= 0) throw DomainError("determining_residual: omega must be > 0");
    const double w2 = omega * omega;
    const double common = 1.0 - (pt.a1 * pt.a1 + pt.a2 * pt.a2) / 4.0;
    const double g1 = pt.sigma / w2 * pt.a2 + common * pt.a1 + b / (a * w2) * std::cos(theta);
    const double g2 = -pt.sigma / w2 * pt.a1 + common * pt.a2 + b / (a * w2) * std::sin(theta);
    return {g1, g2};
}

DeterminingSolution solve_determining(double a, double b, double omega, double theta,
                                      const DeterminingPoint& initial_guess) {
    if (a == 0) throw DomainError("solve_determining: a must be nonzero");
    if (b <= 0) throw DomainError("solve_determining: b must be > 0");
    const double w2 = omega * omega;
    const double sigma = (w2 - 1.0) / b;

    DeterminingPoint pt = initial_guess;
    pt.sigma = sigma;

    auto jacobian = [&](const DeterminingPoint& q) {
        // d(g1,g2)/d(a1,a2)
        const double j11 = 1.0 - (3.0 * q.a1 * q.a1 + q.a2 * q.a2) / 4.0;
        const double j12 = sigma / w2 - q.a1 * q.a2 / 2.0;
        const double j21 = -sigma / w2 - q.a1 * q.a2 / 2.0;
        const double j22 = 1.0 - (q.a1 * q.a1 + 3.0 * q.a2 * q.a2) / 4.0;
        return std::array<double, 4>{j11, j12, j21, j22};
    };

    for (int it = 1; it <= kNewtonBudget; ++it) {
        auto [g1, g2] = determining_residual(pt, a, b, omega, theta);
        const double res = std::hypot(g1, g2);
        const auto J = jacobian(pt);
        const double det = J[0] * J[3] - J[1] * J[2];
        if (res <= kNewtonTol) {
            if (std::fabs(det) < 1e-8)
                throw SingularJacobian("solve_determining: Jacobian determinant below 1e-8");
            return {pt, det, it};
        }
        if (det == 0.0)
            throw SingularJacobian("solve_determining: singular Jacobian during iteration");
        const double da1 = (g1 * J[3] - g2 * J[1]) / det;
        const double da2 = (g2 * J[0] - g1 * J[2]) / det;
        // Damped step: halve until the residual decreases.
        double lambda = 1.0;
        for (int k = 0; k < 30; ++k) {
            DeterminingPoint trial{pt.a1 - lambda * da1, pt.a2 - lambda * da2, sigma};
            auto [t1, t2] = determining_residual(trial, a, b, omega, theta);
            if (std::hypot(t1, t2) < res) {
                pt = trial;
                break;
            }
            lambda /= 2.0;
            if (k == 29) pt = trial;
        }
    }
    throw ConvergenceFailure("solve_determining: Newton exceeded iteration budget");
}

}  // namespace vdp
