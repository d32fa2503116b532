#pragma once

#include <array>
#include <utility>

#include "vdp/errors.hpp"

namespace vdp {

enum class Stability { Stable, Unstable };
enum class SolutionOrder { First, Second };

struct AveragedState {
    double r = 0.0;    // averaged amplitude
    double psi = 0.0;  // averaged phase, radians
};

// Candidate root of the determining equations, in Cartesian and polar form.
struct DeterminingPoint {
    double a1 = 0.0;
    double a2 = 0.0;
    double sigma = 0.0;  // detuning (omega^2 - 1) / b

    double r() const;
    double phi() const;
    static DeterminingPoint from_polar(double r, double phi, double sigma);
};

struct DeterminingSolution {
    DeterminingPoint point;
    double jacobian_det = 0.0;
    int iterations = 0;
};

struct LienardCheck {
    double gamma = 0.0;                 // unique positive root of F
    std::array<bool, 5> conditions{};   // f even, g odd, g>0 for x>0, unique root, sign pattern of F
    bool all() const;
};

// Averaged slow-flow of the autonomous oscillator: f1(r) = r^3/8 - r/2.
double f1_average(double r);

// Closed-form amplitude of the averaged equation dr/dt = (a r / 2)(1 - r^2/4).
double averaged_amplitude(double r0, double a, double t);

Stability equilibrium_stability(double r_eq);

// First- or second-order averaged solution x(t); Second carries the a^2/16
// frequency correction.
double averaged_solution(SolutionOrder order, double r0, double psi0, double a, double t);

// Lienard's theorem conditions for f(x) = a(x^2 - 1), g(x) = x.
LienardCheck lienard_check();

// Unique positive root of r^3 - 4r - 4b/(a omega^2) = 0, to residual 1e-12.
double amplitude_response(double a, double b, double omega);

// Entrainment condition b^2 / (4 (omega^2 - 1)^2) >= 1; zero detuning locks.
bool locking_predicate(double a, double b, double omega);

// Left-hand sides of the determining equations at pt.
std::pair<double, double> determining_residual(const DeterminingPoint& pt, double a,
                                               double b, double omega, double theta);

// Damped Newton on the determining equations; the returned Jacobian
// determinant is the Implicit-Function-Theorem certificate.
DeterminingSolution solve_determining(double a, double b, double omega, double theta,
                                      const DeterminingPoint& initial_guess);

}  // namespace vdp
