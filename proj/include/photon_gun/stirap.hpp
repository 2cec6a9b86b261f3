// stirap.hpp - stimulated Raman adiabatic passage in a three-level emitter
//
// Levels: |1> ground, |2> metastable emitting level, |3> lossy intermediate.
// Pump Omega13 couples 1-3, Stokes Omega23 couples 2-3. Both fields share the
// one-photon detuning Delta (two-photon resonance). Decay out of |3> (and
// optionally |2>) is an anti-Hermitian term; the decayed probability is
// integrated as a separate state component so that
//     p1 + p2 + p3 + loss = 1
// is a check on the integrator rather than a definition.
//
// Time and rate units are arbitrary but must agree (e.g. ns and rad/ns).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "photon_gun/error.hpp"
#include "photon_gun/numerics.hpp"

namespace photon_gun {

struct ThreeLevelSystem {
    double gamma3 = 0.0;          // total decay rate of |3>
    double branching_ratio = 6.0; // Gamma(3->1) / Gamma(3->2); informational in the state-vector model
    double detuning = 0.0;        // one-photon detuning of both fields from |3>
    double gamma2 = 0.0;          // decay rate of |2>

    void validate() const
    {
        require(gamma3 >= 0.0 && std::isfinite(gamma3), "gamma3 must be >= 0");
        require(branching_ratio > 0.0, "branching ratio must be > 0");
        require(gamma2 >= 0.0 && std::isfinite(gamma2), "gamma2 must be >= 0");
        require(std::isfinite(detuning), "detuning must be finite");
    }
};

enum class PulseOrdering { counterintuitive, intuitive };

inline std::string to_string(PulseOrdering o)
{
    return o == PulseOrdering::counterintuitive ? "counterintuitive" : "intuitive";
}

/// Gaussian pulses exp(-(t - t_c)^2 / tau^2) centred at -+separation/2.
/// Counterintuitive ordering: Omega23 (Stokes) peaks first.
struct PulsePair {
    double omega13_peak = 0.0;
    double omega23_peak = 0.0;
    double tau = 1.0;
    double separation = 1.0;
    PulseOrdering ordering = PulseOrdering::counterintuitive;

    void validate() const
    {
        require(tau > 0.0 && std::isfinite(tau), "pulse width tau must be > 0");
        require(std::isfinite(omega13_peak) && std::isfinite(omega23_peak),
                "Rabi frequencies must be finite");
        require(omega13_peak >= 0.0 && omega23_peak >= 0.0, "Rabi frequencies must be >= 0");
        require(std::isfinite(separation) && separation >= 0.0, "separation must be >= 0");
    }

    double centre13() const
    {
        return ordering == PulseOrdering::counterintuitive ? 0.5 * separation : -0.5 * separation;
    }
    double centre23() const { return -centre13(); }

    /// Pulses of equal peak Rabi frequency with tau*sqrt(O13^2 + O23^2) = a.
    static PulsePair from_adiabaticity(double a, double tau, double separation,
                                       PulseOrdering ordering = PulseOrdering::counterintuitive)
    {
        const double peak = a / (tau * std::sqrt(2.0));
        return {peak, peak, tau, separation, ordering};
    }
};

struct Envelope {
    double omega13 = 0.0;
    double omega23 = 0.0;
};

inline Envelope pulse_envelope(const PulsePair& pair, double t)
{
    const auto gauss = [&](double centre) {
        const double x = (t - centre) / pair.tau;
        return std::exp(-x * x);
    };
    return {pair.omega13_peak * gauss(pair.centre13()), pair.omega23_peak * gauss(pair.centre23())};
}

struct Adiabaticity {
    double parameter = 0.0;
    bool satisfied = false;
};

inline constexpr double kAdiabaticityThreshold = 10.0;

inline Adiabaticity adiabaticity_check(const PulsePair& pair)
{
    const double a = pair.tau * std::hypot(pair.omega13_peak, pair.omega23_peak);
    return {a, a > kAdiabaticityThreshold};
}

struct TimeWindow {
    double start = 0.0;
    double end = 0.0;
};

inline constexpr double kHorizonWidths = 4.0;

inline TimeWindow default_horizon(const PulsePair& pair)
{
    const double lo = std::min(pair.centre13(), pair.centre23());
    const double hi = std::max(pair.centre13(), pair.centre23());
    return {lo - kHorizonWidths * pair.tau, hi + kHorizonWidths * pair.tau};
}

struct PopulationTrajectory {
    std::vector<double> times;
    std::vector<double> p1;
    std::vector<double> p2;
    std::vector<double> p3;
    std::vector<double> loss;
    std::vector<double> dark_overlap;

    std::size_t size() const { return times.size(); }

    /// max over records of |p1 + p2 + p3 + loss - 1|
    double norm_defect() const
    {
        double worst = 0.0;
        for (std::size_t i = 0; i < size(); ++i)
            worst = std::max(worst, std::abs(p1[i] + p2[i] + p3[i] + loss[i] - 1.0));
        return worst;
    }
};

struct EvolveOptions {
    std::size_t output_points = 401;
    int initial_level = 1; // 1 or 2
};

inline constexpr double kDefaultTolerance = 1e-8;

// The stepper controls local error only; running it this much tighter keeps
// the accumulated error over a full pulse sequence within `tol`.
inline constexpr double kLocalToleranceFactor = 0.1;

namespace detail {

using StirapState = std::array<double, 7>; // Re c1..c3, Im c1..c3, loss

struct StirapRhs {
    ThreeLevelSystem system;
    PulsePair pair;

    void operator()(const StirapState& y, StirapState& dy, double t) const
    {
        const auto env = pulse_envelope(pair, t);
        const std::complex<double> c1{y[0], y[3]};
        const std::complex<double> c2{y[1], y[4]};
        const std::complex<double> c3{y[2], y[5]};
        const std::complex<double> i{0.0, 1.0};
        const double h13 = 0.5 * env.omega13;
        const double h23 = 0.5 * env.omega23;
        // i dc/dt = H c
        const auto d1 = -i * (h13 * c3);
        const auto d2 = -i * (h23 * c3) - 0.5 * system.gamma2 * c2;
        const auto d3 = -i * (h13 * c1 + h23 * c2 + system.detuning * c3) - 0.5 * system.gamma3 * c3;
        dy = {d1.real(), d2.real(), d3.real(), d1.imag(), d2.imag(), d3.imag(),
              system.gamma3 * std::norm(c3) + system.gamma2 * std::norm(c2)};
    }
};

} // namespace detail

/// Dark state cos(theta)|1> - sin(theta)|2>, tan(theta) = Omega13/Omega23.
inline double dark_state_overlap(const PulsePair& pair, double t, std::complex<double> c1,
                                 std::complex<double> c2)
{
    const auto env = pulse_envelope(pair, t);
    const double theta = std::atan2(env.omega13, env.omega23);
    return std::norm(std::cos(theta) * c1 - std::sin(theta) * c2);
}

inline PopulationTrajectory evolve(const ThreeLevelSystem& system, const PulsePair& pair,
                                   const TimeWindow& horizon, double tol = kDefaultTolerance,
                                   const EvolveOptions& options = {})
{
    system.validate();
    pair.validate();
    require(tol > 0.0 && tol < 0.1, "tolerance must lie in (0, 0.1)");
    require(options.output_points >= 2, "need at least two output points");
    require(options.initial_level == 1 || options.initial_level == 2, "initial level must be 1 or 2");
    const TimeWindow needed = default_horizon(pair);
    const double slack = 1e-12 * pair.tau;
    require(horizon.start <= needed.start + slack && horizon.end >= needed.end - slack,
            "horizon too short: must cover both pulse centres +- 4 tau");

    namespace ode = boost::numeric::odeint;
    using Stepper = ode::runge_kutta_dopri5<detail::StirapState>;

    detail::StirapState y{};
    y[options.initial_level == 1 ? 0 : 1] = 1.0;

    const auto times = uniform_grid(horizon.start, horizon.end, options.output_points);
    PopulationTrajectory out;
    out.times.reserve(times.size());
    const auto observe = [&](const detail::StirapState& s, double t) {
        const std::complex<double> c1{s[0], s[3]};
        const std::complex<double> c2{s[1], s[4]};
        out.times.push_back(t);
        out.p1.push_back(std::norm(c1));
        out.p2.push_back(std::norm(c2));
        out.p3.push_back(s[2] * s[2] + s[5] * s[5]);
        out.loss.push_back(s[6]);
        out.dark_overlap.push_back(dark_state_overlap(pair, t, c1, c2));
    };

    const double dt0 = std::min(0.01 * pair.tau, (horizon.end - horizon.start) / 100.0);
    try {
        ode::integrate_times(ode::make_dense_output(kLocalToleranceFactor * tol,
                                                     kLocalToleranceFactor * tol, Stepper()),
                             detail::StirapRhs{system, pair}, y, times.begin(), times.end(), dt0,
                             observe, ode::max_step_checker(1000000));
    } catch (const std::exception& e) {
        throw NumericalError(std::string("STIRAP integration failed: ") + e.what());
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!std::isfinite(out.p1[i] + out.p2[i] + out.p3[i] + out.loss[i]))
            throw NumericalError("STIRAP integration produced non-finite populations");
    }
    return out;
}

inline PopulationTrajectory evolve(const ThreeLevelSystem& system, const PulsePair& pair,
                                   double tol = kDefaultTolerance)
{
    return evolve(system, pair, default_horizon(pair), tol);
}

inline double transfer_efficiency(const ThreeLevelSystem& system, const PulsePair& pair,
                                  const TimeWindow& horizon, double tol = kDefaultTolerance)
{
    EvolveOptions options;
    options.output_points = 2;
    return evolve(system, pair, horizon, tol, options).p2.back();
}

inline double transfer_efficiency(const ThreeLevelSystem& system, const PulsePair& pair,
                                  double tol = kDefaultTolerance)
{
    return transfer_efficiency(system, pair, default_horizon(pair), tol);
}

struct SweepPoint {
    double parameter = 0.0;
    double efficiency = 0.0;
};

/// Efficiency versus peak separation; each point uses its own default horizon.
inline std::vector<SweepPoint> separation_sweep(const ThreeLevelSystem& system, PulsePair pair,
                                                const std::vector<double>& separations,
                                                double tol = kDefaultTolerance)
{
    std::vector<SweepPoint> out;
    out.reserve(separations.size());
    for (double s : separations) {
        pair.separation = s;
        out.push_back({s, transfer_efficiency(system, pair, tol)});
    }
    return out;
}

inline SweepPoint best_point(const std::vector<SweepPoint>& sweep)
{
    require(!sweep.empty(), "empty sweep");
    return *std::max_element(sweep.begin(), sweep.end(), [](const SweepPoint& a, const SweepPoint& b) {
        return a.efficiency < b.efficiency;
    });
}

} // namespace photon_gun
