// emitter.hpp - decay-rate enhancement, repetition rate and emission events
//
// Optical quantities stay dimensionless (omega/omega0); times and rates here
// are SI (seconds, 1/s) because the bulk lifetime enters in seconds.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "photon_gun/error.hpp"
#include "photon_gun/spectra.hpp"
#include "photon_gun/stack.hpp"

namespace photon_gun {

enum class LineShape { lorentzian, gaussian };

inline std::string to_string(LineShape s)
{
    return s == LineShape::lorentzian ? "lorentzian" : "gaussian";
}

struct EmitterModel {
    double transition_frequency = 0.781; // omega_A / omega0
    double bulk_lifetime = 1e-3;         // s
    double linewidth = 1e-4;             // full width at half maximum, in omega0
    LineShape shape = LineShape::lorentzian;
    std::string label = "Er3+ 4I13/2 -> 4I15/2";

    void validate() const
    {
        require(transition_frequency > 0.0 && std::isfinite(transition_frequency),
                "transition frequency must be > 0");
        require(bulk_lifetime > 0.0 && std::isfinite(bulk_lifetime), "bulk lifetime must be > 0");
        require(linewidth > 0.0 && std::isfinite(linewidth), "linewidth must be > 0");
    }
};

/// The line is averaged over +-kLineWindow linewidths around omega_A.
inline constexpr double kLineWindow = 3.0;

inline double line_weight(const EmitterModel& e, double omega)
{
    const double x = omega - e.transition_frequency;
    const double half = 0.5 * e.linewidth;
    if (e.shape == LineShape::lorentzian) return half / (x * x + half * half);
    const double sigma = e.linewidth / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    return std::exp(-0.5 * (x / sigma) * (x / sigma));
}

/// Grid spanning the averaging window, suitable for local_dos().
inline std::vector<double> line_grid(const EmitterModel& e, std::size_t points = 601)
{
    e.validate();
    return uniform_grid(e.transition_frequency - kLineWindow * e.linewidth,
                        e.transition_frequency + kLineWindow * e.linewidth, points);
}

/// Spectrum value averaged over the normalised line shape (trapezoid rule on
/// the spectrum's own grid, window ends interpolated linearly).
inline double enhancement_at_line(const DosSpectrum& spectrum, const EmitterModel& emitter)
{
    emitter.validate();
    const auto& w = spectrum.frequencies;
    const auto& v = spectrum.values;
    require(w.size() == v.size() && w.size() >= 2, "spectrum is empty");
    const double lo = emitter.transition_frequency - kLineWindow * emitter.linewidth;
    const double hi = emitter.transition_frequency + kLineWindow * emitter.linewidth;
    const double slack = 1e-12 * emitter.transition_frequency;
    require(w.front() <= lo + slack && w.back() >= hi - slack,
            "insufficient spectral coverage around the emitter line");

    const auto interpolate = [&](double x) {
        const auto it = std::lower_bound(w.begin(), w.end(), x);
        if (it == w.begin()) return v.front();
        if (it == w.end()) return v.back();
        const std::size_t j = static_cast<std::size_t>(it - w.begin());
        const double f = (x - w[j - 1]) / (w[j] - w[j - 1]);
        return v[j - 1] + f * (v[j] - v[j - 1]);
    };

    std::vector<double> xs{lo};
    std::vector<double> ys{interpolate(lo)};
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] > lo && w[i] < hi) {
            xs.push_back(w[i]);
            ys.push_back(v[i]);
        }
    }
    xs.push_back(hi);
    ys.push_back(interpolate(hi));

    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double h = xs[i + 1] - xs[i];
        const double ga = line_weight(emitter, xs[i]);
        const double gb = line_weight(emitter, xs[i + 1]);
        weighted += 0.5 * h * (ga * ys[i] + gb * ys[i + 1]);
        total += 0.5 * h * (ga + gb);
    }
    return weighted / total;
}

/// Line-averaged LDOS at the emitter anchor of `stack`, divided by `scale`
/// (a vacuum-normalised reference level, see ldos_scale()).
inline double line_enhancement(const Stack& stack, const EmitterModel& emitter, double scale,
                               std::size_t points = 601)
{
    const auto grid = line_grid(emitter, points);
    auto spectrum = local_dos(stack, grid, Normalization::vacuum);
    for (auto& x : spectrum.values) x /= scale;
    return enhancement_at_line(spectrum, emitter);
}

struct RateReport {
    double enhancement = 1.0;
    double enhanced_rate = 0.0;   // 1/s
    double pump_rep_rate = 0.0;   // 1/s
    double device_rep_rate = 0.0; // 1/s
    double emission_probability_target = 0.99;
    double wait_time = 0.0;       // s, per-cycle time to reach the target probability
    double stirap_duration = 0.0; // s
    EmitterModel emitter;

    double cycle_period() const { return 1.0 / device_rep_rate; }
};

inline RateReport rate_report(double enhancement, const EmitterModel& emitter, double pump_rep_rate,
                              double emission_probability_target, double stirap_duration = 0.0)
{
    emitter.validate();
    require(enhancement > 0.0 && std::isfinite(enhancement), "enhancement must be > 0");
    require(pump_rep_rate > 0.0 && std::isfinite(pump_rep_rate), "pump repetition rate must be > 0");
    require(emission_probability_target > 0.0 && emission_probability_target < 1.0,
            "emission probability target must lie in (0, 1)");
    require(stirap_duration >= 0.0, "STIRAP duration must be >= 0");

    RateReport r;
    r.enhancement = enhancement;
    r.enhanced_rate = enhancement / emitter.bulk_lifetime;
    r.pump_rep_rate = pump_rep_rate;
    r.emission_probability_target = emission_probability_target;
    r.stirap_duration = stirap_duration;
    r.wait_time = -std::log1p(-emission_probability_target) / r.enhanced_rate + stirap_duration;
    r.device_rep_rate = std::min(pump_rep_rate, 1.0 / r.wait_time);
    r.emitter = emitter;
    return r;
}

inline RateReport rate_report(const DosSpectrum& spectrum, const EmitterModel& emitter,
                              double pump_rep_rate, double emission_probability_target,
                              double stirap_duration = 0.0)
{
    return rate_report(enhancement_at_line(spectrum, emitter), emitter, pump_rep_rate,
                       emission_probability_target, stirap_duration);
}

struct PhotonEventRecord {
    std::int64_t cycle_index = 0;
    double trigger_time = 0.0;
    std::optional<double> emission_time;

    friend bool operator==(const PhotonEventRecord&, const PhotonEventRecord&) = default;
};

/// Uniform in [0, 1) from the top 53 bits; std::mt19937_64 output is fully
/// specified, so the stream is identical on every platform.
inline double unit_uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// One trigger per cycle at spacing 1/device_rep_rate. The ion is prepared
/// during the STIRAP pulse and then decays with an exponential delay at the
/// enhanced rate; a delay running past the next trigger leaves the cycle empty.
inline std::vector<PhotonEventRecord> photon_stream(const RateReport& report, std::int64_t n_cycles,
                                                    std::uint64_t seed)
{
    require(n_cycles >= 1, "need at least one cycle");
    require(report.enhanced_rate > 0.0 && report.device_rep_rate > 0.0,
            "rates in the report must be positive");
    std::mt19937_64 rng(seed);
    const double period = report.cycle_period();
    const double window = period - report.stirap_duration;
    std::vector<PhotonEventRecord> events;
    events.reserve(static_cast<std::size_t>(n_cycles));
    for (std::int64_t k = 0; k < n_cycles; ++k) {
        PhotonEventRecord e;
        e.cycle_index = k;
        e.trigger_time = static_cast<double>(k) * period;
        const double delay = -std::log1p(-unit_uniform(rng)) / report.enhanced_rate;
        if (delay <= window) e.emission_time = e.trigger_time + report.stirap_duration + delay;
        events.push_back(e);
    }
    return events;
}

struct JitterStats {
    double mean_delay = 0.0;
    double std_delay = 0.0;
    double emitted_fraction = 0.0;
    std::size_t emitted = 0;
    std::size_t cycles = 0;
};

/// Delays are measured from the trigger.
inline JitterStats jitter_stats(const std::vector<PhotonEventRecord>& events)
{
    JitterStats s;
    s.cycles = events.size();
    double sum = 0.0;
    for (const auto& e : events) {
        if (!e.emission_time) continue;
        ++s.emitted;
        sum += *e.emission_time - e.trigger_time;
    }
    if (s.emitted == 0) throw InvalidArgument("no emitted events");
    s.mean_delay = sum / static_cast<double>(s.emitted);
    double sq = 0.0;
    for (const auto& e : events) {
        if (!e.emission_time) continue;
        const double d = *e.emission_time - e.trigger_time - s.mean_delay;
        sq += d * d;
    }
    s.std_delay = s.emitted > 1 ? std::sqrt(sq / static_cast<double>(s.emitted - 1)) : 0.0;
    s.emitted_fraction = static_cast<double>(s.emitted) / static_cast<double>(s.cycles);
    return s;
}

/// Mean of an exponential(rate) delay conditioned on delay <= window.
inline double truncated_exponential_mean(double rate, double window)
{
    if (!std::isfinite(window)) return 1.0 / rate;
    const double x = rate * window;
    return 1.0 / rate - window * std::exp(-x) / -std::expm1(-x);
}

/// Expected fraction of cycles that emit.
inline double expected_emitted_fraction(const RateReport& report)
{
    return -std::expm1(-report.enhanced_rate * (report.cycle_period() - report.stirap_duration));
}

struct PeriodsForRate {
    int periods = 0;
    double band_edge_enhancement = 0.0;
    double enhanced_rate = 0.0;
};

/// Smallest number of periods whose mid-stack band-edge LDOS enhancement
/// (low-frequency normalisation) reaches `target_rate * bulk_lifetime`.
inline PeriodsForRate periods_for_rate(double n_low, double n_high, const EmitterModel& emitter,
                                       double target_rate, int max_periods = 400)
{
    emitter.validate();
    require(target_rate > 0.0, "target rate must be > 0");
    require(n_low != n_high, "index contrast required");
    const double needed = target_rate * emitter.bulk_lifetime;
    const auto enhancement = [&](int n) {
        QuarterWaveSpec spec;
        spec.n_low = n_low;
        spec.n_high = n_high;
        spec.num_periods = n;
        return local_band_edge_peak(place_emitter_midstack(build_quarter_wave(spec))).value;
    };
    int lo = 1;
    double lo_value = enhancement(lo);
    if (lo_value >= needed) return {lo, lo_value, lo_value / emitter.bulk_lifetime};
    int hi = 2;
    double hi_value = enhancement(hi);
    while (hi_value < needed) {
        lo = hi;
        hi *= 2;
        if (hi > max_periods) throw NumericalError("target rate needs more periods than allowed");
        hi_value = enhancement(hi);
    }
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        const double v = enhancement(mid);
        if (v >= needed) {
            hi = mid;
            hi_value = v;
        } else {
            lo = mid;
        }
    }
    return {hi, hi_value, hi_value / emitter.bulk_lifetime};
}

} // namespace photon_gun
