// kerr.hpp - index-shift switching of the band-edge enhancement
//
// The emitter line starts inside the first gap (OFF). An index change on the
// selected layers moves the band-edge resonance onto the line (ON). The
// minimal change is found by a forward scan in |dn| followed by bisection
// inside the first OFF->ON cell.
//
// All LDOS levels here use one fixed reference: the low-frequency LDOS of the
// unshifted stack, so thresholds do not drift with the perturbation.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "photon_gun/emitter.hpp"
#include "photon_gun/error.hpp"
#include "photon_gun/spectra.hpp"
#include "photon_gun/stack.hpp"

namespace photon_gun {

struct SwitchCriterion {
    double off_threshold = 0.05;
    /// ON level as a fraction of the unshifted line-averaged band-edge peak,
    /// unless on_threshold is given explicitly.
    double on_fraction = 0.5;
    std::optional<double> on_threshold;
};

struct ResolvedCriterion {
    double off_threshold = 0.0;
    double on_threshold = 0.0;
    double on_fraction = 0.0;
    double unshifted_peak = 0.0;
};

struct KerrOptions {
    LayerSelector layers = LayerSelector::high_index;
    double max_relative_shift = 0.1; // |dn| / n bracket
    std::size_t scan_points = 400;
    double tolerance = 1e-5; // absolute, in dn
    std::size_t line_points = 601;
};

struct SweepSample {
    double delta_n = 0.0;
    double enhancement = 0.0;
};

struct SwitchResult {
    double delta_n_required = 0.0;
    double delta_n_over_n = 0.0;
    double reference_index = 0.0;
    double edge_shift = 0.0;
    double emitter_frequency = 0.0;
    double off_enhancement = 0.0; // at dn = 0
    double on_enhancement = 0.0;  // at dn_required
    double below_enhancement = 0.0; // at 0.9 dn_required
    bool recheck_passed = false;
    ResolvedCriterion criterion;
    std::vector<SweepSample> sweep; // scan samples from 0 up to the first ON sample
};

/// omega_peak(shifted) - omega_peak(unshifted) of the global band-edge DOS peak.
inline double edge_shift(const Stack& stack, double delta_n,
                         LayerSelector which = LayerSelector::high_index)
{
    const Stack shifted = apply_index_shift(stack, delta_n, which);
    return band_edge_peak(shifted).frequency - band_edge_peak(stack).frequency;
}

/// Unperturbed index of the layers the selector acts on.
inline double reference_index(const Stack& stack, LayerSelector which)
{
    require(!stack.empty(), "empty stack");
    double lo = stack[0].base_index;
    double hi = lo;
    for (const auto& l : stack.layers()) {
        lo = std::min(lo, l.base_index);
        hi = std::max(hi, l.base_index);
    }
    return which == LayerSelector::low_index ? lo : hi;
}

/// Maximum over omega_A of the line-averaged LDOS near the band-edge peak.
inline double line_averaged_peak(const Stack& stack, const EmitterModel& emitter, double scale,
                                 std::size_t line_points = 601)
{
    const auto peak = local_band_edge_peak(stack, Normalization::vacuum);
    const auto at = [&](double w) {
        EmitterModel e = emitter;
        e.transition_frequency = w;
        return line_enhancement(stack, e, scale, line_points);
    };
    const double half = 5.0 * emitter.linewidth;
    return scan_and_refine_max(at, peak.frequency - half, peak.frequency + half, 41).value;
}

/// Shallowest in-gap line position (above the lower gap edge) at which the
/// line-averaged LDOS has dropped to `off_threshold`, moved a further
/// `extra_linewidths` into the gap.
inline double off_state_line_frequency(const Stack& stack, EmitterModel emitter,
                                       double off_threshold, double extra_linewidths = 1.0)
{
    const auto cell = periodic_cell(stack);
    require(cell.has_value(), "stack is not a two-material periodic stack");
    const auto edge = first_gap_lower_edge(*cell);
    require(edge.has_value(), "infinite crystal has no gap");
    const double scale = low_frequency_reference(stack);
    const auto level = [&](double w) {
        emitter.transition_frequency = w;
        return line_enhancement(stack, emitter, scale) - off_threshold;
    };
    double a = *edge;
    double fa = level(a);
    if (fa <= 0.0) return a + extra_linewidths * emitter.linewidth;
    const double step = emitter.linewidth;
    for (int k = 1; k <= 100000; ++k) {
        const double b = *edge + step * k;
        const double fb = level(b);
        if (fb <= 0.0) return bracketed_root(level, a, b) + extra_linewidths * emitter.linewidth;
        a = b;
        if (b > 1.0) break;
    }
    throw NumericalError("line never reaches the OFF level in the lower half of the gap");
}

inline SwitchResult required_shift(const QuarterWaveSpec& spec, const EmitterModel& emitter,
                                   const SwitchCriterion& criterion, const KerrOptions& options = {})
{
    emitter.validate();
    require(criterion.off_threshold >= 0.0, "off threshold must be >= 0");
    require(criterion.on_fraction > 0.0, "on fraction must be > 0");
    require(options.max_relative_shift > 0.0 && options.scan_points >= 2,
            "invalid Kerr search options");
    if (criterion.on_threshold)
        require(criterion.off_threshold < *criterion.on_threshold,
                "off threshold must be below on threshold");

    const Stack stack = place_emitter_midstack(build_quarter_wave(spec));
    const double scale = low_frequency_reference(stack);

    SwitchResult result;
    result.emitter_frequency = emitter.transition_frequency;
    result.reference_index = reference_index(stack, options.layers);

    ResolvedCriterion& rc = result.criterion;
    rc.off_threshold = criterion.off_threshold;
    rc.on_fraction = criterion.on_fraction;
    rc.unshifted_peak = line_averaged_peak(stack, emitter, scale, options.line_points);
    rc.on_threshold = criterion.on_threshold.value_or(criterion.on_fraction * rc.unshifted_peak);
    require(rc.off_threshold < rc.on_threshold, "off threshold must be below on threshold");

    const auto level = [&](double dn) {
        return line_enhancement(apply_index_shift(stack, dn, options.layers), emitter, scale,
                                options.line_points);
    };

    result.off_enhancement = level(0.0);
    require(result.off_enhancement <= rc.off_threshold,
            "OFF precondition violated: emitter line is not suppressed by the unshifted stack");

    // Raising any index lowers all band frequencies; move the nearer gap edge
    // towards the line.
    const auto cell = periodic_cell(stack);
    require(cell.has_value(), "stack is not a two-material periodic stack");
    const auto lower = first_gap_lower_edge(*cell);
    require(lower.has_value(), "infinite crystal has no gap");
    const auto edges = band_edges(*cell, 0.0, 2.0);
    double upper = 2.0;
    for (double e : edges)
        if (e > *lower + 1e-9) {
            upper = e;
            break;
        }
    const double sign =
        (emitter.transition_frequency - *lower <= upper - emitter.transition_frequency) ? -1.0 : 1.0;

    const double limit = options.max_relative_shift * result.reference_index;
    const double step = limit / static_cast<double>(options.scan_points);
    result.sweep.push_back({0.0, result.off_enhancement});
    std::optional<std::size_t> first_on;
    for (std::size_t k = 1; k <= options.scan_points; ++k) {
        const double dn = sign * step * static_cast<double>(k);
        if (result.reference_index + dn < 1.0) break;
        const double v = level(dn);
        result.sweep.push_back({dn, v});
        if (v >= rc.on_threshold) {
            first_on = k;
            break;
        }
    }
    if (!first_on)
        throw NumericalError("ON condition unreachable within the allowed index shift");

    for (std::size_t k = 1; k < result.sweep.size(); ++k) {
        if (result.sweep[k].enhancement < result.sweep[k - 1].enhancement)
            throw NumericalError("line LDOS is not monotone in dn over the bisection bracket");
    }

    const double a = result.sweep[*first_on - 1].delta_n;
    const double b = result.sweep[*first_on].delta_n;
    const auto excess = [&](double dn) { return level(dn) - rc.on_threshold; };
    const auto done = [&](double x, double y) { return std::abs(x - y) <= options.tolerance; };
    std::uintmax_t iterations = 200;
    const auto [lo, hi] =
        boost::math::tools::bisect(excess, std::min(a, b), std::max(a, b), done, iterations);
    // keep the end of the final bracket that satisfies ON
    const double on_side = excess(hi) >= 0.0 && excess(lo) < 0.0 ? hi : lo;

    result.delta_n_required = on_side;
    result.delta_n_over_n = on_side / result.reference_index;
    result.on_enhancement = level(on_side);
    result.below_enhancement = level(0.9 * on_side);
    result.recheck_passed =
        result.on_enhancement >= rc.on_threshold && result.below_enhancement < rc.on_threshold;
    result.edge_shift = edge_shift(stack, on_side, options.layers);
    return result;
}

/// Line-averaged LDOS at the emitter versus dn, same reference as required_shift.
inline std::vector<SweepSample> shift_sweep(const QuarterWaveSpec& spec, const EmitterModel& emitter,
                                            const std::vector<double>& shifts,
                                            LayerSelector which = LayerSelector::high_index)
{
    const Stack stack = place_emitter_midstack(build_quarter_wave(spec));
    const double scale = low_frequency_reference(stack);
    std::vector<SweepSample> out;
    out.reserve(shifts.size());
    for (double dn : shifts)
        out.push_back({dn, line_enhancement(apply_index_shift(stack, dn, which), emitter, scale)});
    return out;
}

} // namespace photon_gun
