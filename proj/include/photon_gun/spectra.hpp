// spectra.hpp - transfer-matrix engine for normal incidence
//
// Characteristic-matrix convention: for a layer of index n and phase
// thickness delta = n*d*omega,
//
//     M = [ cos(delta)       -i sin(delta)/n ]
//         [ -i n sin(delta)   cos(delta)     ]
//
// maps the tangential fields (E, H) at the right face onto the left face,
// consistent with waves exp(i(kz - omega t)). A vacuum slab of thickness D
// transmits t = exp(i omega D).

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "photon_gun/error.hpp"
#include "photon_gun/numerics.hpp"
#include "photon_gun/stack.hpp"

namespace photon_gun {

using complex = std::complex<double>;

struct TransferMatrix {
    complex m11{1.0, 0.0};
    complex m12{0.0, 0.0};
    complex m21{0.0, 0.0};
    complex m22{1.0, 0.0};

    complex determinant() const { return m11 * m22 - m12 * m21; }

    friend TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b)
    {
        return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
    }

    friend TransferMatrix operator+(const TransferMatrix& a, const TransferMatrix& b)
    {
        return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
    }

    /// (E, H) -> M (E, H)
    std::pair<complex, complex> apply(complex e, complex h) const
    {
        return {m11 * e + m12 * h, m21 * e + m22 * h};
    }
};

inline TransferMatrix layer_matrix(double n, double thickness, double omega)
{
    const double delta = n * thickness * omega;
    const double c = std::cos(delta);
    const double s = std::sin(delta);
    const complex i{0.0, 1.0};
    return {c, -i * s / n, -i * n * s, c};
}

/// d(layer_matrix)/d(omega)
inline TransferMatrix layer_matrix_derivative(double n, double thickness, double omega)
{
    const double phase_rate = n * thickness;
    const double delta = phase_rate * omega;
    const double c = std::cos(delta);
    const double s = std::sin(delta);
    const complex i{0.0, 1.0};
    return {-s * phase_rate, -i * c / n * phase_rate, -i * n * c * phase_rate, -s * phase_rate};
}

inline TransferMatrix stack_matrix(const Stack& stack, double omega)
{
    TransferMatrix m;
    for (const auto& l : stack.layers()) m = m * layer_matrix(l.refractive_index(), l.thickness, omega);
    return m;
}

/// Product matrix and its frequency derivative, propagated together.
struct MatrixWithDerivative {
    TransferMatrix value;
    TransferMatrix derivative{0.0, 0.0, 0.0, 0.0};
};

inline MatrixWithDerivative stack_matrix_with_derivative(const Stack& stack, double omega)
{
    MatrixWithDerivative acc;
    for (const auto& l : stack.layers()) {
        const double n = l.refractive_index();
        const TransferMatrix a = layer_matrix(n, l.thickness, omega);
        const TransferMatrix da = layer_matrix_derivative(n, l.thickness, omega);
        acc.derivative = acc.derivative * a + acc.value * da;
        acc.value = acc.value * a;
    }
    return acc;
}

struct ScatteringResult {
    double frequency = 0.0;
    complex t;
    complex r;
};

namespace detail {

// Denominator shared by t and r for identical claddings of index nc.
inline complex scattering_denominator(const TransferMatrix& m, double nc)
{
    return nc * m.m11 + nc * nc * m.m12 + m.m21 + nc * m.m22;
}

} // namespace detail

inline ScatteringResult scattering(const Stack& stack, double omega)
{
    require(omega > 0.0, "frequency must be positive");
    const double nc = stack.cladding_index();
    const TransferMatrix m = stack_matrix(stack, omega);
    const complex den = detail::scattering_denominator(m, nc);
    return {omega, 2.0 * nc / den, (nc * m.m11 + nc * nc * m.m12 - m.m21 - nc * m.m22) / den};
}

// ---------------------------------------------------------------------------
// Mode densities

enum class SpectrumKind { global, local };

/// optical_length: global DOS, homogeneous stack of equal optical length = 1.
/// low_frequency:  LDOS averaged over omega in [0.05, 0.15] = 1.
/// vacuum:         LDOS relative to free space.
/// bulk_dielectric: LDOS relative to an infinite medium of the anchor layer's index.
enum class Normalization { optical_length, low_frequency, vacuum, bulk_dielectric };

inline std::string to_string(Normalization n)
{
    switch (n) {
    case Normalization::optical_length: return "optical_length";
    case Normalization::low_frequency: return "low_frequency";
    case Normalization::vacuum: return "vacuum";
    case Normalization::bulk_dielectric: return "bulk_dielectric";
    }
    return "unknown";
}

inline std::string to_string(SpectrumKind k)
{
    return k == SpectrumKind::global ? "dos" : "local_dos";
}

struct DosSpectrum {
    std::vector<double> frequencies;
    std::vector<double> values;
    SpectrumKind kind = SpectrumKind::global;
    Normalization normalization = Normalization::optical_length;
};

inline void check_dos_grid(const std::vector<double>& grid)
{
    require(!grid.empty(), "frequency grid is empty");
    require(strictly_ascending(grid), "frequency grid must be strictly ascending");
    require(grid.front() > 0.0 && grid.back() < 2.0, "frequency grid must lie inside (0, 2)");
}

/// Mode density at one frequency from the analytic derivative of the
/// transmission phase, per unit optical length.
inline double dos_at(const Stack& stack, double omega)
{
    const auto [m, dm] = stack_matrix_with_derivative(stack, omega);
    const double nc = stack.cladding_index();
    const complex den = detail::scattering_denominator(m, nc);
    const complex dden = detail::scattering_denominator(dm, nc);
    // t = 2 nc / den  =>  d(arg t)/d(omega) = -Im(den'/den)
    const double phase_rate = -std::imag(dden / den);
    // A homogeneous slab of index nc embedded in nc has arg t = nc * D * omega.
    const double reference = stack.empty() ? 1.0 : stack.optical_thickness();
    return phase_rate / reference;
}

inline DosSpectrum dos(const Stack& stack, const std::vector<double>& grid)
{
    check_dos_grid(grid);
    require(!stack.empty(), "stack has no layers");
    DosSpectrum out{grid, std::vector<double>(grid.size()), SpectrumKind::global,
                    Normalization::optical_length};
    for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = dos_at(stack, grid[i]);
    return out;
}

/// Complex field amplitudes at the emitter for unit-amplitude waves incident
/// from the left and from the right.
struct AnchorFields {
    complex from_left;
    complex from_right;
};

inline AnchorFields anchor_fields(const Stack& stack, double omega)
{
    require(stack.emitter().has_value(), "stack has no emitter anchor");
    const auto anchor = *stack.emitter();
    const double nc = stack.cladding_index();

    // Split the stack at the anchor: left part (0..anchor) and right part
    // (anchor..end); total matrix = left * right.
    TransferMatrix left;
    TransferMatrix right;
    for (std::size_t i = 0; i < stack.size(); ++i) {
        const Layer& l = stack[i];
        const double n = l.refractive_index();
        if (i < anchor.layer) {
            left = left * layer_matrix(n, l.thickness, omega);
        } else if (i == anchor.layer) {
            left = left * layer_matrix(n, anchor.offset * l.thickness, omega);
            right = right * layer_matrix(n, (1.0 - anchor.offset) * l.thickness, omega);
        } else {
            right = right * layer_matrix(n, l.thickness, omega);
        }
    }
    const complex t = 2.0 * nc / detail::scattering_denominator(left * right, nc);

    // Left incidence: outgoing wave (t, nc t) on the right face, carried back
    // to the anchor through the right part.
    const complex e_left = right.m11 * t + right.m12 * (nc * t);
    // Right incidence: outgoing wave (t, -nc t) on the left face, carried
    // forward through the inverse of the left part (det = 1).
    const complex e_right = left.m22 * t + left.m12 * (nc * t);
    return {e_left, e_right};
}

/// Local mode density relative to free space: unit-flux scattering states
/// from both sides, |E|^2 summed at the anchor.
inline double local_dos_vacuum_at(const Stack& stack, double omega)
{
    const auto f = anchor_fields(stack, omega);
    return (std::norm(f.from_left) + std::norm(f.from_right)) / (2.0 * stack.cladding_index());
}

inline constexpr double kLowFrequencyBandLo = 0.05;
inline constexpr double kLowFrequencyBandHi = 0.15;
inline constexpr std::size_t kLowFrequencySamples = 1001;

/// Mean vacuum-normalised LDOS over the low-frequency reference band.
inline double low_frequency_reference(const Stack& stack)
{
    const auto grid = uniform_grid(kLowFrequencyBandLo, kLowFrequencyBandHi, kLowFrequencySamples);
    double sum = 0.0;
    for (double w : grid) sum += local_dos_vacuum_at(stack, w);
    return sum / static_cast<double>(grid.size());
}

/// Divisor that converts vacuum-normalised LDOS into the requested normalisation.
inline double ldos_scale(const Stack& stack, Normalization normalization)
{
    require(stack.emitter().has_value(), "stack has no emitter anchor");
    switch (normalization) {
    case Normalization::vacuum: return 1.0;
    case Normalization::bulk_dielectric:
        // free-space-relative LDOS of an infinite medium of index n is 1/n
        return 1.0 / stack[stack.emitter()->layer].refractive_index();
    case Normalization::low_frequency: return low_frequency_reference(stack);
    case Normalization::optical_length: break;
    }
    throw InvalidArgument("optical_length normalisation applies to the global DOS only");
}

inline DosSpectrum local_dos(const Stack& stack, const std::vector<double>& grid,
                             Normalization normalization = Normalization::low_frequency)
{
    check_dos_grid(grid);
    require(stack.emitter().has_value(), "local DOS needs an emitter anchor");
    const double scale = ldos_scale(stack, normalization);
    DosSpectrum out{grid, std::vector<double>(grid.size()), SpectrumKind::local, normalization};
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.values[i] = local_dos_vacuum_at(stack, grid[i]) / scale;
    return out;
}

// ---------------------------------------------------------------------------
// Infinite crystal

/// cos(K Lambda) for an infinite repetition of the cell.
inline double bloch_cosine(const BilayerCell& cell, double omega)
{
    const double d1 = cell.n_a * cell.d_a * omega;
    const double d2 = cell.n_b * cell.d_b * omega;
    const double mix = 0.5 * (cell.n_a / cell.n_b + cell.n_b / cell.n_a);
    return std::cos(d1) * std::cos(d2) - mix * std::sin(d1) * std::sin(d2);
}

inline double bloch_cosine_derivative(const BilayerCell& cell, double omega)
{
    const double r1 = cell.n_a * cell.d_a;
    const double r2 = cell.n_b * cell.d_b;
    const double d1 = r1 * omega;
    const double d2 = r2 * omega;
    const double mix = 0.5 * (cell.n_a / cell.n_b + cell.n_b / cell.n_a);
    return -r1 * std::sin(d1) * std::cos(d2) - r2 * std::cos(d1) * std::sin(d2) -
           mix * (r1 * std::cos(d1) * std::sin(d2) + r2 * std::sin(d1) * std::cos(d2));
}

inline BilayerCell quarter_wave_cell(double n_low, double n_high)
{
    return {n_low, quarter_wave_thickness(n_low), n_high, quarter_wave_thickness(n_high)};
}

/// Bloch phase K*Lambda; real inside bands, Re in {0, pi} plus Im > 0 in gaps.
inline complex bloch_phase(double cos_bloch)
{
    if (cos_bloch > 1.0) return {0.0, std::acosh(cos_bloch)};
    if (cos_bloch < -1.0) return {std::numbers::pi, std::acosh(-cos_bloch)};
    return {std::acos(cos_bloch), 0.0};
}

struct DispersionResult {
    std::vector<double> frequencies;
    std::vector<double> cos_bloch;
    std::vector<complex> bloch_phase;
    /// d omega / d K in units of c; NaN inside gaps.
    std::vector<double> group_velocity;
    std::vector<double> band_edges;
    BilayerCell cell;
};

inline double group_velocity(const BilayerCell& cell, double omega)
{
    const double c = bloch_cosine(cell, omega);
    if (std::abs(c) > 1.0) return std::nan("");
    const double sin_k = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double dc = bloch_cosine_derivative(cell, omega);
    if (dc == 0.0) return std::numeric_limits<double>::infinity();
    // d(K Lambda)/d omega = -dc / sin(K Lambda)
    return std::abs(cell.period() * sin_k / dc);
}

inline constexpr std::size_t kEdgeScanSamples = 4001;

/// All omega in [lo, hi] where |cos(K Lambda)| = 1: sign changes of
/// |cos| - 1 are bracketed and refined; tangential touches (closed gaps) are
/// caught by refining local maxima of |cos|.
inline std::vector<double> band_edges(const BilayerCell& cell, double lo, double hi,
                                      std::size_t samples = kEdgeScanSamples)
{
    const auto excess = [&](double w) { return std::abs(bloch_cosine(cell, w)) - 1.0; };
    constexpr double touch_tolerance = 1e-12;
    const auto grid = uniform_grid(lo, hi, samples);
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) f[i] = excess(grid[i]);

    std::vector<double> edges;
    const auto add = [&](double w) {
        if (edges.empty() || std::abs(edges.back() - w) > 1e-9) edges.push_back(w);
    };
    if (std::abs(f.front()) <= touch_tolerance) add(grid.front());
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if ((f[i] > 0.0) != (f[i + 1] > 0.0) && std::abs(f[i]) > touch_tolerance &&
            std::abs(f[i + 1]) > touch_tolerance) {
            add(bracketed_root(excess, grid[i], grid[i + 1]));
        } else if (i > 0 && f[i] >= f[i - 1] && f[i] >= f[i + 1] && f[i] <= 0.0) {
            // local maximum of |cos| that stays <= 1: closed gap if it touches 1
            std::uintmax_t iterations = 200;
            const auto [w, neg] = boost::math::tools::brent_find_minima(
                [&](double x) { return -excess(x); }, grid[i - 1], grid[i + 1],
                std::numeric_limits<double>::digits / 2, iterations);
            if (-neg >= -touch_tolerance) add(w);
        } else if (std::abs(f[i]) <= touch_tolerance && i > 0) {
            add(grid[i]);
        }
    }
    if (std::abs(f.back()) <= touch_tolerance) add(grid.back());
    std::sort(edges.begin(), edges.end());
    return edges;
}

inline DispersionResult dispersion(const BilayerCell& cell, const std::vector<double>& grid,
                                   double edge_hi = 2.0)
{
    require(cell.n_a >= 1.0 && cell.n_b >= 1.0, "refractive indices must be >= 1");
    require(!grid.empty() && strictly_ascending(grid), "frequency grid must be ascending");
    DispersionResult out;
    out.cell = cell;
    out.frequencies = grid;
    for (double w : grid) {
        const double c = bloch_cosine(cell, w);
        out.cos_bloch.push_back(c);
        out.bloch_phase.push_back(bloch_phase(c));
        out.group_velocity.push_back(group_velocity(cell, w));
    }
    out.band_edges = band_edges(cell, 0.0, edge_hi);
    return out;
}

/// Quarter-wave dispersion on [0, 2] omega0.
inline DispersionResult dispersion(double n_low, double n_high, std::size_t samples = 2001)
{
    require(n_low >= 1.0 && n_high >= 1.0, "refractive indices must be >= 1");
    return dispersion(quarter_wave_cell(n_low, n_high), uniform_grid(0.0, 2.0, samples));
}

/// Lowest band edge above zero at which the first gap opens, if any.
inline std::optional<double> first_gap_lower_edge(const BilayerCell& cell, double hi = 2.0)
{
    const auto grid = uniform_grid(0.0, hi, kEdgeScanSamples);
    const auto excess = [&](double w) { return std::abs(bloch_cosine(cell, w)) - 1.0; };
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        if (excess(grid[i]) <= 0.0 && excess(grid[i + 1]) > 0.0)
            return bracketed_root(excess, grid[i], grid[i + 1]);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Band-edge resonance

struct BandEdgePeak {
    double frequency = 0.0;
    double value = 0.0;
    double gap_edge = 0.0;
};

inline constexpr double kPeakWindowLo = 0.5;
inline constexpr double kPeakEdgeGuard = 1e-6;

/// Scan density: the band-edge resonance narrows roughly as 1/N^2.
inline std::size_t peak_scan_samples(const Stack& stack)
{
    const double n = static_cast<double>(stack.size());
    return std::max<std::size_t>(20001, static_cast<std::size_t>(5.0 * n * n));
}

namespace detail {

inline double peak_window_hi(const Stack& stack)
{
    const auto cell = periodic_cell(stack);
    if (!cell) throw NumericalError("no band-edge peak: stack is not a two-material periodic stack");
    const auto edge = first_gap_lower_edge(*cell);
    if (!edge || *edge <= kPeakWindowLo + kPeakEdgeGuard)
        throw NumericalError("no band-edge peak: infinite crystal has no gap above 0.5");
    return *edge;
}

} // namespace detail

/// Maximum of the global DOS between 0.5 omega0 and the lower edge of the
/// first gap of the corresponding infinite crystal.
inline BandEdgePeak band_edge_peak(const Stack& stack)
{
    const double edge = detail::peak_window_hi(stack);
    const auto best = scan_and_refine_max([&](double w) { return dos_at(stack, w); },
                                          kPeakWindowLo, edge - kPeakEdgeGuard,
                                          peak_scan_samples(stack));
    return {best.x, best.value, edge};
}

/// Same search on the local DOS at the emitter anchor.
inline BandEdgePeak local_band_edge_peak(const Stack& stack,
                                         Normalization normalization = Normalization::low_frequency)
{
    const double edge = detail::peak_window_hi(stack);
    const double scale = ldos_scale(stack, normalization);
    const auto best = scan_and_refine_max([&](double w) { return local_dos_vacuum_at(stack, w); },
                                          kPeakWindowLo, edge - kPeakEdgeGuard,
                                          peak_scan_samples(stack));
    return {best.x, best.value / scale, edge};
}

} // namespace photon_gun
