#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "photon_gun/spectra.hpp"

using namespace photon_gun;

namespace {

Stack quarter_wave(double n1, double n2, int periods)
{
    QuarterWaveSpec s;
    s.n_low = n1;
    s.n_high = n2;
    s.num_periods = periods;
    return build_quarter_wave(s);
}

Stack random_stack(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> idx(1.0, 3.5);
    std::uniform_real_distribution<double> thick(0.05, 2.0);
    std::uniform_int_distribution<int> count(1, 30);
    std::vector<Layer> layers(static_cast<std::size_t>(count(rng)));
    for (auto& l : layers) l = Layer{idx(rng), thick(rng), 0.0};
    return Stack(std::move(layers));
}

} // namespace

TEST(Scattering, SingleSlabMatchesAiry)
{
    const double n = 2.0;
    const double d = quarter_wave_thickness(n);
    const Stack s({Layer{n, d}});
    const auto res = scattering(s, 1.0);
    EXPECT_NEAR(std::norm(res.t), 0.64, 1e-12);
    for (double w : {0.2, 0.55, 1.3, 1.9})
        EXPECT_NEAR(std::norm(scattering(s, w).t), oracle::slab_transmission(n, n * d * w), 1e-12);
}

TEST(Scattering, GapIsOpaqueFor29Periods)
{
    const Stack s = quarter_wave(1.0, 2.0, 29);
    EXPECT_LT(std::norm(scattering(s, 1.0).t), 1e-6);
}

TEST(Scattering, MatchesAmplitudeOracle)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> w(0.01, 1.99);
    for (int k = 0; k < 200; ++k) {
        const Stack s = random_stack(rng);
        const double omega = w(rng);
        const auto t = scattering(s, omega).t;
        const auto ref = oracle::transmission(s, omega);
        EXPECT_LT(std::abs(t - ref), 1e-9 * std::max(1.0, std::abs(ref)));
    }
}

TEST(Scattering, UnitarityAndUnitDeterminant)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> w(0.01, 1.99);
    for (int k = 0; k < 2000; ++k) {
        const Stack s = random_stack(rng);
        const double omega = w(rng);
        const auto res = scattering(s, omega);
        EXPECT_NEAR(std::norm(res.r) + std::norm(res.t), 1.0, 1e-9);
        EXPECT_LT(std::abs(stack_matrix(s, omega).determinant() - 1.0), 1e-9);
    }
}

TEST(Scattering, ReciprocityThroughMirroredStack)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> w(0.01, 1.99);
    for (int k = 0; k < 200; ++k) {
        const Stack s = random_stack(rng);
        const double omega = w(rng);
        const auto a = scattering(s, omega).t;
        const auto b = scattering(oracle::mirrored(s), omega).t;
        EXPECT_LT(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a)) + 1e-12);
    }
}

TEST(Scattering, NonPositiveFrequencyRejected)
{
    EXPECT_THROW(scattering(quarter_wave(1, 2, 3), 0.0), InvalidArgument);
}

TEST(Dos, HomogeneousMatchedSlabIsFlat)
{
    // the slab sits in a matching medium, so there are no reflections at all
    const Stack s(quarter_wave(1.5, 1.5, 10).layers(), std::nullopt, 1.5);
    const auto grid = uniform_grid(0.01, 1.99, 397);
    for (double v : dos(s, grid).values) EXPECT_NEAR(v, 1.0, 1e-9);

    const Stack anchored = place_emitter_midstack(s);
    for (double v : local_dos(anchored, grid, Normalization::vacuum).values)
        EXPECT_NEAR(v, 1.0 / 1.5, 1e-9);
    for (double v : local_dos(anchored, grid, Normalization::bulk_dielectric).values)
        EXPECT_NEAR(v, 1.0, 1e-9);
    for (double v : local_dos(anchored, grid, Normalization::low_frequency).values)
        EXPECT_NEAR(v, 1.0, 1e-9);
}

TEST(Dos, VacuumCladSlabShowsFabryPerotRipple)
{
    QuarterWaveSpec q;
    q.n_low = q.n_high = 1.5;
    q.num_periods = 10;
    const auto d = dos(build_quarter_wave(q), uniform_grid(0.1, 1.9, 301));
    const auto [lo, hi] = std::minmax_element(d.values.begin(), d.values.end());
    EXPECT_GT(*hi - *lo, 0.01);
}

TEST(Dos, SymmetricAboutMidgap)
{
    const Stack s = quarter_wave(1.0, 2.0, 12);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> x(0.01, 0.99);
    for (int k = 0; k < 200; ++k) {
        const double dw = x(rng);
        const double a = dos_at(s, 1.0 - dw);
        const double b = dos_at(s, 1.0 + dw);
        EXPECT_NEAR(a, b, 1e-6 * std::abs(a));
    }
}

TEST(Dos, AnalyticDerivativeMatchesFiniteDifference)
{
    const Stack s = quarter_wave(1.0, 2.0, 10);
    for (double w : uniform_grid(0.05, 1.95, 97)) {
        if (std::norm(scattering(s, w).t) < 1e-3) continue;
        const double a = dos_at(s, w);
        EXPECT_NEAR(a, oracle::dos_finite_difference(s, w), 1e-4 * std::abs(a)) << w;
    }
}

TEST(Dos, GridValidation)
{
    const Stack s = quarter_wave(1.0, 2.0, 3);
    EXPECT_THROW(dos(s, {}), InvalidArgument);
    EXPECT_THROW(dos(s, {0.5, 0.4}), InvalidArgument);
    EXPECT_THROW(dos(s, {0.5, 0.5}), InvalidArgument);
    EXPECT_THROW(dos(s, {0.0, 0.5}), InvalidArgument);
    EXPECT_THROW(dos(s, {0.5, 2.0}), InvalidArgument);
}

TEST(LocalDos, MatchesAmplitudeOracle)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> w(0.05, 1.95);
    std::uniform_real_distribution<double> off(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        Stack s = random_stack(rng);
        s = s.with_emitter(EmitterAnchor{static_cast<std::size_t>(k) % s.size(), off(rng)});
        const double omega = w(rng);
        const double ref = oracle::local_dos_vacuum(s, omega);
        EXPECT_NEAR(local_dos_vacuum_at(s, omega), ref, 1e-9 * std::max(1.0, ref));
    }
}

TEST(LocalDos, NeedsAnchor)
{
    EXPECT_THROW(local_dos(quarter_wave(1, 2, 3), {0.5}), InvalidArgument);
    const Stack s = place_emitter_midstack(quarter_wave(1, 2, 3));
    EXPECT_THROW(local_dos(s, {0.5}, Normalization::optical_length), InvalidArgument);
}

TEST(LocalDos, NormalisationsDifferByConstantFactors)
{
    const Stack s = place_emitter_midstack(quarter_wave(1.0, 2.0, 8));
    const std::vector<double> grid{0.3, 0.7, 0.9};
    const auto v = local_dos(s, grid, Normalization::vacuum);
    const auto b = local_dos(s, grid, Normalization::bulk_dielectric);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(b.values[i], 2.0 * v.values[i], 1e-12);
}

TEST(LocalDos, NodePositionIsSuppressedAtBandEdge)
{
    const Stack base = quarter_wave(1.0, 2.0, 29);
    const Stack mid = place_emitter_midstack(base);
    const auto peak = local_band_edge_peak(mid, Normalization::vacuum);
    // the lower band-edge mode is odd about the centre of each low layer
    const Stack node = base.with_emitter(EmitterAnchor{mid.emitter()->layer - 1, 0.5});
    EXPECT_LT(local_dos_vacuum_at(node, peak.frequency), 0.05 * peak.value);
}

TEST(Dispersion, ClosedFormGapEdges)
{
    for (auto [n1, n2] : {std::pair{1.0, 2.0}, std::pair{1.45, 2.1}, std::pair{1.0, 3.5}}) {
        const auto d = dispersion(n1, n2);
        ASSERT_EQ(d.band_edges.size(), 4u);
        EXPECT_NEAR(d.band_edges[0], 0.0, 1e-12);
        EXPECT_NEAR(d.band_edges[1], oracle::lower_gap_edge(n1, n2), 1e-9);
        EXPECT_NEAR(d.band_edges[2] - d.band_edges[1], oracle::gap_width(n1, n2), 1e-9);
        EXPECT_NEAR(d.band_edges[3], 2.0, 1e-12);
    }
    const auto d = dispersion(1.0, 2.0);
    EXPECT_NEAR(d.band_edges[1], (2.0 / std::numbers::pi) * std::asin(std::sqrt(8.0) / 3.0), 1e-9);
    EXPECT_NEAR(d.band_edges[2] - d.band_edges[1], (4.0 / std::numbers::pi) * std::asin(1.0 / 3.0),
                1e-9);
}

TEST(Dispersion, EqualIndicesHaveClosedGap)
{
    const auto d = dispersion(1.5, 1.5);
    ASSERT_EQ(d.band_edges.size(), 3u);
    EXPECT_NEAR(d.band_edges[0], 0.0, 1e-12);
    EXPECT_NEAR(d.band_edges[1], 1.0, 1e-6);
    EXPECT_NEAR(d.band_edges[2], 2.0, 1e-12);
    EXPECT_FALSE(first_gap_lower_edge(quarter_wave_cell(1.5, 1.5)).has_value());
}

TEST(Dispersion, GroupVelocityVanishesAtGapEdges)
{
    const auto cell = quarter_wave_cell(1.0, 2.0);
    const double edge = oracle::lower_gap_edge(1.0, 2.0);
    const double far = group_velocity(cell, 0.3);
    EXPECT_GT(far, 0.5);
    double last = far;
    for (double gap : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const double v = group_velocity(cell, edge - gap);
        EXPECT_LT(v, last);
        last = v;
    }
    EXPECT_LT(last, 0.01);
    EXPECT_TRUE(std::isnan(group_velocity(cell, 1.0)));
}

TEST(Dispersion, InGapSamplesHaveImaginaryBlochPhase)
{
    const auto d = dispersion(1.0, 2.0, 201);
    for (std::size_t i = 0; i < d.frequencies.size(); ++i) {
        if (std::abs(d.cos_bloch[i]) > 1.0)
            EXPECT_GT(std::abs(d.bloch_phase[i].imag()), 0.0);
        else
            EXPECT_EQ(d.bloch_phase[i].imag(), 0.0);
    }
}

TEST(BandEdgePeak, BelowGapEdgeNearEmission)
{
    const Stack s = place_emitter_midstack(quarter_wave(1.0, 2.0, 29));
    const auto p = local_band_edge_peak(s);
    EXPECT_LT(p.frequency, p.gap_edge);
    EXPECT_NEAR(p.frequency, 0.781, 0.01);
    EXPECT_GT(p.value, 50.0);
    EXPECT_LT(p.value, 300.0);
}

TEST(BandEdgePeak, GlobalPeakGrowsWithPeriods)
{
    double last = 0.0;
    for (int n : {5, 10, 20, 40}) {
        const auto p = band_edge_peak(quarter_wave(1.0, 2.0, n));
        EXPECT_GT(p.value, last);
        last = p.value;
    }
}

TEST(BandEdgePeak, ConvergedInScanDensity)
{
    const Stack s = quarter_wave(1.0, 2.0, 20);
    const auto p = band_edge_peak(s);
    const auto fine = scan_and_refine_max([&](double w) { return dos_at(s, w); }, kPeakWindowLo,
                                          p.gap_edge - kPeakEdgeGuard, 200001);
    EXPECT_NEAR(p.value, fine.value, 1e-6 * fine.value);
    EXPECT_NEAR(p.frequency, fine.x, 1e-6);
}

TEST(BandEdgePeak, HomogeneousStackHasNoPeak)
{
    QuarterWaveSpec q;
    q.n_low = q.n_high = 1.5;
    EXPECT_THROW(band_edge_peak(build_quarter_wave(q)), NumericalError);
}
