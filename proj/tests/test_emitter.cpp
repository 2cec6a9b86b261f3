#include <gtest/gtest.h>

#include <cmath>

#include "photon_gun/emitter.hpp"

using namespace photon_gun;

namespace {

DosSpectrum flat(double lo, double hi, double value)
{
    DosSpectrum s;
    s.frequencies = uniform_grid(lo, hi, 101);
    s.values.assign(101, value);
    s.kind = SpectrumKind::local;
    return s;
}

Stack quarter_wave(int periods)
{
    QuarterWaveSpec q;
    q.num_periods = periods;
    return place_emitter_midstack(build_quarter_wave(q));
}

} // namespace

TEST(Line, FlatSpectrumAveragesToItsValue)
{
    EmitterModel e;
    EXPECT_NEAR(enhancement_at_line(flat(0.7, 0.9, 1.0), e), 1.0, 1e-12);
    EXPECT_NEAR(enhancement_at_line(flat(0.7, 0.9, 3.25), e), 3.25, 1e-12);
    e.shape = LineShape::gaussian;
    EXPECT_NEAR(enhancement_at_line(flat(0.7, 0.9, 1.0), e), 1.0, 1e-12);
}

TEST(Line, LinearSpectrumAveragesToCentreForSymmetricLine)
{
    DosSpectrum s = flat(0.7, 0.9, 0.0);
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] = 2.0 * s.frequencies[i];
    EmitterModel e;
    EXPECT_NEAR(enhancement_at_line(s, e), 2.0 * e.transition_frequency, 1e-9);
}

TEST(Line, InsufficientCoverageIsRejected)
{
    EmitterModel e;
    EXPECT_THROW(enhancement_at_line(flat(0.7811, 0.9, 1.0), e), InvalidArgument);
    e.linewidth = 0.0;
    EXPECT_THROW(enhancement_at_line(flat(0.7, 0.9, 1.0), e), InvalidArgument);
}

TEST(Line, InGapLineIsSuppressed)
{
    const Stack s = quarter_wave(29);
    EmitterModel e;
    e.transition_frequency = 1.0;
    EXPECT_LT(line_enhancement(s, e, low_frequency_reference(s)), 0.01);
}

TEST(Line, BandEdgeLineIsEnhanced)
{
    const Stack s = quarter_wave(29);
    EmitterModel e;
    e.transition_frequency = local_band_edge_peak(s).frequency;
    const double v = line_enhancement(s, e, low_frequency_reference(s));
    EXPECT_GT(v, 80.0);
    EXPECT_LT(v, 130.0);
}

TEST(Rate, ArithmeticExamples)
{
    EmitterModel e;
    const auto r = rate_report(115.0, e, 1e9, 0.99);
    EXPECT_NEAR(r.enhanced_rate, 1.15e5, 1e-6);
    EXPECT_NEAR(r.wait_time, std::log(100.0) / 1.15e5, 1e-15);

    const auto one = rate_report(1.0, e, 1e9, 1.0 - std::exp(-1.0));
    EXPECT_NEAR(one.wait_time, e.bulk_lifetime, 1e-15);
    EXPECT_NEAR(one.device_rep_rate, 1.0 / e.bulk_lifetime, 1e-9);
}

TEST(Rate, PumpOrDecayLimits)
{
    EmitterModel e;
    const auto pump_limited = rate_report(115.0, e, 1e3, 0.99);
    EXPECT_EQ(pump_limited.device_rep_rate, 1e3);
    const auto decay_limited = rate_report(115.0, e, 1e9, 0.99);
    EXPECT_NEAR(decay_limited.device_rep_rate, 1.0 / decay_limited.wait_time, 1e-9);
    EXPECT_LT(decay_limited.device_rep_rate, 1e9);
}

TEST(Rate, StirapDurationAddsToCycle)
{
    EmitterModel e;
    const auto a = rate_report(115.0, e, 1e9, 0.99);
    const auto b = rate_report(115.0, e, 1e9, 0.99, 1e-6);
    EXPECT_NEAR(b.wait_time - a.wait_time, 1e-6, 1e-15);
}

TEST(Rate, InvalidInputs)
{
    EmitterModel e;
    EXPECT_THROW(rate_report(0.0, e, 1e9, 0.5), InvalidArgument);
    EXPECT_THROW(rate_report(1.0, e, 0.0, 0.5), InvalidArgument);
    EXPECT_THROW(rate_report(1.0, e, 1e9, 1.0), InvalidArgument);
    EXPECT_THROW(rate_report(1.0, e, 1e9, 0.0), InvalidArgument);
    e.bulk_lifetime = -1.0;
    EXPECT_THROW(rate_report(1.0, e, 1e9, 0.5), InvalidArgument);
}

TEST(Rate, DeviceRateMonotoneInEnhancement)
{
    EmitterModel e;
    double last = 0.0;
    for (double f : {1.0, 2.0, 10.0, 115.0, 1000.0}) {
        const double r = rate_report(f, e, 1e9, 0.99).device_rep_rate;
        EXPECT_GT(r, last);
        last = r;
    }
}

TEST(Stream, EmissionProbabilityWithinBinomialBounds)
{
    EmitterModel e;
    const auto r = rate_report(115.0, e, 1e9, 0.9);
    const std::int64_t n = 100000;
    const auto events = photon_stream(r, n, 7);
    const auto stats = jitter_stats(events);
    const double p = expected_emitted_fraction(r);
    EXPECT_NEAR(p, 0.9, 1e-12);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    EXPECT_LE(std::abs(stats.emitted_fraction - p), 3.0 * sigma);
}

TEST(Stream, DeterministicForSeed)
{
    const auto r = rate_report(115.0, EmitterModel{}, 1e9, 0.9);
    EXPECT_EQ(photon_stream(r, 1000, 42), photon_stream(r, 1000, 42));
    EXPECT_NE(photon_stream(r, 1000, 42), photon_stream(r, 1000, 43));
}

TEST(Stream, TriggerSpacingFollowsCycleRate)
{
    // fast decay, 1 MHz pump: every cycle emits, one microsecond apart
    EmitterModel e;
    e.bulk_lifetime = 1.0;
    const auto r = rate_report(1e12, e, 1e6, 0.99);
    EXPECT_EQ(r.device_rep_rate, 1e6);
    const auto events = photon_stream(r, 1000, 1);
    for (std::size_t k = 0; k < events.size(); ++k) {
        EXPECT_NEAR(events[k].trigger_time, 1e-6 * static_cast<double>(k), 1e-15);
        ASSERT_TRUE(events[k].emission_time);
        EXPECT_LT(*events[k].emission_time - events[k].trigger_time, 1e-6);
    }
}

TEST(Stream, JitterMatchesTruncatedExponential)
{
    EmitterModel e;
    const auto r = rate_report(115.0, e, 1e9, 0.99);
    const auto stats = jitter_stats(photon_stream(r, 100000, 99));
    const double window = r.cycle_period();
    const double expected = truncated_exponential_mean(r.enhanced_rate, window);
    EXPECT_NEAR(stats.mean_delay, expected, 0.02 * expected);
    // untruncated mean is 1/rate, about 8.7 us
    EXPECT_NEAR(1.0 / r.enhanced_rate, 8.7e-6, 0.02 * 8.7e-6);
}

TEST(Stream, StirapDelayIsConstantOffset)
{
    EmitterModel e;
    const auto a = rate_report(115.0, e, 1e9, 0.99);
    const auto b = rate_report(115.0, e, 1e9, 0.99, 2e-6);
    const auto ea = photon_stream(a, 500, 5);
    const auto eb = photon_stream(b, 500, 5);
    for (std::size_t k = 0; k < ea.size(); ++k) {
        if (!ea[k].emission_time || !eb[k].emission_time) continue;
        EXPECT_NEAR((*eb[k].emission_time - eb[k].trigger_time) -
                        (*ea[k].emission_time - ea[k].trigger_time),
                    2e-6, 1e-15);
    }
}

TEST(Stream, JitterNeedsEmittedEvents)
{
    std::vector<PhotonEventRecord> none(3);
    EXPECT_THROW(jitter_stats(none), InvalidArgument);
    EXPECT_THROW(photon_stream(rate_report(1.0, EmitterModel{}, 1e9, 0.5), 0, 1), InvalidArgument);
}

TEST(PeriodsForRate, SmallestStackReachingTarget)
{
    EmitterModel e;
    const auto r = periods_for_rate(1.0, 2.0, e, 1e5);
    EXPECT_GE(r.band_edge_enhancement, 100.0);
    QuarterWaveSpec q;
    q.num_periods = r.periods - 1;
    const double below =
        local_band_edge_peak(place_emitter_midstack(build_quarter_wave(q))).value;
    EXPECT_LT(below, 100.0);
    EXPECT_THROW(periods_for_rate(1.0, 2.0, e, 1e12, 64), NumericalError);
}
