// band_edge_scan.cpp - band-edge LDOS enhancement versus number of periods
//
// Prints, for a 1:2 quarter-wave stack with a mid-stack emitter, the position
// and height of the first band-edge resonance and the resulting decay rate
// for a 1 ms bulk lifetime.

#include <cstdio>

#include "photon_gun/photon_gun.hpp"

int main()
{
    using namespace photon_gun;
    std::printf("%8s %12s %12s %14s\n", "periods", "omega_peak", "ldos_peak", "rate [1/s]");
    for (int n : {5, 10, 20, 29, 40, 60}) {
        QuarterWaveSpec spec;
        spec.num_periods = n;
        const Stack stack = place_emitter_midstack(build_quarter_wave(spec));
        const auto peak = local_band_edge_peak(stack);
        std::printf("%8d %12.6f %12.3f %14.4g\n", n, peak.frequency, peak.value, peak.value / 1e-3);
    }
}
