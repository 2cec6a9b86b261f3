// io.hpp - CSV and JSON serialisation of results
//
// Numbers are written in shortest round-trip form (std::to_chars), so CSV and
// JSON files compare byte-for-byte across runs. CSV files start with comment
// lines ("# ...") carrying the run configuration and provenance.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "photon_gun/emitter.hpp"
#include "photon_gun/error.hpp"
#include "photon_gun/kerr.hpp"
#include "photon_gun/spectra.hpp"
#include "photon_gun/stack.hpp"
#include "photon_gun/stirap.hpp"

namespace photon_gun {

inline std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string hex_hash(std::uint64_t h)
{
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

/// Comment lines shared by every CSV: the resolved configuration plus free-form tags.
inline void write_csv_preamble(std::ostream& os, const nlohmann::json& config,
                               const std::string& tags)
{
    os << "# config: " << config.dump() << '\n';
    if (!tags.empty()) os << "# " << tags << '\n';
}

inline void write_spectrum_csv(std::ostream& os, const DosSpectrum& s, const Stack& stack,
                               const nlohmann::json& config = nlohmann::json::object())
{
    write_csv_preamble(os, config,
                       "kind=" + to_string(s.kind) + " normalization=" + to_string(s.normalization) +
                           " stack_hash=" + hex_hash(stack_hash(stack)));
    os << "omega,value\n";
    for (std::size_t i = 0; i < s.frequencies.size(); ++i)
        os << format_number(s.frequencies[i]) << ',' << format_number(s.values[i]) << '\n';
}

inline void write_dispersion_csv(std::ostream& os, const DispersionResult& d,
                                 const nlohmann::json& config = nlohmann::json::object())
{
    std::string edges;
    for (double e : d.band_edges) edges += (edges.empty() ? "" : ";") + format_number(e);
    write_csv_preamble(os, config, "kind=dispersion band_edges=" + edges);
    os << "omega,cos_bloch,bloch_phase_re,bloch_phase_im,group_velocity\n";
    for (std::size_t i = 0; i < d.frequencies.size(); ++i) {
        os << format_number(d.frequencies[i]) << ',' << format_number(d.cos_bloch[i]) << ','
           << format_number(d.bloch_phase[i].real()) << ',' << format_number(d.bloch_phase[i].imag())
           << ',';
        if (std::isfinite(d.group_velocity[i])) os << format_number(d.group_velocity[i]);
        os << '\n';
    }
}

inline void write_trajectory_csv(std::ostream& os, const PopulationTrajectory& tr,
                                 const nlohmann::json& config = nlohmann::json::object())
{
    write_csv_preamble(os, config, "kind=stirap_trajectory");
    os << "t,p1,p2,p3,loss,dark_overlap\n";
    for (std::size_t i = 0; i < tr.size(); ++i) {
        os << format_number(tr.times[i]) << ',' << format_number(tr.p1[i]) << ','
           << format_number(tr.p2[i]) << ',' << format_number(tr.p3[i]) << ','
           << format_number(tr.loss[i]) << ',' << format_number(tr.dark_overlap[i]) << '\n';
    }
}

inline void write_events_csv(std::ostream& os, const std::vector<PhotonEventRecord>& events,
                             const nlohmann::json& config = nlohmann::json::object())
{
    write_csv_preamble(os, config, "kind=photon_events");
    os << "cycle,trigger_time,emission_time\n";
    for (const auto& e : events) {
        os << e.cycle_index << ',' << format_number(e.trigger_time) << ',';
        if (e.emission_time) os << format_number(*e.emission_time);
        os << '\n';
    }
}

template <class Sample, class Get>
void write_two_column_csv(std::ostream& os, const std::vector<Sample>& rows, const std::string& header,
                          const std::string& kind, Get get,
                          const nlohmann::json& config = nlohmann::json::object())
{
    write_csv_preamble(os, config, "kind=" + kind);
    os << header << '\n';
    for (const auto& r : rows) {
        const auto [x, y] = get(r);
        os << format_number(x) << ',' << format_number(y) << '\n';
    }
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json_value(const DosSpectrum& s)
{
    return {{"kind", to_string(s.kind)},
            {"normalization", to_string(s.normalization)},
            {"omega", s.frequencies},
            {"value", s.values}};
}

inline nlohmann::json to_json_value(const BandEdgePeak& p)
{
    return {{"omega_peak", p.frequency}, {"rho_peak", p.value}, {"gap_edge", p.gap_edge}};
}

inline nlohmann::json to_json_value(const DispersionResult& d)
{
    std::vector<double> re, im;
    nlohmann::json vg = nlohmann::json::array();
    for (std::size_t i = 0; i < d.frequencies.size(); ++i) {
        re.push_back(d.bloch_phase[i].real());
        im.push_back(d.bloch_phase[i].imag());
        if (std::isfinite(d.group_velocity[i]))
            vg.push_back(d.group_velocity[i]);
        else
            vg.push_back(nullptr);
    }
    return {{"cell",
             {{"n_a", d.cell.n_a}, {"d_a", d.cell.d_a}, {"n_b", d.cell.n_b}, {"d_b", d.cell.d_b}}},
            {"band_edges", d.band_edges},
            {"omega", d.frequencies},
            {"cos_bloch", d.cos_bloch},
            {"bloch_phase_re", re},
            {"bloch_phase_im", im},
            {"group_velocity", vg}};
}

inline nlohmann::json to_json_value(const PopulationTrajectory& tr)
{
    return {{"t", tr.times},   {"p1", tr.p1},     {"p2", tr.p2},
            {"p3", tr.p3},     {"loss", tr.loss}, {"dark_overlap", tr.dark_overlap}};
}

inline nlohmann::json to_json_value(const EmitterModel& e)
{
    return {{"transition_frequency", e.transition_frequency},
            {"bulk_lifetime_s", e.bulk_lifetime},
            {"linewidth", e.linewidth},
            {"line_shape", to_string(e.shape)},
            {"label", e.label}};
}

inline nlohmann::json to_json_value(const RateReport& r)
{
    return {{"enhancement", r.enhancement},
            {"enhanced_rate_per_s", r.enhanced_rate},
            {"pump_rep_rate_per_s", r.pump_rep_rate},
            {"device_rep_rate_per_s", r.device_rep_rate},
            {"emission_probability_target", r.emission_probability_target},
            {"wait_time_s", r.wait_time},
            {"stirap_duration_s", r.stirap_duration},
            {"limited_by", r.device_rep_rate < r.pump_rep_rate ? "decay" : "pump"},
            {"emitter", to_json_value(r.emitter)}};
}

inline nlohmann::json to_json_value(const JitterStats& s)
{
    return {{"mean_delay_s", s.mean_delay},
            {"std_delay_s", s.std_delay},
            {"emitted_fraction", s.emitted_fraction},
            {"emitted", s.emitted},
            {"cycles", s.cycles}};
}

inline std::string to_string(LayerSelector s)
{
    switch (s) {
    case LayerSelector::high_index: return "high";
    case LayerSelector::low_index: return "low";
    case LayerSelector::all: return "all";
    }
    return "unknown";
}

inline nlohmann::json to_json_value(const SwitchResult& r)
{
    return {{"delta_n_required", r.delta_n_required},
            {"delta_n_over_n", r.delta_n_over_n},
            {"abs_delta_n_over_n", std::abs(r.delta_n_over_n)},
            {"reference_index", r.reference_index},
            {"edge_shift", r.edge_shift},
            {"emitter_frequency", r.emitter_frequency},
            {"off_enhancement", r.off_enhancement},
            {"on_enhancement", r.on_enhancement},
            {"below_enhancement_at_0_9", r.below_enhancement},
            {"recheck_passed", r.recheck_passed},
            {"criterion",
             {{"off_threshold", r.criterion.off_threshold},
              {"on_threshold", r.criterion.on_threshold},
              {"on_fraction", r.criterion.on_fraction},
              {"unshifted_line_peak", r.criterion.unshifted_peak}}}};
}

/// Pretty JSON with a trailing newline.
inline void write_json(std::ostream& os, const nlohmann::json& doc)
{
    os << doc.dump(2) << '\n';
}

inline void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw NumericalError("cannot open output file: " + path);
    f << content;
    if (!f) throw NumericalError("failed writing output file: " + path);
}

} // namespace photon_gun
