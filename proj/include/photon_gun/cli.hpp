// cli.hpp - command-line front end (dos | dispersion | stirap | rate | kerr)
//
// run_cli() is the whole program; tools/photon_gun.cpp only forwards argv.
// Exit codes: 0 success, 1 numerical failure, 2 usage or validation error.
// Every run writes run.json (the resolved configuration) next to its outputs,
// and every CSV embeds the same configuration in its comment preamble.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "photon_gun/emitter.hpp"
#include "photon_gun/error.hpp"
#include "photon_gun/io.hpp"
#include "photon_gun/kerr.hpp"
#include "photon_gun/spectra.hpp"
#include "photon_gun/stack.hpp"
#include "photon_gun/stirap.hpp"

namespace photon_gun::cli {

enum ExitCode : int { ok = 0, numerical_failure = 1, usage_error = 2 };

struct CommonOptions {
    std::string out_dir = ".";
    std::string format = "csv";
    std::uint64_t seed = 1;
};

struct StackOptions {
    double n1 = 1.0;
    double n2 = 2.0;
    int periods = 29;
    std::string count = "periods";
    std::string outer = "low";
    std::string emitter = "mid";
    std::string stack_file;
};

struct DosOptions {
    StackOptions stack;
    std::size_t points = 20001;
    std::string normalization = "low_frequency";
    bool refine = true;
};

struct DispersionOptions {
    double n1 = 1.0;
    double n2 = 2.0;
    std::size_t points = 2001;
};

struct StirapOptions {
    double tau = 0.0;
    std::optional<double> omega13;
    std::optional<double> omega23;
    double adiabaticity = 20.0;
    std::optional<double> separation;
    double gamma3 = 0.0;
    double gamma2 = 0.0;
    double detuning = 0.0;
    std::string ordering = "counterintuitive";
    double tol = kDefaultTolerance;
    std::size_t points = 401;
    bool sweep = false;
    double sweep_min = 0.2;
    double sweep_max = 3.0;
    std::size_t sweep_points = 29;
};

struct RateOptions {
    StackOptions stack;
    double lifetime = 1e-3;
    double linewidth = 1e-4;
    std::optional<double> omega_a;
    double pump_rate = 1e8;
    double target = 0.99;
    double stirap_duration = 0.0;
    std::int64_t cycles = 100000;
    double rate_goal = 1e6;
    bool periods_search = true;
};

struct KerrCliOptions {
    StackOptions stack;
    double off = 0.05;
    double on_fraction = 0.5;
    std::optional<double> on;
    double linewidth = 1e-4;
    std::optional<double> omega_a;
    std::string layers = "high";
    double tolerance = 1e-5;
};

namespace detail {

inline Normalization parse_normalization(const std::string& s)
{
    if (s == "low_frequency") return Normalization::low_frequency;
    if (s == "vacuum") return Normalization::vacuum;
    if (s == "bulk_dielectric") return Normalization::bulk_dielectric;
    throw InvalidArgument("unknown normalization: " + s);
}

inline LayerSelector parse_selector(const std::string& s)
{
    if (s == "high") return LayerSelector::high_index;
    if (s == "low") return LayerSelector::low_index;
    if (s == "all") return LayerSelector::all;
    throw InvalidArgument("unknown layer selector: " + s);
}

inline QuarterWaveSpec quarter_wave_spec(const StackOptions& o)
{
    QuarterWaveSpec spec;
    spec.n_low = o.n1;
    spec.n_high = o.n2;
    spec.num_periods = o.periods;
    spec.count = o.count == "layers" ? LayerCount::layers : LayerCount::periods;
    spec.outer = o.outer == "high" ? OuterLayer::high : OuterLayer::low;
    return spec;
}

inline Stack read_stack_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw InvalidArgument("cannot read stack file: " + path);
    nlohmann::json doc;
    try {
        f >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("stack file is not valid JSON: ") + e.what());
    }
    return stack_from_json(doc);
}

inline Stack make_stack(const StackOptions& o)
{
    Stack stack = o.stack_file.empty() ? build_quarter_wave(quarter_wave_spec(o))
                                       : read_stack_file(o.stack_file);
    if (o.emitter == "mid") return place_emitter_midstack(stack);
    if (o.stack_file.empty()) return stack.with_emitter(std::nullopt);
    return stack;
}

inline nlohmann::json to_config(const StackOptions& o)
{
    nlohmann::json j{{"n1", o.n1},       {"n2", o.n2},         {"periods", o.periods},
                     {"count", o.count}, {"outer", o.outer},   {"emitter", o.emitter}};
    if (!o.stack_file.empty()) j["stack_file"] = o.stack_file;
    return j;
}

inline void add_stack_options(CLI::App* app, StackOptions& o)
{
    app->add_option("--n1", o.n1, "low refractive index");
    app->add_option("--n2", o.n2, "high refractive index");
    app->add_option("--periods", o.periods, "number of periods (or layers, see --count)");
    app->add_option("--count", o.count, "how --periods is read")
        ->check(CLI::IsMember({"periods", "layers"}));
    app->add_option("--outer", o.outer, "material of the leftmost layer")
        ->check(CLI::IsMember({"low", "high"}));
    app->add_option("--emitter", o.emitter, "emitter placement")
        ->check(CLI::IsMember({"mid", "none"}));
    app->add_option("--stack", o.stack_file, "read the stack from a JSON file instead");
}

class Output {
public:
    Output(const CommonOptions& common, nlohmann::json config)
        : dir_(common.out_dir), format_(common.format), config_(std::move(config))
    {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw InvalidArgument("cannot create output directory: " + dir_.string());
        std::ostringstream os;
        write_json(os, config_);
        write_text_file((dir_ / "run.json").string(), os.str());
    }

    bool json() const { return format_ == "json"; }
    const nlohmann::json& config() const { return config_; }

    void write(const std::string& name, const std::string& content) const
    {
        write_text_file((dir_ / name).string(), content);
    }

    /// Writes `doc` wrapped with the configuration.
    void write_json_doc(const std::string& name, const nlohmann::json& doc) const
    {
        nlohmann::json wrapped{{"config", config_}, {"result", doc}};
        std::ostringstream os;
        write_json(os, wrapped);
        write(name, os.str());
    }

private:
    std::filesystem::path dir_;
    std::string format_;
    nlohmann::json config_;
};

inline nlohmann::json common_config(const std::string& subcommand, const CommonOptions& c)
{
    return {{"subcommand", subcommand}, {"format", c.format}, {"seed", c.seed}};
}

inline std::vector<double> open_unit_grid(std::size_t points)
{
    require(points >= 2, "need at least two grid points");
    const double step = 2.0 / static_cast<double>(points + 1);
    return uniform_grid(step, 2.0 - step, points);
}

inline nlohmann::json optional_peak(const std::optional<BandEdgePeak>& p)
{
    return p ? to_json_value(*p) : nlohmann::json(nullptr);
}

template <class F>
std::optional<BandEdgePeak> try_peak(F&& f)
{
    try {
        return f();
    } catch (const NumericalError&) {
        return std::nullopt;
    }
}

} // namespace detail

inline void cmd_dos(const CommonOptions& common, const DosOptions& o, std::ostream& out)
{
    const auto norm = detail::parse_normalization(o.normalization);
    nlohmann::json config = detail::common_config("dos", common);
    config["stack"] = detail::to_config(o.stack);
    config["points"] = o.points;
    config["normalization"] = o.normalization;
    config["refine"] = o.refine;

    const Stack stack = detail::make_stack(o.stack);
    require(!stack.empty(), "stack has no layers");
    auto grid = detail::open_unit_grid(o.points);
    const detail::Output output(common, config);

    const auto global_peak = detail::try_peak([&] { return band_edge_peak(stack); });
    std::optional<BandEdgePeak> local_peak;
    nlohmann::json local_peaks = nlohmann::json::object();
    if (stack.emitter()) {
        for (auto n : {Normalization::low_frequency, Normalization::vacuum,
                       Normalization::bulk_dielectric}) {
            const auto p = detail::try_peak([&] { return local_band_edge_peak(stack, n); });
            local_peaks[to_string(n)] = detail::optional_peak(p);
            if (n == norm) local_peak = p;
        }
    }

    if (o.refine) {
        std::vector<double> centres;
        for (const auto& p : {global_peak, local_peak})
            if (p) {
                centres.push_back(p->frequency);
                centres.push_back(2.0 - p->frequency);
            }
        grid = refine_grid(grid, centres, 0.005, 100);
    }

    const auto write_spectrum = [&](const std::string& stem, const DosSpectrum& s) {
        if (output.json()) {
            output.write_json_doc(stem + ".json", to_json_value(s));
        } else {
            std::ostringstream os;
            write_spectrum_csv(os, s, stack, config);
            output.write(stem + ".csv", os.str());
        }
    };
    write_spectrum("dos", dos(stack, grid));
    if (stack.emitter()) write_spectrum("ldos", local_dos(stack, grid, norm));

    nlohmann::json summary{{"stack_hash", hex_hash(stack_hash(stack))},
                           {"layers", stack.size()},
                           {"dos_peak", detail::optional_peak(global_peak)},
                           {"ldos_peak", detail::optional_peak(local_peak)},
                           {"ldos_peak_by_normalization", local_peaks}};
    if (stack.emitter())
        summary["emitter"] = {{"layer", stack.emitter()->layer}, {"offset", stack.emitter()->offset}};
    output.write_json_doc("summary.json", summary);
    out << "dos: " << stack.size() << " layers";
    if (local_peak)
        out << ", LDOS band-edge peak " << format_number(local_peak->value) << " at omega/omega0 = "
            << format_number(local_peak->frequency);
    else if (global_peak)
        out << ", DOS band-edge peak " << format_number(global_peak->value);
    else
        out << ", no band-edge peak";
    out << '\n';
}

inline void cmd_dispersion(const CommonOptions& common, const DispersionOptions& o, std::ostream& out)
{
    nlohmann::json config = detail::common_config("dispersion", common);
    config["n1"] = o.n1;
    config["n2"] = o.n2;
    config["points"] = o.points;
    const auto d = dispersion(o.n1, o.n2, o.points);
    const detail::Output output(common, config);
    if (output.json()) {
        output.write_json_doc("dispersion.json", to_json_value(d));
    } else {
        std::ostringstream os;
        write_dispersion_csv(os, d, config);
        output.write("dispersion.csv", os.str());
    }
    nlohmann::json summary{{"band_edges", d.band_edges}};
    const auto lower = first_gap_lower_edge(d.cell);
    if (lower) {
        double upper = 2.0;
        for (double e : d.band_edges)
            if (e > *lower + 1e-9) {
                upper = e;
                break;
            }
        summary["gap_lower"] = *lower;
        summary["gap_upper"] = upper;
        summary["gap_width"] = upper - *lower;
    } else {
        summary["gap_lower"] = nullptr;
    }
    output.write_json_doc("summary.json", summary);
    out << "dispersion: " << d.band_edges.size() << " band edges on [0, 2]\n";
}

inline void cmd_stirap(const CommonOptions& common, const StirapOptions& o, std::ostream& out)
{
    require(o.ordering == "counterintuitive" || o.ordering == "intuitive", "unknown ordering");
    require(o.tau > 0.0, "tau must be > 0");
    PulsePair pair;
    if (o.omega13 || o.omega23) {
        pair.omega13_peak = o.omega13.value_or(0.0);
        pair.omega23_peak = o.omega23.value_or(0.0);
        pair.tau = o.tau;
    } else {
        require(o.adiabaticity >= 0.0, "adiabaticity must be >= 0");
        pair = PulsePair::from_adiabaticity(o.adiabaticity, o.tau, 0.0);
    }
    pair.separation = o.separation.value_or(o.tau);
    pair.ordering = o.ordering == "intuitive" ? PulseOrdering::intuitive : PulseOrdering::counterintuitive;
    ThreeLevelSystem system;
    system.gamma3 = o.gamma3;
    system.gamma2 = o.gamma2;
    system.detuning = o.detuning;
    pair.validate();
    system.validate();

    nlohmann::json config = detail::common_config("stirap", common);
    config["tau"] = pair.tau;
    config["omega13_peak"] = pair.omega13_peak;
    config["omega23_peak"] = pair.omega23_peak;
    config["separation"] = pair.separation;
    config["ordering"] = to_string(pair.ordering);
    config["gamma3"] = system.gamma3;
    config["gamma2"] = system.gamma2;
    config["detuning"] = system.detuning;
    config["tol"] = o.tol;
    config["points"] = o.points;
    if (o.sweep)
        config["sweep"] = {{"min_over_tau", o.sweep_min},
                           {"max_over_tau", o.sweep_max},
                           {"points", o.sweep_points}};

    EvolveOptions eo;
    eo.output_points = o.points;
    const auto tr = evolve(system, pair, default_horizon(pair), o.tol, eo);
    const detail::Output output(common, config);
    if (output.json()) {
        output.write_json_doc("trajectory.json", to_json_value(tr));
    } else {
        std::ostringstream os;
        write_trajectory_csv(os, tr, config);
        output.write("trajectory.csv", os.str());
    }

    const auto adiabatic = adiabaticity_check(pair);
    nlohmann::json summary{{"final_p1", tr.p1.back()},
                           {"final_p2", tr.p2.back()},
                           {"final_p3", tr.p3.back()},
                           {"final_loss", tr.loss.back()},
                           {"norm_defect", tr.norm_defect()},
                           {"adiabaticity", adiabatic.parameter},
                           {"adiabatic", adiabatic.satisfied}};

    if (o.sweep) {
        require(o.sweep_min >= 0.0 && o.sweep_max > o.sweep_min && o.sweep_points >= 2,
                "invalid sweep range");
        std::vector<double> seps;
        for (double x : uniform_grid(o.sweep_min, o.sweep_max, o.sweep_points))
            seps.push_back(x * pair.tau);
        const auto sweep = separation_sweep(system, pair, seps, o.tol);
        nlohmann::json by_sep = nlohmann::json::object();
        for (const auto& p : sweep) by_sep[format_number(p.parameter)] = p.efficiency;
        output.write_json_doc("sweep.json", {{"swept", "separation"}, {"efficiency", by_sep}});
        std::ostringstream os;
        write_two_column_csv(os, sweep, "separation,efficiency", "stirap_separation_sweep",
                             [](const SweepPoint& p) { return std::pair{p.parameter, p.efficiency}; },
                             config);
        output.write("sweep.csv", os.str());
        const auto best = best_point(sweep);
        summary["best_separation"] = best.parameter;
        summary["best_separation_over_tau"] = best.parameter / pair.tau;
        summary["best_efficiency"] = best.efficiency;
    }
    output.write_json_doc("summary.json", summary);
    out << "stirap: final p2 = " << format_number(tr.p2.back()) << ", loss = "
        << format_number(tr.loss.back()) << '\n';
}

inline void cmd_rate(const CommonOptions& common, const RateOptions& o, std::ostream& out)
{
    require(o.target > 0.0 && o.target < 1.0, "target must lie in (0, 1)");
    require(o.cycles >= 1, "cycles must be >= 1");
    EmitterModel emitter;
    emitter.bulk_lifetime = o.lifetime;
    emitter.linewidth = o.linewidth;
    emitter.transition_frequency = o.omega_a.value_or(1.0);
    emitter.validate();
    require(o.pump_rate > 0.0, "pump rate must be > 0");

    StackOptions so = o.stack;
    so.emitter = "mid";
    const Stack stack = detail::make_stack(so);
    const auto peak = local_band_edge_peak(stack);
    if (!o.omega_a) emitter.transition_frequency = peak.frequency;

    nlohmann::json config = detail::common_config("rate", common);
    config["stack"] = detail::to_config(so);
    config["emitter"] = to_json_value(emitter);
    config["pump_rate"] = o.pump_rate;
    config["target"] = o.target;
    config["stirap_duration"] = o.stirap_duration;
    config["cycles"] = o.cycles;
    config["rate_goal"] = o.rate_goal;
    config["periods_search"] = o.periods_search;

    const auto spectrum = local_dos(stack, line_grid(emitter), Normalization::low_frequency);
    const auto report = rate_report(spectrum, emitter, o.pump_rate, o.target, o.stirap_duration);
    const auto events = photon_stream(report, o.cycles, common.seed);
    const detail::Output output(common, config);

    std::ostringstream os;
    write_events_csv(os, events, config);
    output.write("events.csv", os.str());

    nlohmann::json doc{{"report", to_json_value(report)},
                       {"band_edge_ldos_peak", to_json_value(peak)},
                       {"band_edge_rate_per_s", peak.value / emitter.bulk_lifetime},
                       {"expected_emitted_fraction", expected_emitted_fraction(report)}};
    try {
        doc["jitter"] = to_json_value(jitter_stats(events));
    } catch (const InvalidArgument&) {
        doc["jitter"] = nullptr;
    }
    if (o.periods_search && !stack.empty() && periodic_cell(stack)) {
        const auto n = periods_for_rate(o.stack.n1, o.stack.n2, emitter, o.rate_goal);
        doc["periods_for_rate_goal"] = {{"rate_goal_per_s", o.rate_goal},
                                        {"periods", n.periods},
                                        {"band_edge_enhancement", n.band_edge_enhancement},
                                        {"enhanced_rate_per_s", n.enhanced_rate}};
    }
    output.write_json_doc("rate.json", doc);
    out << "rate: enhancement " << format_number(report.enhancement) << ", enhanced rate "
        << format_number(report.enhanced_rate) << " 1/s, device rate "
        << format_number(report.device_rep_rate) << " 1/s\n";
}

inline void cmd_kerr(const CommonOptions& common, const KerrCliOptions& o, std::ostream& out)
{
    SwitchCriterion criterion;
    criterion.off_threshold = o.off;
    criterion.on_fraction = o.on_fraction;
    criterion.on_threshold = o.on;
    if (o.on) require(o.off < *o.on, "off threshold must be below on threshold");
    require(o.off >= 0.0 && o.on_fraction > 0.0, "thresholds must be positive");

    KerrOptions ko;
    ko.layers = detail::parse_selector(o.layers);
    ko.tolerance = o.tolerance;
    const QuarterWaveSpec spec = detail::quarter_wave_spec(o.stack);

    EmitterModel emitter;
    emitter.linewidth = o.linewidth;
    if (o.omega_a) {
        emitter.transition_frequency = *o.omega_a;
    } else {
        const Stack stack = place_emitter_midstack(build_quarter_wave(spec));
        emitter.transition_frequency = off_state_line_frequency(stack, emitter, o.off);
    }
    emitter.validate();

    nlohmann::json config = detail::common_config("kerr", common);
    config["stack"] = detail::to_config(o.stack);
    config["emitter"] = to_json_value(emitter);
    config["emitter_placement"] = o.omega_a ? "explicit" : "off_threshold_plus_one_linewidth";
    config["off_threshold"] = o.off;
    config["on_fraction"] = o.on_fraction;
    config["on_threshold"] = o.on ? nlohmann::json(*o.on) : nlohmann::json(nullptr);
    config["layers"] = o.layers;
    config["tolerance"] = o.tolerance;

    const auto result = required_shift(spec, emitter, criterion, ko);
    const detail::Output output(common, config);
    output.write_json_doc("kerr.json", to_json_value(result));
    std::ostringstream os;
    write_two_column_csv(os, result.sweep, "delta_n,ldos_at_line", "kerr_shift_sweep",
                         [](const SweepSample& s) { return std::pair{s.delta_n, s.enhancement}; },
                         config);
    output.write("kerr_sweep.csv", os.str());
    out << "kerr: dn = " << format_number(result.delta_n_required)
        << ", dn/n = " << format_number(result.delta_n_over_n) << '\n';
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Band-edge single-photon source simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    CommonOptions common;
    app.add_option("--out", common.out_dir, "output directory");
    app.add_option("--format", common.format, "spectrum file format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", common.seed, "random seed");

    DosOptions dos_o;
    auto* dos_cmd = app.add_subcommand("dos", "global and local mode density of a stack");
    detail::add_stack_options(dos_cmd, dos_o.stack);
    dos_cmd->add_option("--points", dos_o.points, "base grid points on (0, 2)");
    dos_cmd->add_option("--normalization", dos_o.normalization, "LDOS normalisation")
        ->check(CLI::IsMember({"low_frequency", "vacuum", "bulk_dielectric"}));
    dos_cmd->add_flag("!--no-refine", dos_o.refine, "disable refinement around peaks");

    DispersionOptions disp_o;
    auto* disp_cmd = app.add_subcommand("dispersion", "infinite quarter-wave crystal bands");
    disp_cmd->add_option("--n1", disp_o.n1);
    disp_cmd->add_option("--n2", disp_o.n2);
    disp_cmd->add_option("--points", disp_o.points);

    StirapOptions st_o;
    auto* st_cmd = app.add_subcommand("stirap", "three-level adiabatic passage");
    st_cmd->add_option("--tau", st_o.tau, "Gaussian pulse width")->required();
    st_cmd->add_option("--omega13", st_o.omega13, "peak pump Rabi frequency");
    st_cmd->add_option("--omega23", st_o.omega23, "peak Stokes Rabi frequency");
    st_cmd->add_option("--adiabaticity", st_o.adiabaticity,
                       "tau*sqrt(O13^2+O23^2) with equal peaks (ignored if --omega13/23 given)");
    st_cmd->add_option("--separation", st_o.separation, "peak separation (default tau)");
    st_cmd->add_option("--gamma3", st_o.gamma3);
    st_cmd->add_option("--gamma2", st_o.gamma2);
    st_cmd->add_option("--detuning", st_o.detuning);
    st_cmd->add_option("--ordering", st_o.ordering)
        ->check(CLI::IsMember({"counterintuitive", "intuitive"}));
    st_cmd->add_option("--tol", st_o.tol);
    st_cmd->add_option("--points", st_o.points);
    st_cmd->add_flag("--sweep", st_o.sweep, "also scan the peak separation");
    st_cmd->add_option("--sweep-min", st_o.sweep_min, "in units of tau");
    st_cmd->add_option("--sweep-max", st_o.sweep_max, "in units of tau");
    st_cmd->add_option("--sweep-points", st_o.sweep_points);

    RateOptions rate_o;
    auto* rate_cmd = app.add_subcommand("rate", "enhanced decay and repetition rate");
    detail::add_stack_options(rate_cmd, rate_o.stack);
    rate_cmd->add_option("--lifetime", rate_o.lifetime, "bulk lifetime in seconds");
    rate_cmd->add_option("--linewidth", rate_o.linewidth);
    rate_cmd->add_option("--omega-a", rate_o.omega_a, "transition frequency (default: LDOS peak)");
    rate_cmd->add_option("--pump-rate", rate_o.pump_rate, "pump repetition rate, 1/s");
    rate_cmd->add_option("--target", rate_o.target, "per-cycle emission probability");
    rate_cmd->add_option("--stirap-duration", rate_o.stirap_duration, "seconds");
    rate_cmd->add_option("--cycles", rate_o.cycles);
    rate_cmd->add_option("--rate-goal", rate_o.rate_goal, "report periods needed for this rate");
    rate_cmd->add_flag("!--no-periods-search", rate_o.periods_search);

    KerrCliOptions kerr_o;
    kerr_o.stack.periods = 39;
    auto* kerr_cmd = app.add_subcommand("kerr", "index shift needed to switch emission on");
    detail::add_stack_options(kerr_cmd, kerr_o.stack);
    kerr_cmd->add_option("--off", kerr_o.off, "OFF ceiling for the line-averaged LDOS");
    kerr_cmd->add_option("--on-fraction", kerr_o.on_fraction, "ON floor as fraction of the peak");
    kerr_cmd->add_option("--on", kerr_o.on, "absolute ON floor");
    kerr_cmd->add_option("--linewidth", kerr_o.linewidth);
    kerr_cmd->add_option("--omega-a", kerr_o.omega_a, "transition frequency (default: placement policy)");
    kerr_cmd->add_option("--layers", kerr_o.layers)->check(CLI::IsMember({"high", "low", "all"}));
    kerr_cmd->add_option("--tolerance", kerr_o.tolerance);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    try {
        if (*dos_cmd) cmd_dos(common, dos_o, out);
        else if (*disp_cmd) cmd_dispersion(common, disp_o, out);
        else if (*st_cmd) cmd_stirap(common, st_o, out);
        else if (*rate_cmd) cmd_rate(common, rate_o, out);
        else if (*kerr_cmd) cmd_kerr(common, kerr_o, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical_failure;
    }
    return ok;
}

} // namespace photon_gun::cli
