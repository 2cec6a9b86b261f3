// stack.hpp - 1D multilayer dielectric structures
//
// Units: frequencies are omega/omega0, lengths are c/omega0. A quarter-wave
// layer of index n therefore has thickness pi/(2n). Stacks are embedded in
// semi-infinite cladding on both sides (vacuum unless stated otherwise).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "photon_gun/error.hpp"

namespace photon_gun {

/// One homogeneous slab. `index_shift` carries a Kerr-type perturbation on top
/// of the material index so that a shift and its negation cancel exactly.
struct Layer {
    double base_index = 1.0;
    double thickness = 0.0;
    double index_shift = 0.0;

    double refractive_index() const { return base_index + index_shift; }
    double optical_thickness() const { return refractive_index() * thickness; }

    friend bool operator==(const Layer&, const Layer&) = default;
};

/// How N in a quarter-wave spec is read: N bilayers, or N single layers.
enum class LayerCount { periods, layers };

/// Which material the stack starts with on the left.
enum class OuterLayer { low, high };

struct QuarterWaveSpec {
    double n_low = 1.0;
    double n_high = 2.0;
    int num_periods = 29;
    double midgap_frequency = 1.0;
    LayerCount count = LayerCount::periods;
    OuterLayer outer = OuterLayer::low;
};

/// Position of the emitter: a layer and a fractional offset inside it.
struct EmitterAnchor {
    std::size_t layer = 0;
    double offset = 0.5;

    friend bool operator==(const EmitterAnchor&, const EmitterAnchor&) = default;
};

enum class LayerSelector { high_index, low_index, all };

class Stack {
public:
    Stack() = default;

    explicit Stack(std::vector<Layer> layers,
                   std::optional<EmitterAnchor> emitter = std::nullopt,
                   double cladding_index = 1.0)
        : layers_(std::move(layers)), emitter_(emitter), cladding_index_(cladding_index)
    {
        require(cladding_index_ >= 1.0, "cladding index must be >= 1");
        for (const auto& layer : layers_) {
            require(std::isfinite(layer.refractive_index()) && layer.refractive_index() >= 1.0,
                    "layer refractive index must be >= 1");
            require(std::isfinite(layer.thickness) && layer.thickness > 0.0,
                    "layer thickness must be > 0");
        }
        if (emitter_) {
            require(emitter_->layer < layers_.size(), "emitter layer index out of range");
            require(emitter_->offset >= 0.0 && emitter_->offset <= 1.0,
                    "emitter offset must lie in [0, 1]");
        }
    }

    const std::vector<Layer>& layers() const { return layers_; }
    std::size_t size() const { return layers_.size(); }
    bool empty() const { return layers_.empty(); }
    const Layer& operator[](std::size_t i) const { return layers_[i]; }

    const std::optional<EmitterAnchor>& emitter() const { return emitter_; }
    double cladding_index() const { return cladding_index_; }

    Stack with_emitter(std::optional<EmitterAnchor> anchor) const
    {
        return Stack(layers_, anchor, cladding_index_);
    }

    double total_thickness() const
    {
        double sum = 0.0;
        for (const auto& l : layers_) sum += l.thickness;
        return sum;
    }

    double optical_thickness() const
    {
        double sum = 0.0;
        for (const auto& l : layers_) sum += l.optical_thickness();
        return sum;
    }

    /// Physical distance of the emitter from the left boundary.
    std::optional<double> emitter_position() const
    {
        if (!emitter_) return std::nullopt;
        double z = 0.0;
        for (std::size_t i = 0; i < emitter_->layer; ++i) z += layers_[i].thickness;
        return z + emitter_->offset * layers_[emitter_->layer].thickness;
    }

    friend bool operator==(const Stack&, const Stack&) = default;

private:
    std::vector<Layer> layers_;
    std::optional<EmitterAnchor> emitter_;
    double cladding_index_ = 1.0;
};

inline double quarter_wave_thickness(double n, double midgap_frequency = 1.0)
{
    return std::numbers::pi / (2.0 * n * midgap_frequency);
}

inline std::size_t layer_count(const QuarterWaveSpec& spec)
{
    const auto n = static_cast<std::size_t>(spec.num_periods);
    return spec.count == LayerCount::periods ? 2 * n : n;
}

inline Stack build_quarter_wave(const QuarterWaveSpec& spec)
{
    require(spec.num_periods > 0, "number of periods must be positive");
    require(spec.n_low >= 1.0 && spec.n_high >= 1.0, "refractive indices must be >= 1");
    require(spec.midgap_frequency > 0.0, "mid-gap frequency must be positive");

    const Layer low{spec.n_low, quarter_wave_thickness(spec.n_low, spec.midgap_frequency)};
    const Layer high{spec.n_high, quarter_wave_thickness(spec.n_high, spec.midgap_frequency)};
    const Layer& first = spec.outer == OuterLayer::low ? low : high;
    const Layer& second = spec.outer == OuterLayer::low ? high : low;

    std::vector<Layer> layers(layer_count(spec));
    for (std::size_t i = 0; i < layers.size(); ++i) layers[i] = (i % 2 == 0) ? first : second;
    return Stack(std::move(layers));
}

/// Anchors the emitter at the centre of the highest-index layer whose centre is
/// nearest to the geometric midpoint. Ties go to the leftmost layer.
inline Stack place_emitter_midstack(const Stack& stack)
{
    require(!stack.empty(), "cannot place an emitter in an empty stack");

    double n_max = 0.0;
    for (const auto& l : stack.layers()) n_max = std::max(n_max, l.base_index);

    const double midpoint = 0.5 * stack.total_thickness();
    const double tie = 1e-12 * stack.total_thickness();
    std::size_t best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    double z = 0.0;
    for (std::size_t i = 0; i < stack.size(); ++i) {
        const double centre = z + 0.5 * stack[i].thickness;
        z += stack[i].thickness;
        if (stack[i].base_index != n_max) continue;
        const double distance = std::abs(centre - midpoint);
        if (distance < best_distance - tie) {
            best_distance = distance;
            best = i;
        }
    }
    return stack.with_emitter(EmitterAnchor{best, 0.5});
}

inline bool selected(const Layer& layer, LayerSelector which, double n_min, double n_max)
{
    switch (which) {
    case LayerSelector::high_index: return layer.base_index == n_max;
    case LayerSelector::low_index: return layer.base_index == n_min;
    case LayerSelector::all: return true;
    }
    return false;
}

/// Adds `delta_n` to the index of the selected layers; thicknesses are kept.
/// Selection is by unperturbed material index.
inline Stack apply_index_shift(const Stack& stack, double delta_n,
                               LayerSelector which = LayerSelector::high_index)
{
    require(std::isfinite(delta_n), "index shift must be finite");
    if (stack.empty()) return stack;

    double n_min = stack[0].base_index;
    double n_max = stack[0].base_index;
    for (const auto& l : stack.layers()) {
        n_min = std::min(n_min, l.base_index);
        n_max = std::max(n_max, l.base_index);
    }

    std::vector<Layer> layers = stack.layers();
    for (auto& layer : layers) {
        if (!selected(layer, which, n_min, n_max)) continue;
        layer.index_shift += delta_n;
        require(layer.refractive_index() >= 1.0, "index shift drives a layer index below 1");
    }
    return Stack(std::move(layers), stack.emitter(), stack.cladding_index());
}

/// Two-material periodic cell (a, b) extracted from a stack.
struct BilayerCell {
    double n_a = 1.0;
    double d_a = 0.0;
    double n_b = 1.0;
    double d_b = 0.0;

    double period() const { return d_a + d_b; }
};

/// Returns the repeating bilayer if the stack alternates between two distinct
/// layers (an odd trailing layer is allowed).
inline std::optional<BilayerCell> periodic_cell(const Stack& stack)
{
    if (stack.size() < 2) return std::nullopt;
    const Layer& a = stack[0];
    const Layer& b = stack[1];
    if (a.refractive_index() == b.refractive_index()) return std::nullopt;
    for (std::size_t i = 0; i < stack.size(); ++i) {
        const Layer& expect = (i % 2 == 0) ? a : b;
        if (stack[i].refractive_index() != expect.refractive_index() ||
            stack[i].thickness != expect.thickness)
            return std::nullopt;
    }
    return BilayerCell{a.refractive_index(), a.thickness, b.refractive_index(), b.thickness};
}

// ---------------------------------------------------------------------------
// JSON: {"layers":[{"n":..,"d":..}],"emitter":{"layer":i,"offset":x}}
// "dn" (index shift) and "cladding" are written only when they differ from
// their defaults.

inline nlohmann::json to_json_value(const Stack& stack)
{
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& l : stack.layers()) {
        nlohmann::json entry{{"n", l.base_index}, {"d", l.thickness}};
        if (l.index_shift != 0.0) entry["dn"] = l.index_shift;
        layers.push_back(std::move(entry));
    }
    nlohmann::json doc{{"layers", std::move(layers)}};
    if (stack.emitter())
        doc["emitter"] = {{"layer", stack.emitter()->layer}, {"offset", stack.emitter()->offset}};
    else
        doc["emitter"] = nullptr;
    if (stack.cladding_index() != 1.0) doc["cladding"] = stack.cladding_index();
    return doc;
}

inline Stack stack_from_json(const nlohmann::json& doc)
{
    try {
        std::vector<Layer> layers;
        for (const auto& entry : doc.at("layers")) {
            Layer l;
            l.base_index = entry.at("n").get<double>();
            l.thickness = entry.at("d").get<double>();
            l.index_shift = entry.value("dn", 0.0);
            layers.push_back(l);
        }
        std::optional<EmitterAnchor> anchor;
        if (doc.contains("emitter") && !doc["emitter"].is_null()) {
            const auto& e = doc["emitter"];
            const auto layer = e.at("layer").get<std::int64_t>();
            require(layer >= 0, "emitter layer index must be non-negative");
            anchor = EmitterAnchor{static_cast<std::size_t>(layer), e.at("offset").get<double>()};
        }
        return Stack(std::move(layers), anchor, doc.value("cladding", 1.0));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed stack document: ") + e.what());
    }
}

/// FNV-1a over the compact JSON form; identifies a stack in CSV headers.
inline std::uint64_t stack_hash(const Stack& stack)
{
    const std::string text = to_json_value(stack).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace photon_gun
