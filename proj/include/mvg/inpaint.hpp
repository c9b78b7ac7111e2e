#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mvg/config.hpp"
#include "mvg/image.hpp"

namespace mvg {

struct LayerRecord {
    std::size_t layer = 0;
    std::size_t size = 0;        ///< border pixels added in this layer
    std::size_t active = 0;      ///< vertices solved on (differs from size in cumulative mode)
    std::size_t edges = 0;
    double sigma = 0.0;
    std::size_t iterations = 0;
    double final_change = 0.0;   ///< last relative change of the solve
    double seconds = 0.0;
};

struct FrontState {
    Mask mask_now;               ///< given pixels plus completed layers
    std::vector<Vertex> active;  ///< most recent border layer
    std::size_t layer_index = 0;
    std::vector<LayerRecord> log;
};

/// Unknown pixels with at least one known 4-neighbor (periodic), ascending.
std::vector<Vertex> find_border(const Mask& mask);

/// Copies into each border pixel the value of its first known 4-neighbor in
/// the order north, east, south, west.
MvImage initialize_border(const MvImage& img, const Mask& mask, std::span<const Vertex> border);

struct InpaintResult {
    MvImage image;
    FrontState state;
};

/// Layered front inpainting: repeatedly take the border of the unknown
/// region, initialize it, build the nonlocal graph for it against the
/// currently known pixels, solve the Dirichlet problem there and mark it
/// known.
InpaintResult inpaint(const MvImage& img, const Mask& mask, const SolverConfig& cfg);

}  // namespace mvg
