#pragma once

#include <cstddef>
#include <string>

#include "mvg/image.hpp"

namespace mvg {

struct CompareReport {
    std::size_t count = 0;  ///< originally unknown pixels
    double mean = 0.0;
    double max = 0.0;
    double rms = 0.0;
};

/// Geodesic error statistics over the pixels `unknown` marks as unknown.
CompareReport compare(const MvImage& result, const MvImage& truth, const Mask& unknown);

/// "key value" lines: count, mean_error, max_error, rms_error.
std::string format_report(const CompareReport& r);

/// Baseline fill: peel the hole layer by layer, copying into each border
/// pixel its first known 4-neighbor (north, east, south, west).
MvImage nearest_known_fill(const MvImage& img, const Mask& mask);

}  // namespace mvg
