#pragma once

#include <cstddef>

#include "mvg/image.hpp"

namespace mvg {

/// Doubly periodic S^2 field split into nine parts by two vertical and two
/// horizontal cut lines (at floor(n/3) and floor(2n/3)). Pixel (i, j) has
/// azimuth 2 pi j / cols and polar angle
///   pi/4 + (pi/8) sin(2 pi i / rows) - (pi/16) * (number of cut lines passed),
/// i.e. its elevation rises by pi/16 across each cut line.
MvImage generate_sphere_image(std::size_t rows, std::size_t cols);

/// P(2) field with eigenvalues (1 + a, 1): a is 0.5 plus a Gaussian bump
/// in the bottom center, the major axis turns smoothly with position and
/// jumps by pi/3 across the vertical center line j = cols/2.
MvImage generate_spd_image(std::size_t rows, std::size_t cols);

/// Mask with the h x w rectangle at (i0, j0) unknown.
Mask cut_mask(std::size_t rows, std::size_t cols, std::size_t i0, std::size_t j0, std::size_t h, std::size_t w);

}  // namespace mvg
