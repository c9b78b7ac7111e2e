#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "mvg/image.hpp"

namespace mvg {

using Rgb = std::array<std::uint8_t, 3>;

inline constexpr Rgb kUnknownGray{128, 128, 128};
inline constexpr Rgb kSouthColor{16, 32, 128};   // dark blue
inline constexpr Rgb kNorthColor{255, 224, 32};  // bright yellow

/// Colormap for directions: the elevation z picks a point on the ramp
/// kSouthColor -> kNorthColor, and the azimuth tints it with a hue wheel in
/// proportion to sqrt(1 - z^2) at the ramp's luminance, so brightness grows
/// with elevation. Both poles map to the pure ramp endpoints.
Rgb sphere_color(std::span<const double> p);

/// sqrt(sum_i (log l_i - mean log l)^2) over the eigenvalues of an s.p.d.
/// matrix; zero exactly for multiples of the identity.
double geodesic_anisotropy(std::span<const double> spd, std::size_t n);

/// Hue from blue (isotropic) to red (GA >= 1.5).
Rgb anisotropy_color(double ga);

/// Binary PPM (P6), `scale` x `scale` pixels per image pixel.
std::string render_sphere_ppm(const MvImage& img, const Mask* mask, std::size_t scale = 8);

/// SVG ellipse glyphs: axes along the eigenvectors with radii proportional
/// to the eigenvalues (largest eigenvalue in the image fills 45% of a cell).
std::string render_spd_svg(const MvImage& img, const Mask* mask, std::size_t cell = 12);

/// Picks the renderer from the manifold and the file extension (.ppm for
/// Sphere2, .svg for Spd(2)); throws DataError for other pairings.
void render(const MvImage& img, const Mask* mask, const std::filesystem::path& path);

}  // namespace mvg
