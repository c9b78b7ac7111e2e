#pragma once

#include <filesystem>
#include <string>

#include "mvg/image.hpp"

namespace mvg {

// MVI container: a text header
//
//   MVI1
//   manifold sphere2          (euclidean <m> | circle | sphere2 | spd <n>)
//   rows <R>
//   cols <C>
//   byteorder LE
//   count <R*C*point_len>
//   data
//
// each line terminated by '\n', followed by exactly `count` IEEE-754
// binary64 values in little-endian byte order, row-major.

std::string encode_mvi(const MvImage& img);
/// Throws FormatError for header/payload problems and DataError naming the
/// pixel (i, j) when a point violates its manifold invariants.
MvImage decode_mvi(const std::string& bytes);

MvImage read_mvi(const std::filesystem::path& path);
void write_mvi(const MvImage& img, const std::filesystem::path& path);

// Plain PBM (P1); 1 marks an unknown pixel, 0 a known one.
std::string encode_pbm(const Mask& mask);
Mask decode_pbm(const std::string& text);

Mask read_pbm(const std::filesystem::path& path);
void write_pbm(const Mask& mask, const std::filesystem::path& path);

/// Reads a whole file; throws FormatError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames, so a failed write never
/// leaves a partial file at `path`.
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace mvg
