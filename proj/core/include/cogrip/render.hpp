#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cogrip/board.hpp"

namespace cogrip {

// Rows of glyphs: '.' empty, the uppercase shape letter for a piece tile and
// '@' for the gripper when given.
std::string render_ascii(const Board& board, std::optional<Gripper> gripper);

struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  Rgb pixel(int x, int y) const {
    const std::size_t i = static_cast<std::size_t>((y * width + x) * 3);
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
  }
};

inline constexpr int kTilePixels = 16;

// White background, solid piece fills, thin grey grid lines and the gripper
// as a black dot in the middle of its tile.
Raster render_raster(const Board& board, std::optional<Gripper> gripper, int tile_pixels = kTilePixels);

// Per-tile colors of the 7x7 window around `center`: piece color, white for
// empty tiles, black outside the board.
Raster render_partial_rgb(const Board& board, Coord center);

std::vector<std::uint8_t> encode_png(const Raster& raster);
void write_png(const Raster& raster, const std::filesystem::path& path);

}  // namespace cogrip
