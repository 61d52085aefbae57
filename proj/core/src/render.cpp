#include "cogrip/render.hpp"

#include <png.h>

#include <fstream>

#include "cogrip/error.hpp"

namespace cogrip {

namespace {

constexpr Rgb kBackground{0xFF, 0xFF, 0xFF};
constexpr Rgb kGrid{0xD0, 0xD0, 0xD0};
constexpr Rgb kGripper{0x00, 0x00, 0x00};

void put(Raster& r, int x, int y, Rgb c) {
  const std::size_t i = static_cast<std::size_t>((y * r.width + x) * 3);
  r.rgb[i] = c.r;
  r.rgb[i + 1] = c.g;
  r.rgb[i + 2] = c.b;
}

}  // namespace

std::string render_ascii(const Board& board, std::optional<Gripper> gripper) {
  const int m = board.size();
  std::string out;
  out.reserve(static_cast<std::size_t>(m * (m + 1)));
  for (int y = 0; y < m; ++y) {
    for (int x = 0; x < m; ++x) {
      const Coord c{x, y};
      char glyph = '.';
      if (gripper && gripper->position == c) {
        glyph = '@';
      } else if (const int id = board.piece_at(c); id != 0) {
        glyph = static_cast<char>(name(board.piece(id).symbolic.shape)[0] - 'a' + 'A');
      }
      out += glyph;
    }
    out += '\n';
  }
  return out;
}

Raster render_raster(const Board& board, std::optional<Gripper> gripper, int tile_pixels) {
  const int m = board.size();
  Raster r{m * tile_pixels, m * tile_pixels, {}};
  r.rgb.assign(static_cast<std::size_t>(r.width * r.height * 3), 0);
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      const Coord tile{x / tile_pixels, y / tile_pixels};
      const int id = board.piece_at(tile);
      Rgb c = id != 0 ? rgb(board.piece(id).symbolic.color) : kBackground;
      if (id == 0 && (x % tile_pixels == 0 || y % tile_pixels == 0)) c = kGrid;
      put(r, x, y, c);
    }
  }
  if (gripper) {
    const double cx = (gripper->position.x + 0.5) * tile_pixels;
    const double cy = (gripper->position.y + 0.5) * tile_pixels;
    const double radius = tile_pixels / 4.0;
    for (int y = gripper->position.y * tile_pixels; y < (gripper->position.y + 1) * tile_pixels; ++y) {
      for (int x = gripper->position.x * tile_pixels; x < (gripper->position.x + 1) * tile_pixels; ++x) {
        const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
        if (dx * dx + dy * dy <= radius * radius) put(r, x, y, kGripper);
      }
    }
  }
  return r;
}

Raster render_partial_rgb(const Board& board, Coord center) {
  const SymbolicView view = partial_view(board, center);
  constexpr int side = SymbolicView::kSide;
  Raster r{side, side, std::vector<std::uint8_t>(side * side * 3, 0)};
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      if (!view.in_world(col, row)) continue;
      const int id = view.at(col, row).piece_id;
      put(r, col, row, view.occupied(col, row) ? rgb(board.piece(id).symbolic.color) : kBackground);
    }
  }
  return r;
}

std::vector<std::uint8_t> encode_png(const Raster& raster) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("png: cannot create write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("png: cannot create info struct");
  }
  std::vector<std::uint8_t> out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("png: encoding failed");
  }
  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t len) {
        auto* buf = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
        buf->insert(buf->end(), data, data + len);
      },
      nullptr);
  png_set_IHDR(png, info, static_cast<png_uint_32>(raster.width), static_cast<png_uint_32>(raster.height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < raster.height; ++y) {
    // libpng takes a non-const row pointer but does not modify it.
    auto* row = const_cast<png_bytep>(raster.rgb.data() + static_cast<std::size_t>(y * raster.width * 3));
    png_write_row(png, row);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

void write_png(const Raster& raster, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = encode_png(raster);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace cogrip
