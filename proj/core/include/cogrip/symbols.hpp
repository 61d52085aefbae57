#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cogrip {

// Enumerator values are the symbolic codes used in every symbolic channel.
// Code 0 marks out-of-world tiles and code 1 marks empty tiles.
inline constexpr int kOutOfWorldCode = 0;
inline constexpr int kEmptyCode = 1;

enum class Shape : std::uint8_t { P = 2, X = 3, T = 4, Z = 5, W = 6, U = 7, F = 8 };
enum class Color : std::uint8_t { Red = 2, Green = 3, Blue = 4, Yellow = 5, Brown = 6, Purple = 7 };

// Positional areas in their symbolic enumeration order.
enum class Area : std::uint8_t {
  TopLeft = 1,
  TopCenter = 2,
  TopRight = 3,
  RightCenter = 4,
  BottomRight = 5,
  BottomCenter = 6,
  BottomLeft = 7,
  LeftCenter = 8,
  Center = 9,
};

inline constexpr std::array<Shape, 7> kShapes = {Shape::P, Shape::X, Shape::T, Shape::Z,
                                                 Shape::W, Shape::U, Shape::F};
inline constexpr std::array<Color, 6> kColors = {Color::Red,    Color::Green, Color::Blue,
                                                 Color::Yellow, Color::Brown, Color::Purple};
inline constexpr std::array<Area, 9> kAreas = {
    Area::TopLeft,     Area::TopCenter,    Area::TopRight,   Area::RightCenter, Area::BottomRight,
    Area::BottomCenter, Area::BottomLeft,  Area::LeftCenter, Area::Center};

constexpr int code(Shape s) { return static_cast<int>(s); }
constexpr int code(Color c) { return static_cast<int>(c); }
constexpr int code(Area a) { return static_cast<int>(a); }

// Lowercase surface forms: "t", "blue", "top right".
std::string_view name(Shape s);
std::string_view name(Color c);
std::string_view name(Area a);

std::optional<Shape> parse_shape(std::string_view text);
std::optional<Color> parse_color(std::string_view text);
std::optional<Area> parse_area(std::string_view text);

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  auto operator<=>(const Rgb&) const = default;
};

Rgb rgb(Color c);

// One of the 7 * 6 * 9 = 378 symbolic pieces.
struct SymbolicPiece {
  Shape shape;
  Color color;
  Area area;

  auto operator<=>(const SymbolicPiece&) const = default;
};

// "blue t top right"
std::string describe(const SymbolicPiece& piece);

}  // namespace cogrip
