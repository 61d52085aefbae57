#include "cogrip/symbols.hpp"

namespace cogrip {

namespace {

template <typename E, std::size_t N>
std::optional<E> parse_by_name(const std::array<E, N>& values, std::string_view text) {
  for (E v : values) {
    if (name(v) == text) return v;
  }
  return std::nullopt;
}

}  // namespace

std::string_view name(Shape s) {
  switch (s) {
    case Shape::P: return "p";
    case Shape::X: return "x";
    case Shape::T: return "t";
    case Shape::Z: return "z";
    case Shape::W: return "w";
    case Shape::U: return "u";
    case Shape::F: return "f";
  }
  return "?";
}

std::string_view name(Color c) {
  switch (c) {
    case Color::Red: return "red";
    case Color::Green: return "green";
    case Color::Blue: return "blue";
    case Color::Yellow: return "yellow";
    case Color::Brown: return "brown";
    case Color::Purple: return "purple";
  }
  return "?";
}

std::string_view name(Area a) {
  switch (a) {
    case Area::TopLeft: return "top left";
    case Area::TopCenter: return "top center";
    case Area::TopRight: return "top right";
    case Area::RightCenter: return "right center";
    case Area::BottomRight: return "bottom right";
    case Area::BottomCenter: return "bottom center";
    case Area::BottomLeft: return "bottom left";
    case Area::LeftCenter: return "left center";
    case Area::Center: return "center";
  }
  return "?";
}

std::optional<Shape> parse_shape(std::string_view text) {
  if (text.size() == 1 && text[0] >= 'A' && text[0] <= 'Z') {
    const char lower = static_cast<char>(text[0] - 'A' + 'a');
    return parse_by_name(kShapes, std::string_view(&lower, 1));
  }
  return parse_by_name(kShapes, text);
}

std::optional<Color> parse_color(std::string_view text) { return parse_by_name(kColors, text); }
std::optional<Area> parse_area(std::string_view text) { return parse_by_name(kAreas, text); }

Rgb rgb(Color c) {
  switch (c) {
    case Color::Red: return {0xFF, 0x00, 0x00};
    case Color::Green: return {0x00, 0x80, 0x00};
    case Color::Blue: return {0x00, 0x00, 0xFF};
    case Color::Yellow: return {0xFF, 0xFF, 0x00};
    case Color::Brown: return {0x8B, 0x45, 0x13};
    case Color::Purple: return {0x80, 0x00, 0x80};
  }
  return {};
}

std::string describe(const SymbolicPiece& piece) {
  std::string out{name(piece.color)};
  out += ' ';
  out += name(piece.shape);
  out += ' ';
  out += name(piece.area);
  return out;
}

}  // namespace cogrip
