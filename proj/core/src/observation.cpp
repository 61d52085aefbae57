#include "cogrip/observation.hpp"

#include <algorithm>

#include "cogrip/error.hpp"
#include "cogrip/render.hpp"

namespace cogrip {

using nlohmann::json;

Observation encode_observation(const Episode& episode, Role role, const Utterance* heard) {
  Observation obs;
  obs.role = role;
  obs.mode = episode.config().mode;
  const Gripper g = episode.gripper();

  const Raster rgb = render_partial_rgb(episode.board(), g.position);
  std::copy(rgb.rgb.begin(), rgb.rgb.end(), obs.rgb_partial.begin());
  obs.overview = overview_masks(episode.board(), g, role, episode.task().target_id);

  if (role == Role::Guide) {
    obs.language = tokenize(episode.target_description());
    if (obs.mode == GuideMode::Word) {
      obs.last_word = 0;
      const auto history = episode.history();
      if (!history.empty()) {
        if (const auto* w = std::get_if<WordAction>(&history.back().guide_action)) obs.last_word = word_action_id(*w);
      }
    }
  } else {
    obs.language = heard != nullptr ? heard->tokens : episode.last_utterance().tokens;
  }
  validate_observation(obs, episode.board().size());
  return obs;
}

void validate_observation(const Observation& obs, int board_size) {
  if (obs.overview.size != board_size ||
      obs.overview.bits.size() != static_cast<std::size_t>(board_size * board_size * Overview::kChannels)) {
    throw EncodingError("observation overview does not match the board size");
  }
  if (std::any_of(obs.overview.bits.begin(), obs.overview.bits.end(), [](std::uint8_t b) { return b > 1; })) {
    throw EncodingError("observation overview holds a non-binary value");
  }
  if (std::any_of(obs.language.begin(), obs.language.end(), [](int id) { return id < 0 || id > kVocabularySize; })) {
    throw EncodingError("observation language id out of range");
  }
  const bool wants_word = obs.role == Role::Guide && obs.mode == GuideMode::Word;
  if (wants_word != obs.last_word.has_value()) throw EncodingError("last word present for the wrong role or mode");
  if (obs.last_word && (*obs.last_word < 0 || *obs.last_word >= kWordActionCount)) {
    throw EncodingError("last word id out of range");
  }
}

std::string_view name(ArrayFormat f) { return f == ArrayFormat::Lists ? "lists" : "base64"; }

std::optional<ArrayFormat> parse_array_format(std::string_view text) {
  if (text == "lists") return ArrayFormat::Lists;
  if (text == "base64") return ArrayFormat::Base64;
  return std::nullopt;
}

namespace {

constexpr std::string_view kAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int alphabet_index(char c) {
  const auto pos = kAlphabet.find(c);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

// Rows of `width` bytes, either as nested lists of `depth` or base64 strings.
json encode_rows(std::span<const std::uint8_t> data, int rows, int cols, int depth, ArrayFormat format) {
  json out = json::array();
  const std::size_t row_bytes = static_cast<std::size_t>(cols * depth);
  for (int r = 0; r < rows; ++r) {
    const auto row = data.subspan(static_cast<std::size_t>(r) * row_bytes, row_bytes);
    if (format == ArrayFormat::Base64) {
      out.push_back(base64_encode(row));
      continue;
    }
    json jr = json::array();
    for (int c = 0; c < cols; ++c) {
      json cell = json::array();
      for (int d = 0; d < depth; ++d) cell.push_back(row[static_cast<std::size_t>(c * depth + d)]);
      jr.push_back(std::move(cell));
    }
    out.push_back(std::move(jr));
  }
  return out;
}

std::vector<std::uint8_t> decode_rows(const json& j, int rows, int cols, int depth) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(rows)) throw EncodingError("wrong number of rows");
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(rows * cols * depth));
  for (const json& row : j) {
    if (row.is_string()) {
      const auto bytes = base64_decode(row.get<std::string>());
      if (bytes.size() != static_cast<std::size_t>(cols * depth)) throw EncodingError("wrong row length");
      out.insert(out.end(), bytes.begin(), bytes.end());
      continue;
    }
    if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) throw EncodingError("wrong row length");
    for (const json& cell : row) {
      if (!cell.is_array() || cell.size() != static_cast<std::size_t>(depth)) throw EncodingError("wrong cell depth");
      for (const json& v : cell) {
        const int value = v.get<int>();
        if (value < 0 || value > 255) throw EncodingError("cell value out of byte range");
        out.push_back(static_cast<std::uint8_t>(value));
      }
    }
  }
  return out;
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    const std::size_t n = std::min<std::size_t>(3, bytes.size() - i);
    std::uint32_t chunk = static_cast<std::uint32_t>(bytes[i]) << 16;
    if (n > 1) chunk |= static_cast<std::uint32_t>(bytes[i + 1]) << 8;
    if (n > 2) chunk |= bytes[i + 2];
    out += kAlphabet[(chunk >> 18) & 63];
    out += kAlphabet[(chunk >> 12) & 63];
    out += n > 1 ? kAlphabet[(chunk >> 6) & 63] : '=';
    out += n > 2 ? kAlphabet[chunk & 63] : '=';
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw EncodingError("base64 length is not a multiple of 4");
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < text.size(); i += 4) {
    std::uint32_t chunk = 0;
    int pad = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      const char c = text[i + k];
      int v = 0;
      if (c == '=') {
        if (i + 4 != text.size() || k < 2) throw EncodingError("misplaced base64 padding");
        ++pad;
      } else {
        if (pad > 0) throw EncodingError("misplaced base64 padding");
        v = alphabet_index(c);
        if (v < 0) throw EncodingError("invalid base64 character");
      }
      chunk = (chunk << 6) | static_cast<std::uint32_t>(v);
    }
    out.push_back(static_cast<std::uint8_t>(chunk >> 16));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>((chunk >> 8) & 0xFF));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(chunk & 0xFF));
  }
  return out;
}

json observation_to_json(const Observation& obs, ArrayFormat format) {
  const int side = SymbolicView::kSide;
  const int m = obs.overview.size;
  json j;
  j["rgb_partial"] = encode_rows(obs.rgb_partial, side, side, 3, format);
  j[obs.role == Role::Guide ? "pos_full_target" : "pos_full"] =
      encode_rows(obs.overview.bits, m, m, Overview::kChannels, format);
  j[obs.role == Role::Guide ? "target_desc" : "language"] = obs.language;
  if (obs.last_word) j["last_word"] = *obs.last_word;
  return j;
}

Observation observation_from_json(const json& j, Role role, GuideMode mode, int board_size) try {
  Observation obs;
  obs.role = role;
  obs.mode = mode;
  const int side = SymbolicView::kSide;
  const auto rgb = decode_rows(j.at("rgb_partial"), side, side, 3);
  std::copy(rgb.begin(), rgb.end(), obs.rgb_partial.begin());
  obs.overview.size = board_size;
  obs.overview.bits =
      decode_rows(j.at(role == Role::Guide ? "pos_full_target" : "pos_full"), board_size, board_size,
                  Overview::kChannels);
  const json& lang = j.at(role == Role::Guide ? "target_desc" : "language");
  if (!lang.is_array() || lang.size() != obs.language.size()) throw EncodingError("language must hold 16 ids");
  for (std::size_t i = 0; i < obs.language.size(); ++i) obs.language[i] = lang[i].get<int>();
  if (j.contains("last_word")) obs.last_word = j["last_word"].get<int>();
  validate_observation(obs, board_size);
  return obs;
} catch (const json::exception& e) {
  throw EncodingError(std::string("malformed observation: ") + e.what());
}

Coord gripper_from_overview(const Overview& overview) {
  for (int y = 0; y < overview.size; ++y) {
    for (int x = 0; x < overview.size; ++x) {
      if (overview.at(x, y, 1) != 0) return {x, y};
    }
  }
  throw EncodingError("overview has no gripper bit");
}

}  // namespace cogrip
