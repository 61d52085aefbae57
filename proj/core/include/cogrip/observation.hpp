#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogrip/board.hpp"
#include "cogrip/engine.hpp"

namespace cogrip {

// What a learning agent sees for one role at the current step.
//   rgb_partial: 7x7x3 piece colors around the gripper, [row][col][rgb]
//   overview:    MxMx4 binary channels (see overview_masks)
//   language:    follower: last utterance; guide: constant target description
//   last_word:   word-level guide only, id of its previous word action (0 before any)
struct Observation {
  static constexpr int kRgbSize = SymbolicView::kSide * SymbolicView::kSide * 3;

  Role role = Role::Follower;
  GuideMode mode = GuideMode::Intent;
  std::array<std::uint8_t, kRgbSize> rgb_partial{};
  Overview overview;
  TokenIds language{};
  std::optional<int> last_word;
};

// `heard` overrides the follower's language channel with the utterance it is
// about to answer (the server's turn order); by default it is the episode's
// last utterance.
Observation encode_observation(const Episode& episode, Role role, const Utterance* heard = nullptr);

// Throws EncodingError when a payload breaks the declared dimensions.
void validate_observation(const Observation& obs, int board_size);

enum class ArrayFormat : std::uint8_t { Lists, Base64 };
std::string_view name(ArrayFormat f);
std::optional<ArrayFormat> parse_array_format(std::string_view text);

// Lists: nested arrays. Base64: one string per row (rgb: 21 bytes, overview: 4*M bytes).
nlohmann::json observation_to_json(const Observation& obs, ArrayFormat format);
Observation observation_from_json(const nlohmann::json& j, Role role, GuideMode mode, int board_size);

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(std::string_view text);  // throws EncodingError

// Gripper position recovered from the overview's gripper channel.
Coord gripper_from_overview(const Overview& overview);

}  // namespace cogrip
