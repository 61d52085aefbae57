#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cogrip/board.hpp"
#include "cogrip/symbols.hpp"

namespace cogrip {

// ---------------------------------------------------------------------------
// Content selection
// ---------------------------------------------------------------------------

enum class Property : std::uint8_t { Color = 1, Shape = 2, Position = 4 };

// A linear order over {position, color, shape}, named by initials.
enum class PreferenceOrder : std::uint8_t { PCS, PSC, CPS, CSP, SPC, SCP };
inline constexpr std::array<PreferenceOrder, 6> kPreferenceOrders = {
    PreferenceOrder::PCS, PreferenceOrder::PSC, PreferenceOrder::CPS,
    PreferenceOrder::CSP, PreferenceOrder::SPC, PreferenceOrder::SCP};

std::array<Property, 3> properties(PreferenceOrder order);
std::string_view name(PreferenceOrder order);  // "pcs"
std::optional<PreferenceOrder> parse_order(std::string_view text);

// Subset of a referent's properties. The values come from the referent itself.
class PropertySet {
 public:
  constexpr PropertySet() = default;
  constexpr explicit PropertySet(std::uint8_t mask) : mask_(mask & 7) {}

  constexpr bool has(Property p) const { return (mask_ & static_cast<std::uint8_t>(p)) != 0; }
  constexpr void add(Property p) { mask_ |= static_cast<std::uint8_t>(p); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::uint8_t mask() const { return mask_; }
  int size() const;

  constexpr auto operator<=>(const PropertySet&) const = default;

 private:
  std::uint8_t mask_ = 0;
};

bool has_property_value(const SymbolicPiece& piece, const SymbolicPiece& referent, Property p);

// Incremental Algorithm: scans the referent's properties in preference order
// and keeps a property iff it rules out at least one remaining distractor.
PropertySet ia(const SymbolicPiece& target, std::span<const SymbolicPiece> distractors, PreferenceOrder order);

// True iff no distractor carries all selected property values of the target.
bool distinguishes(const SymbolicPiece& target, std::span<const SymbolicPiece> distractors, PropertySet props);

// The 7 realization templates, ids 1..7:
//   1 take the [color] piece           2 take the [shape]
//   3 take the piece at [position]     4 take the [color] [shape]
//   5 take the [color] piece at [position]
//   6 take the [shape] at [position]   7 take the [color] [shape] at [position]
inline constexpr int kTemplateCount = 7;
PropertySet template_properties(int template_id);
int template_id(PropertySet props);  // 0 for the empty set

// ---------------------------------------------------------------------------
// Utterances
// ---------------------------------------------------------------------------

enum class Category : std::uint8_t { Silence, Confirm, Decline, Directive, Reference };
inline constexpr std::array<Category, 5> kCategories = {Category::Silence, Category::Confirm, Category::Decline,
                                                        Category::Directive, Category::Reference};
std::string_view name(Category c);

inline constexpr int kMaxTokens = 16;
inline constexpr int kVocabularySize = 54;
inline constexpr int kPaddingId = 0;

using TokenIds = std::array<int, kMaxTokens>;

struct Utterance {
  std::string surface;
  Category category = Category::Silence;
  TokenIds tokens{};
};

Utterance make_utterance(std::string surface, Category category);

// Reference via the template matching `props`. An empty set falls back to the
// most preferred property of `order`.
Utterance realize(PropertySet props, const SymbolicPiece& target, PreferenceOrder order = PreferenceOrder::PCS);

// The remaining guide templates. `over` is the piece under the gripper, if any.
Utterance realize_confirm(std::optional<SymbolicPiece> over);   // yes this [way|<piece>]
Utterance realize_decline(std::optional<SymbolicPiece> over);   // not this [way|<piece>]
Utterance realize_go(Direction d);                              // go <dir>
Utterance realize_take(std::optional<SymbolicPiece> over);      // take <piece>
Utterance silence();

// Word-level surface for a single property value.
std::string word_surface(Color c);
std::string word_surface(Shape s);
std::string word_surface(Area a);

// ---------------------------------------------------------------------------
// Vocabulary
// ---------------------------------------------------------------------------

// Ids 1..54; id 0 is padding. Words the templates can produce come first,
// the tail holds reserved placeholders.
std::span<const std::string_view> vocabulary();
int word_id(std::string_view word);              // throws EncodingError
std::string_view id_word(int id);                // throws EncodingError

// Every word the templates above can produce, in vocabulary order.
std::vector<std::string_view> template_word_closure();

TokenIds tokenize(std::string_view surface);     // throws EncodingError
std::string detokenize(std::span<const int> ids);

std::vector<std::string_view> split_words(std::string_view text);

}  // namespace cogrip
