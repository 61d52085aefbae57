#include "cogrip/reg.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "cogrip/error.hpp"

namespace cogrip {

namespace {

constexpr std::array<std::string_view, kVocabularySize> kVocabulary = {
    "take",  "the",    "piece", "at",     "red",    "green",  "blue",   "yellow", "brown",
    "purple", "p",     "x",     "t",      "z",      "w",      "u",      "f",      "top",
    "bottom", "left",  "right", "center", "go",     "up",     "down",   "yes",    "not",
    "this",   "way",   "<r30>", "<r31>",  "<r32>",  "<r33>",  "<r34>",  "<r35>",  "<r36>",
    "<r37>",  "<r38>", "<r39>", "<r40>",  "<r41>",  "<r42>",  "<r43>",  "<r44>",  "<r45>",
    "<r46>",  "<r47>", "<r48>", "<r49>",  "<r50>",  "<r51>",  "<r52>",  "<r53>",  "<r54>",
};

std::string piece_phrase(const SymbolicPiece& p) {
  return std::string(name(p.color)) + " " + std::string(name(p.shape));
}

}  // namespace

std::array<Property, 3> properties(PreferenceOrder order) {
  using P = Property;
  switch (order) {
    case PreferenceOrder::PCS: return {P::Position, P::Color, P::Shape};
    case PreferenceOrder::PSC: return {P::Position, P::Shape, P::Color};
    case PreferenceOrder::CPS: return {P::Color, P::Position, P::Shape};
    case PreferenceOrder::CSP: return {P::Color, P::Shape, P::Position};
    case PreferenceOrder::SPC: return {P::Shape, P::Position, P::Color};
    case PreferenceOrder::SCP: return {P::Shape, P::Color, P::Position};
  }
  return {P::Position, P::Color, P::Shape};
}

std::string_view name(PreferenceOrder order) {
  switch (order) {
    case PreferenceOrder::PCS: return "pcs";
    case PreferenceOrder::PSC: return "psc";
    case PreferenceOrder::CPS: return "cps";
    case PreferenceOrder::CSP: return "csp";
    case PreferenceOrder::SPC: return "spc";
    case PreferenceOrder::SCP: return "scp";
  }
  return "?";
}

std::optional<PreferenceOrder> parse_order(std::string_view text) {
  for (PreferenceOrder o : kPreferenceOrders) {
    if (name(o) == text) return o;
  }
  return std::nullopt;
}

int PropertySet::size() const { return std::popcount(mask_); }

bool has_property_value(const SymbolicPiece& piece, const SymbolicPiece& referent, Property p) {
  switch (p) {
    case Property::Color: return piece.color == referent.color;
    case Property::Shape: return piece.shape == referent.shape;
    case Property::Position: return piece.area == referent.area;
  }
  return false;
}

PropertySet ia(const SymbolicPiece& target, std::span<const SymbolicPiece> distractors, PreferenceOrder order) {
  std::vector<SymbolicPiece> remaining(distractors.begin(), distractors.end());
  PropertySet selected;
  for (Property p : properties(order)) {
    if (remaining.empty()) break;
    const auto excluded = std::remove_if(remaining.begin(), remaining.end(), [&](const SymbolicPiece& m) {
      return !has_property_value(m, target, p);
    });
    if (excluded != remaining.end()) {
      selected.add(p);
      remaining.erase(excluded, remaining.end());
    }
  }
  return selected;
}

bool distinguishes(const SymbolicPiece& target, std::span<const SymbolicPiece> distractors, PropertySet props) {
  return std::none_of(distractors.begin(), distractors.end(), [&](const SymbolicPiece& m) {
    for (Property p : {Property::Color, Property::Shape, Property::Position}) {
      if (props.has(p) && !has_property_value(m, target, p)) return false;
    }
    return true;
  });
}

PropertySet template_properties(int template_id) {
  constexpr std::uint8_t c = 1, s = 2, p = 4;
  constexpr std::array<std::uint8_t, kTemplateCount> masks = {c, s, p, c | s, c | p, s | p, c | s | p};
  if (template_id < 1 || template_id > kTemplateCount) {
    throw LookupError("template id " + std::to_string(template_id) + " not in 1..7");
  }
  return PropertySet(masks[static_cast<std::size_t>(template_id - 1)]);
}

int template_id(PropertySet props) {
  for (int id = 1; id <= kTemplateCount; ++id) {
    if (template_properties(id) == props) return id;
  }
  return 0;
}

std::string_view name(Category c) {
  switch (c) {
    case Category::Silence: return "silence";
    case Category::Confirm: return "confirm";
    case Category::Decline: return "decline";
    case Category::Directive: return "directive";
    case Category::Reference: return "reference";
  }
  return "?";
}

Utterance make_utterance(std::string surface, Category category) {
  Utterance u{std::move(surface), category, {}};
  u.tokens = tokenize(u.surface);
  return u;
}

Utterance realize(PropertySet props, const SymbolicPiece& target, PreferenceOrder order) {
  if (props.empty()) props.add(properties(order)[0]);
  std::string text = "take the";
  if (props.has(Property::Color)) text += " " + std::string(name(target.color));
  if (props.has(Property::Shape)) {
    text += " " + std::string(name(target.shape));
  } else {
    text += " piece";
  }
  if (props.has(Property::Position)) text += " at " + std::string(name(target.area));
  return make_utterance(std::move(text), Category::Reference);
}

Utterance realize_confirm(std::optional<SymbolicPiece> over) {
  return make_utterance("yes this " + (over ? piece_phrase(*over) : std::string("way")), Category::Confirm);
}

Utterance realize_decline(std::optional<SymbolicPiece> over) {
  return make_utterance("not this " + (over ? piece_phrase(*over) : std::string("way")), Category::Decline);
}

Utterance realize_go(Direction d) { return make_utterance("go " + std::string(name(d)), Category::Directive); }

Utterance realize_take(std::optional<SymbolicPiece> over) {
  return make_utterance("take " + (over ? piece_phrase(*over) : std::string("piece")), Category::Directive);
}

Utterance silence() { return make_utterance("", Category::Silence); }

std::string word_surface(Color c) { return std::string(name(c)); }
std::string word_surface(Shape s) { return std::string(name(s)); }
std::string word_surface(Area a) { return std::string(name(a)); }

std::span<const std::string_view> vocabulary() { return kVocabulary; }

int word_id(std::string_view word) {
  const auto it = std::find(kVocabulary.begin(), kVocabulary.end(), word);
  if (it == kVocabulary.end() || word.starts_with('<')) {
    throw EncodingError("word '" + std::string(word) + "' is not in the vocabulary");
  }
  return static_cast<int>(it - kVocabulary.begin()) + 1;
}

std::string_view id_word(int id) {
  if (id < 1 || id > kVocabularySize) throw EncodingError("token id " + std::to_string(id) + " out of range");
  return kVocabulary[static_cast<std::size_t>(id - 1)];
}

std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ') ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

TokenIds tokenize(std::string_view surface) {
  const std::vector<std::string_view> words = split_words(surface);
  if (words.size() > static_cast<std::size_t>(kMaxTokens)) {
    throw EncodingError("utterance longer than " + std::to_string(kMaxTokens) + " words: " + std::string(surface));
  }
  TokenIds ids{};
  for (std::size_t i = 0; i < words.size(); ++i) ids[i] = word_id(words[i]);
  return ids;
}

std::string detokenize(std::span<const int> ids) {
  std::string out;
  for (int id : ids) {
    if (id == kPaddingId) break;
    if (!out.empty()) out += ' ';
    out += id_word(id);
  }
  return out;
}

std::vector<std::string_view> template_word_closure() {
  std::vector<Utterance> all;
  std::vector<std::optional<SymbolicPiece>> overs = {std::nullopt};
  for (Shape s : kShapes) {
    for (Color c : kColors) {
      for (Area a : kAreas) {
        const SymbolicPiece piece{s, c, a};
        overs.emplace_back(piece);
        for (int t = 1; t <= kTemplateCount; ++t) all.push_back(realize(template_properties(t), piece));
        all.push_back(make_utterance(describe(piece), Category::Reference));
      }
    }
  }
  for (const auto& over : overs) {
    all.push_back(realize_confirm(over));
    all.push_back(realize_decline(over));
    all.push_back(realize_take(over));
  }
  for (Direction d : kDirections) all.push_back(realize_go(d));
  for (Color c : kColors) all.push_back(make_utterance(word_surface(c), Category::Reference));
  for (Shape s : kShapes) all.push_back(make_utterance(word_surface(s), Category::Reference));
  for (Area a : kAreas) all.push_back(make_utterance(word_surface(a), Category::Reference));
  all.push_back(make_utterance("take", Category::Directive));

  std::vector<bool> used(kVocabulary.size(), false);
  for (const Utterance& u : all) {
    for (std::string_view w : split_words(u.surface)) used[static_cast<std::size_t>(word_id(w) - 1)] = true;
  }
  std::vector<std::string_view> closure;
  for (std::size_t i = 0; i < kVocabulary.size(); ++i) {
    if (used[i]) closure.push_back(kVocabulary[i]);
  }
  return closure;
}

}  // namespace cogrip
