#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace modverb {

inline constexpr int kNumSlots = 6;

// The clausal and infinitival argument types, in fixed slot order.
// Serialization position i always refers to slot i.
enum class ArgumentTypeSlot : int {
  DASS_CLAUSE = 0,
  ZU_INF_PRESENT = 1,
  ZU_INF_PAST = 2,
  WH_CLAUSE = 3,
  OB_CLAUSE = 4,
  DECLARATIVE_CLAUSE = 5,
};

enum class Ternary : std::uint8_t {
  IMPOSSIBLE = 0,
  POSSIBLE = 1,
  UNSPECIFIED = 2,
};

char to_char(Ternary t);  // '0' / '1' / '-'
std::optional<Ternary> ternary_from_char(char c);

// Six-slot ternary vector over the argument types. Verb signatures are fully
// specified; class patterns may leave slots unspecified. Textual form is
// exactly six characters over {1, 0, -}.
class Signature {
 public:
  Signature();  // all slots UNSPECIFIED
  explicit Signature(const std::array<Ternary, kNumSlots>& slots) : slots_(slots) {}

  static std::optional<Signature> parse(std::string_view text);

  Ternary slot(int i) const { return slots_[static_cast<std::size_t>(i)]; }
  Ternary slot(ArgumentTypeSlot s) const { return slot(static_cast<int>(s)); }
  void set_slot(int i, Ternary v) { slots_[static_cast<std::size_t>(i)] = v; }

  bool fully_specified() const;
  bool fully_unspecified() const;

  std::string str() const;

  auto operator<=>(const Signature&) const = default;
  bool operator==(const Signature&) const = default;

 private:
  std::array<Ternary, kNumSlots> slots_;
};

}  // namespace modverb
