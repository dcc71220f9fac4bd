#include "modverb/signature.hpp"

namespace modverb {

char to_char(Ternary t) {
  switch (t) {
    case Ternary::IMPOSSIBLE: return '0';
    case Ternary::POSSIBLE: return '1';
    case Ternary::UNSPECIFIED: return '-';
  }
  return '?';
}

std::optional<Ternary> ternary_from_char(char c) {
  switch (c) {
    case '0': return Ternary::IMPOSSIBLE;
    case '1': return Ternary::POSSIBLE;
    case '-': return Ternary::UNSPECIFIED;
    default: return std::nullopt;
  }
}

Signature::Signature() {
  slots_.fill(Ternary::UNSPECIFIED);
}

std::optional<Signature> Signature::parse(std::string_view text) {
  if (text.size() != kNumSlots) return std::nullopt;
  std::array<Ternary, kNumSlots> slots;
  for (int i = 0; i < kNumSlots; ++i) {
    auto t = ternary_from_char(text[static_cast<std::size_t>(i)]);
    if (!t) return std::nullopt;
    slots[static_cast<std::size_t>(i)] = *t;
  }
  return Signature(slots);
}

bool Signature::fully_specified() const {
  for (Ternary t : slots_) {
    if (t == Ternary::UNSPECIFIED) return false;
  }
  return true;
}

bool Signature::fully_unspecified() const {
  for (Ternary t : slots_) {
    if (t != Ternary::UNSPECIFIED) return false;
  }
  return true;
}

std::string Signature::str() const {
  std::string out(kNumSlots, '-');
  for (int i = 0; i < kNumSlots; ++i) {
    out[static_cast<std::size_t>(i)] = to_char(slots_[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace modverb
