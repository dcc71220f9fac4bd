#include "modverb/classes.hpp"

#include "modverb/error.hpp"

namespace modverb {

std::string to_string(MeaningComponent c) {
  switch (c) {
    case MeaningComponent::ASPECTUAL: return "ASPECTUAL";
    case MeaningComponent::FUTURE_ORIENTED: return "FUTURE_ORIENTED";
    case MeaningComponent::INTERROGATIVE: return "INTERROGATIVE";
    case MeaningComponent::WH_FACTUAL: return "WH_FACTUAL";
    case MeaningComponent::WH_IF_FACTUAL: return "WH_IF_FACTUAL";
    case MeaningComponent::NON_FACTUAL: return "NON_FACTUAL";
  }
  return "?";
}

std::string to_string(SemanticClassName n) {
  switch (n) {
    case SemanticClassName::ASPECTUAL: return "ASPECTUAL";
    case SemanticClassName::FUTURE_ORIENTED: return "FUTURE_ORIENTED";
    case SemanticClassName::INTERROGATIVE: return "INTERROGATIVE";
    case SemanticClassName::WH_FACTUAL: return "WH_FACTUAL";
    case SemanticClassName::FO_WH_FACTUAL: return "FO_WH_FACTUAL";
    case SemanticClassName::WH_IF_FACTUAL: return "WH_IF_FACTUAL";
    case SemanticClassName::FO_WH_IF_FACTUAL: return "FO_WH_IF_FACTUAL";
    case SemanticClassName::NON_FACTUAL: return "NON_FACTUAL";
  }
  return "?";
}

std::optional<SemanticClassName> class_from_string(std::string_view s) {
  for (SemanticClassName n : all_class_names()) {
    if (to_string(n) == s) return n;
  }
  return std::nullopt;
}

const std::vector<SemanticClassName>& all_class_names() {
  static const std::vector<SemanticClassName> names = {
      SemanticClassName::ASPECTUAL,        SemanticClassName::FUTURE_ORIENTED,
      SemanticClassName::INTERROGATIVE,    SemanticClassName::WH_FACTUAL,
      SemanticClassName::FO_WH_FACTUAL,    SemanticClassName::WH_IF_FACTUAL,
      SemanticClassName::FO_WH_IF_FACTUAL, SemanticClassName::NON_FACTUAL,
  };
  return names;
}

const std::vector<SemanticClass>& semantic_classes() {
  using MC = MeaningComponent;
  static const std::vector<SemanticClass> classes = [] {
    auto pat = [](const char* text) { return *Signature::parse(text); };
    std::vector<SemanticClass> v;
    v.push_back({SemanticClassName::INTERROGATIVE, pat("00011-"), {MC::INTERROGATIVE}, 0});
    v.push_back({SemanticClassName::FO_WH_IF_FACTUAL, pat("11011-"),
                 {MC::FUTURE_ORIENTED, MC::WH_FACTUAL, MC::WH_IF_FACTUAL}, 1});
    v.push_back({SemanticClassName::FO_WH_FACTUAL, pat("11010-"),
                 {MC::FUTURE_ORIENTED, MC::WH_FACTUAL}, 2});
    v.push_back({SemanticClassName::WH_IF_FACTUAL, pat("1--11-"),
                 {MC::WH_FACTUAL, MC::WH_IF_FACTUAL}, 3});
    v.push_back({SemanticClassName::WH_FACTUAL, pat("1111--"), {MC::WH_FACTUAL}, 4});
    v.push_back({SemanticClassName::NON_FACTUAL, pat("1110--"), {MC::NON_FACTUAL}, 5});
    v.push_back({SemanticClassName::FUTURE_ORIENTED, pat("1100--"), {MC::FUTURE_ORIENTED}, 6});
    v.push_back({SemanticClassName::ASPECTUAL, pat("010---"), {MC::ASPECTUAL}, 7});
    return v;
  }();
  return classes;
}

const SemanticClass& semantic_class(SemanticClassName name) {
  for (const auto& c : semantic_classes()) {
    if (c.name == name) return c;
  }
  throw DataError("unknown semantic class");
}

bool matches(const Signature& pattern, const Signature& sig) {
  if (!sig.fully_specified()) {
    throw DataError("signature to match must be fully specified, got " + sig.str());
  }
  for (int i = 0; i < kNumSlots; ++i) {
    Ternary p = pattern.slot(i);
    if (p == Ternary::UNSPECIFIED) continue;
    if (p != sig.slot(i)) return false;
  }
  return true;
}

std::set<MeaningComponent> meaning_components(const Signature& sig) {
  if (!sig.fully_specified()) {
    throw DataError("signature must be fully specified, got " + sig.str());
  }
  auto is = [&](int slot, char c) { return to_char(sig.slot(slot)) == c; };
  std::set<MeaningComponent> out;
  if (is(0, '1') && is(1, '1') && is(2, '0')) out.insert(MeaningComponent::FUTURE_ORIENTED);
  if (is(0, '0') && is(1, '1') && is(2, '0')) out.insert(MeaningComponent::ASPECTUAL);
  if (is(3, '1')) out.insert(MeaningComponent::WH_FACTUAL);
  if (is(3, '1') && is(4, '1')) out.insert(MeaningComponent::WH_IF_FACTUAL);
  return out;
}

std::string to_string(ClassAssignment::Status s) {
  switch (s) {
    case ClassAssignment::Status::CLASSIFIED: return "CLASSIFIED";
    case ClassAssignment::Status::IDIOSYNCRATIC: return "IDIOSYNCRATIC";
    case ClassAssignment::Status::UNCLASSIFIED: return "UNCLASSIFIED";
  }
  return "?";
}

ClassAssignment classify_signature(const Signature& sig) {
  if (!sig.fully_specified()) {
    throw DataError("signature to classify must be fully specified, got " + sig.str());
  }
  ClassAssignment out;
  for (const auto& cls : semantic_classes()) {
    if (matches(cls.pattern, sig)) {
      out.status = ClassAssignment::Status::CLASSIFIED;
      out.class_name = cls.name;
      out.matched_pattern = cls.pattern;
      return out;
    }
  }
  out.status = ClassAssignment::Status::IDIOSYNCRATIC;
  return out;
}

LexiconClassification classify_lexicon(const std::vector<VerbEntry>& entries) {
  LexiconClassification result;
  for (SemanticClassName n : all_class_names()) result.histogram.per_class[n] = 0;
  for (const auto& entry : entries) {
    ClassAssignment a;
    if (entry.signature.fully_unspecified()) {
      a.lemma = entry.lemma;
      a.status = ClassAssignment::Status::UNCLASSIFIED;
      result.histogram.unclassified += 1;
    } else {
      a = classify_signature(entry.signature);
      a.lemma = entry.lemma;
      if (a.status == ClassAssignment::Status::CLASSIFIED) {
        result.histogram.per_class[*a.class_name] += 1;
      } else {
        result.histogram.idiosyncratic += 1;
      }
    }
    result.histogram.total += 1;
    result.assignments.push_back(std::move(a));
  }
  return result;
}

}  // namespace modverb
