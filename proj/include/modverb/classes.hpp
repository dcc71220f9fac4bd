#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "modverb/lexicon.hpp"
#include "modverb/signature.hpp"

namespace modverb {

// Meaning components read off signature substrings, plus the two labels
// (INTERROGATIVE, NON_FACTUAL) that only whole-class matching assigns.
enum class MeaningComponent {
  ASPECTUAL,
  FUTURE_ORIENTED,
  INTERROGATIVE,
  WH_FACTUAL,
  WH_IF_FACTUAL,
  NON_FACTUAL,
};

enum class SemanticClassName {
  ASPECTUAL,
  FUTURE_ORIENTED,
  INTERROGATIVE,
  WH_FACTUAL,
  FO_WH_FACTUAL,
  WH_IF_FACTUAL,
  FO_WH_IF_FACTUAL,
  NON_FACTUAL,
};

inline constexpr int kNumClasses = 8;

std::string to_string(MeaningComponent c);
std::string to_string(SemanticClassName n);
std::optional<SemanticClassName> class_from_string(std::string_view s);

// All class names in canonical (reporting) order.
const std::vector<SemanticClassName>& all_class_names();

struct SemanticClass {
  SemanticClassName name;
  Signature pattern;  // underspecified slots allowed
  std::set<MeaningComponent> components;
  int precedence_rank;  // position in the matching order, 0 evaluated first
};

// The eight classes in matching order. Patterns that require a possible
// ob-clause (slot 4 = 1) rank before 1111--, so 11111x classifies as
// WH_IF_FACTUAL.
const std::vector<SemanticClass>& semantic_classes();
const SemanticClass& semantic_class(SemanticClassName name);

// True iff every specified slot of `pattern` equals the corresponding slot
// of `sig`; UNSPECIFIED pattern slots match anything. `sig` must be fully
// specified (throws DataError otherwise).
bool matches(const Signature& pattern, const Signature& sig);

// Substring components of a fully specified signature: FUTURE_ORIENTED for
// the 110 prefix, ASPECTUAL for the 010 prefix, WH_FACTUAL for slot 3 = 1,
// WH_IF_FACTUAL for slots 3,4 = 11. Never emits INTERROGATIVE or NON_FACTUAL.
std::set<MeaningComponent> meaning_components(const Signature& sig);

struct ClassAssignment {
  enum class Status { CLASSIFIED, IDIOSYNCRATIC, UNCLASSIFIED };

  std::string lemma;  // empty when classifying a bare signature
  Status status = Status::IDIOSYNCRATIC;
  std::optional<SemanticClassName> class_name;  // set iff CLASSIFIED
  std::optional<Signature> matched_pattern;     // set iff CLASSIFIED
};

std::string to_string(ClassAssignment::Status s);

// First pattern match in precedence order, else IDIOSYNCRATIC. `sig` must be
// fully specified.
ClassAssignment classify_signature(const Signature& sig);

struct ClassHistogram {
  std::map<SemanticClassName, int> per_class;
  int idiosyncratic = 0;
  int unclassified = 0;
  int total = 0;
};

struct LexiconClassification {
  std::vector<ClassAssignment> assignments;
  ClassHistogram histogram;
};

// One assignment per entry, in input order. Entries with a fully unspecified
// signature (untranslated-signature English entries) come back UNCLASSIFIED.
LexiconClassification classify_lexicon(const std::vector<VerbEntry>& entries);

}  // namespace modverb
