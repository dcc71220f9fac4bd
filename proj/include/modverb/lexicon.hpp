#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "modverb/error.hpp"
#include "modverb/signature.hpp"

namespace modverb {

enum class Language { DE, EN };

std::string to_string(Language l);
std::optional<Language> language_from_string(std::string_view s);

enum class GrammaticalFunction {
  SUBJECT,
  DIRECT_OBJECT,
  INDIRECT_OBJECT,
  PREP_OBJECT,
  CLAUSAL_OBJECT,
  INF_OBJECT,
};

enum class ArgumentCategory {
  NP,
  PP,
  DASS_CLAUSE,
  OB_CLAUSE,
  WH_CLAUSE,
  DECL_CLAUSE,
  THAT_CLAUSE,
  WHETHER_IF_CLAUSE,
  TO_INF_PRESENT,
  TO_INF_PAST,
  ING_FORM,
  OTHER,
};

enum class Case { NOM, ACC, DAT, GEN };

std::string to_string(GrammaticalFunction f);
std::string to_string(ArgumentCategory c);
std::string to_string(Case c);
std::optional<GrammaticalFunction> function_from_string(std::string_view s);
std::optional<ArgumentCategory> category_from_string(std::string_view s);
std::optional<Case> case_from_string(std::string_view s);

bool is_clausal(ArgumentCategory c);
bool is_nominal(ArgumentCategory c);  // NP or PP

// Signature slot witnessed by an argument of this category, if any.
std::optional<ArgumentTypeSlot> witnessed_slot(ArgumentCategory c);

// One syntactic argument in the standardized, language-neutral frame format.
// Case is carried only by NP/PP arguments, complementizers only by clausal
// ones.
struct SyntacticArgument {
  GrammaticalFunction function = GrammaticalFunction::SUBJECT;
  ArgumentCategory category = ArgumentCategory::NP;
  std::optional<Case> grammatical_case;
  std::optional<std::string> complementizer;
  std::optional<std::string> preposition;

  bool operator==(const SyntacticArgument&) const = default;
};

struct SubcatFrame {
  std::vector<SyntacticArgument> arguments;

  bool operator==(const SubcatFrame&) const = default;
};

// Throw DataError on invariant violations.
void validate_argument(const SyntacticArgument& arg);
void validate_frame(const SubcatFrame& frame);

struct VerbEntry {
  std::string lemma;
  Language language = Language::DE;
  Signature signature;  // fully specified; all-unspecified only for EN entries
  std::vector<SubcatFrame> frames;
  std::optional<std::uint64_t> corpus_frequency;

  bool operator==(const VerbEntry&) const = default;
};

enum class LexiconName { GERMANET, VERBNET, FRAMENET, CUSTOM };

std::string to_string(LexiconName n);
std::optional<LexiconName> lexicon_name_from_string(std::string_view s);

struct Sense {
  std::string sense_id;
  std::string lemma;
  LexiconName lexicon = LexiconName::CUSTOM;
  std::vector<SubcatFrame> frames;
  std::string class_label;  // semantic field, verb class, or frame name

  bool operator==(const Sense&) const = default;
};

struct SenseInventory {
  LexiconName lexicon = LexiconName::CUSTOM;
  std::vector<Sense> senses;
};

// German lemma -> set of English lemmas. Duplicates collapse.
class TranslationTable {
 public:
  void add(const std::string& de_lemma, const std::string& en_lemma);
  const std::set<std::string>* lookup(const std::string& de_lemma) const;
  bool contains(const std::string& de_lemma) const;
  std::size_t source_count() const { return de_to_en_.size(); }
  std::set<std::string> target_lemmas() const;
  const std::map<std::string, std::set<std::string>>& mapping() const { return de_to_en_; }

 private:
  std::map<std::string, std::set<std::string>> de_to_en_;
};

// Frame JSON: {"arguments": [{"function": ..., "category": ..., "case": ...,
// "complementizer": ..., "preposition": ...}]}. Absent options serialize as
// null; unknown attributes are ignored on load and reported via `warnings`.
nlohmann::json frame_to_json(const SubcatFrame& frame);
SubcatFrame frame_from_json(const nlohmann::json& j, std::vector<std::string>* warnings = nullptr);

struct RowError {
  int line = 0;
  std::string message;
};

struct LexiconLoadResult {
  std::vector<VerbEntry> entries;
  std::vector<RowError> errors;
  std::vector<std::string> warnings;
  int data_rows = 0;  // entries.size() + errors.size() == data_rows
};

// Lexicon TSV: lemma<TAB>signature[<TAB>frames_json[<TAB>frequency]].
// Lines starting with '#' are comments. Bad rows are collected, never
// silently dropped.
LexiconLoadResult parse_lexicon(std::istream& in, Language language,
                                const std::string& source_name = "<stream>");

// Throws DataError listing every bad row.
std::vector<VerbEntry> load_lexicon(const std::string& path, Language language);

std::string serialize_lexicon(const std::vector<VerbEntry>& entries);

SenseInventory parse_sense_inventory(const nlohmann::json& j,
                                     std::vector<std::string>* warnings = nullptr);
SenseInventory load_sense_inventory(const std::string& path);

// Translation TSV: de_lemma<TAB>en_lemma; '#' lines are comments.
TranslationTable parse_translations(std::istream& in, const std::string& source_name = "<stream>");
TranslationTable load_translations(const std::string& path);

}  // namespace modverb
