#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modverb/classes.hpp"
#include "modverb/lexicon.hpp"

namespace modverb {

enum class LinkPolicyName { GERMAN_GERMANET, CROSSLINGUAL_VERBNET };

enum class ComparedFeature { COMPLEMENTIZER, CASE, CATEGORY, VERB_FORM };

std::string to_string(LinkPolicyName n);

// Which argument features must agree for two frames to unify. The German
// policy compares complementizer, case and category literally; the
// cross-lingual policy compares complementizer and category through the
// German/English equivalence map plus the verb form, and ignores case
// (English arguments carry none).
struct FeaturePolicy {
  LinkPolicyName name = LinkPolicyName::GERMAN_GERMANET;
  std::set<ComparedFeature> compared_features;
};

const FeaturePolicy& german_germanet_policy();
const FeaturePolicy& crosslingual_verbnet_policy();

// Category equivalence used by the cross-lingual policy: dass<->that,
// ob<->whether/if; infinitival and nominal categories map to themselves.
// Categories outside the map never unify across languages.
ArgumentCategory canonical_category(ArgumentCategory c);

struct SenseLink {
  std::string source_lemma;
  int source_frame_index = 0;
  std::string target_sense_id;
  int target_frame_index = 0;
  LinkPolicyName policy = LinkPolicyName::GERMAN_GERMANET;
  // Positional argument pairing; length equals both frames' argument counts.
  std::vector<std::pair<int, int>> evidence;

  bool operator==(const SenseLink&) const = default;
};

// True iff argument counts are equal and, pairing arguments positionally,
// every compared feature agrees under the policy.
bool frames_compatible(const SubcatFrame& src, const SubcatFrame& tgt, const FeaturePolicy& policy);

struct LinkResult {
  std::vector<SenseLink> links;
  std::vector<std::string> skipped;  // lemmas without a translation entry
};

// Emits one link per (source frame, target sense) with a compatible frame.
// Cross-lingual linking requires `translations`; a source lemma without an
// entry is skipped and reported, not an error.
LinkResult link_verb(const VerbEntry& src, const std::vector<Sense>& targets,
                     const FeaturePolicy& policy, const TranslationTable* translations = nullptr);

// Links every entry; output sorted by (lemma, frame index, target sense id).
LinkResult link_lexicon(const std::vector<VerbEntry>& entries, const std::vector<Sense>& targets,
                        const FeaturePolicy& policy, const TranslationTable* translations = nullptr,
                        int jobs = 1);

struct GoldJudgment {
  std::string source_lemma;
  int source_frame_index = 0;
  std::string target_sense_id;
  bool correct = false;
};

// Fraction of gold-judged links marked correct. Every gold key must refer to
// an emitted link; missing keys raise a DataError listing them.
double evaluate_links(const std::vector<SenseLink>& links, const std::vector<GoldJudgment>& gold);

// Gold TSV: source_lemma<TAB>frame_index<TAB>target_sense_id<TAB>{0,1}.
std::vector<GoldJudgment> load_gold_judgments(const std::string& path);

struct ClassAlignment {
  // source class -> target class_label -> count of distinct linked verbs
  std::map<SemanticClassName, std::map<std::string, int>> table;
  std::map<SemanticClassName, int> class_sizes;    // classified verbs per class
  std::map<SemanticClassName, int> linked_verbs;   // distinct linked verbs per class
  std::map<SemanticClassName, double> coverage_percent;
  int linked_total = 0;
  int classified_total = 0;
  double coverage_total_percent = 0.0;
};

// Aggregates links by source class and target class label. Every link's
// lemma must have an assignment and every target_sense_id must resolve.
ClassAlignment class_alignment(const std::vector<ClassAssignment>& assignments,
                               const std::vector<SenseLink>& links,
                               const std::vector<Sense>& senses);

}  // namespace modverb
