#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "modverb/classes.hpp"
#include "modverb/lexicon.hpp"

namespace modverb {

enum class LabelScheme { TWO_WAY, THREE_WAY };

std::string to_string(LabelScheme s);
std::optional<LabelScheme> label_scheme_from_string(std::string_view s);
const std::set<std::string>& labels_for(LabelScheme s);

struct RtePair {
  std::string id;
  std::string text;
  std::string hypothesis;
  std::string label;
  std::optional<std::vector<std::string>> text_lemmas;
  std::optional<std::vector<std::string>> hyp_lemmas;
};

// Lowercases, splits on whitespace, strips leading/trailing punctuation,
// drops empty tokens. Word-internal punctuation (apostrophes, hyphens)
// survives.
std::vector<std::string> tokenize(std::string_view text);

// Raw count of shared token types; no stopword filtering, no normalization.
int word_overlap(std::string_view text, std::string_view hypothesis);

// lemma -> semantic classes it belongs to. German verbs map to one class;
// English verbs inherit the union over their German sources.
using ClassMembership = std::map<std::string, std::set<SemanticClassName>>;

ClassMembership membership_from_assignments(const std::vector<ClassAssignment>& assignments);
ClassMembership multi_class_membership(const TranslationTable& translations,
                                       const std::vector<ClassAssignment>& assignments);

// All classes apart from WH_FACTUAL and WH_IF_FACTUAL mark uncertainty.
const std::set<SemanticClassName>& default_uncertainty_classes();

struct FmFeatures {
  double overlap = 0.0;        // Jaccard overlap of uncertainty lemmas, 0 on empty union
  int presence_mismatch = 0;   // 1 iff exactly one side contains uncertainty lemmas
};

FmFeatures factuality_mismatch(const std::vector<std::string>& text_lemmas,
                               const std::vector<std::string>& hyp_lemmas,
                               const ClassMembership& membership,
                               const std::set<SemanticClassName>& uncertainty_classes);

inline constexpr const char* kFeatureWo = "WO";
inline constexpr const char* kFeatureFmOverlap = "FM_OVERLAP";
inline constexpr const char* kFeatureFmMismatch = "FM_PRESENCE_MISMATCH";

using FeatureVector = std::map<std::string, double>;

struct FeatureConfig {
  bool use_fm = false;
  ClassMembership membership;
  std::set<SemanticClassName> uncertainty_classes = default_uncertainty_classes();
  // surface -> lemma fallback for pairs without pre-lemmatized tokens;
  // unlisted surfaces keep their surface form.
  std::map<std::string, std::string> lemma_dict;
};

FeatureVector extract_features(const RtePair& pair, const FeatureConfig& config);

struct NbClassStats {
  double prior = 0.0;
  std::map<std::string, double> mean;
  std::map<std::string, double> variance;  // ML variance plus epsilon
};

struct NbModel {
  std::set<std::string> feature_names;
  std::map<std::string, NbClassStats> classes;  // keyed by label
  double epsilon = 1e-9;
};

// Maximum-likelihood priors, per-class means, and population variances with
// epsilon smoothing. Requires at least two distinct labels.
NbModel nb_train(const std::vector<FeatureVector>& vectors, const std::vector<std::string>& labels,
                 double epsilon = 1e-9);

// Argmax of log prior + summed Gaussian log-likelihoods; exact ties break to
// the lexicographically smaller label. Unknown or missing feature names are
// an error.
std::string nb_predict(const NbModel& model, const FeatureVector& vector);

struct CvResult {
  double accuracy = 0.0;  // pooled: total correct / total pairs
  std::vector<double> fold_accuracies;
  std::vector<int> fold_sizes;
};

// Sorts pairs by id, applies a seeded Fisher-Yates shuffle, splits into k
// contiguous folds (sizes differ by at most 1), trains on k-1 and tests on
// the held-out fold.
CvResult cross_validate(const std::vector<RtePair>& pairs, const FeatureConfig& config, int k,
                        std::uint64_t seed, double epsilon = 1e-9);

// JSON Lines: {"id", "text", "hypothesis", "label"[, "text_lemmas",
// "hyp_lemmas"]}. Labels must belong to the scheme; ids must be unique.
std::vector<RtePair> parse_pairs_jsonl(std::istream& in, LabelScheme scheme,
                                       const std::string& source_name = "<stream>");
std::vector<RtePair> load_pairs_jsonl(const std::string& path, LabelScheme scheme);
void write_pairs_jsonl(std::ostream& out, const std::vector<RtePair>& pairs);

// RTE-3 XML: <pair id=".." entailment=".."><t>..</t><h>..</h></pair>.
// entailment YES/NO/UNKNOWN maps onto the scheme's labels.
std::vector<RtePair> parse_rte3_xml(std::istream& in, LabelScheme scheme,
                                    const std::string& source_name = "<stream>");

// surface<TAB>lemma; later rows win.
std::map<std::string, std::string> load_lemma_dict(const std::string& path);

}  // namespace modverb
