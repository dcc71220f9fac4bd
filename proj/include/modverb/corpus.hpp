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

struct Token {
  std::string surface;
  std::string lemma;
  std::string pos;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;
};

struct CorpusConfig {
  // A token is a verb when its POS starts with any of these prefixes.
  std::vector<std::string> verb_pos_prefixes = {"V", "VV", "VA", "VM"};
  std::string particle_tag = "PTKVZ";
  bool lowercase_lemmas = false;  // English counting; German stays case-sensitive
};

bool is_verb_pos(const CorpusConfig& cfg, std::string_view pos);

struct ReattachOutcome {
  Sentence sentence;
  int reattached = 0;
  int skipped_particles = 0;  // particles with no preceding verb token
};

// Rewrites the lemma of the nearest preceding verb token to
// particle-lemma + verb-lemma, once per particle. The particle token itself
// stays in place. A verb lemma that already starts with the particle lemma
// is left alone, which makes the rewrite idempotent.
ReattachOutcome reattach_particles(const Sentence& sentence, const CorpusConfig& cfg);

// One token per line: surface<TAB>lemma<TAB>pos; a blank line ends a
// sentence. Throws DataError with the line number on malformed input.
std::vector<Sentence> read_corpus(std::istream& in, const std::string& source_name = "<stream>");
std::vector<Sentence> load_corpus(const std::string& path);

using LemmaCounts = std::map<std::string, std::uint64_t>;

struct CorpusTally {
  LemmaCounts lemma_counts;  // restricted to the query lemma set
  std::uint64_t sentences = 0;
  std::uint64_t tokens = 0;
  std::uint64_t verb_tokens = 0;
  std::set<std::string> verb_types;   // distinct verb lemmas
  std::set<std::string> token_types;  // distinct lemmas over all tokens
  std::uint64_t reattached = 0;
  std::uint64_t skipped_particles = 0;
};

// Counts verb-POS tokens whose (optionally reattached) lemma is in `lemmas`.
CorpusTally tally_corpus(const std::vector<Sentence>& corpus, const std::set<std::string>& lemmas,
                         const CorpusConfig& cfg, bool reattach, int jobs = 1);

// Associative, commutative shard merge.
void merge_tally(CorpusTally& into, const CorpusTally& other);

LemmaCounts count_lemmas(const std::vector<Sentence>& corpus, const std::set<std::string>& lemmas,
                         const CorpusConfig& cfg, bool reattach = false);

struct ClassDistribution {
  std::map<SemanticClassName, double> percent;
  double all_percent = 0.0;  // sum over the eight classes
  std::uint64_t total = 0;   // denominator
};

// percent[c] = 100 * (counts of lemmas assigned to c) / total. Throws
// DataError when total is zero.
ClassDistribution class_distribution(const LemmaCounts& counts,
                                     const std::vector<ClassAssignment>& assignments,
                                     std::uint64_t total);

struct FilterResult {
  std::vector<VerbEntry> kept;
  double retained_fraction = 0.0;
};

// Keeps entries whose corpus_frequency is strictly greater than `threshold`.
// Every entry must carry a frequency.
FilterResult frequency_filter(const std::vector<VerbEntry>& entries, std::uint64_t threshold);

struct PolysemyStats {
  // Mean sense count over the lemmas of the query set found in the
  // inventory; absent when none matched.
  std::optional<double> avg_senses_matched;
  double avg_senses_all = 0.0;
  int matched_lemmas = 0;
};

PolysemyStats polysemy_stats(const std::vector<Sense>& inventory,
                             const std::set<std::string>& verbs);

}  // namespace modverb
