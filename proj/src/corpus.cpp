#include "modverb/corpus.hpp"

#include <fstream>
#include <future>

#include "modverb/util.hpp"

namespace modverb {

bool is_verb_pos(const CorpusConfig& cfg, std::string_view pos) {
  for (const auto& prefix : cfg.verb_pos_prefixes) {
    if (pos.size() >= prefix.size() && pos.compare(0, prefix.size(), prefix) == 0) return true;
  }
  return false;
}

ReattachOutcome reattach_particles(const Sentence& sentence, const CorpusConfig& cfg) {
  ReattachOutcome out;
  out.sentence = sentence;
  auto& tokens = out.sentence.tokens;
  // A finite verb carries at most one separated particle; a verb lemma that
  // already starts with the particle lemma is left alone. Both rules keep
  // the rewrite idempotent.
  std::vector<char> claimed(tokens.size(), 0);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].pos != cfg.particle_tag) continue;
    const std::string& particle = tokens[i].lemma;
    std::size_t verb = tokens.size();
    for (std::size_t j = i; j-- > 0;) {
      if (is_verb_pos(cfg, tokens[j].pos)) {
        verb = j;
        break;
      }
    }
    if (verb == tokens.size() || claimed[verb]) {
      ++out.skipped_particles;
      continue;
    }
    claimed[verb] = 1;
    if (tokens[verb].lemma.rfind(particle, 0) != 0) {
      tokens[verb].lemma = particle + tokens[verb].lemma;
      ++out.reattached;
    }
  }
  return out;
}

std::vector<Sentence> read_corpus(std::istream& in, const std::string& source_name) {
  std::vector<Sentence> corpus;
  Sentence current;
  std::string line;
  int line_no = 0;
  auto flush = [&] {
    if (!current.tokens.empty()) {
      corpus.push_back(std::move(current));
      current = Sentence{};
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim(view).empty()) {
      flush();
      continue;
    }
    auto cols = split(view, '\t');
    if (cols.size() != 3) {
      throw DataError(source_name, line_no, "expected surface<TAB>lemma<TAB>pos");
    }
    Token token;
    token.surface = std::string(trim(cols[0]));
    token.lemma = std::string(trim(cols[1]));
    token.pos = std::string(trim(cols[2]));
    if (token.lemma.empty()) {
      throw DataError(source_name, line_no, "empty lemma");
    }
    current.tokens.push_back(std::move(token));
  }
  flush();
  return corpus;
}

std::vector<Sentence> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file '" + path + "'");
  return read_corpus(in, path);
}

namespace {

CorpusTally tally_range(const Sentence* begin, const Sentence* end,
                        const std::set<std::string>& lemmas, const CorpusConfig& cfg,
                        bool reattach) {
  CorpusTally tally;
  for (const Sentence* s = begin; s != end; ++s) {
    const Sentence* sentence = s;
    ReattachOutcome outcome;
    if (reattach) {
      outcome = reattach_particles(*s, cfg);
      sentence = &outcome.sentence;
      tally.reattached += static_cast<std::uint64_t>(outcome.reattached);
      tally.skipped_particles += static_cast<std::uint64_t>(outcome.skipped_particles);
    }
    tally.sentences += 1;
    for (const Token& token : sentence->tokens) {
      tally.tokens += 1;
      std::string lemma = cfg.lowercase_lemmas ? ascii_lower(token.lemma) : token.lemma;
      tally.token_types.insert(lemma);
      if (!is_verb_pos(cfg, token.pos)) continue;
      tally.verb_tokens += 1;
      tally.verb_types.insert(lemma);
      if (lemmas.count(lemma)) tally.lemma_counts[lemma] += 1;
    }
  }
  return tally;
}

}  // namespace

CorpusTally tally_corpus(const std::vector<Sentence>& corpus, const std::set<std::string>& lemmas,
                         const CorpusConfig& cfg, bool reattach, int jobs) {
  std::set<std::string> query = lemmas;
  if (cfg.lowercase_lemmas) {
    query.clear();
    for (const auto& l : lemmas) query.insert(ascii_lower(l));
  }
  if (jobs < 1) jobs = 1;
  const Sentence* data = corpus.data();
  std::size_t n = corpus.size();
  if (jobs == 1 || n < 2) {
    return tally_range(data, data + n, query, cfg, reattach);
  }
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::vector<std::future<CorpusTally>> futures;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = n * w / workers;
    std::size_t end = n * (w + 1) / workers;
    futures.push_back(std::async(std::launch::async, [&, begin, end] {
      return tally_range(data + begin, data + end, query, cfg, reattach);
    }));
  }
  CorpusTally total;
  for (auto& f : futures) merge_tally(total, f.get());
  return total;
}

void merge_tally(CorpusTally& into, const CorpusTally& other) {
  for (const auto& [lemma, count] : other.lemma_counts) into.lemma_counts[lemma] += count;
  into.sentences += other.sentences;
  into.tokens += other.tokens;
  into.verb_tokens += other.verb_tokens;
  into.verb_types.insert(other.verb_types.begin(), other.verb_types.end());
  into.token_types.insert(other.token_types.begin(), other.token_types.end());
  into.reattached += other.reattached;
  into.skipped_particles += other.skipped_particles;
}

LemmaCounts count_lemmas(const std::vector<Sentence>& corpus, const std::set<std::string>& lemmas,
                         const CorpusConfig& cfg, bool reattach) {
  return tally_corpus(corpus, lemmas, cfg, reattach).lemma_counts;
}

ClassDistribution class_distribution(const LemmaCounts& counts,
                                     const std::vector<ClassAssignment>& assignments,
                                     std::uint64_t total) {
  if (total == 0) throw DataError("class distribution over zero tokens");
  std::map<SemanticClassName, std::uint64_t> class_counts;
  for (SemanticClassName n : all_class_names()) class_counts[n] = 0;
  for (const auto& a : assignments) {
    if (a.status != ClassAssignment::Status::CLASSIFIED) continue;
    auto it = counts.find(a.lemma);
    if (it == counts.end()) continue;
    class_counts[*a.class_name] += it->second;
  }
  ClassDistribution dist;
  dist.total = total;
  for (SemanticClassName n : all_class_names()) {
    double pct = 100.0 * static_cast<double>(class_counts[n]) / static_cast<double>(total);
    dist.percent[n] = pct;
    dist.all_percent += pct;
  }
  return dist;
}

FilterResult frequency_filter(const std::vector<VerbEntry>& entries, std::uint64_t threshold) {
  FilterResult result;
  for (const auto& e : entries) {
    if (!e.corpus_frequency) {
      throw DataError("entry '" + e.lemma + "' has no corpus frequency");
    }
    if (*e.corpus_frequency > threshold) result.kept.push_back(e);
  }
  result.retained_fraction =
      entries.empty() ? 0.0
                      : static_cast<double>(result.kept.size()) / static_cast<double>(entries.size());
  return result;
}

PolysemyStats polysemy_stats(const std::vector<Sense>& inventory,
                             const std::set<std::string>& verbs) {
  if (inventory.empty()) throw DataError("empty sense inventory");
  std::map<std::string, int> senses_per_lemma;
  for (const auto& s : inventory) senses_per_lemma[s.lemma] += 1;

  PolysemyStats stats;
  std::uint64_t sum_all = 0;
  std::uint64_t sum_matched = 0;
  for (const auto& [lemma, n] : senses_per_lemma) {
    sum_all += static_cast<std::uint64_t>(n);
    if (verbs.count(lemma)) {
      sum_matched += static_cast<std::uint64_t>(n);
      stats.matched_lemmas += 1;
    }
  }
  stats.avg_senses_all =
      static_cast<double>(sum_all) / static_cast<double>(senses_per_lemma.size());
  if (stats.matched_lemmas > 0) {
    stats.avg_senses_matched =
        static_cast<double>(sum_matched) / static_cast<double>(stats.matched_lemmas);
  }
  return stats;
}

}  // namespace modverb
