#include "modverb/linker.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>

#include "modverb/util.hpp"

namespace modverb {

std::string to_string(LinkPolicyName n) {
  switch (n) {
    case LinkPolicyName::GERMAN_GERMANET: return "germanet";
    case LinkPolicyName::CROSSLINGUAL_VERBNET: return "verbnet";
  }
  return "?";
}

const FeaturePolicy& german_germanet_policy() {
  static const FeaturePolicy policy = {
      LinkPolicyName::GERMAN_GERMANET,
      {ComparedFeature::COMPLEMENTIZER, ComparedFeature::CASE, ComparedFeature::CATEGORY},
  };
  return policy;
}

const FeaturePolicy& crosslingual_verbnet_policy() {
  static const FeaturePolicy policy = {
      LinkPolicyName::CROSSLINGUAL_VERBNET,
      {ComparedFeature::COMPLEMENTIZER, ComparedFeature::CATEGORY, ComparedFeature::VERB_FORM},
  };
  return policy;
}

ArgumentCategory canonical_category(ArgumentCategory c) {
  switch (c) {
    case ArgumentCategory::DASS_CLAUSE: return ArgumentCategory::THAT_CLAUSE;
    case ArgumentCategory::OB_CLAUSE: return ArgumentCategory::WHETHER_IF_CLAUSE;
    default: return c;
  }
}

namespace {

// dass<->that and ob<->whether/if count as the same complementizer across
// the two languages.
std::string canonical_complementizer(const std::string& c) {
  if (c == "dass" || c == "daß") return "that";
  if (c == "ob" || c == "if") return "whether";
  return c;
}

enum class VerbForm { NONE, INF_PRESENT, INF_PAST, ING };

VerbForm verb_form(ArgumentCategory c) {
  switch (c) {
    case ArgumentCategory::TO_INF_PRESENT: return VerbForm::INF_PRESENT;
    case ArgumentCategory::TO_INF_PAST: return VerbForm::INF_PAST;
    case ArgumentCategory::ING_FORM: return VerbForm::ING;
    default: return VerbForm::NONE;
  }
}

bool arguments_agree(const SyntacticArgument& a, const SyntacticArgument& b,
                     const FeaturePolicy& policy) {
  bool crosslingual = policy.name == LinkPolicyName::CROSSLINGUAL_VERBNET;
  for (ComparedFeature f : policy.compared_features) {
    switch (f) {
      case ComparedFeature::CATEGORY: {
        ArgumentCategory ca = crosslingual ? canonical_category(a.category) : a.category;
        ArgumentCategory cb = crosslingual ? canonical_category(b.category) : b.category;
        if (ca != cb) return false;
        break;
      }
      case ComparedFeature::COMPLEMENTIZER: {
        std::optional<std::string> xa = a.complementizer;
        std::optional<std::string> xb = b.complementizer;
        if (crosslingual) {
          if (xa) xa = canonical_complementizer(*xa);
          if (xb) xb = canonical_complementizer(*xb);
        }
        if (xa != xb) return false;
        break;
      }
      case ComparedFeature::CASE:
        if (a.grammatical_case != b.grammatical_case) return false;
        break;
      case ComparedFeature::VERB_FORM:
        if (verb_form(a.category) != verb_form(b.category)) return false;
        break;
    }
  }
  return true;
}

}  // namespace

bool frames_compatible(const SubcatFrame& src, const SubcatFrame& tgt,
                       const FeaturePolicy& policy) {
  if (src.arguments.size() != tgt.arguments.size()) return false;
  for (std::size_t i = 0; i < src.arguments.size(); ++i) {
    if (!arguments_agree(src.arguments[i], tgt.arguments[i], policy)) return false;
  }
  return true;
}

namespace {

void sort_links(std::vector<SenseLink>& links) {
  std::sort(links.begin(), links.end(), [](const SenseLink& a, const SenseLink& b) {
    if (a.source_lemma != b.source_lemma) return a.source_lemma < b.source_lemma;
    if (a.source_frame_index != b.source_frame_index)
      return a.source_frame_index < b.source_frame_index;
    return a.target_sense_id < b.target_sense_id;
  });
}

}  // namespace

LinkResult link_verb(const VerbEntry& src, const std::vector<Sense>& targets,
                     const FeaturePolicy& policy, const TranslationTable* translations) {
  LinkResult result;

  const std::set<std::string>* translated = nullptr;
  if (policy.name == LinkPolicyName::CROSSLINGUAL_VERBNET) {
    if (translations == nullptr) {
      throw DataError("cross-lingual linking requires a translation table");
    }
    translated = translations->lookup(src.lemma);
    if (translated == nullptr) {
      result.skipped.push_back(src.lemma);
      return result;
    }
  }

  auto lemma_matches = [&](const Sense& sense) {
    if (policy.name == LinkPolicyName::GERMAN_GERMANET) return sense.lemma == src.lemma;
    return translated->count(sense.lemma) > 0;
  };

  for (std::size_t fi = 0; fi < src.frames.size(); ++fi) {
    const SubcatFrame& frame = src.frames[fi];
    for (const Sense& sense : targets) {
      if (!lemma_matches(sense)) continue;
      // One link per (source frame, target sense); the lowest-index
      // compatible target frame provides the evidence.
      for (std::size_t tj = 0; tj < sense.frames.size(); ++tj) {
        if (!frames_compatible(frame, sense.frames[tj], policy)) continue;
        SenseLink link;
        link.source_lemma = src.lemma;
        link.source_frame_index = static_cast<int>(fi);
        link.target_sense_id = sense.sense_id;
        link.target_frame_index = static_cast<int>(tj);
        link.policy = policy.name;
        for (std::size_t k = 0; k < frame.arguments.size(); ++k) {
          link.evidence.emplace_back(static_cast<int>(k), static_cast<int>(k));
        }
        result.links.push_back(std::move(link));
        break;
      }
    }
  }
  sort_links(result.links);
  return result;
}

LinkResult link_lexicon(const std::vector<VerbEntry>& entries, const std::vector<Sense>& targets,
                        const FeaturePolicy& policy, const TranslationTable* translations,
                        int jobs) {
  LinkResult result;
  if (jobs < 1) jobs = 1;
  if (jobs == 1 || entries.size() < 2) {
    for (const auto& entry : entries) {
      LinkResult one = link_verb(entry, targets, policy, translations);
      result.links.insert(result.links.end(), one.links.begin(), one.links.end());
      result.skipped.insert(result.skipped.end(), one.skipped.begin(), one.skipped.end());
    }
  } else {
    std::size_t n = entries.size();
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    std::vector<std::future<LinkResult>> futures;
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t begin = n * w / workers;
      std::size_t end = n * (w + 1) / workers;
      futures.push_back(std::async(std::launch::async, [&, begin, end] {
        LinkResult part;
        for (std::size_t i = begin; i < end; ++i) {
          LinkResult one = link_verb(entries[i], targets, policy, translations);
          part.links.insert(part.links.end(), one.links.begin(), one.links.end());
          part.skipped.insert(part.skipped.end(), one.skipped.begin(), one.skipped.end());
        }
        return part;
      }));
    }
    for (auto& f : futures) {
      LinkResult part = f.get();
      result.links.insert(result.links.end(), part.links.begin(), part.links.end());
      result.skipped.insert(result.skipped.end(), part.skipped.begin(), part.skipped.end());
    }
  }
  sort_links(result.links);
  std::sort(result.skipped.begin(), result.skipped.end());
  return result;
}

double evaluate_links(const std::vector<SenseLink>& links, const std::vector<GoldJudgment>& gold) {
  if (gold.empty()) throw DataError("no gold judgments given");
  std::set<std::tuple<std::string, int, std::string>> emitted;
  for (const auto& link : links) {
    emitted.insert({link.source_lemma, link.source_frame_index, link.target_sense_id});
  }
  std::vector<std::string> missing;
  int correct = 0;
  for (const auto& g : gold) {
    if (!emitted.count({g.source_lemma, g.source_frame_index, g.target_sense_id})) {
      missing.push_back(g.source_lemma + "/" + std::to_string(g.source_frame_index) + "/" +
                        g.target_sense_id);
      continue;
    }
    if (g.correct) ++correct;
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << missing.size() << " gold key(s) not among emitted links:";
    for (const auto& m : missing) msg << " " << m;
    throw DataError(msg.str());
  }
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

std::vector<GoldJudgment> load_gold_judgments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open gold file '" + path + "'");
  std::vector<GoldJudgment> gold;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    std::string_view stripped = trim(view);
    if (stripped.empty() || stripped.front() == '#') continue;
    auto cols = split(view, '\t');
    if (cols.size() != 4) {
      throw DataError(path, line_no, "expected 4 tab-separated columns");
    }
    GoldJudgment g;
    g.source_lemma = std::string(trim(cols[0]));
    auto idx = parse_u64(trim(cols[1]));
    if (g.source_lemma.empty() || !idx) {
      throw DataError(path, line_no, "bad lemma or frame index");
    }
    g.source_frame_index = static_cast<int>(*idx);
    g.target_sense_id = std::string(trim(cols[2]));
    std::string_view flag = trim(cols[3]);
    if (g.target_sense_id.empty() || (flag != "0" && flag != "1")) {
      throw DataError(path, line_no, "bad sense id or correctness flag");
    }
    g.correct = flag == "1";
    gold.push_back(std::move(g));
  }
  return gold;
}

ClassAlignment class_alignment(const std::vector<ClassAssignment>& assignments,
                               const std::vector<SenseLink>& links,
                               const std::vector<Sense>& senses) {
  ClassAlignment out;
  std::map<std::string, const ClassAssignment*> by_lemma;
  for (const auto& a : assignments) by_lemma[a.lemma] = &a;
  std::map<std::string, const Sense*> by_id;
  for (const auto& s : senses) by_id[s.sense_id] = &s;

  for (SemanticClassName n : all_class_names()) {
    out.class_sizes[n] = 0;
    out.linked_verbs[n] = 0;
  }
  for (const auto& a : assignments) {
    if (a.status == ClassAssignment::Status::CLASSIFIED) {
      out.class_sizes[*a.class_name] += 1;
      out.classified_total += 1;
    }
  }

  std::map<SemanticClassName, std::map<std::string, std::set<std::string>>> verbs_by_cell;
  std::map<SemanticClassName, std::set<std::string>> verbs_by_class;
  std::set<std::string> linked_lemmas;
  for (const auto& link : links) {
    auto ait = by_lemma.find(link.source_lemma);
    if (ait == by_lemma.end()) {
      throw DataError("link source lemma '" + link.source_lemma + "' has no class assignment");
    }
    auto sit = by_id.find(link.target_sense_id);
    if (sit == by_id.end()) {
      throw DataError("link target sense '" + link.target_sense_id + "' not in sense inventory");
    }
    const ClassAssignment& a = *ait->second;
    if (a.status != ClassAssignment::Status::CLASSIFIED) continue;
    verbs_by_cell[*a.class_name][sit->second->class_label].insert(link.source_lemma);
    verbs_by_class[*a.class_name].insert(link.source_lemma);
    linked_lemmas.insert(link.source_lemma);
  }

  for (const auto& [cls, labels] : verbs_by_cell) {
    for (const auto& [label, lemmas] : labels) {
      out.table[cls][label] = static_cast<int>(lemmas.size());
    }
  }
  for (const auto& [cls, lemmas] : verbs_by_class) {
    out.linked_verbs[cls] = static_cast<int>(lemmas.size());
  }
  for (SemanticClassName n : all_class_names()) {
    int size = out.class_sizes[n];
    out.coverage_percent[n] =
        size == 0 ? 0.0 : 100.0 * static_cast<double>(out.linked_verbs[n]) / size;
  }
  out.linked_total = static_cast<int>(linked_lemmas.size());
  out.coverage_total_percent =
      out.classified_total == 0
          ? 0.0
          : 100.0 * static_cast<double>(out.linked_total) / out.classified_total;
  return out;
}

}  // namespace modverb
