#pragma once

// Seeded generators and independent oracles shared by the unit, property and
// acceptance suites. Everything here is test-only and must stay independent
// of the implementation paths it checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "modverb/classes.hpp"
#include "modverb/lexicon.hpp"
#include "modverb/linker.hpp"
#include "modverb/rte.hpp"
#include "modverb/signature.hpp"

namespace testgen {

inline std::size_t pick(std::mt19937_64& gen, std::size_t n) {
  return static_cast<std::size_t>(gen() % n);
}

inline modverb::Signature random_full_signature(std::mt19937_64& gen) {
  std::array<modverb::Ternary, modverb::kNumSlots> slots;
  for (auto& s : slots) {
    s = (gen() % 2) ? modverb::Ternary::POSSIBLE : modverb::Ternary::IMPOSSIBLE;
  }
  return modverb::Signature(slots);
}

inline modverb::Signature random_pattern(std::mt19937_64& gen) {
  std::array<modverb::Ternary, modverb::kNumSlots> slots;
  for (auto& s : slots) {
    switch (gen() % 3) {
      case 0: s = modverb::Ternary::IMPOSSIBLE; break;
      case 1: s = modverb::Ternary::POSSIBLE; break;
      default: s = modverb::Ternary::UNSPECIFIED; break;
    }
  }
  return modverb::Signature(slots);
}

// Signature with the given index in [0, 64); bit i sets slot i.
inline modverb::Signature signature_from_bits(unsigned bits) {
  std::array<modverb::Ternary, modverb::kNumSlots> slots;
  for (int i = 0; i < modverb::kNumSlots; ++i) {
    slots[static_cast<std::size_t>(i)] =
        (bits >> i) & 1u ? modverb::Ternary::POSSIBLE : modverb::Ternary::IMPOSSIBLE;
  }
  return modverb::Signature(slots);
}

inline modverb::SyntacticArgument random_argument(std::mt19937_64& gen, bool english,
                                                  bool subject_slot) {
  using modverb::ArgumentCategory;
  using modverb::Case;
  using modverb::GrammaticalFunction;

  modverb::SyntacticArgument arg;
  if (subject_slot) {
    arg.function = GrammaticalFunction::SUBJECT;
    arg.category = ArgumentCategory::NP;
    if (!english) arg.grammatical_case = Case::NOM;
    return arg;
  }

  static const std::vector<ArgumentCategory> kGerman = {
      ArgumentCategory::NP,           ArgumentCategory::PP,
      ArgumentCategory::DASS_CLAUSE,  ArgumentCategory::OB_CLAUSE,
      ArgumentCategory::WH_CLAUSE,    ArgumentCategory::TO_INF_PRESENT,
      ArgumentCategory::TO_INF_PAST,
  };
  static const std::vector<ArgumentCategory> kEnglish = {
      ArgumentCategory::NP,           ArgumentCategory::PP,
      ArgumentCategory::THAT_CLAUSE,  ArgumentCategory::WHETHER_IF_CLAUSE,
      ArgumentCategory::WH_CLAUSE,    ArgumentCategory::TO_INF_PRESENT,
      ArgumentCategory::TO_INF_PAST,  ArgumentCategory::ING_FORM,
  };
  const auto& pool = english ? kEnglish : kGerman;
  arg.category = pool[pick(gen, pool.size())];

  if (modverb::is_nominal(arg.category)) {
    arg.function = arg.category == ArgumentCategory::PP ? GrammaticalFunction::PREP_OBJECT
                                                        : GrammaticalFunction::DIRECT_OBJECT;
    if (!english) {
      static const std::vector<Case> kCases = {Case::NOM, Case::ACC, Case::DAT};
      arg.grammatical_case = kCases[pick(gen, kCases.size())];
    }
    if (arg.category == ArgumentCategory::PP) {
      static const std::vector<std::string> kDePreps = {"auf", "mit"};
      static const std::vector<std::string> kEnPreps = {"on", "with"};
      const auto& preps = english ? kEnPreps : kDePreps;
      arg.preposition = preps[pick(gen, preps.size())];
    }
  } else if (modverb::is_clausal(arg.category)) {
    arg.function = GrammaticalFunction::CLAUSAL_OBJECT;
    switch (arg.category) {
      case ArgumentCategory::DASS_CLAUSE: arg.complementizer = "dass"; break;
      case ArgumentCategory::THAT_CLAUSE: arg.complementizer = "that"; break;
      case ArgumentCategory::OB_CLAUSE: arg.complementizer = "ob"; break;
      case ArgumentCategory::WHETHER_IF_CLAUSE:
        arg.complementizer = (gen() % 2) ? "whether" : "if";
        break;
      default: break;  // wh-clauses carry no fixed complementizer
    }
  } else {
    arg.function = GrammaticalFunction::INF_OBJECT;
  }
  return arg;
}

inline modverb::SubcatFrame random_frame(std::mt19937_64& gen, bool english) {
  modverb::SubcatFrame frame;
  std::size_t args = 1 + pick(gen, 3);
  for (std::size_t i = 0; i < args; ++i) {
    frame.arguments.push_back(random_argument(gen, english, i == 0 && gen() % 4 != 0));
  }
  return frame;
}

struct MiniLexicon {
  std::vector<modverb::VerbEntry> verbs;
  std::vector<modverb::Sense> senses;
  modverb::TranslationTable translations;  // populated for cross-lingual runs
};

// Up to 10 verbs with up to 5 frames each, plus a sense inventory whose
// lemmas partially overlap the verbs (directly or through translations).
inline MiniLexicon random_mini_lexicon(std::mt19937_64& gen, bool crosslingual) {
  MiniLexicon lex;
  std::size_t n_verbs = 1 + pick(gen, 10);
  for (std::size_t v = 0; v < n_verbs; ++v) {
    modverb::VerbEntry entry;
    entry.lemma = "v" + std::to_string(v);
    entry.language = modverb::Language::DE;
    entry.signature = *modverb::Signature::parse("111111");
    std::size_t n_frames = pick(gen, 6);
    for (std::size_t f = 0; f < n_frames; ++f) {
      entry.frames.push_back(random_frame(gen, false));
    }
    lex.verbs.push_back(std::move(entry));
  }

  std::vector<std::string> target_lemmas;
  if (crosslingual) {
    for (std::size_t e = 0; e < 6; ++e) target_lemmas.push_back("e" + std::to_string(e));
    for (std::size_t v = 0; v < n_verbs; ++v) {
      std::size_t n_translations = pick(gen, 3);  // 0 => skip path
      for (std::size_t t = 0; t < n_translations; ++t) {
        lex.translations.add("v" + std::to_string(v),
                             target_lemmas[pick(gen, target_lemmas.size())]);
      }
    }
  } else {
    for (std::size_t v = 0; v < n_verbs; ++v) target_lemmas.push_back("v" + std::to_string(v));
    target_lemmas.push_back("w0");  // lemma outside the lexicon
  }

  std::size_t n_senses = pick(gen, 13);
  for (std::size_t s = 0; s < n_senses; ++s) {
    modverb::Sense sense;
    sense.sense_id = "s" + std::to_string(s);
    sense.lemma = target_lemmas[pick(gen, target_lemmas.size())];
    sense.lexicon = crosslingual ? modverb::LexiconName::VERBNET : modverb::LexiconName::GERMANET;
    sense.class_label = "label" + std::to_string(pick(gen, 4));
    std::size_t n_frames = pick(gen, 4);
    for (std::size_t f = 0; f < n_frames; ++f) {
      sense.frames.push_back(random_frame(gen, crosslingual));
    }
    lex.senses.push_back(std::move(sense));
  }
  return lex;
}

// Brute-force enumeration over all (source frame, sense, target frame)
// triples, filtered by frames_compatible, deduplicated per (frame, sense)
// with the lowest-index target frame kept.
inline modverb::LinkResult brute_force_links(const std::vector<modverb::VerbEntry>& verbs,
                                             const std::vector<modverb::Sense>& senses,
                                             const modverb::FeaturePolicy& policy,
                                             const modverb::TranslationTable* translations) {
  modverb::LinkResult result;
  for (const auto& verb : verbs) {
    const std::set<std::string>* translated = nullptr;
    if (policy.name == modverb::LinkPolicyName::CROSSLINGUAL_VERBNET) {
      translated = translations->lookup(verb.lemma);
      if (translated == nullptr) {
        result.skipped.push_back(verb.lemma);
        continue;
      }
    }
    std::map<std::tuple<std::string, int, std::string>, modverb::SenseLink> best;
    for (std::size_t fi = 0; fi < verb.frames.size(); ++fi) {
      for (const auto& sense : senses) {
        bool lemma_ok = policy.name == modverb::LinkPolicyName::GERMAN_GERMANET
                            ? sense.lemma == verb.lemma
                            : translated->count(sense.lemma) > 0;
        if (!lemma_ok) continue;
        for (std::size_t tj = 0; tj < sense.frames.size(); ++tj) {
          if (!modverb::frames_compatible(verb.frames[fi], sense.frames[tj], policy)) continue;
          std::tuple<std::string, int, std::string> key{verb.lemma, static_cast<int>(fi),
                                                        sense.sense_id};
          auto it = best.find(key);
          if (it != best.end() && it->second.target_frame_index <= static_cast<int>(tj)) continue;
          modverb::SenseLink link;
          link.source_lemma = verb.lemma;
          link.source_frame_index = static_cast<int>(fi);
          link.target_sense_id = sense.sense_id;
          link.target_frame_index = static_cast<int>(tj);
          link.policy = policy.name;
          for (std::size_t k = 0; k < verb.frames[fi].arguments.size(); ++k) {
            link.evidence.emplace_back(static_cast<int>(k), static_cast<int>(k));
          }
          best[key] = std::move(link);
        }
      }
    }
    for (auto& [key, link] : best) result.links.push_back(std::move(link));
  }
  std::sort(result.links.begin(), result.links.end(),
            [](const modverb::SenseLink& a, const modverb::SenseLink& b) {
              return std::tie(a.source_lemma, a.source_frame_index, a.target_sense_id) <
                     std::tie(b.source_lemma, b.source_frame_index, b.target_sense_id);
            });
  std::sort(result.skipped.begin(), result.skipped.end());
  return result;
}

// 2-way entailment pairs where the mismatch of uncertainty-marking verbs
// between text and hypothesis determines the label with the given fidelity.
// Word overlap stays independent of the label.
inline std::vector<modverb::RtePair> synthetic_rte_pairs(std::uint64_t seed, int n,
                                                         double fidelity = 0.9) {
  static const std::vector<std::string> kFillers = {
      "stadt", "fluss", "berg", "wald",  "kind",  "tag",  "jahr",  "land",   "frau", "mann",
      "buch",  "spiel", "licht", "wort", "weg",   "zeit", "nacht", "haus",   "garten", "baum"};
  static const std::vector<std::string> kUncertain = {"fürchten", "fordern",   "wagen",
                                                      "zögern",   "anbieten", "empfehlen"};
  static const std::vector<std::string> kFactual = {"einsehen", "danken", "bedauern", "hören"};

  std::mt19937_64 gen(seed);
  std::vector<modverb::RtePair> pairs;
  for (int i = 0; i < n; ++i) {
    std::vector<std::size_t> order(kFillers.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    for (std::size_t j = order.size(); j-- > 1;) {
      std::swap(order[j], order[pick(gen, j + 1)]);
    }
    std::vector<std::string> t_lemmas, h_lemmas;
    for (std::size_t j = 0; j < 6; ++j) t_lemmas.push_back(kFillers[order[j]]);
    std::size_t shared = 1 + pick(gen, 4);
    for (std::size_t j = 0; j < shared; ++j) h_lemmas.push_back(kFillers[order[j]]);
    for (std::size_t j = 6; h_lemmas.size() < 5; ++j) h_lemmas.push_back(kFillers[order[j]]);

    bool mismatch = gen() % 2 == 0;
    if (mismatch) {
      auto& side = (gen() % 2 == 0) ? t_lemmas : h_lemmas;
      side.push_back(kUncertain[pick(gen, kUncertain.size())]);
    } else if (gen() % 2 == 0) {
      // Distinct markers on the two sides keep word overlap unaffected.
      std::size_t a = pick(gen, kUncertain.size());
      std::size_t b = (a + 1 + pick(gen, kUncertain.size() - 1)) % kUncertain.size();
      t_lemmas.push_back(kUncertain[a]);
      h_lemmas.push_back(kUncertain[b]);
    } else if (gen() % 2 == 0) {
      t_lemmas.push_back(kFactual[pick(gen, kFactual.size())]);
    }

    bool flip = (static_cast<double>(gen() % 1000) / 1000.0) >= fidelity;
    bool entailed = mismatch ? flip : !flip;

    modverb::RtePair pair;
    char id[16];
    std::snprintf(id, sizeof(id), "syn%04d", i);
    pair.id = id;
    pair.label = entailed ? "ENTAILMENT" : "NO_ENTAILMENT";
    for (std::size_t j = 0; j < t_lemmas.size(); ++j) {
      if (j) pair.text += ' ';
      pair.text += t_lemmas[j];
    }
    for (std::size_t j = 0; j < h_lemmas.size(); ++j) {
      if (j) pair.hypothesis += ' ';
      pair.hypothesis += h_lemmas[j];
    }
    pair.text_lemmas = std::move(t_lemmas);
    pair.hyp_lemmas = std::move(h_lemmas);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace testgen
