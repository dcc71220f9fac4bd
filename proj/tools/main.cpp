#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modverb/classes.hpp"
#include "modverb/corpus.hpp"
#include "modverb/error.hpp"
#include "modverb/lexicon.hpp"
#include "modverb/linker.hpp"
#include "modverb/rte.hpp"
#include "modverb/util.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "modverb 1.0.0 (formats v1)";

// Command-line level mistakes that CLI11 itself cannot catch (cross-option
// constraints). Exit code 1, as opposed to 2 for bad data.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& message) : std::runtime_error(message) {}
};

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw modverb::DataError("cannot write output file '" + out_path + "'");
  out << content;
  if (content.empty() || content.back() != '\n') out << '\n';
}

modverb::Language parse_language(const std::string& s) {
  auto l = modverb::language_from_string(s);
  if (!l) throw UsageError("unknown language '" + s + "'");
  return *l;
}

json components_to_json(const std::set<modverb::MeaningComponent>& components) {
  json out = json::array();
  for (auto c : components) out.push_back(modverb::to_string(c));
  return out;
}

json assignments_to_json(const std::vector<modverb::VerbEntry>& entries,
                         const modverb::LexiconClassification& cls) {
  json out = json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& a = cls.assignments[i];
    json ja;
    ja["lemma"] = a.lemma;
    switch (a.status) {
      case modverb::ClassAssignment::Status::CLASSIFIED:
        ja["class"] = modverb::to_string(*a.class_name);
        ja["pattern"] = a.matched_pattern->str();
        ja["components"] = components_to_json(modverb::semantic_class(*a.class_name).components);
        break;
      case modverb::ClassAssignment::Status::IDIOSYNCRATIC:
        ja["class"] = "IDIOSYNCRATIC";
        ja["pattern"] = nullptr;
        ja["components"] = components_to_json(modverb::meaning_components(entries[i].signature));
        break;
      case modverb::ClassAssignment::Status::UNCLASSIFIED:
        ja["class"] = "UNCLASSIFIED";
        ja["pattern"] = nullptr;
        ja["components"] = json::array();
        break;
    }
    out.push_back(std::move(ja));
  }
  return out;
}

json histogram_to_json(const modverb::ClassHistogram& h) {
  json out;
  for (auto n : modverb::all_class_names()) {
    out[modverb::to_string(n)] = h.per_class.at(n);
  }
  out["IDIOSYNCRATIC"] = h.idiosyncratic;
  out["UNCLASSIFIED"] = h.unclassified;
  out["total"] = h.total;
  return out;
}

struct ClassifyOptions {
  std::string lexicon;
  std::string language = "de";
  std::string out;
};

void run_classify(const ClassifyOptions& opt) {
  auto entries = modverb::load_lexicon(opt.lexicon, parse_language(opt.language));
  auto cls = modverb::classify_lexicon(entries);
  json out;
  out["assignments"] = assignments_to_json(entries, cls);
  out["histogram"] = histogram_to_json(cls.histogram);
  write_output(opt.out, out.dump(2));
}

struct ComponentsOptions {
  std::string signature;
  std::string lexicon;
  std::string language = "de";
  std::string out;
};

void run_components(const ComponentsOptions& opt) {
  if (opt.signature.empty() == opt.lexicon.empty()) {
    throw UsageError("give exactly one of --signature or --lexicon");
  }
  json out = json::array();
  if (!opt.signature.empty()) {
    auto sig = modverb::Signature::parse(opt.signature);
    if (!sig) throw modverb::DataError("malformed signature '" + opt.signature + "'");
    json record;
    record["signature"] = sig->str();
    record["components"] = components_to_json(modverb::meaning_components(*sig));
    out.push_back(std::move(record));
  } else {
    auto entries = modverb::load_lexicon(opt.lexicon, parse_language(opt.language));
    for (const auto& e : entries) {
      json record;
      record["lemma"] = e.lemma;
      record["signature"] = e.signature.str();
      record["components"] = e.signature.fully_unspecified()
                                 ? json::array()
                                 : components_to_json(modverb::meaning_components(e.signature));
      out.push_back(std::move(record));
    }
  }
  write_output(opt.out, out.dump(2));
}

struct LinkOptions {
  std::string lexicon;
  std::string language = "de";
  std::string targets;
  std::string policy;
  std::string translations;
  std::string out;
  int jobs = 1;
};

void run_link(const LinkOptions& opt) {
  const modverb::FeaturePolicy* policy = nullptr;
  if (opt.policy == "germanet") {
    policy = &modverb::german_germanet_policy();
  } else if (opt.policy == "verbnet") {
    policy = &modverb::crosslingual_verbnet_policy();
  } else {
    throw UsageError("unknown policy '" + opt.policy + "' (germanet|verbnet)");
  }
  if (policy->name == modverb::LinkPolicyName::CROSSLINGUAL_VERBNET && opt.translations.empty()) {
    throw UsageError("--policy verbnet requires --translations");
  }

  auto entries = modverb::load_lexicon(opt.lexicon, parse_language(opt.language));
  auto inventory = modverb::load_sense_inventory(opt.targets);
  modverb::TranslationTable table;
  if (!opt.translations.empty()) table = modverb::load_translations(opt.translations);

  auto result = modverb::link_lexicon(entries, inventory.senses, *policy,
                                      opt.translations.empty() ? nullptr : &table, opt.jobs);
  if (!result.skipped.empty()) {
    std::cerr << "skipped " << result.skipped.size() << " verb(s) without a translation:";
    for (const auto& lemma : result.skipped) std::cerr << " " << lemma;
    std::cerr << "\n";
  }

  json out = json::array();
  for (const auto& link : result.links) {
    json jl;
    jl["source_lemma"] = link.source_lemma;
    jl["frame_index"] = link.source_frame_index;
    jl["target_sense_id"] = link.target_sense_id;
    jl["policy"] = modverb::to_string(link.policy);
    out.push_back(std::move(jl));
  }
  write_output(opt.out, out.dump(2));
}

std::vector<modverb::SenseLink> load_links_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw modverb::DataError("cannot open links file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw modverb::DataError(path + ": invalid JSON: " + e.what());
  }
  if (!j.is_array()) throw modverb::DataError(path + ": links JSON is not an array");
  std::vector<modverb::SenseLink> links;
  for (const auto& jl : j) {
    modverb::SenseLink link;
    if (!jl.is_object() || !jl.contains("source_lemma") || !jl.contains("frame_index") ||
        !jl.contains("target_sense_id")) {
      throw modverb::DataError(path + ": link record is missing a required field");
    }
    link.source_lemma = jl["source_lemma"].get<std::string>();
    link.source_frame_index = jl["frame_index"].get<int>();
    link.target_sense_id = jl["target_sense_id"].get<std::string>();
    if (jl.contains("policy") && jl["policy"].is_string() &&
        jl["policy"].get<std::string>() == "verbnet") {
      link.policy = modverb::LinkPolicyName::CROSSLINGUAL_VERBNET;
    }
    links.push_back(std::move(link));
  }
  return links;
}

struct LinkEvalOptions {
  std::string links;
  std::string gold;
  std::string out;
};

void run_link_eval(const LinkEvalOptions& opt) {
  auto links = load_links_json(opt.links);
  auto gold = modverb::load_gold_judgments(opt.gold);
  double accuracy = modverb::evaluate_links(links, gold);
  json out;
  out["accuracy"] = modverb::round4(accuracy);
  out["gold_judgments"] = gold.size();
  out["links"] = links.size();
  write_output(opt.out, out.dump(2));
}

struct AlignOptions {
  std::string lexicon;
  std::string language = "de";
  std::string targets;
  std::string links;
  std::string out;
};

void run_align(const AlignOptions& opt) {
  auto entries = modverb::load_lexicon(opt.lexicon, parse_language(opt.language));
  auto cls = modverb::classify_lexicon(entries);
  auto inventory = modverb::load_sense_inventory(opt.targets);
  auto links = load_links_json(opt.links);
  auto alignment = modverb::class_alignment(cls.assignments, links, inventory.senses);

  std::ostringstream out;
  out << "# class\ttarget_label\tverbs\n";
  for (auto n : modverb::all_class_names()) {
    auto it = alignment.table.find(n);
    if (it == alignment.table.end()) continue;
    for (const auto& [label, count] : it->second) {
      out << modverb::to_string(n) << '\t' << label << '\t' << count << '\n';
    }
  }
  out << "# class\tlinked\tmembers\tcoverage_percent\n";
  for (auto n : modverb::all_class_names()) {
    out << modverb::to_string(n) << '\t' << alignment.linked_verbs.at(n) << '\t'
        << alignment.class_sizes.at(n) << '\t' << modverb::fmt4(alignment.coverage_percent.at(n))
        << '\n';
  }
  out << "all\t" << alignment.linked_total << '\t' << alignment.classified_total << '\t'
      << modverb::fmt4(alignment.coverage_total_percent) << '\n';
  write_output(opt.out, out.str());
}

struct StatsOptions {
  std::string corpus;
  std::string lexicon;
  std::string language = "de";
  bool reattach = false;
  std::string verb_pos_prefixes = "V,VV,VA,VM";
  std::string particle_tag = "PTKVZ";
  std::string unit = "tokens";
  std::string senses;
  bool has_min_count = false;
  std::uint64_t min_count = 0;
  std::string out;
  int jobs = 1;
};

json distribution_to_json(const modverb::ClassDistribution& dist) {
  json out;
  for (auto n : modverb::all_class_names()) {
    out[modverb::to_string(n)] = modverb::round4(dist.percent.at(n));
  }
  out["all"] = modverb::round4(dist.all_percent);
  return out;
}

void run_stats(const StatsOptions& opt) {
  modverb::Language language = parse_language(opt.language);
  modverb::CorpusConfig cfg;
  cfg.verb_pos_prefixes.clear();
  for (auto part : modverb::split(opt.verb_pos_prefixes, ',')) {
    auto prefix = modverb::trim(part);
    if (!prefix.empty()) cfg.verb_pos_prefixes.emplace_back(prefix);
  }
  if (cfg.verb_pos_prefixes.empty()) throw UsageError("--verb-pos-prefixes is empty");
  cfg.particle_tag = opt.particle_tag;
  cfg.lowercase_lemmas = language == modverb::Language::EN;

  std::vector<modverb::Sentence> corpus;
  if (opt.corpus == "-") {
    corpus = modverb::read_corpus(std::cin, "<stdin>");
  } else {
    corpus = modverb::load_corpus(opt.corpus);
  }

  auto entries = modverb::load_lexicon(opt.lexicon, language);
  auto cls = modverb::classify_lexicon(entries);
  std::set<std::string> lemmas;
  for (const auto& e : entries) lemmas.insert(e.lemma);

  auto tally = modverb::tally_corpus(corpus, lemmas, cfg, opt.reattach, opt.jobs);

  json out;
  out["corpus"] = {
      {"sentences", tally.sentences},
      {"tokens", tally.tokens},
      {"verb_tokens", tally.verb_tokens},
      {"verb_types", tally.verb_types.size()},
      {"reattached", tally.reattached},
      {"skipped_particles", tally.skipped_particles},
  };
  json counts;
  for (const auto& [lemma, count] : tally.lemma_counts) counts[lemma] = count;
  out["lemma_counts"] = std::move(counts);

  // The tallied lemmas are matched against the lexicon as loaded; English
  // class assignments therefore also key on lowercased lemmas.
  auto assignments = cls.assignments;
  if (cfg.lowercase_lemmas) {
    for (auto& a : assignments) a.lemma = modverb::ascii_lower(a.lemma);
  }

  json dist;
  dist["unit"] = opt.unit;
  if (opt.unit == "tokens") {
    if (tally.verb_tokens > 0) {
      dist["of_verb_tokens"] =
          distribution_to_json(modverb::class_distribution(tally.lemma_counts, assignments,
                                                           tally.verb_tokens));
    }
    if (tally.tokens > 0) {
      dist["of_all_tokens"] = distribution_to_json(
          modverb::class_distribution(tally.lemma_counts, assignments, tally.tokens));
    }
  } else if (opt.unit == "types") {
    modverb::LemmaCounts presence;
    for (const auto& [lemma, count] : tally.lemma_counts) {
      if (count > 0) presence[lemma] = 1;
    }
    if (!tally.verb_types.empty()) {
      dist["of_verb_types"] = distribution_to_json(
          modverb::class_distribution(presence, assignments, tally.verb_types.size()));
    }
    if (!tally.token_types.empty()) {
      dist["of_all_token_types"] = distribution_to_json(
          modverb::class_distribution(presence, assignments, tally.token_types.size()));
    }
  } else {
    throw UsageError("unknown unit '" + opt.unit + "' (tokens|types)");
  }
  out["distribution"] = std::move(dist);

  if (opt.has_min_count) {
    auto counted = entries;
    for (auto& e : counted) {
      std::string key = cfg.lowercase_lemmas ? modverb::ascii_lower(e.lemma) : e.lemma;
      auto it = tally.lemma_counts.find(key);
      e.corpus_frequency = it == tally.lemma_counts.end() ? 0 : it->second;
    }
    auto filtered = modverb::frequency_filter(counted, opt.min_count);
    json kept = json::array();
    for (const auto& e : filtered.kept) kept.push_back(e.lemma);
    out["filter"] = {
        {"threshold", opt.min_count},
        {"kept_lemmas", std::move(kept)},
        {"retained_fraction", modverb::round4(filtered.retained_fraction)},
    };
  }

  if (!opt.senses.empty()) {
    auto inventory = modverb::load_sense_inventory(opt.senses);
    auto stats = modverb::polysemy_stats(inventory.senses, lemmas);
    json jp;
    jp["avg_senses_matched"] =
        stats.avg_senses_matched ? json(modverb::round4(*stats.avg_senses_matched)) : json(nullptr);
    jp["avg_senses_all"] = modverb::round4(stats.avg_senses_all);
    jp["matched_lemmas"] = stats.matched_lemmas;
    out["polysemy"] = std::move(jp);
  }

  write_output(opt.out, out.dump(2));
}

struct RteOptions {
  std::string pairs;
  std::string lexicon;
  std::string language = "de";
  std::string translations;
  std::string features;
  int k = 10;
  std::uint64_t seed = 0;
  std::string labels = "2way";
  std::string lemma_dict;
  std::string out;
};

void run_rte(const RteOptions& opt) {
  if (opt.features != "wo" && opt.features != "wo+fm") {
    throw UsageError("unknown feature set '" + opt.features + "' (wo|wo+fm)");
  }
  auto scheme = modverb::label_scheme_from_string(opt.labels);
  if (!scheme) throw UsageError("unknown label set '" + opt.labels + "' (2way|3way)");

  auto pairs = modverb::load_pairs_jsonl(opt.pairs, *scheme);
  auto entries = modverb::load_lexicon(opt.lexicon, parse_language(opt.language));
  auto cls = modverb::classify_lexicon(entries);

  modverb::FeatureConfig config;
  config.use_fm = opt.features == "wo+fm";
  if (!opt.translations.empty()) {
    auto table = modverb::load_translations(opt.translations);
    config.membership = modverb::multi_class_membership(table, cls.assignments);
  } else {
    config.membership = modverb::membership_from_assignments(cls.assignments);
  }
  if (!opt.lemma_dict.empty()) config.lemma_dict = modverb::load_lemma_dict(opt.lemma_dict);

  auto result = modverb::cross_validate(pairs, config, opt.k, opt.seed);

  json out;
  out["accuracy"] = modverb::round4(result.accuracy);
  out["features"] = opt.features;
  json folds = json::array();
  for (double a : result.fold_accuracies) folds.push_back(modverb::round4(a));
  out["fold_accuracies"] = std::move(folds);
  out["fold_sizes"] = result.fold_sizes;
  out["k"] = opt.k;
  out["labels"] = opt.labels;
  out["pairs"] = pairs.size();
  out["seed"] = opt.seed;
  write_output(opt.out, out.dump(2));
}

struct ImportOptions {
  std::string xml;
  std::string labels = "3way";
  std::string out;
};

void run_import_rte3(const ImportOptions& opt) {
  auto scheme = modverb::label_scheme_from_string(opt.labels);
  if (!scheme) throw UsageError("unknown label set '" + opt.labels + "' (2way|3way)");
  std::ifstream in(opt.xml);
  if (!in) throw modverb::DataError("cannot open XML file '" + opt.xml + "'");
  auto pairs = modverb::parse_rte3_xml(in, *scheme, opt.xml);
  std::ostringstream body;
  modverb::write_pairs_jsonl(body, pairs);
  write_output(opt.out, body.str());
  std::cerr << "imported " << pairs.size() << " pair(s)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modality verb classes: classification, sense linking, corpus statistics, RTE"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads for linking and corpus stages")
      ->check(CLI::PositiveNumber);

  ClassifyOptions classify_opt;
  auto* classify = app.add_subcommand("classify", "assign verbs to semantic classes");
  classify->add_option("--lexicon", classify_opt.lexicon, "verb lexicon TSV")->required();
  classify->add_option("--language", classify_opt.language, "lexicon language (de|en)");
  classify->add_option("--out", classify_opt.out, "output JSON path (default stdout)");

  ComponentsOptions components_opt;
  auto* components = app.add_subcommand("components", "show meaning components of signatures");
  components->add_option("--signature", components_opt.signature, "one signature, e.g. 110110");
  components->add_option("--lexicon", components_opt.lexicon, "verb lexicon TSV");
  components->add_option("--language", components_opt.language, "lexicon language (de|en)");
  components->add_option("--out", components_opt.out, "output JSON path (default stdout)");

  LinkOptions link_opt;
  auto* link = app.add_subcommand("link", "link verb senses across lexicons");
  link->add_option("--lexicon", link_opt.lexicon, "source verb lexicon TSV")->required();
  link->add_option("--language", link_opt.language, "source language (de|en)");
  link->add_option("--targets", link_opt.targets, "target sense inventory JSON")->required();
  link->add_option("--policy", link_opt.policy, "germanet|verbnet")->required();
  link->add_option("--translations", link_opt.translations, "de/en translation TSV");
  link->add_option("--out", link_opt.out, "output JSON path (default stdout)");

  LinkEvalOptions link_eval_opt;
  auto* link_eval = app.add_subcommand("link-eval", "accuracy of links against gold judgments");
  link_eval->add_option("--links", link_eval_opt.links, "links JSON from 'link'")->required();
  link_eval->add_option("--gold", link_eval_opt.gold, "gold TSV")->required();
  link_eval->add_option("--out", link_eval_opt.out, "output JSON path (default stdout)");

  AlignOptions align_opt;
  auto* align = app.add_subcommand("align", "class-alignment table from links");
  align->add_option("--lexicon", align_opt.lexicon, "source verb lexicon TSV")->required();
  align->add_option("--language", align_opt.language, "source language (de|en)");
  align->add_option("--targets", align_opt.targets, "target sense inventory JSON")->required();
  align->add_option("--links", align_opt.links, "links JSON from 'link'")->required();
  align->add_option("--out", align_opt.out, "output TSV path (default stdout)");

  StatsOptions stats_opt;
  auto* stats = app.add_subcommand("stats", "corpus statistics over the verb classes");
  stats->add_option("--corpus", stats_opt.corpus, "corpus file, '-' for stdin")->required();
  stats->add_option("--lexicon", stats_opt.lexicon, "verb lexicon TSV")->required();
  stats->add_option("--language", stats_opt.language, "lexicon language (de|en)");
  stats->add_flag("--reattach-particles", stats_opt.reattach,
                  "reattach separated verb particles before counting");
  stats->add_option("--verb-pos-prefixes", stats_opt.verb_pos_prefixes,
                    "comma-separated POS prefixes marking verbs");
  stats->add_option("--particle-tag", stats_opt.particle_tag, "POS tag of separated particles");
  stats->add_option("--unit", stats_opt.unit, "distribution unit (tokens|types)");
  stats->add_option("--senses", stats_opt.senses, "sense inventory JSON for polysemy stats");
  auto* min_count =
      stats->add_option("--min-count", stats_opt.min_count, "keep lemmas with count > N");
  stats->add_option("--out", stats_opt.out, "output JSON path (default stdout)");

  RteOptions rte_opt;
  auto* rte = app.add_subcommand("rte", "cross-validated entailment classification");
  rte->add_option("--pairs", rte_opt.pairs, "text/hypothesis pairs JSONL")->required();
  rte->add_option("--lexicon", rte_opt.lexicon, "verb lexicon TSV")->required();
  rte->add_option("--language", rte_opt.language, "lexicon language (de|en)");
  rte->add_option("--translations", rte_opt.translations,
                  "de/en translation TSV for English class membership");
  rte->add_option("--features", rte_opt.features, "wo|wo+fm")->required();
  rte->add_option("--k", rte_opt.k, "number of folds");
  rte->add_option("--seed", rte_opt.seed, "shuffle seed")->required();
  rte->add_option("--labels", rte_opt.labels, "label set (2way|3way)");
  rte->add_option("--lemma-dict", rte_opt.lemma_dict, "surface<TAB>lemma fallback dictionary");
  rte->add_option("--out", rte_opt.out, "output JSON path (default stdout)");

  ImportOptions import_opt;
  auto* import_rte3 = app.add_subcommand("import-rte3", "convert RTE-3 XML to pairs JSONL");
  import_rte3->add_option("--xml", import_opt.xml, "RTE-3 XML file")->required();
  import_rte3->add_option("--labels", import_opt.labels, "label set (2way|3way)");
  import_rte3->add_option("--out", import_opt.out, "output JSONL path (default stdout)");

  try {
    app.parse(argc, argv);
    link_opt.jobs = jobs;
    stats_opt.jobs = jobs;
    stats_opt.has_min_count = min_count->count() > 0;
    if (classify->parsed()) run_classify(classify_opt);
    if (components->parsed()) run_components(components_opt);
    if (link->parsed()) run_link(link_opt);
    if (link_eval->parsed()) run_link_eval(link_eval_opt);
    if (align->parsed()) run_align(align_opt);
    if (stats->parsed()) run_stats(stats_opt);
    if (rte->parsed()) run_rte(rte_opt);
    if (import_rte3->parsed()) run_import_rte3(import_opt);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
