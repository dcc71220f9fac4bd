#include "modverb/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "modverb/util.hpp"

namespace modverb {

namespace {

using nlohmann::json;

std::string quoted(std::string_view s) {
  return "'" + std::string(s) + "'";
}

}  // namespace

std::string to_string(Language l) {
  return l == Language::DE ? "DE" : "EN";
}

std::optional<Language> language_from_string(std::string_view s) {
  std::string u = ascii_lower(s);
  if (u == "de") return Language::DE;
  if (u == "en") return Language::EN;
  return std::nullopt;
}

std::string to_string(GrammaticalFunction f) {
  switch (f) {
    case GrammaticalFunction::SUBJECT: return "SUBJECT";
    case GrammaticalFunction::DIRECT_OBJECT: return "DIRECT_OBJECT";
    case GrammaticalFunction::INDIRECT_OBJECT: return "INDIRECT_OBJECT";
    case GrammaticalFunction::PREP_OBJECT: return "PREP_OBJECT";
    case GrammaticalFunction::CLAUSAL_OBJECT: return "CLAUSAL_OBJECT";
    case GrammaticalFunction::INF_OBJECT: return "INF_OBJECT";
  }
  return "?";
}

std::string to_string(ArgumentCategory c) {
  switch (c) {
    case ArgumentCategory::NP: return "NP";
    case ArgumentCategory::PP: return "PP";
    case ArgumentCategory::DASS_CLAUSE: return "DASS_CLAUSE";
    case ArgumentCategory::OB_CLAUSE: return "OB_CLAUSE";
    case ArgumentCategory::WH_CLAUSE: return "WH_CLAUSE";
    case ArgumentCategory::DECL_CLAUSE: return "DECL_CLAUSE";
    case ArgumentCategory::THAT_CLAUSE: return "THAT_CLAUSE";
    case ArgumentCategory::WHETHER_IF_CLAUSE: return "WHETHER_IF_CLAUSE";
    case ArgumentCategory::TO_INF_PRESENT: return "TO_INF_PRESENT";
    case ArgumentCategory::TO_INF_PAST: return "TO_INF_PAST";
    case ArgumentCategory::ING_FORM: return "ING_FORM";
    case ArgumentCategory::OTHER: return "OTHER";
  }
  return "?";
}

std::string to_string(Case c) {
  switch (c) {
    case Case::NOM: return "NOM";
    case Case::ACC: return "ACC";
    case Case::DAT: return "DAT";
    case Case::GEN: return "GEN";
  }
  return "?";
}

std::optional<GrammaticalFunction> function_from_string(std::string_view s) {
  static const std::map<std::string, GrammaticalFunction, std::less<>> table = {
      {"SUBJECT", GrammaticalFunction::SUBJECT},
      {"DIRECT_OBJECT", GrammaticalFunction::DIRECT_OBJECT},
      {"INDIRECT_OBJECT", GrammaticalFunction::INDIRECT_OBJECT},
      {"PREP_OBJECT", GrammaticalFunction::PREP_OBJECT},
      {"CLAUSAL_OBJECT", GrammaticalFunction::CLAUSAL_OBJECT},
      {"INF_OBJECT", GrammaticalFunction::INF_OBJECT},
  };
  auto it = table.find(s);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::optional<ArgumentCategory> category_from_string(std::string_view s) {
  static const std::map<std::string, ArgumentCategory, std::less<>> table = {
      {"NP", ArgumentCategory::NP},
      {"PP", ArgumentCategory::PP},
      {"DASS_CLAUSE", ArgumentCategory::DASS_CLAUSE},
      {"OB_CLAUSE", ArgumentCategory::OB_CLAUSE},
      {"WH_CLAUSE", ArgumentCategory::WH_CLAUSE},
      {"DECL_CLAUSE", ArgumentCategory::DECL_CLAUSE},
      {"THAT_CLAUSE", ArgumentCategory::THAT_CLAUSE},
      {"WHETHER_IF_CLAUSE", ArgumentCategory::WHETHER_IF_CLAUSE},
      {"TO_INF_PRESENT", ArgumentCategory::TO_INF_PRESENT},
      {"TO_INF_PAST", ArgumentCategory::TO_INF_PAST},
      {"ING_FORM", ArgumentCategory::ING_FORM},
      {"OTHER", ArgumentCategory::OTHER},
  };
  auto it = table.find(s);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::optional<Case> case_from_string(std::string_view s) {
  if (s == "NOM") return Case::NOM;
  if (s == "ACC") return Case::ACC;
  if (s == "DAT") return Case::DAT;
  if (s == "GEN") return Case::GEN;
  return std::nullopt;
}

bool is_clausal(ArgumentCategory c) {
  switch (c) {
    case ArgumentCategory::DASS_CLAUSE:
    case ArgumentCategory::OB_CLAUSE:
    case ArgumentCategory::WH_CLAUSE:
    case ArgumentCategory::DECL_CLAUSE:
    case ArgumentCategory::THAT_CLAUSE:
    case ArgumentCategory::WHETHER_IF_CLAUSE:
      return true;
    default:
      return false;
  }
}

bool is_nominal(ArgumentCategory c) {
  return c == ArgumentCategory::NP || c == ArgumentCategory::PP;
}

std::optional<ArgumentTypeSlot> witnessed_slot(ArgumentCategory c) {
  switch (c) {
    case ArgumentCategory::DASS_CLAUSE:
    case ArgumentCategory::THAT_CLAUSE:
      return ArgumentTypeSlot::DASS_CLAUSE;
    case ArgumentCategory::TO_INF_PRESENT:
      return ArgumentTypeSlot::ZU_INF_PRESENT;
    case ArgumentCategory::TO_INF_PAST:
      return ArgumentTypeSlot::ZU_INF_PAST;
    case ArgumentCategory::WH_CLAUSE:
      return ArgumentTypeSlot::WH_CLAUSE;
    case ArgumentCategory::OB_CLAUSE:
    case ArgumentCategory::WHETHER_IF_CLAUSE:
      return ArgumentTypeSlot::OB_CLAUSE;
    case ArgumentCategory::DECL_CLAUSE:
      return ArgumentTypeSlot::DECLARATIVE_CLAUSE;
    default:
      return std::nullopt;
  }
}

void validate_argument(const SyntacticArgument& arg) {
  if (arg.grammatical_case && !is_nominal(arg.category)) {
    throw DataError("case given for non-NP/PP argument of category " + to_string(arg.category));
  }
  if (arg.complementizer && !is_clausal(arg.category)) {
    throw DataError("complementizer given for non-clausal argument of category " +
                    to_string(arg.category));
  }
}

void validate_frame(const SubcatFrame& frame) {
  if (frame.arguments.empty()) {
    throw DataError("frame has no arguments");
  }
  int subjects = 0;
  for (const auto& arg : frame.arguments) {
    validate_argument(arg);
    if (arg.function == GrammaticalFunction::SUBJECT) ++subjects;
  }
  if (subjects > 1) {
    throw DataError("frame has " + std::to_string(subjects) + " SUBJECT arguments");
  }
}

std::string to_string(LexiconName n) {
  switch (n) {
    case LexiconName::GERMANET: return "GERMANET";
    case LexiconName::VERBNET: return "VERBNET";
    case LexiconName::FRAMENET: return "FRAMENET";
    case LexiconName::CUSTOM: return "CUSTOM";
  }
  return "?";
}

std::optional<LexiconName> lexicon_name_from_string(std::string_view s) {
  std::string u = ascii_lower(s);
  if (u == "germanet") return LexiconName::GERMANET;
  if (u == "verbnet") return LexiconName::VERBNET;
  if (u == "framenet") return LexiconName::FRAMENET;
  if (u == "custom") return LexiconName::CUSTOM;
  return std::nullopt;
}

void TranslationTable::add(const std::string& de_lemma, const std::string& en_lemma) {
  if (de_lemma.empty() || en_lemma.empty()) {
    throw DataError("empty lemma in translation pair");
  }
  de_to_en_[de_lemma].insert(en_lemma);
}

const std::set<std::string>* TranslationTable::lookup(const std::string& de_lemma) const {
  auto it = de_to_en_.find(de_lemma);
  if (it == de_to_en_.end()) return nullptr;
  return &it->second;
}

bool TranslationTable::contains(const std::string& de_lemma) const {
  return de_to_en_.count(de_lemma) > 0;
}

std::set<std::string> TranslationTable::target_lemmas() const {
  std::set<std::string> out;
  for (const auto& [de, ens] : de_to_en_) {
    out.insert(ens.begin(), ens.end());
  }
  return out;
}

nlohmann::json frame_to_json(const SubcatFrame& frame) {
  json args = json::array();
  for (const auto& a : frame.arguments) {
    json ja;
    ja["function"] = to_string(a.function);
    ja["category"] = to_string(a.category);
    ja["case"] = a.grammatical_case ? json(to_string(*a.grammatical_case)) : json(nullptr);
    ja["complementizer"] = a.complementizer ? json(*a.complementizer) : json(nullptr);
    ja["preposition"] = a.preposition ? json(*a.preposition) : json(nullptr);
    args.push_back(std::move(ja));
  }
  return json{{"arguments", std::move(args)}};
}

namespace {

SyntacticArgument argument_from_json(const json& j, std::vector<std::string>* warnings) {
  if (!j.is_object()) throw DataError("argument is not a JSON object");
  SyntacticArgument arg;
  bool have_function = false;
  bool have_category = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "function") {
      if (!value.is_string()) throw DataError("argument function is not a string");
      auto f = function_from_string(value.get<std::string>());
      if (!f) throw DataError("unknown argument function " + quoted(value.get<std::string>()));
      arg.function = *f;
      have_function = true;
    } else if (key == "category") {
      if (!value.is_string()) throw DataError("argument category is not a string");
      auto c = category_from_string(value.get<std::string>());
      if (!c) throw DataError("unknown argument category " + quoted(value.get<std::string>()));
      arg.category = *c;
      have_category = true;
    } else if (key == "case") {
      if (value.is_null()) continue;
      if (!value.is_string()) throw DataError("argument case is not a string");
      auto c = case_from_string(value.get<std::string>());
      if (!c) throw DataError("unknown case " + quoted(value.get<std::string>()));
      arg.grammatical_case = *c;
    } else if (key == "complementizer") {
      if (value.is_null()) continue;
      if (!value.is_string()) throw DataError("complementizer is not a string");
      arg.complementizer = value.get<std::string>();
    } else if (key == "preposition") {
      if (value.is_null()) continue;
      if (!value.is_string()) throw DataError("preposition is not a string");
      arg.preposition = value.get<std::string>();
    } else {
      if (warnings) warnings->push_back("ignored unknown argument attribute " + quoted(key));
    }
  }
  if (!have_function) throw DataError("argument is missing 'function'");
  if (!have_category) throw DataError("argument is missing 'category'");
  return arg;
}

}  // namespace

SubcatFrame frame_from_json(const nlohmann::json& j, std::vector<std::string>* warnings) {
  if (!j.is_object()) throw DataError("frame is not a JSON object");
  SubcatFrame frame;
  for (const auto& [key, value] : j.items()) {
    if (key == "arguments") {
      if (!value.is_array()) throw DataError("frame 'arguments' is not an array");
      for (const auto& ja : value) {
        frame.arguments.push_back(argument_from_json(ja, warnings));
      }
    } else {
      if (warnings) warnings->push_back("ignored unknown frame attribute " + quoted(key));
    }
  }
  validate_frame(frame);
  return frame;
}

namespace {

// Checks that no frame witnesses an argument type whose signature slot is
// impossible. Frames corroborate POSSIBLE slots only; absence of a frame is
// never evidence.
void check_frames_against_signature(const VerbEntry& entry) {
  for (std::size_t fi = 0; fi < entry.frames.size(); ++fi) {
    for (const auto& arg : entry.frames[fi].arguments) {
      auto slot = witnessed_slot(arg.category);
      if (!slot) continue;
      if (entry.signature.slot(*slot) == Ternary::IMPOSSIBLE) {
        throw DataError("frame " + std::to_string(fi + 1) + " witnesses " +
                        to_string(arg.category) + " but signature slot " +
                        std::to_string(static_cast<int>(*slot)) + " is 0");
      }
    }
  }
}

}  // namespace

LexiconLoadResult parse_lexicon(std::istream& in, Language language,
                                const std::string& source_name) {
  LexiconLoadResult result;
  std::set<std::string> seen_lemmas;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    std::string_view stripped = trim(view);
    if (stripped.empty() || stripped.front() == '#') continue;
    ++result.data_rows;

    auto fail = [&](const std::string& msg) {
      result.errors.push_back({line_no, source_name + ":" + std::to_string(line_no) + ": " + msg});
    };

    auto cols = split(view, '\t');
    if (cols.size() < 2) {
      fail("expected at least 2 tab-separated columns");
      continue;
    }
    if (cols.size() > 4) {
      fail("too many columns (" + std::to_string(cols.size()) + ")");
      continue;
    }

    VerbEntry entry;
    entry.language = language;
    entry.lemma = std::string(trim(cols[0]));
    if (entry.lemma.empty()) {
      fail("empty lemma");
      continue;
    }
    if (seen_lemmas.count(entry.lemma)) {
      fail("duplicate lemma " + quoted(entry.lemma));
      continue;
    }

    std::string_view sig_text = trim(cols[1]);
    if (sig_text.empty() && language == Language::EN) {
      entry.signature = Signature();  // all UNSPECIFIED
    } else {
      if (sig_text.size() != kNumSlots) {
        fail("signature length " + std::to_string(sig_text.size()) + " != " +
             std::to_string(kNumSlots));
        continue;
      }
      auto sig = Signature::parse(sig_text);
      if (!sig) {
        fail("illegal character in signature " + quoted(sig_text));
        continue;
      }
      if (!sig->fully_specified()) {
        // English entries without an inspected signature carry the fully
        // unspecified form; anything partial is malformed for both languages.
        if (language == Language::EN && sig->fully_unspecified()) {
          entry.signature = *sig;
        } else {
          fail("verb signature must be fully specified, got " + quoted(sig_text));
          continue;
        }
      } else {
        entry.signature = *sig;
      }
    }

    bool row_ok = true;
    if (cols.size() >= 3 && !trim(cols[2]).empty()) {
      try {
        nlohmann::json jframes = nlohmann::json::parse(trim(cols[2]));
        if (!jframes.is_array()) throw DataError("frames column is not a JSON array");
        for (const auto& jf : jframes) {
          entry.frames.push_back(frame_from_json(jf, &result.warnings));
        }
        check_frames_against_signature(entry);
      } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("invalid frames JSON: ") + e.what());
        row_ok = false;
      } catch (const DataError& e) {
        fail(e.what());
        row_ok = false;
      }
    }
    if (!row_ok) continue;

    if (cols.size() == 4 && !trim(cols[3]).empty()) {
      auto freq = parse_u64(trim(cols[3]));
      if (!freq) {
        fail("invalid frequency " + quoted(trim(cols[3])));
        continue;
      }
      entry.corpus_frequency = *freq;
    }

    seen_lemmas.insert(entry.lemma);
    result.entries.push_back(std::move(entry));
  }
  return result;
}

std::vector<VerbEntry> load_lexicon(const std::string& path, Language language) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon file " + quoted(path));
  LexiconLoadResult result = parse_lexicon(in, language, path);
  if (!result.errors.empty()) {
    std::ostringstream msg;
    msg << result.errors.size() << " bad row(s) in " << path;
    for (const auto& e : result.errors) msg << "\n  " << e.message;
    throw DataError(msg.str());
  }
  return std::move(result.entries);
}

std::string serialize_lexicon(const std::vector<VerbEntry>& entries) {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << e.lemma << '\t' << e.signature.str();
    bool has_frames = !e.frames.empty();
    if (has_frames || e.corpus_frequency) {
      out << '\t';
      if (has_frames) {
        nlohmann::json jframes = nlohmann::json::array();
        for (const auto& f : e.frames) jframes.push_back(frame_to_json(f));
        out << jframes.dump();
      }
    }
    if (e.corpus_frequency) {
      out << '\t' << *e.corpus_frequency;
    }
    out << '\n';
  }
  return out.str();
}

SenseInventory parse_sense_inventory(const nlohmann::json& j, std::vector<std::string>* warnings) {
  if (!j.is_object()) throw DataError("sense inventory is not a JSON object");
  if (!j.contains("lexicon") || !j["lexicon"].is_string()) {
    throw DataError("sense inventory is missing string field 'lexicon'");
  }
  auto lex = lexicon_name_from_string(j["lexicon"].get<std::string>());
  if (!lex) {
    throw DataError("unknown lexicon " + quoted(j["lexicon"].get<std::string>()));
  }
  if (!j.contains("senses") || !j["senses"].is_array()) {
    throw DataError("sense inventory is missing array field 'senses'");
  }

  SenseInventory inventory;
  inventory.lexicon = *lex;
  std::set<std::string> seen_ids;
  int index = 0;
  for (const auto& js : j["senses"]) {
    ++index;
    auto where = [&](const std::string& msg) {
      return DataError("sense " + std::to_string(index) + ": " + msg);
    };
    if (!js.is_object()) throw where("not a JSON object");
    Sense sense;
    sense.lexicon = *lex;
    for (const auto& [key, value] : js.items()) {
      if (key == "sense_id") {
        if (!value.is_string()) throw where("'sense_id' is not a string");
        sense.sense_id = value.get<std::string>();
      } else if (key == "lemma") {
        if (!value.is_string()) throw where("'lemma' is not a string");
        sense.lemma = value.get<std::string>();
      } else if (key == "class_label") {
        if (!value.is_string()) throw where("'class_label' is not a string");
        sense.class_label = value.get<std::string>();
      } else if (key == "frames") {
        if (!value.is_array()) throw where("'frames' is not an array");
        for (const auto& jf : value) {
          try {
            sense.frames.push_back(frame_from_json(jf, warnings));
          } catch (const DataError& e) {
            throw where(e.what());
          }
        }
      } else {
        if (warnings) {
          warnings->push_back("sense " + std::to_string(index) + ": ignored unknown attribute " +
                              quoted(key));
        }
      }
    }
    if (sense.sense_id.empty()) throw where("missing or empty 'sense_id'");
    if (sense.lemma.empty()) throw where("missing or empty 'lemma'");
    if (!seen_ids.insert(sense.sense_id).second) {
      throw DataError("duplicate sense_id " + quoted(sense.sense_id));
    }
    inventory.senses.push_back(std::move(sense));
  }
  return inventory;
}

SenseInventory load_sense_inventory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open sense inventory " + quoted(path));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
  return parse_sense_inventory(j);
}

TranslationTable parse_translations(std::istream& in, const std::string& source_name) {
  TranslationTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    std::string_view stripped = trim(view);
    if (stripped.empty() || stripped.front() == '#') continue;
    auto cols = split(view, '\t');
    if (cols.size() != 2) {
      throw DataError(source_name, line_no, "expected 2 tab-separated columns");
    }
    std::string de(trim(cols[0]));
    std::string en(trim(cols[1]));
    if (de.empty() || en.empty()) {
      throw DataError(source_name, line_no, "empty lemma field");
    }
    table.add(de, en);
  }
  return table;
}

TranslationTable load_translations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open translation file " + quoted(path));
  return parse_translations(in, path);
}

}  // namespace modverb
