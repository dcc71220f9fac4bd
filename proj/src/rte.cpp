#include "modverb/rte.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "modverb/util.hpp"

namespace modverb {

using nlohmann::json;

std::string to_string(LabelScheme s) {
  return s == LabelScheme::TWO_WAY ? "2way" : "3way";
}

std::optional<LabelScheme> label_scheme_from_string(std::string_view s) {
  if (s == "2way") return LabelScheme::TWO_WAY;
  if (s == "3way") return LabelScheme::THREE_WAY;
  return std::nullopt;
}

const std::set<std::string>& labels_for(LabelScheme s) {
  static const std::set<std::string> two = {"ENTAILMENT", "NO_ENTAILMENT"};
  static const std::set<std::string> three = {"CONTRADICTION", "ENTAILMENT", "UNKNOWN"};
  return s == LabelScheme::TWO_WAY ? two : three;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  auto is_punct = [](unsigned char c) { return std::ispunct(c) != 0; };
  while (i < text.size()) {
    while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view word = text.substr(start, i - start);
    while (!word.empty() && is_punct(static_cast<unsigned char>(word.front()))) {
      word.remove_prefix(1);
    }
    while (!word.empty() && is_punct(static_cast<unsigned char>(word.back()))) {
      word.remove_suffix(1);
    }
    if (!word.empty()) tokens.push_back(ascii_lower(word));
  }
  return tokens;
}

int word_overlap(std::string_view text, std::string_view hypothesis) {
  auto t = tokenize(text);
  auto h = tokenize(hypothesis);
  std::set<std::string> ts(t.begin(), t.end());
  std::set<std::string> hs(h.begin(), h.end());
  int shared = 0;
  for (const auto& w : ts) {
    if (hs.count(w)) ++shared;
  }
  return shared;
}

ClassMembership membership_from_assignments(const std::vector<ClassAssignment>& assignments) {
  ClassMembership membership;
  for (const auto& a : assignments) {
    if (a.status != ClassAssignment::Status::CLASSIFIED) continue;
    membership[a.lemma].insert(*a.class_name);
  }
  return membership;
}

ClassMembership multi_class_membership(const TranslationTable& translations,
                                       const std::vector<ClassAssignment>& assignments) {
  std::map<std::string, SemanticClassName> de_class;
  for (const auto& a : assignments) {
    if (a.status == ClassAssignment::Status::CLASSIFIED) de_class[a.lemma] = *a.class_name;
  }
  ClassMembership membership;
  for (const auto& [de, ens] : translations.mapping()) {
    auto it = de_class.find(de);
    if (it == de_class.end()) continue;
    for (const auto& en : ens) membership[en].insert(it->second);
  }
  return membership;
}

const std::set<SemanticClassName>& default_uncertainty_classes() {
  static const std::set<SemanticClassName> classes = {
      SemanticClassName::ASPECTUAL,     SemanticClassName::FUTURE_ORIENTED,
      SemanticClassName::INTERROGATIVE, SemanticClassName::FO_WH_FACTUAL,
      SemanticClassName::FO_WH_IF_FACTUAL, SemanticClassName::NON_FACTUAL,
  };
  return classes;
}

namespace {

std::set<std::string> uncertainty_lemmas(const std::vector<std::string>& lemmas,
                                         const ClassMembership& membership,
                                         const std::set<SemanticClassName>& uncertainty) {
  std::set<std::string> out;
  for (const auto& lemma : lemmas) {
    auto it = membership.find(lemma);
    if (it == membership.end()) continue;
    for (SemanticClassName c : it->second) {
      if (uncertainty.count(c)) {
        out.insert(lemma);
        break;
      }
    }
  }
  return out;
}

}  // namespace

FmFeatures factuality_mismatch(const std::vector<std::string>& text_lemmas,
                               const std::vector<std::string>& hyp_lemmas,
                               const ClassMembership& membership,
                               const std::set<SemanticClassName>& uncertainty_classes) {
  std::set<std::string> ut = uncertainty_lemmas(text_lemmas, membership, uncertainty_classes);
  std::set<std::string> uh = uncertainty_lemmas(hyp_lemmas, membership, uncertainty_classes);

  std::size_t inter = 0;
  for (const auto& l : ut) {
    if (uh.count(l)) ++inter;
  }
  std::size_t uni = ut.size() + uh.size() - inter;

  FmFeatures fm;
  fm.overlap = uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
  fm.presence_mismatch = (ut.empty() != uh.empty()) ? 1 : 0;
  return fm;
}

namespace {

std::vector<std::string> lemmas_for(const std::string& text,
                                    const std::optional<std::vector<std::string>>& provided,
                                    const std::map<std::string, std::string>& lemma_dict) {
  if (provided) return *provided;
  std::vector<std::string> lemmas = tokenize(text);
  for (auto& l : lemmas) {
    auto it = lemma_dict.find(l);
    if (it != lemma_dict.end()) l = it->second;
  }
  return lemmas;
}

}  // namespace

FeatureVector extract_features(const RtePair& pair, const FeatureConfig& config) {
  FeatureVector features;
  features[kFeatureWo] = static_cast<double>(word_overlap(pair.text, pair.hypothesis));
  if (config.use_fm) {
    auto t = lemmas_for(pair.text, pair.text_lemmas, config.lemma_dict);
    auto h = lemmas_for(pair.hypothesis, pair.hyp_lemmas, config.lemma_dict);
    FmFeatures fm = factuality_mismatch(t, h, config.membership, config.uncertainty_classes);
    features[kFeatureFmOverlap] = fm.overlap;
    features[kFeatureFmMismatch] = static_cast<double>(fm.presence_mismatch);
  }
  return features;
}

NbModel nb_train(const std::vector<FeatureVector>& vectors, const std::vector<std::string>& labels,
                 double epsilon) {
  if (vectors.size() != labels.size()) {
    throw DataError("feature vectors and labels differ in length");
  }
  if (vectors.empty()) throw DataError("no training samples");

  NbModel model;
  model.epsilon = epsilon;
  for (const auto& [name, value] : vectors.front()) model.feature_names.insert(name);
  for (const auto& v : vectors) {
    if (v.size() != model.feature_names.size()) {
      throw DataError("inconsistent feature names across samples");
    }
    for (const auto& [name, value] : v) {
      if (!model.feature_names.count(name)) {
        throw DataError("inconsistent feature name '" + name + "'");
      }
    }
  }

  std::map<std::string, std::vector<const FeatureVector*>> by_label;
  for (std::size_t i = 0; i < vectors.size(); ++i) by_label[labels[i]].push_back(&vectors[i]);
  if (by_label.size() < 2) {
    throw DataError("training data contains a single class only");
  }

  for (const auto& [label, samples] : by_label) {
    NbClassStats stats;
    stats.prior = static_cast<double>(samples.size()) / static_cast<double>(vectors.size());
    for (const auto& name : model.feature_names) {
      double mean = 0.0;
      for (const FeatureVector* v : samples) mean += v->at(name);
      mean /= static_cast<double>(samples.size());
      double var = 0.0;
      for (const FeatureVector* v : samples) {
        double d = v->at(name) - mean;
        var += d * d;
      }
      var /= static_cast<double>(samples.size());
      stats.mean[name] = mean;
      stats.variance[name] = var + epsilon;
    }
    model.classes[label] = std::move(stats);
  }
  return model;
}

std::string nb_predict(const NbModel& model, const FeatureVector& vector) {
  if (vector.size() != model.feature_names.size()) {
    throw DataError("feature vector does not match the trained feature set");
  }
  for (const auto& [name, value] : vector) {
    if (!model.feature_names.count(name)) {
      throw DataError("unknown feature name '" + name + "'");
    }
  }

  constexpr double kTau = 6.283185307179586476925286766559;  // 2*pi
  std::string best_label;
  double best_score = 0.0;
  bool first = true;
  // classes is ordered by label, so ties resolve to the smaller label.
  for (const auto& [label, stats] : model.classes) {
    double score = std::log(stats.prior);
    for (const auto& [name, x] : vector) {
      double var = stats.variance.at(name);
      double d = x - stats.mean.at(name);
      score += -0.5 * std::log(kTau * var) - d * d / (2.0 * var);
    }
    if (first || score > best_score) {
      best_label = label;
      best_score = score;
      first = false;
    }
  }
  return best_label;
}

namespace {

// Deterministic across platforms, unlike std::shuffle with a
// std::uniform_int_distribution.
void seeded_shuffle(std::vector<std::size_t>& indices, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  for (std::size_t i = indices.size(); i-- > 1;) {
    std::size_t j = static_cast<std::size_t>(gen() % (i + 1));
    std::swap(indices[i], indices[j]);
  }
}

}  // namespace

CvResult cross_validate(const std::vector<RtePair>& pairs, const FeatureConfig& config, int k,
                        std::uint64_t seed, double epsilon) {
  if (k < 2) throw DataError("cross validation needs k >= 2");
  if (static_cast<std::size_t>(k) > pairs.size()) {
    throw DataError("k = " + std::to_string(k) + " exceeds pair count " +
                    std::to_string(pairs.size()));
  }

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pairs[a].id < pairs[b].id; });
  seeded_shuffle(order, seed);

  std::vector<FeatureVector> vectors(pairs.size());
  std::vector<std::string> labels(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    vectors[i] = extract_features(pairs[order[i]], config);
    labels[i] = pairs[order[i]].label;
  }

  std::size_t n = pairs.size();
  std::size_t base = n / static_cast<std::size_t>(k);
  std::size_t remainder = n % static_cast<std::size_t>(k);

  CvResult result;
  std::size_t offset = 0;
  std::size_t total_correct = 0;
  for (int fold = 0; fold < k; ++fold) {
    std::size_t size = base + (static_cast<std::size_t>(fold) < remainder ? 1 : 0);
    std::size_t test_begin = offset;
    std::size_t test_end = offset + size;
    offset = test_end;

    std::vector<FeatureVector> train_vectors;
    std::vector<std::string> train_labels;
    train_vectors.reserve(n - size);
    train_labels.reserve(n - size);
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= test_begin && i < test_end) continue;
      train_vectors.push_back(vectors[i]);
      train_labels.push_back(labels[i]);
    }
    NbModel model = nb_train(train_vectors, train_labels, epsilon);

    std::size_t correct = 0;
    for (std::size_t i = test_begin; i < test_end; ++i) {
      if (nb_predict(model, vectors[i]) == labels[i]) ++correct;
    }
    total_correct += correct;
    result.fold_sizes.push_back(static_cast<int>(size));
    result.fold_accuracies.push_back(size == 0 ? 0.0
                                               : static_cast<double>(correct) /
                                                     static_cast<double>(size));
  }
  result.accuracy = static_cast<double>(total_correct) / static_cast<double>(n);
  return result;
}

namespace {

std::vector<std::string> string_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw DataError(what + " is not an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw DataError(what + " contains a non-string element");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<RtePair> parse_pairs_jsonl(std::istream& in, LabelScheme scheme,
                                       const std::string& source_name) {
  const std::set<std::string>& valid = labels_for(scheme);
  std::vector<RtePair> pairs;
  std::set<std::string> seen_ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(source_name, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw DataError(source_name, line_no, "not a JSON object");
    RtePair pair;
    try {
      if (!j.contains("id") || !j["id"].is_string()) throw DataError("missing string 'id'");
      pair.id = j["id"].get<std::string>();
      if (!j.contains("text") || !j["text"].is_string()) throw DataError("missing string 'text'");
      pair.text = j["text"].get<std::string>();
      if (!j.contains("hypothesis") || !j["hypothesis"].is_string()) {
        throw DataError("missing string 'hypothesis'");
      }
      pair.hypothesis = j["hypothesis"].get<std::string>();
      if (!j.contains("label") || !j["label"].is_string()) {
        throw DataError("missing string 'label'");
      }
      pair.label = j["label"].get<std::string>();
      if (j.contains("text_lemmas") && !j["text_lemmas"].is_null()) {
        pair.text_lemmas = string_array(j["text_lemmas"], "'text_lemmas'");
      }
      if (j.contains("hyp_lemmas") && !j["hyp_lemmas"].is_null()) {
        pair.hyp_lemmas = string_array(j["hyp_lemmas"], "'hyp_lemmas'");
      }
    } catch (const DataError& e) {
      throw DataError(source_name, line_no, e.what());
    }
    if (!valid.count(pair.label)) {
      throw DataError(source_name, line_no,
                      "label '" + pair.label + "' not in the " + to_string(scheme) + " label set");
    }
    if (!seen_ids.insert(pair.id).second) {
      throw DataError(source_name, line_no, "duplicate pair id '" + pair.id + "'");
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<RtePair> load_pairs_jsonl(const std::string& path, LabelScheme scheme) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open pairs file '" + path + "'");
  return parse_pairs_jsonl(in, scheme, path);
}

void write_pairs_jsonl(std::ostream& out, const std::vector<RtePair>& pairs) {
  for (const auto& p : pairs) {
    json j;
    j["id"] = p.id;
    j["text"] = p.text;
    j["hypothesis"] = p.hypothesis;
    j["label"] = p.label;
    if (p.text_lemmas) j["text_lemmas"] = *p.text_lemmas;
    if (p.hyp_lemmas) j["hyp_lemmas"] = *p.hyp_lemmas;
    out << j.dump() << '\n';
  }
}

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '&') {
      auto rest = s.substr(i);
      if (rest.rfind("&amp;", 0) == 0) { out += '&'; i += 5; continue; }
      if (rest.rfind("&lt;", 0) == 0) { out += '<'; i += 4; continue; }
      if (rest.rfind("&gt;", 0) == 0) { out += '>'; i += 4; continue; }
      if (rest.rfind("&quot;", 0) == 0) { out += '"'; i += 6; continue; }
      if (rest.rfind("&apos;", 0) == 0) { out += '\''; i += 6; continue; }
      if (rest.size() > 3 && rest[1] == '#') {
        std::size_t end = rest.find(';');
        if (end != std::string_view::npos && end <= 10) {
          std::string_view digits = rest.substr(2, end - 2);
          int base = 10;
          if (!digits.empty() && (digits.front() == 'x' || digits.front() == 'X')) {
            base = 16;
            digits.remove_prefix(1);
          }
          std::uint32_t cp = 0;
          bool ok = !digits.empty();
          for (char c : digits) {
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
            else { ok = false; break; }
            cp = cp * static_cast<std::uint32_t>(base) + static_cast<std::uint32_t>(d);
          }
          if (ok && cp > 0 && cp <= 0x10FFFF) {
            append_utf8(out, cp);
            i += end + 1;
            continue;
          }
        }
      }
    }
    out += s[i++];
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool in_space = true;  // drops leading whitespace
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!in_space) out += ' ';
      in_space = true;
    } else {
      out += c;
      in_space = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::map<std::string, std::string> parse_xml_attributes(std::string_view tag) {
  std::map<std::string, std::string> attrs;
  std::size_t i = 0;
  while (i < tag.size()) {
    while (i < tag.size() && std::isspace(static_cast<unsigned char>(tag[i]))) ++i;
    std::size_t name_start = i;
    while (i < tag.size() && tag[i] != '=' && !std::isspace(static_cast<unsigned char>(tag[i]))) {
      ++i;
    }
    std::string name(tag.substr(name_start, i - name_start));
    while (i < tag.size() && std::isspace(static_cast<unsigned char>(tag[i]))) ++i;
    if (i >= tag.size() || tag[i] != '=') break;
    ++i;
    while (i < tag.size() && std::isspace(static_cast<unsigned char>(tag[i]))) ++i;
    if (i >= tag.size() || (tag[i] != '"' && tag[i] != '\'')) break;
    char quote = tag[i++];
    std::size_t value_start = i;
    while (i < tag.size() && tag[i] != quote) ++i;
    if (i >= tag.size()) break;
    attrs[name] = decode_entities(tag.substr(value_start, i - value_start));
    ++i;
  }
  return attrs;
}

std::string extract_element(std::string_view body, const std::string& name, int pair_no,
                            const std::string& source_name) {
  std::string open = "<" + name + ">";
  std::string close = "</" + name + ">";
  std::size_t start = body.find(open);
  if (start == std::string_view::npos) {
    throw DataError(source_name + ": pair " + std::to_string(pair_no) + " is missing <" + name +
                    ">");
  }
  start += open.size();
  std::size_t end = body.find(close, start);
  if (end == std::string_view::npos) {
    throw DataError(source_name + ": pair " + std::to_string(pair_no) + " has an unclosed <" +
                    name + ">");
  }
  return collapse_whitespace(decode_entities(body.substr(start, end - start)));
}

}  // namespace

std::vector<RtePair> parse_rte3_xml(std::istream& in, LabelScheme scheme,
                                    const std::string& source_name) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string content = buffer.str();
  std::string_view view = content;

  std::vector<RtePair> pairs;
  std::set<std::string> seen_ids;
  std::size_t pos = 0;
  int pair_no = 0;
  while (true) {
    std::size_t open = view.find("<pair", pos);
    if (open == std::string_view::npos) break;
    ++pair_no;
    std::size_t tag_end = view.find('>', open);
    if (tag_end == std::string_view::npos) {
      throw DataError(source_name + ": unterminated <pair> tag");
    }
    auto attrs = parse_xml_attributes(view.substr(open + 5, tag_end - open - 5));
    std::size_t close = view.find("</pair>", tag_end);
    if (close == std::string_view::npos) {
      throw DataError(source_name + ": pair " + std::to_string(pair_no) + " has no </pair>");
    }
    std::string_view body = view.substr(tag_end + 1, close - tag_end - 1);

    RtePair pair;
    auto id_it = attrs.find("id");
    if (id_it == attrs.end() || id_it->second.empty()) {
      throw DataError(source_name + ": pair " + std::to_string(pair_no) + " has no id attribute");
    }
    pair.id = id_it->second;
    auto ent_it = attrs.find("entailment");
    if (ent_it == attrs.end()) {
      throw DataError(source_name + ": pair " + pair.id + " has no entailment attribute");
    }
    std::string value = ascii_lower(ent_it->second);
    if (value == "yes") {
      pair.label = "ENTAILMENT";
    } else if (value == "no") {
      pair.label = scheme == LabelScheme::TWO_WAY ? "NO_ENTAILMENT" : "CONTRADICTION";
    } else if (value == "unknown") {
      if (scheme == LabelScheme::TWO_WAY) {
        throw DataError(source_name + ": pair " + pair.id +
                        " has entailment=UNKNOWN, not valid for the 2way scheme");
      }
      pair.label = "UNKNOWN";
    } else {
      throw DataError(source_name + ": pair " + pair.id + " has entailment value '" +
                      ent_it->second + "'");
    }
    pair.text = extract_element(body, "t", pair_no, source_name);
    pair.hypothesis = extract_element(body, "h", pair_no, source_name);
    if (!seen_ids.insert(pair.id).second) {
      throw DataError(source_name + ": duplicate pair id '" + pair.id + "'");
    }
    pairs.push_back(std::move(pair));
    pos = close + 7;
  }
  return pairs;
}

std::map<std::string, std::string> load_lemma_dict(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lemma dictionary '" + path + "'");
  std::map<std::string, std::string> dict;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    std::string_view stripped = trim(view);
    if (stripped.empty() || stripped.front() == '#') continue;
    auto cols = split(view, '\t');
    if (cols.size() != 2 || trim(cols[0]).empty() || trim(cols[1]).empty()) {
      throw DataError(path, line_no, "expected surface<TAB>lemma");
    }
    dict[std::string(trim(cols[0]))] = std::string(trim(cols[1]));
  }
  return dict;
}

}  // namespace modverb
