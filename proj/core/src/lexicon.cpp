#include "lexqa/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lexqa/errors.hpp"
#include "lexqa/rdf.hpp"
#include "lexqa/text.hpp"

namespace lexqa {

using nlohmann::json;

std::string_view to_string(PartOfSpeech p) {
  switch (p) {
    case PartOfSpeech::kNoun: return "noun";
    case PartOfSpeech::kVerb: return "verb";
    case PartOfSpeech::kAdjective: return "adjective";
  }
  return "?";
}

std::string_view to_string(Frame f) {
  switch (f) {
    case Frame::kNounPP: return "NounPPFrame";
    case Frame::kTransitive: return "TransitiveFrame";
    case Frame::kIntransitivePP: return "IntransitivePPFrame";
    case Frame::kAdjectivePredicate: return "AdjectivePredicateFrame";
    case Frame::kAdjectiveSuperlative: return "AdjectiveSuperlativeFrame";
  }
  return "?";
}

std::string_view to_string(SubjArg a) {
  return a == SubjArg::kSubjectOfProperty ? "subjOfProp" : "objOfProp";
}

std::string_view to_string(Degree d) {
  return d == Degree::kMax ? "max" : "min";
}

bool LexicalEntry::denotes_class() const {
  if (frame != Frame::kNounPP || marker) return false;
  const auto cut = reference.find_last_of("/#");
  if (cut == std::string::npos || cut + 1 >= reference.size()) return false;
  const char c = reference[cut + 1];
  return c >= 'A' && c <= 'Z';
}

void validate_entry(const LexicalEntry& e) {
  const auto fail = [&](const std::string& why) {
    throw ValidationError("lexical entry '" + e.id + "': " + why);
  };
  if (e.id.empty()) throw ValidationError("lexical entry with empty id");
  if (e.canonical_form.empty()) fail("canonicalForm is empty");
  if (text::trim(e.canonical_form) != e.canonical_form) {
    fail("canonicalForm has leading or trailing whitespace");
  }
  for (const auto& f : e.other_forms) {
    if (text::normalize(f).empty()) fail("otherForms contains an empty form");
  }
  const bool superlative = e.frame == Frame::kAdjectiveSuperlative;
  if (superlative && !e.degree) fail("AdjectiveSuperlativeFrame needs degree");
  if (!superlative && e.degree) {
    fail("degree is only allowed on AdjectiveSuperlativeFrame");
  }
  if (!is_absolute_iri(e.reference)) {
    fail("reference '" + e.reference + "' is not an absolute IRI");
  }
  if (e.marker && text::normalize(*e.marker).empty()) fail("marker is empty");
}

Lexicon::Lexicon(std::vector<LexicalEntry> entries)
    : entries_(std::move(entries)) {
  std::set<std::string> ids;
  for (auto& e : entries_) {
    validate_entry(e);
    if (!ids.insert(e.id).second) {
      throw ValidationError("lexical entry '" + e.id + "': duplicate id");
    }
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    std::set<std::string> forms;
    forms.insert(text::normalize(entries_[i].canonical_form));
    for (const auto& f : entries_[i].other_forms) {
      forms.insert(text::normalize(f));
    }
    for (const auto& f : forms) form_index_.emplace(f, i);
  }
}

const LexicalEntry* Lexicon::find(std::string_view id) const {
  for (const auto& e : entries_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::vector<const LexicalEntry*> Lexicon::lookup_exact(
    std::string_view phrase) const {
  std::vector<const LexicalEntry*> out;
  const auto key = text::normalize(phrase);
  if (key.empty()) return out;
  auto [lo, hi] = form_index_.equal_range(key);
  for (auto it = lo; it != hi; ++it) out.push_back(&entries_[it->second]);
  std::sort(out.begin(), out.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });
  return out;
}

std::map<Frame, std::size_t> Lexicon::frame_counts() const {
  std::map<Frame, std::size_t> counts;
  for (const auto& e : entries_) ++counts[e.frame];
  return counts;
}

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(const json& v, const char* key,
                const std::pair<std::string_view, Enum> (&table)[N],
                const std::string& ctx) {
  if (!v.is_string()) throw FormatError(ctx + ": '" + key + "' must be a string");
  const auto s = v.get<std::string>();
  for (const auto& [name, value] : table) {
    if (name == s) return value;
  }
  throw FormatError(ctx + ": unknown " + key + " '" + s + "'");
}

constexpr std::pair<std::string_view, PartOfSpeech> kPosTable[] = {
    {"noun", PartOfSpeech::kNoun},
    {"verb", PartOfSpeech::kVerb},
    {"adjective", PartOfSpeech::kAdjective}};
constexpr std::pair<std::string_view, Frame> kFrameTable[] = {
    {"NounPPFrame", Frame::kNounPP},
    {"TransitiveFrame", Frame::kTransitive},
    {"IntransitivePPFrame", Frame::kIntransitivePP},
    {"AdjectivePredicateFrame", Frame::kAdjectivePredicate},
    {"AdjectiveSuperlativeFrame", Frame::kAdjectiveSuperlative}};
constexpr std::pair<std::string_view, SubjArg> kSubjArgTable[] = {
    {"subjOfProp", SubjArg::kSubjectOfProperty},
    {"objOfProp", SubjArg::kObjectOfProperty}};
constexpr std::pair<std::string_view, Degree> kDegreeTable[] = {
    {"max", Degree::kMax}, {"min", Degree::kMin}};

std::string require_string(const json& obj, const char* key,
                           const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(ctx + ": missing '" + key + "'");
  if (!it->is_string()) {
    throw FormatError(ctx + ": '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

LexicalEntry parse_entry(const json& obj, std::size_t index) {
  std::string ctx = "entry #" + std::to_string(index);
  if (!obj.is_object()) throw FormatError(ctx + ": not an object");
  if (auto it = obj.find("id"); it != obj.end() && it->is_string()) {
    ctx += " (id '" + it->get<std::string>() + "')";
  }
  static const std::set<std::string> kKeys = {
      "id",        "canonicalForm", "otherForms", "partOfSpeech", "frame",
      "reference", "marker",        "subjArg",    "degree"};
  for (const auto& [k, _] : obj.items()) {
    if (!kKeys.count(k)) throw FormatError(ctx + ": unknown key '" + k + "'");
  }
  LexicalEntry e;
  e.id = require_string(obj, "id", ctx);
  e.canonical_form = require_string(obj, "canonicalForm", ctx);
  auto forms = obj.find("otherForms");
  if (forms == obj.end()) throw FormatError(ctx + ": missing 'otherForms'");
  if (!forms->is_array()) throw FormatError(ctx + ": 'otherForms' must be an array");
  for (const auto& f : *forms) {
    if (!f.is_string()) throw FormatError(ctx + ": 'otherForms' items must be strings");
    e.other_forms.push_back(f.get<std::string>());
  }
  if (!obj.contains("partOfSpeech")) throw FormatError(ctx + ": missing 'partOfSpeech'");
  e.part_of_speech = parse_enum(obj["partOfSpeech"], "partOfSpeech", kPosTable, ctx);
  if (!obj.contains("frame")) throw FormatError(ctx + ": missing 'frame'");
  e.frame = parse_enum(obj["frame"], "frame", kFrameTable, ctx);
  e.reference = expand_curie(require_string(obj, "reference", ctx));
  if (auto it = obj.find("marker"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw FormatError(ctx + ": 'marker' must be a string");
    e.marker = it->get<std::string>();
  }
  if (!obj.contains("subjArg")) throw FormatError(ctx + ": missing 'subjArg'");
  e.subj_arg = parse_enum(obj["subjArg"], "subjArg", kSubjArgTable, ctx);
  if (auto it = obj.find("degree"); it != obj.end() && !it->is_null()) {
    e.degree = parse_enum(*it, "degree", kDegreeTable, ctx);
  }
  return e;
}

}  // namespace

Lexicon parse_lexicon(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& ex) {
    throw FormatError(std::string("lexicon is not valid JSON: ") + ex.what(),
                      line_of(json_text, ex.byte));
  }
  if (!doc.is_object()) throw FormatError("lexicon root must be an object");
  for (const auto& [k, _] : doc.items()) {
    if (k != "entries") throw FormatError("lexicon: unknown key '" + k + "'");
  }
  auto it = doc.find("entries");
  if (it == doc.end() || !it->is_array()) {
    throw FormatError("lexicon: 'entries' array is required");
  }
  std::vector<LexicalEntry> entries;
  std::size_t index = 0;
  for (const auto& obj : *it) entries.push_back(parse_entry(obj, index++));
  return Lexicon(std::move(entries));
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_lexicon(buf.str());
}

std::string write_lexicon(const Lexicon& lex) {
  json entries = json::array();
  for (const auto& e : lex.entries()) {
    json obj = {
        {"id", e.id},
        {"canonicalForm", e.canonical_form},
        {"otherForms", e.other_forms},
        {"partOfSpeech", std::string(to_string(e.part_of_speech))},
        {"frame", std::string(to_string(e.frame))},
        {"reference", e.reference},
        {"subjArg", std::string(to_string(e.subj_arg))},
    };
    if (e.marker) obj["marker"] = *e.marker;
    if (e.degree) obj["degree"] = std::string(to_string(*e.degree));
    entries.push_back(std::move(obj));
  }
  return json{{"entries", entries}}.dump(2) + "\n";
}

}  // namespace lexqa
