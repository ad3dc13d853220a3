#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexqa {

enum class PartOfSpeech { kNoun, kVerb, kAdjective };

enum class Frame {
  kNounPP,
  kTransitive,
  kIntransitivePP,
  kAdjectivePredicate,
  kAdjectiveSuperlative,
};

// Which property argument the entry's marked (complement) slot fills.
enum class SubjArg { kSubjectOfProperty, kObjectOfProperty };

enum class Degree { kMax, kMin };

std::string_view to_string(PartOfSpeech p);
std::string_view to_string(Frame f);
std::string_view to_string(SubjArg a);
std::string_view to_string(Degree d);

// One verbalization of a KB property or class.
struct LexicalEntry {
  std::string id;
  std::string canonical_form;
  std::vector<std::string> other_forms;
  PartOfSpeech part_of_speech = PartOfSpeech::kNoun;
  Frame frame = Frame::kNounPP;
  std::string reference;  // absolute IRI
  std::optional<std::string> marker;
  SubjArg subj_arg = SubjArg::kSubjectOfProperty;
  std::optional<Degree> degree;

  // Class-denoting entry: a marker-less noun frame whose reference local
  // name starts with an upper-case letter (dbo:City, dbo:Film).
  bool denotes_class() const;

  friend bool operator==(const LexicalEntry&, const LexicalEntry&) = default;
};

// Immutable after construction; safe to share between threads.
class Lexicon {
 public:
  Lexicon() = default;
  // Validates every entry and builds the normalized form index. Throws
  // ValidationError naming the first offending entry id.
  explicit Lexicon(std::vector<LexicalEntry> entries);

  const std::vector<LexicalEntry>& entries() const { return entries_; }
  const std::multimap<std::string, std::size_t>& form_index() const {
    return form_index_;
  }
  const LexicalEntry* find(std::string_view id) const;

  // All entries with a form equal to normalize(phrase), ordered by id.
  std::vector<const LexicalEntry*> lookup_exact(std::string_view phrase) const;

  std::map<Frame, std::size_t> frame_counts() const;

 private:
  std::vector<LexicalEntry> entries_;
  std::multimap<std::string, std::size_t> form_index_;
};

// Parses the `{"entries":[...]}` lexicon document. FormatError carries the
// line (syntax) or entry position (schema); ValidationError names the id.
Lexicon parse_lexicon(std::string_view json_text);
Lexicon load_lexicon(const std::filesystem::path& path);

// Inverse of parse_lexicon (stable key order).
std::string write_lexicon(const Lexicon& lex);

void validate_entry(const LexicalEntry& e);

}  // namespace lexqa
