#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace lexqa {

// Entity proposed by an external recognizer; `surface` is the covered text.
struct ExternalEntity {
  std::string iri;
  std::string surface;
  double confidence = 1.0;
};

class NerProvider {
 public:
  virtual ~NerProvider() = default;
  // May throw; callers treat failures as non-fatal.
  virtual std::vector<ExternalEntity> annotate(const std::string& question) = 0;
};

// Static answers loaded from a JSON object
// {"<question text>": [{"iri": ..., "surface": ..., "confidence": ...}]}.
class FixtureNerProvider : public NerProvider {
 public:
  explicit FixtureNerProvider(
      std::map<std::string, std::vector<ExternalEntity>> table);
  static FixtureNerProvider load(const std::filesystem::path& path);
  std::vector<ExternalEntity> annotate(const std::string& question) override;

 private:
  std::map<std::string, std::vector<ExternalEntity>> table_;
};

// Long-running `command`: each question goes to its stdin as one JSON
// string line; one JSON array line in the fixture item shape comes back.
class SubprocessNerProvider : public NerProvider {
 public:
  SubprocessNerProvider(std::string command, std::chrono::milliseconds timeout);
  ~SubprocessNerProvider() override;
  std::vector<ExternalEntity> annotate(const std::string& question) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::chrono::milliseconds timeout_;
};

std::vector<ExternalEntity> parse_ner_items(const std::string& json_array);

}  // namespace lexqa
