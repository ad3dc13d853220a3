#include "lexqa/ner.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include "json.hpp"
#include "lexqa/errors.hpp"
#include "lexqa/rdf.hpp"
#include "line_process.hpp"

namespace lexqa {

namespace {

std::vector<ExternalEntity> items_from_json(const nlohmann::json& arr) {
  if (!arr.is_array()) throw FormatError("NER result must be a JSON array");
  std::vector<ExternalEntity> out;
  for (const auto& item : arr) {
    if (!item.is_object() || !item.contains("iri") || !item.contains("surface")) {
      throw FormatError("NER item needs 'iri' and 'surface'");
    }
    ExternalEntity e;
    e.iri = expand_curie(item.at("iri").get<std::string>());
    e.surface = item.at("surface").get<std::string>();
    e.confidence = item.value("confidence", 1.0);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::vector<ExternalEntity> parse_ner_items(const std::string& json_array) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_array);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("NER result is not JSON: ") + e.what());
  }
  return items_from_json(j);
}

FixtureNerProvider::FixtureNerProvider(
    std::map<std::string, std::vector<ExternalEntity>> table)
    : table_(std::move(table)) {}

FixtureNerProvider FixtureNerProvider::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open NER fixture '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("NER fixture '" + path.string() + "': " + e.what());
  }
  if (!j.is_object()) throw FormatError("NER fixture must be a JSON object");
  std::map<std::string, std::vector<ExternalEntity>> table;
  for (const auto& [question, items] : j.items()) {
    table[question] = items_from_json(items);
  }
  return FixtureNerProvider(std::move(table));
}

std::vector<ExternalEntity> FixtureNerProvider::annotate(const std::string& question) {
  auto it = table_.find(question);
  return it == table_.end() ? std::vector<ExternalEntity>{} : it->second;
}

struct SubprocessNerProvider::Impl {
  explicit Impl(std::string command) : process(std::move(command)) {}
  std::mutex mu;
  detail::LineProcess process;
};

SubprocessNerProvider::SubprocessNerProvider(std::string command,
                                             std::chrono::milliseconds timeout)
    : impl_(std::make_unique<Impl>(std::move(command))), timeout_(timeout) {}

SubprocessNerProvider::~SubprocessNerProvider() = default;

std::vector<ExternalEntity> SubprocessNerProvider::annotate(const std::string& question) {
  std::lock_guard lock(impl_->mu);
  const auto reply = impl_->process.request(nlohmann::json(question).dump(), timeout_);
  return parse_ner_items(reply);
}

}  // namespace lexqa
