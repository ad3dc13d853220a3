#include "lexqa/dataset.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lexqa/errors.hpp"
#include "lexqa/remote_endpoint.hpp"

namespace lexqa {

DatasetLoad parse_dataset(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("dataset: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("questions") || !doc.at("questions").is_array()) {
    throw FormatError("dataset needs a 'questions' array");
  }
  DatasetLoad out;
  std::set<std::string> ids;
  std::size_t position = 0;
  for (const auto& q : doc.at("questions")) {
    ++position;
    BenchQuestion bq;
    if (q.contains("id")) {
      bq.id = q.at("id").is_string() ? q.at("id").get<std::string>() : q.at("id").dump();
    } else {
      bq.id = std::to_string(position);
    }
    const std::string where = "question " + bq.id;
    if (!ids.insert(bq.id).second) throw ValidationError(where + ": duplicate id");
    for (const auto& s : q.value("question", nlohmann::json::array())) {
      if (s.value("language", "") == "en" && s.contains("string")) {
        bq.text = s.at("string").get<std::string>();
        break;
      }
    }
    if (bq.text.empty()) {
      out.warnings.push_back(where + ": no English question string");
      continue;
    }
    if (q.contains("query") && q.at("query").contains("sparql")) {
      bq.gold_query = q.at("query").at("sparql").get<std::string>();
    }
    const auto answers = q.value("answers", nlohmann::json::array());
    if (!answers.is_array() || answers.empty()) {
      out.warnings.push_back(where + ": no gold answers");
      continue;
    }
    try {
      bq.gold_answers = parse_sparql_json(answers.at(0).dump());
    } catch (const FormatError& e) {
      out.warnings.push_back(where + ": unreadable answers (" + e.what() + ")");
      continue;
    }
    out.questions.push_back(std::move(bq));
  }
  return out;
}

DatasetLoad load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str());
}

}  // namespace lexqa
