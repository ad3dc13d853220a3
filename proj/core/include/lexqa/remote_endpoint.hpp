#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "lexqa/kb.hpp"

namespace lexqa {

struct EndpointOptions {
  bool use_post = false;
  int max_in_flight = 12;
  int retries = 1;  // extra attempts after a transient failure
};

// SPARQL Protocol client (query parameter, SPARQL JSON results).
class RemoteEndpoint : public KnowledgeBase {
 public:
  // `url` like http://host:port/sparql.
  explicit RemoteEndpoint(std::string url, EndpointOptions opts = {});
  ~RemoteEndpoint() override;

  AnswerSet execute(const std::string& sparql,
                    std::chrono::milliseconds budget = kDefaultQueryBudget) override;
  std::string describe() const override { return "endpoint " + url_; }

 private:
  struct Impl;
  std::string url_;
  std::unique_ptr<Impl> impl_;
};

// Parses a SPARQL 1.1 JSON results document; for SELECT the first variable
// of head.vars becomes the value set.
AnswerSet parse_sparql_json(const std::string& body);

}  // namespace lexqa
