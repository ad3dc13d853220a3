#include "lexqa/remote_endpoint.hpp"

#include <regex>
#include <semaphore>

#include "httplib.h"
#include "json.hpp"
#include "lexqa/errors.hpp"

namespace lexqa {

namespace {

Term term_from_json(const nlohmann::json& j) {
  const auto type = j.value("type", "");
  const auto value = j.value("value", "");
  if (type == "uri") return Term::iri(value);
  if (type == "bnode") return Term::blank(value);
  if (type == "literal" || type == "typed-literal") {
    return Term::literal(value, j.value("datatype", ""), j.value("xml:lang", ""));
  }
  throw FormatError("unknown SPARQL JSON term type '" + type + "'");
}

}  // namespace

AnswerSet parse_sparql_json(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("SPARQL JSON results: ") + e.what());
  }
  if (j.contains("boolean")) return AnswerSet::boolean(j.at("boolean").get<bool>());
  if (!j.contains("results") || !j.contains("head")) {
    throw FormatError("SPARQL JSON results need 'head' and 'results'");
  }
  const auto& vars = j.at("head").value("vars", nlohmann::json::array());
  std::vector<Term> values;
  if (!vars.empty()) {
    const auto first = vars.at(0).get<std::string>();
    for (const auto& row : j.at("results").at("bindings")) {
      if (row.contains(first)) values.push_back(term_from_json(row.at(first)));
    }
  }
  return AnswerSet::bindings(std::move(values));
}

struct RemoteEndpoint::Impl {
  explicit Impl(int slots) : in_flight(slots) {}
  std::string scheme_host_port;
  std::string path;
  EndpointOptions opts;
  std::counting_semaphore<1024> in_flight;
};

RemoteEndpoint::RemoteEndpoint(std::string url, EndpointOptions opts)
    : url_(std::move(url)),
      impl_(std::make_unique<Impl>(std::clamp(opts.max_in_flight, 1, 1024))) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url_, m, kUrl)) {
    throw ValidationError("endpoint URL must be http(s)://host[:port]/path, got '" + url_ + "'");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (url_.rfind("https://", 0) == 0) {
    throw UnsupportedFeature("this build has no TLS support for '" + url_ + "'");
  }
#endif
  impl_->scheme_host_port = m[1];
  impl_->path = m[2].matched ? std::string(m[2]) : "/";
  impl_->opts = opts;
}

RemoteEndpoint::~RemoteEndpoint() = default;

AnswerSet RemoteEndpoint::execute(const std::string& sparql,
                                  std::chrono::milliseconds budget) {
  impl_->in_flight.acquire();
  struct Release {
    Impl* impl;
    ~Release() { impl->in_flight.release(); }
  } release{impl_.get()};

  const auto deadline = std::chrono::steady_clock::now() + budget;
  const int attempts = 1 + std::max(0, impl_->opts.retries);
  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      throw BudgetExceeded("query budget exhausted querying " + url_);
    }
    httplib::Client cli(impl_->scheme_host_port);
    const auto secs = left.count() / 1000;
    const auto usecs = (left.count() % 1000) * 1000;
    cli.set_connection_timeout(secs, usecs);
    cli.set_read_timeout(secs, usecs);
    cli.set_write_timeout(secs, usecs);
    const httplib::Headers headers = {
        {"Accept", "application/sparql-results+json"}};
    httplib::Params params = {{"query", sparql}};
    auto res = impl_->opts.use_post ? cli.Post(impl_->path, headers, params)
                                    : cli.Get(impl_->path, params, headers);
    if (!res) {
      last_error = "request to " + url_ + " failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "endpoint " + url_ + " returned HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw TransportError("endpoint " + url_ + " returned HTTP " + std::to_string(res->status),
                           attempt);
    }
    return parse_sparql_json(res->body);
  }
  if (std::chrono::steady_clock::now() >= deadline) {
    throw BudgetExceeded("query budget exhausted querying " + url_);
  }
  throw TransportError(last_error, attempts);
}

}  // namespace lexqa
