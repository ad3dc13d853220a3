#include "lexqa/comparator.hpp"

#include <cmath>
#include <mutex>

#include "json.hpp"
#include "lexqa/errors.hpp"
#include "line_process.hpp"

namespace lexqa {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

ComparatorOutput ComparatorOutput::from_raw(double raw_a, double raw_b) {
  return {raw_a, raw_b, logistic(raw_a), logistic(raw_b)};
}

double BaselineComparator::fitness(const CandidateQuery& c) const {
  const double count = static_cast<double>(c.result_count);
  return p_.score_weight * c.tree_score -
         p_.pattern_penalty * static_cast<double>(c.ir.patterns.size()) -
         p_.plausibility_weight * std::fabs(std::log1p(count) - std::log1p(p_.prior_count));
}

ComparatorOutput BaselineComparator::compare(const std::string&, const CandidateQuery& a,
                                             const CandidateQuery& b) {
  const double raw = fitness(a) - fitness(b);
  return ComparatorOutput::from_raw(raw, -raw);
}

struct SubprocessComparator::Impl {
  explicit Impl(std::string command) : process(std::move(command)) {}
  std::mutex mu;
  detail::LineProcess process;
};

SubprocessComparator::SubprocessComparator(std::string command,
                                           std::chrono::milliseconds timeout)
    : impl_(std::make_unique<Impl>(command)), timeout_(timeout), name_("process:" + command) {}

SubprocessComparator::~SubprocessComparator() = default;

ComparatorOutput SubprocessComparator::compare(const std::string& question,
                                               const CandidateQuery& a,
                                               const CandidateQuery& b) {
  const nlohmann::json request = {
      {"question", question},    {"queryA", a.query_text},   {"queryB", b.query_text},
      {"countA", a.result_count}, {"countB", b.result_count}, {"dudesA", a.dudes_text},
      {"dudesB", b.dudes_text}};
  std::string reply;
  {
    std::lock_guard lock(impl_->mu);
    reply = impl_->process.request(request.dump(), timeout_);
  }
  try {
    const auto j = nlohmann::json::parse(reply);
    return ComparatorOutput::from_raw(j.at("rawA").get<double>(), j.at("rawB").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("comparator reply '" + reply + "': " + e.what());
  }
}

}  // namespace lexqa
