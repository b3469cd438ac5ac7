#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lp/json_io.hpp"

namespace lp::cli {

enum class CampaignKind { pair, multi, lemma1, dilation, separable };

const char* to_string(CampaignKind kind) noexcept;

struct CampaignConfig {
  CampaignKind kind = CampaignKind::pair;
  std::optional<std::size_t> dim;  // random in [2, 8] when unset
  std::optional<std::size_t> m;    // random in [2, 6] when unset
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  double tol = kCheckTol;
  double prob_tol = 1e-10;  // dilation probability preservation
  unsigned threads = 1;
};

struct CampaignSummary {
  CampaignConfig config;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::optional<double> min_slack;
  std::size_t min_slack_trial = 0;
  std::string digest;  // SHA-256 over the per-trial operand digests, in trial order
  std::vector<Json> dumps;
};

/// Runs the trials on a pool of `config.threads` workers. Trial i draws from
/// derive_seed(config.seed, i) and results are reduced in trial order, so the
/// summary does not depend on the thread count.
CampaignSummary run_campaign(const CampaignConfig& config);

Json to_json(const CampaignSummary& s);

}  // namespace lp::cli
