#include "campaign.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "lp/error.hpp"

namespace lp::cli {

namespace {

struct TrialResult {
  std::size_t checks = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  std::string digest;
  std::optional<Json> violation;
};

struct TrialContext {
  const CampaignConfig& config;
  const std::vector<CorrelationObservable>* observables;  // separable campaigns only
};

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<Effect> draw_effects(std::size_t m, std::size_t d, Rng& rng) {
  std::vector<Effect> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) out.push_back(random_effect(d, rng));
  return out;
}

ComplexMatrix column(const Vector& v) { return ComplexMatrix(v.size(), 1, v); }

Json base_dump(std::size_t trial, std::uint64_t seed, std::size_t d) {
  return Json{{"trial", trial}, {"trial_seed", seed}, {"dim", d}};
}

void record(TrialResult& r, double slack) {
  ++r.checks;
  r.min_slack = std::min(r.min_slack, slack);
}

// Bound checks on a random mixed state and on the oracle maximizer, where the
// left side is largest.
TrialResult bound_trial(const TrialContext& ctx, std::size_t trial, std::uint64_t seed, Rng& rng) {
  const CampaignConfig& cfg = ctx.config;
  const std::size_t d = cfg.dim.value_or(uniform(rng, 2, 8));
  const std::size_t m = cfg.kind == CampaignKind::pair ? 2 : cfg.m.value_or(uniform(rng, 2, 6));
  const BoundKind kind = cfg.kind == CampaignKind::pair ? BoundKind::pair_general : BoundKind::multi;
  const std::vector<Effect> effects = draw_effects(m, d, rng);
  const State states[] = {random_density(d, uniform(rng, 1, d), rng),
                          max_sum_oracle(effects).maximizer};

  TrialResult r;
  for (const State& rho : states) {
    const BoundReport raw = evaluate(kind, effects, rho);
    const BoundReport rep = make_report(kind, raw.lhs, raw.rhs, raw.inputs_digest, cfg.tol);
    r.digest += rep.inputs_digest;
    record(r, rep.slack);
    if (!rep.holds && !r.violation) {
      Json dump = base_dump(trial, seed, d);
      dump["effects"] = effects_to_json(effects).at("effects");
      dump["state"] = to_json(rho);
      dump["report"] = to_json(rep);
      r.violation = std::move(dump);
    }
  }
  return r;
}

TrialResult lemma1_trial(const TrialContext& ctx, std::size_t trial, std::uint64_t seed, Rng& rng) {
  const CampaignConfig& cfg = ctx.config;
  const std::size_t d = cfg.dim.value_or(uniform(rng, 2, 8));
  const std::size_t m = cfg.m.value_or(uniform(rng, 2, 6));
  const std::vector<Effect> effects = draw_effects(m, d, rng);
  const Vector omega = haar_random_vector(d, rng);
  const DilationResult dil = dilate_multi(effects);
  const Lemma1Result res = lemma1_check(dil.projections, dil.embed(omega), cfg.tol);

  std::vector<ComplexMatrix> operands;
  for (const auto& e : effects) operands.push_back(e.op());
  operands.push_back(column(omega));

  TrialResult r;
  r.digest = operand_digest("lemma1", operands);
  record(r, res.lambda - res.sum_probs);
  record(r, res.frob_bound - res.lambda);
  if (!res.holds || !res.frob_holds) {
    Json dump = base_dump(trial, seed, d);
    dump["effects"] = effects_to_json(effects).at("effects");
    dump["omega"] = to_json(column(omega));
    dump["report"] = to_json(res);
    r.violation = std::move(dump);
  }
  return r;
}

TrialResult dilation_trial(const TrialContext& ctx, std::size_t trial, std::uint64_t seed, Rng& rng) {
  const CampaignConfig& cfg = ctx.config;
  const std::size_t d = cfg.dim.value_or(uniform(rng, 2, 8));
  const std::size_t m = cfg.m.value_or(uniform(rng, 2, 6));
  const std::vector<Effect> effects = draw_effects(m, d, rng);
  const Vector omega = haar_random_vector(d, rng);

  std::vector<DilationResult> dilations = {dilate_multi(effects)};
  if (m == 2) dilations.push_back(dilate_pair(effects[0], effects[1]));

  std::vector<ComplexMatrix> operands;
  for (const auto& e : effects) operands.push_back(e.op());
  operands.push_back(column(omega));

  TrialResult r;
  r.digest = operand_digest("dilation", operands);
  double worst_idem = 0.0, worst_herm = 0.0, worst_prob = 0.0;
  for (const DilationResult& dil : dilations) {
    const Vector psi = dil.embed(omega);
    for (std::size_t k = 0; k < m; ++k) {
      const ComplexMatrix& p = dil.projections[k];
      const double idem = idempotency_residual(p);
      const double herm = hermiticity_residual(p);
      const double prob = std::abs(expectation(p, psi).real() - expectation(effects[k].op(), omega).real());
      record(r, cfg.tol - idem);
      record(r, cfg.tol - herm);
      record(r, cfg.prob_tol - prob);
      worst_idem = std::max(worst_idem, idem);
      worst_herm = std::max(worst_herm, herm);
      worst_prob = std::max(worst_prob, prob);
    }
  }
  if (worst_idem > cfg.tol || worst_herm > cfg.tol || worst_prob > cfg.prob_tol) {
    Json dump = base_dump(trial, seed, d);
    dump["effects"] = effects_to_json(effects).at("effects");
    dump["omega"] = to_json(column(omega));
    dump["report"] = Json{{"idempotency_residual", worst_idem},
                          {"hermiticity_residual", worst_herm},
                          {"probability_residual", worst_prob}};
    r.violation = std::move(dump);
  }
  return r;
}

TrialResult separable_trial(const TrialContext& ctx, std::size_t trial, std::uint64_t seed, Rng& rng) {
  const CampaignConfig& cfg = ctx.config;
  const std::size_t d = *cfg.dim;
  const State rho = random_separable(d, uniform(rng, 1, 4), rng);
  const SeparabilityReport rep = separability_statistic(rho, *ctx.observables);

  TrialResult r;
  const ComplexMatrix operands[] = {rho.rho()};
  r.digest = operand_digest("separable", operands);
  record(r, rep.rhs - rep.lhs);
  if (rep.lhs > rep.rhs + cfg.tol) {
    Json dump = base_dump(trial, seed, d);
    dump["state"] = to_json(rho);
    dump["report"] = to_json(rep);
    r.violation = std::move(dump);
  }
  return r;
}

TrialResult run_trial(const TrialContext& ctx, std::size_t trial) {
  const std::uint64_t seed = derive_seed(ctx.config.seed, trial);
  Rng rng(seed);
  try {
    switch (ctx.config.kind) {
      case CampaignKind::pair:
      case CampaignKind::multi:
        return bound_trial(ctx, trial, seed, rng);
      case CampaignKind::lemma1:
        return lemma1_trial(ctx, trial, seed, rng);
      case CampaignKind::dilation:
        return dilation_trial(ctx, trial, seed, rng);
      case CampaignKind::separable:
        return separable_trial(ctx, trial, seed, rng);
    }
  } catch (const std::exception& e) {
    // A library assertion tripping inside a trial counts as a failed check.
    TrialResult r;
    r.checks = 1;
    r.violation = base_dump(trial, seed, ctx.config.dim.value_or(0));
    (*r.violation)["error"] = e.what();
    if (const auto* le = dynamic_cast<const Error*>(&e)) (*r.violation)["error_kind"] = to_string(le->kind());
    return r;
  }
  return {};
}

}  // namespace

const char* to_string(CampaignKind kind) noexcept {
  switch (kind) {
    case CampaignKind::pair: return "verify pair";
    case CampaignKind::multi: return "verify multi";
    case CampaignKind::lemma1: return "verify lemma1";
    case CampaignKind::dilation: return "verify dilation";
    case CampaignKind::separable: return "sep campaign";
  }
  return "?";
}

CampaignSummary run_campaign(const CampaignConfig& config) {
  if (config.trials == 0) throw Error(ErrorKind::EmptyInput, "trials must be at least 1");
  if (!(config.tol > 0.0)) throw Error(ErrorKind::BadOperands, "tolerance must be positive");

  std::vector<CorrelationObservable> observables;
  if (config.kind == CampaignKind::separable) {
    if (!config.dim) throw Error(ErrorKind::BadDim, "sep campaign needs --dim");
    observables = correlation_observables(mub_for_dim(*config.dim));
  }
  const TrialContext ctx{config, &observables};

  std::vector<TrialResult> results(config.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.trials; i = next++) results[i] = run_trial(ctx, i);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(config.threads, config.trials));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CampaignSummary s;
  s.config = config;
  std::string digests;
  for (std::size_t i = 0; i < results.size(); ++i) {
    TrialResult& r = results[i];
    s.checks += r.checks;
    if (r.checks > 0 && std::isfinite(r.min_slack) && (!s.min_slack || r.min_slack < *s.min_slack)) {
      s.min_slack = r.min_slack;
      s.min_slack_trial = i;
    }
    digests += r.digest;
    digests += '\n';
    if (r.violation) {
      ++s.violations;
      s.dumps.push_back(std::move(*r.violation));
    }
  }
  s.digest = sha256_hex(digests);
  return s;
}

Json to_json(const CampaignSummary& s) {
  const CampaignConfig& c = s.config;
  Json j{{"command", to_string(c.kind)},
         {"trials", c.trials},
         {"seed", c.seed},
         {"tol", c.tol},
         {"dim", c.dim ? Json(*c.dim) : Json()},
         {"checks", s.checks},
         {"violations", s.violations},
         {"min_slack", s.min_slack ? Json(*s.min_slack) : Json()},
         {"min_slack_trial", s.min_slack ? Json(s.min_slack_trial) : Json()},
         {"digest", s.digest},
         {"dumps", s.dumps}};
  if (c.kind != CampaignKind::pair && c.kind != CampaignKind::separable) {
    j["m"] = c.m ? Json(*c.m) : Json();
  }
  if (c.kind == CampaignKind::dilation) j["prob_tol"] = c.prob_tol;
  return j;
}

}  // namespace lp::cli
