#include "lp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "campaign.hpp"
#include "lp/error.hpp"

namespace lp::cli {

namespace {

struct Globals {
  std::uint64_t seed = 1;
  double tol = kCheckTol;
  bool json = false;
  std::string out;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_out(const Globals& g, const Json& doc) {
  if (g.out.empty()) return;
  std::ofstream f(g.out);
  if (!f) throw Error(ErrorKind::Parse, "cannot write " + g.out);
  f << doc.dump(2) << '\n';
}

// Prints either the JSON document or the human text, and mirrors the JSON to
// --out when given.
void emit(const Globals& g, std::ostream& out, const Json& doc, const std::string& text) {
  if (g.json) {
    out << doc.dump(2) << '\n';
  } else {
    out << text;
  }
  write_out(g, doc);
}

BoundReport with_tol(const BoundReport& r, double tol) {
  return make_report(r.kind, r.lhs, r.rhs, r.inputs_digest, tol);
}

std::string report_line(const BoundReport& r) {
  return std::string(to_string(r.kind)) + ": lhs " + num(r.lhs) + "  rhs " + num(r.rhs) +
         "  slack " + num(r.slack) + "  " + (r.holds ? "holds" : "VIOLATED") + "\n";
}

// --- campaigns -------------------------------------------------------------

int cmd_campaign(const Globals& g, CampaignConfig cfg, std::ostream& out) {
  cfg.seed = g.seed;
  cfg.tol = g.tol;
  cfg.threads = g.threads;
  const CampaignSummary s = run_campaign(cfg);
  std::string text = std::string(to_string(cfg.kind)) + ": " + std::to_string(cfg.trials) +
                     " trials, " + std::to_string(s.checks) + " checks, " +
                     std::to_string(s.violations) + " violations\n";
  if (s.min_slack) {
    text += "min slack " + num(*s.min_slack) + " (trial " + std::to_string(s.min_slack_trial) + ")\n";
  }
  text += "digest " + s.digest + "\n";
  emit(g, out, to_json(s), text);
  return s.violations == 0 ? kOk : kViolation;
}

// --- one-shot commands -----------------------------------------------------

int cmd_bound(const Globals& g, BoundKind kind, const std::string& in, const std::string& state_path,
              std::ostream& out) {
  const Json doc = read_json_file(in);
  const std::vector<Effect> effects = effects_from_json(doc);
  std::string source;
  const State rho = [&] {
    if (!state_path.empty()) {
      source = "file";
      return state_from_json(read_json_file(state_path));
    }
    if (doc.is_object() && doc.contains("state")) {
      source = "input";
      return state_from_json(doc.at("state"));
    }
    source = "oracle";
    return max_sum_oracle(effects).maximizer;
  }();
  const BoundReport r = with_tol(evaluate(kind, effects, rho), g.tol);
  Json j = to_json(r);
  j["state_source"] = source;
  emit(g, out, j, report_line(r) + "state: " + source + "\n");
  return r.holds ? kOk : kViolation;
}

int cmd_mub(const Globals& g, bool build, std::size_t dim, const std::string& in, std::ostream& out) {
  const MubFamily f = in.empty() ? mub_for_dim(dim) : mub_family_from_json(read_json_file(in));
  if (f.dim != dim) {
    throw Error(ErrorKind::DimMismatch,
                "family has dim " + std::to_string(f.dim) + ", expected " + std::to_string(dim));
  }
  const double unbiased = verify_mub(f);
  const double unitary = unitarity_residual(f);
  const bool ok = unbiased <= g.tol && unitary <= g.tol;
  const std::string text = "dim " + std::to_string(f.dim) + ", " + std::to_string(f.bases.size()) +
                           " bases\nmax | |<e|f>| - 1/sqrt(D) | = " + num(unbiased) +
                           "\nunitarity residual = " + num(unitary) + "\n" +
                           (ok ? "ok\n" : "NOT a MUB family\n");
  Json j = build ? to_json(f) : Json{{"dim", f.dim}, {"bases", f.bases.size()}};
  j["unbiasedness_residual"] = unbiased;
  j["unitarity_residual"] = unitary;
  j["ok"] = ok;
  emit(g, out, j, text);
  return ok ? kOk : kViolation;
}

int cmd_mub_bound(const Globals& g, std::size_t dim, std::vector<std::size_t> picks, std::ostream& out) {
  const MubFamily f = mub_for_dim(dim);
  if (picks.empty()) picks.assign(f.bases.size(), 0);
  const std::vector<Effect> effects = mub_projector_picks(f, picks);
  const OracleResult oracle = max_sum_oracle(effects);
  const BoundReport r = with_tol(evaluate(BoundKind::mub, effects, oracle.maximizer), g.tol);
  Json j = to_json(r);
  j["dim"] = dim;
  j["picks"] = picks;
  emit(g, out, j, "dim " + std::to_string(dim) + " (oracle state)\n" + report_line(r));
  return r.holds ? kOk : kViolation;
}

int cmd_tightness(const Globals& g, const std::string& in, std::ostream& out) {
  const std::vector<Effect> effects = effects_from_json(read_json_file(in));
  const OracleResult oracle = max_sum_oracle(effects);
  const double multi = multi_bound(effects);
  Json j{{"m", effects.size()},
         {"dim", common_dim(effects)},
         {"oracle", oracle.value},
         {"multi_bound", multi},
         {"multi_gap", multi - oracle.value}};
  std::string text = "m " + std::to_string(effects.size()) + ", dim " +
                     std::to_string(common_dim(effects)) + "\noracle      " + num(oracle.value) +
                     "\nmulti_bound " + num(multi) + "  gap " + num(multi - oracle.value) + "\n";
  bool ok = oracle.value <= multi + g.tol;
  if (effects.size() == 2) {
    const double pair = pair_bound(effects[0], effects[1]);
    j["pair_bound"] = pair;
    j["pair_gap"] = pair - oracle.value;
    text += "pair_bound  " + num(pair) + "  gap " + num(pair - oracle.value) + "\n";
    ok = ok && oracle.value <= pair + g.tol;
  }
  j["holds"] = ok;
  emit(g, out, j, text);
  return ok ? kOk : kViolation;
}

int cmd_sep_check(const Globals& g, const std::string& in, std::size_t dim, std::ostream& out) {
  const State rho = state_from_json(read_json_file(in));
  const SeparabilityReport r = separability_statistic(rho, mub_for_dim(dim));
  std::string text = "dim " + std::to_string(dim) + "\n";
  for (std::size_t i = 0; i < r.per_basis_m_inf.size(); ++i) {
    text += "  basis " + std::to_string(i) + ": M_inf " + num(r.per_basis_m_inf[i]) + "\n";
  }
  text += "lhs " + num(r.lhs) + "  rhs " + num(r.rhs) + "\nverdict " + to_string(r.verdict) + "\n";
  emit(g, out, to_json(r), text);
  // Detecting entanglement is a result, not a failed check.
  return kOk;
}

int cmd_compare(const Globals& g, std::vector<std::size_t> dims, std::ostream& out) {
  if (dims.empty()) dims = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  Json rows = Json::array();
  std::string text = "     D   mub_bound  trivial_combination  mub_better\n";
  for (std::size_t d : dims) {
    const double mub = mub_bound(d + 1, d);
    const double triv = trivial_combination_bound(d);
    rows.push_back({{"dim", d}, {"mub_bound", mub}, {"trivial_combination", triv}, {"mub_better", mub < triv}});
    char line[96];
    std::snprintf(line, sizeof line, "%6zu  %10.7f  %19.7f  %s\n", d, mub, triv, mub < triv ? "yes" : "no");
    text += line;
  }
  emit(g, out, Json{{"rows", rows}}, text);
  return kOk;
}

void error_out(const Globals& g, std::ostream& err, const std::string& kind, const std::string& msg) {
  if (g.json) {
    err << Json{{"error", kind}, {"message", msg}}.dump() << '\n';
  } else {
    err << "error: " << msg << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Landau-Pollak type uncertainty bounds for POVMs", "lp"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", g.seed, "Base seed; trial i uses an independent derived stream");
  app.add_option("--tol", g.tol, "Check tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "Write a single JSON document to stdout");
  app.add_option("--out", g.out, "Also write the JSON report (with violation dumps) here");
  app.add_option("--threads", g.threads, "Worker threads for campaigns")->check(CLI::Range(1u, 1024u));

  auto sub = [](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  // verify pair|multi|lemma1|dilation
  CLI::App* verify = sub(&app, "verify", "Randomized verification campaigns");
  verify->require_subcommand(1);
  struct VerifyCmd {
    CampaignKind kind;
    CLI::App* app;
    CampaignConfig cfg;
  };
  std::vector<VerifyCmd> verify_cmds;
  verify_cmds.reserve(4);
  for (auto [kind, name, help] : {std::tuple{CampaignKind::pair, "pair", "Pair bound on random effects"},
                                  std::tuple{CampaignKind::multi, "multi", "Multi-effect bound"},
                                  std::tuple{CampaignKind::lemma1, "lemma1", "Gram-matrix chain on dilations"},
                                  std::tuple{CampaignKind::dilation, "dilation", "Dilation soundness"}}) {
    verify_cmds.push_back({kind, sub(verify, name, help), {}});
    VerifyCmd& v = verify_cmds.back();
    v.cfg.kind = kind;
    v.app->add_option("--dim", v.cfg.dim, "Hilbert space dimension (default: random in 2..8)")
        ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    if (kind != CampaignKind::pair) {
      v.app->add_option("--m", v.cfg.m, "Number of effects (default: random in 2..6)")
          ->check(CLI::Range(std::size_t{1}, std::size_t{32}));
    }
    v.app->add_option("--trials", v.cfg.trials, "Number of trials")->check(CLI::PositiveNumber);
    if (kind == CampaignKind::dilation) {
      v.app->add_option("--prob-tol", v.cfg.prob_tol, "Probability preservation tolerance")
          ->check(CLI::PositiveNumber);
    }
  }

  // bound pair|multi
  CLI::App* bound = sub(&app, "bound", "Evaluate a bound on effects read from JSON");
  bound->require_subcommand(1);
  std::string bound_in, bound_state;
  CLI::App* bound_pair = sub(bound, "pair", "Pair bound 1 + ||sqrt(A) sqrt(B)||");
  CLI::App* bound_multi = sub(bound, "multi", "Multi-effect bound");
  for (CLI::App* b : {bound_pair, bound_multi}) {
    b->add_option("--in", bound_in, "POVM or effect list JSON")->required()->check(CLI::ExistingFile);
    b->add_option("--state", bound_state, "State JSON (default: the oracle maximizer)")
        ->check(CLI::ExistingFile);
  }

  // mub build|check
  CLI::App* mub = sub(&app, "mub", "Construct or check a complete MUB family");
  mub->require_subcommand(1);
  std::size_t mub_dim = 0;
  std::string mub_in;
  CLI::App* mub_build = sub(mub, "build", "Construct the family for a prime dimension");
  CLI::App* mub_check = sub(mub, "check", "Check unbiasedness and unitarity");
  for (CLI::App* m : {mub_build, mub_check}) m->add_option("--dim", mub_dim, "Prime dimension")->required();
  mub_check->add_option("--in", mub_in, "Family JSON (default: the built-in construction)")
      ->check(CLI::ExistingFile);

  CLI::App* mub_bound_cmd = sub(&app, "mub-bound", "Oracle value against the MUB bound");
  std::size_t mb_dim = 0;
  std::vector<std::size_t> mb_picks;
  mub_bound_cmd->add_option("--dim", mb_dim, "Prime dimension")->required();
  mub_bound_cmd->add_option("--picks", mb_picks, "Basis vector index per basis (default: all 0)")
      ->delimiter(',');

  CLI::App* tight = sub(&app, "tightness", "Gap between the oracle and the bounds");
  std::string tight_in;
  tight->add_option("--in", tight_in, "Effect list JSON")->required()->check(CLI::ExistingFile);

  // sep check|campaign
  CLI::App* sep = sub(&app, "sep", "Bipartite separability criterion");
  sep->require_subcommand(1);
  std::string sep_in;
  std::size_t sep_dim = 0;
  CLI::App* sep_check = sub(sep, "check", "Evaluate the criterion on a state");
  sep_check->add_option("--in", sep_in, "State JSON on C^D x C^D")->required()->check(CLI::ExistingFile);
  sep_check->add_option("--dim", sep_dim, "Local prime dimension D")->required();
  CLI::App* sep_campaign = sub(sep, "campaign", "Random separable states never exceed the bound");
  CampaignConfig sep_cfg;
  sep_cfg.kind = CampaignKind::separable;
  std::size_t sep_campaign_dim = 0;
  sep_campaign->add_option("--dim", sep_campaign_dim, "Local prime dimension D")->required();
  sep_campaign->add_option("--trials", sep_cfg.trials, "Number of states")->check(CLI::PositiveNumber);

  CLI::App* compare = sub(&app, "compare", "MUB bound against the trivial combination");
  std::vector<std::size_t> compare_dims;
  compare->add_option("--dim", compare_dims, "Dimensions (default: primes up to 31)")
      ->delimiter(',')
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    app.exit(e, err, err);
    return kUsage;
  }

  try {
    for (const VerifyCmd& v : verify_cmds) {
      if (v.app->parsed()) return cmd_campaign(g, v.cfg, out);
    }
    if (bound_pair->parsed()) return cmd_bound(g, BoundKind::pair_general, bound_in, bound_state, out);
    if (bound_multi->parsed()) return cmd_bound(g, BoundKind::multi, bound_in, bound_state, out);
    if (mub_build->parsed()) return cmd_mub(g, true, mub_dim, "", out);
    if (mub_check->parsed()) return cmd_mub(g, false, mub_dim, mub_in, out);
    if (mub_bound_cmd->parsed()) return cmd_mub_bound(g, mb_dim, mb_picks, out);
    if (tight->parsed()) return cmd_tightness(g, tight_in, out);
    if (sep_check->parsed()) return cmd_sep_check(g, sep_in, sep_dim, out);
    if (sep_campaign->parsed()) {
      sep_cfg.dim = sep_campaign_dim;
      return cmd_campaign(g, sep_cfg, out);
    }
    if (compare->parsed()) return cmd_compare(g, compare_dims, out);
  } catch (const Error& e) {
    error_out(g, err, to_string(e.kind()), e.what());
    return kUsage;
  } catch (const std::exception& e) {
    error_out(g, err, "internal", e.what());
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace lp::cli
