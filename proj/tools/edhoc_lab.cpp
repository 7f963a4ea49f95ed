// Command-line front end: honest handshakes, named scenarios, randomized
// adversarial exploration, trace checking and schedule replay. Exit code
// contract: 0 every verdict passed, 1 at least one fail or finding
// (predicted ones included; the text marks them as findings), 2 usage or
// input errors.

#include <CLI11.hpp>

#include "edhoc/scenarios.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace edhoc;

namespace {

std::uint64_t env_seed_default() {
  if (const char* e = std::getenv("EDHOC_LAB_SEED"))
    return std::strtoull(e, nullptr, 10);
  return 0;
}

MethodPair require_method(const std::string& name) {
  auto m = parse_method(name);
  if (!m)
    throw CLI::ValidationError("--method",
                               "unknown method pair '" + name + "'");
  return *m;
}

void print_verdicts(const std::vector<Verdict>& vs) {
  for (const Verdict& v : vs) {
    std::string w;
    if (!v.witness.empty()) {
      w = " witness=[";
      for (std::size_t i = 0; i < v.witness.size(); ++i)
        w += (i ? "," : "") + std::to_string(v.witness[i]);
      w += "]";
    }
    std::printf("  [%s] %-44s%s\n",
                v.result == LemmaResult::Pass ? "pass" : "FAIL",
                v.lemma.c_str(), w.c_str());
    if (!v.note.empty()) std::printf("         note: %s\n", v.note.c_str());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_code_for(const std::vector<Verdict>& vs, std::size_t findings = 0) {
  return all_pass(vs) && findings == 0 ? 0 : 1;
}

int run_scenario_outcome(ScenarioOutcome o, const std::string& trace_out,
                         const std::string& schedule_out) {
  std::printf("scenario %s: %s\n", o.name.c_str(), o.description.c_str());
  print_verdicts(o.verdicts);
  for (const std::string& f : o.findings)
    std::printf("  FINDING: %s\n", f.c_str());
  std::printf("  events: %zu, sessions: %zu, %s\n", o.run.trace.events.size(),
              o.run.sessions.size(),
              o.as_expected ? "all verdicts as expected"
                            : "UNEXPECTED verdict drift");
  if (!trace_out.empty()) write_file(trace_out, trace_to_jsonl(o.run.trace));
  if (!schedule_out.empty())
    write_file(schedule_out, schedule_to_json(o.schedule));
  if (!o.as_expected) return 1;
  return exit_code_for(o.verdicts, o.findings.size());
}

int run_negotiation() {
  int rc = 0;
  {
    NegotiationScenario n = scenario_negotiation({2, 1, 0}, {0}, false);
    bool ok = n.first.agreed_suite == 0 && n.first.runs.size() == 2;
    std::printf("  [%s] preferences [2,1,0] vs {0}: agreed on %d after %zu "
                "runs\n",
                ok ? "pass" : "FAIL",
                n.first.agreed_suite.value_or(-1), n.first.runs.size());
    rc |= ok ? 0 : 1;
  }
  {
    NegotiationScenario n = scenario_negotiation({2, 1, 0}, {0}, true);
    bool ok = n.second.agreed_suite == 0 && n.second.runs.size() == 1;
    std::printf("  [%s] cached repeat meta-session: agreed on %d after %zu "
                "run(s)\n",
                ok ? "pass" : "FAIL",
                n.second.agreed_suite.value_or(-1), n.second.runs.size());
    rc |= ok ? 0 : 1;
  }
  {
    NegotiationScenario n = scenario_negotiation({2, 1}, {0}, false);
    bool ok = !n.first.agreed_suite && n.first.runs.size() == 1;
    std::printf("  [%s] empty intersection: negotiation-failed after %zu "
                "run(s)\n",
                ok ? "pass" : "FAIL", n.first.runs.size());
    rc |= ok ? 0 : 1;
  }
  return rc;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic protocol laboratory: handshakes, adversarial "
               "exploration, property checking"};
  app.require_subcommand(1);

  std::string method_name_arg = "sig-sig";
  std::uint64_t seed = env_seed_default();
  std::string trace_out, schedule_out, scenario_name, trace_in, schedule_in,
      lemma;
  bool mitigation = false, serial = false;
  std::size_t seeds = 500, max_sessions = 3, max_steps = 40;

  CLI::App* handshake = app.add_subcommand(
      "handshake", "honest three-message run, all four property checks");
  handshake->add_option("--method", method_name_arg,
                        "method pair, e.g. sig-stat");
  handshake->add_option("--seed", seed, "recorded in the schedule");
  handshake->add_option("--trace", trace_out, "write the trace (JSON lines)");
  handshake->add_option("--schedule", schedule_out, "write the schedule");

  CLI::App* scenario = app.add_subcommand("scenario", "named scenario script");
  scenario->add_option("name", scenario_name,
                       "honest | pfs | sk-independence | unintended-peer | "
                       "negotiation")
      ->required();
  scenario->add_option("--method", method_name_arg, "method pair");
  scenario->add_flag("--mitigation", mitigation,
                     "pin the expected peer credential");
  scenario->add_option("--seed", seed, "recorded in the schedule");
  scenario->add_option("--trace", trace_out, "write the trace");
  scenario->add_option("--schedule", schedule_out, "write the schedule");

  CLI::App* explore = app.add_subcommand(
      "explore", "randomized adversarial schedules, checked per trace");
  explore->add_option("--method", method_name_arg, "method pair")->required();
  explore->add_option("--seeds", seeds, "number of seeded schedules");
  explore->add_option("--seed", seed, "base seed (EDHOC_LAB_SEED overrides "
                                      "the default)");
  explore->add_option("--max-sessions", max_sessions, "session bound");
  explore->add_option("--max-steps", max_steps, "schedule step bound");
  explore->add_flag("--serial", serial, "use the serial reference explorer");

  CLI::App* check = app.add_subcommand("check", "check a recorded trace");
  check->add_option("--trace", trace_in, "trace file (JSON lines)")
      ->required();
  check->add_option("--lemma", lemma,
                    "run one checker by name instead of all four");

  CLI::App* replay = app.add_subcommand("replay", "re-run a schedule");
  replay->add_option("--schedule", schedule_in, "schedule file")->required();
  replay->add_option("--trace", trace_out, "write the reproduced trace");
  replay->add_option("--max-sessions", max_sessions,
                     "session bound (raise for wide schedules)");
  replay->add_option("--max-steps", max_steps, "schedule step bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*handshake) {
      const MethodPair m = require_method(method_name_arg);
      Schedule s;
      s.seed = seed;
      s.steps = {
          ActNewSession{"responder", "B", "", "", {0}, false},
          ActNewSession{"initiator", "A", "B", method_name(m), {0}, false},
          ActDeliver{0, 1},
          ActDeliver{1, 2},
          ActDeliver{2, 1},
      };
      RunResult rr = run_schedule(s);
      std::printf("handshake %s: %zu events\n", method_name(m).c_str(),
                  rr.trace.events.size());
      auto verdicts = check_all(rr.trace);
      print_verdicts(verdicts);
      if (!trace_out.empty()) write_file(trace_out, trace_to_jsonl(rr.trace));
      if (!schedule_out.empty())
        write_file(schedule_out, schedule_to_json(s));
      return exit_code_for(verdicts);
    }

    if (*scenario) {
      if (scenario_name == "honest")
        return run_scenario_outcome(
            scenario_honest(require_method(method_name_arg)), trace_out,
            schedule_out);
      if (scenario_name == "pfs")
        return run_scenario_outcome(
            scenario_pfs(require_method(method_name_arg)), trace_out,
            schedule_out);
      if (scenario_name == "sk-independence")
        return run_scenario_outcome(
            scenario_sk_independence(require_method(method_name_arg)),
            trace_out, schedule_out);
      if (scenario_name == "unintended-peer")
        return run_scenario_outcome(scenario_unintended_peer(mitigation),
                                    trace_out, schedule_out);
      if (scenario_name == "negotiation") {
        std::printf("scenario negotiation:\n");
        return run_negotiation();
      }
      std::fprintf(stderr, "unknown scenario '%s'\n", scenario_name.c_str());
      return 2;
    }

    if (*explore) {
      const MethodPair m = require_method(method_name_arg);
      const Bounds bounds{max_sessions, max_steps};
      auto outcomes = serial ? explore_serial(m, seeds, bounds, seed)
                             : explore_parallel(m, seeds, bounds, seed);
      std::size_t injected = 0, revealed = 0, completed = 0, failures = 0;
      for (const ExploreOutcome& oc : outcomes) {
        bool inj = false, rev = false, done = false;
        for (const Event& e : oc.trace.events) {
          inj |= e.kind == EventKind::Injected;
          rev |= e.kind == EventKind::LTKRev || e.kind == EventKind::SKRev;
          done |= e.kind == EventKind::CommitR;
        }
        injected += inj;
        revealed += rev;
        completed += done;
        for (const Verdict& v : check_all(oc.trace)) {
          if (v.result == LemmaResult::Pass) continue;
          ++failures;
          std::printf("seed %llu: FAIL %s (%s)\n",
                      static_cast<unsigned long long>(oc.seed),
                      v.lemma.c_str(), v.note.c_str());
          std::printf("  schedule: %s\n",
                      schedule_to_json(oc.schedule).c_str());
        }
      }
      std::printf("explored %zu schedules (%s, base seed %llu): "
                  "%zu injected, %zu with reveals, %zu completed, "
                  "%zu property failures\n",
                  outcomes.size(), method_name(m).c_str(),
                  static_cast<unsigned long long>(seed), injected, revealed,
                  completed, failures);
      return failures == 0 ? 0 : 1;
    }

    if (*check) {
      Trace t = trace_from_jsonl_string(read_file(trace_in));
      std::vector<Verdict> verdicts;
      if (lemma.empty()) {
        verdicts = check_all(t);
      } else {
        if (lemma == "injective-agreement-initiator")
          verdicts.push_back(check_inj_agreement_for_I(t));
        else if (lemma == "injective-agreement-responder")
          verdicts.push_back(check_inj_agreement_for_R(t));
        else if (lemma == "implicit-auth-initiator")
          verdicts.push_back(check_implicit_auth_for_I(t));
        else if (lemma == "session-key-pfs-secrecy")
          verdicts.push_back(check_secrecy_pfs(t));
        else if (lemma == "injective-agreement-initiator-full-key")
          verdicts.push_back(check_inj_agreement_for_I_on_full_sk(t));
        else {
          std::fprintf(stderr, "unknown lemma '%s'\n", lemma.c_str());
          return 2;
        }
      }
      std::printf("checked %s: %zu events\n", trace_in.c_str(),
                  t.events.size());
      print_verdicts(verdicts);
      return exit_code_for(verdicts);
    }

    if (*replay) {
      Schedule s = schedule_from_json(read_file(schedule_in));
      RunResult rr = run_schedule(s, Bounds{max_sessions, max_steps});
      std::printf("replayed %s: %zu steps, %zu events, %zu sessions\n",
                  schedule_in.c_str(), s.steps.size(),
                  rr.trace.events.size(), rr.sessions.size());
      auto verdicts = check_all(rr.trace);
      print_verdicts(verdicts);
      if (!trace_out.empty()) write_file(trace_out, trace_to_jsonl(rr.trace));
      return exit_code_for(verdicts);
    }
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
