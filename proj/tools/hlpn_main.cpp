// Command-line front end: mission compilation, Monte-Carlo plan search, the
// explicit-state oracle, DOT export and trace checking.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hlpn/dot_export.hpp"
#include "hlpn/errors.hpp"
#include "hlpn/gef.hpp"
#include "hlpn/json_io.hpp"
#include "hlpn/ltl.hpp"
#include "hlpn/simulate.hpp"
#include "hlpn/verify.hpp"

namespace {

using hlpn::json;

struct cli_options {
  std::string env_path;
  std::string robots_path;
  std::string spec_path;
  std::string out_path;
  std::string dot_path;
  std::string out_dir = ".";
  std::string trace_path;
  int runs = 100;
  int max_steps = 100;
  std::uint64_t seed = 0;
  std::string metric = "total-moves";
  int parallel = 1;
};

// HLPN_CONFIG may point at a JSON object of flag defaults; explicit flags
// always win because the config is applied before parsing.
void apply_config_defaults(cli_options& opt) {
  const char* path = std::getenv("HLPN_CONFIG");
  if (!path || !*path) return;
  json cfg = hlpn::load_json_file(path);
  if (cfg.contains("env")) opt.env_path = cfg["env"].get<std::string>();
  if (cfg.contains("robots")) opt.robots_path = cfg["robots"].get<std::string>();
  if (cfg.contains("spec")) opt.spec_path = cfg["spec"].get<std::string>();
  if (cfg.contains("out")) opt.out_path = cfg["out"].get<std::string>();
  if (cfg.contains("runs")) opt.runs = cfg["runs"].get<int>();
  if (cfg.contains("max_steps")) opt.max_steps = cfg["max_steps"].get<int>();
  if (cfg.contains("seed")) opt.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("metric")) opt.metric = cfg["metric"].get<std::string>();
  if (cfg.contains("parallel")) opt.parallel = cfg["parallel"].get<int>();
}

hlpn::environment load_env_checked(const std::string& path) {
  hlpn::environment env = hlpn::load_environment_file(path);
  auto violations = env.validate();
  if (!violations.empty()) {
    for (const auto& v : violations) {
      std::cerr << path << ": [" << v.code << "] " << v.message << "\n";
    }
    throw hlpn::io_error("environment failed validation: " + path);
  }
  return env;
}

std::vector<hlpn::robot_opn> load_robots_checked(const std::string& path,
                                                 const hlpn::environment& env) {
  auto specs = hlpn::load_robots_file(path);
  auto robots = hlpn::build_robots(env, specs);
  if (static_cast<int>(robots.size()) != env.team_size()) {
    std::cerr << "note: " << robots.size() << " robots loaded but team_size is "
              << env.team_size() << "\n";
  }
  return robots;
}

hlpn::spec_input load_spec_checked(const std::string& path,
                                   const hlpn::environment& env) {
  hlpn::spec_input spec = hlpn::load_spec_file(path, env);
  auto violations = spec.net.validate();
  if (!violations.empty()) {
    for (const auto& v : violations) {
      std::cerr << path << ": [" << v.code << "] " << v.message << "\n";
    }
    throw hlpn::io_error("mission net failed validation: " + path);
  }
  for (const auto& w : spec.net.warnings()) {
    std::cerr << "note: " << path << ": " << w << "\n";
  }
  return spec;
}

std::string conj_label(const hlpn::guard& g) {
  if (g.is_true()) return "1";
  std::string out;
  for (const auto& lit : g.literals()) {
    if (!out.empty()) out += "∧";
    if (lit.negated) out += "!";
    out += lit.prop;
  }
  return out;
}

// The tuple notation used in mission write-ups: one tuple per synchronized
// step, one entry per robot (destination labels, "-" for staying put).
std::string plan_tuples(const hlpn::trace& t,
                        const std::vector<hlpn::robot_opn>& robots) {
  std::ostringstream out;
  out << "⟨";
  for (std::size_t r = 0; r < t.robot_ids.size(); ++r) {
    if (r) out << ",";
    out << t.robot_ids[r];
  }
  out << "⟩ = ";
  for (std::size_t s = 0; s < t.steps.size(); ++s) {
    if (s) out << ", ";
    out << "⟨";
    for (std::size_t r = 0; r < t.robot_ids.size(); ++r) {
      if (r) out << ",";
      std::string entry = "-";
      for (const auto& [robot, move_id] : t.steps[s].moves) {
        if (robot != t.robot_ids[r]) continue;
        const auto& net = robots[r];
        int m = net.move_index(move_id);
        entry = conj_label(net.place_labels()[net.moves()[m].to]);
      }
      out << entry;
    }
    out << "⟩";
  }
  return out.str();
}

bool initial_observation_is_free_only(const hlpn::environment& env,
                                      const std::vector<hlpn::robot_opn>& robots) {
  for (const auto& r : robots) {
    if (r.initial_cell() != env.free_cell()) return false;
  }
  return true;
}

int cmd_plan(const cli_options& opt) {
  auto env = load_env_checked(opt.env_path);
  auto robots = load_robots_checked(opt.robots_path, env);
  auto spec = load_spec_checked(opt.spec_path, env);
  auto metric = hlpn::metric_from_string(opt.metric);
  if (!metric) throw hlpn::io_error("unknown metric: " + opt.metric);
  if (spec.formula && !initial_observation_is_free_only(env, robots)) {
    std::cerr << "note: mission was compiled from a formula assuming the team "
                 "starts in free space, but some robot does not\n";
  }

  hlpn::sim_params params;
  params.max_steps = opt.max_steps;
  auto result = hlpn::run_batch(env, robots, spec.net, opt.seed, opt.runs,
                                params, *metric, opt.parallel);

  if (!opt.out_path.empty()) {
    std::ostringstream lines;
    for (const auto& t : result.traces) {
      lines << hlpn::to_json(t, *metric).dump() << "\n";
    }
    hlpn::write_text_file(opt.out_path, lines.str());
  }

  std::cout << hlpn::to_json(result.summary, true).dump() << "\n";
  if (result.best) {
    std::cout << "best: " << plan_tuples(*result.best, robots) << "\n";
    // Belt and braces before reporting success: the best plan must survive
    // the independent checks.
    bool verified = hlpn::replay(*result.best, env, robots, spec.net);
    if (verified && spec.formula) {
      std::vector<hlpn::bag> obs;
      hlpn::hlpn_state state(env, robots, spec.net);
      obs.push_back(state.occupancy());
      for (const auto& s : result.best->steps) obs.push_back(s.occupancy);
      verified = hlpn::eval_ltl(*spec.formula, obs);
    }
    if (!verified) {
      std::cerr << "error: best trace failed verification\n";
      return 1;
    }
    return 0;
  }
  return 2;
}

int cmd_compile_spec(const cli_options& opt) {
  auto env = load_env_checked(opt.env_path);
  auto spec = load_spec_checked(opt.spec_path, env);
  json out = hlpn::to_json(spec.net);
  if (opt.out_path.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    hlpn::write_text_file(opt.out_path, out.dump(2) + "\n");
  }
  if (!opt.dot_path.empty()) {
    hlpn::write_text_file(opt.dot_path, hlpn::to_dot(spec.net));
  }
  return 0;
}

int cmd_oracle(const cli_options& opt) {
  auto env = load_env_checked(opt.env_path);
  auto robots = load_robots_checked(opt.robots_path, env);
  auto spec = load_spec_checked(opt.spec_path, env);
  auto metric = hlpn::metric_from_string(opt.metric);
  if (!metric) throw hlpn::io_error("unknown metric: " + opt.metric);

  auto result = hlpn::bfs_optimum(env, robots, spec.net, *metric);

  json witness = json::array();
  for (const auto& s : result.witness) {
    json moves = json::object();
    for (const auto& [robot, move] : s.moves) moves[robot] = move;
    witness.push_back({{"spec_t", s.spec_transition}, {"moves", moves}});
  }
  json out{{"metric", hlpn::to_string(*metric)},
           {"reachable", result.reachable},
           {"optimum", result.optimum},
           {"witness", witness},
           {"witness_sync_steps", result.witness_sync_steps},
           {"witness_total_moves", result.witness_total_moves},
           {"states_explored", result.states_explored}};
  std::cout << out.dump() << "\n";
  return result.reachable ? 0 : 2;
}

int cmd_export_dot(const cli_options& opt) {
  auto env = load_env_checked(opt.env_path);
  auto robots = load_robots_checked(opt.robots_path, env);
  auto spec = load_spec_checked(opt.spec_path, env);

  namespace fs = std::filesystem;
  fs::create_directories(opt.out_dir);
  auto emit = [&](const std::string& name, const std::string& text) {
    const std::string path = (fs::path(opt.out_dir) / name).string();
    hlpn::write_text_file(path, text);
    std::cout << path << "\n";
  };
  emit("system.dot", hlpn::system_net_dot(static_cast<int>(robots.size())));
  emit("spec.dot", hlpn::to_dot(spec.net));
  for (const auto& r : robots) {
    emit("robot_" + r.id() + ".dot", hlpn::to_dot(r));
  }
  return 0;
}

int cmd_check_trace(const cli_options& opt) {
  auto env = load_env_checked(opt.env_path);
  auto robots = load_robots_checked(opt.robots_path, env);
  auto spec = load_spec_checked(opt.spec_path, env);
  auto traces = hlpn::load_trace_file(opt.trace_path);

  bool all_ok = true;
  for (const auto& t : traces) {
    bool fired_ok = true;
    bool final_state = false;
    std::vector<hlpn::bag> obs;
    try {
      hlpn::hlpn_state state(env, robots, spec.net);
      obs.push_back(state.occupancy());
      for (const auto& s : t.steps) {
        hlpn::binding b = hlpn::make_binding(state, s.spec_transition, s.moves);
        if (!hlpn::gef(state, b, env)) {
          fired_ok = false;
          break;
        }
        state.fire(b);
        obs.push_back(state.occupancy());
      }
      final_state = state.is_final();
    } catch (const hlpn::error&) {
      fired_ok = false;
    }

    const bool claimed_final = t.outcome == "reached-final";
    bool replay_ok = fired_ok && (claimed_final == final_state);
    bool eval_ok = true;
    if (spec.formula && claimed_final) {
      eval_ok = fired_ok && hlpn::eval_ltl(*spec.formula, obs);
    }
    all_ok = all_ok && replay_ok && eval_ok;

    json line{{"run", t.run}, {"replay", replay_ok}};
    if (spec.formula && claimed_final) line["eval_ltl"] = eval_ok;
    std::cout << line.dump() << "\n";
  }
  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  cli_options opt;
  try {
    apply_config_defaults(opt);
  } catch (const hlpn::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App app{"Executable engine for robot-team mission nets: models each "
               "robot and the global mission as object Petri nets, "
               "synchronizes them through the global enabling function, and "
               "searches for mission-satisfying plans by seeded simulation."};
  app.require_subcommand(1);

  auto add_model_flags = [&opt](CLI::App* sub, bool robots) {
    sub->add_option("--env", opt.env_path, "environment JSON file")
        ->required(opt.env_path.empty());
    if (robots) {
      sub->add_option("--robots", opt.robots_path, "robot team JSON file")
          ->required(opt.robots_path.empty());
    }
    sub->add_option("--spec", opt.spec_path,
                    "mission file (net JSON or {\"ltl\": ...})")
        ->required(opt.spec_path.empty());
  };

  CLI::App* plan = app.add_subcommand(
      "plan", "Monte-Carlo plan search; prints a summary and the best plan");
  add_model_flags(plan, true);
  plan->add_option("--runs", opt.runs, "number of simulation runs");
  plan->add_option("--max-steps", opt.max_steps, "step limit per run");
  plan->add_option("--seed", opt.seed, "master seed");
  plan->add_option("--metric", opt.metric, "total-moves | sync-steps");
  plan->add_option("--out", opt.out_path, "write per-run traces (JSON lines)");
  plan->add_option("--parallel", opt.parallel,
                   "worker threads (0 = all cores)");

  CLI::App* compile =
      app.add_subcommand("compile-spec", "compile a mission into a net");
  add_model_flags(compile, false);
  compile->add_option("--out", opt.out_path, "output net JSON path");
  compile->add_option("--dot", opt.dot_path, "also write a DOT rendering");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "exact optimum over the product state space");
  add_model_flags(oracle, true);
  oracle->add_option("--metric", opt.metric, "total-moves | sync-steps");

  CLI::App* dot = app.add_subcommand("export-dot", "render all nets as DOT");
  add_model_flags(dot, true);
  dot->add_option("--out-dir", opt.out_dir, "output directory");

  CLI::App* check =
      app.add_subcommand("check-trace", "replay a trace file and verify it");
  add_model_flags(check, true);
  check->add_option("--trace", opt.trace_path, "trace file (JSON lines)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) return cmd_plan(opt);
    if (compile->parsed()) return cmd_compile_spec(opt);
    if (oracle->parsed()) return cmd_oracle(opt);
    if (dot->parsed()) return cmd_export_dot(opt);
    if (check->parsed()) return cmd_check_trace(opt);
  } catch (const hlpn::parse_error& e) {
    std::cerr << "error: " << e.what() << " (at offset " << e.position
              << ")\n";
    return 1;
  } catch (const hlpn::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
