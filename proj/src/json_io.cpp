#include "hlpn/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "hlpn/errors.hpp"

namespace hlpn {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

json parse_or_diagnose(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw io_error(path + ":" + std::to_string(line_of_byte(text, e.byte)) +
                   ": " + e.what());
  }
}

[[noreturn]] void field_error(const std::string& context,
                              const std::exception& e) {
  throw io_error(context + ": " + e.what());
}

}  // namespace

json load_json_file(const std::string& path) {
  return parse_or_diagnose(read_file(path), path);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write file: " + path);
  out << content;
}

json to_json(const bag& b) {
  json j = json::object();
  for (std::size_t i = 0; i < b.labels().size(); ++i) {
    if (b.count(i) != 0) j[b.labels().label(i)] = b.count(i);
  }
  return j;
}

bag bag_from_json(const universe_ptr& u, const json& j) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& [label, n] : j.items()) {
    counts[label] = n.get<std::int64_t>();
  }
  return bag(u, counts);
}

json to_json(const environment& env) {
  json j;
  j["regions"] = json::array();
  for (const auto& r : env.regions()) {
    j["regions"].push_back({{"id", r.id}, {"prop", r.prop}});
  }
  j["free_region"] = env.free_region();
  j["cells"] = json::array();
  for (const auto& c : env.cells()) {
    j["cells"].push_back(
        {{"id", c.id}, {"regions", c.regions}, {"capacity", c.capacity}});
  }
  j["adjacency"] = json::array();
  for (const auto& [a, b] : env.adjacency()) {
    j["adjacency"].push_back({a, b});
  }
  j["team_size"] = env.team_size();
  return j;
}

environment environment_from_json(const json& j) {
  try {
    std::vector<region> regions;
    for (const auto& r : j.at("regions")) {
      regions.push_back({r.at("id").get<std::string>(),
                         r.at("prop").get<std::string>()});
    }
    std::vector<cell> cells;
    for (const auto& c : j.at("cells")) {
      cell out;
      out.id = c.at("id").get<std::string>();
      out.regions = c.at("regions").get<std::vector<std::string>>();
      out.capacity = c.at("capacity").get<int>();
      cells.push_back(std::move(out));
    }
    std::vector<std::pair<std::string, std::string>> adjacency;
    for (const auto& pair : j.at("adjacency")) {
      adjacency.emplace_back(pair.at(0).get<std::string>(),
                             pair.at(1).get<std::string>());
    }
    return environment(std::move(regions),
                       j.at("free_region").get<std::string>(),
                       std::move(cells), std::move(adjacency),
                       j.at("team_size").get<int>());
  } catch (const nlohmann::json::exception& e) {
    field_error("environment", e);
  }
}

environment load_environment_file(const std::string& path) {
  return environment_from_json(load_json_file(path));
}

json to_json(const std::vector<robot_spec>& robots) {
  json j = json::array();
  for (const auto& r : robots) {
    j.push_back({{"id", r.id},
                 {"allowed_cells", r.allowed_cells},
                 {"initial_cell", r.initial_cell}});
  }
  return j;
}

std::vector<robot_spec> robots_from_json(const json& j) {
  try {
    std::vector<robot_spec> out;
    for (const auto& r : j) {
      out.push_back({r.at("id").get<std::string>(),
                     r.at("allowed_cells").get<std::vector<std::string>>(),
                     r.at("initial_cell").get<std::string>()});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    field_error("robots", e);
  }
}

std::vector<robot_spec> load_robots_file(const std::string& path) {
  return robots_from_json(load_json_file(path));
}

std::vector<robot_opn> build_robots(const environment& env,
                                    const std::vector<robot_spec>& specs) {
  std::vector<robot_opn> out;
  out.reserve(specs.size());
  std::set<std::string> ids;
  for (const auto& s : specs) {
    if (!ids.insert(s.id).second) {
      throw structural_error("duplicate robot id: " + s.id);
    }
    out.push_back(robot_opn::build(env, s.id, s.allowed_cells,
                                   s.initial_cell));
  }
  return out;
}

json to_json(const spec_opn& net) {
  json j;
  j["places"] = net.places();
  j["initial"] = net.place_id(net.initial_place());
  json finals = json::array();
  for (int f : net.final_places()) finals.push_back(net.place_id(f));
  j["final"] = finals;
  j["transitions"] = json::array();
  for (const auto& t : net.transitions()) {
    j["transitions"].push_back({{"id", t.id},
                                {"from", net.place_id(t.from)},
                                {"to", net.place_id(t.to)},
                                {"guard", t.g.to_string()}});
  }
  return j;
}

raw_spec raw_spec_from_json(const json& j) {
  try {
    raw_spec raw;
    raw.places = j.at("places").get<std::vector<std::string>>();
    raw.initial = j.at("initial").get<std::string>();
    raw.finals = j.at("final").get<std::vector<std::string>>();
    for (const auto& t : j.at("transitions")) {
      raw.transitions.push_back({t.at("id").get<std::string>(),
                                 t.at("from").get<std::string>(),
                                 t.at("to").get<std::string>(),
                                 t.at("guard").get<std::string>()});
    }
    return raw;
  } catch (const nlohmann::json::exception& e) {
    field_error("spec net", e);
  }
}

spec_input spec_from_json(const json& j, const environment& env) {
  if (j.contains("ltl")) {
    std::set<std::string> props;
    for (const auto& r : env.regions()) props.insert(r.prop);
    ltl_formula f = parse_formula(j.at("ltl").get<std::string>(), props);
    return spec_input{compile_to_specopn(f, env), std::move(f)};
  }
  return spec_input{spec_opn::normalize(raw_spec_from_json(j)), std::nullopt};
}

spec_input load_spec_file(const std::string& path, const environment& env) {
  return spec_from_json(load_json_file(path), env);
}

json to_json(const trace& t, metric_kind metric) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    json moves = json::object();
    for (const auto& [robot, move] : s.moves) moves[robot] = move;
    steps.push_back({{"spec_t", s.spec_transition},
                     {"moves", moves},
                     {"occupancy", to_json(s.occupancy)},
                     {"spec_place", s.spec_place}});
  }
  json fired = json::object();
  for (std::size_t r = 0; r < t.robot_ids.size(); ++r) {
    fired[t.robot_ids[r]] = t.fired_per_robot[r];
  }
  return json{{"run", t.run},
              {"seed", t.seed},
              {"outcome", to_string(t.outcome)},
              {"steps", steps},
              {"fired", fired},
              {"sync_steps", t.sync_steps()},
              {"total_moves", t.total_moves()},
              {"metric", t.metric(metric)}};
}

std::vector<parsed_trace> load_trace_file(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<parsed_trace> out;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      parsed_trace t;
      t.run = j.at("run").get<int>();
      t.seed = j.at("seed").get<std::uint64_t>();
      t.outcome = j.at("outcome").get<std::string>();
      for (const auto& s : j.at("steps")) {
        recorded_step step;
        step.spec_transition = s.at("spec_t").get<std::string>();
        for (const auto& [robot, move] : s.at("moves").items()) {
          step.moves.emplace(robot, move.get<std::string>());
        }
        t.steps.push_back(std::move(step));
      }
      out.push_back(std::move(t));
    } catch (const nlohmann::json::exception& e) {
      throw io_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

json to_json(const batch_summary& s, bool include_timing) {
  json histogram = json::object();
  for (const auto& [value, count] : s.histogram) {
    histogram[std::to_string(value)] = count;
  }
  json j{{"runs", s.runs},
         {"successes", s.successes},
         {"success_rate",
          s.runs ? static_cast<double>(s.successes) / s.runs : 0.0},
         {"metric", to_string(s.metric)},
         {"histogram", histogram}};
  if (s.best_run) j["best_run"] = *s.best_run;
  if (include_timing) {
    j["timing_ms"] = {{"mean", s.mean_ms}, {"stddev", s.stddev_ms}};
  }
  return j;
}

}  // namespace hlpn
