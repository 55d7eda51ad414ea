#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hlpn/bag.hpp"
#include "hlpn/environment.hpp"
#include "hlpn/ltl.hpp"
#include "hlpn/robot_net.hpp"
#include "hlpn/simulate.hpp"
#include "hlpn/spec_net.hpp"
#include "hlpn/verify.hpp"

namespace hlpn {

using json = nlohmann::ordered_json;

/// Parses a JSON file; parse failures become io_error carrying file, line
/// and a short description.
json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// --- bags ---------------------------------------------------------------
json to_json(const bag& b);  // {label: count}, zero counts omitted
bag bag_from_json(const universe_ptr& u, const json& j);

// --- environment ----------------------------------------------------------
json to_json(const environment& env);
environment environment_from_json(const json& j);
environment load_environment_file(const std::string& path);

// --- robots ---------------------------------------------------------------
struct robot_spec {
  std::string id;
  std::vector<std::string> allowed_cells;
  std::string initial_cell;
};

json to_json(const std::vector<robot_spec>& robots);
std::vector<robot_spec> robots_from_json(const json& j);
std::vector<robot_spec> load_robots_file(const std::string& path);
std::vector<robot_opn> build_robots(const environment& env,
                                    const std::vector<robot_spec>& specs);

// --- mission --------------------------------------------------------------
json to_json(const spec_opn& net);
raw_spec raw_spec_from_json(const json& j);

/// A mission file either holds an explicit net (normalized on load) or an
/// LTL formula compiled against the environment; the formula is kept so the
/// independent evaluator can cross-check traces.
struct spec_input {
  spec_opn net;
  std::optional<ltl_formula> formula;
};

spec_input spec_from_json(const json& j, const environment& env);
spec_input load_spec_file(const std::string& path, const environment& env);

// --- traces & summaries -----------------------------------------------------
json to_json(const trace& t, metric_kind metric);

struct parsed_trace {
  int run = 0;
  std::uint64_t seed = 0;
  std::string outcome;
  std::vector<recorded_step> steps;
};

std::vector<parsed_trace> load_trace_file(const std::string& path);

/// Canonical summary. Wall-clock timing is optional because it is the one
/// part of a batch that is not a pure function of the seed.
json to_json(const batch_summary& s, bool include_timing);

}  // namespace hlpn
