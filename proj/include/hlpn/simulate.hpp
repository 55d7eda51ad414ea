#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hlpn/environment.hpp"
#include "hlpn/hlpn.hpp"
#include "hlpn/robot_net.hpp"
#include "hlpn/spec_net.hpp"

namespace hlpn {

enum class metric_kind { total_moves, sync_steps };
enum class run_outcome { reached_final, step_limit, deadlock };

const char* to_string(run_outcome o);
const char* to_string(metric_kind m);
std::optional<metric_kind> metric_from_string(std::string_view name);

struct trace_step {
  std::string spec_transition;
  /// robot id -> fired move id, ascending by robot position in the team.
  std::vector<std::pair<std::string, std::string>> moves;
  bag occupancy;          // after the step
  std::string spec_place;  // after the step
};

/// Record of one simulation run. Replaying the steps from the initial state
/// reproduces every recorded post-state; the verifier checks exactly that.
struct trace {
  int run = 0;
  std::uint64_t seed = 0;
  run_outcome outcome = run_outcome::deadlock;
  std::vector<trace_step> steps;
  std::vector<std::string> robot_ids;
  std::vector<std::int64_t> fired_per_robot;

  bool successful() const { return outcome == run_outcome::reached_final; }
  std::int64_t total_moves() const;
  std::int64_t sync_steps() const {
    return static_cast<std::int64_t>(steps.size());
  }
  std::int64_t metric(metric_kind m) const;
};

struct sim_params {
  int max_steps = 100;
  /// Sampling attempts per step before falling back to exhaustive
  /// enumeration (which settles deadlock for real).
  int sample_budget = 64;
};

/// One randomized token game, a pure function of (inputs, seed). The nets
/// are taken at their current markings; batch callers pass pristine copies.
trace run_once(const environment& env, const std::vector<robot_opn>& robots,
               const spec_opn& spec, std::uint64_t seed,
               const sim_params& params = {});

struct batch_summary {
  int runs = 0;
  int successes = 0;
  metric_kind metric = metric_kind::total_moves;
  std::map<std::int64_t, int> histogram;  // metric value -> successful runs
  std::optional<int> best_run;
  double mean_ms = 0.0;    // wall time per run; excluded from determinism
  double stddev_ms = 0.0;
};

struct batch_result {
  std::vector<trace> traces;
  std::optional<trace> best;
  batch_summary summary;
};

/// True if `a` beats `b` under the metric. Ties break on the complementary
/// metric, then on the lower run index, so reductions are order-independent.
bool better_trace(const trace& a, const trace& b, metric_kind metric);

/// Reference batch runner: one run after another. Kept alongside the
/// parallel kernel so the two can be checked against each other.
batch_result run_batch_serial(const environment& env,
                              const std::vector<robot_opn>& robots,
                              const spec_opn& spec, std::uint64_t master_seed,
                              int n_runs, const sim_params& params = {},
                              metric_kind metric = metric_kind::total_moves);

/// OpenMP batch runner. Per-run seeds come from derive_run_seed, so the
/// result is identical to the serial reference whatever the thread count.
/// threads <= 1 falls back to the serial path; 0 means "all cores".
batch_result run_batch(const environment& env,
                       const std::vector<robot_opn>& robots,
                       const spec_opn& spec, std::uint64_t master_seed,
                       int n_runs, const sim_params& params = {},
                       metric_kind metric = metric_kind::total_moves,
                       int threads = 1);

}  // namespace hlpn
