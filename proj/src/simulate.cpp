#include "hlpn/simulate.hpp"

#include <chrono>
#include <cmath>
#include <exception>

#include "hlpn/errors.hpp"
#include "hlpn/gef.hpp"
#include "hlpn/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hlpn {

const char* to_string(run_outcome o) {
  switch (o) {
    case run_outcome::reached_final:
      return "reached-final";
    case run_outcome::step_limit:
      return "step-limit";
    case run_outcome::deadlock:
      return "deadlock";
  }
  return "?";
}

const char* to_string(metric_kind m) {
  return m == metric_kind::total_moves ? "total-moves" : "sync-steps";
}

std::optional<metric_kind> metric_from_string(std::string_view name) {
  if (name == "total-moves") return metric_kind::total_moves;
  if (name == "sync-steps") return metric_kind::sync_steps;
  return std::nullopt;
}

std::int64_t trace::total_moves() const {
  std::int64_t n = 0;
  for (const auto& s : steps) n += static_cast<std::int64_t>(s.moves.size());
  return n;
}

std::int64_t trace::metric(metric_kind m) const {
  return m == metric_kind::total_moves ? total_moves() : sync_steps();
}

trace run_once(const environment& env, const std::vector<robot_opn>& robots,
               const spec_opn& spec, std::uint64_t seed,
               const sim_params& params) {
  if (params.max_steps < 1) {
    throw structural_error("max_steps must be >= 1");
  }

  hlpn_state state(env, robots, spec);
  rng rand(seed);

  trace t;
  t.seed = seed;
  t.robot_ids.reserve(robots.size());
  for (const auto& r : robots) t.robot_ids.push_back(r.id());
  t.fired_per_robot.assign(robots.size(), 0);

  while (true) {
    if (state.is_final()) {
      t.outcome = run_outcome::reached_final;
      break;
    }
    if (static_cast<int>(t.steps.size()) >= params.max_steps) {
      t.outcome = run_outcome::step_limit;
      break;
    }

    std::optional<binding> b = sample_binding(state, rand, params.sample_budget);
    if (!b) {
      // The budget ran out; only exhaustive enumeration can tell a dead
      // state from bad luck.
      auto all = enabled_bindings(state);
      if (all.empty()) {
        t.outcome = run_outcome::deadlock;
        break;
      }
      b = all[rand.bounded(all.size())];
    }

    state.fire(*b);

    std::vector<std::pair<std::string, std::string>> moved;
    moved.reserve(b->moves.size());
    for (const auto& [r, m] : b->moves) {
      moved.emplace_back(t.robot_ids[r], state.robot(r).moves()[m].id);
      ++t.fired_per_robot[r];
    }
    t.steps.push_back(
        trace_step{state.spec().transitions()[b->spec_transition].id,
                   std::move(moved), state.occupancy(),
                   state.spec().marked_place_id()});
  }
  return t;
}

bool better_trace(const trace& a, const trace& b, metric_kind metric) {
  const metric_kind other = metric == metric_kind::total_moves
                                ? metric_kind::sync_steps
                                : metric_kind::total_moves;
  auto key = [&](const trace& t) {
    return std::tuple(t.metric(metric), t.metric(other), t.run);
  };
  return key(a) < key(b);
}

namespace {

batch_result reduce_batch(std::vector<trace> traces, metric_kind metric,
                          std::vector<double> run_ms) {
  batch_result result;
  result.summary.runs = static_cast<int>(traces.size());
  result.summary.metric = metric;

  for (const auto& t : traces) {
    if (!t.successful()) continue;
    ++result.summary.successes;
    ++result.summary.histogram[t.metric(metric)];
    if (!result.best || better_trace(t, *result.best, metric)) {
      result.best = t;
    }
  }
  if (result.best) result.summary.best_run = result.best->run;

  if (!run_ms.empty()) {
    double sum = 0.0;
    for (double ms : run_ms) sum += ms;
    const double mean = sum / static_cast<double>(run_ms.size());
    double var = 0.0;
    for (double ms : run_ms) var += (ms - mean) * (ms - mean);
    result.summary.mean_ms = mean;
    result.summary.stddev_ms =
        std::sqrt(var / static_cast<double>(run_ms.size()));
  }
  result.traces = std::move(traces);
  return result;
}

trace timed_run(const environment& env, const std::vector<robot_opn>& robots,
                const spec_opn& spec, std::uint64_t master_seed, int run_index,
                const sim_params& params, double& ms_out) {
  const auto t0 = std::chrono::steady_clock::now();
  trace t = run_once(env, robots, spec,
                     derive_run_seed(master_seed, run_index), params);
  const auto t1 = std::chrono::steady_clock::now();
  t.run = run_index;
  ms_out = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return t;
}

}  // namespace

batch_result run_batch_serial(const environment& env,
                              const std::vector<robot_opn>& robots,
                              const spec_opn& spec, std::uint64_t master_seed,
                              int n_runs, const sim_params& params,
                              metric_kind metric) {
  if (n_runs < 1) throw structural_error("n_runs must be >= 1");
  std::vector<trace> traces(n_runs);
  std::vector<double> run_ms(n_runs, 0.0);
  for (int i = 0; i < n_runs; ++i) {
    traces[i] = timed_run(env, robots, spec, master_seed, i, params,
                          run_ms[i]);
  }
  return reduce_batch(std::move(traces), metric, std::move(run_ms));
}

batch_result run_batch(const environment& env,
                       const std::vector<robot_opn>& robots,
                       const spec_opn& spec, std::uint64_t master_seed,
                       int n_runs, const sim_params& params,
                       metric_kind metric, int threads) {
#ifdef _OPENMP
  if (threads != 1) {
    if (n_runs < 1) throw structural_error("n_runs must be >= 1");
    std::vector<trace> traces(n_runs);
    std::vector<double> run_ms(n_runs, 0.0);
    std::exception_ptr failure;

    if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_runs; ++i) {
      try {
        traces[i] = timed_run(env, robots, spec, master_seed, i, params,
                              run_ms[i]);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    return reduce_batch(std::move(traces), metric, std::move(run_ms));
  }
#else
  (void)threads;
#endif
  return run_batch_serial(env, robots, spec, master_seed, n_runs, params,
                          metric);
}

}  // namespace hlpn
