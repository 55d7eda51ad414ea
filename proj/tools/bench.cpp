// Batch-throughput benchmark: the serial reference runner against the
// OpenMP kernel, with a result-equality check so a speedup never hides a
// divergence.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hlpn/json_io.hpp"
#include "hlpn/simulate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

std::string canonical_batch(const hlpn::batch_result& r,
                            hlpn::metric_kind metric) {
  std::ostringstream out;
  for (const auto& t : r.traces) out << hlpn::to_json(t, metric).dump() << "\n";
  out << hlpn::to_json(r.summary, false).dump() << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  std::string env_path = "data/team3_env.json";
  std::string robots_path = "data/team3_robots.json";
  std::string spec_path = "data/mission.json";
  int runs = 2000;
  std::uint64_t seed = 7;
  std::vector<int> thread_counts{2, 4, 0};

  CLI::App app{"serial vs OpenMP batch benchmark"};
  app.add_option("--env", env_path);
  app.add_option("--robots", robots_path);
  app.add_option("--spec", spec_path);
  app.add_option("--runs", runs);
  app.add_option("--seed", seed);
  app.add_option("--threads", thread_counts, "thread counts to benchmark");
  CLI11_PARSE(app, argc, argv);

  auto env = hlpn::load_environment_file(env_path);
  auto robots = hlpn::build_robots(env, hlpn::load_robots_file(robots_path));
  auto spec = hlpn::load_spec_file(spec_path, env);
  const auto metric = hlpn::metric_kind::total_moves;

  auto timed = [&](int threads, double& ms) {
    const auto t0 = std::chrono::steady_clock::now();
    auto result = hlpn::run_batch(env, robots, spec.net, seed, runs, {},
                                  metric, threads);
    const auto t1 = std::chrono::steady_clock::now();
    ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return canonical_batch(result, metric);
  };

  double serial_ms = 0.0;
  const std::string reference = timed(1, serial_ms);
  std::cout << "serial      " << runs << " runs  " << serial_ms << " ms\n";

#ifndef _OPENMP
  std::cout << "(built without OpenMP; parallel path is the serial one)\n";
#endif

  bool all_equal = true;
  for (int threads : thread_counts) {
    double ms = 0.0;
    const std::string got = timed(threads, ms);
    const bool equal = got == reference;
    all_equal = all_equal && equal;
    std::cout << "threads=" << threads
#ifdef _OPENMP
              << (threads == 0 ? " (all)" : "")
#endif
              << "  " << ms << " ms  speedup " << serial_ms / ms
              << (equal ? "" : "  RESULT MISMATCH") << "\n";
  }

  if (!all_equal) {
    std::cerr << "parallel results diverged from the serial reference\n";
    return 1;
  }
  return 0;
}
