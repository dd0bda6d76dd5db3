// Serial reference kernels against their OpenMP counterparts. Each pair must
// produce identical results; the bench aborts if they differ.
// Usage: fraisse_bench [repeats]

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>

#include <omp.h>

#include "fraisse/amalgamation.hpp"
#include "fraisse/montecarlo.hpp"
#include "fraisse/zoo.hpp"

using namespace fraisse;

namespace {

double best_of(int repeats, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    auto start = std::chrono::steady_clock::now();
    body();
    std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
    best = std::min(best, d.count());
  }
  return best;
}

void row(const std::string& kernel, double serial, double parallel, bool agree) {
  std::cout << std::left << std::setw(34) << kernel << std::right << std::fixed << std::setprecision(4)
            << std::setw(11) << serial << std::setw(11) << parallel << std::setw(9) << std::setprecision(2)
            << serial / parallel << "x" << (agree ? "" : "  MISMATCH") << "\n";
  if (!agree) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
  int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::cout << "threads: " << omp_get_max_threads() << ", best of " << repeats << "\n";
  std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(11) << "serial s"
            << std::setw(11) << "omp s" << std::setw(10) << "speedup" << "\n";

  {
    auto g = zoo::named_group("z2_semidirect_z3pow:3*sym:4");
    zoo::ClassPartition a, b;
    auto ts = best_of(repeats, [&] { a = zoo::conjugacy_classes(g); });
    auto tp = best_of(repeats, [&] { b = zoo::conjugacy_classes_parallel(g); });
    row("conjugacy classes, order " + std::to_string(g.order()), ts, tp, a.classes == b.classes);
  }
  {
    ClassReport a, b;
    auto ts = best_of(repeats, [&] { a = check_sap_class(graph_class(), 4); });
    auto tp = best_of(repeats, [&] { b = check_sap_class_parallel(graph_class(), 4); });
    row("SAP sweep, graphs n=4", ts, tp,
        a.instances == b.instances && a.strongly_amalgamated == b.strongly_amalgamated);
  }
  {
    RunConfig config;
    config.structure = "pure-set";
    config.params = ProcessParams::defaults(12, 0);
    config.h_random_points = 4;
    std::vector<RunSummary> a, b;
    auto ts = best_of(repeats, [&] { a = run_batch_serial(config, 64, 1); });
    auto tp = best_of(repeats, [&] { b = run_batch_parallel(config, 64, 1); });
    bool agree = a.size() == b.size();
    for (std::size_t r = 0; agree && r < a.size(); ++r)
      for (std::size_t k = 0; agree && k < a[r].rows.size(); ++k)
        agree = a[r].rows[k].paths == b[r].rows[k].paths && a[r].rows[k].cycles == b[r].rows[k].cycles &&
                a[r].rows[k].bad_events == b[r].rows[k].bad_events;
    row("Monte Carlo, pure-set 64 x T=12", ts, tp, agree);
  }
  return 0;
}
