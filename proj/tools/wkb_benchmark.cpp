// Compares the serial reference oracle pass with the OpenMP kernel on fixed
// workloads and checks that both produce identical results.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wkb/bench.hpp"
#include "wkb/reason.hpp"

using namespace wkb;

namespace {

double seconds(std::chrono::steady_clock::duration d) {
  return std::chrono::duration_cast<std::chrono::duration<double>>(d).count();
}

struct Workload {
  std::string name;
  WeightedKB kb;
  std::vector<Query> queries;
  DomainBound bound;
};

void run_workload(const Workload& w, std::uint64_t budget) {
  using clock = std::chrono::steady_clock;

  auto t0 = clock::now();
  bench::OracleSuite serial =
      bench::oracle_pass(w.kb, w.queries, w.bound, budget, bench::ExecMode::Serial);
  auto t1 = clock::now();
  bench::OracleSuite parallel =
      bench::oracle_pass(w.kb, w.queries, w.bound, budget, bench::ExecMode::Parallel);
  auto t2 = clock::now();

  double ts = seconds(t1 - t0);
  double tp = seconds(t2 - t1);
  bool equal = serial == parallel;
  std::cout << std::left << std::setw(28) << w.name << std::right << std::fixed
            << std::setprecision(3) << std::setw(10) << ts << " s" << std::setw(10) << tp
            << " s" << std::setw(9) << std::setprecision(2) << (tp > 0 ? ts / tp : 0.0) << "x  "
            << (equal ? "match" : "MISMATCH") << "\n";
  if (!equal) std::exit(1);
}

Query ground_concept(const std::string& name, const std::string& ind) {
  Query q;
  q.atoms.push_back(QueryAtom::concept_atom(name, Term::individual(ind)));
  return q;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "OpenMP disabled; both passes run serially\n";
#endif
  std::cout << std::left << std::setw(28) << "workload" << std::right << std::setw(12)
            << "serial" << std::setw(12) << "openmp" << std::setw(10) << "speedup" << "\n";

  const std::uint64_t budget = std::uint64_t(1) << 26;

  Workload visa{"visa fixture, anon 2",
                bench::visa_fixture(),
                {ground_concept("NoVisa", "p"), ground_concept("Visa", "p")},
                {2, false}};
  run_workload(visa, budget);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 4; ++i) {
    bench::RandomInstance instance = bench::random_tiny_wkb(rng, std::uint64_t(1) << 22);
    Workload w{"random tiny KB #" + std::to_string(i),
               instance.kb,
               {bench::random_ground_iq(instance.kb, rng), bench::random_bcq(instance.kb, rng)},
               {instance.anon_limit, false}};
    run_workload(w, budget);
  }

  std::cout << "all serial/openmp results match\n";
  return 0;
}
