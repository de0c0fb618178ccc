#include <chrono>
#include <cstdio>
#include <random>

#include "CLI11.hpp"

#include "coreq/generate.hpp"
#include "coreq/naive_warrant.hpp"

namespace {

template <typename F>
double run_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warrant kernel benchmark: brute force vs engine, serial vs parallel"};
  unsigned long seed = 2740;
  int repeat = 5;
  bool skip_naive = false;
  coreq::ProgramGenOptions gen;
  gen.atoms = 10;
  gen.facts = 4;
  gen.strict_rules = 5;
  gen.defeasible_rules = 12;
  gen.priorities = 6;

  app.add_option("--seed", seed, "base RNG seed");
  app.add_option("--repeat", repeat, "number of generated programs");
  app.add_option("--atoms", gen.atoms);
  app.add_option("--facts", gen.facts);
  app.add_option("--strict", gen.strict_rules);
  app.add_option("--defeasible", gen.defeasible_rules);
  app.add_option("--priorities", gen.priorities);
  app.add_flag("--skip-naive", skip_naive, "skip the exponential baseline");
  CLI11_PARSE(app, argc, argv);

  std::printf("atoms=%d facts=%d strict=%d defeasible=%d priorities=%d\n", gen.atoms,
              gen.facts, gen.strict_rules, gen.defeasible_rules, gen.priorities);

  double total_naive = 0, total_serial = 0, total_parallel = 0;
  int mismatches = 0;
  for (int r = 0; r < repeat; ++r) {
    std::mt19937_64 rng(seed + static_cast<unsigned long>(r));
    coreq::DefeasibleProgram p = coreq::random_program(rng, gen);

    std::vector<coreq::Literal> naive_out, serial_out, parallel_out;
    double t_naive = 0;
    if (!skip_naive)
      t_naive = run_ms([&] { naive_out = coreq::naive::consequences(p); });

    coreq::DefeasibleEngine engine(p);
    double t_serial = run_ms([&] { serial_out = engine.consequences_serial(); });
    double t_parallel = run_ms([&] { parallel_out = engine.consequences(); });

    bool ok = serial_out == parallel_out && (skip_naive || naive_out == serial_out);
    if (!ok) ++mismatches;
    total_naive += t_naive;
    total_serial += t_serial;
    total_parallel += t_parallel;

    std::printf("run %2d: ", r + 1);
    if (!skip_naive) std::printf("naive %9.2f ms  ", t_naive);
    std::printf("serial %8.2f ms  parallel %8.2f ms  %s\n", t_serial, t_parallel,
                ok ? "agree" : "MISMATCH");
  }

  std::printf("total:  ");
  if (!skip_naive) std::printf("naive %9.2f ms  ", total_naive);
  std::printf("serial %8.2f ms  parallel %8.2f ms\n", total_serial, total_parallel);
  if (mismatches) {
    std::printf("%d mismatching run(s)\n", mismatches);
    return 1;
  }
  return 0;
}
