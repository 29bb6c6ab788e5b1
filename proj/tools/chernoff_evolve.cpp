// Command-line driver for the evolution-family experiments.
//
//   chernoff-evolve run <config-file> [--section.key=value ...]
//   chernoff-evolve list-presets
//   chernoff-evolve version
//
// `run` executes one experiment described by an INI-style config, writes
// <outdir>/<kind>.csv, an SVG log-log plot when applicable, and
// <outdir>/manifest.txt, and exits 0 iff every embedded check passed.
// CHERNOFF_THREADS caps worker threads.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <chernoff/run/config.hpp>
#include <chernoff/run/experiments.hpp>
#include <chernoff/version.hpp>

namespace {

void print_usage() {
  std::puts(
      "usage:\n"
      "  chernoff-evolve run <config-file> [--section.key=value ...]\n"
      "  chernoff-evolve list-presets\n"
      "  chernoff-evolve version");
}

void list_presets() {
  std::puts("experiment kinds:");
  for (const auto& k : chernoff::run::experiment_kinds())
    std::printf("  %s\n", k.c_str());
  std::puts("drift presets:");
  std::puts("  constant(psi0)");
  std::puts("  linear(c)");
  std::puts("  sine(a,w)");
  std::puts("  poly(c0,c1,...)");
  std::puts("observables:");
  std::puts("  one | cos | sin | cos2 | mix | fourier(c0,a1,b1,...)");
  std::puts("matrix families:");
  std::puts("  dissipative3 | constant (with matrix.table)");
  std::puts("matrix profiles:");
  std::puts("  constant(c) | ramp | one-plus-t-sin-t");
  std::puts("propagator variants:");
  std::puts("  frozen-exponential | implicit-euler | explicit-euler");
}

int run_command(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "run: missing config file\n");
    return 2;
  }
  std::vector<std::string> overrides;
  for (int i = 3; i < argc; ++i) overrides.emplace_back(argv[i]);

  const auto cfg = chernoff::run::ExperimentConfig::load(argv[2], overrides);
  const auto report = chernoff::run::run_experiment(cfg);

  for (const auto& c : report.checks)
    std::printf("[%s] %s%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.empty() ? "" : ": ", c.detail.c_str());
  for (const auto& f : report.files)
    std::printf("wrote %s\n", f.string().c_str());
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    print_usage();
    return 2;
  }
  const std::string cmd = argv[1];
  try {
    if (cmd == "version") {
      std::printf("chernoff-evolve %s\n", chernoff::kVersion);
      return 0;
    }
    if (cmd == "list-presets") {
      list_presets();
      return 0;
    }
    if (cmd == "run") return run_command(argc, argv);
    std::fprintf(stderr, "unknown command '%s'\n", cmd.c_str());
    print_usage();
    return 2;
  } catch (const chernoff::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const chernoff::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
