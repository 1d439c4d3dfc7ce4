#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "cavscat/pipeline.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

void print_artifacts(const char* verb, const std::string& dir,
                     const cavscat::DigestMap& digests) {
  std::printf("[%s] wrote %zu artifacts to %s\n", verb, digests.size() + 1,
              dir.empty() ? "." : dir.c_str());
  for (const auto& [name, digest] : digests) {
    std::printf("  %-28s fnv1a64:%s\n", name.c_str(), digest.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cavity-dressed potentials and scattering resonances for atom pairs"};
  app.set_version_flag("--version", cavscat::kEngineVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 1;
  app.add_option("--config", config_path, "scenario file (key = value with [section] headers)")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (CAVSCAT_OUT_DIR overrides)");
  app.add_option("--threads", threads, "worker threads for grid and profile loops")
      ->check(CLI::Range(1, 512));

  auto* cmd_potentials =
      app.add_subcommand("potentials", "adiabatic curves of both photon sectors");
  auto* cmd_crossings =
      app.add_subcommand("crossings", "pseudo-crossing positions and gaps");
  auto* cmd_bound = app.add_subcommand("bound", "bound levels of the embedded channel");
  auto* cmd_scatter =
      app.add_subcommand("scatter", "background phase shift and cross section");
  auto* cmd_resonance =
      app.add_subcommand("resonance", "coupled-channel resonance profile");

  auto* cmd_sweep = app.add_subcommand("sweep", "resonance landscape over a cavity knob");
  cavscat::SweepRange range;
  cmd_sweep->add_option("--param", range.param, "one of g_A, g_B, delta1, delta2")
      ->required();
  cmd_sweep->add_option("--from", range.lo, "first value")->required();
  cmd_sweep->add_option("--to", range.hi, "last value")->required();
  cmd_sweep->add_option("--steps", range.steps, "number of samples")
      ->check(CLI::Range(2, 10000));

  auto* cmd_evolve = app.add_subcommand("evolve", "survival probability of the level");
  cavscat::EvolveSpec evolve;
  cmd_evolve->add_option("--t-max", evolve.t_max_us,
                         "latest time in microseconds (0 = three lifetimes)");
  cmd_evolve->add_option("--t-points", evolve.t_points, "number of time samples")
      ->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    cavscat::ScenarioConfig sc =
        config_path.empty()
            ? cavscat::default_scenario()
            : cavscat::load_scenario(cavscat::ConfigFile::parse_file(config_path));

    cavscat::RunOptions opt;
    opt.scenario = sc;
    opt.out_dir = cavscat::resolve_output_dir(sc, out_dir);
    opt.threads = threads;

    cavscat::DigestMap digests;
    const char* verb = nullptr;
    if (cmd_potentials->parsed()) {
      verb = "potentials";
      digests = cavscat::run_potentials(opt);
    } else if (cmd_crossings->parsed()) {
      verb = "crossings";
      digests = cavscat::run_crossings(opt);
    } else if (cmd_bound->parsed()) {
      verb = "bound";
      digests = cavscat::run_bound(opt);
    } else if (cmd_scatter->parsed()) {
      verb = "scatter";
      digests = cavscat::run_scatter(opt);
    } else if (cmd_resonance->parsed()) {
      verb = "resonance";
      digests = cavscat::run_resonance(opt);
    } else if (cmd_sweep->parsed()) {
      verb = "sweep";
      digests = cavscat::run_sweep(opt, range);
    } else if (cmd_evolve->parsed()) {
      verb = "evolve";
      digests = cavscat::run_evolve(opt, evolve);
    }
    if (verb) print_artifacts(verb, opt.out_dir, digests);
    return 0;
  } catch (const cavscat::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const cavscat::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const cavscat::NumericalError& e) {
    std::fprintf(stderr, "error in %s: %s\n", e.module.c_str(), e.what());
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
