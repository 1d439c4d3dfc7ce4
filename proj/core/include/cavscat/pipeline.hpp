#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cavscat/config.hpp"
#include "cavscat/fano.hpp"

namespace cavscat {

inline constexpr char kEngineVersion[] = "0.1.0";

// CAVSCAT_OUT_DIR > --out > output.dir > current directory
std::string resolve_output_dir(const ScenarioConfig& sc, const std::string& cli_out);

std::uint64_t fnv1a64(const std::string& bytes);

// 17 significant digits, locale independent
std::string format_sig(double v);

struct RunOptions {
  ScenarioConfig scenario;
  std::string out_dir;  // resolved; empty means the working directory
  int threads = 1;
};

// everything downstream verbs share: tracked adiabats, the coupled pair for
// the configured sector, its transformation chain and the embedded level
struct ChainArtifacts {
  AdiabaticSpectrum spectrum;
  int lower_ch = 0, upper_ch = 1;
  PotentialCurve lower, upper;
  PairTau tau;
  ADTResult adt;
  WMatrixResult w;
  RadialProblem lower_problem, upper_problem;
  CrossingInfo crossing;
  std::vector<BoundStateResult> levels;  // upper channel, ascending
  double w_b = 0.0;  // deepest level, MHz above the lower threshold
};

ChainArtifacts build_chain(const ScenarioConfig& sc, int threads);

// each verb writes its CSV artifacts plus report.json and manifest.json into
// out_dir and returns the digest map recorded in the manifest
using DigestMap = std::map<std::string, std::string>;

DigestMap run_potentials(const RunOptions& opt);
DigestMap run_crossings(const RunOptions& opt);
DigestMap run_bound(const RunOptions& opt);
DigestMap run_scatter(const RunOptions& opt);
DigestMap run_resonance(const RunOptions& opt);

struct SweepRange {
  std::string param;  // g_A, g_B, delta1 or delta2
  double lo = 0.0, hi = 0.0;
  std::size_t steps = 2;
};

DigestMap run_sweep(const RunOptions& opt, const SweepRange& range);

struct EvolveSpec {
  double t_max_us = 0.0;  // 0 selects three lifetimes of the resonance
  std::size_t t_points = 81;
};

DigestMap run_evolve(const RunOptions& opt, const EvolveSpec& spec);

}  // namespace cavscat
