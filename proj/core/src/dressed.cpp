#include "cavscat/dressed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cavscat/parallel.hpp"

namespace cavscat {

double rddi_linewidth_scale(double gamma_MHz, double lambda_nm) {
  const double lbar = units::lambda_bar_a0(lambda_nm);
  return 0.75 * gamma_MHz * lbar * lbar * lbar;
}

ModelSpec default_model() {
  ModelSpec m;
  const double c3 = rddi_linewidth_scale(0.182, 555.8);
  m.rddi.c11 = 1.3 * c3;
  m.rddi.c12 = 0.3 * c3;
  m.rddi.c22 = -0.2 * c3;
  // operator eigenvalues of the quadrupole pair interaction assigned to the
  // two doubly-excited channels: -6 and +9 times the squared moment
  m.qc_au = quad_pair_expectation(m.quad, 1, 0, +1);
  m.qd_au = quad_pair_spectrum(m.quad).back();
  return m;
}

namespace {

struct BareState {
  char label;
  double energy;
};

// basis order is fixed: one-photon (b, c, g), two-photon (a, d, e, f)
std::vector<BareState> sector_asymptotes(const ModelSpec& m, Sector sector) {
  const double h12 = hyperfine_shift(m.hf, 0.5);
  const double h32 = hyperfine_shift(m.hf, 1.5);
  const double d1 = m.cavity.delta1, d2 = m.cavity.delta2;
  const double e_eg1 = d1 + h12;
  const double e_ee = d1 + d2 + h12 + h32;
  const double e_eg2 = d2 + h32;
  if (sector == Sector::one_photon)
    return {{'b', e_eg1}, {'c', e_ee}, {'g', e_eg2}};
  return {{'a', e_eg1}, {'d', e_ee}, {'e', 0.0}, {'f', e_eg2}};
}

}  // namespace

std::vector<DressedBasisState> build_bell_basis(const ModelSpec& m) {
  const double h12 = hyperfine_shift(m.hf, 0.5);
  const double h32 = hyperfine_shift(m.hf, 1.5);
  const double d1 = m.cavity.delta1, d2 = m.cavity.delta2;
  std::vector<DressedBasisState> basis;
  basis.push_back({'a', Sector::two_photon, 0, 1, {0.5}, d1 + h12});
  basis.push_back({'b', Sector::one_photon, 0, 1, {0.5}, d1 + h12});
  basis.push_back({'c', Sector::one_photon, 0, 0, {0.5, 1.5}, d1 + d2 + h12 + h32});
  basis.push_back({'d', Sector::two_photon, 0, 0, {0.5, 1.5}, d1 + d2 + h12 + h32});
  basis.push_back({'e', Sector::two_photon, 1, 1, {}, 0.0});
  basis.push_back({'f', Sector::two_photon, 1, 0, {1.5}, d2 + h32});
  basis.push_back({'g', Sector::one_photon, 1, 0, {1.5}, d2 + h32});
  return basis;
}

SmallMat assemble_sector_hamiltonian(const ModelSpec& m, double r_a0, Sector sector) {
  if (!(r_a0 > 0.0))
    throw std::domain_error("assemble_sector_hamiltonian: R must be positive");
  const auto bare = sector_asymptotes(m, sector);
  const double half = 0.5 * (m.cavity.g_A + m.cavity.g_B);
  const double rt2 = (m.cavity.g_A + m.cavity.g_B) / std::numbers::sqrt2;
  const double wall = inner_wall(r_a0, m.wall_r_min);

  if (sector == Sector::one_photon) {
    SmallMat h(3);
    h(0, 0) = bare[0].energy + rddi_potential(m.rddi, RddiPair::p11, r_a0) +
              dispersion_potential(m.disp_eg, r_a0) + wall;
    h(1, 1) = bare[1].energy + vqq_potential(m.qc_au, r_a0) +
              dispersion_potential(m.disp_ee, r_a0) + wall;
    h(2, 2) = bare[2].energy + rddi_potential(m.rddi, RddiPair::p22, r_a0) +
              dispersion_potential(m.disp_eg, r_a0) + wall;
    h(0, 1) = h(1, 0) = half;
    h(1, 2) = h(2, 1) = half;
    // excitation exchange between the two singly-excited combinations
    h(0, 2) = h(2, 0) = rddi_potential(m.rddi, RddiPair::p12, r_a0);
    return h;
  }

  SmallMat h(4);
  h(0, 0) = bare[0].energy + rddi_potential(m.rddi, RddiPair::p11, r_a0) +
            dispersion_potential(m.disp_eg, r_a0) + wall;
  h(1, 1) = bare[1].energy + vqq_potential(m.qd_au, r_a0) +
            dispersion_potential(m.disp_ee, r_a0) + wall;
  h(2, 2) = bare[2].energy + dispersion_potential(m.disp_gg, r_a0) + wall;
  h(3, 3) = bare[3].energy + rddi_potential(m.rddi, RddiPair::p22, r_a0) +
            dispersion_potential(m.disp_eg, r_a0) + wall;
  h(0, 2) = h(2, 0) = rt2;  // both-ground state exchanges a photon with a or f
  h(2, 3) = h(3, 2) = rt2;
  h(0, 1) = h(1, 0) = half;
  h(1, 3) = h(3, 1) = half;
  return h;
}

namespace {

// column permutation maximizing the total |overlap| against the previous
// grid point; ov is the n x n table <prev_k | cur_j>
std::array<int, SmallMat::kMaxDim> best_overlap_permutation(
    const double (&ov)[SmallMat::kMaxDim][SmallMat::kMaxDim], int n) {
  std::array<int, SmallMat::kMaxDim> perm{}, best{};
  for (int k = 0; k < n; ++k) perm[k] = k;
  best = perm;
  double best_score = -1.0;
  do {
    double score = 0.0;
    for (int k = 0; k < n; ++k) score += std::abs(ov[k][perm[k]]);
    if (score > best_score) {
      best_score = score;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.begin() + n));
  return best;
}

}  // namespace

AdiabaticSpectrum diagonalize_spectrum(const ModelSpec& m, Sector sector,
                                       const RadialGrid& grid, int threads) {
  const std::size_t npts = grid.points();
  const int n = sector == Sector::one_photon ? 3 : 4;
  const auto nn = static_cast<std::size_t>(n);

  AdiabaticSpectrum spec;
  spec.sector = sector;
  spec.grid = grid;
  spec.channels = n;
  spec.energies.resize(npts * nn);
  spec.vectors.resize(npts * nn * nn);

  parallel_for(npts, threads, [&](std::size_t ip) {
    const double r = grid.r(ip);
    EigenResult er;
    try {
      er = jacobi_eigensolve(assemble_sector_hamiltonian(m, r, sector));
    } catch (const NumericalError& e) {
      std::ostringstream os;
      os << "eigensolve failed at R = " << r << " a0: " << e.context;
      throw NumericalError("dressed", os.str());
    }
    for (int ch = 0; ch < n; ++ch) {
      spec.energies[ip * nn + static_cast<std::size_t>(ch)] = er.values[ch];
      for (int i = 0; i < n; ++i)
        spec.vectors[(ip * nn + static_cast<std::size_t>(i)) * nn +
                     static_cast<std::size_t>(ch)] = er.vectors(i, ch);
    }
  });

  // sequential continuity pass: order-track each column by maximal overlap
  // with the previous point, then fix signs. A curve follows its character
  // through a crossing narrower than the grid step instead of being forced
  // into ascending order there, so tracked curves may genuinely cross.
  std::vector<double> prev(nn * nn), cur(nn * nn), out(nn * nn);
  std::array<double, SmallMat::kMaxDim> e_out{};
  for (std::size_t ip = 1; ip < npts; ++ip) {
    std::copy_n(&spec.vectors[(ip - 1) * nn * nn], nn * nn, prev.begin());
    std::copy_n(&spec.vectors[ip * nn * nn], nn * nn, cur.begin());

    double ov[SmallMat::kMaxDim][SmallMat::kMaxDim] = {};
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i)
          dot += prev[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(k)] *
                 cur[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(j)];
        ov[k][j] = dot;
      }
    const auto perm = best_overlap_permutation(ov, n);

    for (int k = 0; k < n; ++k) {
      const int j = perm[static_cast<std::size_t>(k)];
      const double sign = ov[k][j] < 0.0 ? -1.0 : 1.0;
      e_out[static_cast<std::size_t>(k)] =
          spec.energies[ip * nn + static_cast<std::size_t>(j)];
      for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(k)] =
            sign * cur[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(j)];
    }
    for (int k = 0; k < n; ++k)
      spec.energies[ip * nn + static_cast<std::size_t>(k)] =
          e_out[static_cast<std::size_t>(k)];
    std::copy_n(out.begin(), nn * nn, &spec.vectors[ip * nn * nn]);
  }

  // relabel slots by the asymptotic energy order so channel indices follow
  // the threshold ladder even when tracked curves recross on the way out
  {
    std::array<int, SmallMat::kMaxDim> slot{};
    for (int k = 0; k < n; ++k) slot[static_cast<std::size_t>(k)] = k;
    const std::size_t last = (npts - 1) * nn;
    std::stable_sort(slot.begin(), slot.begin() + n, [&](int x, int y) {
      return spec.energies[last + static_cast<std::size_t>(x)] <
             spec.energies[last + static_cast<std::size_t>(y)];
    });
    bool identity = true;
    for (int k = 0; k < n; ++k)
      if (slot[static_cast<std::size_t>(k)] != k) identity = false;
    if (!identity) {
      std::array<double, SmallMat::kMaxDim> e_tmp{};
      std::vector<double> v_tmp(nn * nn);
      for (std::size_t ip = 0; ip < npts; ++ip) {
        for (int k = 0; k < n; ++k) {
          const auto j = static_cast<std::size_t>(slot[static_cast<std::size_t>(k)]);
          e_tmp[static_cast<std::size_t>(k)] = spec.energies[ip * nn + j];
          for (int i = 0; i < n; ++i)
            v_tmp[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(k)] =
                spec.vectors[(ip * nn + static_cast<std::size_t>(i)) * nn + j];
        }
        for (int k = 0; k < n; ++k)
          spec.energies[ip * nn + static_cast<std::size_t>(k)] =
              e_tmp[static_cast<std::size_t>(k)];
        std::copy_n(v_tmp.begin(), nn * nn, &spec.vectors[ip * nn * nn]);
      }
    }
  }

  // channel naming follows the asymptotic energy order
  auto bare = sector_asymptotes(m, sector);
  std::sort(bare.begin(), bare.end(),
            [](const BareState& x, const BareState& y) { return x.energy < y.energy; });
  const std::vector<std::string> greek1 = {"alpha", "beta", "gamma"};
  const std::vector<std::string> greek2 = {"delta", "chi", "eta", "zeta"};
  const auto& greek = sector == Sector::one_photon ? greek1 : greek2;
  for (int ch = 0; ch < n; ++ch) {
    spec.names.push_back(greek[static_cast<std::size_t>(ch)]);
    spec.bare_labels.push_back(bare[static_cast<std::size_t>(ch)].label);
    spec.bare_asymptotes.push_back(bare[static_cast<std::size_t>(ch)].energy);
  }
  return spec;
}

PotentialCurve extract_curve(const AdiabaticSpectrum& spec, int channel) {
  if (channel < 0 || channel >= spec.channels)
    throw std::invalid_argument("extract_curve: channel out of range");
  PotentialCurve c;
  c.r_min = spec.grid.r_min;
  c.step = spec.grid.step;
  c.label = spec.names[static_cast<std::size_t>(channel)] + "(" +
            spec.bare_labels[static_cast<std::size_t>(channel)] + ")";
  const std::size_t npts = spec.points();
  c.values.resize(npts);
  for (std::size_t ip = 0; ip < npts; ++ip) c.values[ip] = spec.energy(ip, channel);
  c.asymptote = c.values.back();  // dressed threshold, cavity shifts included
  return c;
}

CrossingInfo find_pseudo_crossing(const AdiabaticSpectrum& spec, int lower, int upper) {
  if (lower < 0 || upper >= spec.channels || lower >= upper)
    throw std::invalid_argument("find_pseudo_crossing: bad channel pair");
  const std::size_t npts = spec.points();
  // closest approach of the signed separation; tracked curves can cross, in
  // which case the separation changes sign and the reported gap is zero
  auto sep = [&](std::size_t ip) { return spec.energy(ip, upper) - spec.energy(ip, lower); };
  CrossingInfo info;
  double best = 0.0;
  std::size_t ibest = 0;
  for (std::size_t ip = 1; ip + 1 < npts; ++ip) {
    const double dm = std::abs(sep(ip - 1));
    const double d0 = std::abs(sep(ip));
    const double dp = std::abs(sep(ip + 1));
    if (d0 < dm && d0 <= dp && (!info.found || d0 < best)) {
      info.found = true;
      best = d0;
      ibest = ip;
    }
  }
  if (!info.found) return info;

  const double dm = sep(ibest - 1);
  const double d0 = sep(ibest);
  const double dp = sep(ibest + 1);
  const double h = spec.grid.step;
  for (std::size_t lo : {ibest - 1, ibest}) {
    const double a = sep(lo), b = sep(lo + 1);
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      info.r_c = spec.grid.r(lo) + h * a / (a - b);
      info.gap = 0.0;
      return info;
    }
  }
  const double curv = dm - 2.0 * d0 + dp;
  if (std::abs(curv) > 1e-14 * std::max(1.0, std::abs(d0))) {
    const double shift = 0.5 * (dm - dp) / curv;  // in units of h, in [-1, 1]
    info.r_c = spec.grid.r(ibest) + shift * h;
    info.gap = std::abs(d0 - 0.125 * (dm - dp) * (dm - dp) / curv);
  } else {
    info.r_c = spec.grid.r(ibest);
    info.gap = std::abs(d0);
  }
  return info;
}

double well_depth(const PotentialCurve& curve) {
  if (curve.values.empty()) return 0.0;
  const double vmin = *std::min_element(curve.values.begin(), curve.values.end());
  return std::max(0.0, curve.asymptote - vmin);
}

}  // namespace cavscat
