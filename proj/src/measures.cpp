#include "phasec/measures.hpp"

namespace phasec {

namespace {

// the two axes complementary to c, in cyclic-free ascending order
std::array<int, 2> others(int c) {
  if (c == 0) return {1, 2};
  if (c == 1) return {0, 2};
  return {0, 1};
}

double real_checked(cplx v, const char* what) {
  if (std::abs(v.imag()) > 1e-9)
    throw IntegrityError(std::string("imaginary residue in ") + what + ": " +
                         std::to_string(v.imag()));
  return v.real();
}

void fill_derived(MomentReport& r) {
  for (int a = 0; a < 3; ++a) r.var[a] = r.second[a] - r.mean[a] * r.mean[a];
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      int p = pair_index(a, b);
      r.cov[p] = 0.5 * r.anticomm[p] - r.mean[a] * r.mean[b];
    }
}

}  // namespace

double MomentReport::balance_defect() const {
  const double vx = var[0], vy = var[1], vz = var[2];
  const double vxy = vx + vy + 2 * cov[0], vxz = vx + vz + 2 * cov[1], vyz = vy + vz + 2 * cov[2];
  const double vxyz = vx + vy + vz + 2 * (cov[0] + cov[1] + cov[2]);
  return std::abs(vxyz + vx + vy + vz - (vxy + vxz + vyz));
}

MomentReport moments_from_state(const Mat& rho, const Generators& g, double t) {
  MomentReport r;
  r.t = t;
  for (int a = 0; a < 3; ++a) {
    const Mat& J = g.axis(a);
    r.mean[a] = real_checked((rho * J).trace(), "mean");
    r.second[a] = real_checked((rho * J * J).trace(), "second moment");
  }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const Mat ac = g.axis(a) * g.axis(b) + g.axis(b) * g.axis(a);
      r.anticomm[pair_index(a, b)] = real_checked((rho * ac).trace(), "anticommutator");
    }
  fill_derived(r);
  return r;
}

MappedMoments map_moment_operators(const Generators& g, const KernelSet& ks) {
  MappedMoments m;
  for (int a = 0; a < 3; ++a) {
    m.linear[a] = map_operator(g.axis(a), ks);
    m.square[a] = map_operator(g.axis(a) * g.axis(a), ks);
  }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      m.anticomm[pair_index(a, b)] = map_anticommutator(g.axis(a), g.axis(b), ks);
  return m;
}

MomentReport moments_from_wigner(const PhaseGrid& wigner, const MappedMoments& ops, double t) {
  MomentReport r;
  r.t = t;
  for (int a = 0; a < 3; ++a) {
    r.mean[a] = real_checked(mean_value(ops.linear[a], wigner), "mean");
    r.second[a] = real_checked(mean_value(ops.square[a], wigner), "second moment");
    r.anticomm[a] = real_checked(mean_value(ops.anticomm[a], wigner), "anticommutator");
  }
  fill_derived(r);
  return r;
}

void squeezing_params(const MomentReport& m, CriteriaReport& out) {
  for (int c = 0; c < 3; ++c) {
    auto [a, b] = others(c);
    const double cv = m.cov[pair_index(a, b)];
    const double R = std::sqrt(cv * cv + 0.25 * m.mean[c] * m.mean[c]);
    out.R[c] = R < 1e-12 ? kUndefined : R;
  }
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c)
      out.S[a][c] = (a == c || !defined(out.R[c])) ? kUndefined : m.var[a] / out.R[c];
}

std::array<double, 3> entanglement_sorensen(const MomentReport& m, int n_spins) {
  std::array<double, 3> e{};
  for (int a = 0; a < 3; ++a) {
    auto [b, c] = others(a);
    const double den = m.mean[b] * m.mean[b] + m.mean[c] * m.mean[c];
    e[a] = den < 1e-12 ? kUndefined : n_spins * m.var[a] / den;
  }
  return e;
}

void entanglement_toth(const MomentReport& m, int n_spins, CriteriaReport& out) {
  const double n = n_spins;
  out.toth_bound = n * (n + 2) / 4;
  out.toth_sum_second = m.second[0] + m.second[1] + m.second[2];
  out.toth_sum_var = 0.5 * (n + 2) * (m.var[0] + m.var[1] + m.var[2]);
  for (int c = 0; c < 3; ++c) {
    auto [a, b] = others(c);
    out.toth_pair_second[c] = 0.5 * (n + 2) * (m.second[a] + m.second[b] - (n - 1) * m.var[c]);
    out.toth_pair_var[c] = (n - 1) * (m.var[a] + m.var[b]) - m.second[c] + n;
  }
  for (int a = 0; a < 3; ++a) {
    auto [b, c] = others(a);
    const double den = m.second[b] + m.second[c] - n / 2;
    out.toth_param[a] = den <= 1e-12 ? kUndefined : (n - 1) * m.var[a] / den;
  }
}

bool CriteriaReport::toth_inequality_violated() const {
  const double tol = 1e-9 * std::max(1.0, toth_bound);
  if (toth_sum_var < toth_bound - tol) return true;
  for (int c = 0; c < 3; ++c)
    if (toth_pair_second[c] > toth_bound + tol || toth_pair_var[c] < toth_bound - tol) return true;
  return false;
}

std::array<double, 3> snr(const MomentReport& m) {
  std::array<double, 3> r{};
  for (int a = 0; a < 3; ++a)
    r[a] = m.var[a] < 1e-12 ? kUndefined : std::abs(m.mean[a]) / std::sqrt(m.var[a]);
  return r;
}

CriteriaReport evaluate_criteria(const MomentReport& m, int n_spins) {
  CriteriaReport out;
  out.t = m.t;
  squeezing_params(m, out);
  out.sorensen = entanglement_sorensen(m, n_spins);
  entanglement_toth(m, n_spins, out);
  out.snr = snr(m);
  return out;
}

MomentReport transform_moments(const MomentReport& m, const RotationCoefficients& rc) {
  if (!rc.valid()) throw DomainError("rotation coefficients are not a proper rotation");
  const Eigen::Matrix3d& A = rc.A;
  Eigen::Vector3d mean(m.mean[0], m.mean[1], m.mean[2]);
  Eigen::Matrix3d C;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) C(a, b) = m.covariance(a, b);
  const Eigen::Vector3d mbar = A * mean;
  const Eigen::Matrix3d Cbar = A * C * A.transpose();
  MomentReport r;
  r.t = m.t;
  for (int a = 0; a < 3; ++a) {
    r.mean[a] = mbar(a);
    r.var[a] = Cbar(a, a);
    r.second[a] = Cbar(a, a) + mbar(a) * mbar(a);
  }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      int p = pair_index(a, b);
      r.cov[p] = Cbar(a, b);
      r.anticomm[p] = 2 * (Cbar(a, b) + mbar(a) * mbar(b));
    }
  return r;
}

CoherentVariances coherent_variances(double j, const CoherentParams& p) {
  const double st = std::sin(p.theta), s2t = std::sin(2 * p.theta);
  const double cp = std::cos(p.phi), sp = std::sin(p.phi), s2p = std::sin(2 * p.phi);
  CoherentVariances v;
  v.x = (j / 2) * (1 - cp * cp * st * st);
  v.y = (j / 2) * (1 - sp * sp * st * st);
  v.z = (j / 2) * st * st;
  v.xy = -(j / 4) * s2p * st * st;
  v.xz = (j / 4) * cp * s2t;
  v.yz = (j / 4) * sp * s2t;
  v.x_plus_y = (j / 2) * (2 - st * st * (1 + s2p));
  v.x_plus_z = (j / 2) * (1 + sp * sp * st * st + cp * s2t);
  v.y_plus_z = (j / 2) * (1 + cp * cp * st * st + sp * s2t);
  v.x_plus_y_plus_z = (j / 2) * (2 - s2p * st * st + (cp + sp) * s2t);
  return v;
}

}  // namespace phasec
