// Copyright 2026 The qomech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/LU>

#include "qomech/errors.hpp"
#include "qomech/steady_state.hpp"

namespace qomech {

namespace {

constexpr double kMechanicalRcond = 1e-13;
constexpr double kOracleMargin = 0.05;
constexpr double kBisectRel = 1e-12;
constexpr int kPoleLevels = 60;
constexpr int kPoleSubdivisions = 8;

struct Sample {
  double n;
  double f;
  bool ok;
};

std::string describe(const SystemParams& p) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "delta_c=%.12g omega1=%.12g omega2=%.12g g1=%.12g g2=%.12g "
                "omega_ex=%.12g theta=%.12g eta=%.12g kappa=%.12g",
                p.delta_c, p.omega1, p.omega2, p.g1, p.g2, p.omega_ex, p.theta,
                p.eta, p.kappa);
  return buf;
}

std::string fmt_roots(const std::vector<double>& r) {
  std::string s = "{";
  char buf[32];
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.12g", i ? ", " : "", r[i]);
    s += buf;
  }
  return s + "}";
}

// Real form of
//   (omega1 - i gamma1) b1 + Om e^{i theta} b2 = -g1 n
//   (omega2 - i gamma2) b2 + 2 g2 n (b2 + b2*) + Om e^{-i theta} b1 = 0
// in the unknowns (Re b1, Im b1, Re b2, Im b2).
Eigen::Matrix4d mechanical_matrix(const SystemParams& p, double n,
                                  bool with_damping) {
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  const double om = p.omega_ex;
  const double ga1 = with_damping ? p.gamma1 : 0.0;
  const double ga2 = with_damping ? p.gamma2 : 0.0;
  Eigen::Matrix4d m;
  m << p.omega1, ga1, om * c, -om * s,
       -ga1, p.omega1, om * s, om * c,
       om * c, om * s, p.omega2 + 4.0 * p.g2 * n, ga2,
       -om * s, om * c, -ga2, p.omega2;
  return m;
}

double oracle_f(const SystemParams& p, double n, bool with_damping) {
  const MechanicalState m = solve_mechanical(p, n, with_damping);
  return p.eta * p.eta /
             (p.kappa * p.kappa + m.delta_eff * m.delta_eff) -
         n;
}

// Bisection on a bracket with f(a) and f(b) of opposite sign.
double bisect(const SystemParams& p, double a, double b, double fa,
              bool with_damping) {
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (b - a <= kBisectRel * std::max(std::abs(b), 1e-300)) break;
    double fm;
    try {
      fm = oracle_f(p, m, with_damping);
    } catch (const Error&) {
      break;
    }
    if (fm == 0.0) return m;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Polynomial roots are accurate to a few ulps of the coefficients, but near the
// mechanical resonance the self-consistency map is so steep that this is not
// enough for the residual gate. Look for a sign change of f in brackets growing
// up to the root-agreement tolerance and bisect; otherwise leave n untouched.
double polish_on_map(const SystemParams& p, double n) {
  for (double rel : {1e-9, 1e-8, 1e-7, 1e-6}) {
    const double w = std::max(rel * n, 1e-12);
    const double a = std::max(0.0, n - w), b = n + w;
    try {
      const double fa = oracle_f(p, a, false);
      const double fb = oracle_f(p, b, false);
      if (fa == 0.0) return a;
      if (fb == 0.0) return b;
      if ((fa < 0.0) != (fb < 0.0)) return bisect(p, a, b, fa, false);
    } catch (const Error&) {
      return n;
    }
  }
  return n;
}

}  // namespace

MechanicalState solve_mechanical(const SystemParams& p, double n,
                                 bool with_damping) {
  const Eigen::Matrix4d m = mechanical_matrix(p, n, with_damping);
  Eigen::Vector4d rhs(-p.g1 * n, 0.0, 0.0, 0.0);

  const Eigen::PartialPivLU<Eigen::Matrix4d> lu(m);
  const double rc = lu.rcond();
  if (!(rc > kMechanicalRcond)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "mechanical system at n=%.12g (rcond=%.3g)",
                  n, rc);
    throw Error(ErrorCode::kSingularMechanicalSystem, buf);
  }
  const Eigen::Vector4d v = lu.solve(rhs);

  MechanicalState out;
  out.beta1 = Complex(v(0), v(1));
  out.beta2 = Complex(v(2), v(3));
  out.delta_eff = effective_detuning(p, out.beta1, out.beta2);
  return out;
}

double effective_detuning(const SystemParams& p, Complex beta1,
                          Complex beta2) noexcept {
  const Complex quad =
      std::conj(beta2) * std::conj(beta2) + beta2 * beta2 + 2.0 * std::norm(beta2);
  return p.delta_c + 2.0 * p.g1 * beta1.real() + p.g2 * quad.real();
}

double self_consistency_residual(const SystemParams& p, double n,
                                 double delta_eff) noexcept {
  const double lhs =
      p.eta * p.eta / (p.kappa * p.kappa + delta_eff * delta_eff);
  return std::abs(lhs - n) / std::max(1.0, n);
}

SteadyStateBranch reconstruct_branch(const ValidatedParams& vp, double n_p,
                                     bool with_damping) {
  const SystemParams& p = vp.get();
  if (!(n_p >= 0.0) || !std::isfinite(n_p)) {
    throw Error(ErrorCode::kNegativeValue, "photon number must be >= 0");
  }
  const MechanicalState m = solve_mechanical(p, n_p, with_damping);

  SteadyStateBranch b;
  b.n_p = n_p;
  b.beta1 = m.beta1;
  b.beta2 = m.beta2;
  b.delta_eff = m.delta_eff;
  b.residual = self_consistency_residual(p, n_p, m.delta_eff);
  if (b.residual > tolerance::kRootAccept) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "n=%.12g has residual %.3g", n_p,
                  b.residual);
    throw Error(ErrorCode::kResidualTooLarge, buf);
  }
  const Complex raw = Complex(0.0, -p.eta) / Complex(p.kappa, m.delta_eff);
  const double mag = std::abs(raw);
  b.alpha = mag > 0.0 ? raw * (std::sqrt(n_p) / mag) : Complex(0.0, 0.0);
  return b;
}

OracleResult oracle_roots(const ValidatedParams& vp, std::size_t scan_points,
                          bool with_damping) {
  if (scan_points < kMinScanPoints) {
    throw Error(ErrorCode::kInvalidSpec, "oracle needs at least 1000 scan points");
  }
  const SystemParams& p = vp.get();
  OracleResult out;
  if (p.eta == 0.0) {
    out.roots.push_back(0.0);
    return out;
  }

  const double hi = p.eta * p.eta / (p.kappa * p.kappa) * (1.0 + kOracleMargin);
  auto sample = [&](double n) {
    Sample s{n, 0.0, false};
    try {
      s.f = oracle_f(p, n, with_damping);
      s.ok = true;
    } catch (const Error&) {
      ++out.skipped_points;
    }
    return s;
  };
  auto det = [&](double n) {
    return mechanical_matrix(p, n, with_damping).determinant();
  };

  std::vector<Sample> pts;
  std::vector<double> dets;
  pts.reserve(scan_points);
  dets.reserve(scan_points);
  for (std::size_t i = 0; i < scan_points; ++i) {
    const double n = hi * static_cast<double>(i) / static_cast<double>(scan_points - 1);
    pts.push_back(sample(n));
    dets.push_back(det(n));
  }

  // Delta(n) has a pole wherever the mechanical determinant changes sign, and
  // f can swing through a pair of roots arbitrarily close to it. Locate each
  // pole and sample both sides on a geometrically shrinking grid.
  std::vector<Sample> extra;
  for (std::size_t i = 0; i + 1 < scan_points; ++i) {
    const double lo_n = pts[i].n, hi_n = pts[i + 1].n;
    if (dets[i] * dets[i + 1] > 0.0 || dets[i] == dets[i + 1]) continue;
    double a = lo_n, b = hi_n, da = dets[i];
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      const double dm = det(m);
      if (dm == 0.0) {
        a = b = m;
        break;
      }
      if ((dm < 0.0) == (da < 0.0)) {
        a = m;
        da = dm;
      } else {
        b = m;
      }
    }
    const double pole = 0.5 * (a + b);
    for (int k = 0; k < kPoleLevels; ++k) {
      const double h0 = (hi_n - lo_n) * std::ldexp(1.0, -k);
      for (int j = 0; j < kPoleSubdivisions; ++j) {
        const double h = h0 * (1.0 - 0.5 * j / kPoleSubdivisions);
        for (double n : {pole - h, pole + h}) {
          if (n > lo_n && n < hi_n) extra.push_back(sample(n));
        }
      }
    }
  }
  if (!extra.empty()) {
    pts.insert(pts.end(), extra.begin(), extra.end());
    std::sort(pts.begin(), pts.end(),
              [](const Sample& x, const Sample& y) { return x.n < y.n; });
  }
  const std::size_t n_pts = pts.size();

  // Index of the previous valid point, so skipped points are bridged.
  std::size_t prev = n_pts;
  for (std::size_t i = 0; i < n_pts; ++i) {
    if (!pts[i].ok) continue;
    if (pts[i].f == 0.0) {
      out.roots.push_back(pts[i].n);
    } else if (prev != n_pts && pts[prev].f != 0.0 &&
               ((pts[prev].f < 0.0) != (pts[i].f < 0.0))) {
      out.roots.push_back(bisect(p, pts[prev].n, pts[i].n, pts[prev].f, with_damping));
    }
    prev = i;
  }

  // Two roots inside one grid cell leave no sign change; look for interior
  // extrema of f that cross zero.
  for (std::size_t i = 1; i + 1 < n_pts; ++i) {
    if (!pts[i - 1].ok || !pts[i].ok || !pts[i + 1].ok) continue;
    const double f0 = pts[i - 1].f, f1 = pts[i].f, f2 = pts[i + 1].f;
    const double sg = f1 > 0.0 ? 1.0 : -1.0;
    if (f1 == 0.0 || sg * f0 <= 0.0 || sg * f2 <= 0.0) continue;
    if (sg * f1 > sg * f0 || sg * f1 > sg * f2) continue;

    constexpr double kInvPhi = 0.6180339887498949;
    double a = pts[i - 1].n, b = pts[i + 1].n;
    double best_n = pts[i].n, best_f = sg * f1;
    bool failed = false;
    for (int it = 0; it < 80 && !failed; ++it) {
      const double c1 = b - kInvPhi * (b - a);
      const double c2 = a + kInvPhi * (b - a);
      try {
        const double v1 = sg * oracle_f(p, c1, with_damping);
        const double v2 = sg * oracle_f(p, c2, with_damping);
        if (v1 < best_f) { best_f = v1; best_n = c1; }
        if (v2 < best_f) { best_f = v2; best_n = c2; }
        if (best_f < 0.0) break;
        if (v1 < v2) b = c2; else a = c1;
      } catch (const Error&) {
        failed = true;
      }
    }
    if (failed || best_f >= 0.0) continue;
    const double fm = sg * best_f;
    out.roots.push_back(bisect(p, pts[i - 1].n, best_n, f0, with_damping));
    out.roots.push_back(bisect(p, best_n, pts[i + 1].n, fm, with_damping));
  }

  std::sort(out.roots.begin(), out.roots.end());
  std::vector<double> dedup;
  for (double r : out.roots) {
    if (!dedup.empty() && r - dedup.back() < tolerance::kDedupe * (1.0 + r)) continue;
    dedup.push_back(r);
  }
  out.roots = std::move(dedup);
  return out;
}

bool roots_agree(const std::vector<double>& a, const std::vector<double>& b,
                 double rel_tol) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    if (std::abs(a[i] - b[i]) > rel_tol * scale) return false;
  }
  return true;
}

std::string_view to_string(BranchDiagnostic::Kind kind) noexcept {
  switch (kind) {
    case BranchDiagnostic::Kind::kCoefficientMismatch: return "COEFFICIENT-MISMATCH";
    case BranchDiagnostic::Kind::kResidualRejected: return "RESIDUAL-REJECTED";
    case BranchDiagnostic::Kind::kSingular: return "SINGULAR";
    case BranchDiagnostic::Kind::kOracleSkipped: return "ORACLE-SKIPPED";
  }
  return "UNKNOWN";
}

BranchSet solve_branches(const ValidatedParams& vp, const SolveOptions& options) {
  const SystemParams& p = vp.get();
  BranchSet out;
  out.polynomial_roots = find_real_roots(build_polynomial(vp, options.coefficients));

  std::vector<SteadyStateBranch> accepted;
  std::vector<double> accepted_roots;
  auto try_branch = [&](double n, bool damped) -> bool {
    try {
      accepted.push_back(reconstruct_branch(vp, n, damped));
      accepted_roots.push_back(n);
      return true;
    } catch (const Error& e) {
      const auto kind = e.code() == ErrorCode::kResidualTooLarge
                            ? BranchDiagnostic::Kind::kResidualRejected
                            : BranchDiagnostic::Kind::kSingular;
      out.diagnostics.push_back({kind, e.what()});
      return false;
    }
  };

  // The closed-form polynomial has no damping terms, so damped branches come
  // from the oracle alone.
  if (!options.with_mech_damping) {
    for (double n : out.polynomial_roots) try_branch(polish_on_map(p, n), false);
  }

  if (!options.oracle_mode && !options.with_mech_damping) {
    out.branches = std::move(accepted);
    return out;
  }

  const OracleResult orc =
      oracle_roots(vp, options.scan_points, options.with_mech_damping);
  out.oracle_roots = orc.roots;
  if (orc.skipped_points > 0) {
    out.diagnostics.push_back(
        {BranchDiagnostic::Kind::kOracleSkipped,
         std::to_string(orc.skipped_points) + " singular scan points skipped"});
  }

  if (options.with_mech_damping) {
    accepted.clear();
    accepted_roots.clear();
    for (double n : orc.roots) try_branch(n, true);
    out.branches = std::move(accepted);
    return out;
  }

  if (roots_agree(accepted_roots, orc.roots)) {
    out.branches = std::move(accepted);
    return out;
  }

  out.coefficient_mismatch = true;
  out.diagnostics.push_back(
      {BranchDiagnostic::Kind::kCoefficientMismatch,
       "polynomial " + fmt_roots(accepted_roots) + " vs oracle " +
           fmt_roots(orc.roots) + " at " + describe(p)});

  // Oracle roots are authoritative; residual-validated polynomial roots that
  // the grid scan missed are kept as well.
  std::vector<SteadyStateBranch> merged;
  const auto previous_polynomial = std::move(accepted);
  accepted.clear();
  accepted_roots.clear();
  for (double n : orc.roots) try_branch(n, false);
  merged = std::move(accepted);
  for (const auto& b : previous_polynomial) {
    const bool seen = std::any_of(merged.begin(), merged.end(), [&](const auto& m) {
      return std::abs(m.n_p - b.n_p) <= 1e-6 * std::max({1.0, m.n_p, b.n_p});
    });
    if (!seen) merged.push_back(b);
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.n_p < b.n_p; });
  out.branches = std::move(merged);
  return out;
}

}  // namespace qomech
