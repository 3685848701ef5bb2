// Copyright 2026 The rsbc Authors
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

#include "rsbc/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rsbc {

namespace {

void require_single_mode(const DensityMatrix& rho, const char* what) {
  if (rho.num_subsystems() != 1) throw std::invalid_argument(std::string(what) + ": single-mode state expected");
}

// Amplitude of K_L on |n> -> |n-L>: sqrt(binom(n, L) κ^L e^{-γt(n-L)}).
double loss_amplitude(int n, int order, double kappa, double gamma_t) {
  if (order > n) return 0.0;
  if (order == 0) return std::exp(-0.5 * gamma_t * n);
  const double log_amp = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(order + 1.0) - std::lgamma(n - order + 1.0) +
                                order * std::log(kappa) - gamma_t * (n - order));
  return std::exp(log_amp);
}

int resolve_cutoff(const NoiseSpec& spec, int dim) {
  return spec.kraus_cutoff > 0 ? std::min(spec.kraus_cutoff, dim - 1)
                               : default_kraus_cutoff(static_cast<double>(dim - 1), spec.gamma_t, dim);
}

// Σ_{L ≤ cutoff} binomial(n, L) weights, the diagonal of Σ K†K on level n.
double kept_weight(int n, int cutoff, double kappa, double gamma_t) {
  double acc = 0.0;
  for (int l = 0; l <= std::min(n, cutoff); ++l) {
    const double a = loss_amplitude(n, l, kappa, gamma_t);
    acc += a * a;
  }
  return acc;
}

}  // namespace

void NoiseSpec::validate() const {
  if (!(gamma_t >= 0.0) || !std::isfinite(gamma_t)) throw std::invalid_argument("NoiseSpec: gamma_t must be >= 0");
  if (kraus_cutoff < 0) throw std::invalid_argument("NoiseSpec: kraus_cutoff must be >= 0");
}

int default_kraus_cutoff(double mean_photons, double gamma_t, int dim) {
  const double load = mean_photons * gamma_t;
  const int rule = static_cast<int>(std::ceil(load + 10.0 * std::sqrt(load) + 10.0));
  return std::max(0, std::min(rule, dim - 1));
}

std::vector<FockOperator> photon_loss_kraus(const NoiseSpec& spec, int dim) {
  if (spec.kind != NoiseKind::kPhotonLoss) throw std::invalid_argument("photon_loss_kraus: spec is not photon loss");
  spec.validate();
  if (dim < 1) throw std::invalid_argument("photon_loss_kraus: dim must be >= 1");
  if (spec.gamma_t == 0.0) return {FockOperator::identity(dim)};

  const double kappa = -std::expm1(-spec.gamma_t);
  const int cutoff = resolve_cutoff(spec, dim);
  for (int n = 0; n < dim; ++n) {
    const double deficit = 1.0 - kept_weight(n, cutoff, kappa, spec.gamma_t);
    if (deficit > tol::kUnitary) {
      throw TruncationError("photon_loss_kraus: cutoff L_max=" + std::to_string(cutoff) +
                            " leaves completeness deficit " + std::to_string(deficit) + " on level " +
                            std::to_string(n));
    }
  }
  std::vector<FockOperator> out;
  out.reserve(cutoff + 1);
  for (int l = 0; l <= cutoff; ++l) {
    Matrix k = Matrix::Zero(dim, dim);
    for (int n = l; n < dim; ++n) k(n - l, n) = loss_amplitude(n, l, kappa, spec.gamma_t);
    out.emplace_back(std::move(k));
  }
  return out;
}

double completeness_deficit(const std::vector<FockOperator>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("completeness_deficit: empty Kraus set");
  const int d = kraus.front().dim();
  Matrix acc = Matrix::Zero(d, d);
  for (const auto& k : kraus) acc += k.matrix().adjoint() * k.matrix();
  return (acc - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

DensityMatrix apply_kraus(const DensityMatrix& rho, const std::vector<FockOperator>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("apply_kraus: empty Kraus set");
  Matrix acc = Matrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : kraus) {
    if (k.dim() != rho.dim()) throw std::invalid_argument("apply_kraus: dimension mismatch");
    acc.noalias() += k.matrix() * rho.matrix() * k.matrix().adjoint();
  }
  return DensityMatrix(std::move(acc), rho.dims());
}

DensityMatrix apply_noise(const DensityMatrix& rho, const NoiseSpec& spec) {
  spec.validate();
  require_single_mode(rho, "apply_noise");
  if (spec.kind == NoiseKind::kDephasing) return dephasing_channel(spec, rho);
  const int d = rho.dim();
  if (spec.gamma_t == 0.0) return rho;

  // Each K_L is a single band, so (K rho K†)_ij = k_i rho_{i+L, j+L} k_j.
  // Same result as apply_kraus(rho, photon_loss_kraus(spec, d)) in O(D²) per L.
  const double kappa = -std::expm1(-spec.gamma_t);
  const int cutoff = resolve_cutoff(spec, d);
  for (int n = 0; n < d; ++n) {
    if (1.0 - kept_weight(n, cutoff, kappa, spec.gamma_t) > tol::kUnitary) {
      throw TruncationError("apply_noise: Kraus cutoff " + std::to_string(cutoff) + " too small");
    }
  }
  const Matrix& in = rho.matrix();
  Matrix out = Matrix::Zero(d, d);
  Eigen::VectorXd amp(d);
  for (int l = 0; l <= cutoff; ++l) {
    const int span = d - l;
    for (int i = 0; i < span; ++i) amp(i) = loss_amplitude(i + l, l, kappa, spec.gamma_t);
    out.topLeftCorner(span, span) +=
        (amp.head(span) * amp.head(span).transpose()).cast<cplx>().cwiseProduct(in.bottomRightCorner(span, span));
  }
  return DensityMatrix(std::move(out), rho.dims());
}

DensityMatrix loss_on_coherent_superposition(const std::vector<cplx>& coeffs, const std::vector<cplx>& alphas,
                                             double gamma_t, int dim) {
  if (coeffs.size() != alphas.size() || coeffs.empty()) {
    throw std::invalid_argument("loss_on_coherent_superposition: coefficient and amplitude lists must match");
  }
  if (!(gamma_t >= 0.0)) throw std::invalid_argument("loss_on_coherent_superposition: gamma_t must be >= 0");
  const double kappa = -std::expm1(-gamma_t);
  const double shrink = std::exp(-0.5 * gamma_t);
  std::vector<Vector> legs;
  legs.reserve(alphas.size());
  for (const cplx a : alphas) legs.push_back(coherent_state(a * shrink, dim).amps);

  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t m = 0; m < alphas.size(); ++m) {
    for (std::size_t mp = 0; mp < alphas.size(); ++mp) {
      const cplx am = alphas[m];
      const cplx amp = alphas[mp];
      const cplx weight = coeffs[m] * std::conj(coeffs[mp]) *
                          std::exp(kappa * (am * std::conj(amp)) - 0.5 * kappa * (std::norm(am) + std::norm(amp)));
      out.noalias() += weight * legs[m] * legs[mp].adjoint();
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix dephasing_channel(const NoiseSpec& spec, const DensityMatrix& rho) {
  if (spec.kind != NoiseKind::kDephasing) throw std::invalid_argument("dephasing_channel: spec is not dephasing");
  spec.validate();
  require_single_mode(rho, "dephasing_channel");
  Matrix out = rho.matrix();
  for (int j = 0; j < rho.dim(); ++j) {
    for (int i = 0; i < rho.dim(); ++i) {
      const double gap = static_cast<double>(i - j);
      out(i, j) *= std::exp(-0.5 * spec.gamma_t * gap * gap);
    }
  }
  return DensityMatrix(std::move(out), rho.dims());
}

namespace {

Matrix integrate_rk4(const Matrix& rho0, const Matrix& jump, double gamma_t, int steps) {
  const Matrix jump_dag = jump.adjoint();
  const Matrix decay = jump_dag * jump;
  bool diag = true;
  for (Eigen::Index j = 0; j < jump.cols() && diag; ++j) {
    for (Eigen::Index i = 0; i < jump.rows(); ++i) {
      if (i != j && jump(i, j) != cplx(0.0, 0.0)) {
        diag = false;
        break;
      }
    }
  }
  const Vector jd = jump.diagonal();
  const Vector dd = decay.diagonal();

  auto rhs = [&](const Matrix& r) -> Matrix {
    if (diag) {
      // (L r L† - ½{L†L, r})_ij = r_ij (l_i l_j* - ½(|l_i|² + |l_j|²))
      Matrix out(r.rows(), r.cols());
      for (Eigen::Index j = 0; j < r.cols(); ++j) {
        for (Eigen::Index i = 0; i < r.rows(); ++i) {
          out(i, j) = r(i, j) * (jd(i) * std::conj(jd(j)) - 0.5 * (dd(i) + dd(j)));
        }
      }
      return out;
    }
    return jump * r * jump_dag - 0.5 * (decay * r + r * decay);
  };

  const double h = gamma_t / steps;
  Matrix r = rho0;
  for (int s = 0; s < steps; ++s) {
    const Matrix k1 = rhs(r);
    const Matrix k2 = rhs(r + 0.5 * h * k1);
    const Matrix k3 = rhs(r + 0.5 * h * k2);
    const Matrix k4 = rhs(r + h * k3);
    r += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return r;
}

}  // namespace

DensityMatrix lindblad_integrator(const DensityMatrix& rho0, const FockOperator& jump, double gamma_t,
                                  const LindbladOptions& options) {
  if (options.steps < 100) throw std::invalid_argument("lindblad_integrator: at least 100 steps required");
  if (!(gamma_t >= 0.0)) throw std::invalid_argument("lindblad_integrator: gamma_t must be >= 0");
  if (jump.dim() != rho0.dim()) throw std::invalid_argument("lindblad_integrator: dimension mismatch");
  if (gamma_t == 0.0) return rho0;

  Matrix full = integrate_rk4(rho0.matrix(), jump.matrix(), gamma_t, options.steps);
  const Matrix half = integrate_rk4(rho0.matrix(), jump.matrix(), gamma_t, options.steps / 2);
  const double gap = (full - half).cwiseAbs().maxCoeff();
  if (gap > options.halving_tolerance) {
    throw NumericalError("lindblad_integrator: " + std::to_string(options.steps) +
                         " steps disagree with half the steps by " + std::to_string(gap));
  }
  return DensityMatrix(std::move(full), rho0.dims());
}

}  // namespace rsbc
