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

#include "rsbc/wigner.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace rsbc {

namespace {

constexpr int kMaxWorkingDim = 1024;

cplx beta_of(double x, double p) { return cplx(x, p) / std::sqrt(2.0); }

// <n| D(β) Π D†(β) |m> for n >= m, with D(β) Π D†(β) = D(2β) Π:
//   (-1)^m sqrt(m!/n!) (2β)^{n-m} e^{-2|β|²} L_m^{(n-m)}(4|β|²).
double wigner_laguerre(const Matrix& rho, cplx beta) {
  const int d = static_cast<int>(rho.rows());
  const double r = std::abs(beta);
  const double theta = std::arg(beta);
  const double x4 = 4.0 * r * r;
  std::vector<double> lag(d);
  double acc = 0.0;
  for (int k = 0; k < d; ++k) {
    if (r == 0.0 && k > 0) break;
    const int count = d - k;
    lag[0] = 1.0;
    if (count > 1) lag[1] = 1.0 + k - x4;
    for (int m = 1; m + 1 < count; ++m) lag[m + 1] = ((2.0 * m + 1.0 + k - x4) * lag[m] - (m + k) * lag[m - 1]) / (m + 1.0);
    const cplx phase = std::polar(1.0, k * theta);
    const double log_2r = k > 0 ? k * std::log(2.0 * r) : 0.0;
    cplx part = 0.0;
    for (int m = 0; m < count; ++m) {
      const double log_pref = 0.5 * (std::lgamma(m + 1.0) - std::lgamma(m + k + 1.0)) + log_2r - 2.0 * r * r;
      const double elem = (m % 2 == 0 ? 1.0 : -1.0) * std::exp(log_pref) * lag[m];
      part += rho(m, m + k) * elem;
    }
    part *= phase;
    acc += k == 0 ? part.real() : 2.0 * part.real();
  }
  return 2.0 / kPi * acc;
}

int expm_working_dim(int dim, double r) {
  const double span = std::sqrt(static_cast<double>(dim)) + r;
  return std::max(dim, default_truncation(span * span));
}

double wigner_expm(const Matrix& rho, cplx beta) {
  const int d = static_cast<int>(rho.rows());
  const int w = expm_working_dim(d, std::abs(beta));
  if (w > kMaxWorkingDim) {
    throw TruncationError("wigner_grid: expm evaluation at |beta|=" + std::to_string(std::abs(beta)) + " needs " +
                          std::to_string(w) + " levels");
  }
  const LadderOperators ops = ladder_and_number(w);
  const Matrix gen = beta * ops.creation.matrix() - std::conj(beta) * ops.annihilation.matrix();
  const Matrix disp = gen.exp();
  Vector parity(w);
  for (int n = 0; n < w; ++n) parity(n) = n % 2 == 0 ? 1.0 : -1.0;
  const Matrix a = disp * parity.asDiagonal() * disp.adjoint();
  return 2.0 / kPi * rho.cwiseProduct(a.topLeftCorner(d, d).transpose()).sum().real();
}

double evaluate(const Matrix& rho, double x, double p, WignerMethod method) {
  const cplx beta = beta_of(x, p);
  return method == WignerMethod::kLaguerre ? wigner_laguerre(rho, beta) : wigner_expm(rho, beta);
}

void check_state(const DensityMatrix& rho) {
  if (rho.num_subsystems() != 1) throw std::invalid_argument("wigner: single-mode state expected");
  if (!rho.is_hermitian()) throw std::invalid_argument("wigner: state must be Hermitian");
}

}  // namespace

double WignerGrid::dx() const { return xs.size() > 1 ? xs[1] - xs[0] : 0.0; }
double WignerGrid::dp() const { return ps.size() > 1 ? ps[1] - ps[0] : 0.0; }
double WignerGrid::integral() const { return 0.5 * values.sum() * dx() * dp(); }

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("linspace: count must be >= 1");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1.0);
  return out;
}

double wigner_point(const DensityMatrix& rho, double x, double p, WignerMethod method) {
  check_state(rho);
  if (!std::isfinite(x) || !std::isfinite(p)) throw std::invalid_argument("wigner_point: coordinates must be finite");
  return evaluate(rho.matrix(), x, p, method);
}

WignerGrid wigner_grid(const DensityMatrix& rho, const std::vector<double>& xs, const std::vector<double>& ps,
                       const WignerOptions& options) {
  check_state(rho);
  if (xs.empty() || ps.empty()) throw std::invalid_argument("wigner_grid: empty grid");
  for (double v : xs) {
    if (!std::isfinite(v)) throw std::invalid_argument("wigner_grid: grid must be finite");
  }
  for (double v : ps) {
    if (!std::isfinite(v)) throw std::invalid_argument("wigner_grid: grid must be finite");
  }
  if (options.method == WignerMethod::kExpm) {
    double r_max = 0.0;
    for (double x : xs) {
      for (double p : ps) r_max = std::max(r_max, std::abs(beta_of(x, p)));
    }
    const int w = expm_working_dim(rho.dim(), r_max);
    if (w > kMaxWorkingDim) {
      throw TruncationError("wigner_grid: grid extent needs a " + std::to_string(w) + "-level working space");
    }
  }
  if (options.threads < 0) throw std::invalid_argument("wigner_grid: threads must be >= 0");

  WignerGrid grid;
  grid.xs = xs;
  grid.ps = ps;
  grid.values.resize(xs.size(), ps.size());
  const Matrix& m = rho.matrix();
  auto row = [&](std::size_t i) {
    for (std::size_t j = 0; j < ps.size(); ++j) grid.values(i, j) = evaluate(m, xs[i], ps[j], options.method);
  };
  int threads = options.threads == 0 ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency())) : options.threads;
  threads = std::min<int>(threads, static_cast<int>(xs.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) row(i);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < xs.size(); i += threads) row(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  if (!grid.values.allFinite()) throw NumericalError("wigner_grid: non-finite values");
  return grid;
}

}  // namespace rsbc
