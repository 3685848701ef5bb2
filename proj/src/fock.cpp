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

#include "rsbc/fock.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace rsbc {

namespace {

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

void check_square(const Matrix& m, const std::vector<int>& dims, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  if (dims.empty() || product(dims) != m.rows()) {
    throw std::invalid_argument(std::string(what) + ": subsystem dims do not match matrix size");
  }
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument(std::string(what) + ": subsystem dim must be >= 1");
  }
}

bool has_zero_offdiagonal(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && m(i, j) != cplx(0.0, 0.0)) return false;
    }
  }
  return true;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------- FockVector

bool FockVector::is_normalized(double tol) const { return std::abs(norm_sq() - 1.0) <= tol; }

double FockVector::edge_population() const {
  return amps.size() == 0 ? 0.0 : std::norm(amps(amps.size() - 1));
}

FockVector FockVector::normalized() const {
  const double n = std::sqrt(norm_sq());
  if (n <= 0.0) throw ProjectionError("cannot normalize a zero vector");
  return FockVector{amps / n, leakage};
}

// -------------------------------------------------------------- FockOperator

FockOperator::FockOperator(Matrix m) : FockOperator(std::move(m), std::vector<int>{}) {}

FockOperator::FockOperator(Matrix m, std::vector<int> dims) : m_(std::move(m)), dims_(std::move(dims)) {
  if (dims_.empty()) dims_ = {static_cast<int>(m_.rows())};
  check_square(m_, dims_, "FockOperator");
  diagonal_ = has_zero_offdiagonal(m_);
}

FockOperator FockOperator::identity(int dim) { return identity(std::vector<int>{dim}); }

FockOperator FockOperator::identity(std::vector<int> dims) {
  const int n = product(dims);
  return FockOperator(Matrix::Identity(n, n), std::move(dims));
}

FockOperator FockOperator::diagonal(const Vector& entries, std::vector<int> dims) {
  return FockOperator(Matrix(entries.asDiagonal()), std::move(dims));
}

bool FockOperator::is_hermitian(double tol) const { return max_abs(m_ - m_.adjoint()) <= tol; }

bool FockOperator::is_unitary(double tol) const {
  if (diagonal_) {
    const Vector d = m_.diagonal();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (std::abs(std::norm(d(i)) - 1.0) > tol) return false;
    }
    return true;
  }
  return max_abs(m_.adjoint() * m_ - Matrix::Identity(dim(), dim())) <= tol;
}

bool FockOperator::is_projector(double tol) const {
  if (!is_hermitian(tol)) return false;
  if (diagonal_) {
    const Vector d = m_.diagonal();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (std::abs(d(i) * d(i) - d(i)) > tol) return false;
    }
    return true;
  }
  return max_abs(m_ * m_ - m_) <= tol;
}

FockOperator FockOperator::adjoint() const { return FockOperator(m_.adjoint(), dims_); }

FockOperator FockOperator::operator*(const FockOperator& rhs) const {
  if (dims_ != rhs.dims_) throw std::invalid_argument("operator product: dimension mismatch");
  if (diagonal_ && rhs.diagonal_) {
    return diagonal(m_.diagonal().cwiseProduct(rhs.m_.diagonal()), dims_);
  }
  if (diagonal_) return FockOperator(m_.diagonal().asDiagonal() * rhs.m_, dims_);
  if (rhs.diagonal_) return FockOperator(m_ * rhs.m_.diagonal().asDiagonal(), dims_);
  return FockOperator(m_ * rhs.m_, dims_);
}

FockOperator FockOperator::operator+(const FockOperator& rhs) const {
  if (dims_ != rhs.dims_) throw std::invalid_argument("operator sum: dimension mismatch");
  return FockOperator(m_ + rhs.m_, dims_);
}

FockOperator FockOperator::scaled(cplx factor) const { return FockOperator(m_ * factor, dims_); }

FockVector FockOperator::apply(const FockVector& v) const {
  if (v.dim() != dim()) throw std::invalid_argument("operator apply: dimension mismatch");
  if (diagonal_) return FockVector{m_.diagonal().cwiseProduct(v.amps), v.leakage};
  return FockVector{m_ * v.amps, v.leakage};
}

double FockOperator::max_abs_diff(const FockOperator& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  return max_abs(m_ - other.m_);
}

// ------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(Matrix m) : DensityMatrix(std::move(m), std::vector<int>{}) {}

DensityMatrix::DensityMatrix(Matrix m, std::vector<int> dims) : m_(std::move(m)), dims_(std::move(dims)) {
  if (dims_.empty()) dims_ = {static_cast<int>(m_.rows())};
  check_square(m_, dims_, "DensityMatrix");
}

DensityMatrix DensityMatrix::pure(const FockVector& psi) { return pure(psi.amps, {psi.dim()}); }

DensityMatrix DensityMatrix::pure(const Vector& psi, std::vector<int> dims) {
  return DensityMatrix(psi * psi.adjoint(), std::move(dims));
}

bool DensityMatrix::is_hermitian(double tol) const { return max_abs(m_ - m_.adjoint()) <= tol; }

double DensityMatrix::min_eigenvalue() const { return hermitian_eigenvalues(m_).minCoeff(); }

bool DensityMatrix::is_valid() const {
  if (!is_hermitian()) return false;
  if (std::abs(trace() - cplx(1.0, 0.0)) > tol::kTrace) return false;
  return min_eigenvalue() >= -tol::kPositivity;
}

DensityMatrix DensityMatrix::normalized() const {
  const double tr = trace().real();
  if (tr <= tol::kProbabilityFloor) throw ProjectionError("cannot normalize a density matrix with vanishing trace");
  return DensityMatrix(m_ / tr, dims_);
}

// ---------------------------------------------------------------- operations

int default_truncation(double mean_photons) {
  if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) {
    throw std::invalid_argument("default_truncation: mean photon number must be finite and >= 0");
  }
  return static_cast<int>(std::ceil(mean_photons + 8.0 * std::sqrt(mean_photons) + 20.0));
}

FockVector coherent_state(cplx alpha, int dim) {
  if (dim < 1) throw std::invalid_argument("coherent_state: dim must be >= 1");
  const double r2 = std::norm(alpha);
  Vector amps = Vector::Zero(dim);
  if (r2 == 0.0) {
    amps(0) = 1.0;
    return FockVector{amps, 0.0};
  }
  // amps_n = exp(-|a|^2/2) a^n / sqrt(n!), evaluated in log-magnitude to stay
  // finite at large n.
  const double log_r = std::log(std::abs(alpha));
  const double phase = std::arg(alpha);
  double inside = 0.0;
  for (int n = 0; n < dim; ++n) {
    const double log_mag = -0.5 * r2 + n * log_r - 0.5 * std::lgamma(n + 1.0);
    const double mag = std::exp(log_mag);
    amps(n) = std::polar(mag, n * phase);
    inside += mag * mag;
  }
  const double leakage = std::max(0.0, 1.0 - inside);
  if (leakage > tol::kLeakage) {
    throw TruncationError("coherent_state: truncation D=" + std::to_string(dim) + " leaks " +
                          std::to_string(leakage) + " of |alpha|^2=" + std::to_string(r2));
  }
  amps /= std::sqrt(inside);
  return FockVector{amps, leakage};
}

LadderOperators ladder_and_number(int dim) {
  if (dim < 2) throw std::invalid_argument("ladder_and_number: dim must be >= 2");
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Vector number(dim);
  for (int n = 0; n < dim; ++n) number(n) = static_cast<double>(n);
  return LadderOperators{FockOperator(a), FockOperator(a.adjoint()), FockOperator::diagonal(number, {dim})};
}

FockOperator rotation_operator(double theta, int dim) {
  if (dim < 1) throw std::invalid_argument("rotation_operator: dim must be >= 1");
  Vector d(dim);
  for (int n = 0; n < dim; ++n) d(n) = std::polar(1.0, theta * n);
  return FockOperator::diagonal(d, {dim});
}

FockOperator logical_z(int order, int dim) {
  if (order < 1) throw std::invalid_argument("logical_z: rotation order must be >= 1");
  // Reduce n mod 2M before forming the phase so Z_M^k is exact across k.
  Vector d(dim);
  for (int n = 0; n < dim; ++n) d(n) = std::polar(1.0, kPi * (n % (2 * order)) / order);
  return FockOperator::diagonal(d, {dim});
}

FockOperator rotation_symmetry(int order, int dim) {
  if (order < 1) throw std::invalid_argument("rotation_symmetry: rotation order must be >= 1");
  Vector d(dim);
  for (int n = 0; n < dim; ++n) d(n) = std::polar(1.0, 2.0 * kPi * (n % order) / order);
  return FockOperator::diagonal(d, {dim});
}

FockOperator crot_gate(int order_a, int order_b, int dim_a, int dim_b) {
  if (order_a < 1 || order_b < 1) throw std::invalid_argument("crot_gate: rotation orders must be >= 1");
  if (dim_a < 1 || dim_b < 1) throw std::invalid_argument("crot_gate: dims must be >= 1");
  const long period = 2L * order_a * order_b;
  Vector d(static_cast<Eigen::Index>(dim_a) * dim_b);
  for (int n = 0; n < dim_a; ++n) {
    for (int m = 0; m < dim_b; ++m) {
      const long k = (static_cast<long>(n) * m) % period;
      d(static_cast<Eigen::Index>(n) * dim_b + m) = std::polar(1.0, kPi * static_cast<double>(k) / (order_a * order_b));
    }
  }
  return FockOperator::diagonal(d, {dim_a, dim_b});
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Matrix k = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return DensityMatrix(std::move(k), concat(a.dims(), b.dims()));
}

FockOperator tensor(const FockOperator& a, const FockOperator& b) {
  Matrix k = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return FockOperator(std::move(k), concat(a.dims(), b.dims()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, int index) {
  const auto& dims = rho.dims();
  if (index < 0 || index >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("partial_trace: subsystem index out of range");
  }
  if (dims.size() == 1) throw std::invalid_argument("partial_trace: cannot trace out the only subsystem");
  int left = 1;
  int right = 1;
  for (int i = 0; i < index; ++i) left *= dims[i];
  for (std::size_t i = index + 1; i < dims.size(); ++i) right *= dims[i];
  const int mid = dims[index];

  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(left * right, left * right);
  for (int l = 0; l < left; ++l) {
    for (int r = 0; r < right; ++r) {
      for (int lp = 0; lp < left; ++lp) {
        for (int rp = 0; rp < right; ++rp) {
          cplx acc = 0.0;
          for (int k = 0; k < mid; ++k) {
            acc += m((l * mid + k) * right + r, (lp * mid + k) * right + rp);
          }
          out(l * right + r, lp * right + rp) = acc;
        }
      }
    }
  }
  std::vector<int> rest;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (static_cast<int>(i) != index) rest.push_back(dims[i]);
  }
  return DensityMatrix(std::move(out), std::move(rest));
}

cplx expectation(const DensityMatrix& rho, const FockOperator& op) {
  if (rho.dim() != op.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  if (op.is_diagonal()) return op.matrix().diagonal().cwiseProduct(rho.matrix().diagonal()).sum();
  // Tr[O rho] = Σ_ij O_ij rho_ji
  return op.matrix().cwiseProduct(rho.matrix().transpose()).sum();
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
  const double asym = max_abs(a - a.adjoint());
  if (asym > tol::kHermitian) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian (asymmetry " + std::to_string(asym) +
                                ")");
  }
  const Matrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian_eigenvalues: eigensolver failed");
  return solver.eigenvalues();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  if (!rho.is_hermitian() || !sigma.is_hermitian()) {
    throw std::invalid_argument("trace_distance: inputs must be Hermitian");
  }
  const Eigen::VectorXd ev = hermitian_eigenvalues(rho.matrix() - sigma.matrix());
  return 0.5 * ev.cwiseAbs().sum();
}

double fidelity(const DensityMatrix& rho, const FockVector& psi) {
  if (rho.dim() != psi.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return psi.amps.dot(rho.matrix() * psi.amps).real();
}

}  // namespace rsbc
