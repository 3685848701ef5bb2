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

// Dense linear algebra on a truncated Fock basis: kets, operators, density
// matrices over (ancilla ⊗) mode ⊗ mode products, and the handful of
// measures the rest of the library is built from.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace rsbc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

namespace tol {
inline constexpr double kNormalized = 1e-10;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kUnitary = 1e-8;
inline constexpr double kProjector = 1e-8;
inline constexpr double kTrace = 1e-8;
inline constexpr double kPositivity = 1e-8;
inline constexpr double kLeakage = 1e-8;
inline constexpr double kProbabilityFloor = 1e-12;
}  // namespace tol

/// The Fock cutoff cannot represent the requested state to tolerance.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A projection or renormalization would divide by a vanishing weight.
class ProjectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check or convergence test failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FockVector {
  Vector amps;
  // Population that fell outside the truncated basis before renormalization.
  double leakage = 0.0;

  int dim() const { return static_cast<int>(amps.size()); }
  double norm_sq() const { return amps.squaredNorm(); }
  bool is_normalized(double tol = tol::kNormalized) const;
  // |amps_{D-1}|^2, the population sitting on the cutoff level.
  double edge_population() const;
  FockVector normalized() const;
};

/// Dense operator on a product of truncated spaces. `dims` lists the
/// subsystem dimensions (a two-level ancilla is just a factor of 2).
class FockOperator {
 public:
  FockOperator() = default;
  explicit FockOperator(Matrix m);
  FockOperator(Matrix m, std::vector<int> dims);

  static FockOperator identity(int dim);
  static FockOperator identity(std::vector<int> dims);
  static FockOperator diagonal(const Vector& entries, std::vector<int> dims);

  int dim() const { return static_cast<int>(m_.rows()); }
  const std::vector<int>& dims() const { return dims_; }
  const Matrix& matrix() const { return m_; }
  bool is_diagonal() const { return diagonal_; }
  Vector diagonal_entries() const { return m_.diagonal(); }

  bool is_hermitian(double tol = tol::kHermitian) const;
  bool is_unitary(double tol = tol::kUnitary) const;
  bool is_projector(double tol = tol::kProjector) const;

  FockOperator adjoint() const;
  FockOperator operator*(const FockOperator& rhs) const;
  FockOperator operator+(const FockOperator& rhs) const;
  FockOperator scaled(cplx factor) const;
  FockVector apply(const FockVector& v) const;

  double max_abs_diff(const FockOperator& other) const;

 private:
  Matrix m_;
  std::vector<int> dims_;
  bool diagonal_ = false;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(Matrix m);
  DensityMatrix(Matrix m, std::vector<int> dims);

  static DensityMatrix pure(const FockVector& psi);
  static DensityMatrix pure(const Vector& psi, std::vector<int> dims);

  int dim() const { return static_cast<int>(m_.rows()); }
  const std::vector<int>& dims() const { return dims_; }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  const Matrix& matrix() const { return m_; }

  cplx trace() const { return m_.trace(); }
  bool is_hermitian(double tol = tol::kHermitian) const;
  double min_eigenvalue() const;
  // Hermitian, unit trace and positive semidefinite to the library tolerances.
  bool is_valid() const;
  DensityMatrix normalized() const;

 private:
  Matrix m_;
  std::vector<int> dims_;
};

/// Default cutoff for an experiment whose largest mean photon number is
/// `mean_photons`: ceil(n + 8 sqrt(n) + 20).
int default_truncation(double mean_photons);

/// |alpha> on D levels, renormalized. Throws TruncationError when more than
/// 1e-8 of the Poisson weight lies beyond the cutoff.
FockVector coherent_state(cplx alpha, int dim);

struct LadderOperators {
  FockOperator annihilation;
  FockOperator creation;
  FockOperator number;
};

LadderOperators ladder_and_number(int dim);

/// exp(i theta N).
FockOperator rotation_operator(double theta, int dim);
/// Z_M = exp(i pi N / M).
FockOperator logical_z(int order, int dim);
/// R_M = exp(i 2 pi N / M).
FockOperator rotation_symmetry(int order, int dim);

/// Controlled rotation exp(i pi N⊗N / (M M')) on mode A ⊗ mode B.
FockOperator crot_gate(int order_a, int order_b, int dim_a, int dim_b);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
FockOperator tensor(const FockOperator& a, const FockOperator& b);
/// Traces out subsystem `index` of `rho`.
DensityMatrix partial_trace(const DensityMatrix& rho, int index);

/// Tr[O rho].
cplx expectation(const DensityMatrix& rho, const FockOperator& op);

/// ½ Σ|λ(rho - sigma)|. Both inputs must be Hermitian to 1e-10.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// <psi|rho|psi> for a pure reference state.
double fidelity(const DensityMatrix& rho, const FockVector& psi);

/// Eigenvalues of a Hermitian matrix after (A + A†)/2 symmetrization.
/// Asymmetry above 1e-10 (max-entry) is rejected with std::invalid_argument.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& a);

}  // namespace rsbc
