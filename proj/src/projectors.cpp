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

#include "rsbc/projectors.hpp"

#include <string>

namespace rsbc {

namespace {

void check_order_dim(int order, int dim, const char* what) {
  if (order < 1) throw std::invalid_argument(std::string(what) + ": rotation order must be >= 1");
  if (dim < 1) throw std::invalid_argument(std::string(what) + ": dim must be >= 1");
}

FockOperator mask(int period, int residue, int dim) {
  Vector d = Vector::Zero(dim);
  for (int n = residue; n < dim; n += period) d(n) = 1.0;
  return FockOperator::diagonal(d, {dim});
}

Matrix matrix_power(const Matrix& base, int k) {
  Matrix out = Matrix::Identity(base.rows(), base.cols());
  for (int i = 0; i < k; ++i) out = out * base;
  return out;
}

}  // namespace

void ProjectorKind::validate() const {
  if (order < 1) throw std::invalid_argument("ProjectorKind: rotation order must be >= 1");
  if (type == ProjectorType::kFockResidue && (residue < 0 || residue >= 2 * order)) {
    throw std::invalid_argument("ProjectorKind: residue must lie in [0, 2M)");
  }
  if (type == ProjectorType::kTruncatedX && level < 0) {
    throw std::invalid_argument("ProjectorKind: truncation level must be >= 0");
  }
}

FockOperator ProjectorKind::build(int dim) const {
  validate();
  switch (type) {
    case ProjectorType::kFockResidue:
      return rotation_projector(order, residue, dim);
    case ProjectorType::kCodeSpace:
      return code_projector(order, dim);
    case ProjectorType::kTruncatedX:
      return truncated_x_projector(order, level, dim);
  }
  throw std::logic_error("ProjectorKind: unhandled type");
}

FockOperator rotation_projector(int order, int residue, int dim) {
  check_order_dim(order, dim, "rotation_projector");
  if (residue < 0 || residue >= 2 * order) throw std::invalid_argument("rotation_projector: residue must lie in [0, 2M)");
  return mask(2 * order, residue, dim);
}

FockOperator rotation_projector_phase_sum(int order, int residue, int dim) {
  check_order_dim(order, dim, "rotation_projector_phase_sum");
  if (residue < 0 || residue >= 2 * order) {
    throw std::invalid_argument("rotation_projector_phase_sum: residue must lie in [0, 2M)");
  }
  const Vector z = logical_z(order, dim).diagonal_entries();
  Vector acc = Vector::Zero(dim);
  Vector zk = Vector::Ones(dim);
  for (int k = 0; k < 2 * order; ++k) {
    acc += std::polar(1.0, -kPi * ((residue * k) % (2 * order)) / order) * zk;
    zk = zk.cwiseProduct(z);
  }
  return FockOperator::diagonal(acc / (2.0 * order), {dim});
}

FockOperator code_projector(int order, int dim) {
  check_order_dim(order, dim, "code_projector");
  return mask(order, 0, dim);
}

FockOperator code_projector_rotation_sum(int order, int dim) {
  check_order_dim(order, dim, "code_projector_rotation_sum");
  const Vector r = rotation_symmetry(order, dim).diagonal_entries();
  Vector acc = Vector::Zero(dim);
  Vector rk = Vector::Ones(dim);
  for (int k = 0; k < order; ++k) {
    acc += rk;
    rk = rk.cwiseProduct(r);
  }
  return FockOperator::diagonal(acc / static_cast<double>(order), {dim});
}

Projected project_state(const DensityMatrix& rho, const FockOperator& p) {
  if (p.dim() != rho.dim()) throw std::invalid_argument("project_state: dimension mismatch");
  if (!p.is_projector()) throw std::invalid_argument("project_state: operator is not a Hermitian projector");
  Matrix out;
  if (p.is_diagonal()) {
    const Vector d = p.diagonal_entries();
    out = (d * d.adjoint()).cwiseProduct(rho.matrix());
  } else {
    out = p.matrix() * rho.matrix() * p.matrix();
  }
  const double prob = out.trace().real();
  if (prob <= tol::kProbabilityFloor) {
    throw ProjectionError("project_state: projection probability " + std::to_string(prob) + " is below 1e-12");
  }
  return Projected{DensityMatrix(out / prob, rho.dims()), prob};
}

FockOperator number_translation(int order, int dim) {
  check_order_dim(order, dim, "number_translation");
  Matrix x = Matrix::Zero(dim, dim);
  for (int m = 0; m + order < dim; ++m) x(m, m + order) = 1.0;
  return FockOperator(std::move(x));
}

FockOperator truncated_x_projector(int order, int level, int dim) {
  check_order_dim(order, dim, "truncated_x_projector");
  if (level < 0) throw std::invalid_argument("truncated_x_projector: L must be >= 0");
  if (dim <= 2 * level * order) {
    throw TruncationError("truncated_x_projector: needs D > 2LM = " + std::to_string(2 * level * order));
  }
  const Matrix x2 = matrix_power(number_translation(order, dim).matrix(), 2);
  Matrix acc = Matrix::Zero(dim, dim);
  Matrix term = Matrix::Identity(dim, dim);
  for (int k = 0; k <= level; ++k) {
    acc += term;
    term = term * x2;
  }
  return FockOperator(acc / static_cast<double>(level + 1));
}

Projected apply_filter(const DensityMatrix& rho, const FockOperator& a) {
  if (a.dim() != rho.dim()) throw std::invalid_argument("apply_filter: dimension mismatch");
  Matrix out = a.matrix() * rho.matrix() * a.matrix().adjoint();
  const double tr = out.trace().real();
  if (tr <= tol::kProbabilityFloor) {
    throw ProjectionError("apply_filter: filtered trace " + std::to_string(tr) + " is below 1e-12");
  }
  return Projected{DensityMatrix(out / tr, rho.dims()), tr};
}

}  // namespace rsbc
