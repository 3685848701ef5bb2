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

#include "rsbc/mitigation.hpp"

#include "rsbc/projectors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

namespace rsbc {

namespace {

// Shots are drawn in fixed-size chunks, each with its own engine seeded from
// (seed, stream, chunk). The chunking never depends on the thread count.
constexpr std::int64_t kChunk = 8192;

void require_dims(const FockOperator& op, int dim, const char* what) {
  if (op.dim() != dim) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// U rho V† with diagonal fast paths.
Matrix sandwich(const FockOperator& u, const Matrix& rho, const FockOperator& v) {
  Matrix out = rho;
  if (u.is_diagonal()) {
    out = u.diagonal_entries().asDiagonal() * out;
  } else {
    out = u.matrix() * out;
  }
  if (v.is_diagonal()) {
    out = out * v.diagonal_entries().conjugate().asDiagonal();
  } else {
    out = out * v.matrix().adjoint();
  }
  return out;
}

cplx trace_product(const FockOperator& o, const Matrix& m) {
  if (o.is_diagonal()) return o.diagonal_entries().cwiseProduct(m.diagonal()).sum();
  return o.matrix().cwiseProduct(m.transpose()).sum();
}

// exp(iπ j / M) for integer j, reduced mod 2M first.
cplx unit_phase(long j, int order) {
  const long period = 2L * order;
  const long r = ((j % period) + period) % period;
  return std::polar(1.0, kPi * static_cast<double>(r) / order);
}

// Mixed-radix bookkeeping over a product of modes.
struct Radix {
  std::vector<int> sizes;

  std::int64_t total() const {
    std::int64_t t = 1;
    for (int s : sizes) t *= s;
    return t;
  }
  std::vector<int> decode(std::int64_t idx) const {
    std::vector<int> out(sizes.size());
    for (int i = static_cast<int>(sizes.size()) - 1; i >= 0; --i) {
      out[i] = static_cast<int>(idx % sizes[i]);
      idx /= sizes[i];
    }
    return out;
  }
};

// For each mode: symmetry-index range, residue period and the phase step, so
// that the diagonal unitary for index k on level n is exp(iπ step k n / M).
struct ModePhase {
  int order = 1;
  int count = 1;   // number of symmetry indices
  int period = 1;  // levels are folded mod this
  int step = 1;
};

ModePhase zero_phase(int order) { return {order, 2 * order, 2 * order, 1}; }
ModePhase resource_phase(int order) { return {order, order, order, 2}; }

// u(k)[A] for every symmetry tuple k and residue class A.
Matrix phase_table(const std::vector<ModePhase>& modes) {
  Radix idx;
  Radix cls;
  for (const auto& m : modes) {
    idx.sizes.push_back(m.count);
    cls.sizes.push_back(m.period);
  }
  Matrix out(idx.total(), cls.total());
  for (std::int64_t k = 0; k < idx.total(); ++k) {
    const std::vector<int> kk = idx.decode(k);
    for (std::int64_t a = 0; a < cls.total(); ++a) {
      const std::vector<int> aa = cls.decode(a);
      cplx ph = 1.0;
      for (std::size_t i = 0; i < modes.size(); ++i) {
        ph *= unit_phase(static_cast<long>(modes[i].step) * kk[i] * aa[i], modes[i].order);
      }
      out(k, a) = ph;
    }
  }
  return out;
}

// Residue class of each joint basis index.
std::vector<std::int64_t> class_of_levels(const std::vector<int>& dims, const std::vector<ModePhase>& modes) {
  Radix lv{dims};
  Radix cls;
  for (const auto& m : modes) cls.sizes.push_back(m.period);
  std::vector<std::int64_t> out(lv.total());
  for (std::int64_t a = 0; a < lv.total(); ++a) {
    const std::vector<int> aa = lv.decode(a);
    std::int64_t c = 0;
    for (std::size_t i = 0; i < modes.size(); ++i) c = c * modes[i].period + aa[i] % modes[i].period;
    out[a] = c;
  }
  return out;
}

struct ShotTally {
  std::int64_t plus = 0;
  std::int64_t total = 0;
  std::vector<ShotRecord> log;

  double mean() const { return total > 0 ? static_cast<double>(2 * plus - total) / total : 0.0; }
  // Standard error of the mean of ±1 outcomes with the unbiased sample variance.
  double std_error() const {
    if (total < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (1.0 - m * m) * total / (total - 1.0));
    return std::sqrt(var / total);
  }
};

int resolve_threads(int requested) {
  if (requested < 0) throw std::invalid_argument("SamplingOptions: threads must be >= 0");
  if (requested == 0) return std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

// Draws `shots` indices uniformly from the flattened amplitude table and an
// ancilla outcome for each. `decode` turns a table index into the recorded
// symmetry indices.
template <typename Decode>
ShotTally run_shots(const std::vector<cplx>& table, std::int64_t shots, std::uint64_t seed, std::uint32_t stream,
                    int threads, bool keep_log, Decode decode) {
  for (const cplx c : table) {
    if (std::abs(c.real()) > 1.0 + 1e-9) {
      throw NumericalError("symmetry expansion: circuit amplitude with |Re c| = " + std::to_string(std::abs(c.real())) +
                           " exceeds 1");
    }
  }
  const std::int64_t n_chunks = (shots + kChunk - 1) / kChunk;
  std::vector<ShotTally> chunks(n_chunks);
  const std::uint64_t last = table.size() - 1;

  auto work = [&](std::int64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream,
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    std::mt19937_64 engine(seq);
    std::uniform_int_distribution<std::uint64_t> pick(0, last);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::int64_t begin = chunk * kChunk;
    const std::int64_t end = std::min(shots, begin + kChunk);
    ShotTally& tally = chunks[chunk];
    for (std::int64_t s = begin; s < end; ++s) {
      const std::uint64_t k = pick(engine);
      const cplx c = table[k];
      const int outcome = unit(engine) < 0.5 * (1.0 + c.real()) ? 1 : -1;
      tally.plus += outcome > 0;
      ++tally.total;
      if (keep_log) tally.log.push_back(ShotRecord{decode(k), c, outcome});
    }
  };

  const int n_threads = static_cast<int>(std::min<std::int64_t>(resolve_threads(threads), std::max<std::int64_t>(1, n_chunks)));
  if (n_threads <= 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) work(c);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::int64_t c = t; c < n_chunks; c += n_threads) work(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  ShotTally out;
  for (auto& c : chunks) {
    out.plus += c.plus;
    out.total += c.total;
    if (keep_log) out.log.insert(out.log.end(), std::make_move_iterator(c.log.begin()), std::make_move_iterator(c.log.end()));
  }
  return out;
}

void check_options(const SamplingOptions& options) {
  if (options.shots < 1) throw std::invalid_argument("symmetry expansion: shot budget must be >= 1");
  if (options.prob_shots < 0) throw std::invalid_argument("symmetry expansion: prob_shots must be >= 0");
  resolve_threads(options.threads);
}

DensityMatrix joint_state(const std::vector<DensityMatrix>& states) {
  DensityMatrix out = states.front();
  for (std::size_t i = 1; i < states.size(); ++i) out = tensor(out, states[i]);
  return out;
}

void check_states(const SEPlan& plan, const std::vector<DensityMatrix>& states) {
  plan.validate();
  if (static_cast<int>(states.size()) != plan.num_modes()) {
    throw std::invalid_argument("symmetry expansion: one noisy state per planned mode required");
  }
  const auto modes = plan.modes();
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].num_subsystems() != 1 || states[i].dim() != modes[i].dim) {
      throw std::invalid_argument("symmetry expansion: state " + std::to_string(i) + " does not match its CodeSpec");
    }
  }
}

double ratio_error(double num, double num_err, double den, double den_err) {
  return std::sqrt(num_err * num_err / (den * den) + num * num * den_err * den_err / (den * den * den * den));
}

}  // namespace

cplx generalized_expectation(const DensityMatrix& rho, const FockOperator& u, const FockOperator& v,
                             const FockOperator& o) {
  require_dims(u, rho.dim(), "generalized_expectation");
  require_dims(v, rho.dim(), "generalized_expectation");
  require_dims(o, rho.dim(), "generalized_expectation");
  if (!u.is_unitary() || !v.is_unitary()) throw std::invalid_argument("generalized_expectation: U and V must be unitary");
  return trace_product(o, sandwich(u, rho.matrix(), v));
}

DensityMatrix hadamard_test_state(const DensityMatrix& rho, const FockOperator& u, const FockOperator& v) {
  require_dims(u, rho.dim(), "hadamard_test_state");
  require_dims(v, rho.dim(), "hadamard_test_state");
  if (!u.is_unitary() || !v.is_unitary()) throw std::invalid_argument("hadamard_test_state: U and V must be unitary");
  const int d = rho.dim();
  Matrix joint(2 * d, 2 * d);
  joint.topLeftCorner(d, d) = 0.5 * sandwich(v, rho.matrix(), v);
  joint.topRightCorner(d, d) = 0.5 * sandwich(v, rho.matrix(), u);
  joint.bottomLeftCorner(d, d) = 0.5 * sandwich(u, rho.matrix(), v);
  joint.bottomRightCorner(d, d) = 0.5 * sandwich(u, rho.matrix(), u);
  std::vector<int> dims{2};
  dims.insert(dims.end(), rho.dims().begin(), rho.dims().end());
  return DensityMatrix(std::move(joint), std::move(dims));
}

std::vector<CodeSpec> SEPlan::modes() const {
  std::vector<CodeSpec> out = zero_modes;
  out.insert(out.end(), resource_modes.begin(), resource_modes.end());
  return out;
}

std::vector<int> SEPlan::dims() const {
  std::vector<int> out;
  for (const auto& m : modes()) out.push_back(m.dim);
  return out;
}

int SEPlan::measured_modes() const {
  if (observable.empty()) return num_modes();
  int n = 0;
  for (const auto& f : observable) {
    if (f.max_abs_diff(FockOperator::identity(f.dim())) > tol::kUnitary) ++n;
  }
  return n;
}

FockOperator SEPlan::observable_operator() const {
  const auto ms = modes();
  FockOperator out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    FockOperator f = observable.empty() ? logical_z(ms[i].order, ms[i].dim) : observable[i];
    out = i == 0 ? f : tensor(out, f);
  }
  return out;
}

void SEPlan::validate() const {
  const int n = num_modes();
  if (n < 1) throw std::invalid_argument("SEPlan: at least one mode required");
  if (n > kMaxModes) throw std::invalid_argument("SEPlan: at most " + std::to_string(kMaxModes) + " modes supported");
  const auto ms = modes();
  for (const auto& m : ms) m.validate();
  int total = 1;
  for (const auto& m : ms) total *= m.dim;
  if (computation) {
    if (computation->dim() != total) throw std::invalid_argument("SEPlan: computation dimension mismatch");
    if (!computation->is_unitary()) throw std::invalid_argument("SEPlan: computation must be unitary");
  }
  if (!observable.empty()) {
    if (static_cast<int>(observable.size()) != n) throw std::invalid_argument("SEPlan: one observable factor per mode");
    for (std::size_t i = 0; i < observable.size(); ++i) {
      if (observable[i].dim() != ms[i].dim) throw std::invalid_argument("SEPlan: observable factor dimension mismatch");
      if (!observable[i].is_unitary()) throw std::invalid_argument("SEPlan: observable factors must be unitary");
    }
  }
}

SEExact se_state_prep_exact(const SEPlan& plan, const std::vector<DensityMatrix>& noisy_states) {
  check_states(plan, noisy_states);
  const auto ms = plan.modes();
  std::vector<DensityMatrix> projected;
  SEExact out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const bool zero = i < plan.zero_modes.size();
    const FockOperator p = zero ? rotation_projector(ms[i].order, 0, ms[i].dim) : code_projector(ms[i].order, ms[i].dim);
    Projected pr = project_state(noisy_states[i], p);
    out.proj_probs.push_back(pr.prob);
    projected.push_back(std::move(pr.state));
  }
  const DensityMatrix joint = joint_state(projected);
  const FockOperator uc = plan.computation ? *plan.computation : FockOperator::identity(joint.dims());
  const cplx v = generalized_expectation(joint, uc, uc, plan.observable_operator());
  out.value = v.real();
  out.imag_residual = std::abs(v.imag());
  out.cost_c = sampling_cost(out.proj_probs);
  return out;
}

SEEstimate se_state_prep_sampled(const SEPlan& plan, const std::vector<DensityMatrix>& noisy_states,
                                 const SamplingOptions& options) {
  check_options(options);
  check_states(plan, noisy_states);
  const auto ms = plan.modes();

  std::vector<ModePhase> phases;
  std::vector<double> probs;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const bool zero = i < plan.zero_modes.size();
    phases.push_back(zero ? zero_phase(ms[i].order) : resource_phase(ms[i].order));
    const FockOperator p = zero ? rotation_projector(ms[i].order, 0, ms[i].dim) : code_projector(ms[i].order, ms[i].dim);
    probs.push_back(expectation(noisy_states[i], p).real());
    if (probs.back() <= tol::kProbabilityFloor) {
      throw ProjectionError("se_state_prep_sampled: projection probability of mode " + std::to_string(i) +
                            " is below 1e-12");
    }
  }

  // c(k, k') = Tr[O' U(k) rho V(k')†] with O' = U_C† O U_C. Every U(k) is
  // diagonal and constant on residue classes, so
  //   c = Σ_{A,B} u_A(k) H_AB conj(u_B(k')),  H_AB = Σ_{a∈A, b∈B} rho_ab O'_ba.
  const DensityMatrix joint = joint_state(noisy_states);
  const FockOperator o = plan.observable_operator();
  const FockOperator o_eff = plan.computation ? plan.computation->adjoint() * o * *plan.computation : o;
  const std::vector<std::int64_t> cls = class_of_levels(joint.dims(), phases);
  const Matrix u = phase_table(phases);
  const std::int64_t n_cls = u.cols();
  Matrix h = Matrix::Zero(n_cls, n_cls);
  const Matrix& rho = joint.matrix();
  if (o_eff.is_diagonal()) {
    const Vector od = o_eff.diagonal_entries();
    for (Eigen::Index a = 0; a < rho.rows(); ++a) h(cls[a], cls[a]) += rho(a, a) * od(a);
  } else {
    const Matrix& om = o_eff.matrix();
    for (Eigen::Index b = 0; b < rho.cols(); ++b) {
      for (Eigen::Index a = 0; a < rho.rows(); ++a) h(cls[a], cls[b]) += rho(a, b) * om(b, a);
    }
  }
  const Matrix table2 = u * h * u.adjoint();  // (k, k')
  const std::int64_t n_idx = u.rows();
  std::vector<cplx> table(n_idx * n_idx);
  for (std::int64_t k = 0; k < n_idx; ++k) {
    for (std::int64_t kp = 0; kp < n_idx; ++kp) table[k * n_idx + kp] = table2(k, kp);
  }

  Radix idx;
  for (const auto& p : phases) idx.sizes.push_back(p.count);
  auto decode_pair = [&](std::uint64_t flat) {
    const std::vector<int> k = idx.decode(static_cast<std::int64_t>(flat) / n_idx);
    const std::vector<int> kp = idx.decode(static_cast<std::int64_t>(flat) % n_idx);
    std::vector<int> out;
    for (std::size_t i = 0; i < k.size(); ++i) {
      out.push_back(k[i]);
      out.push_back(kp[i]);
    }
    return out;
  };
  ShotTally num = run_shots(table, options.shots, options.seed, 0u, options.threads, options.keep_log, decode_pair);

  SEEstimate est;
  est.shots = options.shots;
  est.proj_probs = probs;
  est.cost_c = sampling_cost(probs);
  est.numerator = num.mean();
  est.numerator_error = num.std_error();
  est.log = std::move(num.log);

  double den = 1.0;
  for (double p : probs) den *= p;
  if (options.probabilities == ProbabilityMode::kExact) {
    est.denominator = den;
    est.denominator_error = 0.0;
    est.mean = est.numerator / den;
    est.std_error = est.numerator_error / den;
    return est;
  }

  // Sampled probabilities: Tr[U(k) rho] averaged over k gives ∏p∏q.
  Vector diag_cls = Vector::Zero(n_cls);
  for (Eigen::Index a = 0; a < rho.rows(); ++a) diag_cls(cls[a]) += rho(a, a);
  const Vector pc = u * diag_cls;
  std::vector<cplx> ptable(pc.data(), pc.data() + pc.size());
  const std::int64_t p_shots = options.prob_shots > 0 ? options.prob_shots : options.shots;
  ShotTally dt = run_shots(ptable, p_shots, options.seed, 1u, options.threads, false,
                           [&](std::uint64_t k) { return idx.decode(static_cast<std::int64_t>(k)); });
  est.denominator = dt.mean();
  est.denominator_error = dt.std_error();
  est.shots += p_shots;
  if (est.denominator <= 3.0 * est.denominator_error) {
    throw NumericalError("se_state_prep_sampled: probability estimate " + std::to_string(est.denominator) +
                         " is within three standard errors of zero");
  }
  est.mean = est.numerator / est.denominator;
  est.std_error = ratio_error(est.numerator, est.numerator_error, est.denominator, est.denominator_error);
  return est;
}

namespace {

void check_measurement_state(const DensityMatrix& rho, int order, int measured_modes) {
  if (order < 1) throw std::invalid_argument("pre-measurement SE: order must be >= 1");
  if (measured_modes < 1 || measured_modes > SEPlan::kMaxModes) {
    throw std::invalid_argument("pre-measurement SE: measured modes must lie in [1, " +
                                std::to_string(SEPlan::kMaxModes) + "]");
  }
  if (rho.num_subsystems() != measured_modes) {
    throw std::invalid_argument("pre-measurement SE: state must span exactly the measured modes");
  }
}

}  // namespace

SEMeasurementExact se_measurement_exact(const DensityMatrix& rho, int order, int measured_modes) {
  check_measurement_state(rho, order, measured_modes);
  Radix lv{rho.dims()};
  double num = 0.0;
  double den = 0.0;
  for (std::int64_t a = 0; a < lv.total(); ++a) {
    const std::vector<int> aa = lv.decode(a);
    bool in_code = true;
    double sign = 1.0;
    for (int n : aa) {
      if (n % order != 0) {
        in_code = false;
        break;
      }
      if ((n / order) % 2 == 1) sign = -sign;
    }
    if (!in_code) continue;
    const double w = rho.matrix()(a, a).real();
    den += w;
    num += sign * w;
  }
  if (den <= tol::kProbabilityFloor) throw ProjectionError("se_measurement_exact: code-space probability is below 1e-12");
  return SEMeasurementExact{num / den, den};
}

SEEstimate se_measurement_sampled(const DensityMatrix& rho, int order, int measured_modes,
                                  const SamplingOptions& options) {
  check_options(options);
  check_measurement_state(rho, order, measured_modes);
  if (options.shots < 2) throw std::invalid_argument("se_measurement_sampled: at least two shots required");

  // Terms Z^{2m+1} (numerator) and Z^{2m} (denominator), m uniform in [0, M).
  std::vector<ModePhase> zp(measured_modes, zero_phase(order));
  const std::vector<std::int64_t> cls = class_of_levels(rho.dims(), zp);
  const std::int64_t n_cls = Radix{std::vector<int>(measured_modes, 2 * order)}.total();
  Vector diag_cls = Vector::Zero(n_cls);
  for (Eigen::Index a = 0; a < rho.dim(); ++a) diag_cls(cls[a]) += rho.matrix()(a, a);

  Radix idx{std::vector<int>(measured_modes, order)};
  Radix cl{std::vector<int>(measured_modes, 2 * order)};
  std::vector<cplx> num_table(idx.total());
  std::vector<cplx> den_table(idx.total());
  for (std::int64_t m = 0; m < idx.total(); ++m) {
    const std::vector<int> mm = idx.decode(m);
    cplx nsum = 0.0;
    cplx dsum = 0.0;
    for (std::int64_t a = 0; a < n_cls; ++a) {
      const std::vector<int> aa = cl.decode(a);
      cplx nph = 1.0;
      cplx dph = 1.0;
      for (int i = 0; i < measured_modes; ++i) {
        nph *= unit_phase(static_cast<long>(2 * mm[i] + 1) * aa[i], order);
        dph *= unit_phase(static_cast<long>(2 * mm[i]) * aa[i], order);
      }
      nsum += nph * diag_cls(a);
      dsum += dph * diag_cls(a);
    }
    num_table[m] = nsum;
    den_table[m] = dsum;
  }

  auto decode = [&](std::uint64_t k) { return idx.decode(static_cast<std::int64_t>(k)); };
  const std::int64_t n_num = (options.shots + 1) / 2;
  const std::int64_t n_den = options.shots / 2;
  ShotTally num = run_shots(num_table, n_num, options.seed, 2u, options.threads, options.keep_log, decode);
  ShotTally den = run_shots(den_table, n_den, options.seed, 3u, options.threads, options.keep_log, decode);

  SEEstimate est;
  est.shots = options.shots;
  est.numerator = num.mean();
  est.numerator_error = num.std_error();
  est.denominator = den.mean();
  est.denominator_error = den.std_error();
  const SEMeasurementExact exact = se_measurement_exact(rho, order, measured_modes);
  est.proj_probs = {exact.p_c};
  est.cost_c = sampling_cost(est.proj_probs);
  if (options.keep_log) {
    // Interleave so that even entries are numerator shots and odd entries
    // denominator shots.
    for (std::size_t i = 0; i < num.log.size(); ++i) {
      est.log.push_back(std::move(num.log[i]));
      if (i < den.log.size()) est.log.push_back(std::move(den.log[i]));
    }
  }
  if (est.denominator <= 3.0 * est.denominator_error) {
    throw NumericalError("se_measurement_sampled: denominator " + std::to_string(est.denominator) +
                         " is within three standard errors of zero");
  }
  est.mean = est.numerator / est.denominator;
  est.std_error = ratio_error(est.numerator, est.numerator_error, est.denominator, est.denominator_error);
  return est;
}

VirtualState virtual_code_state(const DensityMatrix& primitive, int order, const FockOperator& o) {
  if (primitive.num_subsystems() != 1) throw std::invalid_argument("virtual_code_state: single-mode state expected");
  if (std::abs(primitive.trace() - cplx(1.0, 0.0)) > tol::kTrace) {
    throw std::invalid_argument("virtual_code_state: primitive state must be normalized");
  }
  require_dims(o, primitive.dim(), "virtual_code_state");
  const Projected pr = project_state(primitive, rotation_projector(order, 0, primitive.dim()));
  return VirtualState{expectation(pr.state, o).real(), pr.prob};
}

double sampling_cost(const std::vector<double>& proj_probs) {
  const double p = 1.0 / postselection_cost(proj_probs);
  return 1.0 / (p * p);
}

double postselection_cost(const std::vector<double>& proj_probs) {
  double prod = 1.0;
  for (double p : proj_probs) {
    if (!(p > 0.0) || p > 1.0 + tol::kTrace) throw std::invalid_argument("sampling cost: probabilities must lie in (0, 1]");
    prod *= p;
  }
  return 1.0 / prod;
}

}  // namespace rsbc
