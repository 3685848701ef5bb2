# Copyright 2026 The rsbc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reference values for the C++ tests, computed without the C++ library.

Series are summed in 50-digit mpmath. Fock-space pipelines use plain numpy /
scipy: coherent legs are rotated in amplitude (not by a phase operator), loss
uses the full Kraus set on the truncated space, displacements use scipy's
expm on an enlarged space.

    python3 tests/oracle/generate_oracle.py > tests/oracle/oracle_values.hpp
"""

import math

import mpmath as mp
import numpy as np
from scipy.linalg import expm

mp.mp.dps = 50


def f_series(m, x):
    x = mp.mpf(x)
    return mp.nsum(lambda l: x ** (m * l) / mp.factorial(m * l), [0, mp.inf])


def g_series(m, x):
    x = mp.mpf(x)
    return mp.nsum(lambda l: (-1) ** int(l) * x ** (m * l) / mp.factorial(m * l), [0, mp.inf])


def truncation(nbar):
    return math.ceil(nbar + 8 * math.sqrt(nbar) + 20)


def coherent(alpha, dim):
    v = np.zeros(dim, dtype=complex)
    v[0] = 1.0
    for n in range(1, dim):
        v[n] = v[n - 1] * alpha / math.sqrt(n)
    return v / np.linalg.norm(v)


def cat(m, alpha, dim, one=False):
    acc = np.zeros(dim, dtype=complex)
    for k in range(2 * m):
        sign = (-1) ** k if one else 1
        acc += sign * coherent(alpha * np.exp(1j * math.pi * k / m), dim)
    return acc / np.linalg.norm(acc)


def binomial(m, level, dim, one=False):
    v = np.zeros(dim, dtype=complex)
    for j in range(1 if one else 0, level + 2, 2):
        v[j * m] = math.sqrt(math.comb(level + 1, j) / 2 ** level)
    return v


def logical(zero, one, a, b):
    v = a * zero + b * one
    return v / np.linalg.norm(v)


def annihilation(dim):
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


def loss(rho, gt):
    dim = rho.shape[0]
    a = annihilation(dim)
    kappa = 1 - math.exp(-gt)
    damp = np.diag(np.exp(-gt * np.arange(dim) / 2))
    out = np.zeros_like(rho)
    al = np.eye(dim, dtype=complex)
    for l in range(dim):
        k = math.sqrt(kappa ** l / math.factorial(l)) * damp @ al
        out += k @ rho @ k.conj().T
        al = al @ a
    return out


def dephase(rho, gt):
    n = np.arange(rho.shape[0])
    return rho * np.exp(-gt * (n[:, None] - n[None, :]) ** 2 / 2)


def mask(dim, period, residue):
    return np.diag([1.0 if n % period == residue else 0.0 for n in range(dim)]).astype(complex)


def project(rho, p):
    s = p @ rho @ p
    return s / np.trace(s).real, np.trace(s).real


def tdist(r, s):
    return 0.5 * np.abs(np.linalg.eigvalsh(r - s)).sum()


def pure(v):
    return np.outer(v, v.conj())


def leg_sum(m, beta, dim):
    return sum(coherent(beta * np.exp(2j * math.pi * k / m), dim) for k in range(m)) / math.sqrt(m)


def damped_reference(ideal, m, al, at, dim):
    # Fit the leg weights of the undamped state, then rebuild on damped legs.
    basis0 = np.stack([leg_sum(m, al, dim), leg_sum(m, al * np.exp(1j * math.pi / m), dim)], 1)
    weights = np.linalg.lstsq(basis0, ideal, rcond=None)[0]
    basis_t = np.stack([leg_sum(m, at, dim), leg_sum(m, at * np.exp(1j * math.pi / m), dim)], 1)
    v = basis_t @ weights
    return pure(v / np.linalg.norm(v))


def z_op(m, dim):
    return np.diag(np.exp(1j * math.pi * np.arange(dim) / m))


def wigner(rho, x, p, pad=80):
    dim = rho.shape[0]
    work = dim + pad
    beta = (x + 1j * p) / math.sqrt(2)
    a = annihilation(work)
    d = expm(beta * a.conj().T - np.conj(beta) * a)
    par = np.diag([(-1.0) ** n for n in range(work)])
    big = np.zeros((work, work), dtype=complex)
    big[:dim, :dim] = rho
    return (2 / math.pi * np.trace(big @ d @ par @ d.conj().T)).real


T_COEFFS = (1 / math.sqrt(2), np.exp(1j * math.pi / 4) / math.sqrt(2))

values = {}

# Comb series.
values["kF4At4"] = f_series(4, 4)
for m in (1, 2, 3, 4):
    values[f"kScaledF{m}At40"] = m * mp.e ** -40 * f_series(m, 40)
values["kG2At3OverF2At3"] = g_series(2, 3) / f_series(2, 3)


def p0(m, a2, gt):
    gamma = mp.mpf(a2) * (1 - mp.e ** (-mp.mpf(gt)))
    at2 = mp.mpf(a2) * mp.e ** (-mp.mpf(gt))
    return f_series(2 * m, gamma) * f_series(2 * m, at2) / f_series(2 * m, a2)


values["kP0M2A4G001"] = p0(2, 4, 0.01)
values["kP0M2A4G01"] = p0(2, 4, 0.1)
values["kP0M2A250G01"] = p0(2, 250, 0.1)
values["kP0M2A4G01Nbar4"] = p0(2, 4, 0.1)
values["kCatNormM2A20"] = 4 * 4 * mp.e ** -20 * f_series(4, 20)
# Leg-weight ratio M_c/N_c of the T state from the true codeword norms.
_c0 = 16 * mp.e ** -4 * f_series(4, 4)
_c1 = 16 * mp.e ** -4 * mp.nsum(lambda l: mp.mpf(4) ** (4 * l + 2) / mp.factorial(4 * l + 2), [0, mp.inf])
values["kCatNormZeroM2A4"] = _c0
values["kCatNormOneM2A4"] = _c1
values["kMcNcConstructedTM2A4"] = mp.sqrt(_c0 ** -2 + _c1 ** -2) / (2 * (1 / _c0 + 1 / _c1))
values["kPPhiM2A20"] = mp.e ** -20 * f_series(4, 20)

# Numeric loss pipeline, M=2, α²=4.
D40 = truncation(4)
zero = cat(2, 2.0, D40)
one = cat(2, 2.0, D40, one=True)
for gt, tag in ((0.01, "G001"), (0.1, "G01")):
    noisy = loss(pure(zero), gt)
    values[f"kP0NumericM2A4{tag}"] = np.trace(mask(D40, 4, 0) @ noisy).real
noisy01 = loss(pure(zero), 0.1)
values["kZ2NoisyM2A4G01"] = np.trace(z_op(2, D40) @ noisy01).real
pc = mask(D40, 2, 0)
values["kPcNoisyM2A4G01"] = np.trace(pc @ noisy01).real
values["kSeMeasM2A4G01"] = (np.trace(z_op(2, D40) @ pc @ noisy01) / np.trace(pc @ noisy01)).real
values["kLeakageNoisyM2A4G01"] = 1 - np.trace(mask(D40, 4, 0) @ noisy01).real

# T state under loss: code-space projection against the damped-leg reference.
for m, a2, gt, tag in ((2, 3.0, 0.01, "M2A3G001"), (2, 4.0, 0.01, "M2A4G001"), (2, 6.0, 0.01, "M2A6G001"),
                       (4, 10.24, 0.01, "M4A1024G001"), (4, 12.0, 0.01, "M4A12G001")):
    dim = truncation(a2)
    al = math.sqrt(a2)
    ideal = logical(cat(m, al, dim), cat(m, al, dim, True), *T_COEFFS)
    at = al * math.exp(-gt / 2)
    ref = damped_reference(ideal, m, al, at, dim)
    values[f"kTdRebuiltT{tag}"] = None
    noisy = loss(pure(ideal), gt)
    mit, prob = project(noisy, mask(dim, m, 0))
    values[f"kTdNoisyT{tag}"] = tdist(noisy, ref)
    values[f"kTdMitT{tag}"] = tdist(mit, ref)
    # The naive target a|0_{alpha(t)}> + b|1_{alpha(t)}> for comparison.
    rebuilt = pure(logical(cat(m, at, dim), cat(m, at, dim, True), *T_COEFFS))
    values[f"kTdRebuiltT{tag}"] = tdist(mit, rebuilt)
    values[f"kPcT{tag}"] = prob
    gamma = mp.mpf(a2) * (1 - mp.e ** (-mp.mpf(gt)))
    values[f"kTdFormulaT{tag}"] = (1 / (2 * mp.sqrt(2))) * (1 - g_series(m, gamma) / f_series(m, gamma))

# Binomial, M=2, γt=0.01: logical zero and T state.
for level in (1, 2, 3, 4):
    dim = (level + 1) * 2 + 1
    z = binomial(2, level, dim)
    o = binomial(2, level, dim, True)
    for name, v, proj in (("Zero", z, mask(dim, 4, 0)), ("T", logical(z, o, *T_COEFFS), mask(dim, 2, 0))):
        noisy = loss(pure(v), 0.01)
        mit, _ = project(noisy, proj)
        values[f"kBinomTdNoisy{name}L{level}"] = tdist(noisy, pure(v))
        values[f"kBinomTdMit{name}L{level}"] = tdist(mit, pure(v))

# Dephasing and the truncated number-translation filter.
for m, a2, tag in ((1, 16.0, "M1A16"), (2, 36.0, "M2A36")):
    dim = truncation(a2)
    v = cat(m, math.sqrt(a2), dim)
    noisy = dephase(pure(v), 0.1)
    xn = np.zeros((dim, dim), dtype=complex)
    for i in range(dim - m):
        xn[i, i + m] = 1.0
    x2 = xn @ xn
    for level in range(4):
        a = sum(np.linalg.matrix_power(x2, k) for k in range(level + 1)) / (level + 1)
        out = a @ noisy @ a.conj().T
        out /= np.trace(out).real
        values[f"kPhaseFid{tag}L{level}"] = (v.conj() @ out @ v).real

# Wigner values (expm displacement on an enlarged space).
values["kWignerVacuumOrigin"] = wigner(pure(coherent(0.0, 10)), 0.0, 0.0)
for (x, p), tag in (((0.0, 0.0), "Origin"), ((1.0, 0.5), "P1"), ((2.0 * math.sqrt(2), 0.0), "Peak"), ((0.0, 0.9), "Fringe")):
    values[f"kWignerCatZero{tag}"] = wigner(pure(zero), x, p)
mit01, _ = project(noisy01, mask(D40, 4, 0))
for (x, p), tag in (((0.0, 0.0), "Origin"), ((0.0, 0.9), "Fringe")):
    values[f"kWignerNoisy{tag}"] = wigner(noisy01, x, p)
    values[f"kWignerMit{tag}"] = wigner(mit01, x, p)

# Two-mode state-preparation plan: zero mode ⊗ resource |+>, CROT, then
# Z_2 on the zero mode and exp(0.3 i (a + a†)) on the resource.
DIM2 = 24
za = cat(2, math.sqrt(3.0), DIM2)
plus = logical(za, cat(2, math.sqrt(3.0), DIM2, True), 1 / math.sqrt(2), 1 / math.sqrt(2))
rho_a = loss(pure(za), 0.05)
rho_b = loss(pure(plus), 0.05)
sa, pa = project(rho_a, mask(DIM2, 4, 0))
sb, pb = project(rho_b, mask(DIM2, 2, 0))
n = np.arange(DIM2)
crot = np.diag(np.exp(1j * math.pi * np.outer(n, n).ravel() / 4))
ab = annihilation(DIM2)
ob = expm(0.3j * (ab + ab.conj().T))
obs = np.kron(z_op(2, DIM2), ob)
joint = np.kron(sa, sb)
val = np.trace(obs @ crot @ joint @ crot.conj().T)
values["kTwoModeValue"] = val.real
values["kTwoModeP"] = pa
values["kTwoModeQ"] = pb

print("""// Copyright 2026 The rsbc Authors
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
""")
print("// Generated by tests/oracle/generate_oracle.py. Do not edit.")
print("#pragma once")
print()
print("namespace oracle {")
print()
for key, v in values.items():
    print(f"inline constexpr double {key} = {mp.nstr(mp.mpf(float(v)) if not isinstance(v, mp.mpf) else v, 17)};")
print()
print("}  // namespace oracle")
