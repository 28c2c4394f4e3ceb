// Copyright 2026 The catwalk Authors
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

#include "catwalk/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "fourier.hpp"

namespace catwalk {
namespace {

const Complex kI(0.0, 1.0);

Matrix2 pauli_combination(double x, double y, double z) {
  Matrix2 m;
  m << z, Complex(x, -y), Complex(x, y), -z;
  return m;
}

void fix_gauge(Vector2& v) {
  const double scale = v.norm();
  for (int i = 0; i < 2; ++i) {
    if (std::abs(v(i)) > 1e-12 * scale) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

}  // namespace

double BlochVector::magnitude() const { return std::sqrt(h1 * h1 + h2 * h2 + h3 * h3); }

BlochVector bloch_vector(double theta, double k) {
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double sk = std::sin(k);
  const double ck = std::cos(k);
  const double energy = std::acos(std::clamp(-ct * sk, -1.0, 1.0));
  const double denom = std::sqrt(st * st * sk * sk + ck * ck);

  BlochVector h{.k = k, .theta = theta};
  if (denom > 1e-300) {
    const double r = energy / denom;
    h.h1 = -r * st * ck;
    h.h2 = r * st * sk;
    h.h3 = -r * ct * ck;
  } else {
    // sin(theta) = 0 and cos(k) = 0: direction (0, 0, -cos(theta) sign(cos k))
    // with cos k -> 0+.
    h.h3 = -energy * (ct >= 0.0 ? 1.0 : -1.0);
  }
  return h;
}

Matrix2 hamiltonian_k(double theta, double k) {
  const BlochVector h = bloch_vector(theta, k);
  return pauli_combination(h.h1, h.h2, h.h3);
}

Matrix2 momentum_step_unitary(double theta, double k) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex fwd = std::polar(1.0, k);
  const Complex bwd = std::polar(1.0, -k);
  Matrix2 z;
  z << fwd * c, fwd * s, bwd * s, -bwd * c;
  return z;
}

Energies exact_energies(double theta, double k) {
  const double e = std::acos(std::clamp(-std::cos(theta) * std::sin(k), -1.0, 1.0));
  return {-e, e};
}

Energies linear_dispersion(double theta, double k) {
  const double e = k * std::cos(theta) + kPi / 2.0;
  return {-e, e};
}

EigenPair diagonalize(const Matrix2& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix2> solver(hermitian);
  EigenPair pair;
  pair.e_minus = solver.eigenvalues()(0);
  pair.e_plus = solver.eigenvalues()(1);
  pair.u_minus = solver.eigenvectors().col(0);
  pair.u_plus = solver.eigenvectors().col(1);
  fix_gauge(pair.u_minus);
  fix_gauge(pair.u_plus);
  pair.near_degenerate = (pair.e_plus - pair.e_minus) < 1e-8;
  return pair;
}

EigenPair eigen_system(double theta, double k) { return diagonalize(hamiltonian_k(theta, k)); }

Matrix2 propagator(const Matrix2& hermitian, double t) {
  const Complex mean = 0.5 * (hermitian(0, 0) + hermitian(1, 1));
  const Matrix2 traceless = hermitian - mean * Matrix2::Identity();
  // traceless^2 = |n|^2 * 1
  const double n = std::sqrt(std::abs((traceless * traceless)(0, 0)));
  Matrix2 u = std::cos(n * t) * Matrix2::Identity();
  if (n > 0.0) u -= kI * (std::sin(n * t) / n) * traceless;
  return std::exp(-kI * mean * t) * u;
}

Matrix2 truncated_h2(double theta, double k) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double lin = k * c + kPi / 2.0;
  const double quad = lin - 0.25 * kPi * k * k * s * s;
  Matrix2 h;
  h << -c * quad, Complex(-s * quad, -k * s * lin), Complex(-s * quad, k * s * lin), c * quad;
  return h;
}

AppendixEigenvectors appendix_eigenvectors(double theta, double k) {
  const double c = std::cos(theta);
  const double ch = std::cos(theta / 2.0);
  const double sh = std::sin(theta / 2.0);
  const Complex p_minus(-0.5 * k * k * c + k * k - 2.0, -2.0 * k);
  const Complex p_plus(-0.5 * k * k * c - k * k + 2.0, 2.0 * k);
  const Complex n1_arg(-0.5 * k * k * c + k * k - 2.0, -2.0 * k);
  const Complex n2_arg(0.5 * k * k * c + k * k - 2.0, -2.0 * k);

  AppendixEigenvectors out;
  out.n1 = std::sqrt(sh * sh + std::norm(n1_arg) * ch * ch);
  out.n2 = std::sqrt(ch * ch + std::norm(n2_arg) * sh * sh);
  out.u_minus << p_minus * ch / out.n1, sh / out.n1;
  out.u_plus << p_plus * sh / out.n2, ch / out.n2;
  return out;
}

Matrix2 truncated_h1(double theta, double k) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double lin = k * c + kPi / 2.0;
  const double im = k * (kPi / 2.0) * s;
  Matrix2 h;
  h << -c * lin, Complex(-s * lin, -im), Complex(-s * lin, im), c * lin;
  return h;
}

Energies truncated_h1_energies(double theta, double k) {
  const double lin = k * std::cos(theta) + kPi / 2.0;
  const double im = k * (kPi / 2.0) * std::sin(theta);
  const double e = std::sqrt(lin * lin + im * im);
  return {-e, e};
}

Matrix2 dirac_hamiltonian(double theta, double k) {
  return pauli_combination(-theta * kPi / 2.0, 0.0, -(k + kPi / 2.0));
}

Energies dirac_energies(double theta, double k) {
  const double a = k + kPi / 2.0;
  const double m = kPi * theta / 2.0;
  const double e = std::sqrt(a * a + m * m);
  return {-e, e};
}

PureState dirac_evolve(const PureState& state, double theta, double t) {
  const bool was_position = state.basis() == Basis::position;
  const PureState mom = was_position ? to_momentum(state) : state;
  const Lattice& lat = mom.lattice();
  std::vector<Complex> amp(mom.amplitudes().begin(), mom.amplitudes().end());
  for (int j = 0; j < lat.size(); ++j) {
    const Matrix2 u = propagator(dirac_hamiltonian(theta, lat.momentum_at(j)), t);
    const Vector2 v(amp[2 * j], amp[2 * j + 1]);
    const Vector2 w = u * v;
    amp[2 * j] = w(0);
    amp[2 * j + 1] = w(1);
  }
  PureState evolved(lat, std::move(amp), Basis::momentum);
  return was_position ? to_position(evolved) : evolved;
}

CoinState symmetric_coin_state(double theta, double varphi) {
  const EigenPair pair = eigen_system(theta, 0.0);
  const Vector2 chi = (pair.u_minus + std::polar(1.0, varphi) * pair.u_plus) / std::sqrt(2.0);
  return CoinState::from_vector(chi);
}

CoinAmplitudes coin_decomposition(double theta, double k, const CoinState& chi) {
  const EigenPair pair = eigen_system(theta, k);
  const Vector2 v = chi.vector();
  return {pair.u_minus.dot(v), pair.u_plus.dot(v)};
}

}  // namespace catwalk
