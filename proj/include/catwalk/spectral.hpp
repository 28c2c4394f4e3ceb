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

#pragma once

#include "catwalk/lattice.hpp"

namespace catwalk {

/// h(k) with H(k) = h . sigma for the walk Z = S (1 (x) C(theta)).
struct BlochVector {
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
  double k = 0.0;
  double theta = 0.0;

  double magnitude() const;
};

/// At the removable singularity (sin theta = 0, cos k = 0) the direction is
/// the limit taken from the side where cos k > 0.
BlochVector bloch_vector(double theta, double k);

/// h1 sigma_x + h2 sigma_y + h3 sigma_z.
Matrix2 hamiltonian_k(double theta, double k);

/// One walk step restricted to momentum k: diag(e^{ik}, e^{-ik}) C(theta).
/// exp(-i H(k)) equals i times this matrix (H is traceless, det Z(k) = -1).
Matrix2 momentum_step_unitary(double theta, double k);

struct Energies {
  double minus = 0.0;
  double plus = 0.0;
};

/// +-arccos(-cos(theta) sin(k)), principal branch.
Energies exact_energies(double theta, double k);
/// +-(k cos(theta) + pi/2).
Energies linear_dispersion(double theta, double k);

struct EigenPair {
  double e_minus = 0.0;
  double e_plus = 0.0;
  Vector2 u_minus = Vector2::Zero();
  Vector2 u_plus = Vector2::Zero();
  /// Set when e_plus - e_minus < 1e-8.
  bool near_degenerate = false;
};

/// Eigen-decomposition of a 2x2 Hermitian matrix with each eigenvector's
/// first non-negligible component made real and positive.
EigenPair diagonalize(const Matrix2& hermitian);
EigenPair eigen_system(double theta, double k);

/// exp(-i H t) for Hermitian 2x2 H, closed form.
Matrix2 propagator(const Matrix2& hermitian, double t);

/// Second-order small-k truncation of H(k).
Matrix2 truncated_h2(double theta, double k);

/// Closed-form small-k eigenvectors that accompany the second-order
/// truncation, normalized by n1 and n2. Diagnostic only: at k = 0 the two
/// vectors are not mutually orthogonal.
struct AppendixEigenvectors {
  Vector2 u_minus;
  Vector2 u_plus;
  double n1 = 0.0;
  double n2 = 0.0;
};
AppendixEigenvectors appendix_eigenvectors(double theta, double k);

/// First-order truncation and its eigenvalues
/// +-sqrt((k cos + pi/2)^2 + (k pi sin / 2)^2).
Matrix2 truncated_h1(double theta, double k);
Energies truncated_h1_energies(double theta, double k);

/// H_d(k) = -(k + pi/2) sigma_z - theta (pi/2) sigma_x.
Matrix2 dirac_hamiltonian(double theta, double k);
Energies dirac_energies(double theta, double k);

/// Applies exp(-i H_d(k) t) in every momentum sector. Accepts either basis
/// and returns the state in the basis it was given.
PureState dirac_evolve(const PureState& state, double theta, double t);

/// (u_-(0) + e^{i varphi} u_+(0)) / sqrt(2) with gauge-fixed eigenvectors.
CoinState symmetric_coin_state(double theta, double varphi);

struct CoinAmplitudes {
  Complex minus;
  Complex plus;
};

/// a_+-(k) = <u_+-(k)|chi>.
CoinAmplitudes coin_decomposition(double theta, double k, const CoinState& chi);

}  // namespace catwalk
