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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace catwalk {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;

inline constexpr double kPi = 3.14159265358979323846;

/// Coin level index inside the composite (site, coin) amplitude array.
enum class Coin : int { up = 0, down = 1 };

enum class Basis { position, momentum };

/// Periodic one-dimensional lattice with sites -N/2 ... N/2-1.
///
/// Momentum grid point j (0-based) is k_j = 2*pi*(j - N/2)/N, which covers
/// [-pi, pi) with spacing 2*pi/N.
class Lattice {
 public:
  /// Throws std::invalid_argument unless N is even and N >= 4.
  explicit Lattice(int size);

  int size() const { return size_; }
  int min_site() const { return -size_ / 2; }
  int max_site() const { return size_ / 2 - 1; }
  bool contains(int site) const { return site >= min_site() && site <= max_site(); }

  /// Zero-based storage index for a site label. Throws std::out_of_range.
  int index_of(int site) const;
  int site_at(int index) const { return index + min_site(); }
  double momentum_at(int index) const;
  double momentum_spacing() const;

  /// Periodic neighbour index helpers used by the shift kernels.
  int wrap(int index) const { return ((index % size_) + size_) % size_; }

  bool operator==(const Lattice&) const = default;

 private:
  int size_;
};

Lattice make_lattice(int size);

/// Smallest even lattice that keeps a wavepacket of width `sigma` clear of
/// the periodic boundary for `steps` walk steps: 2*steps + 8*sigma, raised
/// to the 14*sigma needed for a tail mass below 1e-10, plus two guard sites.
int recommended_lattice_size(int steps, double sigma);

/// Normalized two-level coin state a|up> + b|down>.
class CoinState {
 public:
  /// Throws std::invalid_argument when |a|^2 + |b|^2 deviates from 1 by more
  /// than 1e-12.
  CoinState(Complex up, Complex down);

  /// Rescales (a, b) to unit norm. Throws on a zero vector.
  static CoinState normalized(Complex up, Complex down);
  static CoinState from_vector(const Vector2& v) { return normalized(v(0), v(1)); }

  static CoinState spin_up() { return {1.0, 0.0}; }
  static CoinState spin_down() { return {0.0, 1.0}; }

  Complex up() const { return up_; }
  Complex down() const { return down_; }
  Vector2 vector() const { return {up_, down_}; }

 private:
  Complex up_;
  Complex down_;
};

/// Walker-only wavefunction (no coin), e.g. a projected or Schmidt component.
struct WalkerState {
  Lattice lattice;
  std::vector<Complex> amplitudes;
  Basis basis = Basis::position;

  double norm() const;
};

/// Walker (x) coin wavefunction with unit L2 norm.
///
/// Amplitudes are stored site-major: element 2*i + c holds site index i and
/// coin level c, which matches the kron(walker, coin) ordering used by
/// DensityOperator.
class PureState {
 public:
  /// Throws std::invalid_argument if the length is not 2N or the norm is not
  /// 1 within 1e-10.
  PureState(Lattice lattice, std::vector<Complex> amplitudes, Basis basis = Basis::position);

  const Lattice& lattice() const { return lattice_; }
  Basis basis() const { return basis_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex amplitude(int index, Coin c) const { return amplitudes_[2 * index + static_cast<int>(c)]; }
  /// Amplitude addressed by site label (position basis) or grid index.
  Complex at_site(int site, Coin c) const { return amplitude(lattice_.index_of(site), c); }
  double norm() const;

  std::size_t dimension() const { return amplitudes_.size(); }

 private:
  Lattice lattice_;
  std::vector<Complex> amplitudes_;
  Basis basis_;
};

/// Hermitian, unit-trace, positive semi-definite operator on the composite
/// space, always in the position basis.
class DensityOperator {
 public:
  /// Validates shape, Hermiticity and trace (both within 1e-10).
  DensityOperator(Lattice lattice, Eigen::MatrixXcd matrix);

  static DensityOperator from_pure(const PureState& psi);

  const Lattice& lattice() const { return lattice_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  double trace() const;
  /// max_ij |rho_ij - conj(rho_ji)|
  double hermiticity_error() const;
  /// Smallest eigenvalue; O(N^3), intended for checkpoints only.
  double min_eigenvalue() const;
  double purity() const;

 private:
  friend class DensityAccess;
  struct Unchecked {};
  DensityOperator(Lattice lattice, Eigen::MatrixXcd matrix, Unchecked);

  Lattice lattice_;
  Eigen::MatrixXcd matrix_;
};

/// Grants the evolution kernels in-place access without revalidation.
class DensityAccess {
 public:
  static Eigen::MatrixXcd& matrix(DensityOperator& rho) { return rho.matrix_; }
  static DensityOperator wrap(Lattice lattice, Eigen::MatrixXcd matrix) {
    return DensityOperator(lattice, std::move(matrix), DensityOperator::Unchecked{});
  }
};

PureState localized_state(const Lattice& lattice, int site, const CoinState& coin);

/// Amplitudes exp(-(x-x0)^2 / (4 sigma^2)) * exp(-i k0 x) (x) coin, so the
/// momentum distribution is centred on +k0 under the grid convention of
/// to_momentum. Throws if sigma <= 0, x0 is off the lattice, or the Gaussian
/// tail beyond the lattice edge carries mass >= 1e-10.
PureState gaussian_position_state(const Lattice& lattice, double sigma, int x0, double k0,
                                  const CoinState& coin);

/// Momentum-basis state with amplitudes exp(-(k-k0)^2 / (4 delta^2)) (x) coin,
/// using the periodic distance on the Brillouin zone.
PureState gaussian_momentum_state(const Lattice& lattice, double delta, double k0,
                                  const CoinState& coin);

/// Unitary DFT per coin level with |x> = N^{-1/2} sum_k exp(ikx) |k>.
PureState to_momentum(const PureState& state);
PureState to_position(const PureState& state);
WalkerState to_momentum(const WalkerState& state);
WalkerState to_position(const WalkerState& state);

/// |<a|b>|^2. Throws std::invalid_argument on lattice or basis mismatch.
double fidelity(const PureState& a, const PureState& b);
/// <psi|rho|psi>; psi must be in the position basis.
double fidelity_with_density(const PureState& psi, const DensityOperator& rho);
Complex inner_product(const PureState& a, const PureState& b);

}  // namespace catwalk
