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

#include "catwalk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fourier.hpp"

namespace catwalk {
namespace {

double l2_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return std::sqrt(s);
}

void normalize(std::vector<Complex>& v) {
  const double n = l2_norm(v);
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero state");
  for (auto& a : v) a /= n;
}

// Periodic distance on the Brillouin zone, in [-pi, pi).
double wrap_momentum(double k) {
  double w = std::fmod(k + kPi, 2.0 * kPi);
  if (w < 0) w += 2.0 * kPi;
  return w - kPi;
}

void require_same(const Lattice& a, const Lattice& b) {
  if (!(a == b)) {
    throw std::invalid_argument("lattice mismatch: N=" + std::to_string(a.size()) + " vs N=" +
                                std::to_string(b.size()));
  }
}

}  // namespace

Lattice::Lattice(int size) : size_(size) {
  if (size < 4) throw std::invalid_argument("lattice size must be >= 4, got " + std::to_string(size));
  if (size % 2 != 0) throw std::invalid_argument("lattice size must be even, got " + std::to_string(size));
}

int Lattice::index_of(int site) const {
  if (!contains(site)) {
    throw std::out_of_range("site " + std::to_string(site) + " outside [" + std::to_string(min_site()) +
                            ", " + std::to_string(max_site()) + "]");
  }
  return site - min_site();
}

double Lattice::momentum_at(int index) const {
  return 2.0 * kPi * static_cast<double>(index - size_ / 2) / static_cast<double>(size_);
}

double Lattice::momentum_spacing() const { return 2.0 * kPi / static_cast<double>(size_); }

Lattice make_lattice(int size) { return Lattice(size); }

int recommended_lattice_size(int steps, double sigma) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (sigma < 0) throw std::invalid_argument("sigma must be >= 0");
  const double span = std::max(2.0 * steps + 8.0 * sigma, 14.0 * sigma);
  int n = static_cast<int>(std::ceil(span));
  if (n % 2 != 0) ++n;
  return std::max(4, n + 2);
}

CoinState::CoinState(Complex up, Complex down) : up_(up), down_(down) {
  const double n2 = std::norm(up) + std::norm(down);
  if (std::abs(n2 - 1.0) > 1e-12) {
    throw std::invalid_argument("coin state not normalized: |a|^2+|b|^2 = " + std::to_string(n2));
  }
}

CoinState CoinState::normalized(Complex up, Complex down) {
  const double n = std::sqrt(std::norm(up) + std::norm(down));
  if (n == 0.0) throw std::invalid_argument("coin state must be non-zero");
  return {up / n, down / n};
}

double WalkerState::norm() const { return l2_norm(amplitudes); }

PureState::PureState(Lattice lattice, std::vector<Complex> amplitudes, Basis basis)
    : lattice_(lattice), amplitudes_(std::move(amplitudes)), basis_(basis) {
  if (amplitudes_.size() != 2 * static_cast<std::size_t>(lattice_.size())) {
    throw std::invalid_argument("state length " + std::to_string(amplitudes_.size()) +
                                " does not match 2N = " + std::to_string(2 * lattice_.size()));
  }
  const double n = norm();
  if (std::abs(n - 1.0) > 1e-10) {
    throw std::invalid_argument("state norm " + std::to_string(n) + " differs from 1");
  }
}

double PureState::norm() const { return l2_norm(amplitudes_); }

DensityOperator::DensityOperator(Lattice lattice, Eigen::MatrixXcd matrix)
    : lattice_(lattice), matrix_(std::move(matrix)) {
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(lattice_.size());
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("density matrix must be 2N x 2N");
  }
  if (hermiticity_error() > 1e-10) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(trace() - 1.0) > 1e-10) throw std::invalid_argument("density matrix trace differs from 1");
}

DensityOperator::DensityOperator(Lattice lattice, Eigen::MatrixXcd matrix, Unchecked)
    : lattice_(lattice), matrix_(std::move(matrix)) {}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  if (psi.basis() != Basis::position) {
    throw std::invalid_argument("density operators are built from position-basis states");
  }
  const auto a = psi.amplitudes();
  Eigen::Map<const Eigen::VectorXcd> v(a.data(), static_cast<Eigen::Index>(a.size()));
  Eigen::MatrixXcd m = v * v.adjoint();
  return DensityOperator(psi.lattice(), std::move(m), Unchecked{});
}

double DensityOperator::trace() const { return matrix_.trace().real(); }

double DensityOperator::hermiticity_error() const {
  double worst = 0.0;
  const Eigen::Index n = matrix_.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(matrix_(i, j) - std::conj(matrix_(j, i))));
    }
  }
  return worst;
}

double DensityOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityOperator::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return matrix_.squaredNorm();
}

PureState localized_state(const Lattice& lattice, int site, const CoinState& coin) {
  const int i = lattice.index_of(site);
  std::vector<Complex> amp(2 * static_cast<std::size_t>(lattice.size()));
  amp[2 * i] = coin.up();
  amp[2 * i + 1] = coin.down();
  return PureState(lattice, std::move(amp));
}

PureState gaussian_position_state(const Lattice& lattice, double sigma, int x0, double k0,
                                  const CoinState& coin) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!lattice.contains(x0)) throw std::invalid_argument("x0 outside the lattice");

  auto weight = [&](int x) {
    const double d = static_cast<double>(x - x0);
    return std::exp(-d * d / (2.0 * sigma * sigma));
  };
  double inside = 0.0;
  for (int x = lattice.min_site(); x <= lattice.max_site(); ++x) inside += weight(x);
  double outside = 0.0;
  for (int d = 1;; ++d) {
    const double w = weight(lattice.min_site() - d) + weight(lattice.max_site() + d);
    outside += w;
    if (w < 1e-300 || d > 64 * lattice.size()) break;
  }
  if (outside / (inside + outside) >= 1e-10) {
    throw std::invalid_argument("lattice N=" + std::to_string(lattice.size()) +
                                " too small for a Gaussian of width " + std::to_string(sigma) +
                                " (tail mass " + std::to_string(outside / (inside + outside)) + ")");
  }

  std::vector<Complex> amp(2 * static_cast<std::size_t>(lattice.size()));
  for (int i = 0; i < lattice.size(); ++i) {
    const int x = lattice.site_at(i);
    const double d = static_cast<double>(x - x0);
    const Complex g = std::exp(-d * d / (4.0 * sigma * sigma)) * std::polar(1.0, -k0 * x);
    amp[2 * i] = g * coin.up();
    amp[2 * i + 1] = g * coin.down();
  }
  normalize(amp);
  return PureState(lattice, std::move(amp));
}

PureState gaussian_momentum_state(const Lattice& lattice, double delta, double k0,
                                  const CoinState& coin) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  std::vector<Complex> amp(2 * static_cast<std::size_t>(lattice.size()));
  for (int j = 0; j < lattice.size(); ++j) {
    const double d = wrap_momentum(lattice.momentum_at(j) - k0);
    const double g = std::exp(-d * d / (4.0 * delta * delta));
    amp[2 * j] = g * coin.up();
    amp[2 * j + 1] = g * coin.down();
  }
  normalize(amp);
  return PureState(lattice, std::move(amp), Basis::momentum);
}

namespace {

std::vector<Complex> transform_levels(const PureState& state, bool forward) {
  const int n = state.lattice().size();
  std::vector<Complex> out(state.amplitudes().begin(), state.amplitudes().end());
  std::vector<Complex> level(n);
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < n; ++i) level[i] = out[2 * i + c];
    if (forward) {
      detail::position_to_momentum(level);
    } else {
      detail::momentum_to_position(level);
    }
    for (int i = 0; i < n; ++i) out[2 * i + c] = level[i];
  }
  return out;
}

}  // namespace

PureState to_momentum(const PureState& state) {
  if (state.basis() != Basis::position) throw std::invalid_argument("state is already in the momentum basis");
  return PureState(state.lattice(), transform_levels(state, true), Basis::momentum);
}

PureState to_position(const PureState& state) {
  if (state.basis() != Basis::momentum) throw std::invalid_argument("state is already in the position basis");
  return PureState(state.lattice(), transform_levels(state, false), Basis::position);
}

WalkerState to_momentum(const WalkerState& state) {
  if (state.basis != Basis::position) throw std::invalid_argument("walker state is already in the momentum basis");
  WalkerState out = state;
  detail::position_to_momentum(out.amplitudes);
  out.basis = Basis::momentum;
  return out;
}

WalkerState to_position(const WalkerState& state) {
  if (state.basis != Basis::momentum) throw std::invalid_argument("walker state is already in the position basis");
  WalkerState out = state;
  detail::momentum_to_position(out.amplitudes);
  out.basis = Basis::position;
  return out;
}

Complex inner_product(const PureState& a, const PureState& b) {
  require_same(a.lattice(), b.lattice());
  if (a.basis() != b.basis()) throw std::invalid_argument("states are in different bases");
  Complex s = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double fidelity(const PureState& a, const PureState& b) { return std::norm(inner_product(a, b)); }

double fidelity_with_density(const PureState& psi, const DensityOperator& rho) {
  require_same(psi.lattice(), rho.lattice());
  if (psi.basis() != Basis::position) throw std::invalid_argument("fidelity_with_density needs a position-basis state");
  const auto a = psi.amplitudes();
  Eigen::Map<const Eigen::VectorXcd> v(a.data(), static_cast<Eigen::Index>(a.size()));
  return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

}  // namespace catwalk
