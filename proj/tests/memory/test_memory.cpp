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

// Peak heap use of one density-matrix revival run against the figure the
// memory guard predicts. Eigen allocates through malloc, so the glibc entry
// points are wrapped here rather than operator new.

#include <malloc.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>

#include "catwalk/experiments.hpp"
#include "catwalk/protocols.hpp"
#include "catwalk/spectral.hpp"

extern "C" {
void* __libc_malloc(std::size_t);
void* __libc_calloc(std::size_t, std::size_t);
void* __libc_realloc(void*, std::size_t);
void* __libc_memalign(std::size_t, std::size_t);
void __libc_free(void*);
}

namespace {

std::atomic<long long> live{0};
std::atomic<long long> peak{0};

void track(void* p, long long sign) {
  if (!p) return;
  const long long delta = sign * static_cast<long long>(malloc_usable_size(p));
  const long long now = live.fetch_add(delta) + delta;
  long long old = peak.load();
  while (now > old && !peak.compare_exchange_weak(old, now)) {
  }
}

}  // namespace

extern "C" {

void* malloc(std::size_t n) {
  void* p = __libc_malloc(n);
  track(p, 1);
  return p;
}

void* calloc(std::size_t n, std::size_t s) {
  void* p = __libc_calloc(n, s);
  track(p, 1);
  return p;
}

void* realloc(void* old, std::size_t n) {
  track(old, -1);
  void* p = __libc_realloc(old, n);
  // A failed realloc leaves the old block alive.
  track(p ? p : (n ? old : nullptr), 1);
  return p;
}

void free(void* p) {
  track(p, -1);
  __libc_free(p);
}

void* memalign(std::size_t a, std::size_t n) {
  void* p = __libc_memalign(a, n);
  track(p, 1);
  return p;
}

void* aligned_alloc(std::size_t a, std::size_t n) { return memalign(a, n); }

int posix_memalign(void** out, std::size_t a, std::size_t n) {
  *out = memalign(a, n);
  return *out ? 0 : 12;
}

}  // extern "C"

int main() {
  using namespace catwalk;
  int failures = 0;
  for (int n : {128, 256}) {
    const Lattice lat(n);
    const PureState psi = gaussian_position_state(lat, 4.0, 0, 0.0, symmetric_coin_state(kPi / 4, kPi / 2));
    const ChannelSpec spec{ChannelKind::amplitude_damping, 0.01, ChannelTarget::coin};
    const long long base = live.load();
    peak.store(base);
    const RevivalResult res = revival_protocol(psi, kPi / 4, 20, spec);
    const double used = static_cast<double>(peak.load() - base);
    const double predicted = static_cast<double>(density_run_bytes(n));
    const double ratio = used / predicted;
    const bool ok = ratio >= 0.9 && ratio <= 1.1;
    std::printf("%s N=%d predicted=%.0f peak=%.0f ratio=%.4f r=%.6f\n", ok ? "PASS" : "FAIL", n, predicted, used, ratio,
                res.r);
    failures += ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
