// Copyright 2026 The Authors.
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

// Numeric helpers behind the solvers' quality bounds.

#ifndef PREFALLOC_NUMERIC_HPP_
#define PREFALLOC_NUMERIC_HPP_

#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "prefalloc/core.hpp"

namespace prefalloc {

using Rational = boost::multiprecision::cpp_rational;

// H_k = 1 + 1/2 + ... + 1/k, exact.
inline Rational harmonic(int k) {
  if (k < 1) throw DomainError("harmonic number needs k >= 1");
  Rational h = 0;
  for (int i = 1; i <= k; ++i) h += Rational(1, i);
  return h;
}

// Summed smallest-first; within k ulps of the exact value.
inline double harmonic_double(int k) {
  if (k < 1) throw DomainError("harmonic number needs k >= 1");
  double h = 0.0;
  for (int i = k; i >= 1; --i) h += 1.0 / i;
  return h;
}

// Principal branch of the Lambert W function on x >= 0: the w >= 0 with
// w * exp(w) = x.
inline double lambert_w(double x) {
  if (!(x >= 0.0)) throw DomainError("lambert_w is defined here for x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  double w = std::log1p(x);
  for (int iter = 0; iter < 100; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    // Halley step; converges cubically from log(1 + x).
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  // Final Newton polish.
  for (int iter = 0; iter < 3; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (f == 0.0) break;
    w -= f / (ew * (w + 1.0));
  }
  return w;
}

// ceil(v) that treats values within `slack` above an integer as that
// integer, so floating noise in closed forms does not bump the result.
inline std::int64_t ceil_tolerant(double v, double slack = 1e-9) {
  return static_cast<std::int64_t>(std::ceil(v - slack));
}

// C(m, k), saturating at the int64 maximum.
inline std::int64_t binomial_saturating(int m, int k) {
  if (k < 0 || k > m) return 0;
  k = std::min(k, m - k);
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(m - k + i) / static_cast<unsigned>(i);
    if (r > static_cast<unsigned __int128>(kMax)) return kMax;
  }
  return static_cast<std::int64_t>(r);
}

}  // namespace prefalloc

#endif  // PREFALLOC_NUMERIC_HPP_
