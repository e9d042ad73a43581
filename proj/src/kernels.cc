// src/kernels.cc

// Copyright 2026  Pseudovoice Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "pseudovoice/kernels.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "pseudovoice/errors.h"

namespace pseudovoice::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void accumulate(double* dst, const double* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

}  // namespace scalar

#if PSEUDOVOICE_KERNELS_AVX2
namespace avx2 {
bool cpu_supported();
double dot(const double* a, const double* b, std::size_t n);
void multiply(const double* a, const double* b, double* out, std::size_t n);
void accumulate(double* dst, const double* src, std::size_t n);
}  // namespace avx2
#endif

namespace {

Backend detect_backend() {
#if PSEUDOVOICE_KERNELS_AVX2
  const char* env = std::getenv("PSEUDOVOICE_SIMD");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return Backend::kScalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (!avx2::cpu_supported())
        throw ConfigError("PSEUDOVOICE_SIMD=avx2 but the CPU lacks AVX2/FMA");
      return Backend::kAvx2;
    }
    if (std::strcmp(env, "auto") != 0)
      throw ConfigError(std::string("unknown PSEUDOVOICE_SIMD value: ") + env);
  }
  if (avx2::cpu_supported()) return Backend::kAvx2;
#endif
  return Backend::kScalar;
}

Backend& backend_state() {
  static Backend backend = detect_backend();
  return backend;
}

}  // namespace

const char* backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Backend active_backend() { return backend_state(); }

bool backend_supported(Backend backend) {
  if (backend == Backend::kScalar) return true;
#if PSEUDOVOICE_KERNELS_AVX2
  return backend == Backend::kAvx2 && avx2::cpu_supported();
#else
  return false;
#endif
}

void set_backend(Backend backend) {
  if (!backend_supported(backend))
    throw ConfigError(std::string("kernel backend not supported here: ") +
                      backend_name(backend));
  backend_state() = backend;
}

double dot(const double* a, const double* b, std::size_t n) {
#if PSEUDOVOICE_KERNELS_AVX2
  if (backend_state() == Backend::kAvx2) return avx2::dot(a, b, n);
#endif
  return scalar::dot(a, b, n);
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
#if PSEUDOVOICE_KERNELS_AVX2
  if (backend_state() == Backend::kAvx2) {
    avx2::multiply(a, b, out, n);
    return;
  }
#endif
  scalar::multiply(a, b, out, n);
}

void accumulate(double* dst, const double* src, std::size_t n) {
#if PSEUDOVOICE_KERNELS_AVX2
  if (backend_state() == Backend::kAvx2) {
    avx2::accumulate(dst, src, n);
    return;
  }
#endif
  scalar::accumulate(dst, src, n);
}

void autocorrelation(const double* x, std::size_t n, std::size_t max_lag,
                     double* r) {
  for (std::size_t lag = 0; lag <= max_lag; ++lag)
    r[lag] = dot(x, x + lag, n - lag);
}

}  // namespace pseudovoice::kernels
