// include/pseudovoice/kernels.h

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

#pragma once

#include <cstddef>

namespace pseudovoice::kernels {

// Data-parallel inner loops of the DSP pipeline.  Every kernel has a scalar
// reference implementation and, on x86-64 with AVX2+FMA, a vector variant
// selected once at runtime.  multiply() and accumulate() are elementwise and
// bit-identical across backends; dot() and autocorrelation() may differ from
// the reference by floating-point reassociation only.
enum class Backend {
  kScalar,
  kAvx2,
};

const char* backend_name(Backend backend);

// Backend in use.  Resolved on first call: AVX2 when the CPU supports it and
// the PSEUDOVOICE_SIMD environment variable is unset or "auto"; the variable
// also accepts "scalar" and "avx2" to pin a backend.
Backend active_backend();

// True when the binary carries a vector variant and the CPU can run it.
bool backend_supported(Backend backend);

// Pins the backend for this process.  Throws ConfigError when unsupported.
// Intended for startup and equivalence tests, not for concurrent use.
void set_backend(Backend backend);

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// out[i] = a[i] * b[i]; used for analysis windowing.
void multiply(const double* a, const double* b, double* out, std::size_t n);

// dst[i] += src[i]; used for overlap-add.
void accumulate(double* dst, const double* src, std::size_t n);

// r[l] = sum_i x[i] * x[i+l] for l in [0, max_lag]; r must hold max_lag+1
// values and max_lag must be < n.
void autocorrelation(const double* x, std::size_t n, std::size_t max_lag,
                     double* r);

}  // namespace pseudovoice::kernels
