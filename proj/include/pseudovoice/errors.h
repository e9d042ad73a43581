// include/pseudovoice/errors.h

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

#include <stdexcept>

namespace pseudovoice {

// Error taxonomy shared by the library and the CLI exit-code mapping:
// configuration problems exit 1, file/format problems exit 2, numeric and
// structural pipeline failures exit 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid option values or ranges (e.g. alpha outside (0, 1]).
struct ConfigError : Error {
  using Error::Error;
};

// Malformed manifest, trials or config text; messages carry line numbers.
struct ParseError : Error {
  using Error::Error;
};

// Unreadable or unwritable files, truncated streams.
struct IoError : Error {
  using Error::Error;
};

// Well-formed files whose properties we do not support (stereo WAV, ...).
struct FormatError : IoError {
  using IoError::IoError;
};

// Inputs that violate an entry-point precondition (wrong sample rate, ...).
struct InputError : Error {
  using Error::Error;
};

// Broken invariants between processing stages: conjugate closure lost,
// frame geometry mismatch.  Signals a bug upstream, not bad user input.
struct StructuralError : Error {
  using Error::Error;
};

// Non-finite or unstable numeric results.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace pseudovoice
