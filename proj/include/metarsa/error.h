// Copyright 2026 The metarsa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef METARSA_ERROR_H_
#define METARSA_ERROR_H_

#include <stdexcept>
#include <string>

namespace metarsa {

// Base of every error thrown by the library. Domain errors map to CLI exit
// code 1, I/O errors to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent data, invalid arguments, numerical degeneracy.
class DomainError : public Error {
 public:
  using Error::Error;
};

// File missing, unreadable or unwritable.
class IoError : public Error {
 public:
  using Error::Error;
};

// A utility evaluated log(0): some typicality is exactly 0 or 1.
class DegenerateUtilityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Pearson correlation requested on a constant vector.
class ZeroVarianceError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace metarsa

#endif  // METARSA_ERROR_H_
