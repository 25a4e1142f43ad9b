// Copyright 2026 The fowtcd Authors
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

#ifndef FOWT_ERRORS_HPP_
#define FOWT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fowt {

// Base of every error the toolkit throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters, file contents or command-line settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Arguments outside the domain of a physical relation (v <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Finite-difference stencil does not fit inside the tabulated surface.
class MarginError : public Error {
 public:
  using Error::Error;
};

// No blade pitch balances rated torque at the requested wind speed.
class NoTrimError : public Error {
 public:
  using Error::Error;
};

// Division by a vanishing sensitivity or a singular pencil.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Plant state left the modelled regime during integration.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double time)
      : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace fowt

#endif  // FOWT_ERRORS_HPP_
