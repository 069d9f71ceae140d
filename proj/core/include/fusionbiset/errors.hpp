// Copyright 2026 The fusionbiset Authors.
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

#ifndef FUSIONBISET_ERRORS_HPP_
#define FUSIONBISET_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fusionbiset {

// Root of every error thrown by the library.
class FusionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PrimeMismatchError : public FusionError {
 public:
  using FusionError::FusionError;
};

// A generator assignment that does not define an injective homomorphism.
class InvalidMorphismError : public FusionError {
 public:
  using FusionError::FusionError;
};

class InvalidSubgroupError : public FusionError {
 public:
  using FusionError::FusionError;
};

class InconsistentSpecError : public FusionError {
 public:
  using FusionError::FusionError;
};

// A biset whose support contains a class that is not an F-morphism class.
class SupportError : public FusionError {
 public:
  using FusionError::FusionError;
};

class StabilityError : public FusionError {
 public:
  using FusionError::FusionError;
};

class ResourceLimitError : public FusionError {
 public:
  using FusionError::FusionError;
};

class NotComputedError : public FusionError {
 public:
  using FusionError::FusionError;
};

class InternalConsistencyError : public FusionError {
 public:
  using FusionError::FusionError;
};

}  // namespace fusionbiset

#endif  // FUSIONBISET_ERRORS_HPP_
