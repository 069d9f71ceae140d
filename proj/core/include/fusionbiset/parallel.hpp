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

#ifndef FUSIONBISET_PARALLEL_HPP_
#define FUSIONBISET_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace fusionbiset {

// Worker count from FUSIONBISET_WORKERS, else the hardware concurrency.
unsigned worker_count();

// Runs body(0..n-1) on worker_count() threads; the first exception thrown
// by any call is rethrown after all workers finish. Nested calls run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fusionbiset

#endif  // FUSIONBISET_PARALLEL_HPP_
