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

#ifndef FUSIONBISET_RATIONAL_HPP_
#define FUSIONBISET_RATIONAL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fusionbiset {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "3/26", "-1/8", "0", "5".
std::string to_fraction_string(const Rational& q);
std::string to_fraction_string(std::int64_t v);
// Accepts "a/b" or an integer; throws std::invalid_argument otherwise.
Rational parse_fraction(std::string_view text);
bool is_integer(const Rational& q);
bool denominator_coprime_to(const Rational& q, int p);

// Solves the square system a x = b by Gaussian elimination over Q;
// nullopt if a is singular.
std::optional<std::vector<Rational>> solve_linear_system(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace fusionbiset

#endif  // FUSIONBISET_RATIONAL_HPP_
