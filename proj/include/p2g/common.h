/* Copyright 2026 The p2g Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef P2G_COMMON_H_
#define P2G_COMMON_H_

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace p2g {

// Malformed data: bad indices, unparsable lines, non-normalized rows.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a precondition on a count or option.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// log(0). Propagates through LogAdd without producing NaN.
inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

inline bool IsLogZero(double x) { return x == kLogZero; }

// log(exp(a) + exp(b)).
inline double LogAdd(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kLogZero) return a;
  return a + std::log1p(std::exp(b - a));
}

// Streaming log-sum-exp. Rescales whenever a larger term arrives so the
// running sum stays in [1, n].
class LogSumExp {
 public:
  void Add(double x) {
    if (x == kLogZero) return;
    if (max_ == kLogZero) {
      max_ = x;
      sum_ = 1.0;
    } else if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }
  double Value() const {
    return max_ == kLogZero ? kLogZero : max_ + std::log(sum_);
  }

 private:
  double max_ = kLogZero;
  double sum_ = 0.0;
};

inline double LogSumExpOf(std::span<const double> xs) {
  LogSumExp acc;
  for (double x : xs) acc.Add(x);
  return acc.Value();
}

// Splits UTF-8 text into code-point substrings. Throws InvalidInput on
// malformed sequences.
std::vector<std::string> SplitCodePoints(std::string_view text);

// Decodes UTF-8 into code points. Throws InvalidInput on malformed input.
std::vector<char32_t> DecodeUtf8(std::string_view text);

std::string EncodeUtf8(std::span<const char32_t> cps);

}  // namespace p2g

#endif  // P2G_COMMON_H_
