// Copyright 2026 The linsample Authors
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

#pragma once

#include <cstdint>
#include <utility>

namespace linsample::internal {

inline std::uint64_t choose2(std::uint64_t m) { return m < 2 ? 0 : m * (m - 1) / 2; }

// Maps non-decreasing indices of the row-major strict upper triangle of an
// m x m matrix back to (row, col). Amortized O(1) per call.
class TriangleWalker {
 public:
  explicit TriangleWalker(std::uint64_t m) : row_len_(m == 0 ? 0 : m - 1) {}

  std::pair<std::uint64_t, std::uint64_t> operator()(std::uint64_t k) {
    while (k >= row_start_ + row_len_) {
      row_start_ += row_len_;
      ++row_;
      --row_len_;
    }
    return {row_, row_ + 1 + (k - row_start_)};
  }

 private:
  std::uint64_t row_ = 0;
  std::uint64_t row_start_ = 0;
  std::uint64_t row_len_;
};

}  // namespace linsample::internal
