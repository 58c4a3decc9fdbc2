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

#include <string>
#include <string_view>

#include "linsample/oracle.hpp"

namespace linsample {

/// Point-set CSV: header `id,x1,...,xd`, one point per row. Ids must be a
/// permutation of 0..n-1.
MetricInstance load_points_csv(const std::string& path);

/// Matrix CSV: n rows of n comma-separated non-negative reals.
MetricInstance load_matrix_csv(const std::string& path, double lambda);

/// Builds an instance from a generator string:
///   euclidean:<file>          points file, lambda = 1
///   matrix:<file>:<lambda>    explicit matrix
///   g1:<n>                    all-zero hardness graph
///   g2:<n>:<seed>             hidden-star hardness graph
///   star:<n>                  heavy-star instance
///   pow:<inner>:<p>           power wrapper around another spec
///   line:<n>                  points 0..n-1 on a line
///   uniform:<n>:<d>:<seed>    uniform random points in [0,1]^d
MetricInstance parse_instance_spec(std::string_view spec);

}  // namespace linsample
