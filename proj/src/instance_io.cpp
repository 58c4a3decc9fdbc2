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

#include "linsample/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "linsample/error.hpp"

namespace linsample {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

double parse_double(std::string_view s, const std::string& context) {
  double value = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    fail(ErrorCode::kParse, context + ": cannot parse number '" + std::string(s) + "'");
  }
  return value;
}

std::uint64_t parse_uint(std::string_view s, const std::string& context) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorCode::kParse, context + ": cannot parse integer '" + std::string(s) + "'");
  }
  return value;
}

std::ifstream open_or_fail(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  return in;
}

}  // namespace

MetricInstance load_points_csv(const std::string& path) {
  std::ifstream in = open_or_fail(path);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kParse, path + ": empty file");
  const auto header = split(line, ',');
  if (header.size() < 2 || header[0] != "id") {
    fail(ErrorCode::kParse, path + ": header must be id,x1,...,xd");
  }
  const std::size_t dim = header.size() - 1;
  std::vector<std::pair<std::uint64_t, std::vector<double>>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string ctx = path + ":" + std::to_string(line_no);
    const auto fields = split(line, ',');
    if (fields.size() != dim + 1) {
      fail(ErrorCode::kParse, ctx + ": expected " + std::to_string(dim + 1) + " fields");
    }
    std::vector<double> xs(dim);
    for (std::size_t k = 0; k < dim; ++k) xs[k] = parse_double(fields[k + 1], ctx);
    rows.emplace_back(parse_uint(fields[0], ctx), std::move(xs));
  }
  const std::size_t n = rows.size();
  std::vector<double> coords(n * dim);
  std::vector<bool> seen(n, false);
  for (auto& [id, xs] : rows) {
    if (id >= n || seen[id]) {
      fail(ErrorCode::kParse, path + ": ids must be a permutation of 0..n-1");
    }
    seen[id] = true;
    std::copy(xs.begin(), xs.end(), coords.begin() + static_cast<std::ptrdiff_t>(id * dim));
  }
  return make_euclidean(std::move(coords), dim);
}

MetricInstance load_matrix_csv(const std::string& path, double lambda) {
  std::ifstream in = open_or_fail(path);
  std::vector<double> full;
  std::size_t n = 0;
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const std::string ctx = path + ":" + std::to_string(rows + 1);
    const auto fields = split(line, ',');
    if (rows == 0) n = fields.size();
    if (fields.size() != n) {
      fail(ErrorCode::kParse, ctx + ": expected " + std::to_string(n) + " columns");
    }
    for (auto f : fields) full.push_back(parse_double(f, ctx));
    ++rows;
  }
  if (rows != n) {
    fail(ErrorCode::kParse, path + ": matrix is " + std::to_string(rows) + "x" +
                                std::to_string(n) + ", not square");
  }
  return make_matrix(n, full, lambda);
}

MetricInstance parse_instance_spec(std::string_view spec) {
  const std::string ctx = "instance spec '" + std::string(spec) + "'";
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) fail(ErrorCode::kParse, ctx + ": missing ':'");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);

  if (kind == "pow") {
    const std::size_t last = rest.rfind(':');
    if (last == std::string_view::npos) fail(ErrorCode::kParse, ctx + ": pow:<inner>:<p>");
    return power_wrap(parse_instance_spec(rest.substr(0, last)),
                      parse_double(rest.substr(last + 1), ctx));
  }
  if (kind == "euclidean") return load_points_csv(std::string(rest));
  if (kind == "matrix") {
    const std::size_t last = rest.rfind(':');
    if (last == std::string_view::npos) {
      fail(ErrorCode::kParse, ctx + ": matrix:<file>:<lambda>");
    }
    return load_matrix_csv(std::string(rest.substr(0, last)),
                           parse_double(rest.substr(last + 1), ctx));
  }

  const auto parts = split(rest, ':');
  auto arg = [&](std::size_t i) {
    if (i >= parts.size()) fail(ErrorCode::kParse, ctx + ": missing field");
    return parse_uint(parts[i], ctx);
  };
  auto expect_fields = [&](std::size_t k) {
    if (parts.size() != k) fail(ErrorCode::kParse, ctx + ": wrong number of fields");
  };
  if (kind == "g1") {
    expect_fields(1);
    return make_hardness_pair(arg(0), 0).first;
  }
  if (kind == "g2") {
    expect_fields(2);
    return make_hardness_pair(arg(0), arg(1)).second;
  }
  if (kind == "star") {
    expect_fields(1);
    return make_appendix_star(arg(0));
  }
  if (kind == "line") {
    expect_fields(1);
    return make_line(arg(0));
  }
  if (kind == "uniform") {
    expect_fields(3);
    return make_uniform_points(arg(0), arg(1), arg(2));
  }
  fail(ErrorCode::kParse, ctx + ": unknown instance kind '" + std::string(kind) + "'");
}

}  // namespace linsample
