// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

// Strict JSON reading helpers shared by every file format in the project.
// Errors carry a JSON-pointer-like path such as "/camera/movement_type".

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "synthvid/error.hpp"

namespace synthvid::json_io {

using nlohmann::json;

json parse(std::string_view text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

std::string child(const std::string& path, std::string_view key);
std::string child(const std::string& path, std::size_t index);

/// Throws if `j` is not an object or has a key outside `allowed`.
void expect_keys(const json& j, const std::string& path,
                 std::initializer_list<std::string_view> allowed);
const json& require(const json& j, const std::string& path, std::string_view key);

double as_double(const json& j, const std::string& path);
std::int64_t as_int(const json& j, const std::string& path);
std::uint64_t as_u64(const json& j, const std::string& path);
std::string as_string(const json& j, const std::string& path);
bool as_bool(const json& j, const std::string& path);
const json& as_array(const json& j, const std::string& path);

template <int N>
Eigen::Matrix<double, N, 1> as_vec(const json& j, const std::string& path) {
  const json& a = as_array(j, path);
  if (a.size() != static_cast<std::size_t>(N)) {
    throw ParseError(path, "expected an array of " + std::to_string(N) + " numbers");
  }
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v[i] = as_double(a[i], child(path, static_cast<std::size_t>(i)));
  return v;
}

template <typename Derived>
json to_json_array(const Eigen::MatrixBase<Derived>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v.derived().data()[i]);
  return a;
}

/// Maps a string onto an enum by its position in `names`; the error lists
/// every legal value.
template <typename Enum, std::size_t K>
Enum as_enum(const json& j, const std::string& path,
             const std::array<std::string_view, K>& names) {
  const std::string s = as_string(j, path);
  for (std::size_t i = 0; i < K; ++i) {
    if (names[i] == s) return static_cast<Enum>(i);
  }
  std::string legal;
  for (std::size_t i = 0; i < K; ++i) {
    if (i) legal += ", ";
    legal += names[i];
  }
  throw ParseError(path, "illegal value \"" + s + "\"; expected one of: " + legal);
}

}  // namespace synthvid::json_io
