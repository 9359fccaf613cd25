// Copyright 2026 The totalcoh developers
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

#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "totalcoh/asymptotic.hpp"
#include "totalcoh/coherence.hpp"
#include "totalcoh/linalg.hpp"

namespace totalcoh {

/// Malformed input file (I/O, JSON, or schema); distinct from a semantic
/// invariant violation, which surfaces as std::invalid_argument from the
/// domain types.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

/// Write-to-temp plus atomic rename; no partial files on error.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw ParseError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ParseError("rename failed for " + path.string());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline nlohmann::json matrix_part_to_json(const ComplexMatrix& m, bool real_part) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(real_part ? m(i, j).real() : m(i, j).imag());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& re, const nlohmann::json& im,
                                      int dim) {
  if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != dim ||
      static_cast<int>(im.size()) != dim) {
    throw ParseError("re/im must be dim x dim arrays");
  }
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& rrow = re[static_cast<std::size_t>(i)];
    const auto& irow = im[static_cast<std::size_t>(i)];
    if (!rrow.is_array() || !irow.is_array() || static_cast<int>(rrow.size()) != dim ||
        static_cast<int>(irow.size()) != dim) {
      throw ParseError("re/im must be dim x dim arrays");
    }
    for (int j = 0; j < dim; ++j) {
      const auto& rv = rrow[static_cast<std::size_t>(j)];
      const auto& iv = irow[static_cast<std::size_t>(j)];
      if (!rv.is_number() || !iv.is_number()) throw ParseError("matrix entries must be numbers");
      m(i, j) = std::complex<double>(rv.get<double>(), iv.get<double>());
    }
  }
  return m;
}

inline nlohmann::json parse_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, /*cb=*/nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("invalid JSON");
  return j;
}

}  // namespace detail

struct LoadedState {
  DensityMatrix state;
  std::optional<std::vector<int>> dims;  // declared tensor factorization, if any
};

/// State file, version "1": {version, dim, re, im[, dims]} with decimal
/// entries that round-trip exactly.
inline LoadedState load_state_file(const std::filesystem::path& path) {
  nlohmann::json j = detail::parse_json(read_file(path));
  if (!j.is_object() || !j.contains("version") || !j["version"].is_string() ||
      j["version"].get<std::string>() != "1") {
    throw ParseError(path.string() + ": missing or unsupported version");
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() < 1) {
    throw ParseError(path.string() + ": dim must be a positive integer");
  }
  int dim = j["dim"].get<int>();
  if (!j.contains("re") || !j.contains("im")) {
    throw ParseError(path.string() + ": re and im are required");
  }
  ComplexMatrix m = detail::matrix_from_json(j["re"], j["im"], dim);
  std::optional<std::vector<int>> dims;
  if (j.contains("dims")) {
    if (!j["dims"].is_array() || j["dims"].size() < 2 || j["dims"].size() > 3) {
      throw ParseError(path.string() + ": dims must list 2 or 3 factors");
    }
    std::vector<int> factors;
    long product = 1;
    for (const auto& v : j["dims"]) {
      if (!v.is_number_integer() || v.get<int>() < 1) {
        throw ParseError(path.string() + ": dims entries must be positive integers");
      }
      factors.push_back(v.get<int>());
      product *= v.get<int>();
    }
    if (product != dim) throw ParseError(path.string() + ": dims do not factor dim");
    dims = std::move(factors);
  }
  return LoadedState{DensityMatrix(std::move(m)), std::move(dims)};
}

inline void save_state_file(const std::filesystem::path& path, const DensityMatrix& rho,
                            const std::optional<std::vector<int>>& dims = std::nullopt) {
  nlohmann::json j;
  j["version"] = "1";
  j["dim"] = rho.dim();
  j["re"] = detail::matrix_part_to_json(rho.matrix(), true);
  j["im"] = detail::matrix_part_to_json(rho.matrix(), false);
  if (dims) j["dims"] = *dims;
  write_file_atomic(path, j.dump(2) + "\n");
}

/// Channel file: {version, dim, terms: [{weight, re, im}]}.
inline MixedUnitaryChannel load_channel_file(const std::filesystem::path& path) {
  nlohmann::json j = detail::parse_json(read_file(path));
  if (!j.is_object() || !j.contains("version") || !j["version"].is_string() ||
      j["version"].get<std::string>() != "1") {
    throw ParseError(path.string() + ": missing or unsupported version");
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() < 1) {
    throw ParseError(path.string() + ": dim must be a positive integer");
  }
  int dim = j["dim"].get<int>();
  if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty()) {
    throw ParseError(path.string() + ": terms must be a nonempty array");
  }
  std::vector<MixedUnitaryChannel::Term> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("weight") || !t["weight"].is_number() ||
        !t.contains("re") || !t.contains("im")) {
      throw ParseError(path.string() + ": each term needs weight, re, im");
    }
    terms.push_back({t["weight"].get<double>(), detail::matrix_from_json(t["re"], t["im"], dim)});
  }
  return MixedUnitaryChannel(std::move(terms));
}

inline void save_channel_file(const std::filesystem::path& path,
                              const MixedUnitaryChannel& ch) {
  nlohmann::json j;
  j["version"] = "1";
  j["dim"] = ch.dim();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : ch.terms()) {
    nlohmann::json term;
    term["weight"] = t.weight;
    term["re"] = detail::matrix_part_to_json(t.unitary, true);
    term["im"] = detail::matrix_part_to_json(t.unitary, false);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  write_file_atomic(path, j.dump(2) + "\n");
}

/// CSV with the exact header "n,m,rate,epsilon,mode"; decimal points, no
/// locale formatting.
inline std::string rate_csv(const RateTable& table) {
  std::string out = "n,m,rate,epsilon,mode\n";
  for (const auto& r : table.rows()) {
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += format_double(r.rate);
    out += ',';
    out += format_double(r.epsilon);
    out += ',';
    out += to_string(r.mode);
    out += '\n';
  }
  return out;
}

}  // namespace totalcoh
