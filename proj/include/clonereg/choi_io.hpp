// Copyright 2026 The clonereg Authors
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

// Choi matrix file format:
//
//   {"d_in": int, "d_out": int, "matrix": [[re, im], ...], "meta": {...}}
//
// "matrix" is the row-major list of all (d_in d_out)^2 entries. Floating
// point values are written with 17 significant digits. Cloner files carry
// their coefficients as keys of meta:
// {"alpha", "beta", "gamma": [re, im], "eps1", "eps2", "d", ...}.

#ifndef CLONEREG_CHOI_IO_HPP
#define CLONEREG_CHOI_IO_HPP

#include "clonereg/channels.hpp"
#include "clonereg/cloning.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace clonereg {

class ChoiFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChoiFile {
  ChoiMatrix choi;
  nlohmann::json meta = nlohmann::json::object();
};

namespace detail {

inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_json_value(std::ostream& out, const nlohmann::json& v) {
  switch (v.type()) {
    case nlohmann::json::value_t::number_float:
      out << format_double(v.get<double>());
      break;
    case nlohmann::json::value_t::array: {
      out << '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << ", ";
        write_json_value(out, item);
        first = false;
      }
      out << ']';
      break;
    }
    case nlohmann::json::value_t::object: {
      out << '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ", ";
        out << nlohmann::json(it.key()).dump() << ": ";
        write_json_value(out, it.value());
        first = false;
      }
      out << '}';
      break;
    }
    default:
      out << v.dump();
  }
}

}  // namespace detail

inline nlohmann::json coefficients_to_json(const CoefficientVector& c) {
  return {{"alpha", c.alpha},
          {"beta", c.beta},
          {"gamma", {c.gamma.real(), c.gamma.imag()}},
          {"eps1", c.eps1},
          {"eps2", c.eps2},
          {"d", c.d}};
}

inline CoefficientVector coefficients_from_json(const nlohmann::json& j) {
  try {
    CoefficientVector c;
    c.alpha = j.at("alpha").get<double>();
    c.beta = j.at("beta").get<double>();
    const auto& g = j.at("gamma");
    if (!g.is_array() || g.size() != 2) throw ChoiFormatError("coefficients: gamma must be [re, im]");
    c.gamma = Complex(g[0].get<double>(), g[1].get<double>());
    c.eps1 = j.at("eps1").get<double>();
    c.eps2 = j.at("eps2").get<double>();
    c.d = j.at("d").get<int>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ChoiFormatError(std::string("coefficients: ") + e.what());
  }
}

inline void write_choi_json(std::ostream& out, const ChoiMatrix& c, const nlohmann::json& meta = nlohmann::json::object()) {
  out << "{\"d_in\": " << c.d_in << ", \"d_out\": " << c.d_out << ", \"matrix\": [";
  const Eigen::Index dim = c.matrix.rows();
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index col = 0; col < dim; ++col) {
      if (r != 0 || col != 0) out << ", ";
      const Complex z = c.matrix(r, col);
      out << '[' << detail::format_double(z.real()) << ", " << detail::format_double(z.imag()) << ']';
    }
  }
  out << "], \"meta\": ";
  detail::write_json_value(out, meta);
  out << "}\n";
}

inline std::string choi_to_json_string(const ChoiMatrix& c, const nlohmann::json& meta = nlohmann::json::object()) {
  std::ostringstream out;
  write_choi_json(out, c, meta);
  return out.str();
}

inline ChoiFile parse_choi_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ChoiFormatError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ChoiFormatError("top level must be an object");
    const int d_in = j.at("d_in").get<int>();
    const int d_out = j.at("d_out").get<int>();
    if (d_in < 1 || d_out < 1) throw ChoiFormatError("d_in and d_out must be positive");
    const long long dim = static_cast<long long>(d_in) * d_out;
    if (dim > kMaxTotalDim) throw ChoiFormatError("matrix dimension exceeds " + std::to_string(kMaxTotalDim));
    const auto& entries = j.at("matrix");
    if (!entries.is_array() || static_cast<long long>(entries.size()) != dim * dim) {
      throw ChoiFormatError("matrix must hold (d_in*d_out)^2 = " + std::to_string(dim * dim) + " entries");
    }
    SquareMatrix m(dim, dim);
    for (long long k = 0; k < dim * dim; ++k) {
      const auto& e = entries[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ChoiFormatError("matrix entry " + std::to_string(k) + " must be [re, im]");
      }
      m(k / dim, k % dim) = Complex(e[0].get<double>(), e[1].get<double>());
    }
    ChoiFile file{ChoiMatrix(d_in, d_out, std::move(m))};
    if (j.contains("meta")) file.meta = j["meta"];
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw ChoiFormatError(std::string("malformed Choi file: ") + e.what());
  }
}

/// Coefficients recorded in the meta field, if any.
inline std::optional<CoefficientVector> meta_coefficients(const ChoiFile& file) {
  if (!file.meta.is_object() || !file.meta.contains("alpha")) return std::nullopt;
  return coefficients_from_json(file.meta);
}

}  // namespace clonereg

#endif  // CLONEREG_CHOI_IO_HPP
