#pragma once

// State files and number formatting shared by the library and the CLI.
//
// A state file is a JSON document
//   {"dim": d, "kind": "pure",    "amplitudes": [[re, im], ...]}        (d pairs)
//   {"dim": d, "kind": "density", "entries": [[[re, im], ...], ...]}    (d x d pairs)
// with every float written using 17 significant digits.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qgini/errors.hpp"
#include "qgini/qsystem.hpp"

namespace qgini::io {

using json = nlohmann::ordered_json;

/// %.17g, which round-trips every finite double exactly.
inline std::string format_double(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::InvalidDistribution,
                "refusing to serialize non-finite number");
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_indent(std::ostream& os, int indent, int depth) {
  if (indent < 0) return;
  os << '\n' << std::string(static_cast<std::size_t>(indent * depth), ' ');
}

inline bool is_scalar_array(const json& j) {
  for (const auto& e : j) {
    if (e.is_array() || e.is_object()) return false;
  }
  return true;
}

inline void write_value(std::ostream& os, const json& j, int indent,
                        int depth) {
  switch (j.type()) {
    case json::value_t::number_float:
      os << format_double(j.get<double>());
      break;
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        break;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        write_indent(os, indent, depth + 1);
        os << json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        write_value(os, it.value(), indent, depth + 1);
      }
      write_indent(os, indent, depth);
      os << '}';
      break;
    }
    case json::value_t::array: {
      // Arrays of scalars (numbers, [re, im] pairs) stay on one line.
      const bool compact = indent < 0 || is_scalar_array(j);
      os << '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << (compact ? ", " : ",");
        first = false;
        if (!compact) write_indent(os, indent, depth + 1);
        write_value(os, e, compact ? -1 : indent, depth + 1);
      }
      if (!compact && !j.empty()) write_indent(os, indent, depth);
      os << ']';
      break;
    }
    default:
      os << j.dump();
  }
}

inline json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex read_pair(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw Error(ErrorKind::BadStateFile,
                where + " must be a [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

/// Serializes a JSON document with floats at 17 significant digits.
/// indent < 0 writes a single line.
inline void write_json(std::ostream& os, const json& doc, int indent = 2) {
  detail::write_value(os, doc, indent, 0);
}

inline std::string to_json_string(const json& doc, int indent = 2) {
  std::ostringstream os;
  write_json(os, doc, indent);
  return os.str();
}

inline json state_to_json(const StateVector& psi) {
  json amps = json::array();
  for (int r = 0; r < psi.dim(); ++r) amps.push_back(detail::complex_pair(psi[r]));
  return json{{"dim", psi.dim()}, {"kind", "pure"}, {"amplitudes", amps}};
}

inline json state_to_json(const DensityMatrix& rho) {
  json rows = json::array();
  for (int r = 0; r < rho.dim(); ++r) {
    json row = json::array();
    for (int s = 0; s < rho.dim(); ++s) row.push_back(detail::complex_pair(rho(r, s)));
    rows.push_back(std::move(row));
  }
  return json{{"dim", rho.dim()}, {"kind", "density"}, {"entries", rows}};
}

struct LoadedState {
  std::string kind;
  DensityMatrix density;
  std::optional<StateVector> pure;
};

inline LoadedState state_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorKind::BadStateFile, "state document must be an object");
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw Error(ErrorKind::BadStateFile, "missing integer field 'dim'");
  }
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    throw Error(ErrorKind::BadStateFile, "missing string field 'kind'");
  }
  const long long dim = doc["dim"].get<long long>();
  if (dim < 1 || dim > 100000) {
    throw Error(ErrorKind::BadStateFile,
                "'dim' out of range: " + std::to_string(dim));
  }
  const int d = static_cast<int>(dim);
  const std::string kind = doc["kind"].get<std::string>();

  if (kind == "pure") {
    const json amps = doc.contains("amplitudes") ? doc.at("amplitudes") : json();
    if (!amps.is_array() || amps.size() != static_cast<std::size_t>(d)) {
      throw Error(ErrorKind::BadStateFile,
                  "'amplitudes' must hold exactly dim pairs");
    }
    Vector v(d);
    for (int r = 0; r < d; ++r) {
      v(r) = detail::read_pair(amps[r], "amplitudes[" + std::to_string(r) + "]");
    }
    StateVector psi(std::move(v));
    return LoadedState{kind, pure_density(psi), psi};
  }
  if (kind == "density") {
    const json rows = doc.contains("entries") ? doc.at("entries") : json();
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(d)) {
      throw Error(ErrorKind::BadStateFile, "'entries' must hold dim rows");
    }
    Matrix m(d, d);
    for (int r = 0; r < d; ++r) {
      if (!rows[r].is_array() || rows[r].size() != static_cast<std::size_t>(d)) {
        throw Error(ErrorKind::BadStateFile,
                    "entries[" + std::to_string(r) + "] must hold dim pairs");
      }
      for (int s = 0; s < d; ++s) {
        m(r, s) = detail::read_pair(
            rows[r][s],
            "entries[" + std::to_string(r) + "][" + std::to_string(s) + "]");
      }
    }
    return LoadedState{kind, DensityMatrix(m), std::nullopt};
  }
  throw Error(ErrorKind::BadStateFile,
              "'kind' must be \"pure\" or \"density\", got \"" + kind + "\"");
}

inline LoadedState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::BadStateFile, "cannot open " + path);
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::BadStateFile, path + ": " + e.what());
  }
  return state_from_json(doc);
}

inline void write_state_file(const std::string& path, const json& state) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::BadStateFile, "cannot write " + path);
  }
  write_json(out, state);
  out << '\n';
}

}  // namespace qgini::io
