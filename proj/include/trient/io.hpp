#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "trient/states.hpp"

namespace trient {

// Full double precision, 17 significant digits. CSV and JSON output share
// this formatter so the two mirror each other exactly.
inline std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

// Comma-delimited text: header row, LF line endings, no trailing delimiter.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& header) { out_ << header << '\n'; }

  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) out_ << ',';
      out_ << format_double(v);
      first = false;
    }
    out_ << '\n';
  }

  void raw_row(const std::string& line) { out_ << line << '\n'; }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

// State file: a JSON array of 8 [re, im] pairs, basis-ordered. Norm must be
// within 1e-6 of 1; the loaded state is renormalized exactly.
inline PureState3 load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("state file is not valid JSON: ") +
                                e.what());
  }
  if (!doc.is_array() || doc.size() != 8)
    throw std::invalid_argument("state file must be an array of 8 amplitude pairs");
  Vector v(8);
  for (int i = 0; i < 8; ++i) {
    const auto& entry = doc[i];
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number())
      throw std::invalid_argument("amplitude entries must be [re, im] pairs");
    v(i) = Complex(entry[0].get<double>(), entry[1].get<double>());
  }
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > 1e-6)
    throw std::invalid_argument("state file norm " + format_double(norm) +
                                " violates normalization");
  return PureState3::normalized(std::move(v));
}

inline void save_state_file(const std::filesystem::path& path,
                            const PureState3& state) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write state file: " + path.string());
  out << "[";
  for (int i = 0; i < 8; ++i) {
    const Complex a = state.amplitude(i);
    out << (i ? ", " : "") << "[" << format_double(a.real()) << ", "
        << format_double(a.imag()) << "]";
  }
  out << "]\n";
}

// Minimal JSON assembly that reuses format_double, so numbers in JSON output
// are byte-identical to their CSV counterparts.
namespace jsonout {

inline std::string number(double v) { return format_double(v); }

inline std::string string(const std::string& s) { return "\"" + s + "\""; }

inline std::string boolean(bool b) { return b ? "true" : "false"; }

inline std::string object(
    const std::vector<std::pair<std::string, std::string>>& fields) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ",";
    out << "\"" << fields[i].first << "\":" << fields[i].second;
  }
  out << "}";
  return out.str();
}

inline std::string array(const std::vector<std::string>& items) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << ",";
    out << items[i];
  }
  out << "]";
  return out.str();
}

}  // namespace jsonout

}  // namespace trient
