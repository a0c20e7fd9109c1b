#include "capra/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace capra::io {

namespace {

bool has_extension(const std::string& path, const std::string& ext) {
  if (path.size() < ext.size()) return false;
  std::string tail = path.substr(path.size() - ext.size());
  std::transform(tail.begin(), tail.end(), tail.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return tail == ext;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Vec read_vector_file(const std::string& path) {
  const std::string text = slurp(path);
  Vec x;
  if (has_extension(path, ".json")) {
    json j;
    try {
      j = json::parse(text);
    } catch (const std::exception& e) {
      throw std::runtime_error("bad JSON in " + path + ": " + e.what());
    }
    if (!j.is_array()) throw std::runtime_error(path + ": expected a JSON array");
    for (const auto& v : j) {
      if (!v.is_number()) throw std::runtime_error(path + ": non-numeric entry");
      x.push_back(v.get<double>());
    }
  } else {
    std::istringstream is(text);
    double v;
    while (is >> v) x.push_back(v);
    if (!is.eof()) throw std::runtime_error(path + ": non-numeric token");
  }
  try {
    validate_vector(x);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return x;
}

void write_vector_file(const std::string& path, const Vec& x) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  if (has_extension(path, ".json")) {
    json j = json::array();
    for (double v : x) j.push_back(v);
    out << j.dump() << "\n";
  } else {
    for (std::size_t i = 0; i < x.size(); ++i)
      out << x[i] << (i + 1 < x.size() ? " " : "\n");
  }
}

json xreal_to_json(const XReal& v) {
  if (v.is_pos_inf()) return json("+inf");
  if (v.is_neg_inf()) return json("-inf");
  return json(v.value());
}

XReal xreal_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return XReal::pos_inf();
    if (s == "-inf") return XReal::neg_inf();
    throw std::runtime_error("bad extended-real string: " + s);
  }
  if (j.is_number()) return XReal(j.get<double>());
  throw std::runtime_error("bad extended-real encoding");
}

json sample_set_to_json(const std::vector<Vec>& pts) {
  json j = json::array();
  for (const Vec& p : pts) {
    json row = json::array();
    for (double v : p) row.push_back(v);
    j.push_back(row);
  }
  return j;
}

std::vector<Vec> sample_set_from_json(const json& j) {
  if (!j.is_array()) throw std::runtime_error("sample set: expected an array");
  std::vector<Vec> pts;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::runtime_error("sample set: expected arrays of numbers");
    Vec p;
    for (const auto& v : row) p.push_back(v.get<double>());
    validate_vector(p);
    pts.push_back(std::move(p));
  }
  return pts;
}

json conjugate_report_to_json(const ConjugateReport& r) {
  json j;
  j["tag"] = r.tag;
  json input = json::array();
  for (double v : r.input) input.push_back(v);
  j["input"] = input;
  if (r.k >= 0) j["k"] = r.k;
  j["closed_form"] = r.closed_form;
  j["search_value"] = r.search_value;
  j["gap"] = r.gap;
  j["evaluations"] = r.evaluations;
  j["ill_conditioned"] = r.ill_conditioned;
  return j;
}

json read_config_file(const std::string& path) {
  const std::string text = slurp(path);
  if (has_extension(path, ".json")) {
    try {
      return json::parse(text);
    } catch (const std::exception& e) {
      throw std::runtime_error("bad JSON config " + path + ": " + e.what());
    }
  }
  // Flat TOML subset: key = value, '#' comments, [section] prefixes.
  json out = json::object();
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    if (!section.empty()) key = section + "." + key;
    if (val.front() == '"' && val.back() == '"' && val.size() >= 2) {
      out[key] = val.substr(1, val.size() - 2);
    } else if (val == "true" || val == "false") {
      out[key] = (val == "true");
    } else {
      try {
        std::size_t used = 0;
        if (val.find('.') == std::string::npos &&
            val.find('e') == std::string::npos &&
            val.find('E') == std::string::npos) {
          const long long n = std::stoll(val, &used);
          if (used != val.size()) throw std::invalid_argument(val);
          out[key] = n;
        } else {
          const double d = std::stod(val, &used);
          if (used != val.size()) throw std::invalid_argument(val);
          out[key] = d;
        }
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": bad value '" + val + "'");
      }
    }
  }
  return out;
}

}  // namespace capra::io
