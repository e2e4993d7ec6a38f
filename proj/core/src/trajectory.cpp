#include "sysid/trajectory.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "sysid/errors.hpp"

namespace sysid {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

double parse_double(const std::string& cell, int row, const std::string& column) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ConfigError("trajectory csv: data row " + std::to_string(row) +
                      ", column " + column + ": cannot parse '" + cell + "'");
  }
  return v;
}

// Checks that `cells[offset..offset+n)` equals prefix_1..prefix_n.
bool match_group(const std::vector<std::string>& cells, size_t offset,
                 const std::string& prefix, int n) {
  if (offset + static_cast<size_t>(n) > cells.size()) return false;
  for (int i = 0; i < n; ++i) {
    if (cells[offset + i] != prefix + "_" + std::to_string(i + 1)) return false;
  }
  return true;
}

}  // namespace

void save_trajectory_csv(const Trajectory& traj, const std::string& path) {
  const int n = traj.n();
  const int steps = traj.steps();
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");

  out << "k";
  for (int i = 1; i <= n; ++i) out << ", r_" << i;
  if (traj.has_states()) {
    for (int i = 1; i <= n; ++i) out << ", x_" << i;
  }
  if (traj.has_noise()) {
    for (int i = 1; i <= n; ++i) out << ", f_" << i;
    for (int i = 1; i <= n; ++i) out << ", w_" << i;
  }
  out << "\n";

  for (int t = 1; t <= steps; ++t) {
    out << t;
    for (int i = 0; i < n; ++i) out << ", " << format_double(traj.observations(i, t - 1));
    if (traj.has_states()) {
      for (int i = 0; i < n; ++i) out << ", " << format_double(traj.states(i, t - 1));
    }
    if (traj.has_noise()) {
      for (int i = 0; i < n; ++i) {
        double f = t < steps ? traj.process_noise(i, t - 1) : 0.0;
        out << ", " << format_double(f);
      }
      for (int i = 0; i < n; ++i) {
        out << ", " << format_double(traj.observation_noise(i, t - 1));
      }
    }
    out << "\n";
  }
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

Trajectory load_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw ConfigError("'" + path + "' is empty");
  auto header = split_csv(line);
  if (header.empty() || header[0] != "k") {
    throw ConfigError("trajectory csv: first header column must be 'k'");
  }

  int n = 0;
  while (match_group(header, 1, "r", n + 1)) ++n;
  if (n == 0) throw ConfigError("trajectory csv: no r_1 column in header");

  size_t pos = 1 + static_cast<size_t>(n);
  bool with_states = match_group(header, pos, "x", n);
  if (with_states) pos += n;
  bool with_noise = match_group(header, pos, "f", n);
  if (with_noise) {
    pos += n;
    if (!match_group(header, pos, "w", n)) {
      throw ConfigError("trajectory csv: f columns present without matching w columns");
    }
    pos += n;
  }
  if (pos != header.size()) {
    throw ConfigError("trajectory csv: unexpected header column '" + header[pos] + "'");
  }

  std::vector<std::vector<double>> rows;
  int row_index = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row_index;
    auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw ConfigError("trajectory csv: data row " + std::to_string(row_index) +
                        " has " + std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(header.size()));
    }
    double k = parse_double(cells[0], row_index, "k");
    if (k != row_index) {
      throw ConfigError("trajectory csv: data row " + std::to_string(row_index) +
                        ": k must be " + std::to_string(row_index));
    }
    std::vector<double> values;
    values.reserve(cells.size() - 1);
    for (size_t c = 1; c < cells.size(); ++c) {
      values.push_back(parse_double(cells[c], row_index, header[c]));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ConfigError("'" + path + "' has no data rows");

  const int steps = static_cast<int>(rows.size());
  Trajectory traj;
  traj.observations.resize(n, steps);
  if (with_states) traj.states.resize(n, steps);
  if (with_noise) {
    traj.process_noise.resize(n, steps - 1);
    traj.observation_noise.resize(n, steps);
  }
  for (int t = 0; t < steps; ++t) {
    size_t c = 0;
    for (int i = 0; i < n; ++i) traj.observations(i, t) = rows[t][c++];
    if (with_states) {
      for (int i = 0; i < n; ++i) traj.states(i, t) = rows[t][c++];
    }
    if (with_noise) {
      for (int i = 0; i < n; ++i) {
        if (t < steps - 1) traj.process_noise(i, t) = rows[t][c];
        ++c;
      }
      for (int i = 0; i < n; ++i) traj.observation_noise(i, t) = rows[t][c++];
    }
  }
  return traj;
}

}  // namespace sysid
