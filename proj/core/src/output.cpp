#include "donorsim/output.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace donorsim {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// RFC 4180: quote fields containing commas, quotes or newlines.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

OutputPaths make_paths(const RunManifest& manifest) {
  namespace fs = std::filesystem;
  fs::create_directories(manifest.out_dir);
  const fs::path base = fs::path(manifest.out_dir) / manifest.spec.id;
  return {base.string() + ".csv", base.string() + ".json"};
}

void write_sidecar(const std::string& path, const RunManifest& manifest,
                   const nlohmann::json& extra_metadata) {
  nlohmann::json doc;
  doc["config"] = manifest.resolved();
  doc["format_version"] = 1;
  const auto now = std::chrono::system_clock::now();
  doc["written_unix_s"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  if (!extra_metadata.is_null()) doc["results"] = extra_metadata;
  auto out = open_for_write(path);
  out << doc.dump(2) << "\n";
}

void write_header(std::ofstream& out, const std::vector<std::string>& leading,
                  const std::vector<std::string>& names,
                  const std::vector<std::string>& units) {
  bool first = true;
  for (const std::string& c : leading) {
    out << (first ? "" : ",") << csv_field(c);
    first = false;
  }
  for (size_t k = 0; k < names.size(); ++k) {
    const std::string suffix = "_" + units[k];
    const bool has_suffix = names[k].size() >= suffix.size() &&
                            names[k].compare(names[k].size() - suffix.size(),
                                             suffix.size(), suffix) == 0;
    const std::string label =
        units[k].empty() || units[k] == "1" || has_suffix ? names[k]
                                                          : names[k] + suffix;
    out << "," << csv_field(label);
  }
  out << "\n";
}

}  // namespace

OutputPaths write_outputs(const TimeTrace& trace, const RunManifest& manifest,
                          const nlohmann::json& extra_metadata) {
  const OutputPaths paths = make_paths(manifest);
  auto out = open_for_write(paths.csv);
  write_header(out, {"t_us"}, trace.names, trace.units);
  for (int i = 0; i < trace.samples(); ++i) {
    out << format_double(trace.times_us[i]);
    for (Eigen::Index k = 0; k < trace.values.cols(); ++k)
      out << "," << format_double(trace.values(i, k));
    out << "\n";
  }
  write_sidecar(paths.sidecar, manifest, extra_metadata);
  return paths;
}

OutputPaths write_outputs(const SweepGrid& grid, const RunManifest& manifest,
                          const nlohmann::json& extra_metadata) {
  const OutputPaths paths = make_paths(manifest);
  auto out = open_for_write(paths.csv);
  write_header(out, {grid.axis1_name, grid.axis2_name}, grid.names, grid.units);
  for (size_t i1 = 0; i1 < grid.axis1.size(); ++i1)
    for (size_t i2 = 0; i2 < grid.axis2.size(); ++i2) {
      out << format_double(grid.axis1[i1]) << "," << format_double(grid.axis2[i2]);
      const Eigen::Index row = grid.row(int(i1), int(i2));
      for (Eigen::Index k = 0; k < grid.values.cols(); ++k)
        out << "," << format_double(grid.values(row, k));
      out << "\n";
    }
  write_sidecar(paths.sidecar, manifest, extra_metadata);
  return paths;
}

}  // namespace donorsim
