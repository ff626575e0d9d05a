#pragma once

#include <string>

#include <json.hpp>

#include "donorsim/experiments.hpp"

namespace donorsim {

// Declarative run description.  Field names carry units (b0_mT, tc_MHz, ...);
// unknown keys are rejected.
struct RunManifest {
  ExperimentSpec spec;
  std::string out_dir = ".";
  int threads = 1;
  unsigned seed = 0;  // reserved; current dynamics are deterministic

  // Fully resolved manifest (defaults filled in), round-trips through
  // parse_manifest.
  nlohmann::json resolved() const;
};

extern const std::vector<std::string> kExperimentIds;

RunManifest parse_manifest(const std::string& text);
RunManifest parse_manifest_file(const std::string& path);
std::string serialize_manifest(const RunManifest& manifest);

}  // namespace donorsim
