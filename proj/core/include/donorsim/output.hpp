#pragma once

#include <string>

#include "donorsim/manifest.hpp"
#include "donorsim/results.hpp"

namespace donorsim {

struct OutputPaths {
  std::string csv;
  std::string sidecar;
};

// Columnar CSV (axis/time columns first, then observables, header row with
// unit-suffixed names, 17 significant digits) plus a JSON metadata sidecar
// holding the fully resolved manifest.
OutputPaths write_outputs(const TimeTrace& trace, const RunManifest& manifest,
                          const nlohmann::json& extra_metadata = {});
OutputPaths write_outputs(const SweepGrid& grid, const RunManifest& manifest,
                          const nlohmann::json& extra_metadata = {});

std::string format_double(double x);  // round-trip exact

}  // namespace donorsim
