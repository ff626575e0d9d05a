#include "donorsim/manifest.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace donorsim {

using nlohmann::json;

const std::vector<std::string> kExperimentIds = {
    "spin_funnel", "psb_esr", "readout", "stark_sweep", "cluster"};

namespace {

std::string axis_unit(const std::string& name) {
  const auto pos = name.rfind('_');
  if (pos == std::string::npos || pos + 1 == name.size())
    throw std::invalid_argument("axis name \"" + name + "\" carries no unit suffix");
  return name.substr(pos + 1);
}

// Figure-caption defaults for each protocol.
RunManifest defaults_for(const std::string& id) {
  RunManifest m;
  ExperimentSpec& s = m.spec;
  s.id = id;
  s.base.b0_T = 1.0;
  s.base.b_ac_esr_T = 1e-3;
  s.base.tc_MHz = kBulkHyperfineMHz;

  if (id == "spin_funnel") {
    s.base.direction = Direction::Reverse;
    s.base.tc_MHz = 2000.0;
    s.base.b_ac_esr_T = 0.0;
    s.base.b0_T = 0.25;
    s.axis1 = {"delta_MHz", "MHz", 0.0, 8000.0, 50, false};
    s.axis2 = {"b0_mT", "mT", 10.0, 500.0, 50, false};
  } else if (id == "readout") {
    s.theta_rad = std::numbers::pi;
  } else if (id == "stark_sweep") {
    // Half the usual drive amplitude: narrow enough lines that the optimum
    // field sits inside the grid, broad enough to stay robust to the
    // residual Eq. 3 detuning.
    s.base.b_ac_esr_T = 5e-4;
    s.axis1 = {"b0_mT", "mT", 1.0, 1000.0, 20, true};
    s.axis2 = {"da_MHz", "MHz", 0.0, 20.0, 10, false};
  } else if (id == "cluster") {
    s.base.b0_T = 0.01;
    s.base.a_right_MHz = {kBulkHyperfineMHz, kBulkHyperfineMHz};
    s.transport_us = 500.0;
    s.esr_us = 100.0;
  } else if (id != "psb_esr") {
    throw std::invalid_argument("unknown experiment id \"" + id + "\"");
  }
  return m;
}

std::vector<double> number_or_array(const json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) {
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number())
        throw std::invalid_argument(key + ": expected numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }
  throw std::invalid_argument(key + ": expected a number or an array of numbers");
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw std::invalid_argument(key + ": expected a number");
  return v.get<double>();
}

GridAxis parse_axis(const json& v, const std::string& key) {
  if (!v.is_object()) throw std::invalid_argument(key + ": expected an object");
  GridAxis axis;
  for (const auto& [k, val] : v.items()) {
    if (k == "name") {
      if (!val.is_string()) throw std::invalid_argument(key + ".name: expected a string");
      axis.name = val.get<std::string>();
    } else if (k == "min") axis.lo = number(val, key + ".min");
    else if (k == "max") axis.hi = number(val, key + ".max");
    else if (k == "points") {
      if (!val.is_number_integer()) throw std::invalid_argument(key + ".points: expected an integer");
      axis.points = val.get<int>();
    } else if (k == "log") {
      if (!val.is_boolean()) throw std::invalid_argument(key + ".log: expected a boolean");
      axis.log_scale = val.get<bool>();
    } else {
      throw std::invalid_argument("unknown key \"" + key + "." + k + "\"");
    }
  }
  axis.unit = axis_unit(axis.name);
  return axis;
}

json axis_json(const GridAxis& axis) {
  return {{"name", axis.name}, {"min", axis.lo}, {"max", axis.hi},
          {"points", axis.points}, {"log", axis.log_scale}};
}

}  // namespace

RunManifest parse_manifest(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("manifest must be a JSON object");
  if (!doc.contains("experiment") || !doc["experiment"].is_string())
    throw std::invalid_argument("manifest needs an \"experiment\" string field");

  RunManifest m = defaults_for(doc["experiment"].get<std::string>());
  ExperimentSpec& s = m.spec;

  for (const auto& [k, v] : doc.items()) {
    if (k == "experiment") continue;
    else if (k == "b0_mT") s.base.b0_T = number(v, k) / 1000.0;
    else if (k == "b_ac_esr_mT") s.base.b_ac_esr_T = number(v, k) / 1000.0;
    else if (k == "omega_MHz") s.base.omega_drive_MHz = number(v, k);
    else if (k == "tc_MHz") s.base.tc_MHz = number(v, k);
    else if (k == "delta_MHz") s.base.delta_MHz = number(v, k);
    else if (k == "a_left_MHz") s.base.a_left_MHz = number_or_array(v, k);
    else if (k == "a_right_MHz") s.base.a_right_MHz = number_or_array(v, k);
    else if (k == "gamma_l_MHz") s.base.gamma_l_MHz = number(v, k);
    else if (k == "gamma_r_MHz") s.base.gamma_r_MHz = number(v, k);
    else if (k == "direction") {
      if (!v.is_string()) throw std::invalid_argument("direction: expected a string");
      s.base.direction = direction_from_string(v.get<std::string>());
    } else if (k == "transport_us") s.transport_us = number(v, k);
    else if (k == "esr_us") s.esr_us = number(v, k);
    else if (k == "transport_step_ns") s.transport_step_us = number(v, k) / 1000.0;
    else if (k == "esr_step_ns") s.esr_step_us = number(v, k) / 1000.0;
    else if (k == "theta_rad") s.theta_rad = number(v, k);
    else if (k == "axis1") s.axis1 = parse_axis(v, k);
    else if (k == "axis2") s.axis2 = parse_axis(v, k);
    else if (k == "out_dir") {
      if (!v.is_string()) throw std::invalid_argument("out_dir: expected a string");
      m.out_dir = v.get<std::string>();
    } else if (k == "threads") {
      if (!v.is_number_integer()) throw std::invalid_argument("threads: expected an integer");
      m.threads = v.get<int>();
    } else if (k == "seed") {
      if (!v.is_number_unsigned()) throw std::invalid_argument("seed: expected an unsigned integer");
      m.seed = v.get<unsigned>();
    } else {
      throw std::invalid_argument("unknown key \"" + k + "\"");
    }
  }

  s.threads = m.threads;
  s.validate();
  if (!s.axis1.name.empty()) s.axis1.validate();
  if (!s.axis2.name.empty()) s.axis2.validate();
  return m;
}

RunManifest parse_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

nlohmann::json RunManifest::resolved() const {
  const ExperimentSpec& s = spec;
  json doc = {
      {"experiment", s.id},
      {"direction", to_string(s.base.direction)},
      {"b0_mT", s.base.b0_T * 1000.0},
      {"b_ac_esr_mT", s.base.b_ac_esr_T * 1000.0},
      {"omega_MHz", s.base.omega_drive_MHz},
      {"tc_MHz", s.base.tc_MHz},
      {"delta_MHz", s.base.delta_MHz},
      {"a_left_MHz", s.base.a_left_MHz},
      {"a_right_MHz", s.base.a_right_MHz},
      {"gamma_l_MHz", s.base.gamma_l_MHz},
      {"gamma_r_MHz", s.base.gamma_r_MHz},
      {"transport_us", s.transport_us},
      {"esr_us", s.esr_us},
      {"transport_step_ns", s.transport_step_us * 1000.0},
      {"esr_step_ns", s.esr_step_us * 1000.0},
      {"theta_rad", s.theta_rad},
      {"out_dir", out_dir},
      {"threads", threads},
      {"seed", seed},
  };
  if (!s.axis1.name.empty()) doc["axis1"] = axis_json(s.axis1);
  if (!s.axis2.name.empty()) doc["axis2"] = axis_json(s.axis2);
  return doc;
}

std::string serialize_manifest(const RunManifest& manifest) {
  return manifest.resolved().dump(2) + "\n";
}

}  // namespace donorsim
