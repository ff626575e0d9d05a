// Command-line front end: runs experiments from declarative JSON manifests
// and writes plot-ready CSV data with a JSON metadata sidecar.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "donorsim/experiments.hpp"
#include "donorsim/manifest.hpp"
#include "donorsim/output.hpp"
#include "donorsim/spin_system.hpp"

namespace {

using namespace donorsim;

struct CommonFlags {
  std::string manifest_path;
  std::string out_dir;
  int threads = 0;
  double sample_step_ns = 0.0;
};

RunManifest load(const CommonFlags& flags) {
  RunManifest m = parse_manifest_file(flags.manifest_path);
  if (!flags.out_dir.empty()) m.out_dir = flags.out_dir;
  if (flags.threads > 0) {
    m.threads = flags.threads;
    m.spec.threads = flags.threads;
  }
  if (flags.sample_step_ns > 0.0) {
    m.spec.transport_step_us = flags.sample_step_ns / 1000.0;
    m.spec.esr_step_us = flags.sample_step_ns / 1000.0;
  }
  return m;
}

int cmd_run(const CommonFlags& flags) {
  const RunManifest m = load(flags);
  OutputPaths paths;
  if (m.spec.id == "spin_funnel") {
    paths = write_outputs(run_spin_funnel(m.spec), m);
  } else if (m.spec.id == "psb_esr") {
    paths = write_outputs(run_psb_esr(m.spec), m);
  } else if (m.spec.id == "readout") {
    const ReadoutResult result = run_readout_protocol(m.spec);
    paths = write_outputs(result.trace, m,
                          {{"readout_current_pA", result.readout_current_pa}});
  } else if (m.spec.id == "stark_sweep") {
    paths = write_outputs(run_stark_sweep(m.spec), m);
  } else {
    paths = write_outputs(run_cluster(m.spec), m);
  }
  std::cout << paths.csv << "\n" << paths.sidecar << "\n";
  return 0;
}

// Eigenenergies of the static Hamiltonian as a function of detuning.
int cmd_spectrum(const CommonFlags& flags) {
  RunManifest m = load(flags);
  GridAxis axis = m.spec.axis1;
  if (axis.name != "delta_MHz")
    axis = {"delta_MHz", "MHz", -2000.0, 8000.0, 401, false};

  const BasisDescriptor basis =
      build_basis(m.spec.base.donors_left(), m.spec.base.donors_right());
  std::filesystem::create_directories(m.out_dir);
  const std::string csv_path =
      (std::filesystem::path(m.out_dir) / "spectrum.csv").string();
  std::ofstream out(csv_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + csv_path);

  out << "delta_MHz";
  for (int j = 0; j < basis.dim(); ++j) out << ",e_" << j << "_MHz";
  out << "\n";
  SystemConfig cfg = m.spec.base;
  for (double delta : axis.values()) {
    cfg.delta_MHz = delta;
    const Eigensystem eig = eigenspectrum(build_hamiltonian(cfg, basis));
    out << format_double(delta);
    for (int j = 0; j < basis.dim(); ++j) out << "," << format_double(eig.energies(j));
    out << "\n";
  }
  std::cout << csv_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-donor transport simulator"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto add_common = [&](CLI::App* sub, bool needs_manifest) {
    if (needs_manifest)
      sub->add_option("manifest", flags.manifest_path, "JSON manifest file")->required();
    sub->add_option("--threads", flags.threads, "worker threads for sweeps");
    sub->add_option("--out", flags.out_dir, "output directory (overrides manifest)");
    sub->add_option("--sample-step-ns", flags.sample_step_ns,
                    "sample step for both stages, in ns");
  };

  CLI::App* run = app.add_subcommand("run", "execute the experiment in a manifest");
  add_common(run, true);
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "eigenenergies versus detuning at the manifest's parameters");
  add_common(spectrum, true);
  CLI::App* validate = app.add_subcommand("validate", "parse and validate a manifest");
  add_common(validate, true);
  app.add_subcommand("list-experiments", "list the available experiment ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::string stage = "startup";
  try {
    if (app.got_subcommand("list-experiments")) {
      for (const std::string& id : donorsim::kExperimentIds) std::cout << id << "\n";
      return 0;
    }
    if (app.got_subcommand("validate")) {
      stage = "manifest validation";
      donorsim::RunManifest m = load(flags);
      std::cout << donorsim::serialize_manifest(m);
      return 0;
    }
    if (app.got_subcommand("spectrum")) {
      stage = "manifest validation";
      donorsim::RunManifest m = load(flags);
      stage = "spectrum computation";
      (void)m;
      return cmd_spectrum(flags);
    }
    stage = "manifest validation";
    donorsim::RunManifest m = load(flags);
    stage = "experiment " + m.spec.id;
    (void)m;
    return cmd_run(flags);
  } catch (const std::exception& e) {
    std::cerr << "donorsim: " << stage << ": " << e.what() << "\n";
    return 1;
  }
}
