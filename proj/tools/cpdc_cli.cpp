// Copyright 2026 The cpdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cpdc: parameter sweeps, oracle cross-checks and single-point
// decompositions of the coupled-downconverter device.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cpdc/cpdc.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kBreach = 2, kLeakage = 3 };

struct DeviceFlags {
  std::optional<double> gamma1, gamma2, kappa, r1, r2;

  void add_continuous(CLI::App* app) {
    app->add_option("--gamma1", gamma1, "coupling of the first downconverter");
    app->add_option("--gamma2", gamma2, "coupling of the second downconverter");
    app->add_option("--kappa", kappa, "idler-idler coupling");
  }
  void add_cascaded(CLI::App* app) {
    app->add_option("--r1", r1, "squeezing of the first crystal");
    app->add_option("--r2", r2, "squeezing of the second crystal");
  }
  cpdc::ContinuousDevice continuous(cpdc::ContinuousDevice base) const {
    if (gamma1) base.gamma1 = *gamma1;
    if (gamma2) base.gamma2 = *gamma2;
    if (kappa) base.kappa = *kappa;
    return base;
  }
  cpdc::ZouDevice cascaded(cpdc::ZouDevice base) const {
    if (r1) base.r1 = *r1;
    if (r2) base.r2 = *r2;
    return base;
  }
};

struct SweepFlags {
  std::string preset;
  std::optional<double> from, to;
  std::optional<int> steps;
  std::string out;
  std::vector<std::string> columns;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  void add(CLI::App* app, const char* presets) {
    app->add_option("--preset", preset, "named parameter set")
        ->check(CLI::IsMember(CLI::detail::split(presets, '|')));
    app->add_option("--from", from, "first grid value");
    app->add_option("--to", to, "last grid value");
    app->add_option("--steps", steps, "number of grid points (>= 2)");
    app->add_option("--out", out, "output CSV path (stdout when omitted)");
    app->add_option("--columns", columns, "subset of columns, in order")->delimiter(',');
    app->add_option("--threads", threads, "worker threads; output does not depend on it")
        ->check(CLI::PositiveNumber);
  }

  void apply(cpdc::SweepConfig& c) const {
    if (from) c.start = *from;
    if (to) c.stop = *to;
    if (steps) c.steps = *steps;
    c.columns = columns;
    c.threads = threads;
  }
};

int write_table(const cpdc::CsvTable& t, const std::string& path) {
  if (path.empty()) {
    cpdc::write_csv(t, std::cout);
    return std::cout ? kOk : kUsage;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open " << path << " for writing\n";
    return kUsage;
  }
  cpdc::write_csv(t, f);
  return f ? kOk : kUsage;
}

int run_sweep_length(const DeviceFlags& dev, const SweepFlags& sw) {
  cpdc::SweepConfig c = sw.preset.empty() ? cpdc::preset("fig2") : cpdc::preset(sw.preset);
  if (sw.preset.empty() && !(dev.gamma1 && dev.gamma2 && dev.kappa)) {
    std::cerr << "sweep-length: give --preset or all of --gamma1 --gamma2 --kappa\n";
    return kUsage;
  }
  c.device = dev.continuous(std::get<cpdc::ContinuousDevice>(c.device));
  sw.apply(c);
  return write_table(cpdc::run_sweep(c), sw.out);
}

int run_sweep_psi(const DeviceFlags& dev, const SweepFlags& sw) {
  cpdc::SweepConfig c = cpdc::preset("fig7");
  if (sw.preset.empty() && !(dev.r1 && dev.r2)) {
    std::cerr << "sweep-psi: give --preset fig7 or both --r1 and --r2\n";
    return kUsage;
  }
  c.device = dev.cascaded(std::get<cpdc::ZouDevice>(c.device));
  sw.apply(c);
  return write_table(cpdc::run_sweep(c), sw.out);
}

struct OracleFlags {
  std::string preset;
  std::vector<double> at{0.5, 1.0, 1.5, 2.0};
  int nmax = 4;
  std::optional<double> tolerance;
};

int run_oracle(const DeviceFlags& dev, const OracleFlags& of) {
  if (of.preset.empty() && !(dev.gamma1 && dev.gamma2 && dev.kappa)) {
    std::cerr << "oracle-check: give --preset or all of --gamma1 --gamma2 --kappa\n";
    return kUsage;
  }
  const cpdc::ContinuousDevice d =
      dev.continuous(std::get<cpdc::ContinuousDevice>(cpdc::preset("fig2").device));
  cpdc::Tolerances tol;
  if (of.tolerance) tol.oracle_agreement = *of.tolerance;
  if (cpdc::classify_regime(d, tol) != cpdc::Regime::BelowThreshold) {
    std::cerr << "oracle-check: device is " << cpdc::to_string(cpdc::classify_regime(d, tol))
              << "; the Fock oracle needs |kappa| > |gamma1| + |gamma2|, since the photon "
                 "number grows without bound otherwise\n";
    return kUsage;
  }
  cpdc::OracleReport rep;
  try {
    rep = cpdc::oracle_check(d, of.at, of.nmax, tol);
  } catch (const cpdc::Error& e) {
    if (e.kind() == cpdc::ErrorKind::LeakageTooLarge) {
      std::cerr << "oracle-check: " << e.what() << "; raise --nmax\n";
      return kLeakage;
    }
    throw;
  }
  std::cout << std::setprecision(6);
  std::cout << "n_max " << of.nmax << "\n";
  for (const auto& p : rep.points) {
    std::cout << "L " << p.length << "  intensity_dev " << p.intensity_deviation
              << "  gamma_dev ";
    if (p.gamma_deviation) {
      std::cout << *p.gamma_deviation;
    } else {
      std::cout << "undefined";
    }
    std::cout << "  leakage " << p.leakage << "\n";
  }
  std::cout << "max intensity deviation " << rep.max_intensity_deviation << "\n"
            << "max gamma deviation " << rep.max_gamma_deviation << "\n"
            << "tolerance " << rep.tolerance << "\n"
            << (rep.within_tolerance() ? "ok" : "BREACH") << "\n";
  return rep.within_tolerance() ? kOk : kBreach;
}

struct DecomposeFlags {
  std::optional<double> length, psi;
};

void print_moments(const cpdc::MomentSet& s) {
  std::cout << "moments\n";
  for (const auto& [label, v] : s.labeled())
    std::cout << "  " << std::setw(5) << std::left << label << std::right << " " << v.real()
              << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag()) << "i\n";
}

int run_decompose(const DeviceFlags& dev, const DecomposeFlags& df) {
  if (df.length.has_value() == df.psi.has_value()) {
    std::cerr << "decompose: give exactly one of --length (with --gamma1 --gamma2 --kappa) or "
                 "--psi (with --r1 --r2)\n";
    return kUsage;
  }
  std::optional<cpdc::TransferMatrix> m;
  if (df.length) {
    if (!(dev.gamma1 && dev.gamma2 && dev.kappa)) {
      std::cerr << "decompose: --length needs --gamma1 --gamma2 --kappa\n";
      return kUsage;
    }
    m = cpdc::transfer_matrix(dev.continuous({0, 0, 0, *df.length}));
  } else {
    if (!(dev.r1 && dev.r2)) {
      std::cerr << "decompose: --psi needs --r1 --r2\n";
      return kUsage;
    }
    m = cpdc::zou_transfer_matrix(dev.cascaded({0, 0, *df.psi}));
  }

  std::cout << std::setprecision(12);
  std::cout << "transfer matrix (rows s1, s2, i1+, i2+)\n";
  for (std::size_t r = 0; r < 4; ++r) {
    std::cout << " ";
    for (std::size_t c = 0; c < 4; ++c) std::cout << "  " << (*m)(r, c);
    std::cout << "\n";
  }
  std::cout << "symplectic defect " << cpdc::symplectic_defect(*m) << "\n";
  print_moments(cpdc::vacuum_moments(*m));
  try {
    const auto g = cpdc::signal_coherence(*m);
    std::cout << "gamma " << g.gamma << "  (imag residue " << g.imag_residue
              << (g.fragile ? ", fragile" : "") << ")\n";
  } catch (const cpdc::Error& e) {
    std::cout << "gamma undefined: " << e.what() << "\n";
  }

  int code = kOk;
  try {
    const auto z = cpdc::extract_zou(*m);
    const auto geo = cpdc::geometry(z.scheme);
    std::cout << "zou g1 " << z.scheme.g1 << " g2 " << z.scheme.g2 << " g4 " << z.scheme.g4
              << " g5 " << z.scheme.g5 << "\n"
              << "zou residual " << z.residual << "\n"
              << "u.v " << geo.dot << "  uxv " << geo.cross << "  gamma^2 (pair state) "
              << geo.gamma_squared << (geo.degenerate ? "  degenerate" : "") << "\n";
    if (z.residual > cpdc::default_tolerances().residual_max) code = kBreach;
  } catch (const cpdc::Error& e) {
    std::cout << "zou extraction failed: " << cpdc::to_string(e.kind()) << ": " << e.what()
              << "\n";
    code = kBreach;
  }
  try {
    const auto o = cpdc::extract_ou(*m);
    std::cout << "ou g1 " << o.scheme.g1 << " g2 " << o.scheme.g2 << " phi_s " << o.scheme.phi_s
              << " phi_i " << o.scheme.phi_i << "\n"
              << "ou residual " << o.residual << "  branch " << cpdc::to_string(o.branch)
              << "\n";
  } catch (const cpdc::Error& e) {
    std::cout << "ou extraction failed: " << cpdc::to_string(e.kind()) << ": " << e.what()
              << "\n";
    code = kBreach;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled parametric downconverters: sweeps, decompositions, oracle checks"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  bool describe = false;
  app.add_flag("--describe-columns", describe, "document every CSV column and exit");

  DeviceFlags length_dev, psi_dev, oracle_dev, decompose_dev;
  SweepFlags length_sweep, psi_sweep;
  OracleFlags oracle;
  DecomposeFlags decompose;

  auto* sl = app.add_subcommand("sweep-length", "sweep the interaction length L");
  length_dev.add_continuous(sl);
  length_sweep.add(sl, "fig2|fig4|fig6");

  auto* sp = app.add_subcommand("sweep-psi", "sweep the alignment angle psi of the cascaded device");
  psi_dev.add_cascaded(sp);
  psi_sweep.add(sp, "fig7");

  auto* oc = app.add_subcommand("oracle-check", "compare with the truncated Fock-space oracle");
  oracle_dev.add_continuous(oc);
  oc->add_option("--preset", oracle.preset, "named parameter set")
      ->check(CLI::IsMember({"fig2", "fig4", "fig6"}));
  oc->add_option("--at", oracle.at, "interaction lengths to check")->delimiter(',');
  oc->add_option("--nmax", oracle.nmax, "per-mode photon cutoff")->check(CLI::PositiveNumber);
  oc->add_option("--oracle-tol", oracle.tolerance, "largest accepted deviation");

  auto* dc = app.add_subcommand("decompose", "single-point transfer matrix and scheme extraction");
  decompose_dev.add_continuous(dc);
  decompose_dev.add_cascaded(dc);
  dc->add_option("--length", decompose.length, "interaction length of the continuous device");
  dc->add_option("--psi", decompose.psi, "alignment angle of the cascaded device");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (describe) {
      std::cout << cpdc::describe_columns();
      return kOk;
    }
    if (sl->parsed()) return run_sweep_length(length_dev, length_sweep);
    if (sp->parsed()) return run_sweep_psi(psi_dev, psi_sweep);
    if (oc->parsed()) return run_oracle(oracle_dev, oracle);
    if (dc->parsed()) return run_decompose(decompose_dev, decompose);
    std::cerr << app.help();
    return kUsage;
  } catch (const cpdc::Error& e) {
    std::cerr << "error (" << cpdc::to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == cpdc::ErrorKind::LeakageTooLarge ? kLeakage : kUsage;
  }
}
