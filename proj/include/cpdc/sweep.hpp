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

#pragma once

// Parameter sweeps over the interaction length or the idler mixing angle,
// emitted as CSV, plus the Fock-oracle cross-check. This is the engine behind
// the command-line tool.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "cpdc/config.hpp"
#include "cpdc/decompose.hpp"
#include "cpdc/device.hpp"
#include "cpdc/error.hpp"
#include "cpdc/fock.hpp"
#include "cpdc/moments.hpp"
#include "cpdc/whichway.hpp"

namespace cpdc {

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

struct ColumnSpec {
  std::string_view name;
  std::string_view description;
};

inline constexpr ColumnSpec kLengthColumns[] = {
    {"L", "interaction length"},
    {"gamma", "signed mutual coherence of the signal beams; empty when undefined"},
    {"gamma_defined", "1 if gamma is defined (both signal beams populated), else 0"},
    {"n_s1", "mean photon number in signal 1"},
    {"n_s2", "mean photon number in signal 2"},
    {"n_total_signal", "n_s1 + n_s2"},
    {"zou_g1", "four-downconverter scheme: s1-i1 squeezing"},
    {"zou_g2", "four-downconverter scheme: s2-i2 squeezing"},
    {"zou_g4", "four-downconverter scheme: s1-i2 squeezing"},
    {"zou_g5", "four-downconverter scheme: s2-i1 squeezing"},
    {"uv_angle", "oriented angle from u=(g1,g4) to v=(g5,-g2) in (-pi,pi]; empty if u or v is 0"},
    {"ou_g1", "two-downconverter interferometer: first squeezing"},
    {"ou_g2", "two-downconverter interferometer: second squeezing"},
    {"ou_phis", "interferometer signal beamsplitter angle in (-pi/2,pi/2]"},
    {"ou_phii", "interferometer idler beamsplitter angle in (-pi/2,pi/2]"},
    {"zou_residual", "largest back-propagated moment left by the four-downconverter scheme"},
    {"ou_residual", "largest back-propagated moment left by the interferometer scheme"},
    {"status", "ok, or ';'-separated failures for this row"},
};

inline constexpr ColumnSpec kPsiColumns[] = {
    {"psi", "idler beamsplitter mixing angle of the cascaded device"},
    {"gamma", "signed mutual coherence of the signal beams; empty when undefined"},
    {"gamma_defined", "1 if gamma is defined, else 0"},
    {"ou_g1", "two-downconverter interferometer: first squeezing"},
    {"ou_g2", "two-downconverter interferometer: second squeezing"},
    {"ou_phis", "interferometer signal beamsplitter angle in (-pi/2,pi/2]"},
    {"ou_phii", "interferometer idler beamsplitter angle in (-pi/2,pi/2]"},
    {"ou_residual", "largest back-propagated moment left by the interferometer scheme"},
    {"status", "ok, or ';'-separated failures for this row"},
};

enum class SweepVariable { Length, Psi };

struct SweepConfig {
  std::variant<ContinuousDevice, ZouDevice> device;
  SweepVariable variable = SweepVariable::Length;
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;
  std::vector<std::string> columns;  // empty: all
  Tolerances tol{};
  unsigned threads = 1;

  void validate() const {
    if (!(start < stop)) {
      throw Error(ErrorKind::InvalidConfig, "sweep needs start < stop");
    }
    if (steps < 2) throw Error(ErrorKind::InvalidConfig, "sweep needs at least 2 steps");
    if (variable == SweepVariable::Length) {
      if (!std::holds_alternative<ContinuousDevice>(device))
        throw Error(ErrorKind::InvalidConfig, "length sweep needs a continuous device");
      if (start < 0.0) throw Error(ErrorKind::InvalidConfig, "negative interaction length");
      std::get<ContinuousDevice>(device).validate();
    } else {
      if (!std::holds_alternative<ZouDevice>(device))
        throw Error(ErrorKind::InvalidConfig, "psi sweep needs a cascaded (Zou) device");
      ZouDevice lo = std::get<ZouDevice>(device), hi = lo;
      lo.psi = start;
      hi.psi = stop;
      lo.validate();
      hi.validate();
    }
  }

  std::vector<double> grid() const {
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) g[k] = start + (stop - start) * k / (steps - 1);
    g.back() = stop;
    return g;
  }

  std::span<const ColumnSpec> all_columns() const {
    if (variable == SweepVariable::Length) return kLengthColumns;
    return kPsiColumns;
  }
};

/// Named parameter sets. fig2, fig4 and fig6 share the
/// device (kappa = 3, Gamma1 = 0.1, Gamma2 = 0.3) and differ only in which
/// columns one plots; fig7 is the cascaded device with r1 = r2 = 0.1.
inline SweepConfig preset(std::string_view name) {
  SweepConfig c;
  if (name == "fig2" || name == "fig4" || name == "fig6") {
    c.device = ContinuousDevice{0.1, 0.3, 3.0, 0.0};
    c.variable = SweepVariable::Length;
    c.start = 0.01;
    c.stop = 20.0;
    c.steps = 2000;
  } else if (name == "fig7") {
    c.device = ZouDevice{0.1, 0.1, 0.0};
    c.variable = SweepVariable::Psi;
    c.start = 0.0;
    c.stop = std::numbers::pi / 2;
    c.steps = 100;
  } else {
    throw Error(ErrorKind::InvalidConfig, "unknown preset '" + std::string(name) + "'");
  }
  return c;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

namespace detail {

inline void add_status(std::string& status, std::string_view what) {
  if (!status.empty()) status += ';';
  status += what;
}

struct CoherenceCells {
  std::string gamma;
  std::string flag = "0";
};

inline CoherenceCells coherence_cells(const TransferMatrix& m, const Tolerances& tol,
                                      std::string& status) {
  CoherenceCells c;
  try {
    c.gamma = format_double(signal_coherence(m, tol).gamma);
    c.flag = "1";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UndefinedCoherence) throw;
    add_status(status, "undefined_gamma");
  }
  return c;
}

inline std::optional<ExtractionReport<OuScheme>> ou_cells(const TransferMatrix& m,
                                                          const Tolerances& tol,
                                                          std::string& status,
                                                          std::vector<std::string>& row) {
  try {
    auto ou = extract_ou(m, tol);
    row.push_back(format_double(ou.scheme.g1));
    row.push_back(format_double(ou.scheme.g2));
    row.push_back(format_double(ou.scheme.phi_s));
    row.push_back(format_double(ou.scheme.phi_i));
    return ou;
  } catch (const Error& e) {
    add_status(status, "ou:" + std::string(to_string(e.kind())));
    row.insert(row.end(), 4, "");
    return std::nullopt;
  }
}

inline std::vector<std::string> length_row(const ContinuousDevice& base, double length,
                                           const Tolerances& tol) {
  const TransferMatrix m = transfer_matrix(base.with_length(length), tol);
  std::string status;
  std::vector<std::string> row;
  row.reserve(std::size(kLengthColumns));
  row.push_back(format_double(length));
  const auto coh = coherence_cells(m, tol, status);
  row.push_back(coh.gamma);
  row.push_back(coh.flag);
  const Intensities n = intensities(m);
  row.push_back(format_double(n.s1));
  row.push_back(format_double(n.s2));
  row.push_back(format_double(n.total_signal()));

  std::string zou_residual;
  try {
    const auto zou = extract_zou(m, tol);
    for (double g : zou.scheme.params()) row.push_back(format_double(g));
    const auto geo = geometry(zou.scheme);
    if (geo.degenerate) {
      add_status(status, "degenerate_geometry");
      row.emplace_back();
    } else {
      row.push_back(format_double(geo.angle));
    }
    zou_residual = format_double(zou.residual);
  } catch (const Error& e) {
    add_status(status, "zou:" + std::string(to_string(e.kind())));
    row.insert(row.end(), 5, "");
  }

  const auto ou = ou_cells(m, tol, status, row);
  row.push_back(zou_residual);
  row.push_back(ou ? format_double(ou->residual) : std::string());
  row.push_back(status.empty() ? "ok" : status);
  return row;
}

inline std::vector<std::string> psi_row(const ZouDevice& base, double psi,
                                        const Tolerances& tol) {
  ZouDevice dev = base;
  dev.psi = std::clamp(psi, 0.0, std::numbers::pi / 2);
  const TransferMatrix m = zou_transfer_matrix(dev);
  std::string status;
  std::vector<std::string> row;
  row.push_back(format_double(psi));
  const auto coh = coherence_cells(m, tol, status);
  row.push_back(coh.gamma);
  row.push_back(coh.flag);
  const auto ou = ou_cells(m, tol, status, row);
  row.push_back(ou ? format_double(ou->residual) : std::string());
  row.push_back(status.empty() ? "ok" : status);
  return row;
}

}  // namespace detail

/// Evaluates every grid point (optionally on several threads) and returns
/// the rows in grid order. Per-row failures land in the status column.
inline CsvTable run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto all = cfg.all_columns();
  std::vector<std::size_t> picked;
  if (cfg.columns.empty()) {
    for (std::size_t k = 0; k < all.size(); ++k) picked.push_back(k);
  } else {
    for (const auto& name : cfg.columns) {
      auto it = std::find_if(all.begin(), all.end(),
                             [&](const ColumnSpec& c) { return c.name == name; });
      if (it == all.end()) throw Error(ErrorKind::InvalidConfig, "unknown column '" + name + "'");
      picked.push_back(static_cast<std::size_t>(it - all.begin()));
    }
  }

  const std::vector<double> grid = cfg.grid();
  std::vector<std::vector<std::string>> full(grid.size());
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < grid.size(); k += stride) {
      full[k] = cfg.variable == SweepVariable::Length
                    ? detail::length_row(std::get<ContinuousDevice>(cfg.device), grid[k], cfg.tol)
                    : detail::psi_row(std::get<ZouDevice>(cfg.device), grid[k], cfg.tol);
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(cfg.threads, 1, grid.size());
  if (n_threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work, t, n_threads);
  }

  CsvTable table;
  for (std::size_t k : picked) table.header.emplace_back(all[k].name);
  table.rows.reserve(full.size());
  for (auto& r : full) {
    std::vector<std::string> out;
    out.reserve(picked.size());
    for (std::size_t k : picked) out.push_back(std::move(r[k]));
    table.rows.push_back(std::move(out));
  }
  return table;
}

inline void write_csv(const CsvTable& t, std::ostream& os) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) os << ',';
      os << cells[k];
    }
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

inline std::string to_csv(const CsvTable& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

inline std::string describe_columns() {
  std::ostringstream os;
  os << "sweep-length columns:\n";
  for (const auto& c : kLengthColumns) os << "  " << c.name << "  " << c.description << '\n';
  os << "sweep-psi columns:\n";
  for (const auto& c : kPsiColumns) os << "  " << c.name << "  " << c.description << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Oracle cross-check.

struct OraclePoint {
  double length = 0.0;
  double intensity_deviation = 0.0;  // max over the four modes
  std::optional<double> gamma_deviation;  // empty when gamma is undefined
  double leakage = 0.0;
  double norm = 1.0;
};

struct OracleReport {
  std::vector<OraclePoint> points;
  double max_intensity_deviation = 0.0;
  double max_gamma_deviation = 0.0;
  double tolerance = 0.0;

  bool within_tolerance() const {
    return max_intensity_deviation <= tolerance && max_gamma_deviation <= tolerance;
  }
};

/// Compares intensities and gamma from the transfer matrix with the Fock
/// oracle at the given lengths. Only below-threshold devices are accepted;
/// LeakageTooLarge from the oracle propagates.
inline OracleReport oracle_check(const ContinuousDevice& dev, std::span<const double> lengths,
                                 int n_max, const Tolerances& tol = default_tolerances()) {
  if (classify_regime(dev, tol) != Regime::BelowThreshold) {
    throw Error(ErrorKind::InvalidConfig,
                "oracle check needs a below-threshold device (|kappa| > |Gamma1| + |Gamma2|); "
                "truncation cannot follow exponential gain");
  }
  const FockBasis basis(n_max);
  OracleReport rep;
  rep.tolerance = tol.oracle_agreement;
  for (double l : lengths) {
    const ContinuousDevice d = dev.with_length(l);
    const TransferMatrix m = transfer_matrix(d, tol);
    const FockState st = evolve(d, basis, tol);
    const FockObservables fo = fock_observables(st, tol);
    const Intensities gi = intensities(m);
    OraclePoint p;
    p.length = l;
    p.leakage = st.leakage;
    p.norm = st.norm;
    p.intensity_deviation = std::max({std::abs(gi.s1 - fo.n.s1), std::abs(gi.s2 - fo.n.s2),
                                      std::abs(gi.i1 - fo.n.i1), std::abs(gi.i2 - fo.n.i2)});
    if (fo.coherence) {
      try {
        p.gamma_deviation = std::abs(signal_coherence(m, tol).gamma - fo.coherence->gamma);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UndefinedCoherence) throw;
      }
    }
    rep.max_intensity_deviation = std::max(rep.max_intensity_deviation, p.intensity_deviation);
    if (p.gamma_deviation)
      rep.max_gamma_deviation = std::max(rep.max_gamma_deviation, *p.gamma_deviation);
    rep.points.push_back(p);
  }
  return rep;
}

}  // namespace cpdc
