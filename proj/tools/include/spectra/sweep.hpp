#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trispec/geometry.hpp"

namespace spectra {

struct SweepRecord {
  double a = 0.0;
  std::optional<double> b;
  double m = 0.0;
  bool ok = false;
  std::string error;  ///< set when !ok

  double lambda1_sq_minus_m2 = 0.0;
  double err = 0.0;
  double lower_sq = 0.0;
  double upper_sq = 0.0;
  std::optional<double> improved_lower_sq;
  double reference_iso = 0.0;  ///< lambda1(k,k)^2 - m^2
  double reference_iso_err = 0.0;
  double conjecture_margin = 0.0;  ///< lambda1(a,b) - lambda1(k,k)
  double margin_err = 0.0;
  bool region_base = false;
  bool region_large_mass = false;
  /// Lower bound alone already exceeds the isosceles Dirichlet value.
  bool sufficient_condition = false;
  std::vector<int> mesh_n_list;
  double fitted_order = 0.0;
};

struct SweepConfig {
  trispec::ConstraintSpec constraint{trispec::ConstraintKind::Area, 1.0};
  std::vector<double> a_grid;
  double m = 0.0;
  std::vector<int> mesh_n_list{24, 48, 96};
  int workers = 1;
};

/// One record per grid point, in grid order. Per-point failures are recorded
/// in the record; a failing isosceles reference fails every record.
std::vector<SweepRecord> sweep(const SweepConfig& config);

/// Worker count: hardware concurrency capped by SPECTRA_THREADS.
int worker_count();

}  // namespace spectra
