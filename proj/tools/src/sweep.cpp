#include "spectra/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "trispec/bounds.hpp"
#include "trispec/dirac2d.hpp"
#include "trispec/errors.hpp"

namespace spectra {

using namespace trispec;

namespace {

struct Reference {
  bool ok = false;
  std::string error;
  double energy = 0.0;
  double energy_err = 0.0;
  double lambda1 = 0.0;
  double lambda1_err = 0.0;
};

void evaluate(SweepRecord& rec, const SweepConfig& cfg, const Reference& ref) {
  rec.m = cfg.m;
  rec.mesh_n_list = cfg.mesh_n_list;
  try {
    const double b = constraint_partner(rec.a, cfg.constraint);
    rec.b = b;
    if (!ref.ok) throw NumericError("isosceles reference failed: " + ref.error);
    const RightTriangle tri(rec.a, b);
    const MassParam m(cfg.m);
    const Lambda1Estimate est = lambda1_extrapolated(tri, m, cfg.mesh_n_list);
    rec.lambda1_sq_minus_m2 = est.energy.value;
    rec.err = est.energy.error;
    rec.fitted_order = est.energy.order;
    rec.lower_sq = lower_bound_sq(tri);
    rec.upper_sq = upper_bound_sq(tri);
    rec.improved_lower_sq = improved_lower_bound_sq(tri, m);
    rec.reference_iso = ref.energy;
    rec.reference_iso_err = ref.energy_err;
    rec.conjecture_margin = est.lambda1 - ref.lambda1;
    rec.margin_err = est.lambda1_error + ref.lambda1_err;

    const CorollaryConstraint cc = corollary_constraint_for(cfg.constraint.kind);
    const double k = cfg.constraint.k;
    rec.region_base = corollary_region(rec.a, k, cc, CorollaryVariant::Base).in_region;
    const RegionVerdict large = corollary_region(rec.a, k, cc, CorollaryVariant::LargeMass);
    rec.region_large_mass =
        large.in_region && large.mass_threshold && cfg.m >= *large.mass_threshold;
    rec.sufficient_condition = sufficient_condition_raw(rec.a, b, k);
    rec.ok = true;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
  }
}

}  // namespace

int worker_count() {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("SPECTRA_THREADS")) {
    std::size_t used = 0;
    int cap = 0;
    try {
      cap = std::stoi(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || env[used] != '\0' || cap < 1) {
      throw DomainError("SPECTRA_THREADS must be a positive integer");
    }
    n = std::min(n, cap);
  }
  return n;
}

std::vector<SweepRecord> sweep(const SweepConfig& cfg) {
  if (cfg.a_grid.empty()) throw DomainError("sweep needs a non-empty a grid");
  Reference ref;
  try {
    const double k = cfg.constraint.k;
    const Lambda1Estimate est =
        lambda1_extrapolated(RightTriangle(k, k), MassParam(cfg.m), cfg.mesh_n_list);
    ref.energy = est.energy.value;
    ref.energy_err = est.energy.error;
    ref.lambda1 = est.lambda1;
    ref.lambda1_err = est.lambda1_error;
    ref.ok = true;
  } catch (const DomainError&) {
    throw;
  } catch (const GeometryError&) {
    throw;
  } catch (const std::exception& e) {
    ref.error = e.what();
  }

  std::vector<SweepRecord> out(cfg.a_grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i].a = cfg.a_grid[i];
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(cfg.workers, 1)), 1, out.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < out.size(); i = next++) evaluate(out[i], cfg, ref);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return out;
}

}  // namespace spectra
