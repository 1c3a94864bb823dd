// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spectra/sweep.hpp"
#include "trispec/bounds.hpp"
#include "trispec/dirac1d.hpp"
#include "trispec/dirac2d.hpp"
#include "trispec/form.hpp"
#include "trispec/shooting.hpp"

using namespace trispec;

namespace {

constexpr double pi = std::numbers::pi;
const std::vector<int> kLadder = {24, 48, 96};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  Outcome() { detail.precision(10); }

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

FiberProblem fiber(FiberFamily f, double a, double b, double m, double L = 1.0) {
  return FiberProblem::make(f, RightTriangle(a, b), L, MassParam(m));
}

double first_energy(FiberFamily f, double a, double b, double m) {
  return lowest_eigenvalue(fiber(f, a, b, m)).eigenvalue.energy;
}

void exact_h_root(Outcome& o) {
  const auto t0 = Clock::now();
  const double e1 = first_energy(FiberFamily::H, 1, 1, 0);
  const double expected = (3 * pi / 8) * (3 * pi / 8);
  const double dt = seconds_since(t0);
  o.detail << "E1 = " << e1 << ", (3pi/8)^2 = " << expected << ", |diff| = "
           << std::abs(e1 - expected) << ", " << dt << " s";
  o.require(std::abs(e1 - expected) <= 1e-10, "|E1 - (3pi/8)^2| <= 1e-10");
  o.require(dt < 1.0, "runtime < 1 s");
}

void secular_vs_shooting(Outcome& o) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    for (double m : {0.0, 1.0, 5.0}) {
      for (auto f : {FiberFamily::H, FiberFamily::G}) {
        const auto p = fiber(f, a, 1.0, m);
        const auto sec = eigenvalues_in_window(p, {-80, 80}, 5);
        const auto sho = shooting_eigenvalues(p, {-80, 80}, 5);
        if (sec.eigenvalues.size() != 5 || sho.size() != 5) {
          o.require(false, "five roots from both methods");
          continue;
        }
        for (int i = 0; i < 5; ++i) {
          const double v = sec.eigenvalues[i].value;
          worst = std::max(worst, std::abs(sho[i] - v) / std::abs(v));
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  o.detail << "max relative gap " << worst << " over 18 problems, " << dt << " s";
  o.require(worst <= 1e-8, "relative agreement 1e-8");
  o.require(dt < 10.0, "runtime < 10 s");
}

void threshold_point(Outcome& o) {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}}) {
    const double m0 = mass_threshold_m0(fiber(FiberFamily::G, a, b, 0));
    const double f1 = first_energy(FiberFamily::G, a, b, m0);
    o.detail << "(" << a << "," << b << "): m0 = " << m0 << ", F1 - pi^2/4 = " << f1 - pi * pi / 4
             << "; ";
    o.require(std::abs(f1 - pi * pi / 4) <= 1e-8, "F1(m0) = pi^2/4 to 1e-8");
  }
}

void monotonicity(Outcome& o) {
  double min_step_e = INFINITY;
  double min_step_f = INFINITY;
  double fmin = INFINITY;
  double fmax = -INFINITY;
  for (double a : {0.5, 1.0, 2.0}) {
    double pe = 0.0;
    double pf = 0.0;
    for (int k = 0; k <= 20; ++k) {
      const double m = 0.5 * k;
      const double e = first_energy(FiberFamily::H, a, 1, m);
      const double f = first_energy(FiberFamily::G, a, 1, m);
      if (k > 0) {
        min_step_e = std::min(min_step_e, e - pe);
        min_step_f = std::min(min_step_f, f - pf);
      }
      fmin = std::min(fmin, f);
      fmax = std::max(fmax, f);
      pe = e;
      pf = f;
    }
  }
  o.detail << "min step E1 " << min_step_e << ", min step F1 " << min_step_f << ", F1 in ["
           << fmin << ", " << fmax << "]";
  o.require(min_step_e >= -1e-10, "E1 nondecreasing");
  o.require(min_step_f >= -1e-10, "F1 nondecreasing");
  o.require(fmin > pi * pi / 16 && fmax < pi * pi, "F1 in (pi^2/16, pi^2)");
}

void g_large_mass(Outcome& o) {
  const double f = first_energy(FiberFamily::G, 1, 1, 100);
  const double rel = std::abs(f - pi * pi) / (pi * pi);
  o.detail << "F1(100) = " << f << ", relative gap " << rel;
  o.require(rel <= 0.05, "within 5% of pi^2");
}

void sandwich_2d(Outcome& o) {
  const auto t0 = Clock::now();
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{4.0, 1.0}}) {
    for (double m : {0.0, 1.0}) {
      const RightTriangle t(a, b);
      const auto est = lambda1_extrapolated(t, MassParam(m), kLadder);
      const double e = est.energy.value;
      const double err = est.energy.error;
      const double lo = lower_bound_sq(t);
      const double hi = upper_bound_sq(t);
      o.detail << "(" << a << "," << b << "," << m << "): " << lo << " <= " << e << " +- " << err
               << " <= " << hi << " p=" << est.energy.order << "; ";
      o.require(!est.energy.declined, "extrapolation accepted");
      o.require(lo - err <= e && e <= hi + err, "sandwich");
    }
  }
  const double dt = seconds_since(t0);
  o.detail << dt << " s";
  o.require(dt < 300.0, "runtime < 5 min");
}

void dirichlet_limit_2d(Outcome& o) {
  const auto est = lambda1_extrapolated(RightTriangle(1, 1), MassParam(50), kLadder);
  const double rel = std::abs(est.energy.value - 5 * pi * pi) / (5 * pi * pi);
  o.detail << "lambda1^2 - m^2 = " << est.energy.value << " +- " << est.energy.error
           << " (p=" << est.energy.order << "), 5pi^2 = " << 5 * pi * pi << ", relative gap "
           << rel;
  o.require(rel <= 0.05, "within 5% of 5pi^2");
}

void trial_quotient(Outcome& o) {
  double worst = 0.0;
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}}) {
    for (double m : {0.0, 1.0}) {
      const RightTriangle t(a, b);
      const double r = rayleigh_quotient(dirichlet_trial(t), t, MassParam(m)) - m * m;
      const double expected = 2.5 * pi * pi * (1 / (a * a) + 1 / (b * b));
      worst = std::max(worst, std::abs(r - expected) / expected);
    }
  }
  o.detail << "max relative deviation " << worst;
  o.require(worst <= 1e-6, "1e-6 relative");
}

void classifier(Outcome& o) {
  using C = CorollaryConstraint;
  using V = CorollaryVariant;
  const bool area9 = corollary_region(9, 1, C::Area, V::Base).in_region;
  const bool identity = 1.0 / 81.0 + 81.0 >= 80.0;
  const bool per35 = corollary_region(3.5, 1, C::Perimeter, V::Base).in_region;
  const bool lm15 = corollary_region(0.2, 1, C::Area, V::LargeMass).in_region &&
                    corollary_region(0.2, 1, C::Perimeter, V::LargeMass).in_region;
  bool any_at_one = false;
  for (auto c : {C::Area, C::Perimeter}) {
    for (auto v : {V::Base, V::LargeMass}) any_at_one |= corollary_region(1, 1, c, v).in_region;
  }
  o.detail << "area-base(9)=" << area9 << " perimeter-base(3.5)=" << per35
           << " large-mass(1/5)=" << lm15 << " any(1)=" << any_at_one;
  o.require(area9 && identity, "a=9 area base");
  o.require(per35, "a=3.5 perimeter base");
  o.require(lm15, "a=1/5 large mass");
  o.require(!any_at_one, "a=1 all false");
}

void conjecture_sweep(Outcome& o) {
  spectra::SweepConfig cfg;
  cfg.constraint = {ConstraintKind::Area, 1.0};
  cfg.a_grid = {1.25, 1.5, 2.0, 3.0};
  cfg.m = 0.0;
  cfg.mesh_n_list = kLadder;
  cfg.workers = spectra::worker_count();
  for (const auto& r : spectra::sweep(cfg)) {
    if (!r.ok) {
      o.require(false, "record failed: " + r.error);
      continue;
    }
    o.detail << "a=" << r.a << ": margin " << r.conjecture_margin << " +- " << r.margin_err << "; ";
    o.require(r.conjecture_margin > 0.0 && r.conjecture_margin > r.margin_err,
              "margin exceeds its error bar");
  }
  o.detail << "(numerical evidence, not a proof)";
}

double max_eigenvalue(const Eigen::MatrixXd& M) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

void operator_floor(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> leg(0.3, 3.0);
  std::uniform_real_distribution<double> mass(0.0, 20.0);
  std::uniform_int_distribution<int> res(3, 12);
  double worst = INFINITY;
  for (int i = 0; i < 10; ++i) {
    const RightTriangle t(leg(rng), leg(rng));
    const double m = mass(rng);
    const int n = res(rng);
    const auto form = assemble_form(build_mesh(t, n), t, MassParam(m));
    const Eigen::MatrixXd A(form.A);
    const Eigen::MatrixXd S = A - m * m * Eigen::MatrixXd(form.B);
    const double smin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S, Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .minCoeff();
    const double ratio = smin / max_eigenvalue(A);
    worst = std::min(worst, ratio);
    o.require(smin >= -1e-10 * max_eigenvalue(A), "min eig(A - m^2 B) >= -1e-10 ||A||");
  }
  o.detail << "min over 10 configurations of eig_min(A - m^2 B)/||A|| = " << worst;
}

double max_abs_diff(const SparseMatrix& X, const SparseMatrix& Y) {
  const SparseMatrix D = X - Y;
  double v = 0.0;
  for (int k = 0; k < D.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(D, k); it; ++it) v = std::max(v, std::abs(it.value()));
  }
  return v;
}

void polygon_consistency(Outcome& o) {
  double worst = 0.0;
  for (auto [a, b, m] : {std::tuple{1.0, 1.0, 0.0}, std::tuple{2.0, 1.0, 1.0},
                         std::tuple{4.0, 1.0, 3.0}}) {
    const RightTriangle t(a, b);
    for (int n : {4, 12}) {
      const auto tri = assemble_form(build_mesh(t, n), t, MassParam(m));
      const std::vector<Point> poly = {{0, 0}, {a, 0}, {0, b}};
      const auto pf = assemble_polygon_form(poly, n, MassParam(m));
      if (pf.A.rows() != tri.A.rows()) {
        o.require(false, "matching dimensions");
        continue;
      }
      worst = std::max({worst, max_abs_diff(pf.A, tri.A), max_abs_diff(pf.B, tri.B)});
    }
  }
  o.require(worst <= 1e-12, "entrywise 1e-12");
  const std::vector<Point> pentagon = {{0, 0}, {2, 0}, {3, 1}, {2.5, 2}, {0.5, 1.5}};
  const double m = 2.0;
  const auto pf = assemble_polygon_form(pentagon, 6, MassParam(m));
  const Eigen::MatrixXd A(pf.A);
  const double smin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                          A - m * m * Eigen::MatrixXd(pf.B), Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .minCoeff();
  o.detail << "max entry gap " << worst << "; pentagon eig_min(A - m^2 B) = " << smin;
  o.require(smin >= -1e-10 * max_eigenvalue(A), "pentagon PSD");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exact 1D H root", exact_h_root},
      {2, "secular vs shooting", secular_vs_shooting},
      {3, "G threshold point", threshold_point},
      {4, "fiber monotonicity", monotonicity},
      {5, "G large-mass limit", g_large_mass},
      {6, "2D bound sandwich", sandwich_2d},
      {7, "2D Dirichlet limit", dirichlet_limit_2d},
      {8, "trial-function quotient", trial_quotient},
      {9, "corollary classifier", classifier},
      {10, "conjecture evidence sweep", conjecture_sweep},
      {11, "discrete operator floor", operator_floor},
      {12, "polygon consistency", polygon_consistency},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %2d %s %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                o.detail.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
