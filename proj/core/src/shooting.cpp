#include "trispec/shooting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "trispec/errors.hpp"

namespace trispec {

namespace {

using State = std::array<double, 4>;  // Re u1, Im u1, Re u2, Im u2
namespace ode = boost::numeric::odeint;

constexpr double kPi = std::numbers::pi;

// u1' = i (lambda u1 + m u2),  u2' = -i (lambda u2 + m u1)
struct FirstOrderSystem {
  double lambda;
  double m;
  void operator()(const State& y, State& dy, double /*x*/) const {
    const double wr = lambda * y[0] + m * y[2];
    const double wi = lambda * y[1] + m * y[3];
    const double vr = lambda * y[2] + m * y[0];
    const double vi = lambda * y[3] + m * y[1];
    dy[0] = -wi;
    dy[1] = wr;
    dy[2] = vi;
    dy[3] = -vr;
  }
};

// Real function whose zeros (with positive real part of q) are eigenvalues:
// q = u2(L) conj(p u1(L)) lies on a circle since |u1| = |u2| is conserved.
struct PhaseProbe {
  double im;
  double re;
};

PhaseProbe probe(const FiberProblem& prob, double lambda, const ShootingOptions& opts) {
  const Spinor u = shoot(prob, lambda, opts);
  const std::complex<double> q = u[1] * std::conj(prob.right_phase * u[0]);
  const double mag = std::abs(q);
  if (!(mag > 0.0)) throw NumericError("shooting: degenerate solution at x = L");
  return {q.imag() / mag, q.real() / mag};
}

double lambda_of(double s, double L, double m, int sigma) {
  const double k = s / L;
  return sigma * std::sqrt(k * k + m * m);
}

}  // namespace

Spinor shoot(const FiberProblem& prob, double trial, const ShootingOptions& opts) {
  if (!(std::abs(trial) > prob.mass) || !std::isfinite(trial)) {
    std::ostringstream os;
    os << "shooting: trial " << trial << " must satisfy trial^2 > m^2";
    throw DomainError(os.str());
  }
  const std::complex<double> left = prob.left_phase();
  State y{1.0, 0.0, left.real(), left.imag()};
  auto stepper = ode::make_controlled(opts.abs_tol, opts.rel_tol,
                                      ode::runge_kutta_fehlberg78<State>());
  const double dt0 = prob.length / (16.0 * (1.0 + std::abs(trial) * prob.length));
  try {
    ode::integrate_adaptive(stepper, FirstOrderSystem{trial, prob.mass}, y, 0.0, prob.length,
                            dt0);
  } catch (const std::exception& e) {
    throw NumericError(std::string("shooting integrator failed: ") + e.what());
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw NumericError("shooting integrator produced non-finite state");
  }
  return {std::complex<double>(y[0], y[1]), std::complex<double>(y[2], y[3])};
}

std::complex<double> shooting_oracle(const FiberProblem& prob, double trial,
                                     const ShootingOptions& opts) {
  const Spinor u = shoot(prob, trial, opts);
  return u[1] - prob.right_phase * u[0];
}

std::vector<double> shooting_eigenvalues(const FiberProblem& prob, Window window,
                                         int max_count, const ShootingOptions& opts) {
  if (max_count < 1) throw DomainError("max_count must be at least 1");
  std::vector<double> roots;
  if (!(window.hi > window.lo)) return roots;
  const double m = prob.mass;
  const double L = prob.length;

  for (int sigma : {-1, 1}) {
    double mag_lo, mag_hi;
    if (sigma > 0) {
      if (window.hi <= m) continue;
      mag_lo = std::max(window.lo, m);
      mag_hi = window.hi;
    } else {
      if (window.lo >= -m) continue;
      mag_lo = std::max(-window.hi, m);
      mag_hi = -window.lo;
    }
    if (!(mag_hi > mag_lo)) continue;
    // Scan in s = sqrt(value^2 - m^2) L so the step tracks the oscillation.
    const double s_max = L * std::sqrt((mag_hi - m) * (mag_hi + m));
    // Keep the first probe strictly outside the gap after rounding.
    const double s_floor = std::max(1e-8, 1e-6 * m * L);
    double s = std::max(s_floor, L * std::sqrt((mag_lo - m) * (mag_lo + m)));
    if (s >= s_max) continue;

    int found = 0;
    PhaseProbe prev = probe(prob, lambda_of(s, L, m, sigma), opts);
    while (s < s_max && found < max_count) {
      // The boundary phase rotates at a rate bounded by ~max(M, 1/M) per unit s.
      const double lam = lambda_of(s, L, m, sigma);
      const double k = s / L;
      const double big_m = std::abs(lam + m) / k;
      const double rate = std::max({1.0, big_m, 1.0 / big_m});
      const double next = std::min(s_max, s + (kPi / 32.0) / rate);
      const PhaseProbe cur = probe(prob, lambda_of(next, L, m, sigma), opts);
      const bool crossing = (prev.im <= 0.0) != (cur.im <= 0.0);
      if (crossing && prev.re > 0.0 && cur.re > 0.0) {
        double lo = s;
        double hi = next;
        const bool lo_neg = prev.im <= 0.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
          const double mid = 0.5 * (lo + hi);
          const PhaseProbe pm = probe(prob, lambda_of(mid, L, m, sigma), opts);
          if ((pm.im <= 0.0) == lo_neg) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        roots.push_back(lambda_of(0.5 * (lo + hi), L, m, sigma));
        ++found;
      }
      prev = cur;
      s = next;
    }
  }

  std::sort(roots.begin(), roots.end(),
            [](double x, double y) { return std::abs(x) < std::abs(y); });
  if (static_cast<int>(roots.size()) > max_count) roots.resize(max_count);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace trispec
