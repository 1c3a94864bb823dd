#pragma once

// Closed-form quantities in 50-digit arithmetic, written out from the
// defining formulas. Test-only; shares no code with the library.

#include <boost/math/constants/constants.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using hp = boost::multiprecision::cpp_bin_float_50;

inline hp pi() { return boost::math::constants::pi<hp>(); }

inline hp z0(hp a, hp b) { return -a / b - sqrt(a * a / (b * b) + 1); }

inline hp alpha0(hp a, hp b) { return -b / a + sqrt(b * b / (a * a) + 1); }

inline hp lower_bound_sq(hp a, hp b) {
  const hp tb = atan(a / b + sqrt(1 + a * a / (b * b)));
  const hp ta = atan(b / a + sqrt(1 + b * b / (a * a)));
  return tb * tb / (b * b) + ta * ta / (a * a);
}

inline hp mass_threshold(hp a, hp b, hp L) {
  const hp al = alpha0(a, b);
  return pi() / (2 * L) * sqrt(al * al / (1 - al * al));
}

/// Second leg b with a + b + sqrt(a^2 + b^2) = P, by bracketing root search.
inline double perimeter_partner(double a, double P) {
  auto f = [&](hp b) { return a + b + sqrt(hp(a) * a + b * b) - P; };
  boost::uintmax_t iters = 200;
  const auto tol = boost::math::tools::eps_tolerance<hp>(160);
  const auto r = boost::math::tools::toms748_solve(f, hp(1e-300), hp(P), tol, iters);
  return static_cast<double>((r.first + r.second) / 2);
}

/// Root of g on [lo, hi] (a sign change is required) in 50-digit arithmetic.
template <class F>
hp bracket_root(F g, hp lo, hp hi) {
  boost::uintmax_t iters = 400;
  const auto tol = boost::math::tools::eps_tolerance<hp>(150);
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, tol, iters);
  return (r.first + r.second) / 2;
}

}  // namespace oracle
