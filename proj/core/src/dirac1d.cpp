#include "trispec/dirac1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "trispec/errors.hpp"
#include "trispec/shooting.hpp"

namespace trispec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSamplesPerBranch = 64;
constexpr int kMaxBisections = 300;
constexpr double kBracketWidth = 1e-13;

// tan/cot is treated as unbounded once it exceeds 1e15 in magnitude.
constexpr double kPoleRatio = 1e-15;

// Secular residual as a function of s = sqrt(E) L on one side of the mass gap
// (sigma = +1 for values > m, -1 for values < -m).
double residual_at(const FiberProblem& p, double s, int sigma, bool* pole) {
  const double k = s / p.length;
  const double e = k * k;
  const double m = p.mass;
  const double root = std::sqrt(e + m * m);
  const double sn = std::sin(s);
  const double cs = std::cos(s);
  if (p.family == FiberFamily::H) {
    // lambda + m, written without cancellation on the negative side.
    const double lam_plus_m = sigma > 0 ? root + m : -e / (root + m);
    const double big_m = lam_plus_m / k;
    if (pole) *pole = std::abs(cs) <= kPoleRatio * std::abs(sn);
    return big_m * sn / cs - p.coefficient;
  }
  const double eta = sigma * root;
  if (pole) *pole = std::abs(sn) <= kPoleRatio * std::abs(cs);
  return k * cs / sn + m - p.coefficient * eta;
}

// Limit of the residual as s -> 0+.
double residual_at_zero(const FiberProblem& p, int sigma) {
  const double m = p.mass;
  if (p.family == FiberFamily::H) {
    return (sigma > 0 ? 2.0 * m * p.length : 0.0) - p.coefficient;
  }
  return 1.0 / p.length + m - p.coefficient * sigma * m;
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

enum class EndKind { Zero, Pole, Edge };

struct Branch {
  int index;
  double s_lo;
  double s_hi;
  EndKind lo_kind;
  EndKind hi_kind;
};

// Sign of the residual at a branch end.
int end_sign(const FiberProblem& p, int sigma, const Branch& br, bool upper) {
  const EndKind kind = upper ? br.hi_kind : br.lo_kind;
  const double s = upper ? br.s_hi : br.s_lo;
  switch (kind) {
    case EndKind::Zero:
      return sign_of(residual_at_zero(p, sigma));
    case EndKind::Pole:
      if (p.family == FiberFamily::H) {
        // tan -> -inf just above a pole, +inf just below; M has sign sigma.
        return upper ? sigma : -sigma;
      }
      return upper ? -1 : 1;  // cot -> +inf above a pole, -inf below
    case EndKind::Edge:
      return sign_of(residual_at(p, s, sigma, nullptr));
  }
  return 0;
}

double pole_period_start(const FiberProblem& p, int k) {
  // H: branch k spans ((k - 1/2) pi, (k + 1/2) pi); G: (k pi, (k + 1) pi).
  return p.family == FiberFamily::H ? (k - 0.5) * kPi : k * kPi;
}

struct SideRange {
  bool empty = true;
  double s_min = 0.0;
  double s_max = 0.0;
  bool from_zero = false;
};

SideRange side_range(const FiberProblem& p, Window w, int sigma) {
  const double m = p.mass;
  const double L = p.length;
  // Magnitudes |value| covered on this side.
  double mag_lo, mag_hi;
  if (sigma > 0) {
    if (w.hi <= m) return {};
    mag_lo = std::max(w.lo, m);
    mag_hi = w.hi;
  } else {
    if (w.lo >= -m) return {};
    mag_lo = std::max(-w.hi, m);
    mag_hi = -w.lo;
  }
  if (!(mag_hi > mag_lo)) return {};
  SideRange r;
  r.empty = false;
  r.from_zero = mag_lo <= m;
  r.s_min = r.from_zero ? 0.0 : L * std::sqrt((mag_lo - m) * (mag_lo + m));
  r.s_max = L * std::sqrt((mag_hi - m) * (mag_hi + m));
  return r;
}

struct RootInS {
  double s;
  int branch;
  double residual;
};

double refine_root(const FiberProblem& p, int sigma, double lo, int sign_lo, double hi,
                   double* residual) {
  int iter = 0;
  while (hi - lo > kBracketWidth * std::max(1.0, hi)) {
    if (++iter > kMaxBisections) {
      std::ostringstream os;
      os.precision(17);
      os << "secular bisection did not converge in bracket s in [" << lo << ", " << hi << "]";
      throw NumericError(os.str());
    }
    const double mid = 0.5 * (lo + hi);
    const double fm = residual_at(p, mid, sigma, nullptr);
    if (!std::isfinite(fm)) {
      std::ostringstream os;
      os.precision(17);
      os << "non-finite secular residual at s=" << mid << " in bracket [" << lo << ", " << hi
         << "]";
      throw NumericError(os.str());
    }
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if (sign_of(fm) == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double s = 0.5 * (lo + hi);
  if (hi > lo) {
    // Guarded secant (Newton with the bracket slope); keep the midpoint if
    // the step leaves the bracket.
    const double fl = residual_at(p, lo, sigma, nullptr);
    const double fh = residual_at(p, hi, sigma, nullptr);
    if (std::isfinite(fl) && std::isfinite(fh) && fh != fl) {
      const double cand = lo - fl * (hi - lo) / (fh - fl);
      if (cand >= lo && cand <= hi) s = cand;
    }
  }
  *residual = residual_at(p, s, sigma, nullptr);
  return s;
}

// Scans one branch for sign changes and refines each bracket.
std::vector<RootInS> roots_in_branch(const FiberProblem& p, int sigma, const Branch& br,
                                     bool* monotone) {
  std::vector<double> xs;
  std::vector<int> signs;
  xs.reserve(kSamplesPerBranch + 1);
  signs.reserve(kSamplesPerBranch + 1);
  xs.push_back(br.s_lo);
  signs.push_back(end_sign(p, sigma, br, false));
  for (int j = 1; j < kSamplesPerBranch; ++j) {
    const double s = br.s_lo + (br.s_hi - br.s_lo) * j / kSamplesPerBranch;
    xs.push_back(s);
    signs.push_back(sign_of(residual_at(p, s, sigma, nullptr)));
  }
  xs.push_back(br.s_hi);
  signs.push_back(end_sign(p, sigma, br, true));

  std::vector<RootInS> out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (signs[i] == 0) {
      // Sample landed on a root (interior samples only).
      if (i > 0) out.push_back({xs[i], br.index, 0.0});
      continue;
    }
    if (signs[i + 1] != 0 && signs[i + 1] != signs[i]) {
      double res = 0.0;
      const double s = refine_root(p, sigma, xs[i], signs[i], xs[i + 1], &res);
      out.push_back({s, br.index, res});
    }
  }
  if (out.size() > 1) *monotone = false;
  return out;
}

double value_from_s(const FiberProblem& p, double s, int sigma) {
  const double k = s / p.length;
  return sigma * std::sqrt(k * k + p.mass * p.mass);
}

void require_family(const FiberProblem& p, FiberFamily f, const char* what) {
  if (p.family != f) {
    throw DomainError(std::string(what) + " requires a family " + std::string(to_string(f)) +
                      " problem");
  }
}

void require_outside_gap(double value, double m, const char* what) {
  if (!(std::abs(value) > m) || !std::isfinite(value)) {
    std::ostringstream os;
    os << what << ": value " << value << " must satisfy value^2 > m^2 (m=" << m << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

std::string_view to_string(FiberFamily f) { return f == FiberFamily::H ? "H" : "G"; }

FiberFamily parse_fiber_family(std::string_view name) {
  if (name == "H" || name == "h") return FiberFamily::H;
  if (name == "G" || name == "g") return FiberFamily::G;
  throw DomainError("unknown fiber family '" + std::string(name) + "' (expected H or G)");
}

FiberProblem FiberProblem::make(FiberFamily family, const RightTriangle& tri, double length,
                                MassParam m) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw DomainError("fiber length must be positive");
  }
  FiberProblem p;
  p.family = family;
  p.length = length;
  p.mass = m.value();
  p.phases = boundary_phases(tri);
  p.right_phase = p.phases.ab_phase;
  p.coefficient = family == FiberFamily::H ? p.phases.z0 : p.phases.alpha0;
  return p;
}

FiberProblem FiberProblem::with_right_phase(std::complex<double> ph) const {
  if (std::abs(std::abs(ph) - 1.0) > 1e-12) {
    throw DomainError("boundary phase must be unimodular");
  }
  FiberProblem p = *this;
  p.right_phase = ph;
  const double pr = ph.real();
  const double pi = ph.imag();
  if (family == FiberFamily::H) {
    // (1 - iz)/(1 + iz) = p  =>  z = -tan(arg(p)/2).
    if (1.0 + pr <= 0.0) throw DomainError("right phase -1 admits no H secular equation");
    p.coefficient = -pi / (1.0 + pr);
  } else {
    // (1 - i/a)/(1 + i/a) = i p  =>  a = -cot(arg(i p)/2).
    if (pr == 0.0) throw DomainError("right phase +-i admits no G secular equation");
    p.coefficient = -(1.0 - pi) / pr;
  }
  return p;
}

std::complex<double> FiberProblem::left_phase() const {
  return family == FiberFamily::H ? std::complex<double>(1.0, 0.0)
                                  : std::complex<double>(0.0, -1.0);
}

SecularValue h_secular_residual(double lambda, const FiberProblem& prob) {
  require_family(prob, FiberFamily::H, "h_secular_residual");
  require_outside_gap(lambda, prob.mass, "h_secular_residual");
  const double m = prob.mass;
  const double e = (std::abs(lambda) - m) * (std::abs(lambda) + m);
  const double k = std::sqrt(e);
  const double s = k * prob.length;
  const double sn = std::sin(s);
  const double cs = std::cos(s);
  SecularValue out;
  out.pole = std::abs(cs) <= kPoleRatio * std::abs(sn);
  out.value = (lambda + m) / k * sn / cs - prob.coefficient;
  return out;
}

SecularValue g_secular_residual(double eta, const FiberProblem& prob) {
  require_family(prob, FiberFamily::G, "g_secular_residual");
  require_outside_gap(eta, prob.mass, "g_secular_residual");
  const double m = prob.mass;
  const double f = (std::abs(eta) - m) * (std::abs(eta) + m);
  const double k = std::sqrt(f);
  const double s = k * prob.length;
  const double sn = std::sin(s);
  const double cs = std::cos(s);
  SecularValue out;
  out.pole = std::abs(sn) <= kPoleRatio * std::abs(cs);
  out.value = k * cs / sn + m - prob.coefficient * eta;
  return out;
}

Spectrum1D eigenvalues_in_window(const FiberProblem& prob, Window window, int max_count) {
  if (max_count < 1) throw DomainError("max_count must be at least 1");
  Spectrum1D spec;
  spec.family = prob.family;
  spec.mass = prob.mass;
  if (!(window.hi > window.lo)) return spec;

  struct Found {
    RootInS root;
    int sigma;
  };
  std::vector<Found> found;

  for (int sigma : {-1, 1}) {
    const SideRange range = side_range(prob, window, sigma);
    if (range.empty) continue;
    int count = 0;
    int k = prob.family == FiberFamily::H
                ? static_cast<int>(std::floor(range.s_min / kPi + 0.5))
                : static_cast<int>(std::floor(range.s_min / kPi));
    for (;; ++k) {
      const double period_lo = pole_period_start(prob, k);
      const double period_hi = period_lo + kPi;
      if (period_lo >= range.s_max) break;
      if (count >= max_count) {
        spec.truncated = true;
        break;
      }
      Branch br{k, 0.0, 0.0, EndKind::Pole, EndKind::Pole};
      if (period_lo <= range.s_min) {
        br.s_lo = range.s_min;
        br.lo_kind = (range.from_zero && range.s_min == 0.0) ? EndKind::Zero : EndKind::Edge;
      } else {
        br.s_lo = period_lo;
      }
      if (period_hi >= range.s_max) {
        br.s_hi = range.s_max;
        br.hi_kind = EndKind::Edge;
      } else {
        br.s_hi = period_hi;
      }
      if (!(br.s_hi > br.s_lo)) continue;
      for (const RootInS& r : roots_in_branch(prob, sigma, br, &spec.monotone_branches)) {
        found.push_back({r, sigma});
        ++count;
      }
    }
  }

  std::sort(found.begin(), found.end(),
            [](const Found& x, const Found& y) { return x.root.s < y.root.s; });
  if (static_cast<int>(found.size()) > max_count) {
    found.resize(max_count);
    spec.truncated = true;
  }
  for (const Found& f : found) {
    FiberEigenvalue ev;
    ev.value = value_from_s(prob, f.root.s, f.sigma);
    const double k = f.root.s / prob.length;
    ev.energy = k * k;
    ev.branch = f.root.branch;
    ev.residual = f.root.residual;
    ev.validated_range = prob.family == FiberFamily::H || f.root.s < kPi;
    spec.eigenvalues.push_back(ev);
  }
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(),
            [](const FiberEigenvalue& x, const FiberEigenvalue& y) { return x.value < y.value; });
  return spec;
}

ClosestEigenvalue closest_to_zero(const Spectrum1D& spec) {
  if (spec.eigenvalues.empty()) throw DomainError("closest_to_zero of an empty spectrum");
  ClosestEigenvalue best{spec.eigenvalues.front(), false};
  for (std::size_t i = 1; i < spec.eigenvalues.size(); ++i) {
    const FiberEigenvalue& ev = spec.eigenvalues[i];
    const double cur = std::abs(best.eigenvalue.value);
    const double cand = std::abs(ev.value);
    if (cand < cur) {
      best = {ev, false};
    } else if (cand == cur && ev.value != best.eigenvalue.value) {
      best.tie = true;
      if (ev.value < best.eigenvalue.value) best.eigenvalue = ev;
    }
  }
  return best;
}

ClosestEigenvalue lowest_eigenvalue(const FiberProblem& prob) {
  // s up to 2 pi covers the first branch with a root on both sides.
  const double reach = 2.0 * kPi / prob.length;
  const double w = std::sqrt(prob.mass * prob.mass + reach * reach);
  const Spectrum1D spec = eigenvalues_in_window(prob, {-w, w}, 8);
  if (spec.eigenvalues.empty()) {
    throw NumericError("no fiber eigenvalue found below sqrt(F) L = 2 pi");
  }
  return closest_to_zero(spec);
}

Spinor eigenfunction_h(double lambda, const FiberProblem& prob, double x) {
  require_family(prob, FiberFamily::H, "eigenfunction_h");
  require_outside_gap(lambda, prob.mass, "eigenfunction_h");
  if (!(x >= 0.0 && x <= prob.length)) throw DomainError("eigenfunction_h: x outside [0, L]");
  const double m = prob.mass;
  const double k = std::sqrt((std::abs(lambda) - m) * (std::abs(lambda) + m));
  const double big_m = (lambda + m) / k;
  auto at = [&](double t) {
    const double c = std::cos(k * t);
    const double s = std::sin(k * t);
    return Spinor{std::complex<double>(c, big_m * s), std::complex<double>(c, -big_m * s)};
  };
  const Spinor end = at(prob.length);
  const double defect = std::abs(end[1] - prob.right_phase * end[0]);
  if (defect > 1e-10 * std::max(std::abs(end[0]), std::abs(end[1]))) {
    std::ostringstream os;
    os.precision(17);
    os << "lambda=" << lambda << " is not an H eigenvalue (boundary defect " << defect << ")";
    throw DomainError(os.str());
  }
  return at(x);
}

Spinor eigenfunction_g(double eta, const FiberProblem& prob, double x) {
  require_family(prob, FiberFamily::G, "eigenfunction_g");
  require_outside_gap(eta, prob.mass, "eigenfunction_g");
  if (!(x >= 0.0 && x <= prob.length)) throw DomainError("eigenfunction_g: x outside [0, L]");
  const double m = prob.mass;
  const double k = std::sqrt((std::abs(eta) - m) * (std::abs(eta) + m));
  const std::complex<double> i(0.0, 1.0);
  auto at = [&](double t) {
    const double c = std::cos(k * t);
    const double s = std::sin(k * t);
    return Spinor{c + (i * eta + m) / k * s, -i * c - (eta + i * m) / k * s};
  };
  const Spinor end = at(prob.length);
  const double defect = std::abs(end[1] - prob.right_phase * end[0]);
  if (defect > 1e-10 * std::max(std::abs(end[0]), std::abs(end[1]))) {
    std::ostringstream os;
    os.precision(17);
    os << "eta=" << eta << " is not a G eigenvalue (boundary defect " << defect << ")";
    throw DomainError(os.str());
  }
  return at(x);
}

double poincare_constant(const FiberProblem& prob) {
  const double angle = prob.family == FiberFamily::H ? std::atan(-prob.phases.z0)
                                                     : std::atan(1.0 / prob.phases.alpha0);
  return angle * angle / (prob.length * prob.length);
}

double mass_threshold_m0(const FiberProblem& prob) {
  require_family(prob, FiberFamily::G, "mass_threshold_m0");
  const double a2 = prob.phases.alpha0 * prob.phases.alpha0;
  return kPi / (2.0 * prob.length) * std::sqrt(a2 / (1.0 - a2));
}

FiberProblem gtilde_problem(const RightTriangle& tri, double length, MassParam m) {
  const FiberProblem g = FiberProblem::make(FiberFamily::G, tri, length, m);
  return g.with_right_phase(std::complex<double>(0.0, -1.0) * g.phases.ab_phase);
}

Spectrum1D htilde_eigenvalues(const FiberProblem& prob_h, Window window, int max_count) {
  require_family(prob_h, FiberFamily::H, "htilde_eigenvalues");
  FiberProblem p = prob_h;
  p.family = FiberFamily::G;
  p.right_phase = std::complex<double>(0.0, -1.0) * prob_h.phases.ab_phase;
  p.coefficient = 1.0 / prob_h.phases.z0;  // -1/|z0|
  return eigenvalues_in_window(p, window, max_count);
}

EquivalenceReport unitary_equivalence_check(const FiberProblem& prob_h,
                                            const FiberProblem& prob_gtilde, Window window,
                                            double rel_tol) {
  require_family(prob_h, FiberFamily::H, "unitary_equivalence_check");
  require_family(prob_gtilde, FiberFamily::G, "unitary_equivalence_check");
  if (prob_h.length != prob_gtilde.length || prob_h.mass != prob_gtilde.mass) {
    throw DomainError("unitary_equivalence_check: problems differ in length or mass");
  }
  constexpr int kMax = 64;
  EquivalenceReport rep;
  for (const FiberEigenvalue& ev : htilde_eigenvalues(prob_h, window, kMax).eigenvalues) {
    rep.htilde.push_back(ev.value);
  }
  rep.gtilde = shooting_eigenvalues(prob_gtilde, window, kMax);
  if (rep.htilde.size() != rep.gtilde.size()) {
    std::ostringstream os;
    os << "cardinality mismatch: H~ has " << rep.htilde.size() << " roots, G~ has "
       << rep.gtilde.size();
    rep.diagnostics = os.str();
    rep.equivalent = false;
    return rep;
  }
  for (std::size_t i = 0; i < rep.htilde.size(); ++i) {
    const double gap = std::abs(rep.htilde[i] - rep.gtilde[i]) / std::abs(rep.htilde[i]);
    rep.max_relative_gap = std::max(rep.max_relative_gap, gap);
  }
  rep.equivalent = rep.max_relative_gap <= rel_tol;
  if (!rep.equivalent) {
    std::ostringstream os;
    os << "max relative gap " << rep.max_relative_gap << " exceeds " << rel_tol;
    rep.diagnostics = os.str();
  }
  return rep;
}

}  // namespace trispec
