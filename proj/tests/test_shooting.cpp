#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles/transfer_matrix.hpp"
#include "trispec/dirac1d.hpp"
#include "trispec/errors.hpp"
#include "trispec/shooting.hpp"

using namespace trispec;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_SUITE("shooting") {
  TEST_CASE("integrator matches the exact propagator") {
    for (auto [a, m, lambda, L] : {std::tuple{1.0, 0.0, 2.3, 1.0}, std::tuple{2.0, 1.0, -4.1, 1.0},
                                   std::tuple{0.5, 5.0, 9.0, 2.0}, std::tuple{1.0, 3.0, -3.5, 0.7}}) {
      for (auto f : {FiberFamily::H, FiberFamily::G}) {
        const auto p = FiberProblem::make(f, RightTriangle(a, 1.0), L, MassParam(m));
        const Spinor u = shoot(p, lambda);
        const Eigen::Vector2cd ref =
            oracle::propagate(lambda, m, L, Eigen::Vector2cd(1.0, p.left_phase()));
        CHECK(std::abs(u[0] - ref[0]) < 1e-10);
        CHECK(std::abs(u[1] - ref[1]) < 1e-10);
      }
    }
  }

  TEST_CASE("defect vanishes at the known root and not elsewhere") {
    const auto p = FiberProblem::make(FiberFamily::H, RightTriangle(1, 1), 1.0, MassParam(0));
    CHECK(std::abs(shooting_oracle(p, -3 * pi / 8)) <= 1e-9);
    CHECK(std::abs(shooting_oracle(p, 0.3)) > 0.1);
    CHECK(std::abs(shooting_oracle(p, 3 * pi / 8)) > 0.1);
  }

  TEST_CASE("trial inside the gap is rejected") {
    const auto p = FiberProblem::make(FiberFamily::H, RightTriangle(1, 1), 1.0, MassParam(2));
    CHECK_THROWS_AS(shooting_oracle(p, 1.0), DomainError);
    CHECK_THROWS_AS(shooting_eigenvalues(p, {-10, 10}, 0), DomainError);
  }

  TEST_CASE("first five roots agree with the secular solver") {
    for (double a : {0.5, 1.0, 2.0}) {
      for (double m : {0.0, 1.0, 5.0}) {
        for (auto f : {FiberFamily::H, FiberFamily::G}) {
          const auto p = FiberProblem::make(f, RightTriangle(a, 1.0), 1.0, MassParam(m));
          const Window w{-60.0, 60.0};
          const auto sec = eigenvalues_in_window(p, w, 5);
          const auto sho = shooting_eigenvalues(p, w, 5);
          CAPTURE(a);
          CAPTURE(m);
          REQUIRE(sec.eigenvalues.size() == 5);
          REQUIRE(sho.size() == 5);
          for (int i = 0; i < 5; ++i) {
            CHECK(sho[i] == doctest::Approx(sec.eigenvalues[i].value).epsilon(1e-8));
          }
        }
      }
    }
  }
}
