#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "algocert/lifting.hpp"

using namespace algocert;

TEST_CASE("truncation matrices keep the right ends of a history stack") {
  const auto tp = truncation_matrices(3);
  REQUIRE(tp.drop_oldest.rows() == 3);
  REQUIRE(tp.drop_oldest.cols() == 4);
  Vector h(4);
  h << 10.0, 11.0, 12.0, 13.0;  // newest first
  const Vector keep_new = tp.drop_oldest * h;
  const Vector keep_old = tp.drop_newest * h;
  CHECK(keep_new(0) == doctest::Approx(10.0));
  CHECK(keep_new(2) == doctest::Approx(12.0));
  CHECK(keep_old(0) == doctest::Approx(11.0));
  CHECK(keep_old(2) == doctest::Approx(13.0));

  const auto empty = truncation_matrices(0);
  CHECK(empty.drop_oldest.rows() == 0);
  CHECK(empty.drop_oldest.cols() == 1);
}

TEST_CASE("memory zero reduces to the base realization") {
  const auto alg = make_preset(Preset::FG, {{"alpha", 0.1}, {"beta", 0.5}});
  const auto ls = build_lifted(alg, 0);
  CHECK(ls.state_dim() == 2);
  CHECK(ls.io_dim() == 2);
  CHECK((ls.A - alg.A).norm() == doctest::Approx(0.0));
  CHECK((ls.B - alg.B).norm() == doctest::Approx(0.0));
  CHECK((ls.H - alg.B).norm() == doctest::Approx(0.0));
  CHECK((ls.C.topRows(1) - alg.C).norm() == doctest::Approx(0.0));
  CHECK(ls.C.bottomRows(1).norm() == doctest::Approx(0.0));
  CHECK(ls.D(0, 0) == doctest::Approx(0.0));
  CHECK(ls.D(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("gradient descent with one step of memory, written out by hand") {
  const double alpha = 0.25;
  const auto alg = make_preset(Preset::GD, {{"alpha", alpha}});
  const auto ls = build_lifted(alg, 1);
  REQUIRE(ls.state_dim() == 3);
  REQUIRE(ls.io_dim() == 4);

  Matrix A(3, 3), C(4, 3);
  A << 1, 0, 0,  // base state
      1, 0, 0,   // y_{k-1} records C xi_k
      0, 0, 0;   // u_{k-1} records the input, via B below
  C << 1, 0, 0,  // y_k
      0, 1, 0,   // y_{k-1}
      0, 0, 0,   // u_k enters through D
      0, 0, 1;   // u_{k-1}
  CHECK((ls.A - A).norm() == doctest::Approx(0.0));
  CHECK((ls.C - C).norm() == doctest::Approx(0.0));

  Vector B(3), H(3), D(4);
  B << -alpha, 0, 1;
  H << -alpha, 0, 0;
  D << 0, 0, 1, 0;
  CHECK((ls.B - B).norm() == doctest::Approx(0.0));
  CHECK((ls.H - H).norm() == doctest::Approx(0.0));
  CHECK((ls.D - D).norm() == doctest::Approx(0.0));
}

TEST_CASE("lifted trajectories replay the base history exactly") {
  std::mt19937 rng(2711);
  std::normal_distribution<double> dist(0.0, 1.0);
  const FunctionClass fc(1.0, 8.0);

  for (const Preset p : {Preset::GD, Preset::HB, Preset::FG, Preset::TMM}) {
    const auto alg = make_preset(p, tune_quadratic_optimal(p, fc));
    for (const int ell : {0, 1, 2, 3}) {
      const auto ls = build_lifted(alg, ell);

      // Drive base and lifted systems with one shared input sequence. The
      // lifted memory starts empty, matching a zero-padded history.
      Vector xi = Vector::Zero(alg.n);
      for (int i = 0; i < alg.n; ++i) xi(i) = dist(rng);
      Vector z = Vector::Zero(ls.state_dim());
      z.head(alg.n) = xi;

      std::vector<double> ys, us;
      const int steps = 20;
      for (int k = 0; k < steps; ++k) {
        const double y = (alg.C * xi)(0, 0);
        const double u = dist(rng);
        ys.push_back(y);
        us.push_back(u);

        const Vector io = ls.C * z + ls.D * u;
        // Stacked outputs run from the current sample back through the
        // remembered ones; history slots older than the run are zero.
        for (int j = 0; j <= ell; ++j) {
          const double y_expect = k - j >= 0 ? ys[k - j] : 0.0;
          const double u_expect = k - j >= 0 ? us[k - j] : 0.0;
          CHECK(io(j) == doctest::Approx(y_expect).epsilon(1e-12));
          CHECK(io(ell + 1 + j) == doctest::Approx(u_expect).epsilon(1e-12));
        }

        xi = alg.A * xi + alg.B * u;
        z = ls.A * z + ls.B * u;
        CHECK((z.head(alg.n) - xi).lpNorm<Eigen::Infinity>() < 1e-12);
      }
    }
  }
}

TEST_CASE("noise enters the dynamics but not the recorded input history") {
  const auto alg = make_preset(Preset::HB, {{"alpha", 0.1}, {"beta", 0.4}});
  const auto ls = build_lifted(alg, 2);
  // Same injection as the gradient on the base state...
  CHECK((ls.H.topRows(alg.n) - alg.B).norm() == doctest::Approx(0.0));
  // ...but nothing reaches the memory slots: the multipliers later certify
  // properties of the noiseless interpolation data.
  CHECK(ls.H.bottomRows(ls.state_dim() - alg.n).norm() == doctest::Approx(0.0));
  // The gradient input, in contrast, is recorded: weight one into the newest
  // input-history slot, nothing into the output history.
  const Vector b = ls.B.col(0);
  CHECK(b(alg.n + 2) == doctest::Approx(1.0));
  CHECK(b.segment(alg.n, 2).norm() == doctest::Approx(0.0));
  CHECK(b(alg.n + 3) == doctest::Approx(0.0));
}

TEST_CASE("projections split a stacked state-input vector") {
  const auto alg = make_preset(Preset::FG, {{"alpha", 0.08}, {"beta", 0.55}});
  const auto ls = build_lifted(alg, 2);
  const int ns = ls.state_dim();
  Vector z(ns + 1);
  for (int i = 0; i <= ns; ++i) z(i) = 0.5 * i - 1.0;

  const Vector xi = ls.state_proj * z;
  REQUIRE(xi.size() == alg.n);
  CHECK(xi(0) == doctest::Approx(z(0)));
  CHECK(xi(1) == doctest::Approx(z(1)));
  CHECK((ls.output_proj * z)(0, 0) == doctest::Approx((alg.C * xi)(0, 0)));
  CHECK((ls.input_proj * z)(0, 0) == doctest::Approx(z(ns)));
}
