#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "algocert/lmi.hpp"

using namespace algocert;

namespace {

LmiVariables random_vars(const VariableLayout& layout, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::uniform_real_distribution<double> nonneg(0.0, 2.0);
  LmiVariables v;
  Matrix G(layout.state_dim, layout.state_dim);
  for (int i = 0; i < layout.state_dim; ++i)
    for (int j = 0; j < layout.state_dim; ++j) G(i, j) = dist(rng);
  v.P = 0.5 * (G + G.transpose());
  v.p = Vector(layout.p_len);
  for (int i = 0; i < layout.p_len; ++i) v.p(i) = dist(rng);
  v.Lambda1 = Matrix::Zero(layout.lambda_dim, layout.lambda_dim);
  v.Lambda2 = Matrix::Zero(layout.lambda_dim, layout.lambda_dim);
  for (int i = 0; i < layout.lambda_dim; ++i)
    for (int j = 0; j < layout.lambda_dim; ++j)
      if (i != j) {
        v.Lambda1(i, j) = nonneg(rng);
        v.Lambda2(i, j) = nonneg(rng);
      }
  return v;
}

}  // namespace

TEST_CASE("variable layout arithmetic and the pack/unpack round trip") {
  const FunctionClass fc(1.0, 10.0);
  const auto alg = make_preset(Preset::FG, tune_quadratic_optimal(Preset::FG, fc));
  const auto prob = assemble_rate_lmi(build_lifted(alg, 1), 0.9, fc);
  const auto& lay = prob.layout;

  CHECK(lay.state_dim == 4);
  CHECK(lay.p_len == 1);
  CHECK(lay.lambda_dim == 3);
  CHECK(lay.p_size() == 10);
  CHECK(lay.lambda_size() == 6);
  CHECK(lay.num_vars() == 10 + 1 + 12);
  CHECK(static_cast<int>(lay.nonnegative_indices().size()) == 12);
  CHECK(lay.nonnegative_indices().front() == lay.lambda1_offset());

  std::mt19937 rng(3);
  const LmiVariables v = random_vars(lay, rng);
  const Vector u = lay.pack(v);
  REQUIRE(u.size() == lay.num_vars());
  const LmiVariables w = lay.unpack(u);
  CHECK((w.P - v.P).norm() == doctest::Approx(0.0));
  CHECK((w.p - v.p).norm() == doctest::Approx(0.0));
  CHECK((w.Lambda1 - v.Lambda1).norm() == doctest::Approx(0.0));
  CHECK((w.Lambda2 - v.Lambda2).norm() == doctest::Approx(0.0));

  LmiVariables bad = v;
  bad.P = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(lay.pack(bad), std::invalid_argument);
  CHECK_THROWS_AS(lay.unpack(Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("constraint names and shapes") {
  const FunctionClass fc(1.0, 10.0);
  const auto alg = make_preset(Preset::HB, tune_quadratic_optimal(Preset::HB, fc));
  const auto prob = assemble_rate_lmi(build_lifted(alg, 1), 0.8, fc);

  REQUIRE(prob.matrix_constraints.size() == 2);
  REQUIRE(prob.vector_constraints.size() == 2);
  CHECK(prob.matrix_constraints[0].name == "rate_decrease");
  CHECK(prob.matrix_constraints[1].name == "rate_bound");
  CHECK(prob.vector_constraints[0].name == "rate_decrease_values");
  CHECK(prob.vector_constraints[1].name == "rate_bound_values");
  // Basis (state, input) has dimension state_dim + 1.
  CHECK(prob.matrix_constraints[0].constant.rows() == 5);
  CHECK(prob.matrix_constraints[1].constant.rows() == 5);
  // One scalar inequality per function-value slot relative to the optimum.
  CHECK(prob.vector_constraints[0].constant.size() == 2);
  CHECK(prob.vector_constraints[1].constant.size() == 2);
  CHECK(prob.objective.size() == 0);

  CHECK_THROWS_AS(assemble_rate_lmi(build_lifted(alg, 1), 0.0, fc),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_rate_lmi(build_lifted(alg, 1), -0.5, fc),
                  std::invalid_argument);
}

TEST_CASE("memoryless gradient descent system written out by hand") {
  // With one state and no memory the two semidefinite blocks are 2x2 and
  // every entry is available in closed form. a = Lambda1(time, star),
  // b = Lambda1(star, time), similarly c, d for the bound multiplier.
  const double alpha = 0.2, m = 1.0, L = 10.0, r = 0.85;
  const FunctionClass fc(m, L);
  const auto alg = make_preset(Preset::GD, {{"alpha", alpha}});
  const auto prob = assemble_rate_lmi(build_lifted(alg, 0), r, fc);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> nonneg(0.0, 3.0);
  std::normal_distribution<double> dist(0.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    LmiVariables v;
    v.P = Matrix::Constant(1, 1, dist(rng));
    v.p = Vector(0);
    v.Lambda1 = Matrix::Zero(2, 2);
    v.Lambda2 = Matrix::Zero(2, 2);
    const double a = nonneg(rng), b = nonneg(rng);
    const double c = nonneg(rng), d = nonneg(rng);
    v.Lambda1(0, 1) = a;
    v.Lambda1(1, 0) = b;
    v.Lambda2(0, 1) = c;
    v.Lambda2(1, 0) = d;
    const Vector u = prob.layout.pack(v);
    const double P = v.P(0, 0);

    Matrix decrease(2, 2);
    decrease << P * (1.0 - r * r) - m * L * (a + b), -alpha * P + a * m + b * L,
        -alpha * P + a * m + b * L, alpha * alpha * P - (a + b);
    CHECK((prob.matrix_constraints[0].evaluate(u) - decrease).norm() <
          1e-12 * (1.0 + decrease.norm()));

    Matrix bound(2, 2);
    bound << 1.0 - P - m * L * (c + d), c * m + d * L,
        c * m + d * L, -(c + d);
    CHECK((prob.matrix_constraints[1].evaluate(u) - bound).norm() <
          1e-12 * (1.0 + bound.norm()));

    // Without memory the value rows reduce to the aggregated linear weights.
    const Vector dv = prob.vector_constraints[0].evaluate(u);
    REQUIRE(dv.size() == 1);
    CHECK(dv(0) == doctest::Approx(2.0 * (L - m) * (a - b)).epsilon(1e-12));
    const Vector bv = prob.vector_constraints[1].evaluate(u);
    CHECK(bv(0) == doctest::Approx(2.0 * (L - m) * (c - d)).epsilon(1e-12));
  }
}

TEST_CASE("assembled expressions are affine in the decision vector") {
  const FunctionClass fc(1.0, 25.0);
  const auto alg = make_preset(Preset::TMM, tune_tmm(fc));
  const auto prob = assemble_rate_lmi(build_lifted(alg, 2), 0.75, fc);
  const int nv = prob.layout.num_vars();

  std::mt19937 rng(17);
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector u1(nv), u2(nv);
  for (int k = 0; k < nv; ++k) {
    u1(k) = dist(rng);
    u2(k) = dist(rng);
  }
  for (const auto& mc : prob.matrix_constraints) {
    const Matrix lhs = mc.evaluate(u1 + u2);
    const Matrix rhs =
        mc.evaluate(u1) + mc.evaluate(u2) - mc.evaluate(Vector::Zero(nv));
    CHECK((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
    CHECK((mc.evaluate(Vector::Zero(nv)) - mc.constant).norm() == doctest::Approx(0.0));
  }
  for (const auto& vc : prob.vector_constraints) {
    const Vector lhs = vc.evaluate(u1 + u2);
    const Vector rhs =
        vc.evaluate(u1) + vc.evaluate(u2) - vc.evaluate(Vector::Zero(nv));
    CHECK((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
  }
}

TEST_CASE("sensitivity system relates to the rate system at unit decay") {
  const FunctionClass fc(1.0, 8.0);
  const auto alg = make_preset(Preset::FG, tune_quadratic_optimal(Preset::FG, fc));
  const auto ls = build_lifted(alg, 2);
  const auto rate = assemble_rate_lmi(ls, 1.0, fc);
  const auto sens = assemble_sensitivity_lmi(ls, fc);

  std::mt19937 rng(23);
  std::normal_distribution<double> dist(0.0, 1.0);
  const int nv = rate.layout.num_vars();
  REQUIRE(sens.layout.num_vars() == nv);
  Vector u(nv);
  for (int k = 0; k < nv; ++k) u(k) = dist(rng);

  // Same decrease structure plus the squared-output term...
  const Matrix extra = sens.matrix_constraints[0].evaluate(u) -
                       rate.matrix_constraints[0].evaluate(u);
  const Matrix yy = ls.output_proj.transpose() * ls.output_proj;
  CHECK((extra - yy).norm() < 1e-10);
  // ...while the bound drops the stacked-state term it no longer needs.
  const Matrix missing = rate.matrix_constraints[1].evaluate(u) -
                         sens.matrix_constraints[1].evaluate(u);
  const Matrix xx = ls.state_proj.transpose() * ls.state_proj;
  CHECK((missing - xx).norm() < 1e-10);
  // Value rows coincide at r = 1.
  CHECK((sens.vector_constraints[0].evaluate(u) -
         rate.vector_constraints[0].evaluate(u))
            .norm() < 1e-12);
  CHECK((sens.vector_constraints[1].evaluate(u) -
         rate.vector_constraints[1].evaluate(u))
            .norm() < 1e-12);
}

TEST_CASE("sensitivity objective is the noise energy through the Lyapunov matrix") {
  const FunctionClass fc(1.0, 10.0);
  const auto alg = make_preset(Preset::HB, tune_quadratic_optimal(Preset::HB, fc));
  const auto ls = build_lifted(alg, 2);
  const auto prob = assemble_sensitivity_lmi(ls, fc);
  REQUIRE(prob.objective.size() == prob.layout.num_vars());

  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const LmiVariables v = random_vars(prob.layout, rng);
    const double direct = (ls.H.transpose() * v.P * ls.H)(0, 0);
    CHECK(prob.objective.dot(prob.layout.pack(v)) ==
          doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("certificate replay flags violations by name and sign") {
  const FunctionClass fc(1.0, 10.0);
  const auto alg = make_preset(Preset::GD, {{"alpha", 0.1}});
  const auto prob = assemble_rate_lmi(build_lifted(alg, 0), 0.9, fc);

  SUBCASE("the zero point violates exactly the iterate-norm bound") {
    LmiVariables v;
    v.P = Matrix::Zero(1, 1);
    v.p = Vector(0);
    v.Lambda1 = Matrix::Zero(2, 2);
    v.Lambda2 = Matrix::Zero(2, 2);
    const auto rep = evaluate_residuals(prob, v);
    CHECK_FALSE(rep.pass(1e-9));
    // The bound block at zero is diag(1, 0); everything else vanishes.
    CHECK(rep.max_matrix_residual == doctest::Approx(1.0));
    REQUIRE(rep.matrix_residuals.size() == 2);
    CHECK(rep.matrix_residuals[0].name == "rate_decrease");
    CHECK(rep.matrix_residuals[0].value == doctest::Approx(0.0));
    CHECK(rep.matrix_residuals[1].name == "rate_bound");
    CHECK(rep.matrix_residuals[1].value == doctest::Approx(1.0));
    CHECK(rep.min_lambda_entry == doctest::Approx(0.0));
  }
  SUBCASE("negative multipliers are caught even when the blocks look fine") {
    LmiVariables v;
    v.P = Matrix::Constant(1, 1, 2.0);
    v.p = Vector(0);
    v.Lambda1 = Matrix::Zero(2, 2);
    v.Lambda2 = Matrix::Zero(2, 2);
    v.Lambda1(0, 1) = -0.3;
    const auto rep = evaluate_residuals(prob, v);
    CHECK(rep.min_lambda_entry == doctest::Approx(-0.3));
    CHECK_FALSE(rep.pass(1e-9));
    v.Lambda1(0, 1) = 0.3;
    CHECK(evaluate_residuals(prob, v).min_lambda_entry == doctest::Approx(0.0));
  }
}
