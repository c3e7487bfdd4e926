#include <catch2/catch_amalgamated.hpp>

#include "qfock/operators.hpp"

using namespace qfock;

namespace {

const UnitImaginary kI = UnitImaginary::i();

double coeff_distance(const QSeries& a, const QSeries& b) {
  double m = 0.0;
  for (int n = 0; n <= std::max(a.degree(), b.degree()); ++n) {
    m = std::max(m, norm(a.coeff(n) - b.coeff(n)));
  }
  return m;
}

WeightedCompOp random_bounded_op(Rng& rng, int weight_degree, double a_radius = 0.9) {
  return {rng.polynomial(weight_degree),
          AffineSymbol{a_radius * rng.unit_disk_complex(), rng.unit_disk_complex(), kI}};
}

}  // namespace

TEST_CASE("apply basics", "[operators]") {
  Rng rng(43);
  const WeightedCompOp ident{QSeries::one(), AffineSymbol::identity(kI)};
  const QSeries h = rng.polynomial(7);
  CHECK(coeff_distance(apply(ident, h), h) == 0.0);

  const WeightedCompOp w = random_bounded_op(rng, 5);
  CHECK(coeff_distance(apply(w, QSeries::one()), w.weight) == 0.0);

  // Against the star/compose oracle, coefficient by coefficient.
  const QSeries expect = star(w.weight, compose_affine(h, w.symbol));
  CHECK(coeff_distance(apply(w, h), expect) == 0.0);

  CHECK_THROWS_AS(WeightedCompOp(QSeries::zero(3), AffineSymbol::identity(kI)), Error);
}

TEST_CASE("apply is right-linear over the quaternions", "[operators]") {
  Rng rng(47);
  const WeightedCompOp w = random_bounded_op(rng, 4);
  const QSeries g = rng.polynomial(6);
  const QSeries h = rng.polynomial(5);
  const Quaternion a = rng.unit_ball_quaternion();
  const Quaternion b = rng.unit_ball_quaternion();
  const QSeries lhs = apply(w, g.right_scaled(a) + h.right_scaled(b));
  const QSeries rhs = apply(w, g).right_scaled(a) + apply(w, h).right_scaled(b);
  CHECK(coeff_distance(lhs, rhs) <= 1e-14);
}

TEST_CASE("matrix sections", "[operators]") {
  const WeightedCompOp ident{QSeries::one(), AffineSymbol::identity(kI)};
  const OperatorMatrix mi = matrix(ident, 6);
  CHECK((mi - OperatorMatrix::identity(7)).frobenius() <= 1e-14);

  const Complex lambda{0.6, 0.3};
  const WeightedCompOp dil{QSeries::one(), AffineSymbol{lambda, Complex{0.0, 0.0}, kI}};
  const OperatorMatrix md = matrix(dil, 8);
  Complex power{1.0, 0.0};
  for (int n = 0; n <= 8; ++n) {
    CHECK(norm(md.at(std::size_t(n), std::size_t(n)) - embed(power, kI)) <= 1e-14);
    power *= lambda;
  }

  Rng rng(53);
  const WeightedCompOp w = random_bounded_op(rng, 4);
  const QSeries h = rng.polynomial(9);
  const QSeries via_matrix = apply_matrix(matrix(w, 9), h);
  CHECK(coeff_distance(via_matrix, apply(w, h)) <= 1e-12);
}

TEST_CASE("adjoint on monomials", "[operators]") {
  Rng rng(59);

  // m = 0: the adjoint sends the constant to K_B conj(f(0)).
  const WeightedCompOp w = random_bounded_op(rng, 5);
  const QSeries a0 = adjoint_on_monomial(w, 0, 30);
  const QSeries expect0 =
      kernel(embed(w.symbol.b, kI), 30).right_scaled(conj(w.weight.coeff(0)));
  CHECK(coeff_distance(a0, expect0) <= 1e-14);

  // Identity operator: W* P_m = P_m.
  const WeightedCompOp ident{QSeries::one(), AffineSymbol::identity(kI)};
  for (int m = 0; m <= 5; ++m) {
    CHECK(coeff_distance(adjoint_on_monomial(ident, m, 20), QSeries::monomial(m)) <= 1e-15);
  }
}

TEST_CASE("inner-product duality of the adjoint", "[operators]") {
  Rng rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    const WeightedCompOp w = random_bounded_op(rng, 6);
    const QSeries g = rng.polynomial(10);
    for (int m = 0; m <= 10; m += 2) {
      const Quaternion lhs = inner(apply(w, g), QSeries::monomial(m));
      const Quaternion rhs = inner(g, adjoint_on_monomial(w, m, 40));
      const double scale = std::max({1.0, norm(lhs), norm(rhs)});
      CHECK(norm(lhs - rhs) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("adjoint matrix", "[operators]") {
  const OperatorMatrix id = OperatorMatrix::identity(5);
  CHECK((adjoint_matrix(id) - id).frobenius() == 0.0);

  const Complex lambda{0.4, -0.6};
  const WeightedCompOp dil{QSeries::one(), AffineSymbol{lambda, Complex{0.0, 0.0}, kI}};
  const OperatorMatrix md = adjoint_matrix(matrix(dil, 6));
  Complex power{1.0, 0.0};
  for (int n = 0; n <= 6; ++n) {
    CHECK(norm(md.at(std::size_t(n), std::size_t(n)) - embed(std::conj(power), kI)) <= 1e-14);
    power *= lambda;
  }

  // Columns of the adjoint section against the monomial-adjoint expansion.
  Rng rng(67);
  const WeightedCompOp w = random_bounded_op(rng, 4);
  const int n_in = 12;
  const OperatorMatrix adj = adjoint_matrix(matrix(w, n_in));
  for (int m = 0; m <= 6; ++m) {
    const QSeries am = adjoint_on_monomial(w, m, n_in);
    for (int r = 0; r <= n_in; ++r) {
      const Quaternion entry = adj.at(std::size_t(r), std::size_t(m)) *
                               (std::sqrt(factorial(m)) / std::sqrt(factorial(r)));
      CHECK(norm(entry - am.coeff(r)) <= 1e-9);
    }
  }
}

TEST_CASE("kernel covariance of the adjoint", "[operators]") {
  Rng rng(71);
  const int n = 30;
  for (int rep = 0; rep < 5; ++rep) {
    const WeightedCompOp w = random_bounded_op(rng, 4);
    const Quaternion p = rng.ball_quaternion(1.0);
    const Quaternion q = rng.ball_quaternion(1.0);
    const Quaternion rhs = conj(eval(apply(w, kernel(q, n)), p));
    const OperatorMatrix adj = adjoint_matrix(matrix(w, n));
    const QSeries adj_kp = apply_matrix(adj, kernel(p, n + w.weight.degree()));
    const Quaternion lhs = eval(adj_kp, q);
    CHECK(norm(lhs - rhs) <= 1e-9);
  }
}

TEST_CASE("unitary construction", "[operators]") {
  const int n = 40;
  const WeightedCompOp ident = make_unitary(Complex{1.0, 0.0}, Complex{0.0, 0.0}, n, kI);
  CHECK(coeff_distance(apply(ident, QSeries::monomial(3)), QSeries::monomial(3)) <= 1e-15);

  CHECK_THROWS_AS(make_unitary(Complex{0.5, 0.0}, Complex{0.0, 0.0}, n, kI),
                  NotUnimodularError);

  Rng rng(73);
  for (int rep = 0; rep < 3; ++rep) {
    const double theta = rng.uniform(0.0, 6.28);
    const Complex lambda{std::cos(theta), std::sin(theta)};
    const Complex b = rng.unit_disk_complex();

    // M* M recovers the identity on the lower block.
    const WeightedCompOp u = make_unitary(lambda, b, n, kI);
    const OperatorMatrix mu = matrix(u, n);
    const OperatorMatrix gram = adjoint_matrix(mu) * mu;
    const std::size_t block = n / 2 + 1;
    CHECK((gram - OperatorMatrix::identity(n + 1)).frobenius_block(block, block) <= 1e-7);

    // Composition with the stated inverse acts as the identity.
    const WeightedCompOp v = make_unitary_inverse(lambda, b, n, kI);
    const std::size_t s = n + 1;
    const OperatorMatrix comp = matrix(u, n).section(s, s) * matrix(v, n).section(s, s);
    CHECK((comp - OperatorMatrix::identity(s)).frobenius_block(block, block) <= 1e-7);

    // Unit vectors stay unit vectors.
    const Quaternion q = rng.ball_quaternion(1.0);
    CHECK(std::abs(fock_norm(apply(u, normalized_kernel(q, n / 2))) - 1.0) <= 1e-7);
  }
}

TEST_CASE("displacement commutation relation", "[operators]") {
  const int n = 40;

  // u = 0 is the identity; the relation against any v is exact.
  CHECK(weyl_commutation_residual(Complex{0.0, 0.0}, Complex{0.3, -0.4}, n, kI) <= 1e-12);

  // u = 1, v = I: Im(u conj(v)) = -1, so the phase is e^{I}.
  CHECK(norm(weyl_phase(Complex{1.0, 0.0}, Complex{0.0, 1.0}, kI) -
             embed(Complex{std::cos(1.0), std::sin(1.0)}, kI)) <= 1e-15);
  CHECK(weyl_commutation_residual(Complex{1.0, 0.0}, Complex{0.0, 1.0}, n, kI) <= 1e-7);

  // W_u composed with W_{-u} is the identity.
  const Complex u{0.7, -0.2};
  const std::size_t s = n + 1;
  const OperatorMatrix comp = matrix(weyl(u, n, kI), n).section(s, s) *
                              matrix(weyl(-u, n, kI), n).section(s, s);
  const std::size_t block = n / 2 + 1;
  CHECK((comp - OperatorMatrix::identity(s)).frobenius_block(block, block) <= 1e-7);

  Rng rng(79);
  for (int rep = 0; rep < 5; ++rep) {
    CHECK(weyl_commutation_residual(rng.unit_disk_complex(), rng.unit_disk_complex(), n, kI) <=
          1e-7);
  }
}

TEST_CASE("commutation residual shrinks with truncation", "[operators]") {
  const Complex u{0.8, 0.1};
  const Complex v{-0.3, 0.6};
  const double r20 = weyl_commutation_residual(u, v, 20, kI);
  const double r40 = weyl_commutation_residual(u, v, 40, kI);
  const double r60 = weyl_commutation_residual(u, v, 60, kI);
  CHECK(r40 <= r20 * (1.0 + 1e-9) + 1e-12);
  CHECK(r60 <= r40 * (1.0 + 1e-9) + 1e-12);
}
