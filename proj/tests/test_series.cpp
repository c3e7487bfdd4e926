#include <catch2/catch_amalgamated.hpp>

#include "qfock/fock.hpp"
#include "qfock/random.hpp"
#include "qfock/series.hpp"

using namespace qfock;

namespace {

const UnitImaginary kI = UnitImaginary::i();
const UnitImaginary kJ = UnitImaginary::j();

double coeff_distance(const QSeries& a, const QSeries& b) {
  double m = 0.0;
  for (int n = 0; n <= std::max(a.degree(), b.degree()); ++n) {
    m = std::max(m, norm(a.coeff(n) - b.coeff(n)));
  }
  return m;
}

double coeff_distance(const SplitSeries& a, const SplitSeries& b) {
  double m = 0.0;
  for (int n = 0; n <= std::max(a.degree(), b.degree()); ++n) {
    m = std::max(m, std::abs(a.f_coeff(n) - b.f_coeff(n)));
    m = std::max(m, std::abs(a.g_coeff(n) - b.g_coeff(n)));
  }
  return m;
}

}  // namespace

TEST_CASE("split of p*k over the (i, j) frame", "[series]") {
  const QSeries f = QSeries::monomial(1, Quaternion::k());
  const SplitSeries s = to_split(f, kI, kJ);
  CHECK(std::abs(s.f_coeff(1)) == 0.0);
  CHECK(s.g_coeff(1) == Complex{0.0, 1.0});  // k = (i) * j
  CHECK(std::abs(s.f_coeff(0)) == 0.0);
  CHECK(std::abs(s.g_coeff(0)) == 0.0);
}

TEST_CASE("split of a real-coefficient series has no second component", "[series]") {
  const QSeries f = QSeries::monomial(2);
  const SplitSeries s = to_split(f, kI, kJ);
  CHECK(s.f_coeff(2) == Complex{1.0, 0.0});
  for (int n = 0; n <= 2; ++n) CHECK(std::abs(s.g_coeff(n)) == 0.0);
}

TEST_CASE("split round trip is exact", "[series]") {
  Rng rng(11);
  const UnitImaginary I = rng.unit_imaginary();
  const UnitImaginary J = orthogonal_unit(I);
  for (int rep = 0; rep < 20; ++rep) {
    const QSeries f = rng.polynomial(12);
    CHECK(coeff_distance(to_qseries(to_split(f, I, J)), f) <= 1e-15);
  }
  CHECK_THROWS_AS(to_split(QSeries::one(), kI, kI), NonOrthogonalUnitsError);
}

TEST_CASE("star of single terms and identity", "[series]") {
  const QSeries pi = QSeries::monomial(1, Quaternion::i());
  const QSeries pj = QSeries::monomial(1, Quaternion::j());
  const QSeries prod = star(pi, pj);
  CHECK(prod.degree() == 2);
  CHECK(prod.coeff(2) == Quaternion::k());
  CHECK(norm(prod.coeff(0)) + norm(prod.coeff(1)) == 0.0);

  Rng rng(5);
  const QSeries f = rng.polynomial(7);
  CHECK(coeff_distance(star(f, QSeries::one()), f) == 0.0);
  CHECK(coeff_distance(star(QSeries::one(), f), f) == 0.0);
}

TEST_CASE("star agrees with the split-form product", "[series]") {
  Rng rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    const UnitImaginary I = rng.unit_imaginary();
    const UnitImaginary J = orthogonal_unit(I);
    const QSeries f = rng.polynomial(8);
    const QSeries g = rng.polynomial(6);
    const QSeries via_split = to_qseries(star_split(to_split(f, I, J), to_split(g, I, J)));
    CHECK(coeff_distance(via_split, star(f, g)) <= 1e-13);
  }
}

TEST_CASE("star is associative and distributes over addition", "[series]") {
  Rng rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    const QSeries f = rng.polynomial(5);
    const QSeries g = rng.polynomial(6);
    const QSeries h = rng.polynomial(4);
    CHECK(coeff_distance(star(star(f, g), h), star(f, star(g, h))) <= 1e-13);
    CHECK(coeff_distance(star(f, g + h), star(f, g) + star(f, h)) <= 1e-13);
  }
}

TEST_CASE("star of real-coefficient series is the ordinary product", "[series]") {
  // (1 + 2p)(3 + p) = 3 + 7p + 2p^2, coefficients stay real.
  const QSeries f(std::vector<Quaternion>{Quaternion(1.0), Quaternion(2.0)});
  const QSeries g(std::vector<Quaternion>{Quaternion(3.0), Quaternion(1.0)});
  const QSeries prod = star(f, g);
  CHECK(prod.coeff(0) == Quaternion(3.0));
  CHECK(prod.coeff(1) == Quaternion(7.0));
  CHECK(prod.coeff(2) == Quaternion(2.0));
}

TEST_CASE("constant J times a first-component series conjugates it", "[series]") {
  Rng rng(29);
  const SplitSeries j_const = SplitSeries::constant(kI, kJ, Complex{0.0, 0.0}, Complex{1.0, 0.0});
  std::vector<Complex> h(6);
  for (auto& z : h) z = rng.unit_disk_complex();
  const SplitSeries hs{kI, kJ, h, std::vector<Complex>(6)};
  const SplitSeries prod = star_split(j_const, hs);
  for (int n = 0; n < 6; ++n) {
    CHECK(std::abs(prod.f_coeff(n)) == 0.0);
    CHECK(prod.g_coeff(n) == std::conj(h[std::size_t(n)]));
  }

  // Frame mismatch is rejected.
  const SplitSeries other = SplitSeries::constant(kJ, UnitImaginary::k(), Complex{1.0, 0.0});
  CHECK_THROWS_AS(star_split(j_const, other), SliceMismatchError);
}

TEST_CASE("first-component-only split product is the pointwise product", "[series]") {
  std::vector<Complex> a{{1.0, 0.5}, {0.0, -2.0}};
  std::vector<Complex> b{{2.0, 0.0}, {1.0, 1.0}};
  const SplitSeries fa{kI, kJ, a, std::vector<Complex>(2)};
  const SplitSeries fb{kI, kJ, b, std::vector<Complex>(2)};
  const SplitSeries prod = star_split(fa, fb);
  CHECK(std::abs(prod.f_coeff(0) - a[0] * b[0]) <= 1e-15);
  CHECK(std::abs(prod.f_coeff(1) - (a[0] * b[1] + a[1] * b[0])) <= 1e-15);
  CHECK(std::abs(prod.f_coeff(2) - a[1] * b[1]) <= 1e-15);
  for (int n = 0; n <= 2; ++n) CHECK(std::abs(prod.g_coeff(n)) == 0.0);
}

TEST_CASE("eval_slice basics", "[series]") {
  const SplitSeries c = SplitSeries::constant(kI, kJ, Complex{0.25, -1.0}, Complex{0.5, 2.0});
  const SlicePoint z{-0.3, 1.7, kI};
  CHECK(approx_equal(eval_slice(c, z), merge_coefficient({0.25, -1.0}, {0.5, 2.0}, kI, kJ),
                     1e-15));

  const SplitSeries ident{kI, kJ, {Complex{0.0, 0.0}, Complex{1.0, 0.0}}, std::vector<Complex>(2)};
  const SlicePoint w{2.0, 3.0, kI};
  CHECK(approx_equal(eval_slice(ident, w), Quaternion{2.0, 3.0, 0.0, 0.0}, 1e-15));

  CHECK_THROWS_AS(eval_slice(ident, SlicePoint{2.0, 3.0, kJ}), SliceMismatchError);
}

TEST_CASE("truncated exponential series evaluates to e at one", "[series]") {
  std::vector<Complex> coeffs(26);
  double fact = 1.0;
  for (int n = 0; n <= 25; ++n) {
    if (n > 0) fact *= double(n);
    coeffs[std::size_t(n)] = Complex{1.0 / fact, 0.0};
  }
  const SplitSeries exps{kI, kJ, coeffs, std::vector<Complex>(26)};
  const Quaternion v = eval_slice(exps, SlicePoint{1.0, 0.0, kI});
  CHECK(std::abs(v.real() - std::exp(1.0)) < 1e-15);
  CHECK(imag_norm(v) == 0.0);
}

TEST_CASE("direct evaluation matches the two-slice reconstruction", "[series]") {
  const QSeries sq = QSeries::monomial(2);
  const Quaternion q{0.0, 1.0, 1.0, 0.0};  // i + j
  CHECK(approx_equal(eval(sq, q), Quaternion(-2.0), 1e-14));

  Rng rng(31);
  for (int rep = 0; rep < 25; ++rep) {
    const QSeries f = rng.polynomial(12);
    const Quaternion q3 = rng.ball_quaternion(3.0);
    // Scale-aware comparison: values grow like sum |q|^n.
    double scale = 0.0, pw = 1.0;
    for (int n = 0; n <= f.degree(); ++n, pw *= norm(q3)) scale += pw;
    const auto check = eval_checked(f, q3);
    CHECK(check.residual <= 1e-12 * scale);
  }

  // Real argument: both paths coincide exactly.
  const auto real_check = eval_checked(rng.polynomial(9), Quaternion(0.8));
  CHECK(real_check.residual == 0.0);
}

TEST_CASE("affine composition on monomials", "[series]") {
  const AffineSymbol phi{Complex{0.5, 0.25}, Complex{-1.0, 2.0}, kI};
  const QSeries h = QSeries::monomial(1);
  const QSeries composed = compose_affine(h, phi);
  CHECK(approx_equal(composed.coeff(0), embed(phi.b, kI), 1e-15));
  CHECK(approx_equal(composed.coeff(1), embed(phi.a, kI), 1e-15));

  const AffineSymbol unit_shift{Complex{1.0, 0.0}, Complex{1.0, 0.0}, kI};
  const QSeries sq = compose_affine(QSeries::monomial(2), unit_shift);
  CHECK(approx_equal(sq.coeff(0), Quaternion(1.0), 1e-15));
  CHECK(approx_equal(sq.coeff(1), Quaternion(2.0), 1e-15));
  CHECK(approx_equal(sq.coeff(2), Quaternion(1.0), 1e-15));
}

TEST_CASE("affine composition matches evaluation", "[series]") {
  Rng rng(37);
  for (int rep = 0; rep < 5; ++rep) {
    const QSeries h = rng.polynomial(9);
    const AffineSymbol phi{rng.unit_disk_complex(), rng.unit_disk_complex(), kI};
    const QSeries composed = compose_affine(h, phi);
    const SplitSeries cs = to_split(composed, kI, kJ);
    const SplitSeries hs = to_split(h, kI, kJ);
    for (int t = 0; t < 20; ++t) {
      const Complex z = 2.0 * rng.unit_disk_complex();
      const Quaternion lhs = eval_slice(cs, SlicePoint{z, kI});
      const Quaternion rhs = eval_slice(hs, SlicePoint{phi(z), kI});
      CHECK(norm(lhs - rhs) <= 1e-12 * std::max(1.0, norm(rhs)));
    }
  }
}

TEST_CASE("pointwise identity of the regular product", "[series]") {
  Rng rng(41);

  // Constant first factor gives a residual of zero.
  const QSeries g0 = rng.polynomial(6);
  CHECK(star_pointwise_check(QSeries::one(), g0, rng.ball_quaternion(1.0)) <= 1e-15);

  // At real points the product reduces to the plain pointwise product.
  for (int rep = 0; rep < 10; ++rep) {
    const QSeries f = rng.polynomial(6);
    const QSeries g = rng.polynomial(6);
    const Quaternion p{rng.uniform(-1.0, 1.0)};
    const double residual = norm(eval(star(f, g), p) - eval(f, p) * eval(g, p));
    CHECK(residual <= 1e-13);
  }

  for (int rep = 0; rep < 50; ++rep) {
    const QSeries f = rng.polynomial(8);
    const QSeries g = rng.polynomial(8);
    CHECK(star_pointwise_check(f, g, rng.ball_quaternion(1.0)) <= 1e-10);
  }
}

TEST_CASE("binomial helper", "[series]") {
  CHECK(binomial(10, 3) == 120.0);
  CHECK(binomial(128, 64) == Catch::Approx(2.3951146041928083e37).epsilon(1e-12));
  CHECK(binomial(200, 2) == Catch::Approx(19900.0));
  CHECK(binomial(5, -1) == 0.0);
  CHECK(binomial(5, 6) == 0.0);
}
