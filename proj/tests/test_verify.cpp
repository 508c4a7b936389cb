#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ccbc/error.hpp"
#include "ccbc/local_search.hpp"
#include "ccbc/minfinder.hpp"
#include "ccbc/nbody.hpp"
#include "ccbc/rational.hpp"
#include "ccbc/verify.hpp"
#include "fixtures.hpp"

using namespace ccbc;

namespace {

Solution make_solution(const Problem& p, const Configuration& q) {
  return Solution{q, objective(p, q.coords()), signature(q), hessian_spectrum(p, q)};
}

Configuration regular_polygon(int n, double phase = 0.0) {
  std::vector<double> c;
  for (int k = 0; k < n; ++k) {
    const double a = phase + 2.0 * std::numbers::pi * k / n;
    c.push_back(std::cos(a));
    c.push_back(std::sin(a));
  }
  return normalize(Problem(n), Configuration(c));
}

SolutionSet central_set(int n) {
  RunConfig c;
  c.ns0 = 400;
  c.subsets = 200;
  c.k_star = 30;
  return run(Problem(n), c).solutions;
}

}  // namespace

TEST_CASE("rational arithmetic") {
  const Rational a(1, 3), b(-1, 2);
  CHECK(a + b == Rational(-1, 6));
  CHECK(a - b == Rational(5, 6));
  CHECK(a * b == Rational(-1, 6));
  CHECK(a / b == Rational(-2, 3));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-1, 6).to_string() == "-1/6");
  CHECK(Rational(3).to_string() == "3");
  CHECK(Rational::parse("-1/6") == Rational(-1, 6));
  CHECK(Rational::parse("1/2") == Rational(1, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  const Rational big(INT64_MAX / 2 + 1, 1);
  CHECK_THROWS_AS(big * Rational(4), std::overflow_error);
  CHECK_THROWS_AS(big + big + big, std::overflow_error);
}

TEST_CASE("basic checks") {
  const Problem p(3);
  const auto tri = fixtures::triangle();
  auto b = basic_checks(p, tri);
  CHECK(b.com_norm < 1e-12);
  CHECK(b.inertia_residual < 1e-12);
  auto shifted = tri;
  for (int i = 0; i < 3; ++i) shifted[2 * i] += 0.1;
  CHECK(basic_checks(p, shifted).com_norm == doctest::Approx(0.1));
  auto scaled = tri;
  for (auto& v : scaled.coords()) v *= 2.0;
  CHECK(basic_checks(p, scaled).inertia_residual == doctest::Approx(3.0));
}

TEST_CASE("Albouy-Chenciner residual") {
  const Problem p3(3);
  CHECK(albouy_chenciner_residual(p3, fixtures::triangle(0.5)) < 1e-12);
  CHECK(albouy_chenciner_residual(p3, fixtures::euler()) < 1e-10);
  const Problem p4(4);
  const auto bent = normalize(p4, Configuration({0, 0, 1, 0, 1.1, 1, 0, 1}));
  CHECK(albouy_chenciner_residual(p4, bent) > 1e-2);
  CHECK(albouy_chenciner_residual(p4, regular_polygon(4)) < 1e-10);
}

TEST_CASE("Morse indices of the three-body solutions") {
  const Problem p(3);
  CHECK(morse_index(p, fixtures::triangle()) == 0);
  CHECK(morse_index(p, fixtures::euler()) == 1);
}

TEST_CASE("negating the spectrum complements the central Morse index") {
  for (const auto& q : {fixtures::triangle(), fixtures::euler()}) {
    const auto ev = hessian_spectrum(Problem(3), q);
    std::vector<double> neg;
    for (double v : ev) neg.push_back(-v);
    CHECK(morse_index(Mode::central, neg) == 2 * 3 - 1 - morse_index(Mode::central, ev));
  }
}

TEST_CASE("degenerate spectra are refused") {
  CHECK_THROWS_AS(morse_index(Mode::central, std::vector<double>{0.0, 1e-17, 1.0}), DomainError);
  CHECK_THROWS_AS(morse_index(Mode::balanced, std::vector<double>{1e-17, 1.0}), DomainError);
  CHECK(morse_index(Mode::balanced, std::vector<double>{-1e-3, 1.0, -2.0}) == 2);
}

TEST_CASE("isotropy index") {
  const Problem p3(3);
  CHECK(isotropy_index(p3, fixtures::euler()) == Rational(2));
  CHECK(isotropy_index(p3, fixtures::triangle()) == Rational(3));
  CHECK(isotropy_index(p3, fixtures::triangle(0.77)) == Rational(3));
  CHECK(isotropy_index(Problem(4), regular_polygon(4, 0.3)) == Rational(4));
  CHECK(isotropy_index(Problem(5), regular_polygon(5, 1.1)) == Rational(5));

  std::mt19937_64 rng(4);
  const Problem p10(10);
  const auto asym = normalize(p10, fixtures::random_config(10, rng));
  CHECK(isotropy_index(p10, asym) == Rational(1, 2));

  // Kite: one reflection axis.
  const Problem p4(4);
  const auto kite = normalize(p4, Configuration({0, 1, -0.6, 0, 0.6, 0, 0, -1.7}));
  CHECK(isotropy_index(p4, kite) == Rational(1));
  for (double a : {0.3, 1.9, 4.4}) CHECK(isotropy_index(p4, rotated(kite, a)) == Rational(1));
}

TEST_CASE("Morse equality") {
  const Problem p3(3);
  SolutionSet s3;
  s3.insert(make_solution(p3, fixtures::triangle()));
  s3.insert(make_solution(p3, fixtures::euler()));
  CHECK(morse_equality_check(p3, s3).is_zero());

  SolutionSet only;
  only.insert(make_solution(p3, fixtures::triangle()));
  CHECK_FALSE(morse_equality_check(p3, only).is_zero());

  const std::pair<int, Rational> idx[] = {{0, Rational(3)}, {1, Rational(2)}};
  CHECK(morse_equality_residual(3, idx).is_zero());

  const auto s4 = central_set(4);
  REQUIRE(s4.size() == 4);
  CHECK(morse_equality_check(Problem(4), s4).is_zero());

  CHECK_THROWS_AS(morse_equality_check(Problem(3, 1.0, 1.0, 0.5), s3), DomainError);
}

TEST_CASE("Krawczyk: one-dimensional identity") {
  const double r = 1e-3;
  const std::vector<double> q{0.0};
  const std::vector<Interval> box{Interval(-r, r)};
  const std::vector<Interval> g{Interval(0.0)};
  IntervalMatrix j(1, 1);
  j(0, 0) = Interval(1.0);
  CHECK(krawczyk_contains(q, box, g, j));
  // g(q) = q - 2r has its zero outside the box.
  const std::vector<Interval> g2{Interval(-2 * r)};
  CHECK_FALSE(krawczyk_contains(q, box, g2, j));
}

TEST_CASE("Krawczyk certificate on analytic roots") {
  const Problem p(3);
  for (const auto& q : {fixtures::triangle(0.6), fixtures::euler()}) {
    const auto k = krawczyk_certificate(p, q, 1e-8);
    CHECK(k.zero_in_f);
    CHECK(k.unique);
    CHECK_FALSE(k.inconclusive);
  }
  auto off = fixtures::triangle(0.6);
  off[0] += 1e-3;
  CHECK_FALSE(krawczyk_certificate(p, off, 1e-8).zero_in_f);
}

TEST_CASE("Krawczyk: shrinking the box never loses uniqueness") {
  for (int n : {4, 5}) {
    const auto set = central_set(n);
    for (const auto& s : set.entries()) {
      const auto a = krawczyk_certificate(Problem(n), s.point, 1e-8);
      const auto b = krawczyk_certificate(Problem(n), s.point, 1e-9);
      CHECK(a.unique);
      if (a.unique) CHECK(b.unique);
    }
  }
}

TEST_CASE("pinned rotation puts the outermost body on +x") {
  const Problem p(4);
  const auto q = rotated(regular_polygon(4), 0.4);
  const auto [r, pin] = pin_rotation(p, q);
  REQUIRE(pin.has_value());
  CHECK(*pin == 0);
  CHECK(r.y(0) == 0.0);
  CHECK(r.x(0) > 0.0);
  CHECK_FALSE(pin_rotation(Problem(4, 1, 1, 0.5), q).second.has_value());
}

TEST_CASE("quadratic test") {
  // Exactly affine residual map: the model is exact.
  Matrix j(3, 3);
  j(0, 0) = 2;
  j(0, 1) = 1;
  j(1, 1) = 3;
  j(2, 2) = -1;
  j(2, 0) = 0.5;
  const std::vector<double> qs{0.3, -0.2, 0.1};
  auto f = [&](std::span<const double> x) {
    std::vector<double> d(3);
    for (int k = 0; k < 3; ++k) d[k] = x[k] - qs[k];
    return j * std::span<const double>(d);
  };
  const auto t = quadratic_rms_test(f, j, qs, 1e-3, 2000, 1);
  CHECK(t.rms < 1e-12);
  CHECK(t.samples == 2000);

  const Problem p(3);
  const auto a = quadratic_rms_test(p, fixtures::triangle(), 1e-3, 4000, 3, Exec::serial);
  const auto b = quadratic_rms_test(p, fixtures::triangle(), 2e-3, 4000, 3, Exec::serial);
  const auto c = quadratic_rms_test(p, fixtures::triangle(), 1e-3, 4000, 3, Exec::parallel);
  CHECK(a.rms > 0.0);
  CHECK(b.rms > a.rms);
  CHECK(a.max_err >= a.rms);
  CHECK(a.rms == c.rms);
}

TEST_CASE("verification levels") {
  const Problem p(3);
  const auto sol = make_solution(p, fixtures::triangle());
  VerifyOptions o;
  o.level = VerifyLevel::none;
  auto r = verify_solution(p, sol, o);
  CHECK_FALSE(r.morse_index.has_value());
  CHECK_FALSE(r.krawczyk.has_value());
  o.level = VerifyLevel::fast;
  r = verify_solution(p, sol, o);
  CHECK(r.morse_index == 0);
  CHECK(r.isotropy_index == Rational(3));
  CHECK(r.ac_residual.has_value());
  CHECK_FALSE(r.quadratic.has_value());
  o.level = VerifyLevel::full;
  o.quadratic_samples = 500;
  r = verify_solution(p, sol, o);
  REQUIRE(r.krawczyk.has_value());
  CHECK(r.krawczyk->unique);
  REQUIRE(r.quadratic.has_value());
  CHECK(r.quadratic->samples == 500);

  const Problem pb(3, 1.0, 1.0, 0.5);
  const auto rb = verify_solution(pb, make_solution(pb, normalize(pb, fixtures::euler())), o);
  CHECK_FALSE(rb.ac_residual.has_value());
  CHECK(parse_verify_level("fast") == VerifyLevel::fast);
  CHECK_THROWS_AS(parse_verify_level("slow"), ConfigError);
}
