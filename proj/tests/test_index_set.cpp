#include "conecalc/index_set.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace conecalc;
using cdouble = std::complex<double>;

namespace {

// Random truncated sets on a coarse exponent lattice (multiples of 1/4), so
// distinct random exponents can never collide with the merge tolerance and
// structural equality is exact.
IndexSet random_set(std::mt19937& rng) {
  std::uniform_int_distribution<int> cutoff_q(0, 24);   // cutoff in [0, 6]
  std::uniform_int_distribution<int> n_entries(0, 8);
  std::uniform_int_distribution<int> re_q(-8, 24);      // Re in [-2, 6]
  std::uniform_int_distribution<int> im_q(-8, 8);       // Im in [-2, 2]
  std::uniform_int_distribution<int> order(0, 3);
  const double cutoff = 0.25 * cutoff_q(rng);
  IndexSet s(cutoff);
  const int n = n_entries(rng);
  for (int i = 0; i < n; ++i)
    s.insert({0.25 * re_q(rng), 0.25 * im_q(rng)}, order(rng));
  return s;
}

}  // namespace

TEST_CASE("insertion keeps the maximal log order and respects the cutoff") {
  IndexSet s(2.0);
  s.insert({1.0, 0.0}, 1);
  s.insert({1.0, 0.0}, 0);  // lower order at the same exponent: no-op
  CHECK(s.size() == 1);
  CHECK(s.log_order({1.0, 0.0}) == 1);
  s.insert({1.0, 0.0}, 3);
  CHECK(s.log_order({1.0, 0.0}) == 3);
  s.insert({2.5, 0.0}, 0);  // beyond the cutoff: dropped
  CHECK(s.size() == 1);
  CHECK(s.log_order({2.5, 0.0}) == -1);
  CHECK_FALSE(s.contains({2.5, 0.0}));
  CHECK(s.contains({1.0, 0.0}, 2));  // downward closure in k
  CHECK_THROWS_AS(s.insert({0.0, 0.0}, -1), std::domain_error);
}

TEST_CASE("nearby exponents merge into one entry") {
  IndexSet s(2.0);
  s.insert({1.0, 0.5}, 0);
  s.insert({1.0 + 5e-10, 0.5 - 5e-10}, 2);  // same exponent within tolerance
  CHECK(s.size() == 1);
  CHECK(s.log_order({1.0, 0.5}) == 2);
  s.insert({1.0 + 5e-9, 0.5}, 0);  // outside the tolerance: distinct
  CHECK(s.size() == 2);
}

TEST_CASE("empty-set queries have the documented sentinels") {
  IndexSet s(1.0);
  CHECK(s.empty());
  CHECK(s.min_re() == std::numeric_limits<double>::infinity());
  CHECK(s.max_log_order() == -1);
  CHECK_FALSE(s.has_log_terms());
}

TEST_CASE("extended union: worked examples") {
  // Shared exponent bumps the log order to j + k + 1.
  IndexSet E = IndexSet::from_entries({{{0.0, 0.0}, 0}}, 0.0);
  auto u = extended_union(E, E);
  CHECK(u.size() == 1);
  CHECK(u.log_order({0.0, 0.0}) == 1);
  auto exp = u.expanded_entries();
  CHECK(exp.size() == 2);  // (0,0) and (0,1)

  // Disjoint exponents: plain union.
  IndexSet F = IndexSet::from_entries({{{1.0, 0.0}, 0}}, 1.5);
  auto v = extended_union(IndexSet::from_entries({{{0.0, 0.0}, 0}}, 1.5), F);
  CHECK(v.size() == 2);
  CHECK(v.log_order({0.0, 0.0}) == 0);
  CHECK(v.log_order({1.0, 0.0}) == 0);

  // Orders add across the operands: (0,1) with (0,0) gives order 2.
  auto w = extended_union(IndexSet::from_entries({{{0.0, 0.0}, 1}}, 1.0),
                          IndexSet::from_entries({{{0.0, 0.0}, 0}}, 1.0));
  CHECK(w.log_order({0.0, 0.0}) == 2);
  CHECK(w.expanded_entries().size() == 3);
}

TEST_CASE("randomized algebra of truncated index sets") {
  std::mt19937 rng(20240817u);
  int shared_exponent_cases = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    IndexSet E = random_set(rng);
    IndexSet F = random_set(rng);
    IndexSet G = random_set(rng);
    // Seed deliberate exponent collisions so the j+k+1 clause is exercised.
    std::uniform_int_distribution<int> order(0, 3);
    for (const auto& e : E.entries())
      if (rng() % 2 == 0) F.insert(e.z, order(rng));

    // Commutativity and associativity of the extended union, exactly.
    auto EF = extended_union(E, F);
    CHECK(EF == extended_union(F, E));
    CHECK(extended_union(EF, G) == extended_union(E, extended_union(F, G)));

    // Cutoff of the union is the minimum of the operand cutoffs.
    CHECK(EF.cutoff() == doctest::Approx(std::min(E.cutoff(), F.cutoff())));

    // Pointwise log-order law of the extended union.
    for (const auto& e : EF.entries()) {
      const int kE = E.log_order(e.z), kF = F.log_order(e.z);
      if (kE >= 0 && kF >= 0) {
        CHECK(e.k == kE + kF + 1);
        ++shared_exponent_cases;
      } else {
        CHECK(e.k == std::max(kE, kF));
      }
    }
    // Monotonicity: entries of E survive into the union up to its cutoff.
    for (const auto& e : E.entries())
      if (e.z.real() <= EF.cutoff() + 1e-12) CHECK(EF.contains(e.z, e.k));

    // Shift closure: idempotent, contains all nonnegative integer shifts.
    IndexSet H = shift_saturation(E);
    CHECK(shift_saturation(H) == H);
    for (const auto& e : E.entries())
      for (int m = 0;; ++m) {
        cdouble z = e.z + static_cast<double>(m);
        if (z.real() > E.cutoff() + 1e-12) break;
        CHECK(H.contains(z, e.k));
      }

    // The composition envelope doubles the closure's orders plus one.
    IndexSet C = composition_saturation(E);
    for (const auto& e : C.entries())
      CHECK(e.k == 2 * H.log_order(e.z) + 1);
    CHECK(C.cutoff() == doctest::Approx(E.cutoff()));

    // Minkowski sum: exponents add, orders add, the cutoff keeps the result
    // complete (min of cutoff_E + min Re F and cutoff_F + min Re E).
    IndexSet S = set_sum(E, F);
    if (!E.empty() && !F.empty()) {
      CHECK(S.cutoff() == doctest::Approx(std::min(E.cutoff() + F.min_re(),
                                                   F.cutoff() + E.min_re())));
      for (const auto& e : E.entries())
        for (const auto& f : F.entries()) {
          cdouble z = e.z + f.z;
          if (z.real() <= S.cutoff() + 1e-12) CHECK(S.contains(z, e.k + f.k));
        }
    }

    // Shift round trip is exact for representable shifts.
    CHECK(E.shifted({0.5, -1.0}).shifted({-0.5, 1.0}) == E);

    // Truncation only removes entries beyond the new cutoff.
    IndexSet T = E.truncated(E.cutoff() - 0.5);
    for (const auto& e : T.entries()) CHECK(e.z.real() <= T.cutoff() + 1e-12);
    for (const auto& e : E.entries())
      if (e.z.real() <= T.cutoff() + 1e-12) CHECK(T.contains(e.z, e.k));
  }
  CHECK(shared_exponent_cases > 500);  // the generator exercises the j+k+1 clause
}

TEST_CASE("natural-number ladders") {
  auto n0 = IndexSet::naturals(3.2);
  CHECK(n0.size() == 4);  // 0, 1, 2, 3
  CHECK(n0.min_re() == 0.0);
  CHECK_FALSE(n0.has_log_terms());
  auto n1 = IndexSet::positive_integers(3.2);
  CHECK(n1.size() == 3);  // 1, 2, 3
  CHECK(n1.min_re() == 1.0);
  // A negative cutoff admits no naturals: empty but well-formed.
  CHECK(IndexSet::naturals(-1.0).empty());
}

TEST_CASE("indicial roots solve the quadratic with the correct signs") {
  for (int dim : {3, 4, 5}) {
    for (double lsq : {0.0, 2.0, 6.0, 12.0}) {
      const auto r = indicial_roots(dim, lsq);
      for (cdouble sigma : {r.sigma_plus, r.sigma_minus}) {
        // sigma^2 - i (n-2) sigma + lambda^2 = 0
        cdouble p = sigma * sigma -
                    cdouble(0.0, dim - 2.0) * sigma + lsq;
        CHECK(std::abs(p) < 1e-12);
      }
      CHECK(r.sigma_plus.imag() > r.sigma_minus.imag());
      CHECK(r.sigma_plus.real() == 0.0);
      CHECK(r.sigma_minus.real() == 0.0);
    }
  }
  // Zero mode in dim 4: roots 0 and 2i.
  const auto z = indicial_roots(4, 0.0);
  CHECK(z.sigma_minus == cdouble(0.0, 0.0));
  CHECK(z.sigma_plus == cdouble(0.0, 2.0));
  // Sphere modes in dim 3: the root offset r = sqrt(1/4 + l(l+1)) = l + 1/2
  // exactly, so the root lines sit on the integers.
  for (int l = 0; l <= 4; ++l) {
    const auto s = indicial_roots(3, l * (l + 1.0));
    CHECK(s.sigma_minus.imag() == doctest::Approx(-l).epsilon(1e-14));
    CHECK(s.sigma_plus.imag() == doctest::Approx(l + 1.0).epsilon(1e-14));
  }
}

TEST_CASE("boundary spectrum collects root lines up to the cutoff") {
  ConeModel m = make_sphere_model(3, 1.0, 5);
  auto spec = boundary_spectrum(m, 3.0);
  // Lines at Im sigma in {-3,...,4} clipped to |Im| <= 3: integers -3..3.
  CHECK(spec.size() == 7);
  for (int v = -3; v <= 3; ++v) CHECK(spec.contains({0.0, double(v)}));
  CHECK_FALSE(spec.has_log_terms());

  auto win = weight_window(m);
  CHECK(win.lower == doctest::Approx(-1.0));
  CHECK(win.upper == doctest::Approx(0.0));

  IndicialRoot witness;
  CHECK(alpha_on_boundary_spectrum(m, 0.0, &witness));
  CHECK(witness.lambda_sq == 0.0);
  CHECK(alpha_on_boundary_spectrum(m, -1.0));
  CHECK(alpha_on_boundary_spectrum(m, -2.0));      // l = 1 far line
  CHECK_FALSE(alpha_on_boundary_spectrum(m, -0.5));
  CHECK_FALSE(alpha_on_boundary_spectrum(m, -0.5 + 2e-9));
  CHECK(alpha_on_boundary_spectrum(m, 1.0 + 5e-10));  // within tolerance
}

TEST_CASE("resolvent family: worked examples") {
  // dim 3 sphere, alpha in the window: near face starts at 0, far face at n.
  ConeModel m = make_sphere_model(3, 1.0, 6);
  auto fam = resolvent_index_family(m, -0.5, 3.0);
  CHECK(fam.lb.min_re() == doctest::Approx(0.0));
  CHECK(fam.rb.min_re() == doctest::Approx(3.0));
  CHECK(fam.tf == IndexSet::naturals(3.0));
  CHECK(fam.ff.min_re() >= 2.0);  // front face starts at the order shift

  // alpha on the boundary spectrum is rejected with the offending root.
  CHECK_THROWS_AS(resolvent_index_family(m, 0.0, 3.0), std::domain_error);
  CHECK_THROWS_AS(resolvent_index_family(m, -1.0, 3.0), std::domain_error);

  // Single abstract zero mode in dim 4 at alpha = -1: the filtered root
  // exponents are 0 (near) and 2 (far), so the far face leads at 2 + 2 = n.
  ConeModel a;
  a.dim = 4;
  a.x_max = 1.0;
  a.modes = {AngularMode{0, 0.0, 1}};
  a.modes_complete = true;
  auto f2 = resolvent_index_family(a, -1.0, 4.5);
  CHECK(f2.lb.min_re() == doctest::Approx(0.0));
  CHECK(f2.rb.min_re() == doctest::Approx(4.0));
  // Leading entries carry the saturation log order, k = 1.
  CHECK(f2.lb.log_order({0.0, 0.0}) == 1);
  CHECK(f2.rb.log_order({4.0, 0.0}) == 1);
}

TEST_CASE("family does not depend on alpha inside the window") {
  ConeModel m = make_sphere_model(3, 1.0, 6);
  auto ref = resolvent_index_family(m, -0.5, 3.0);
  auto refp = power_index_family(m, -0.5, {-0.75, 0.0}, 3.0);
  for (int i = 0; i < 20; ++i) {
    const double alpha = -0.979 + 0.96 * i / 19.0;  // in (-1, 0), off lines
    CAPTURE(alpha);
    CHECK(resolvent_index_family(m, alpha, 3.0) == ref);
    CHECK(power_index_family(m, alpha, {-0.75, 0.0}, 3.0) == refp);
  }
}

TEST_CASE("power family: worked examples") {
  ConeModel m = make_sphere_model(3, 1.0, 6);
  auto res = resolvent_index_family(m, -0.5, 3.0);

  // w = -1 reproduces the resolvent family exactly.
  auto fm1 = power_index_family(m, -0.5, {-1.0, 0.0}, 3.0);
  CHECK(fm1.ff == res.ff);
  CHECK(fm1.lb == res.lb);
  CHECK(fm1.rb == res.rb);

  // w = 0: the identity's leading front-face term (0, 0) is present.
  auto f0 = power_index_family(m, -0.5, {0.0, 0.0}, 3.0);
  CHECK(f0.ff.contains({0.0, 0.0}));
  CHECK(f0.ff.min_re() == doctest::Approx(0.0));
  CHECK(f0.ff.log_order({0.0, 0.0}) == 0);

  // w = -1/4: leading front-face exponent -2w = 1/2 with no log factor.
  auto fq = power_index_family(m, -0.5, {-0.25, 0.0}, 3.0);
  CHECK(fq.ff.min_re() == doctest::Approx(0.5));
  CHECK(fq.ff.log_order({0.5, 0.0}) == 0);

  // The strict-dominance filter: exponents at the threshold keep only the
  // log-free part, exponents above survive with their orders.
  for (const auto& e : fq.ff.entries()) {
    if (std::abs(e.z.real() - 0.5) <= 1e-12) CHECK(e.k == 0);
  }
}

TEST_CASE("truncated mode lists limit certifiable cutoffs") {
  // l_max = 1 covers only a narrow strip of exponents; a large requested
  // cutoff cannot be certified complete and is rejected.
  ConeModel shallow = make_sphere_model(3, 1.0, 1);
  CHECK_THROWS_AS(resolvent_index_family(shallow, -0.5, 3.0),
                  std::invalid_argument);
  // The same spectrum declared complete (abstract model) is accepted.
  ConeModel abstract = shallow;
  abstract.modes_complete = true;
  CHECK_NOTHROW(resolvent_index_family(abstract, -0.5, 3.0));
  // And deeper sphere truncations restore certifiability.
  CHECK_NOTHROW(resolvent_index_family(make_sphere_model(3, 1.0, 8), -0.5,
                                       3.0));
}

TEST_CASE("serialization is human readable and ordered") {
  IndexSet s(2.0);
  s.insert({1.0, -0.5}, 2);
  s.insert({0.0, 0.0}, 0);
  const std::string text = s.to_string();
  CHECK(text.find('0') != std::string::npos);
  // Entries come out sorted by (Re, Im).
  const auto& e = s.entries();
  REQUIRE(e.size() == 2);
  CHECK(e[0].z.real() == 0.0);
  CHECK(e[1].z.real() == 1.0);
  CHECK(e[1].k == 2);
}
