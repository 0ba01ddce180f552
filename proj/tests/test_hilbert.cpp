#include <doctest.h>

#include <random>
#include <set>

#include "spinbus/hilbert.hpp"
#include "support/reference.hpp"

using namespace spinbus;

TEST_CASE("snake node map") {
  CHECK(node_to_site({1}, 2) == Site{1, 1});
  CHECK(node_to_site({2}, 2) == Site{2, 1});
  CHECK(node_to_site({3}, 2) == Site{2, 2});
  CHECK(node_to_site({4}, 2) == Site{1, 2});
  CHECK(node_to_site({5}, 3) == Site{1, 3});
  CHECK(node_to_site({6}, 3) == Site{2, 3});
  for (int L = 2; L <= kMaxRungs; ++L) {
    CHECK(node_to_site({1}, L) == Site{1, 1});
    std::set<int> bits;
    for (int n = 1; n <= 2 * L; ++n) {
      const Site s = node_to_site({n}, L);
      CHECK(site_to_node(s, L) == Node{n});
      bits.insert(site_bit(s, L));
      // consecutive nodes are nearest neighbours on the ladder
      if (n > 1) {
        const Site p = node_to_site({n - 1}, L);
        CHECK(std::abs(p.chain - s.chain) + std::abs(p.rung - s.rung) == 1);
      }
    }
    CHECK(bits.size() == static_cast<std::size_t>(2 * L));
  }
}

TEST_CASE("node and site range errors") {
  CHECK_THROWS_AS(node_to_site({0}, 2), DomainError);
  CHECK_THROWS_AS(node_to_site({5}, 2), DomainError);
  CHECK_THROWS_AS(site_to_node({3, 1}, 2), DomainError);
  CHECK_THROWS_AS(site_to_node({1, 3}, 2), DomainError);
  CHECK_THROWS_AS(validate_rungs(0), DomainError);
  CHECK_THROWS_AS(validate_rungs(kMaxRungs + 1), DomainError);
}

TEST_CASE("sector sizes") {
  CHECK(Basis::sector(2, 0).size() == 6);
  CHECK(Basis::sector(2, 2).size() == 1);
  CHECK(Basis::sector(2, 2).state(0) == 0b1111U);
  CHECK(Basis::sector(3, 0).size() == 20);
  CHECK_THROWS_AS(Basis::sector(2, 3), DomainError);
  for (int L = 2; L <= 6; ++L) {
    for (int sz = -L; sz <= L; ++sz) CHECK(Basis::sector(L, sz).size() == binomial(2 * L, L + sz));
  }
}

TEST_CASE("sectors are sorted, disjoint and exhaustive") {
  for (int L = 2; L <= 5; ++L) {
    std::vector<int> seen(std::size_t{1} << (2 * L), 0);
    for (const auto& b : all_sectors(L)) {
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) CHECK(b.state(i - 1) < b.state(i));
        CHECK(total_sz(b.state(i), L) == *b.sz());
        CHECK(b.index(b.state(i)) == static_cast<std::int64_t>(i));
        ++seen[b.state(i)];
      }
    }
    for (int c : seen) CHECK(c == 1);
  }
}

TEST_CASE("basic spin action") {
  const Basis full = Basis::full(2);
  const Site s{1, 1};
  const State up = State{1} << site_bit(s, 2);
  CVector v = CVector::Zero(16);
  v[up] = 1;
  const CVector z = apply_spin(s, Axis::z, v, full);
  CHECK(std::abs(z[up] - 0.5) < 1e-15);
  const CVector x = apply_spin(s, Axis::x, v, full);
  CHECK(std::abs(x[0] - 0.5) < 1e-15);
  CHECK(std::abs(x.norm() - 0.5) < 1e-15);
}

TEST_CASE("apply_spin matches Kronecker operators") {
  std::mt19937_64 rng(7);
  for (int L : {2, 3}) {
    const Basis full = Basis::full(L);
    const CVector v = ref::random_vector(static_cast<Eigen::Index>(full.size()), rng);
    for (int c = 1; c <= 2; ++c)
      for (int r = 1; r <= L; ++r)
        for (Axis a : kAxes) {
          const auto dense = ref::site_op(2 * L, ref::bit_of(c, r, L), ref::spin(a));
          CHECK((apply_spin({c, r}, a, v, full) - dense * v).norm() < 1e-13);
        }
  }
}

TEST_CASE("spin operator algebra on random vectors") {
  std::mt19937_64 rng(11);
  const int L = 3;
  const Basis full = Basis::full(L);
  const auto n = static_cast<Eigen::Index>(full.size());
  const CVector u = ref::random_vector(n, rng);
  const CVector v = ref::random_vector(n, rng);
  const Complex i{0, 1};
  for (int c = 1; c <= 2; ++c) {
    for (int r = 1; r <= L; ++r) {
      const Site s{c, r};
      CVector casimir = CVector::Zero(n);
      for (Axis a : kAxes) {
        // Hermitian
        CHECK(std::abs(u.dot(apply_spin(s, a, v, full)) - apply_spin(s, a, u, full).dot(v)) < 1e-12);
        casimir += apply_spin(s, a, apply_spin(s, a, v, full), full);
      }
      CHECK((casimir - 0.75 * v).norm() < 1e-12);
      const CVector xy = apply_spin(s, Axis::x, apply_spin(s, Axis::y, v, full), full);
      const CVector yx = apply_spin(s, Axis::y, apply_spin(s, Axis::x, v, full), full);
      CHECK((xy - yx - i * apply_spin(s, Axis::z, v, full)).norm() < 1e-12);
      // distinct sites commute
      const Site t{3 - c, r};
      for (Axis a : kAxes)
        for (Axis b : kAxes) {
          const CVector ab = apply_spin(s, a, apply_spin(t, b, v, full), full);
          const CVector ba = apply_spin(t, b, apply_spin(s, a, v, full), full);
          CHECK((ab - ba).norm() < 1e-12);
        }
    }
  }
}

TEST_CASE("sector-resolved spin action") {
  std::mt19937_64 rng(3);
  const int L = 3;
  const Basis full = Basis::full(L);
  const Basis s0 = Basis::sector(L, 0);
  const Basis up1 = Basis::sector(L, 1);
  const Site site{2, 3};
  const State mask = State{1} << site_bit(site, L);
  CVector v = ref::random_vector(static_cast<Eigen::Index>(s0.size()), rng);

  CHECK((embed(apply_spin(site, Axis::z, v, s0), s0) - apply_spin(site, Axis::z, embed(v, s0), full)).norm() < 1e-14);

  // Keep only components with the site down: s^x then raises Sz by one.
  for (std::size_t i = 0; i < s0.size(); ++i) {
    if (s0.state(i) & mask) v[static_cast<Eigen::Index>(i)] = 0;
  }
  const CVector raised = apply_spin(site, Axis::x, v, s0, up1);
  CHECK((embed(raised, up1) - apply_spin(site, Axis::x, embed(v, s0), full)).norm() < 1e-14);

  CHECK_THROWS_AS(apply_spin(site, Axis::x, v, s0), DomainError);
  CHECK_THROWS_AS(apply_spin(site, Axis::z, v, up1), DomainError);
  CHECK_THROWS_AS(apply_spin({3, 1}, Axis::z, v, s0), DomainError);
}
