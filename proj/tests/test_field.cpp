#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "fermatgaps/field.hpp"

using namespace fermatgaps;

TEST_CASE("deterministic moduli are the smallest-code irreducibles") {
  // expectations computed independently (lex-first monic irreducible over F_p)
  auto mod_of = [](std::uint32_t p, std::uint32_t e, std::uint32_t d) {
    return make_field_tower(p, e, d)->layer(d).modulus();
  };
  CHECK(mod_of(5, 1, 1) == std::vector<std::uint32_t>{2, 0});                    // x^2+2
  CHECK(mod_of(7, 1, 1) == std::vector<std::uint32_t>{1, 0});                    // x^2+1
  CHECK(mod_of(7, 1, 2) == std::vector<std::uint32_t>{1, 1, 0, 0});              // x^4+x+1
  CHECK(mod_of(3, 1, 2) == std::vector<std::uint32_t>{2, 1, 0, 0});              // x^4+x+2
  CHECK(mod_of(13, 1, 1) == std::vector<std::uint32_t>{2, 0});                   // x^2+2
  CHECK(mod_of(11, 1, 2) == std::vector<std::uint32_t>{2, 1, 0, 0});             // x^4+x+2
  CHECK(mod_of(2, 5, 1) ==
        std::vector<std::uint32_t>{1, 0, 0, 1, 0, 0, 0, 0, 0, 0});               // x^10+x^3+1
}

TEST_CASE("construction validation") {
  CHECK_THROWS_AS(make_field_tower(4, 1, 1), std::invalid_argument);  // p not prime
  CHECK_THROWS_AS(make_field_tower(1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_field_tower(3, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_field_tower(3, 1, 40), std::invalid_argument);  // 2ed > 64
  CHECK_THROWS_AS(make_field_tower(13, 3, 3), std::invalid_argument);  // 13^36 overflows
}

TEST_CASE("prime subfield arithmetic: 2 + 4 = 1 in F_5") {
  auto t = make_field_tower(5, 1, 1);
  const FieldLayer& L = t->base();
  CHECK(L.from_int(2) + L.from_int(4) == L.one());
  CHECK(L.from_int(2) * L.from_int(3) == L.from_int(1));
  CHECK(-L.from_int(2) == L.from_int(3));
}

TEST_CASE("field axioms on random samples in F_{7^4}") {
  auto t = make_field_tower(7, 1, 2);
  const FieldLayer& L = t->layer(2);
  std::mt19937_64 rng(7);
  for (int it = 0; it < 100; ++it) {
    Fe x = L.elem(rng() % L.order());
    Fe y = L.elem(rng() % L.order());
    Fe z = L.elem(rng() % L.order());
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x - x == L.zero());
    if (!x.is_zero()) {
      CHECK(x * L.inv(x) == L.one());
      CHECK(L.pow(x, L.order() - 1) == L.one());  // Lagrange
    }
  }
}

TEST_CASE("frobenius_q2 fixes exactly the embedded base field") {
  auto t = make_field_tower(7, 1, 2);
  const FieldLayer& L1 = t->base();
  const FieldLayer& L2 = t->layer(2);
  std::size_t fixed = 0;
  for (std::uint64_t c = 0; c < L2.order(); ++c) {
    if (L2.frobenius_q2(L2.elem(c)) == L2.elem(c)) ++fixed;
  }
  CHECK(fixed == L1.order());  // |F_{q^2}|
  for (std::uint64_t c = 0; c < L1.order(); ++c) {
    Fe img = L2.embed_from_base(L1.elem(c));
    CHECK(L2.frobenius_q2(img) == img);
  }
  // Frobenius composed d times is the identity (q^{2d}-power map)
  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    Fe x = L2.elem(rng() % L2.order());
    CHECK(L2.frobenius_q2(L2.frobenius_q2(x)) == x);
  }
}

TEST_CASE("embedding is an injective ring homomorphism") {
  auto t = make_field_tower(3, 2, 2);  // F_81 -> F_{3^8}
  const FieldLayer& L1 = t->base();
  const FieldLayer& L2 = t->layer(2);
  std::mt19937_64 rng(3);
  std::vector<std::uint64_t> seen;
  for (int it = 0; it < 60; ++it) {
    Fe a = L1.elem(rng() % L1.order());
    Fe b = L1.elem(rng() % L1.order());
    CHECK(L2.embed_from_base(a + b) == L2.embed_from_base(a) + L2.embed_from_base(b));
    CHECK(L2.embed_from_base(a * b) == L2.embed_from_base(a) * L2.embed_from_base(b));
  }
  for (std::uint64_t c = 0; c < L1.order(); ++c) seen.push_back(L2.embed_from_base(L1.elem(c)).code);
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());  // injective
  CHECK(L2.embed_from_base(L1.one()) == L2.one());
}

TEST_CASE("primitive roots of unity") {
  auto t25 = make_field_tower(5, 1, 1);
  const FieldLayer& F25 = t25->base();
  Fe z3 = F25.primitive_root_of_unity(3);
  CHECK(F25.pow(z3, 3) == F25.one());
  CHECK(z3 != F25.one());
  CHECK_THROWS_AS(F25.primitive_root_of_unity(7), std::invalid_argument);  // 7 does not divide 24

  auto t49 = make_field_tower(7, 1, 1);
  const FieldLayer& F49 = t49->base();
  Fe z4 = F49.primitive_root_of_unity(4);
  CHECK(F49.mult_order(z4) == 4);

  // order is exactly n: no proper divisor k of n has z^k = 1
  Fe z12 = F49.primitive_root_of_unity(12);
  for (std::uint64_t k = 1; k < 12; ++k)
    if (12 % k == 0) CHECK(F49.pow(z12, k) != F49.one());
}

TEST_CASE("errors: zero inverse and mixed layers") {
  auto t = make_field_tower(5, 1, 2);
  const FieldLayer& L1 = t->base();
  const FieldLayer& L2 = t->layer(2);
  CHECK_THROWS_AS(L1.inv(L1.zero()), std::domain_error);
  Fe a = L1.from_int(2);
  Fe b = L2.from_int(2);
  CHECK_THROWS_AS((void)(a + b), std::invalid_argument);
  CHECK_THROWS_AS((void)(a * b), std::invalid_argument);
}

TEST_CASE("nth roots: existence, round trip, determinism") {
  auto t = make_field_tower(11, 1, 1);
  const FieldLayer& L = t->base();
  std::mt19937_64 rng(5);
  int have = 0, lack = 0;
  for (int it = 0; it < 200; ++it) {
    Fe x = L.elem(1 + rng() % (L.order() - 1));
    for (std::uint32_t n : {2u, 3u}) {
      if (L.is_nth_power(x, n)) {
        Fe r = L.nth_root(x, n);
        CHECK(L.pow(r, n) == x);
        // smallest-code root: every other root has a larger code
        Fe zeta = L.primitive_root_of_unity(n);
        Fe other = r;
        for (std::uint32_t j = 1; j < n; ++j) {
          other = other * zeta;
          CHECK(r.code <= other.code);
        }
        ++have;
      } else {
        CHECK_THROWS_AS(L.nth_root(x, n), std::domain_error);
        ++lack;
      }
    }
  }
  CHECK(have > 0);
  CHECK(lack > 0);
}

TEST_CASE("nth roots in a characteristic-2 layer") {
  auto t = make_field_tower(2, 5, 1);  // F_{2^10}, group order 1023 = 3 * 11 * 31
  const FieldLayer& L = t->base();
  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    Fe x = L.elem(1 + rng() % (L.order() - 1));
    CHECK(L.nth_root(L.pow(x, 3), 3).code > 0);
    Fe r = L.nth_root(L.pow(x, 3), 3);
    CHECK(L.pow(r, 3) == L.pow(x, 3));
    // squaring is a bijection in even characteristic
    Fe s = L.nth_root(x, 2);
    CHECK(s * s == x);
  }
}

TEST_CASE("concurrent lazy layer construction is safe") {
  auto t = make_field_tower(7, 1, 1);
  std::vector<std::thread> pool;
  std::vector<const FieldLayer*> seen(8, nullptr);
  for (int i = 0; i < 8; ++i)
    pool.emplace_back([&, i] { seen[std::size_t(i)] = &t->layer(2); });
  for (auto& th : pool) th.join();
  for (int i = 1; i < 8; ++i) CHECK(seen[std::size_t(i)] == seen[0]);  // one shared layer
  CHECK(seen[0]->order() == 2401);
}

TEST_CASE("digit codecs round trip") {
  auto t = make_field_tower(13, 1, 2);
  const FieldLayer& L = t->layer(2);
  std::mt19937_64 rng(17);
  for (int it = 0; it < 50; ++it) {
    Fe x = L.elem(rng() % L.order());
    auto d = L.digits(x);
    CHECK(L.from_digits(d) == x);
    CHECK(d.size() == L.degree());
  }
  CHECK_THROWS_AS(L.from_digits(std::vector<std::uint32_t>{13}), std::invalid_argument);
}
