#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "rgrad/errors.hpp"
#include "rgrad/word.hpp"

using namespace rgrad;
using fixtures::letter;

namespace {

const Letter a(0, false), A(0, true), b(1, false), B(1, true);

}  // namespace

TEST_CASE("free_reduce cancels adjacent inverse pairs") {
  CHECK(free_reduce(std::vector<Letter>{a, A}).empty());
  CHECK(free_reduce(std::vector<Letter>{a, b, B, a}) == Word{a, a});
  CHECK(free_reduce(std::vector<Letter>{}).empty());
  CHECK(free_reduce(std::vector<Letter>{a, b, A, a, B, A}).empty());
}

TEST_CASE("letter codes order x0 < x0' < x1 < x1'") {
  CHECK(a.code() == 0);
  CHECK(A.code() == 1);
  CHECK(b.code() == 2);
  CHECK(a.inverse() == A);
  CHECK(B.generator() == 1);
  CHECK(B.sign() == -1);
}

TEST_CASE("products, inverses and powers stay reduced") {
  Word w{a, b};
  CHECK((w * w.inverse()).empty());
  CHECK(w.inverse() == Word{B, A});
  CHECK(w.power(3).size() == 6);
  CHECK(w.power(-2) == Word{B, A, B, A});
  CHECK(w.power(0).empty());
  CHECK(Word::generator_power(1, -3) == Word{B, B, B});
  CHECK_THROWS_AS(Word{a}.power(100, 10), BudgetExhausted);
}

TEST_CASE("commutator is x^-1 y^-1 x y") {
  CHECK(commutator(Word{a}, Word{b}) == Word{A, B, a, b});
  CHECK(commutator(Word{a}, Word{a}).empty());
}

TEST_CASE("cyclic reduction and canonical forms") {
  Word w{b, a, b, B};
  CHECK(w == Word{b, a});
  CHECK(Word{b, a, a, B}.cyclically_reduced() == Word{a, a});
  CHECK(cyclic_canonical(Word{b, a}) == cyclic_canonical(Word{a, b}));
  CHECK(cyclic_canonical(Word{a, b}) == cyclic_canonical(Word{B, A}));
  CHECK(cyclic_canonical(Word{a, b}) != cyclic_canonical(Word{a, B}));
}

TEST_CASE("primitive roots and powers of a relator") {
  auto [root, k] = primitive_root(Word{a, b}.power(3));
  CHECK(k == 3);
  CHECK(root == Word{a, b});
  CHECK(primitive_root(Word{a, a, b}).second == 1);
  CHECK(cyclic_power_of(Word{a}.power(2), Word{a}) == 2);
  CHECK(cyclic_power_of(Word{A}, Word{a}) == -1);
  CHECK(cyclic_power_of(Word{b, a}.power(2), Word{a, b}) == 2);
  CHECK_FALSE(cyclic_power_of(Word{b}, Word{a}).has_value());
}

TEST_CASE("exponent sums") {
  auto s = exponent_sums(Word{a, a, b, A, B, B}, 3);
  CHECK(s == std::vector<long long>{1, -1, 0});
}

TEST_CASE("shortlex orders by length first") {
  CHECK(shortlex_less(Word{b}, Word{a, a}));
  CHECK(shortlex_less(Word{a}, Word{A}));
  CHECK(shortlex_less(Word{}, Word{a}));
  CHECK_FALSE(shortlex_less(Word{a}, Word{a}));
}

TEST_CASE("random words: inverse and reduction laws") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Word u = fixtures::random_word(rng, 3, 12);
    Word v = fixtures::random_word(rng, 3, 12);
    CHECK((u * v).inverse() == v.inverse() * u.inverse());
    CHECK((u * u.inverse()).empty());
    for (std::size_t j = 1; j < u.size(); ++j) CHECK(u[j] != u[j - 1].inverse());
    Word c = u.cyclically_reduced();
    if (c.size() > 1) CHECK(c[0] != c[c.size() - 1].inverse());
  }
}
