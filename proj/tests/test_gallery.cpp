#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "semilab/gallery.hpp"

using namespace semilab;

namespace {

std::string fact(Fixture const& fx, std::string const& key) {
  for (auto const& [k, v] : fx.facts)
    if (k == key) return v;
  return {};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (Error const& e) {
    return e.code();
  }
  FAIL("expected semilab::Error");
  return ErrorCode::InvalidArgument;
}

std::vector<std::int64_t> ints(FuncOnS const& f) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(std::stoll(f[i].to_string()));
  return out;
}

}  // namespace

TEST_CASE("every gallery fixture holds on load") {
  auto all = run_gallery();
  CHECK(all.size() == 7);
  for (auto const& fx : all) {
    INFO(fx.name);
    CHECK(fx.ok());
    for (auto const& c : fx.checks) {
      INFO(c.law);
      CHECK(c.holds);
    }
  }
}

TEST_CASE("GL_2(F_3): L(y) acts on V by y itself") {
  auto fx = fixture_gl({1, 0});
  CHECK(fact(fx, "order") == "48");
  CHECK(fact(fx, "rank") == "2");
  // Independent check: f_i(A) = A_i1, so f_i(yx) = sum_j y_ij f_j(x).
  auto c = make_gl(2, 3);
  auto const& f1 = fx.function("f1");
  auto const& f2 = fx.function("f2");
  for (std::size_t y = 0; y < 48; ++y) {
    auto const& m = c.element_data[y];
    for (std::size_t x = 0; x < 48; ++x) {
      auto yx = c.semigroup.mul(y, x);
      CHECK(f1[yx] == Scalar(f1.field(), m[0]) * f1[x] + Scalar(f1.field(), m[1]) * f2[x]);
      CHECK(f2[yx] == Scalar(f1.field(), m[2]) * f1[x] + Scalar(f1.field(), m[3]) * f2[x]);
    }
  }
  for (auto v : {std::vector<std::int64_t>{0, 1}, {1, 1}, {2, 1}}) CHECK(fixture_gl(v).ok());
  CHECK(code_of([] { fixture_gl({0, 0}); }) == ErrorCode::ZeroVector);
  CHECK(code_of([] { fixture_gl({3, 6}); }) == ErrorCode::ZeroVector);
  CHECK(code_of([] { fixture_gl({1}); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("S_3: L((1 2)) f_1 = f_2") {
  auto fx = fixture_sym(3, 1);
  auto c = make_symmetric_group(3);
  std::optional<std::size_t> swap;
  for (std::size_t a = 0; a < 6; ++a)
    if (c.element_data[a] == std::vector<std::int64_t>{1, 0, 2}) swap = a;
  REQUIRE(swap);
  CHECK(apply_L(c.semigroup, *swap, fx.function("f1")) == fx.function("f2"));
  auto id = *c.semigroup.identity();
  for (std::string k : {"f1", "f2", "f3"}) CHECK(apply_L(c.semigroup, id, fx.function(k)) == fx.function(k));
  CHECK(fact(fx, "rank") == "3");
}

TEST_CASE("S_n fixtures reproduce rank n for every base point") {
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t j0 = 1; j0 <= n; ++j0) {
      auto fx = fixture_sym(n, j0);
      INFO(fx.name);
      CHECK(fx.ok());
      CHECK(fact(fx, "rank") == std::to_string(n));
      std::vector<std::vector<std::int64_t>> fam;
      for (std::size_t i = 1; i <= n; ++i) fam.push_back(ints(fx.function("f" + std::to_string(i))));
      CHECK(oracle::rank_by_span(fam, 2) == static_cast<std::int64_t>(n));
    }
  CHECK(code_of([] { fixture_sym(5, 1); }) == ErrorCode::BadIndex);
  CHECK(code_of([] { fixture_sym(1, 1); }) == ErrorCode::BadIndex);
  CHECK(code_of([] { fixture_sym(3, 0); }) == ErrorCode::BadIndex);
  CHECK(code_of([] { fixture_sym(3, 4); }) == ErrorCode::BadIndex);
}

TEST_CASE("rotation group: the rotation taking e_1 to e_2 acts by itself") {
  auto fx = fixture_rotation();
  CHECK(fx.ok());
  CHECK(fact(fx, "order") == "24");
  CHECK(fact(fx, "rank") == "3");
  auto c = make_rotation_group_24();
  auto const& f1 = fx.function("f1");
  auto const& f2 = fx.function("f2");
  auto const& f3 = fx.function("f3");
  Field q = Field::rational();
  std::size_t hits = 0;
  for (std::size_t y = 0; y < 24; ++y) {
    auto const& m = c.element_data[y];
    if (m[0] != 0 || m[3] != 1 || m[6] != 0) continue;
    ++hits;
    for (std::size_t x = 0; x < 24; ++x) {
      auto yx = c.semigroup.mul(y, x);
      std::vector<FuncOnS const*> fs{&f1, &f2, &f3};
      for (std::size_t i = 0; i < 3; ++i) {
        Scalar expected = Scalar::zero(q);
        for (std::size_t j = 0; j < 3; ++j) expected += Scalar(q, m[i * 3 + j]) * (*fs[j])[x];
        CHECK((*fs[i])[yx] == expected);
      }
    }
  }
  // Rotations fixing e_2 as the image of e_1: a 4-element coset.
  CHECK(hits == 4);
}

TEST_CASE("CHAR-Z4 over F_5 has the computed character values") {
  auto fx = fixture_char_z4(5);
  CHECK(fx.ok());
  CHECK(fact(fx, "omega") == "2");
  // f(k) = (2^k - 3^k) / 2 and g(k) = (2^k + 3^k) / 2 mod 5, with 1/2 = 3.
  std::vector<std::int64_t> f, g;
  std::int64_t a = 1, b = 1;
  for (int k = 0; k < 4; ++k) {
    f.push_back(oracle::mod((a - b) * 3, 5));
    g.push_back(oracle::mod((a + b) * 3, 5));
    a = a * 2 % 5;
    b = b * 3 % 5;
  }
  CHECK(f == std::vector<std::int64_t>{0, 2, 0, 3});
  CHECK(ints(fx.function("f")) == f);
  CHECK(ints(fx.function("g")) == g);
  CHECK(oracle::rank_by_span({f, g}, 5) == 2);
  CHECK(fact(fx, "constants") == "(0 mod 5, 1 mod 5, 1 mod 5, 0 mod 5)");
  CHECK(fact(fx, "sine_branch") == "beta=+1");
  CHECK(fixture_char_z4(13).ok());
  CHECK(code_of([] { fixture_char_z4(7); }) == ErrorCode::BadPrime);
}

TEST_CASE("SGN-S3 is independent at p = 5 and central on all pairs") {
  auto fx = fixture_sign_s3(5);
  CHECK(fx.ok());
  CHECK(fact(fx, "independent") == "true");
  CHECK(fact(fx, "sine_branch") == "beta=+1");
  auto c = make_symmetric_group(3);
  auto const& f = fx.function("f");
  for (std::size_t x = 0; x < 6; ++x)
    for (std::size_t y = 0; y < 6; ++y) {
      CHECK(f[c.semigroup.mul(x, y)] == f[c.semigroup.mul(y, x)]);
      for (std::size_t z = 0; z < 6; ++z)
        CHECK(f[c.semigroup.mul(c.semigroup.mul(x, y), z)] == f[c.semigroup.mul(c.semigroup.mul(x, z), y)]);
    }
  CHECK(fixture_sign_s3(3).ok());
}

TEST_CASE("ODD-Z3 lands on the beta = -1 branch") {
  auto fx = fixture_odd_z3(7);
  CHECK(fx.ok());
  CHECK(fact(fx, "sine_branch") == "beta=-1");
  CHECK(fact(fx, "f_parity") == "odd");
  CHECK(fact(fx, "a") == "0 mod 7");
  CHECK(code_of([] { fixture_odd_z3(5); }) == ErrorCode::BadPrime);
}
