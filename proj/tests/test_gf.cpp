#include <cstdint>
#include <vector>

#include "doctest.h"
#include "idkit/bits.hpp"
#include "idkit/errors.hpp"
#include "idkit/gf.hpp"
#include "idkit/prf.hpp"

using namespace idkit;

namespace {

// Test-local oracle: naive shift-and-xor polynomial product with explicit
// long division, written independently of the library path.
std::uint32_t oracle_mul(std::uint32_t a, std::uint32_t b,
                         std::uint32_t poly, int m) {
  std::uint64_t prod = 0;
  for (int i = 0; i < 32; ++i) {
    if ((b >> i) & 1u) prod ^= (std::uint64_t(a) << i);
  }
  for (int d = 62; d >= m; --d) {
    if ((prod >> d) & 1u) prod ^= (std::uint64_t(poly) << (d - m));
  }
  return static_cast<std::uint32_t>(prod);
}

// Test-local irreducibility: f (degree deg) has a factor iff some poly of
// degree 1..deg/2 divides it.
bool oracle_irreducible(std::uint32_t f, int deg) {
  for (std::uint32_t g = 2; g < (1u << (deg / 2 + 1)); ++g) {
    int gdeg = 0;
    for (int i = 0; i < 32; ++i)
      if ((g >> i) & 1u) gdeg = i;
    if (gdeg == 0 || gdeg > deg / 2) continue;
    // long division f mod g
    std::uint64_t r = f;
    for (int d = deg; d >= gdeg; --d) {
      if ((r >> d) & 1u) r ^= (std::uint64_t(g) << (d - gdeg));
    }
    if (r == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("pinned reduction polynomials are the least irreducible masks") {
  const std::uint32_t expected[17] = {0,      0x3,    0x7,   0xB,    0x13,
                                      0x25,   0x43,   0x83,  0x11B,  0x203,
                                      0x409,  0x805,  0x1009, 0x201B, 0x4021,
                                      0x8003, 0x1002B};
  for (int m = 1; m <= 16; ++m) {
    const Field& f = Field::get(m);
    CHECK(f.reduction_poly() == expected[m]);
    // least mask: irreducible itself, nothing smaller with the same degree
    // and nonzero constant term qualifies
    CHECK(oracle_irreducible(f.reduction_poly(), m));
    for (std::uint32_t cand = (1u << m) | 1u; cand < f.reduction_poly();
         cand += 2) {
      CHECK_FALSE(oracle_irreducible(cand, m));
    }
  }
}

TEST_CASE("known products") {
  // GF(16), x^4+x+1: (x^2+1)(x^3+1) = x^3+x+1
  CHECK(Field::get(4).mul(0x5, 0x9) == 0xB);
  // GF(256), x^8+x^4+x^3+x+1: the classic {57}x{83}={c1}
  CHECK(Field::get(8).mul(0x57, 0x83) == 0xC1);
}

TEST_CASE("table multiply agrees with the schoolbook oracle") {
  for (int m : {1, 2, 3, 4, 8}) {
    const Field& f = Field::get(m);
    if (f.q() <= 64) {
      for (std::uint32_t a = 0; a < f.q(); ++a)
        for (std::uint32_t b = 0; b < f.q(); ++b)
          CHECK(f.mul(a, b) ==
                oracle_mul(a, b, f.reduction_poly(), m));
    }
  }
  // spot-check the large fields on pseudorandom pairs
  SeededRandom rng(std::vector<std::uint8_t>{1, 2, 3}, "gf-pairs");
  for (int m : {10, 12, 16}) {
    const Field& f = Field::get(m);
    for (int t = 0; t < 2000; ++t) {
      const std::uint32_t a = static_cast<std::uint32_t>(rng.uniform(f.q()));
      const std::uint32_t b = static_cast<std::uint32_t>(rng.uniform(f.q()));
      CHECK(f.mul(a, b) == oracle_mul(a, b, f.reduction_poly(), m));
    }
  }
}

TEST_CASE("field laws hold exhaustively in small fields") {
  for (int m : {1, 2, 3, 4}) {
    const Field& f = Field::get(m);
    for (std::uint32_t a = 0; a < f.q(); ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, a) == 0);  // characteristic 2
      CHECK(f.neg(a) == a);
      for (std::uint32_t b = 0; b < f.q(); ++b) {
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (std::uint32_t c = 0; c < f.q(); ++c) {
          CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("inverses are exact for every nonzero element") {
  for (int m : {1, 4, 8}) {
    const Field& f = Field::get(m);
    for (std::uint32_t a = 1; a < f.q(); ++a) {
      CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.pow(a, f.q() - 1) == 1);
    }
    CHECK_THROWS_AS(f.inv(0), ParamError);
  }
}

TEST_CASE("pow matches repeated multiplication") {
  const Field& f = Field::get(10);
  SeededRandom rng(std::vector<std::uint8_t>{9}, "gf-pow");
  for (int t = 0; t < 50; ++t) {
    const std::uint32_t a = static_cast<std::uint32_t>(rng.uniform(f.q()));
    std::uint32_t acc = 1;
    for (std::uint64_t e = 0; e < 12; ++e) {
      CHECK(f.pow(a, e) == acc);
      acc = f.mul(acc, a);
    }
  }
  CHECK(f.pow(0, 0) == 1);
  CHECK(f.pow(0, 5) == 0);
}

TEST_CASE("generator has full multiplicative order") {
  for (int m : {2, 4, 8, 16}) {
    const Field& f = Field::get(m);
    const std::uint32_t g = f.generator();
    // g^(q-1) = 1 and no smaller power hits 1 among proper divisors
    CHECK(f.pow(g, f.q() - 1) == 1);
    for (std::uint32_t d = 1; d < f.q() - 1; ++d) {
      if ((f.q() - 1) % d == 0) CHECK(f.pow(g, d) != 1);
    }
  }
}

TEST_CASE("field accessor rejects out-of-range degrees") {
  CHECK_THROWS_AS(Field::get(0), ParamError);
  CHECK_THROWS_AS(Field::get(17), ParamError);
  CHECK_THROWS_AS(Field::get(-3), ParamError);
}

TEST_CASE("element ops check field identity") {
  const Field& f4 = Field::get(4);
  const Field& f8 = Field::get(8);
  CHECK_THROWS_AS(add(element(f4, 1), element(f8, 1)), FieldMismatchError);
  CHECK_THROWS_AS(mul(element(f4, 1), element(f8, 1)), FieldMismatchError);
  CHECK_THROWS_AS(element(f4, 16), ParamError);
  CHECK(add(element(f4, 5), element(f4, 3)) == element(f4, 6));
}

TEST_CASE("vector construction validates entries") {
  const Field& f = Field::get(2);
  CHECK_THROWS_AS(FieldVector(f, std::vector<std::uint32_t>{1, 4}),
                  ParamError);
  FieldVector v(f, 3);
  CHECK(v.is_zero());
  CHECK_THROWS_AS(v.set(0, 9), ParamError);
  CHECK_THROWS_AS(v.set(5, 1), ParamError);
}

TEST_CASE("dot product checks length and field") {
  const Field& f = Field::get(4);
  const FieldVector a(f, std::vector<std::uint32_t>{1, 2, 3});
  const FieldVector b(f, std::vector<std::uint32_t>{3, 0, 1});
  // 1*3 + 2*0 + 3*1 = 3 + 0 + 3 = 0
  CHECK(dot(a, b) == 0);
  const FieldVector c(f, 2);
  CHECK_THROWS_AS(dot(a, c), ParamError);
  const FieldVector d(Field::get(8), 3);
  CHECK_THROWS_AS(dot(a, d), FieldMismatchError);
}

TEST_CASE("dot product matches an index-by-index oracle") {
  SeededRandom rng(std::vector<std::uint8_t>{4, 4}, "gf-dot");
  for (int m : {1, 4, 10}) {
    const Field& f = Field::get(m);
    for (int t = 0; t < 200; ++t) {
      const FieldVector a = random_vector(f, 7, rng);
      const FieldVector b = random_vector(f, 7, rng);
      std::uint32_t acc = 0;
      for (std::size_t i = 0; i < 7; ++i)
        acc ^= oracle_mul(a[i], b[i], f.reduction_poly(), m);
      CHECK(dot(a, b) == acc);
    }
  }
}

TEST_CASE("pack and unpack round-trip across odd widths") {
  SeededRandom rng(std::vector<std::uint8_t>{7}, "gf-pack");
  for (int m : {1, 3, 4, 8, 10, 16}) {
    const Field& f = Field::get(m);
    for (std::size_t len : {1, 2, 5, 9}) {
      const FieldVector v = random_vector(f, len, rng);
      const auto bytes = pack_symbols(v);
      CHECK(bytes.size() == (len * static_cast<std::size_t>(m) + 7) / 8);
      CHECK(unpack_symbols(f, len, bytes) == v);
    }
  }
}

TEST_CASE("pack lays symbols MSB-first") {
  const Field& f = Field::get(10);
  // 0x2A5 = 1010100101, 0x001 = 0000000001
  const FieldVector v(f, std::vector<std::uint32_t>{0x2A5, 0x001});
  // 1010 1001 0100 0000 0001 0000 -> A9 40 10
  CHECK(to_hex(pack_symbols(v)) == "a94010");
}

TEST_CASE("unpack rejects bad buffers") {
  const Field& f = Field::get(10);
  const FieldVector v(f, std::vector<std::uint32_t>{0x2A5, 0x001});
  auto bytes = pack_symbols(v);
  SUBCASE("wrong length") {
    bytes.push_back(0);
    CHECK_THROWS_AS(unpack_symbols(f, 2, bytes), ParamError);
  }
  SUBCASE("nonzero pad") {
    bytes.back() |= 0x01;
    CHECK_THROWS_AS(unpack_symbols(f, 2, bytes), ParamError);
  }
}

TEST_CASE("drawn symbols are uniform enough") {
  const Field& f = Field::get(3);  // q = 8
  SeededRandom rng(std::vector<std::uint8_t>{0x42}, "gf-draw");
  std::vector<std::uint64_t> counts(f.q(), 0);
  const std::uint64_t draws = 80000;
  for (std::uint64_t i = 0; i < draws; ++i) ++counts[draw_symbol(f, rng)];
  double chi2 = 0;
  const double expect = static_cast<double>(draws) / f.q();
  for (std::uint64_t c : counts)
    chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < 31.0);  // 7 dof, far beyond the 4-sigma band
}
