#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <set>
#include <vector>

#include "splash/gf.hpp"

using namespace splash;

namespace {

// Independent prime-field oracle: coefficient triples over Z/p reduced by
// x^3 = t2 x^2 + t1 x + t0. Used to cross-check the table-backed tower.
struct NaiveCubic {
  int p;
  std::array<int, 3> t;
  using E = std::array<int, 3>;
  E mul(E a, E b) const {
    int c[5] = {};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    for (int k = 4; k >= 3; --k) {
      int h = c[k];
      c[k] = 0;
      c[k - 1] = (c[k - 1] + h * t[2]) % p;
      c[k - 2] = (c[k - 2] + h * t[1]) % p;
      c[k - 3] = (c[k - 3] + h * t[0]) % p;
    }
    return {c[0], c[1], c[2]};
  }
  int order_of_x() const {
    E x = {0, 1, 0};
    E acc = x;
    int ord = 1;
    while (!(acc[0] == 1 && acc[1] == 0 && acc[2] == 0)) {
      acc = mul(acc, x);
      ++ord;
    }
    return ord;
  }
};

Code scale(const Field& F, Code s, Code v) { return F.mul(s, v); }

}  // namespace

TEST_CASE("smallest primitive cubic per field size") {
  CHECK(FieldTower::find_primitive_poly(2) == Triple{1, 1, 0});
  // independent order check for the frozen q=2 answer
  NaiveCubic n2{2, {1, 1, 0}};
  CHECK(n2.order_of_x() == 7);
  NaiveCubic alt{2, {1, 0, 1}};  // the other q=2 candidate, also primitive
  CHECK(alt.order_of_x() == 7);

  auto t3 = FieldTower::find_primitive_poly(3);
  NaiveCubic n3{3, {t3[0], t3[1], t3[2]}};
  CHECK(n3.order_of_x() == 26);

  auto t5 = FieldTower::find_primitive_poly(5);
  NaiveCubic n5{5, {t5[0], t5[1], t5[2]}};
  CHECK(n5.order_of_x() == 124);
}

TEST_CASE("all primitive cubics at q=2, search order") {
  auto all = FieldTower::all_primitive_polys(2);
  REQUIRE(all.size() == 2);
  CHECK(all[0] == Triple{1, 1, 0});
  CHECK(all[1] == Triple{1, 0, 1});
  CHECK(FieldTower::all_primitive_polys(3).size() == 4);
}

TEST_CASE("base field arithmetic for prime powers") {
  auto T4 = FieldTower::make(4);
  const Field& B4 = T4.base();
  CHECK(B4.mul(2, 2) == 3);  // x*x = x+1 mod x^2+x+1
  CHECK(B4.mul(2, 3) == 1);
  // rank order: (0,0) < (0,1) < (1,0) < (1,1) as little-endian arrays
  CHECK(B4.rank(0) == 0);
  CHECK(B4.rank(2) == 1);
  CHECK(B4.rank(1) == 2);
  CHECK(B4.rank(3) == 3);

  auto T9 = FieldTower::make(9);
  CHECK(T9.base().mul(3, 3) == 4);  // x*x = x+1 mod x^2+2x+2
}

TEST_CASE("cubic tables match the naive oracle exhaustively") {
  for (uint16_t q : {uint16_t(2), uint16_t(3)}) {
    auto T = FieldTower::make(q);
    NaiveCubic nv{q, {T.tpoly()[0], T.tpoly()[1], T.tpoly()[2]}};
    const Field& C = T.cubic();
    int bad = 0;
    for (Code a = 0; a < T.q3(); ++a)
      for (Code b = 0; b < T.q3(); ++b) {
        auto ca = T.coeffs(a), cb = T.coeffs(b);
        auto r = nv.mul({ca[0], ca[1], ca[2]}, {cb[0], cb[1], cb[2]});
        bad += C.mul(a, b) != T.make_elem(Code(r[0]), Code(r[1]), Code(r[2]));
      }
    CHECK(bad == 0);
  }
}

TEST_CASE("field axioms, inverses and both multiplication paths") {
  for (uint16_t q : FieldTower::supported()) {
    auto T = FieldTower::make(q);
    const Field& C = T.cubic();
    const uint32_t n = T.q3();
    int bad = 0;
    for (Code a = 0; a < n; ++a) {
      for (Code b = 0; b < n; ++b) {
        bad += C.mul(a, b) != C.mul(b, a);
        bad += C.mul(a, b) != T.mul_direct(a, b);
        bad += C.mul(a, b) != T.mul_log(a, b);
      }
      if (a != 0) {
        bad += C.mul(a, C.inv(a)) != 1;
        bad += C.inv(a) != T.inv_direct(a);
      }
      bad += C.add(a, C.neg(a)) != 0;
    }
    // associativity + distributivity on a fixed lattice of triples
    for (Code a = 0; a < n; a += 3)
      for (Code b = 1; b < n; b += 5)
        for (Code c = 2; c < n; c += 7) {
          bad += C.mul(C.mul(a, b), c) != C.mul(a, C.mul(b, c));
          bad += C.mul(a, C.add(b, c)) != C.add(C.mul(a, b), C.mul(a, c));
        }
    CHECK(bad == 0);
  }
}

TEST_CASE("tau powers at q=2") {
  auto T = FieldTower::make(2);
  const Field& C = T.cubic();
  Code tau = T.tau();
  Code tau2 = C.mul(tau, tau);
  CHECK(C.mul(tau, tau2) == C.add(tau, 1));  // tau^3 = tau + 1
  CHECK(C.pow(tau, 7) == 1);
  CHECK(C.pow(tau, 6) == T.make_elem(1, 0, 1));  // 1 + tau^2
}

TEST_CASE("frobenius is a field automorphism fixing exactly GF(q)") {
  for (uint16_t q : {uint16_t(2), uint16_t(3), uint16_t(4), uint16_t(5)}) {
    auto T = FieldTower::make(q);
    const Field& C = T.cubic();
    int bad = 0;
    for (Code a = 0; a < T.q3(); ++a) {
      bad += T.frob(a) != C.pow(a, q);
      bad += (T.frob(a) == a) != T.in_base(a);
      bad += T.frob(T.frob(T.frob(a))) != a;
      for (Code b = 0; b < T.q3(); b += 2) {
        bad += T.frob(C.add(a, b)) != C.add(T.frob(a), T.frob(b));
        bad += T.frob(C.mul(a, b)) != C.mul(T.frob(a), T.frob(b));
      }
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("norm is multiplicative and onto the base field") {
  for (uint16_t q : {uint16_t(2), uint16_t(3), uint16_t(4), uint16_t(5)}) {
    auto T = FieldTower::make(q);
    const Field& C = T.cubic();
    CHECK(T.norm(T.tau()) == T.tpoly()[0]);
    std::set<Code> hit;
    for (Code a = 1; a < T.q3(); ++a) {
      hit.insert(T.norm(a));
      CHECK(T.norm(a) < T.q());
      for (Code b = 1; b < T.q3(); b += 3)
        CHECK(T.norm(C.mul(a, b)) == T.base().mul(T.norm(a), T.norm(b)));
    }
    CHECK(hit.size() == size_t(T.q()) - 1);  // onto GF(q)*
  }
}

TEST_CASE("companion matrix and multiplication matrices") {
  auto T2 = FieldTower::make(2);
  CHECK(T2.companion() == Mat3{0, 0, 1, 1, 0, 1, 0, 1, 0});

  for (uint16_t q : {uint16_t(2), uint16_t(3), uint16_t(4)}) {
    auto T = FieldTower::make(q);
    const Field& B = T.base();
    const Field& C = T.cubic();
    for (Code k = 0; k < T.q3(); ++k) {
      Mat3 M = T.mult_matrix(k);
      for (Code x = 0; x < T.q3(); ++x) {
        Triple cx = T.coeffs(x);
        Triple mx = mat3_apply(B, M, cx);
        CHECK(T.make_elem(mx[0], mx[1], mx[2]) == C.mul(k, x));
      }
    }
  }
}

TEST_CASE("frobenius matrix action and order") {
  for (uint16_t q : {uint16_t(2), uint16_t(3), uint16_t(5)}) {
    auto T = FieldTower::make(q);
    const Mat3& N = T.frobenius_matrix();
    for (Code y = 0; y < T.q3(); ++y) {
      Triple cy = T.coeffs(y);
      Triple ny = mat3_apply(T.base(), N, cy);
      CHECK(T.make_elem(ny[0], ny[1], ny[2]) == T.frob(y));
    }
    Mat3 N3 = mat3_mul(T.base(), N, mat3_mul(T.base(), N, N));
    CHECK(mat3_is_identity(N3));
  }
}

TEST_CASE("frame vector identities") {
  for (uint16_t q : {uint16_t(2), uint16_t(3), uint16_t(4), uint16_t(5)}) {
    auto T = FieldTower::make(q);
    const Field& C = T.cubic();
    const auto& fr = T.frame();
    auto frobv = [&](const Triple& v, int i) {
      return Triple{T.frob(v[0], i), T.frob(v[1], i), T.frob(v[2], i)};
    };
    const Triple A = fr.p;

    // M_k A = k A and M_k A^(q^2) = k^(q^2) A^(q^2), for every k
    for (Code k = 0; k < T.q3(); ++k) {
      Mat3 M = T.mult_matrix(k);
      Triple lhs = mat3_apply(C, M, A);
      for (int i = 0; i < 3; ++i) CHECK(lhs[i] == C.mul(k, A[i]));
      Triple A2 = frobv(A, 2);
      Triple lhs2 = mat3_apply(C, M, A2);
      for (int i = 0; i < 3; ++i)
        CHECK(lhs2[i] == C.mul(T.frob(k, 2), A2[i]));
    }

    // N A = eta^(1-q^2) A^(q^2), N A^q = eta^(q-1) A, N A^(q^2) = eta^(q^2-q) A^q
    const Mat3& N = T.frobenius_matrix();
    auto pow_eta = [&](long e) { return T.pow_log(fr.eta, e); };
    const long lq = q;
    struct Row {
      int src, dst;
      long e;
    } rows[] = {{0, 2, 1 - lq * lq}, {1, 0, lq - 1}, {2, 1, lq * lq - lq}};
    for (auto r : rows) {
      Triple src = frobv(A, r.src), dst = frobv(A, r.dst);
      Triple lhs = mat3_apply(C, N, src);
      Code s = pow_eta(r.e);
      for (int i = 0; i < 3; ++i) CHECK(lhs[i] == C.mul(s, dst[i]));
    }

    // U_i [alpha] = alpha^(q^i) A^(q^i) for alpha with base coefficients
    for (int i = 0; i < 3; ++i) {
      Mat3 U = T.u_matrix(i);
      for (Code a0 = 0; a0 < T.q(); ++a0)
        for (Code a1 = 0; a1 < T.q(); ++a1)
          for (Code a2 = 0; a2 < T.q(); ++a2) {
            Code alpha = T.make_elem(a0, a1, a2);
            Triple lhs = mat3_apply(C, U, Triple{a0, a1, a2});
            Code s = T.frob(alpha, i);
            Triple Ai = frobv(A, i);
            for (int j = 0; j < 3; ++j)
              CHECK(lhs[j] == C.mul(s, Ai[j]));
          }
    }
  }
}

TEST_CASE("frame values at q=2") {
  auto T = FieldTower::make(2);
  const auto& fr = T.frame();
  CHECK(fr.p[0] == T.make_elem(1, 0, 1));  // 1 + tau^2
  CHECK(fr.p[1] == T.tau());
  CHECK(fr.p[2] == 1);
  CHECK(fr.eta == T.cubic().pow(T.tau(), 6));
  CHECK(T.pow_log(fr.eta, 1 - 2) == T.tau());  // eta^(1-q) = tau
}

TEST_CASE("tower token round trip and validation") {
  for (uint16_t q : FieldTower::supported()) {
    auto T = FieldTower::make(q);
    auto U = FieldTower::parse(T.token());
    CHECK(U.token() == T.token());
    CHECK(U.tpoly() == T.tpoly());
    CHECK(U.q() == q);
  }
  CHECK(FieldTower::make(2).token() == "2^1:0,1:1,1,0");
  CHECK_THROWS_AS(FieldTower::parse("junk"), std::invalid_argument);
  CHECK_THROWS_AS(FieldTower::parse("2^1:0,1:0,0,0"), std::invalid_argument);
  // x^3 - 1 is reducible over GF(2)
  CHECK_THROWS_AS(FieldTower::parse("2^1:0,1:1,0,0"), std::invalid_argument);
  // irreducible but with a non-primitive root: x^3 - t over GF(4) has a root
  // of order dividing 9 < 63
  CHECK_THROWS_AS(FieldTower::parse("2^2:1,1,1:2,0,0"), std::invalid_argument);
  CHECK_THROWS_AS(FieldTower::parse("4^1:0,1:1,1,0"), std::invalid_argument);
  CHECK_THROWS_AS(FieldTower::make(6), std::invalid_argument);
}

TEST_CASE("scalar helper sanity") {
  auto T = FieldTower::make(3);
  CHECK(scale(T.cubic(), 2, T.tau()) == T.make_elem(0, 2, 0));
}
