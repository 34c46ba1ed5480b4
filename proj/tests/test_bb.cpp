#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "splash/bruckbose.hpp"
#include "splash/gf.hpp"
#include "splash/pg.hpp"

using namespace splash;

namespace {

Subspace full_space(const Field& F, int ambient) {
  std::vector<Vec> rows;
  for (int i = 0; i <= ambient; ++i) {
    Vec v = Vec::zero(ambient + 1);
    v[i] = 1;
    rows.push_back(v);
  }
  return subspace_from_rows(F, rows);
}

// normalized points of PG(2, F)
std::vector<P2> all_p2_points(const Field& F) {
  std::vector<P2> pts;
  for (uint32_t y = 0; y < F.n; ++y)
    for (uint32_t z = 0; z < F.n; ++z) pts.push_back(make_p2(1, Code(y), Code(z)));
  for (uint32_t z = 0; z < F.n; ++z) pts.push_back(make_p2(0, 1, Code(z)));
  pts.push_back(make_p2(0, 0, 1));
  return pts;
}

std::vector<P2> points_on_line(const Field& F, const P2& l) {
  std::vector<P2> pts;
  for (const P2& p : all_p2_points(F))
    if (p2_dot(F, l, p) == 0) pts.push_back(p);
  return pts;
}

Subspace span_of_points(const Field& F, const std::vector<Vec>& pts) {
  Subspace s = subspace_from_rows(F, {pts[0]});
  for (size_t i = 1; i < pts.size(); ++i) s = span_point(F, s, pts[i]);
  return s;
}

std::vector<Code> sorted_labels(const Field& C, std::vector<Code> v) {
  std::sort(v.begin(), v.end(), [&](Code x, Code y) {
    if (x == kInf) return false;
    if (y == kInf) return true;
    return C.less(x, y);
  });
  return v;
}

}  // namespace

TEST_CASE("the labelled spread partitions the infinite hyperplane") {
  for (uint16_t q : {2, 3}) {
    FieldTower T = FieldTower::make(q);
    const Field& B = T.base();
    const Field& C = T.cubic();
    BBContext ctx = make_bb_context(T);

    CHECK(ctx.spread.size() == size_t(C.n) + 1);
    CHECK(ctx.sigma_inf.dim() == 5);
    CHECK(is_plane_spread(B, ctx.spread));
    CHECK(is_regular_spread(B, ctx.spread));

    // the label of a point names the unique plane that holds it
    for (const Vec& p : enumerate_points(B, full_space(B, 5))) {
      Code label = point_label(T, p);
      CHECK(contains(B, ctx.plane_of(label), p));
    }
    for (size_t i = 0; i < ctx.spread.size(); ++i)
      CHECK(ctx.plane_index(ctx.spread_labels[i]) == int(i));
  }
}

TEST_CASE("the point map hits frozen coordinates and is projective") {
  FieldTower T = FieldTower::make(2);
  const Field& C = T.cubic();

  Vec e6 = Vec::zero(7);
  e6[6] = 1;
  CHECK(epsilon(T, make_p2(0, 0, 1)) == e6);
  CHECK(epsilon(T, make_p2(0, 0, T.tau())) == e6);

  // tau has code 2, 1 + tau^2 has code 5
  Vec img = make_vec({0, 1, 0, 1, 0, 1, 1});
  CHECK(epsilon(T, make_p2(2, 5, 1)) == img);

  // scaling invariance holds pointwise off the infinite line and
  // plane-wise on it
  BBContext pctx = make_bb_context(T);
  for (const P2& p : all_p2_points(C))
    for (uint32_t s = 1; s < C.n; ++s) {
      P2 sp;
      for (int j = 0; j < 3; ++j) sp.c[j] = C.mul(Code(s), p.c[j]);
      if (p.c[2] != 0) {
        CHECK(epsilon(T, sp) == epsilon(T, p));
      } else {
        Code label = p.c[1] == 0 ? kInf : C.mul(p.c[0], C.inv(p.c[1]));
        CHECK(contains(T.base(), pctx.plane_of(label),
                       drop_point(epsilon(T, sp))));
      }
    }

  // affine points land off Sigma_inf, infinite points in their label's plane
  const BBContext& ctx = pctx;
  for (const P2& p : all_p2_points(C)) {
    Vec v = epsilon(T, p);
    if (p.c[2] != 0) {
      CHECK(v[6] != 0);
    } else {
      CHECK(v[6] == 0);
      Code label = p.c[1] == 0 ? kInf : C.mul(p.c[0], C.inv(p.c[1]));
      CHECK(contains(T.base(), ctx.plane_of(label), drop_point(v)));
    }
  }
}

TEST_CASE("lines map to solids that cut the spread plane of their direction") {
  for (uint16_t q : {2, 3}) {
    FieldTower T = FieldTower::make(q);
    const Field& B = T.base();
    const Field& C = T.cubic();
    BBContext ctx = make_bb_context(T);

    std::vector<P2> lines = all_p2_points(C);  // lines as dual coordinates
    if (q == 3) {
      std::mt19937 rng(2026);
      std::shuffle(lines.begin(), lines.end(), rng);
      lines.resize(40);
    }
    for (const P2& l : lines) {
      if (l.c[0] == 0 && l.c[1] == 0) continue;  // the infinite line itself
      std::vector<Vec> imgs;
      Code dir_label = kInf;
      for (const P2& p : points_on_line(C, l)) {
        if (p.c[2] != 0)
          imgs.push_back(epsilon(T, p));
        else
          dir_label = p.c[1] == 0 ? kInf : C.mul(p.c[0], C.inv(p.c[1]));
      }
      CHECK(imgs.size() == size_t(C.n));
      Subspace solid = span_of_points(B, imgs);
      CHECK(solid.dim() == 3);
      Subspace cut = meet(B, solid, ctx.sigma_inf);
      CHECK(cut == lift_to_pg6(ctx.plane_of(dir_label)));
    }
  }
}

TEST_CASE("g_S pierces every extended spread plane at its marked point") {
  for (uint16_t q : {2, 3}) {
    FieldTower T = FieldTower::make(q);
    const Field& C = T.cubic();
    BBContext ctx = make_bb_context(T);

    CHECK(ctx.g_s.dim() == 1);
    for (size_t i = 0; i < ctx.spread.size(); ++i) {
      Subspace ext = extend_subspace(T, ctx.spread[i]);
      Code k = ctx.spread_labels[i];
      Vec marked =
          k == kInf ? ctx.a1 : vec_add(C, vec_scale(C, k, ctx.a1), ctx.a2);
      Subspace cut = meet(C, ctx.g_s, ext);
      CHECK(cut.dim() == 0);
      CHECK(contains(C, cut, marked));
    }
  }
}

TEST_CASE("conjugate transversals are disjoint, irrational, and transversal") {
  for (uint16_t q : {2, 3}) {
    FieldTower T = FieldTower::make(q);
    const Field& C = T.cubic();
    BBContext ctx = make_bb_context(T);
    TransversalSet ts = spread_transversals(ctx);

    CHECK(ts.lines[0] == ctx.g_s);
    for (int i = 0; i < 3; ++i)
      CHECK(ts.lines[i] == frob_subspace(T, ctx.g_s, i));
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        CHECK(disjoint(C, ts.lines[i], ts.lines[j]));

    for (int i = 0; i < 3; ++i) {
      for (const Vec& p : enumerate_points(C, ts.lines[i])) {
        Vec fp = p;
        for (int c = 0; c < 6; ++c) fp[c] = T.frob(fp[c]);
        CHECK(normalize(C, fp) != p);  // no point is GF(q)-rational
      }
      for (const Subspace& plane : ctx.spread) {
        Subspace cut = meet(C, ts.lines[i], extend_subspace(T, plane));
        CHECK(cut.dim() == 0);
      }
    }
  }
}

TEST_CASE("exhaustive search finds exactly the three conjugate transversals") {
  FieldTower T = FieldTower::make(2);
  const Field& C = T.cubic();
  BBContext ctx = make_bb_context(T);

  std::vector<Subspace> ext;
  for (const Subspace& plane : ctx.spread)
    ext.push_back(extend_subspace(T, plane));
  std::vector<Subspace> found = transversal_search(C, ext);

  TransversalSet ts = spread_transversals(ctx);
  std::vector<Subspace> expect(ts.lines.begin(), ts.lines.end());
  std::sort(expect.begin(), expect.end(),
            [&](const Subspace& a, const Subspace& b) {
              return subspace_less(C, a, b);
            });
  CHECK(found == expect);
}

TEST_CASE("an extended regulus is met by exactly its Segre family of lines") {
  FieldTower T = FieldTower::make(2);
  const Field& B = T.base();
  const Field& C = T.cubic();
  BBContext ctx = make_bb_context(T);

  std::vector<Code> labels = sorted_labels(C, {0, 1, kInf});
  REQUIRE(is_subline(T, labels));
  Regulus reg = subline_to_regulus(ctx, labels);
  Regulus ext = extend_regulus(T, reg);

  std::vector<Subspace> found = transversal_search(C, ext.planes);
  CHECK(found.size() == 73);  // q^6 + q^3 + 1 ruling lines at q = 2

  // the base ruling lines extend into the family
  std::set<size_t> hit;
  for (const Subspace& line : reg.ruling) {
    Subspace le = extend_subspace(T, line);
    auto it = std::lower_bound(found.begin(), found.end(), le,
                               [&](const Subspace& a, const Subspace& b) {
                                 return subspace_less(C, a, b);
                               });
    REQUIRE(it != found.end());
    CHECK(*it == le);
    hit.insert(size_t(it - found.begin()));
  }
  CHECK(hit.size() == reg.ruling.size());
  (void)B;
}

TEST_CASE("sublines of labels behave like PG(1,q) inside PG(1,q^3)") {
  for (uint16_t q : {2, 3, 4, 5}) {
    FieldTower T = FieldTower::make(q);
    const Field& C = T.cubic();

    std::vector<Code> expect;
    for (uint32_t t = 0; t < q; ++t) expect.push_back(T.embed(Code(t)));
    expect.push_back(kInf);
    expect = sorted_labels(C, expect);
    CHECK(subline_through(T, 0, 1, kInf) == expect);
    CHECK(is_subline(T, expect));

    // closure: rebuilding from any three members returns the same set
    std::mt19937 rng(77 * q);
    for (int trial = 0; trial < 20; ++trial) {
      std::array<Code, 3> abc;
      do {
        for (auto& x : abc) {
          uint32_t r = rng() % (C.n + 1);
          x = r == C.n ? kInf : Code(r);
        }
      } while (abc[0] == abc[1] || abc[0] == abc[2] || abc[1] == abc[2]);
      std::vector<Code> sl = subline_through(T, abc[0], abc[1], abc[2]);
      CHECK(sl.size() == size_t(q) + 1);
      CHECK(is_subline(T, sl));
      for (Code x : abc) CHECK(std::count(sl.begin(), sl.end(), x) == 1);
      std::uniform_int_distribution<size_t> pick(0, sl.size() - 1);
      size_t i = pick(rng), j = pick(rng), k = pick(rng);
      if (i != j && j != k && i != k)
        CHECK(subline_through(T, sl[i], sl[j], sl[k]) == sl);
    }
  }

  // only the completion of GF(3) extends {0,1,2} to a subline of GF(27)
  FieldTower T3 = FieldTower::make(3);
  const Field& C3 = T3.cubic();
  int hits = 0;
  for (uint32_t r = 0; r <= C3.n; ++r) {
    Code k = r == C3.n ? kInf : Code(r);
    if (k == 0 || k == 1 || k == 2) continue;
    std::vector<Code> labels = {0, 1, 2, k};
    if (is_subline(T3, labels)) {
      ++hits;
      CHECK(k == kInf);
    }
  }
  CHECK(hits == 1);
}

TEST_CASE("a subline of spread labels closes into a regulus of its planes") {
  for (uint16_t q : {2, 3}) {
    FieldTower T = FieldTower::make(q);
    const Field& C = T.cubic();
    BBContext ctx = make_bb_context(T);

    std::mt19937 rng(901 * q);
    for (int trial = 0; trial < 10; ++trial) {
      std::array<Code, 3> abc;
      do {
        for (auto& x : abc) {
          uint32_t r = rng() % (C.n + 1);
          x = r == C.n ? kInf : Code(r);
        }
      } while (abc[0] == abc[1] || abc[0] == abc[2] || abc[1] == abc[2]);
      std::vector<Code> sl = subline_through(T, abc[0], abc[1], abc[2]);
      Regulus reg = subline_to_regulus(ctx, sl);

      auto by_less = [&](const Subspace& x, const Subspace& y) {
        return subspace_less(T.base(), x, y);
      };
      std::vector<Subspace> got = reg.planes;
      std::vector<Subspace> want;
      for (Code l : sl) want.push_back(ctx.plane_of(l));
      std::sort(got.begin(), got.end(), by_less);
      std::sort(want.begin(), want.end(), by_less);
      CHECK(got == want);
    }
  }

  FieldTower T3 = FieldTower::make(3);
  BBContext ctx3 = make_bb_context(T3);
  std::vector<Code> not_subline = {0, 1, 2, 3};
  CHECK_THROWS_AS(subline_to_regulus(ctx3, not_subline), std::invalid_argument);
}

TEST_CASE("twisted cubics parametrize affine sublines and meet g_S thrice") {
  for (uint16_t q : {2, 3}) {
    FieldTower T = FieldTower::make(q);
    const Field& B = T.base();
    const Field& C = T.cubic();
    BBContext ctx = make_bb_context(T);
    TransversalSet ts = spread_transversals(ctx);

    std::mt19937 rng(4242 * q);
    int built = 0;
    while (built < 8) {
      P2 a = make_p2(Code(rng() % C.n), Code(rng() % C.n), 1);
      P2 b = make_p2(Code(rng() % C.n), Code(rng() % C.n), T.tau());
      if (p2_cross(C, a, b) == make_p2(0, 0, 0)) continue;
      TwistedCubicParam n = twisted_cubic_from_subline(ctx, a, b);
      ++built;

      // the direction of the affine line names the cubic's spread plane
      P2 l = p2_cross(C, a, b);
      Code dir = l.c[0] == 0 ? kInf : C.neg(C.mul(l.c[1], C.inv(l.c[0])));
      CHECK(n.inf_label == dir);

      // the image solid of the affine line carries the cubic's base points
      std::vector<Vec> line_imgs;
      for (const P2& p : points_on_line(C, l))
        if (p.c[2] != 0) line_imgs.push_back(epsilon(T, p));
      Subspace bb_solid = span_of_points(B, line_imgs);
      CHECK(bb_solid.dim() == 3);
      CHECK(subspace_leq(B, lift_to_pg6(ctx.plane_of(n.inf_label)), bb_solid));
      for (uint32_t t = 0; t <= q; ++t)
        CHECK(contains(B, bb_solid,
                       cubic_point_base(T, n, t == q ? kInf : Code(t))));

      // the extension carries the base points, spans a solid, and meets
      // all three conjugates
      std::vector<Vec> ext_pts;
      for (uint32_t t = 0; t <= C.n; ++t)
        ext_pts.push_back(cubic_point_ext(T, n, t == C.n ? kInf : Code(t)));
      CHECK(span_of_points(C, ext_pts).dim() == 3);
      for (uint32_t t = 0; t <= q; ++t) {
        Code tc = t == q ? kInf : Code(t);
        Vec base_pt = cubic_point_base(T, n, tc);
        CHECK(cubic_point_ext(T, n, tc) == base_pt);
      }
      CHECK(is_special_cubic(ctx, n, ts.lines));
    }
  }
}
