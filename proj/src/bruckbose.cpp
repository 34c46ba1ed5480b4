#include "splash/bruckbose.hpp"

#include <algorithm>
#include <unordered_set>

#include "splash/check.hpp"

namespace splash {
namespace {

using Poly4 = std::array<Code, 4>;  // cubic-field coefficients, degree <= 3

Poly4 mul_linear3(const Field& C, const std::array<Code, 2>& a,
                  const std::array<Code, 2>& b,
                  const std::array<Code, 2>& c) {
  std::array<Code, 3> ab{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      ab[i + j] = C.add(ab[i + j], C.mul(a[i], b[j]));
  Poly4 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j)
      r[i + j] = C.add(r[i + j], C.mul(ab[i], c[j]));
  return r;
}

bool line_meets_plane(const Field& C, const Vec& p, const Vec& q,
                      const Subspace& plane) {
  Mat m;
  m.cols = 6;
  m.push_row(p);
  m.push_row(q);
  for (int r = 0; r < plane.m.rows; ++r) m.push_row(plane.m.row(r));
  return rref(C, m) < 5;
}

}  // namespace

P2 make_p2(Code x, Code y, Code z) { return P2{{x, y, z}}; }

P2 normalize_p2(const Field& C, P2 p) {
  for (int i = 0; i < 3; ++i)
    if (p.c[i]) {
      Code s = C.inv(p.c[i]);
      for (int j = i; j < 3; ++j) p.c[j] = C.mul(s, p.c[j]);
      return p;
    }
  return p;
}

Code p2_dot(const Field& C, const P2& a, const P2& b) {
  Code r = 0;
  for (int i = 0; i < 3; ++i) r = C.add(r, C.mul(a.c[i], b.c[i]));
  return r;
}

P2 p2_cross(const Field& C, const P2& a, const P2& b) {
  auto d = [&](int i, int j) {
    return C.sub(C.mul(a.c[i], b.c[j]), C.mul(a.c[j], b.c[i]));
  };
  return P2{{d(1, 2), C.neg(d(0, 2)), d(0, 1)}};
}

P2 mat3_point(const Field& C, const Mat3& m, const P2& p) {
  P2 r;
  for (int i = 0; i < 3; ++i) {
    Code v = 0;
    for (int j = 0; j < 3; ++j) v = C.add(v, C.mul(m[3 * i + j], p.c[j]));
    r.c[i] = v;
  }
  return r;
}

P2 mat3_line(const Field& C, const P2& l, const Mat3& m) {
  P2 r;
  for (int j = 0; j < 3; ++j) {
    Code v = 0;
    for (int i = 0; i < 3; ++i) v = C.add(v, C.mul(l.c[i], m[3 * i + j]));
    r.c[j] = v;
  }
  return r;
}

int BBContext::plane_index(Code label) const {
  if (label == kInf) return int(spread.size()) - 1;
  return int(cubic().rank(label));
}

const Subspace& BBContext::plane_of(Code label) const {
  return spread[size_t(plane_index(label))];
}

BBContext make_bb_context(const FieldTower& T) {
  const Field& B = T.base();
  const Field& C = T.cubic();
  BBContext ctx;
  ctx.tw = &T;

  std::vector<Vec> inf_rows;
  for (int i = 0; i < 6; ++i) {
    Vec v = Vec::zero(7);
    v[i] = 1;
    inf_rows.push_back(v);
  }
  ctx.sigma_inf = subspace_from_rows(B, inf_rows);

  const std::array<Code, 3> taup = {1, T.tau(), C.mul(T.tau(), T.tau())};
  ctx.spread.resize(C.n + 1);
  ctx.spread_labels.resize(C.n + 1);
  for (uint32_t k = 0; k < C.n; ++k) {
    std::vector<Vec> rows;
    for (int j = 0; j < 3; ++j) {
      Triple xc = T.coeffs(C.mul(Code(k), taup[j]));
      Triple yc = T.coeffs(taup[j]);
      Vec v = Vec::zero(6);
      for (int i = 0; i < 3; ++i) {
        v[i] = xc[i];
        v[3 + i] = yc[i];
      }
      rows.push_back(v);
    }
    uint32_t idx = C.rank(Code(k));
    ctx.spread[idx] = subspace_from_rows(B, rows);
    ctx.spread_labels[idx] = Code(k);
  }
  {
    std::vector<Vec> rows;
    for (int j = 0; j < 3; ++j) {
      Vec v = Vec::zero(6);
      v[j] = 1;
      rows.push_back(v);
    }
    ctx.spread[C.n] = subspace_from_rows(B, rows);
    ctx.spread_labels[C.n] = kInf;
  }
  ensure(is_plane_spread(B, ctx.spread), "spread does not partition Sigma_inf");

  const TransversalFrame fr = T.frame();
  ctx.a1 = Vec::zero(6);
  ctx.a2 = Vec::zero(6);
  for (int i = 0; i < 3; ++i) {
    ctx.a1[i] = fr.p[i];
    ctx.a2[3 + i] = fr.p[i];
  }
  ctx.g_s = subspace_from_rows(C, {ctx.a1, ctx.a2});
  ensure(ctx.g_s.dim() == 1, "g_S is not a line");
  return ctx;
}

Vec epsilon(const FieldTower& T, const P2& p) {
  const Field& C = T.cubic();
  require(!(p.c[0] == 0 && p.c[1] == 0 && p.c[2] == 0),
          "epsilon of the zero vector");
  P2 s = p;
  if (!T.in_base(s.c[2])) {
    Code f = T.pow_log(s.c[2], long(T.q()) * T.q() + T.q());
    for (int i = 0; i < 3; ++i) s.c[i] = C.mul(f, s.c[i]);
  }
  ensure(T.in_base(s.c[2]), "renormalized z is not in the base field");
  Triple xc = T.coeffs(s.c[0]), yc = T.coeffs(s.c[1]);
  Vec v = Vec::zero(7);
  for (int i = 0; i < 3; ++i) {
    v[i] = xc[i];
    v[3 + i] = yc[i];
  }
  v[6] = T.coeffs(s.c[2])[0];
  return normalize(T.base(), v);
}

Code point_label(const FieldTower& T, const Vec& p) {
  Code alpha = T.make_elem(p[0], p[1], p[2]);
  Code beta = T.make_elem(p[3], p[4], p[5]);
  if (beta == 0) {
    require(alpha != 0, "label of the zero point");
    return kInf;
  }
  return T.cubic().mul(alpha, T.cubic().inv(beta));
}

Subspace lift_to_pg6(const Subspace& s) {
  Mat m;
  m.cols = uint8_t(s.m.cols + 1);
  for (int r = 0; r < s.m.rows; ++r) {
    Vec v = Vec::zero(m.cols);
    for (int c = 0; c < s.m.cols; ++c) v[c] = s.m.at(r, c);
    m.push_row(v);
  }
  return Subspace{m};
}

Subspace drop_to_pg5(const Subspace& s) {
  Mat m;
  m.cols = uint8_t(s.m.cols - 1);
  for (int r = 0; r < s.m.rows; ++r) {
    require(s.m.at(r, s.m.cols - 1) == 0, "subspace not inside z = 0");
    Vec v = Vec::zero(m.cols);
    for (int c = 0; c < m.cols; ++c) v[c] = s.m.at(r, c);
    m.push_row(v);
  }
  return Subspace{m};
}

Vec lift_point(const Vec& p) {
  Vec v = Vec::zero(p.n + 1);
  for (int i = 0; i < p.n; ++i) v[i] = p[i];
  return v;
}

Vec drop_point(const Vec& p) {
  require(p[p.n - 1] == 0, "point not inside z = 0");
  Vec v = Vec::zero(p.n - 1);
  for (int i = 0; i + 1 < p.n; ++i) v[i] = p[i];
  return v;
}

Subspace frob_subspace(const FieldTower& T, const Subspace& s, int power) {
  // Frobenius fixes pivots and zeros, so the image basis is already RREF
  Subspace r = s;
  for (int i = 0; i < r.m.rows; ++i)
    for (int c = 0; c < r.m.cols; ++c)
      r.m.at(i, c) = T.frob(r.m.at(i, c), power);
  return r;
}

std::vector<Subspace> transversal_search(const Field& C,
                                         const std::vector<Subspace>& planes) {
  require(planes.size() >= 2, "transversal search needs at least two planes");
  for (size_t i = 0; i < planes.size(); ++i)
    for (size_t j = i + 1; j < planes.size(); ++j)
      require(disjoint(C, planes[i], planes[j]),
              "transversal search wants pairwise disjoint planes");
  std::vector<Vec> pts1 = enumerate_points(C, planes[0]);
  std::vector<Vec> pts2 = enumerate_points(C, planes[1]);
  std::vector<Subspace> found;
  for (const Vec& p : pts1)
    for (const Vec& q : pts2) {
      bool ok = true;
      for (size_t r = 2; r < planes.size(); ++r)
        if (!line_meets_plane(C, p, q, planes[r])) {
          ok = false;
          break;
        }
      if (ok) found.push_back(subspace_from_rows(C, {p, q}));
    }
  std::sort(found.begin(), found.end(),
            [&](const Subspace& a, const Subspace& b) {
              return subspace_less(C, a, b);
            });
  return found;
}

TransversalSet spread_transversals(const BBContext& ctx) {
  const Field& C = ctx.cubic();
  TransversalSet t;
  t.span_points = {ctx.a1, ctx.a2};
  for (int i = 0; i < 3; ++i) {
    Vec u = ctx.a1, v = ctx.a2;
    for (int c = 0; c < 6; ++c) {
      u[c] = ctx.tw->frob(u[c], i);
      v[c] = ctx.tw->frob(v[c], i);
    }
    t.lines[i] = subspace_from_rows(C, {u, v});
    ensure(t.lines[i].dim() == 1, "transversal conjugate is not a line");
  }
  return t;
}

ProjPair label_pair(const FieldTower& T, Code label) {
  (void)T;
  if (label == kInf) return ProjPair{1, 0};
  return ProjPair{label, 1};
}

Code pair_label(const Field& C, const ProjPair& p) {
  if (p.v == 0) {
    require(p.u != 0, "label of the zero pair");
    return kInf;
  }
  return C.mul(p.u, C.inv(p.v));
}

std::vector<Code> subline_through(const FieldTower& T, Code a, Code b,
                                  Code c) {
  const Field& C = T.cubic();
  ProjPair pa = label_pair(T, a), pb = label_pair(T, b), pc = label_pair(T, c);
  auto det = [&](const ProjPair& x, const ProjPair& y) {
    return C.sub(C.mul(x.u, y.v), C.mul(x.v, y.u));
  };
  Code d1 = det(pc, pb), d2 = det(pc, pa);
  require(det(pa, pb) != 0 && d1 != 0 && d2 != 0,
          "subline needs three distinct labels");
  // phi sends a,b,c to 0,infinity,1; minv is its adjugate inverse
  std::array<Code, 4> minv = {C.neg(C.mul(pb.u, d2)), C.mul(pa.u, d1),
                              C.neg(C.mul(pb.v, d2)), C.mul(pa.v, d1)};
  std::vector<Code> out;
  for (uint32_t t = 0; t <= T.q(); ++t) {
    ProjPair tp =
        (t == T.q()) ? ProjPair{1, 0} : ProjPair{T.embed(Code(t)), 1};
    ProjPair x{C.add(C.mul(minv[0], tp.u), C.mul(minv[1], tp.v)),
               C.add(C.mul(minv[2], tp.u), C.mul(minv[3], tp.v))};
    out.push_back(pair_label(C, x));
  }
  std::sort(out.begin(), out.end(), [&](Code x, Code y) {
    if (x == kInf) return false;
    if (y == kInf) return true;
    return C.less(x, y);
  });
  return out;
}

bool is_subline(const FieldTower& T, std::vector<Code> labels) {
  if (labels.size() != size_t(T.q()) + 1) return false;
  const Field& C = T.cubic();
  std::sort(labels.begin(), labels.end(), [&](Code x, Code y) {
    if (x == kInf) return false;
    if (y == kInf) return true;
    return C.less(x, y);
  });
  for (size_t i = 0; i + 1 < labels.size(); ++i)
    if (labels[i] == labels[i + 1]) return false;
  return subline_through(T, labels[0], labels[1], labels[2]) == labels;
}

Regulus subline_to_regulus(const BBContext& ctx,
                           const std::vector<Code>& labels) {
  const FieldTower& T = *ctx.tw;
  require(is_subline(T, labels), "labels do not form an order-q-subline");
  std::vector<Code> sorted = labels;
  const Field& C = ctx.cubic();
  std::sort(sorted.begin(), sorted.end(), [&](Code x, Code y) {
    if (x == kInf) return false;
    if (y == kInf) return true;
    return C.less(x, y);
  });
  Regulus r = regulus_from_three_planes(ctx.base(), ctx.plane_of(sorted[0]),
                                        ctx.plane_of(sorted[1]),
                                        ctx.plane_of(sorted[2]));
  std::unordered_set<Subspace, SubspaceHash> members(r.planes.begin(),
                                                     r.planes.end());
  for (Code l : sorted)
    ensure(members.count(ctx.plane_of(l)) == 1,
           "subline planes do not close into their regulus");
  return r;
}

TwistedCubicParam twisted_cubic_from_subline(const BBContext& ctx, const P2& a,
                                             const P2& b) {
  const FieldTower& T = *ctx.tw;
  const Field& C = ctx.cubic();
  P2 cr = p2_cross(C, a, b);
  require(!(cr.c[0] == 0 && cr.c[1] == 0 && cr.c[2] == 0),
          "parametrization needs two distinct points");
  const Code ga = a.c[2], gb = b.c[2];
  require(gb != 0, "P(infinity) lies on the infinite line");
  for (uint32_t t = 0; t < T.q(); ++t)
    require(C.add(ga, C.mul(T.embed(Code(t)), gb)) != 0,
            "parametrized subline meets the infinite line");

  std::array<std::array<Code, 2>, 3> lin;
  for (int j = 0; j < 3; ++j) lin[j] = {a.c[j], b.c[j]};
  std::array<Code, 2> gs1 = {C.frob(lin[2][0]), C.frob(lin[2][1])};
  std::array<Code, 2> gs2 = {C.frob(gs1[0]), C.frob(gs1[1])};

  TwistedCubicParam n;
  const Poly4 xs = mul_linear3(C, lin[0], gs1, gs2);
  const Poly4 ys = mul_linear3(C, lin[1], gs1, gs2);
  const Poly4 zs = mul_linear3(C, lin[2], gs1, gs2);
  for (int d = 0; d < 4; ++d) {
    Triple xc = T.coeffs(xs[d]), yc = T.coeffs(ys[d]);
    for (int i = 0; i < 3; ++i) {
      n.polys[i][d] = xc[i];
      n.polys[3 + i][d] = yc[i];
    }
    ensure(T.in_base(zs[d]), "norm polynomial has a coefficient outside GF(q)");
    n.polys[6][d] = T.coeffs(zs[d])[0];
  }

  P2 dir;
  for (int j = 0; j < 3; ++j)
    dir.c[j] = C.sub(C.mul(ga, b.c[j]), C.mul(gb, a.c[j]));
  ensure(dir.c[2] == 0 && !(dir.c[0] == 0 && dir.c[1] == 0),
         "direction point is not on the infinite line");
  n.inf_label = dir.c[1] == 0 ? kInf : C.mul(dir.c[0], C.inv(dir.c[1]));

  for (uint32_t t = 0; t <= T.q(); ++t) {
    Code tc = (t == T.q()) ? kInf : Code(t);
    P2 pt = b;
    if (tc != kInf) {
      Code te = T.embed(tc);
      for (int j = 0; j < 3; ++j)
        pt.c[j] = C.add(a.c[j], C.mul(te, b.c[j]));
    }
    ensure(cubic_point_base(T, n, tc) == epsilon(T, pt),
           "cubic parametrization disagrees with the point map");
  }
  return n;
}

Vec cubic_point_base(const FieldTower& T, const TwistedCubicParam& n,
                     Code t) {
  const Field& B = T.base();
  Vec v = Vec::zero(7);
  for (int i = 0; i < 7; ++i) {
    if (t == kInf) {
      v[i] = n.polys[i][3];
    } else {
      Code acc = 0;
      for (int d = 3; d >= 0; --d) acc = B.add(B.mul(acc, t), n.polys[i][d]);
      v[i] = acc;
    }
  }
  ensure(!v.is_zero(), "cubic parametrization vanished");
  return normalize(B, v);
}

Vec cubic_point_ext(const FieldTower& T, const TwistedCubicParam& n, Code t) {
  const Field& C = T.cubic();
  Vec v = Vec::zero(7);
  for (int i = 0; i < 7; ++i) {
    if (t == kInf) {
      v[i] = n.polys[i][3];
    } else {
      Code acc = 0;
      for (int d = 3; d >= 0; --d) acc = C.add(C.mul(acc, t), n.polys[i][d]);
      v[i] = acc;
    }
  }
  ensure(!v.is_zero(), "cubic extension vanished");
  return normalize(C, v);
}

Subspace cubic_tangent_at_zero(const FieldTower& T,
                               const TwistedCubicParam& n) {
  const Field& B = T.base();
  auto column = [&](int d) {
    Vec v = Vec::zero(7);
    for (int i = 0; i < 7; ++i) v[i] = n.polys[i][d];
    return v;
  };
  Vec c0 = column(0);
  ensure(!c0.is_zero(), "cubic has no point at t = 0");
  for (int d = 1; d < 4; ++d) {
    Vec r = column(d);
    if (r.is_zero()) continue;
    Subspace line = subspace_from_rows(B, {c0, r});
    if (line.dim() == 1) return line;
  }
  ensure(false, "cubic is a repeated point");
  return Subspace{};
}

Code line_inf_label(const Field& C, const P2& line) {
  require(!(line.c[0] == 0 && line.c[1] == 0),
          "the infinite line has no single label");
  if (line.c[0] == 0) return kInf;
  return C.neg(C.mul(line.c[1], C.inv(line.c[0])));
}

bool is_special_cubic(const BBContext& ctx, const TwistedCubicParam& n,
                      const std::array<Subspace, 3>& lines) {
  const FieldTower& T = *ctx.tw;
  const Field& C = ctx.cubic();
  std::vector<Vec> pts;
  pts.reserve(C.n + 1);
  for (uint32_t t = 0; t <= C.n; ++t)
    pts.push_back(cubic_point_ext(T, n, t == C.n ? kInf : Code(t)));
  for (const Subspace& line : lines) {
    Subspace lifted = lift_to_pg6(line);
    bool met = false;
    for (const Vec& p : pts)
      if (contains(C, lifted, p)) {
        met = true;
        break;
      }
    if (!met) return false;
  }
  return true;
}

}  // namespace splash
