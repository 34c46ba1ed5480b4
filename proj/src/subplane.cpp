#include "splash/subplane.hpp"

#include <algorithm>
#include <set>

#include "splash/check.hpp"

namespace splash {
namespace {

std::vector<P2> base_plane_points(const Field& B) {
  std::vector<P2> pts;
  for (uint32_t y = 0; y < B.n; ++y)
    for (uint32_t z = 0; z < B.n; ++z)
      pts.push_back(make_p2(1, Code(y), Code(z)));
  for (uint32_t z = 0; z < B.n; ++z) pts.push_back(make_p2(0, 1, Code(z)));
  pts.push_back(make_p2(0, 0, 1));
  return pts;
}

size_t index_of_point(const SubplaneConfig& B, const P2& p) {
  P2 n = normalize_p2(B.ctx->cubic(), p);
  for (size_t i = 0; i < B.points.size(); ++i)
    if (B.points[i] == n) return i;
  require(false, "point is not on the subplane");
  return 0;
}

}  // namespace

SubplaneConfig build_subplane(const BBContext& ctx) {
  const FieldTower& T = *ctx.tw;
  const Field& B = T.base();
  const Field& C = T.cubic();
  const Code tau = T.tau();
  const Code tq = C.frob(tau);
  const Code tau2 = C.mul(tau, tau);

  SubplaneConfig sp;
  sp.ctx = &ctx;
  sp.k = {C.neg(tau), 1, 0,
          C.neg(tq),  1, 0,
          C.mul(tau, tq), C.neg(C.add(tau, tq)), 1};
  sp.k_inv = {C.neg(Code(1)), 1,    0,
              C.neg(tq),      tau,  0,
              C.neg(C.frob(tau2)), tau2, C.sub(tau, tq)};

  // k * k_inv = (tau - tau^q) * identity, nonzero since tau is irrational
  Mat3 prod = mat3_mul(C, sp.k, sp.k_inv);
  const Code scale = C.sub(tau, tq);
  ensure(scale != 0, "tau is fixed by Frobenius");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      ensure(prod[3 * i + j] == (i == j ? scale : Code(0)),
             "k * k_inv is not scalar");

  for (const P2& pre : base_plane_points(B)) {
    sp.point_pre.push_back(pre);
    sp.points.push_back(normalize_p2(C, mat3_point(C, sp.k, pre)));
    sp.line_pre.push_back(pre);
    sp.lines.push_back(normalize_p2(C, mat3_line(C, pre, sp.k_inv)));
  }

  const size_t n = sp.points.size();
  for (size_t i = 0; i < n; ++i)
    ensure(sp.points[i].c[2] != 0, "subplane point on the infinite line");

  // the homography carries incidence both ways, q+1 per point and per line
  for (size_t li = 0; li < n; ++li) {
    int on = 0;
    for (size_t pi = 0; pi < n; ++pi) {
      bool pre_inc = p2_dot(B, sp.line_pre[li], sp.point_pre[pi]) == 0;
      bool img_inc = p2_dot(C, sp.lines[li], sp.points[pi]) == 0;
      ensure(pre_inc == img_inc, "incidence not preserved");
      on += img_inc;
    }
    ensure(on == int(T.q()) + 1, "subplane line with wrong point count");
  }

  std::set<Code> inf_labels;
  for (const P2& l : sp.lines) inf_labels.insert(line_inf_label(C, l));
  ensure(inf_labels.size() == n, "extended lines share an infinite point");
  return sp;
}

Splash splash_of(const SubplaneConfig& B) {
  const BBContext& ctx = *B.ctx;
  const FieldTower& T = B.tower();
  const Field& C = ctx.cubic();

  std::vector<Code> labels;
  for (const P2& l : B.lines) labels.push_back(line_inf_label(C, l));
  std::sort(labels.begin(), labels.end(),
            [&](Code a, Code b) { return C.less(a, b); });

  std::vector<Code> closed;
  const Code gen = T.pow_log(T.tau(), long(T.q()) - 1);
  Code k = 1;
  for (uint32_t i = 0; i < uint32_t(T.q()) * T.q() + T.q() + 1; ++i) {
    closed.push_back(k);
    k = C.mul(k, gen);
  }
  ensure(k == 1, "tau^(q-1) has the wrong order");
  std::sort(closed.begin(), closed.end(),
            [&](Code a, Code b) { return C.less(a, b); });
  ensure(labels == closed, "splash disagrees with its closed form");

  Splash s;
  s.labels = labels;
  for (Code l : labels) s.planes.push_back(ctx.plane_of(l));
  s.carrier_labels = {kInf, 0};
  s.carriers = {ctx.plane_of(kInf), ctx.plane_of(0)};
  return s;
}

Code quadric_eval(const Field& F, const QuadricForm& f, const Vec& p) {
  Code acc = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j)
      acc = F.add(acc, F.mul(f.at(i, j), F.mul(p[i], p[j])));
  return acc;
}

Vec quadric_polar(const Field& F, const QuadricForm& f, const Vec& p) {
  Vec w = Vec::zero(7);
  for (int k = 0; k < 7; ++k) {
    Code acc = F.mul(f.at(k, k), F.add(p[k], p[k]));
    for (int i = 0; i < k; ++i) acc = F.add(acc, F.mul(f.at(i, k), p[i]));
    for (int j = k + 1; j < 7; ++j) acc = F.add(acc, F.mul(f.at(k, j), p[j]));
    w[k] = acc;
  }
  return w;
}

QuadricForm quadric_normalize(const Field& F, QuadricForm f) {
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j)
      if (f.at(i, j)) {
        Code s = F.inv(f.at(i, j));
        for (int a = 0; a < 7; ++a)
          for (int b = a; b < 7; ++b) f.at(a, b) = F.mul(s, f.at(a, b));
        return f;
      }
  return f;
}

std::array<QuadricForm, 9> nine_quadrics(const SubplaneConfig& B) {
  const FieldTower& T = B.tower();
  const Field& Bf = T.base();
  const Field& C = T.cubic();
  const std::array<Code, 3> taup = {1, T.tau(), C.mul(T.tau(), T.tau())};

  // linear forms X, Y, Z of the subplane chart in the seven base variables
  std::array<std::array<Code, 7>, 3> lin{}, linq{};
  for (int r = 0; r < 3; ++r) {
    for (int i = 0; i < 3; ++i) {
      lin[r][i] = C.mul(B.k_inv[3 * r + 0], taup[i]);
      lin[r][3 + i] = C.mul(B.k_inv[3 * r + 1], taup[i]);
    }
    lin[r][6] = B.k_inv[3 * r + 2];
    for (int j = 0; j < 7; ++j) linq[r][j] = C.frob(lin[r][j]);
  }

  // tau-power components of U^q V - U V^q for each coordinate pair
  auto expand = [&](int u, int v, QuadricForm* out) {
    for (int i = 0; i < 7; ++i)
      for (int j = i; j < 7; ++j) {
        Code d;
        if (i == j) {
          d = C.sub(C.mul(linq[u][i], lin[v][i]),
                    C.mul(lin[u][i], linq[v][i]));
        } else {
          Code pos = C.add(C.mul(linq[u][i], lin[v][j]),
                           C.mul(linq[u][j], lin[v][i]));
          Code neg = C.add(C.mul(lin[u][i], linq[v][j]),
                           C.mul(lin[u][j], linq[v][i]));
          d = C.sub(pos, neg);
        }
        Triple comp = T.coeffs(d);
        for (int t = 0; t < 3; ++t) out[t].at(i, j) = comp[t];
      }
  };

  const std::array<std::pair<int, int>, 3> pairs = {{{1, 0}, {2, 0}, {2, 1}}};
  std::array<QuadricForm, 9> forms;
  for (int pi = 0; pi < 3; ++pi)
    expand(pairs[pi].first, pairs[pi].second, &forms[3 * pi]);

  // swapping the pair yields the same projective triple
  for (int pi = 0; pi < 3; ++pi) {
    QuadricForm swapped[3];
    expand(pairs[pi].second, pairs[pi].first, swapped);
    std::vector<QuadricForm> a, b;
    for (int t = 0; t < 3; ++t) {
      a.push_back(quadric_normalize(Bf, forms[3 * pi + t]));
      b.push_back(quadric_normalize(Bf, swapped[t]));
    }
    auto lt = [](const QuadricForm& x, const QuadricForm& y) {
      return x.c < y.c;
    };
    std::sort(a.begin(), a.end(), lt);
    std::sort(b.begin(), b.end(), lt);
    ensure(a == b, "swapped pair gives a different quadric triple");
  }

  for (int i = 0; i < 9; ++i) {
    bool zero = true;
    for (Code c : forms[i].c) zero = zero && c == 0;
    ensure(!zero, "quadric expansion collapsed to zero");
    for (int j = i + 1; j < 9; ++j)
      ensure(quadric_normalize(Bf, forms[i]) !=
                 quadric_normalize(Bf, forms[j]),
             "two of the nine quadrics coincide");
  }

  for (const P2& p : B.points) {
    Vec img = epsilon(T, p);
    for (const QuadricForm& f : forms)
      ensure(quadric_eval(Bf, f, img) == 0,
             "subplane point off one of the nine quadrics");
  }
  return forms;
}

TangentResult tangent_plane(const SubplaneConfig& B, const P2& p,
                            const std::array<QuadricForm, 9>& forms) {
  const BBContext& ctx = *B.ctx;
  const FieldTower& T = B.tower();
  const Field& Bf = T.base();
  index_of_point(B, p);
  Vec img = epsilon(T, p);

  TangentResult res;
  std::vector<Vec> rows;
  for (const QuadricForm& f : forms) {
    Vec w = quadric_polar(Bf, f, img);
    if (w.is_zero())
      ++res.zero_polars;
    else
      rows.push_back(w);
  }
  ensure(!rows.empty(), "every polar vanished at the point");
  res.plane = annihilator(Bf, subspace_from_rows(Bf, rows));
  ensure(res.plane.dim() == 2, "polar hyperplanes do not cut a plane");
  ensure(contains(Bf, res.plane, img), "tangent plane misses its point");
  res.trace = meet(Bf, res.plane, ctx.sigma_inf);
  ensure(res.trace.dim() == 1, "tangent plane trace is not a line");
  return res;
}

TangentResult tangent_plane(const SubplaneConfig& B, const P2& p) {
  return tangent_plane(B, p, nine_quadrics(B));
}

Subspace tangent_plane_via_cubics(const SubplaneConfig& B, const P2& p) {
  const BBContext& ctx = *B.ctx;
  const FieldTower& T = B.tower();
  const Field& Bf = T.base();
  const Field& C = T.cubic();
  const size_t idx = index_of_point(B, p);
  const P2& pre_p = B.point_pre[idx];
  Vec img = epsilon(T, p);

  std::vector<Subspace> tangents;
  for (size_t li = 0; li < B.lines.size(); ++li) {
    if (p2_dot(Bf, B.line_pre[li], pre_p) != 0) continue;
    size_t other = B.points.size();
    for (size_t pj = 0; pj < B.point_pre.size(); ++pj)
      if (pj != idx && p2_dot(Bf, B.line_pre[li], B.point_pre[pj]) == 0) {
        other = pj;
        break;
      }
    ensure(other < B.points.size(), "subplane line with a single point");

    // unnormalized images keep the parameter set GF(q)-rational
    P2 a = mat3_point(C, B.k, pre_p);
    P2 b = mat3_point(C, B.k, B.point_pre[other]);
    TwistedCubicParam n = twisted_cubic_from_subline(ctx, a, b);
    Subspace tl = cubic_tangent_at_zero(T, n);
    ensure(contains(Bf, tl, img), "tangent line misses its point");
    tangents.push_back(tl);
  }
  ensure(tangents.size() == size_t(T.q()) + 1,
         "point with wrong pencil size");

  Subspace plane = tangents[0];
  for (size_t i = 1; i < tangents.size(); ++i)
    plane = span(Bf, plane, tangents[i]);
  ensure(plane.dim() == 2, "tangent lines are not coplanar");
  return plane;
}

Regulus pencil_regulus(const SubplaneConfig& B, const P2& a) {
  const BBContext& ctx = *B.ctx;
  const FieldTower& T = B.tower();
  const Field& C = T.cubic();
  index_of_point(B, a);
  P2 an = normalize_p2(C, a);

  std::vector<Code> labels;
  for (const P2& l : B.lines)
    if (p2_dot(C, l, an) == 0) labels.push_back(line_inf_label(C, l));
  ensure(labels.size() == size_t(T.q()) + 1, "point with wrong pencil size");
  ensure(is_subline(T, labels), "pencil labels are not an order-q-subline");
  return subline_to_regulus(ctx, labels);
}

}  // namespace splash
