#include "splash/covers.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "splash/check.hpp"

namespace splash {
namespace {

Vec pair_point(const FieldTower& T, Code x, Code y) {
  Triple xc = T.coeffs(x), yc = T.coeffs(y);
  Vec v = Vec::zero(6);
  for (int i = 0; i < 3; ++i) {
    v[i] = xc[i];
    v[3 + i] = yc[i];
  }
  return v;
}

Subspace make_cover_plane(const BBContext& ctx, CoverKind kind, Code k) {
  const FieldTower& T = *ctx.tw;
  const Field& C = ctx.cubic();
  const int power = kind == CoverKind::Tangent ? 1 : 2;
  std::vector<Vec> rows;
  Code tj = 1;
  for (int j = 0; j < 3; ++j) {
    rows.push_back(pair_point(T, C.mul(k, tj), T.frob(tj, power)));
    tj = C.mul(tj, T.tau());
  }
  return subspace_from_rows(T.base(), rows);
}

std::set<uint64_t> family_union(const Field& B,
                                const std::vector<Subspace>& planes) {
  std::set<uint64_t> u;
  for (const Subspace& p : planes)
    for (const Vec& v : enumerate_points(B, p)) u.insert(point_index(B, v));
  return u;
}

Vec frob_vec(const FieldTower& T, Vec v, int power) {
  for (int i = 0; i < v.n; ++i) v[i] = T.frob(v[i], power);
  return v;
}

Homography block_hom(const Field& F, const Mat3& a, const Mat3& b, int cols) {
  Mat m;
  m.rows = uint8_t(cols);
  m.cols = uint8_t(cols);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      m.at(i, j) = a[3 * i + j];
      m.at(3 + i, 3 + j) = b[3 * i + j];
    }
  if (cols == 7) m.at(6, 6) = 1;
  return make_homography(F, m);
}

Mat3 identity3() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

const Subspace& plane_by_label(const Cover& cov, Code k) {
  for (size_t i = 0; i < cov.labels.size(); ++i)
    if (cov.labels[i] == k) return cov.planes[i];
  require(false, "label outside the cover");
  return cov.planes[0];
}

std::vector<Code> norm_one_labels(const FieldTower& T) {
  const Field& C = T.cubic();
  std::vector<Code> kset;
  const Code gen = T.pow_log(T.tau(), long(T.q()) - 1);
  Code k = 1;
  for (uint32_t i = 0; i < uint32_t(T.q()) * T.q() + T.q() + 1; ++i) {
    kset.push_back(k);
    k = C.mul(k, gen);
  }
  return kset;
}

}  // namespace

Homography beta_hom(const BBContext& ctx) {
  const FieldTower& T = *ctx.tw;
  return block_hom(T.base(), identity3(), T.frobenius_matrix(), 6);
}

Homography theta_hom(const BBContext& ctx) {
  const FieldTower& T = *ctx.tw;
  return block_hom(T.base(), T.companion(), T.companion(), 7);
}

Homography theta_inf_hom(const BBContext& ctx) {
  const FieldTower& T = *ctx.tw;
  return block_hom(T.base(), T.companion(), T.companion(), 6);
}

std::pair<Cover, Cover> covers_of_splash(const BBContext& ctx,
                                         const Splash& S) {
  const FieldTower& T = *ctx.tw;
  const Field& B = T.base();
  const Homography beta = beta_hom(ctx);

  Cover tc, cc;
  tc.kind = CoverKind::Tangent;
  cc.kind = CoverKind::Conic;
  tc.labels = S.labels;
  cc.labels = S.labels;
  for (Code k : S.labels) {
    tc.planes.push_back(make_cover_plane(ctx, CoverKind::Tangent, k));
    cc.planes.push_back(make_cover_plane(ctx, CoverKind::Conic, k));
  }

  // beta steps S -> T -> C -> S label by label and has order three
  Mat id6;
  id6.rows = 6;
  id6.cols = 6;
  for (int i = 0; i < 6; ++i) id6.at(i, i) = 1;
  const Homography b2 = hom_compose(B, beta, beta);
  ensure(hom_compose(B, b2, beta) == make_homography(B, id6),
         "beta does not have order three");
  const size_t n = S.labels.size();
  for (size_t i = 0; i < n; ++i) {
    ensure(apply_hom(B, beta, S.planes[i]) == tc.planes[i],
           "beta misses a tangent-cover plane");
    ensure(apply_hom(B, beta, tc.planes[i]) == cc.planes[i],
           "beta misses a conic-cover plane");
    ensure(apply_hom(B, beta, cc.planes[i]) == S.planes[i],
           "beta does not close the family cycle");
  }
  for (const Subspace& carrier : S.carriers)
    ensure(apply_hom(B, beta, carrier) == carrier, "beta moves a carrier");

  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      ensure(disjoint(B, tc.planes[i], tc.planes[j]),
             "tangent-cover planes meet");
      ensure(disjoint(B, cc.planes[i], cc.planes[j]),
             "conic-cover planes meet");
    }

  const std::set<uint64_t> us = family_union(B, S.planes);
  ensure(us.size() == n * n, "splash point union has the wrong size");
  ensure(us == family_union(B, tc.planes) && us == family_union(B, cc.planes),
         "cover point unions differ from the splash");

  const std::array<const std::vector<Subspace>*, 3> fams = {
      &S.planes, &tc.planes, &cc.planes};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          ensure(meet(B, (*fams[a])[i], (*fams[b])[j]).dim() == 0,
                 "cross-family planes do not meet in one point");
  return {tc, cc};
}

CoverTransversals cover_transversals(const BBContext& ctx, const Cover& c) {
  const FieldTower& T = *ctx.tw;
  const Field& C = ctx.cubic();
  const bool tangent = c.kind == CoverKind::Tangent;
  const Vec a2c = frob_vec(T, ctx.a2, tangent ? 2 : 1);

  CoverTransversals out;
  Subspace g = subspace_from_rows(C, {ctx.a1, a2c});
  ensure(g.dim() == 1, "cover transversal is not a line");
  for (int i = 0; i < 3; ++i) out.lines[i] = frob_subspace(T, g, i);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      ensure(disjoint(C, out.lines[i], out.lines[j]),
             "conjugate cover transversals meet");

  const long e = tangent ? 1 - long(T.q()) * T.q() : 1 - long(T.q());
  const Code coef = T.pow_log(T.frame().eta, e);
  for (size_t i = 0; i < c.labels.size(); ++i) {
    Vec m = vec_add(C, vec_scale(C, c.labels[i], ctx.a1),
                    vec_scale(C, coef, a2c));
    Subspace ext = extend_subspace(T, c.planes[i]);
    Subspace cut = meet(C, g, ext);
    ensure(cut.dim() == 0, "transversal does not pierce the cover plane");
    ensure(contains(C, cut, m),
           "marked point is not the transversal intersection");
    out.marked.push_back(normalize(C, m));
  }
  return out;
}

ThetaReport verify_theta_action(const BBContext& ctx, const Splash& S,
                                const Cover& tcov, const Cover& ccov) {
  const FieldTower& T = *ctx.tw;
  const Field& B = T.base();
  const Field& C = ctx.cubic();
  const Homography th = theta_inf_hom(ctx);
  (void)S;

  ThetaReport rep;
  rep.fixes_spread = true;
  for (const Subspace& p : ctx.spread)
    if (apply_hom(B, th, p) != p) rep.fixes_spread = false;

  const Code tang_mult = T.pow_log(T.tau(), 1 - long(T.q()) * T.q());
  const Code con_mult = T.pow_log(T.tau(), 1 - long(T.q()));
  rep.maps_covers = true;
  for (size_t i = 0; i < tcov.labels.size(); ++i) {
    if (apply_hom(B, th, tcov.planes[i]) !=
        plane_by_label(tcov, C.mul(tang_mult, tcov.labels[i])))
      rep.maps_covers = false;
    if (apply_hom(B, th, ccov.planes[i]) !=
        plane_by_label(ccov, C.mul(con_mult, ccov.labels[i])))
      rep.maps_covers = false;
  }

  auto orbit = [&](const Subspace& start) {
    Subspace cur = apply_hom(B, th, start);
    uint32_t len = 1;
    while (cur != start) {
      cur = apply_hom(B, th, cur);
      ensure(++len <= C.n + 1, "theta orbit does not close");
    }
    return len;
  };
  rep.tangent_orbit = orbit(tcov.planes[0]);
  rep.conic_orbit = orbit(ccov.planes[0]);
  return rep;
}

std::vector<Subspace> carrier_characterisation(const BBContext& ctx,
                                               const Splash& S,
                                               const Cover& tcov,
                                               const Cover& ccov) {
  const FieldTower& T = *ctx.tw;
  const Field& C = ctx.cubic();
  const TransversalSet gs = spread_transversals(ctx);
  const CoverTransversals gt = cover_transversals(ctx, tcov);
  const CoverTransversals gc = cover_transversals(ctx, ccov);
  (void)S;

  std::vector<Subspace> nine;
  for (int i = 0; i < 3; ++i) nine.push_back(gs.lines[i]);
  for (int i = 0; i < 3; ++i) nine.push_back(gt.lines[i]);
  for (int i = 0; i < 3; ++i) nine.push_back(gc.lines[i]);
  for (size_t i = 0; i < nine.size(); ++i)
    for (size_t j = i + 1; j < nine.size(); ++j)
      ensure(nine[i] != nine[j], "the nine transversal lines repeat");

  std::vector<Subspace> out;
  for (const Subspace& plane : ctx.spread) {
    Subspace ext = extend_subspace(T, plane);
    for (int i = 0; i < 3; ++i)
      ensure(meet(C, gs.lines[i], ext).dim() == 0,
             "a spread transversal misses a spread plane");
    bool all = true;
    for (const Subspace& ln : nine)
      if (meet(C, ln, ext).dim() < 0) {
        all = false;
        break;
      }
    if (all) out.push_back(plane);
  }
  ensure(out.size() == 2 && out[0] == ctx.plane_of(0) &&
             out[1] == ctx.plane_of(kInf),
         "transversal-complete planes are not the two carriers");
  return out;
}

SplashFamily disjoint_splashes(const BBContext& ctx) {
  const FieldTower& T = *ctx.tw;
  const Field& C = ctx.cubic();
  const std::vector<Code> kset = norm_one_labels(T);

  SplashFamily fam;
  std::set<Code> seen;
  Code tj = 1;
  for (uint32_t j = 0; j + 1 < T.q(); ++j) {
    Splash s;
    for (Code x : kset) s.labels.push_back(C.mul(tj, x));
    std::sort(s.labels.begin(), s.labels.end(),
              [&](Code a, Code b) { return C.less(a, b); });
    for (Code l : s.labels) {
      s.planes.push_back(ctx.plane_of(l));
      ensure(seen.insert(l).second, "coset splashes overlap");
    }
    s.carrier_labels = {kInf, 0};
    s.carriers = {ctx.plane_of(kInf), ctx.plane_of(0)};
    fam.splashes.push_back(std::move(s));
    tj = C.mul(tj, T.tau());
  }
  ensure(!seen.count(0) && seen.size() + 2 == size_t(C.n) + 1,
         "coset splashes plus carriers do not fill the infinite line");

  bool first = true;
  for (const Splash& s : fam.splashes) {
    auto [tc, cc] = covers_of_splash(ctx, s);
    CoverTransversals gt = cover_transversals(ctx, tc);
    CoverTransversals gc = cover_transversals(ctx, cc);
    if (first) {
      fam.tangent_lines = gt.lines;
      fam.conic_lines = gc.lines;
      first = false;
    } else {
      ensure(gt.lines == fam.tangent_lines,
             "tangent transversals differ across cosets");
      ensure(gc.lines == fam.conic_lines,
             "conic transversals differ across cosets");
    }
  }
  return fam;
}

ReplacementSpread replace_hyperreguli(const BBContext& ctx,
                                      const std::vector<Choice>& choice) {
  const FieldTower& T = *ctx.tw;
  require(choice.size() + 1 == T.q(), "one selector per coset splash");
  const SplashFamily fam = disjoint_splashes(ctx);

  ReplacementSpread rs;
  rs.choice = choice;
  rs.planes.push_back(ctx.plane_of(0));
  rs.planes.push_back(ctx.plane_of(kInf));
  for (size_t j = 0; j < choice.size(); ++j) {
    const Splash& s = fam.splashes[j];
    if (choice[j] == Choice::Keep) {
      rs.planes.insert(rs.planes.end(), s.planes.begin(), s.planes.end());
    } else {
      auto [tc, cc] = covers_of_splash(ctx, s);
      const Cover& chosen = choice[j] == Choice::Tangent ? tc : cc;
      rs.planes.insert(rs.planes.end(), chosen.planes.begin(),
                       chosen.planes.end());
    }
  }
  ensure(is_plane_spread(T.base(), rs.planes),
         "replacement does not partition Sigma_inf");
  rs.regular = is_regular_spread(T.base(), rs.planes);
  return rs;
}

SectionResult cover_plane_section(const BBContext& ctx, const Regulus& r,
                                  const Subspace& cover_plane) {
  const FieldTower& T = *ctx.tw;
  const Field& B = T.base();
  const long norm_exp = long(T.q()) * T.q() + T.q() + 1;
  for (const Subspace& p : r.planes) {
    Code label = point_label(T, p.m.row(0));
    require(label != kInf && label != 0 &&
                T.pow_log(label, norm_exp) == 1 && p == ctx.plane_of(label),
            "regulus plane outside the splash");
  }

  SectionResult res;
  for (const Subspace& p : r.planes) {
    Subspace m = meet(B, cover_plane, p);
    ensure(m.dim() == 0, "cover plane misses a regulus plane");
    res.points.push_back(m.m.row(0));
  }

  Subspace first = subspace_from_rows(B, {res.points[0], res.points[1]});
  ensure(first.dim() == 1, "section points repeat");
  bool all_on = true;
  for (const Vec& pt : res.points) all_on = all_on && contains(B, first, pt);
  if (all_on) {
    res.kind = SectionResult::Line;
    res.line = first;
    return res;
  }
  const size_t n = res.points.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      Subspace l = subspace_from_rows(B, {res.points[i], res.points[j]});
      ensure(l.dim() == 1, "section points repeat");
      for (size_t k2 = j + 1; k2 < n; ++k2)
        ensure(!contains(B, l, res.points[k2]),
               "section is neither a line nor an arc");
    }
  res.kind = SectionResult::ConicPoints;
  return res;
}

SublineClassification classify_subline_regulus(const BBContext& ctx,
                                               const Regulus& r,
                                               const Cover& tcov,
                                               const Cover& ccov) {
  auto sections = [&](const Cover& cov) {
    std::vector<SectionResult> out;
    for (const Subspace& pi : cov.planes)
      out.push_back(cover_plane_section(ctx, r, pi));
    return out;
  };
  auto uniform = [](const std::vector<SectionResult>& v) {
    for (const SectionResult& s : v)
      if (s.kind != v[0].kind) return false;
    return true;
  };
  const std::vector<SectionResult> ts = sections(tcov);
  const std::vector<SectionResult> cs = sections(ccov);
  ensure(uniform(ts) && uniform(cs), "cover sections are not uniform");

  // line sections must exhaust the ruling, one line per cover plane
  auto check_ruling = [&](const std::vector<SectionResult>& v) {
    std::unordered_set<Subspace, SubspaceHash> distinct;
    for (const SectionResult& s : v) {
      ensure(std::find(r.ruling.begin(), r.ruling.end(), s.line) !=
                 r.ruling.end(),
             "line section is not a ruling line");
      distinct.insert(s.line);
    }
    ensure(distinct.size() == v.size(), "cover planes share a section line");
  };

  SublineClassification out;
  const bool t_line = ts[0].kind == SectionResult::Line;
  const bool c_line = cs[0].kind == SectionResult::Line;
  ensure(!(t_line && c_line), "both covers meet the regulus in lines");
  if (t_line) {
    out.value = SublineClassification::Pencil;
    out.witness = tcov.planes[0];
    check_ruling(ts);
  } else if (c_line) {
    out.value = SublineClassification::DualConic;
    out.witness = ccov.planes[0];
    check_ruling(cs);
  } else {
    out.value = SublineClassification::ConicOnly;
  }
  return out;
}

Regulus dual_conic_regulus(const BBContext& ctx, const Cover& ccov,
                           const Subspace& u) {
  const FieldTower& T = *ctx.tw;
  const Field& B = T.base();
  require(ccov.kind == CoverKind::Conic, "ruling lines live in the conic cover");
  require(u.dim() == 1 && u.ambient() == 5, "u must be a line of Sigma_inf");
  bool inside = false;
  for (const Subspace& p : ccov.planes) inside = inside || subspace_leq(B, u, p);
  require(inside, "u is not inside a conic-cover plane");

  std::vector<Code> labels;
  for (const Vec& pt : enumerate_points(B, u))
    labels.push_back(point_label(T, pt));
  std::set<Code> distinct(labels.begin(), labels.end());
  require(distinct.size() == labels.size() && !distinct.count(kInf) &&
              !distinct.count(0),
          "u passes through a carrier point");

  ensure(is_subline(T, labels), "cover line labels do not form a subline");
  Regulus reg = subline_to_regulus(ctx, labels);
  ensure(std::find(reg.ruling.begin(), reg.ruling.end(), u) !=
             reg.ruling.end(),
         "u is not a ruling line of its regulus");
  return reg;
}

bool is_cover_special_conic(const BBContext& ctx, const Regulus& r,
                            const Subspace& cover_plane,
                            const std::array<Subspace, 3>& transversals) {
  const FieldTower& T = *ctx.tw;
  const Field& C = ctx.cubic();
  require(cover_plane_section(ctx, r, cover_plane).kind ==
              SectionResult::ConicPoints,
          "section is not a conic");

  const Regulus ext = extend_regulus(T, r);
  const Subspace pe = extend_subspace(T, cover_plane);
  std::vector<Vec> pts;
  for (const Subspace& p : ext.planes) {
    Subspace m = meet(C, pe, p);
    ensure(m.dim() == 0, "extended section misses an extended plane");
    pts.push_back(m.m.row(0));
  }
  for (const Subspace& ln : transversals) {
    Subspace m = meet(C, pe, ln);
    if (m.dim() != 0) return false;
    if (std::find(pts.begin(), pts.end(), m.m.row(0)) == pts.end())
      return false;
  }
  return true;
}

std::vector<std::vector<Code>> splash_sublines(
    const FieldTower& T, const std::vector<Code>& labels) {
  const Field& C = T.cubic();
  const std::set<Code> lset(labels.begin(), labels.end());
  std::set<std::vector<Code>> found;
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = i + 1; j < labels.size(); ++j)
      for (size_t k = j + 1; k < labels.size(); ++k) {
        std::vector<Code> sl =
            subline_through(T, labels[i], labels[j], labels[k]);
        bool in = true;
        for (Code x : sl) in = in && lset.count(x) == 1;
        if (in) found.insert(sl);
      }
  std::vector<std::vector<Code>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(),
            [&](const std::vector<Code>& a, const std::vector<Code>& b) {
              for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
                if (a[i] != b[i]) return C.less(a[i], b[i]);
              }
              return a.size() < b.size();
            });
  return out;
}

}  // namespace splash
