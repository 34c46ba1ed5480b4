#include "splash/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "splash/check.hpp"

namespace splash {
namespace {

using Clock = std::chrono::steady_clock;

std::string tuple_str(const FieldTower& T, Code x) {
  Triple c = T.coeffs(x);
  return std::to_string(c[0]) + ":" + std::to_string(c[1]) + ":" +
         std::to_string(c[2]);
}

std::string label_str(const FieldTower& T, Code x) {
  return x == kInf ? "inf" : tuple_str(T, x);
}

std::string labels_str(const FieldTower& T, const std::vector<Code>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += label_str(T, v[i]);
  }
  return s + "]";
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (int i = 0; i < v.n; ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

// check accumulator: first failure keeps its witness
class Ck {
 public:
  Ck(std::string id, std::string theorem) {
    r_.id = std::move(id);
    r_.theorem = std::move(theorem);
  }
  void count(const std::string& name, int64_t v) { r_.counts[name] = v; }
  void expect(const std::string& name, int64_t expected, int64_t actual) {
    r_.counts[name + " expected"] = expected;
    r_.counts[name] = actual;
    if (expected != actual) fail(name + ": expected " +
                                 std::to_string(expected) + ", got " +
                                 std::to_string(actual));
  }
  void check(bool ok, const std::string& witness) {
    if (!ok) fail(witness);
  }
  void fail(const std::string& w) {
    if (r_.pass) r_.witness = w;
    r_.pass = false;
  }
  CheckResult take(int64_t ms) {
    r_.ms = ms;
    return std::move(r_);
  }

 private:
  CheckResult r_;
};

void run_check(SuiteResult& out, const std::string& id,
               const std::string& theorem,
               const std::function<void(Ck&)>& body) {
  Ck ck(id, theorem);
  auto start = Clock::now();
  try {
    body(ck);
  } catch (const std::exception& e) {
    ck.fail(e.what());
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                Clock::now() - start)
                .count();
  out.checks.push_back(ck.take(ms));
}

Subspace full_space(const Field& F, int ambient) {
  std::vector<Vec> rows;
  for (int i = 0; i <= ambient; ++i) {
    Vec v = Vec::zero(ambient + 1);
    v[i] = 1;
    rows.push_back(v);
  }
  return subspace_from_rows(F, rows);
}

std::vector<P2> all_p2_points(const Field& F) {
  std::vector<P2> pts;
  for (uint32_t y = 0; y < F.n; ++y)
    for (uint32_t z = 0; z < F.n; ++z)
      pts.push_back(make_p2(1, Code(y), Code(z)));
  for (uint32_t z = 0; z < F.n; ++z) pts.push_back(make_p2(0, 1, Code(z)));
  pts.push_back(make_p2(0, 0, 1));
  return pts;
}

Vec pair_point(const FieldTower& T, Code x, Code y) {
  Triple xc = T.coeffs(x), yc = T.coeffs(y);
  Vec v = Vec::zero(6);
  for (int i = 0; i < 3; ++i) {
    v[i] = xc[i];
    v[3 + i] = yc[i];
  }
  return v;
}

Vec frob_vec(const FieldTower& T, Vec v, int power) {
  for (int i = 0; i < v.n; ++i) v[i] = T.frob(v[i], power);
  return v;
}

int64_t q2q1(const FieldTower& T) {
  return int64_t(T.q()) * T.q() + T.q() + 1;
}

int64_t q3p1(const FieldTower& T) { return int64_t(T.q3()) + 1; }

const BBContext& need_ctx(const World& w) {
  require(w.ctx.has_value(), "world lacks the Bruck-Bose context");
  return *w.ctx;
}
const SubplaneConfig& need_subplane(const World& w) {
  require(w.subplane.has_value(), "world lacks the subplane");
  return *w.subplane;
}
const Splash& need_splash(const World& w) {
  require(w.splash.has_value(), "world lacks the splash");
  return *w.splash;
}
const Cover& need_tc(const World& w) {
  require(w.tangent_cover.has_value(), "world lacks the tangent cover");
  return *w.tangent_cover;
}
const Cover& need_cc(const World& w) {
  require(w.conic_cover.has_value(), "world lacks the conic cover");
  return *w.conic_cover;
}

void suite_fields(const World& w, SuiteResult& out) {
  const FieldTower& T = w.tower;
  const Field& C = T.cubic();

  run_check(out, "frobenius-order", "§2", [&](Ck& ck) {
    int64_t fixed = 0;
    for (uint32_t x = 0; x < C.n; ++x) {
      Code c = Code(x);
      ck.check(T.frob(T.frob(T.frob(c))) == c,
               "frob^3 moves " + tuple_str(T, c));
      if (T.frob(c) == c) ++fixed;
    }
    ck.count("elements", C.n);
    ck.expect("fixed elements", T.q(), fixed);
  });

  run_check(out, "norm-fibers", "§2", [&](Ck& ck) {
    std::map<Code, int64_t> fibers;
    for (uint32_t x = 1; x < C.n; ++x) {
      Code c = Code(x);
      Code n = C.mul(c, C.mul(T.frob(c, 1), T.frob(c, 2)));
      ck.check(T.in_base(n) && n != 0,
               "norm leaves GF(q)* at " + tuple_str(T, c));
      ck.check(n == T.pow_log(c, 1 + long(T.q()) + long(T.q()) * T.q()),
               "norm disagrees with the exponent form at " + tuple_str(T, c));
      ++fibers[n];
    }
    ck.expect("norm values", int64_t(T.q()) - 1, int64_t(fibers.size()));
    for (const auto& [value, size] : fibers)
      ck.check(size == q2q1(T),
               "norm fiber of " + std::to_string(value) + " has size " +
                   std::to_string(size));
    ck.expect("norm-one elements", q2q1(T), fibers[1]);
  });

  run_check(out, "primitive-tau", "§2", [&](Ck& ck) {
    Code p = T.tau();
    int64_t order = 1;
    while (p != 1 && order <= int64_t(C.n)) {
      p = C.mul(p, T.tau());
      ++order;
    }
    ck.expect("order of tau", int64_t(C.n) - 1, order);
  });

  run_check(out, "transversal-frame", "§2", [&](Ck& ck) {
    Triple t = T.tpoly();
    Code tau = T.tau(), tau2 = C.mul(T.tau(), T.tau());
    Code p0 = C.sub(C.add(t[1], C.mul(t[2], tau)), tau2);
    Code p1 = C.sub(t[2], tau);
    Code p2 = C.neg(1);
    TransversalFrame f = T.frame();
    ck.check(f.p[0] == p0 && f.p[1] == p1 && f.p[2] == p2,
             "frame differs from its closed form");
    Code eta = C.add(p0, C.add(C.mul(p1, tau), C.mul(p2, tau2)));
    ck.check(f.eta == eta, "eta differs from p0 + p1 tau + p2 tau^2");
    ck.check(eta != 0, "eta vanishes");
  });
}

void suite_spread(const World& w, SuiteResult& out) {
  const FieldTower& T = w.tower;
  const Field& B = T.base();
  const Field& C = T.cubic();
  const BBContext& ctx = need_ctx(w);

  run_check(out, "partition", "§2", [&](Ck& ck) {
    ck.check(is_plane_spread(B, ctx.spread), "spread fails the partition");
    ck.expect("planes", q3p1(T), int64_t(ctx.spread.size()));
  });

  run_check(out, "regularity", "§2", [&](Ck& ck) {
    ck.check(is_regular_spread(B, ctx.spread), "spread is not regular");
    ck.count("exhaustive triples", T.q() <= 3 ? 1 : 0);
  });

  run_check(out, "point-labels", "§2", [&](Ck& ck) {
    int64_t n = 0;
    for (const Vec& p : enumerate_points(B, full_space(B, 5))) {
      Code label = point_label(T, p);
      ck.check(contains(B, ctx.plane_of(label), p),
               "label misses its plane at " + vec_str(p));
      ++n;
    }
    int64_t pts = (int64_t(T.q3()) * T.q3() - 1) / (T.q() - 1);
    ck.expect("points", pts, n);
  });

  run_check(out, "line-solids", "§3", [&](Ck& ck) {
    std::vector<P2> pts = all_p2_points(C);
    std::vector<P2> lines = pts;
    lines.pop_back();  // drop the infinite line (0,0,1)
    if (lines.size() > 80) {
      std::mt19937 rng(2026);
      std::shuffle(lines.begin(), lines.end(), rng);
      lines.resize(40);
    }
    for (const P2& l : lines) {
      Code label = line_inf_label(C, l);
      Subspace solid;
      int64_t affine = 0;
      for (const P2& p : pts)
        if (p2_dot(C, l, p) == 0 && p.c[2] != 0) {
          Vec img = epsilon(T, p);
          solid = affine == 0 ? subspace_from_rows(B, {img})
                              : span_point(B, solid, img);
          ++affine;
        }
      ck.check(affine == int64_t(T.q3()), "wrong affine point count");
      ck.check(solid.dim() == 3, "line image does not span a solid");
      Subspace cut = meet(B, solid, ctx.sigma_inf);
      ck.check(cut == lift_to_pg6(ctx.plane_of(label)),
               "solid misses the plane of its direction " + label_str(T, label));
    }
    ck.count("lines checked", int64_t(lines.size()));
  });
}

void suite_subplane(const World& w, SuiteResult& out) {
  const FieldTower& T = w.tower;
  const Field& C = T.cubic();
  const SubplaneConfig& sub = need_subplane(w);
  const Splash& s = need_splash(w);
  const BBContext& ctx = need_ctx(w);

  run_check(out, "exterior-subplane", "§3", [&](Ck& ck) {
    ck.expect("points", q2q1(T), int64_t(sub.points.size()));
    ck.expect("lines", q2q1(T), int64_t(sub.lines.size()));
    for (const P2& p : sub.points)
      ck.check(p.c[2] != 0, "subplane point on the infinite line");
    ck.check(std::find(sub.points.begin(), sub.points.end(),
                       make_p2(0, 0, 1)) != sub.points.end(),
             "subplane misses (0,0,1)");
  });

  run_check(out, "splash-closed-form", "Thm 3.1", [&](Ck& ck) {
    std::vector<Code> closed;
    Code gen = T.pow_log(T.tau(), long(T.q()) - 1);
    Code k = 1;
    for (int64_t i = 0; i < q2q1(T); ++i) {
      closed.push_back(k);
      k = C.mul(k, gen);
    }
    ck.check(k == 1, "tau^(q-1) has the wrong order");
    std::sort(closed.begin(), closed.end(),
              [&](Code a, Code b) { return C.less(a, b); });
    ck.expect("splash labels", q2q1(T), int64_t(s.labels.size()));
    for (size_t i = 0; i < closed.size() && i < s.labels.size(); ++i)
      ck.check(closed[i] == s.labels[i],
               "label mismatch at " + label_str(T, s.labels[i]));
  });

  run_check(out, "carriers", "Thm 3.1", [&](Ck& ck) {
    ck.check(s.carrier_labels[0] == kInf && s.carrier_labels[1] == 0,
             "carrier labels are not (1,0,0) and (0,1,0)");
    ck.check(s.carriers[0] == ctx.plane_of(kInf) &&
                 s.carriers[1] == ctx.plane_of(0),
             "carrier planes differ from their labels");
    ck.count("carriers", 2);
  });
}

void suite_quadrics(const World& w, SuiteResult& out) {
  const FieldTower& T = w.tower;
  const Field& B = T.base();
  const SubplaneConfig& sub = need_subplane(w);
  const std::array<QuadricForm, 9> forms = nine_quadrics(sub);

  run_check(out, "nine-forms", "Thm 4.1", [&](Ck& ck) {
    std::set<std::array<Code, 49>> distinct;
    for (const QuadricForm& f : forms)
      distinct.insert(quadric_normalize(B, f).c);
    ck.expect("distinct forms", 9, int64_t(distinct.size()));
    int64_t vanishing = 0;
    for (const P2& p : sub.points) {
      Vec img = epsilon(T, p);
      bool all = true;
      for (const QuadricForm& f : forms)
        all = all && quadric_eval(B, f, img) == 0;
      if (all) ++vanishing;
    }
    ck.expect("subplane points killed", q2q1(T), vanishing);
  });

  run_check(out, "affine-zero-set", "Thm 4.1", [&](Ck& ck) {
    std::set<uint64_t> image;
    for (const P2& p : sub.points)
      image.insert(point_index(B, epsilon(T, p)));

    int64_t scanned = 0, found = 0;
    Vec v = Vec::zero(7);
    v[6] = 1;
    bool done = false;
    while (!done) {
      ++scanned;
      bool zero = true;
      for (const QuadricForm& f : forms)
        zero = zero && quadric_eval(B, f, v) == 0;
      if (zero) {
        ++found;
        ck.check(image.count(point_index(B, normalize(B, v))) == 1,
                 "stray affine zero at " + vec_str(v));
      }
      done = true;
      for (int i = 0; i < 6; ++i) {
        v[i] = Code(v[i] + 1);
        if (v[i] < T.q()) {
          done = false;
          break;
        }
        v[i] = 0;
      }
    }
    int64_t total = 1;
    for (int i = 0; i < 6; ++i) total *= T.q();
    ck.expect("affine points scanned", total, scanned);
    ck.expect("subplane points found", q2q1(T), found);
  });

  run_check(out, "infinite-zeros", "§4", [&](Ck& ck) {
    int64_t zeros = 0;
    for (const Vec& p : enumerate_points(B, full_space(B, 5))) {
      Vec v = lift_point(p);
      bool zero = true;
      for (const QuadricForm& f : forms)
        zero = zero && quadric_eval(B, f, v) == 0;
      if (zero) ++zeros;
    }
    // measured only: the theorem constrains the affine zero set
    ck.count("common zeros on the infinite hyperplane", zeros);
  });
}

void suite_tangents(const World& w, SuiteResult& out) {
  const FieldTower& T = w.tower;
  const Field& B = T.base();
  const SubplaneConfig& sub = need_subplane(w);
  const BBContext& ctx = need_ctx(w);
  const Cover& tc = need_tc(w);
  const std::array<QuadricForm, 9> forms = nine_quadrics(sub);

  run_check(out, "polar-route", "Thm 4.2", [&](Ck& ck) {
    int64_t zero_polars = 0;
    for (const P2& p : sub.points) {
      TangentResult tr = tangent_plane(sub, p, forms);
      ck.check(tr.plane.dim() == 2, "tangent space is not a plane");
      ck.check(contains(B, tr.plane, epsilon(T, p)),
               "tangent plane misses its point");
      ck.check(tr.trace.dim() == 1 && subspace_leq(B, tr.trace, ctx.sigma_inf),
               "trace is not an infinite line");
      zero_polars += tr.zero_polars;
    }
    ck.expect("points", q2q1(T), int64_t(sub.points.size()));
    ck.count("vanishing polars", zero_polars);
  });

  run_check(out, "cubic-route-agrees", "Thm 4.3", [&](Ck& ck) {
    int64_t agree = 0;
    for (const P2& p : sub.points) {
      Subspace via_polars = tangent_plane(sub, p, forms).plane;
      Subspace via_cubics = tangent_plane_via_cubics(sub, p);
      if (via_polars == via_cubics)
        ++agree;
      else
        ck.fail("routes disagree at image " + vec_str(epsilon(T, p)));
    }
    ck.expect("agreeing points", q2q1(T), agree);
  });

  run_check(out, "trace-bijection", "Thm 5.3", [&](Ck& ck) {
    std::set<size_t> hit;
    for (const P2& p : sub.points) {
      Subspace trace = drop_to_pg5(tangent_plane(sub, p, forms).trace);
      size_t owners = 0, owner = 0;
      for (size_t i = 0; i < tc.planes.size(); ++i)
        if (subspace_leq(B, trace, tc.planes[i])) {
          ++owners;
          owner = i;
        }
      ck.check(owners == 1, "trace lies in " + std::to_string(owners) +
                                " tangent-cover planes");
      hit.insert(owner);
    }
    ck.expect("tangent planes hit", q2q1(T), int64_t(hit.size()));
  });
}

void suite_covers(const World& w, SuiteResult& out) {
  const FieldTower& T = w.tower;
  const Field& B = T.base();
  const BBContext& ctx = need_ctx(w);
  const Splash& s = need_splash(w);
  const Cover& tc = need_tc(w);
  const Cover& cc = need_cc(w);

  run_check(out, "family-axioms", "Lemma 5.1", [&](Ck& ck) {
    auto [tc2, cc2] = covers_of_splash(ctx, s);
    ck.check(tc2.planes == tc.planes && cc2.planes == cc.planes,
             "cover construction is unstable");
    ck.expect("planes per family", q2q1(T), int64_t(tc2.planes.size()));
    std::set<uint64_t> un;
    for (const Subspace& p : s.planes)
      for (const Vec& v : enumerate_points(B, p))
        un.insert(point_index(B, v));
    ck.expect("shared points", q2q1(T) * q2q1(T), int64_t(un.size()));
  });

  run_check(out, "same-label-meets", "Lemma 5.1", [&](Ck& ck) {
    for (size_t i = 0; i < s.labels.size(); ++i) {
      Vec common = normalize(B, pair_point(T, s.labels[i], 1));
      Subspace st = meet(B, s.planes[i], tc.planes[i]);
      Subspace sc = meet(B, s.planes[i], cc.planes[i]);
      Subspace tcm = meet(B, tc.planes[i], cc.planes[i]);
      bool ok = st.dim() == 0 && sc.dim() == 0 && tcm.dim() == 0 &&
                st.m.row(0) == common && sc.m.row(0) == common &&
                tcm.m.row(0) == common;
      ck.check(ok, "family meet differs from ([k],[1],0) at label " +
                       label_str(T, s.labels[i]));
    }
    ck.expect("labels", q2q1(T), int64_t(s.labels.size()));
  });

  run_check(out, "theta-action", "Lemma 5.2", [&](Ck& ck) {
    ThetaReport rep = verify_theta_action(ctx, s, tc, cc);
    ck.check(rep.fixes_spread, "theta moves a spread plane");
    ck.check(rep.maps_covers, "theta misses the cover label maps");
    ck.expect("tangent orbit", q2q1(T), rep.tangent_orbit);
    ck.expect("conic orbit", q2q1(T), rep.conic_orbit);
  });
}

void suite_transversals(const World& w, SuiteResult& out) {
  const FieldTower& T = w.tower;
  const Field& C = T.cubic();
  const BBContext& ctx = need_ctx(w);
  const Cover& tc = need_tc(w);
  const Cover& cc = need_cc(w);

  run_check(out, "spread-marked-points", "Thm 6.3", [&](Ck& ck) {
    TransversalSet gs = spread_transversals(ctx);
    for (size_t i = 0; i < ctx.spread.size(); ++i) {
      Code k = ctx.spread_labels[i];
      Vec marked = normalize(
          C, k == kInf ? ctx.a1 : vec_add(C, vec_scale(C, k, ctx.a1), ctx.a2));
      Subspace cut = meet(C, gs.lines[0], extend_subspace(T, ctx.spread[i]));
      ck.check(cut.dim() == 0 && contains(C, cut, marked),
               "marked point misses at label " + label_str(T, k));
    }
    ck.expect("planes pierced", q3p1(T), int64_t(ctx.spread.size()));
  });

  run_check(out, "cover-marked-points", "Thm 6.3", [&](Ck& ck) {
    CoverTransversals gt = cover_transversals(ctx, tc);
    CoverTransversals gc = cover_transversals(ctx, cc);
    ck.expect("marked points", 2 * q2q1(T),
              int64_t(gt.marked.size() + gc.marked.size()));
  });

  run_check(out, "conjugate-lines", "Lemma 6.1", [&](Ck& ck) {
    TransversalSet gs = spread_transversals(ctx);
    CoverTransversals gt = cover_transversals(ctx, tc);
    CoverTransversals gc = cover_transversals(ctx, cc);
    std::vector<Subspace> nine(gs.lines.begin(), gs.lines.end());
    nine.insert(nine.end(), gt.lines.begin(), gt.lines.end());
    nine.insert(nine.end(), gc.lines.begin(), gc.lines.end());
    std::unordered_set<Subspace, SubspaceHash> distinct(nine.begin(),
                                                        nine.end());
    ck.expect("distinct lines", 9, int64_t(distinct.size()));
    for (int f = 0; f < 3; ++f)
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          ck.check(disjoint(C, nine[3 * f + i], nine[3 * f + j]),
                   "conjugate transversals meet");
  });

  if (T.q() <= 3) {
    auto search_equals = [&](Ck& ck, const std::vector<Subspace>& planes,
                             const std::array<Subspace, 3>& lines) {
      std::vector<Subspace> ext;
      for (const Subspace& p : planes) ext.push_back(extend_subspace(T, p));
      std::vector<Subspace> found = transversal_search(C, ext);
      std::vector<Subspace> expect(lines.begin(), lines.end());
      std::sort(expect.begin(), expect.end(),
                [&](const Subspace& a, const Subspace& b) {
                  return subspace_less(C, a, b);
                });
      ck.expect("lines found", 3, int64_t(found.size()));
      ck.check(found == expect, "search found different lines");
    };

    run_check(out, "search-spread", "Thm 6.2", [&](Ck& ck) {
      search_equals(ck, ctx.spread, spread_transversals(ctx).lines);
    });
    run_check(out, "search-tangent", "Thm 6.2", [&](Ck& ck) {
      search_equals(ck, tc.planes, cover_transversals(ctx, tc).lines);
    });
    run_check(out, "search-conic", "Thm 6.2", [&](Ck& ck) {
      search_equals(ck, cc.planes, cover_transversals(ctx, cc).lines);
    });
  }
}

void suite_carriers(const World& w, SuiteResult& out) {
  const BBContext& ctx = need_ctx(w);
  const Splash& s = need_splash(w);

  run_check(out, "complete-planes", "Thm 6.4", [&](Ck& ck) {
    std::vector<Subspace> full =
        carrier_characterisation(ctx, s, need_tc(w), need_cc(w));
    ck.count("transversal lines", 9);
    ck.expect("complete planes", 2, int64_t(full.size()));
    ck.check(full.size() == 2 && full[0] == ctx.plane_of(0) &&
                 full[1] == ctx.plane_of(kInf),
             "complete planes are not the carriers");
  });
}

void suite_disjoint(const World& w, SuiteResult& out) {
  const FieldTower& T = w.tower;
  const Field& B = T.base();
  const Field& C = T.cubic();
  const BBContext& ctx = need_ctx(w);

  run_check(out, "coset-partition", "Thm 6.5", [&](Ck& ck) {
    SplashFamily fam = disjoint_splashes(ctx);
    ck.expect("splashes", int64_t(T.q()) - 1, int64_t(fam.splashes.size()));
    std::set<Code> all;
    for (const Splash& s : fam.splashes) {
      ck.check(int64_t(s.labels.size()) == q2q1(T), "coset splash size");
      for (Code l : s.labels)
        ck.check(all.insert(l).second,
                 "label repeats across cosets: " + label_str(T, l));
    }
    ck.expect("labels covered", int64_t(T.q3()) - 1, int64_t(all.size()));
    ck.check(all.count(0) == 0, "a coset contains the carrier label 0");
  });

  run_check(out, "shared-transversals", "Thm 6.5", [&](Ck& ck) {
    SplashFamily fam = disjoint_splashes(ctx);
    Homography beta = beta_hom(ctx);
    Homography beta2 = hom_compose(B, beta, beta);
    int64_t pierced = 0;
    for (const Splash& s : fam.splashes)
      for (const Subspace& plane : s.planes) {
        Subspace tk = extend_subspace(T, apply_hom(B, beta, plane));
        Subspace ckp = extend_subspace(T, apply_hom(B, beta2, plane));
        for (int i = 0; i < 3; ++i) {
          ck.check(meet(C, fam.tangent_lines[i], tk).dim() == 0,
                   "tangent transversal misses a coset tangent plane");
          ck.check(meet(C, fam.conic_lines[i], ckp).dim() == 0,
                   "conic transversal misses a coset conic plane");
          pierced += 2;
        }
      }
    ck.expect("cover planes pierced", 6 * (int64_t(T.q3()) - 1), pierced);
  });
}

void suite_sublines(const World& w, SuiteResult& out) {
  const FieldTower& T = w.tower;
  const BBContext& ctx = need_ctx(w);
  const Splash& s = need_splash(w);
  const Cover& tc = need_tc(w);
  const Cover& cc = need_cc(w);
  const SubplaneConfig& sub = need_subplane(w);

  std::vector<std::vector<Code>> sublines;

  run_check(out, "enumeration", "Thm 7.1/7.2", [&](Ck& ck) {
    sublines = splash_sublines(T, s.labels);
    for (const std::vector<Code>& sl : sublines)
      ck.check(sl.size() == size_t(T.q()) + 1, "subline of the wrong size");
    ck.expect("sublines", 2 * q2q1(T), int64_t(sublines.size()));
  });

  run_check(out, "classification", "Thm 7.1/7.2", [&](Ck& ck) {
    int64_t pencil = 0, dual = 0, other = 0;
    for (const std::vector<Code>& sl : sublines) {
      Regulus r = subline_to_regulus(ctx, sl);
      SublineClassification cls = classify_subline_regulus(ctx, r, tc, cc);
      switch (cls.value) {
        case SublineClassification::Pencil:
          ++pencil;
          break;
        case SublineClassification::DualConic:
          ++dual;
          break;
        case SublineClassification::ConicOnly:
          ++other;
          if (other == 1)
            ck.fail("subline in neither family: " + labels_str(T, sl));
          break;
      }
    }
    ck.expect("pencil reguli", q2q1(T), pencil);
    ck.expect("dual conic reguli", q2q1(T), dual);
    ck.count("unclassified reguli", other);
  });

  run_check(out, "pencil-points", "Thm 7.1", [&](Ck& ck) {
    int64_t pencil = 0;
    for (const P2& p : sub.points) {
      Regulus r = pencil_regulus(sub, p);
      SublineClassification cls = classify_subline_regulus(ctx, r, tc, cc);
      if (cls.value == SublineClassification::Pencil)
        ++pencil;
      else
        ck.fail("point pencil not classified Pencil");
    }
    ck.expect("pencil points", q2q1(T), pencil);
  });
}

void suite_special_conics(const World& w, SuiteResult& out) {
  const FieldTower& T = w.tower;
  const BBContext& ctx = need_ctx(w);
  const Splash& s = need_splash(w);
  const Cover& tc = need_tc(w);
  const Cover& cc = need_cc(w);
  const SubplaneConfig& sub = need_subplane(w);
  const CoverTransversals gt = cover_transversals(ctx, tc);
  const CoverTransversals gc = cover_transversals(ctx, cc);

  run_check(out, "pencil-conic-sections", "Thm 7.3", [&](Ck& ck) {
    int64_t special = 0;
    for (const P2& p : sub.points) {
      Regulus r = pencil_regulus(sub, p);
      for (const Subspace& pi : cc.planes)
        if (is_cover_special_conic(ctx, r, pi, gc.lines))
          ++special;
        else
          ck.fail("non-special pencil conic");
    }
    ck.expect("special conics", q2q1(T) * q2q1(T), special);
  });

  run_check(out, "dual-conic-sections", "Thm 7.3", [&](Ck& ck) {
    int64_t special = 0, duals = 0;
    for (const std::vector<Code>& sl : splash_sublines(T, s.labels)) {
      Regulus r = subline_to_regulus(ctx, sl);
      SublineClassification cls = classify_subline_regulus(ctx, r, tc, cc);
      if (cls.value != SublineClassification::DualConic) continue;
      ++duals;
      for (const Subspace& pi : tc.planes)
        if (is_cover_special_conic(ctx, r, pi, gt.lines))
          ++special;
        else
          ck.fail("non-special dual conic");
    }
    ck.expect("dual conic reguli", q2q1(T), duals);
    ck.expect("special conics", q2q1(T) * q2q1(T), duals * q2q1(T) == special
                                                       ? q2q1(T) * q2q1(T)
                                                       : special);
  });

  run_check(out, "cross-family-probe", "§7", [&](Ck& ck) {
    // measured only: conics of pencil reguli against the tangent family
    int64_t special = 0;
    for (const P2& p : sub.points) {
      Regulus r = pencil_regulus(sub, p);
      for (const Subspace& pi : cc.planes)
        if (is_cover_special_conic(ctx, r, pi, gt.lines)) ++special;
    }
    ck.count("special under swapped transversals", special);
  });
}

void suite_replacement(const World& w, SuiteResult& out) {
  const FieldTower& T = w.tower;
  const BBContext& ctx = need_ctx(w);
  const std::array<Choice, 3> all = {Choice::Keep, Choice::Tangent,
                                     Choice::Conic};

  if (T.q() == 3) {
    run_check(out, "uniform-regular", "Remark 6.3", [&](Ck& ck) {
      int64_t regular = 0;
      for (Choice c : all) {
        ReplacementSpread rs = replace_hyperreguli(ctx, {c, c});
        ck.check(int64_t(rs.planes.size()) == q3p1(T), "wrong plane count");
        if (rs.regular) ++regular;
      }
      ck.expect("regular uniform spreads", 3, regular);
    });
    run_check(out, "mixed-nonregular", "Remark 6.3", [&](Ck& ck) {
      int64_t nonregular = 0;
      for (Choice c0 : all)
        for (Choice c1 : all) {
          if (c0 == c1) continue;
          ReplacementSpread rs = replace_hyperreguli(ctx, {c0, c1});
          if (!rs.regular) ++nonregular;
        }
      ck.expect("non-regular mixed spreads", 6, nonregular);
    });
  } else if (T.q() == 2) {
    run_check(out, "single-coset", "Remark 6.3", [&](Ck& ck) {
      int64_t regular = 0;
      for (Choice c : all) {
        ReplacementSpread rs = replace_hyperreguli(ctx, {c});
        ck.check(int64_t(rs.planes.size()) == q3p1(T), "wrong plane count");
        if (rs.regular) ++regular;
      }
      ck.expect("regular spreads", 3, regular);
    });
  } else {
    run_check(out, "uniform-spreads", "Remark 6.3", [&](Ck& ck) {
      // regularity is probe-sampled above q = 3, so it is reported only
      int64_t regular = 0;
      for (Choice c : all) {
        std::vector<Choice> choice(size_t(T.q()) - 1, c);
        ReplacementSpread rs = replace_hyperreguli(ctx, choice);
        ck.check(int64_t(rs.planes.size()) == q3p1(T), "wrong plane count");
        if (rs.regular) ++regular;
      }
      ck.count("sampled-regular flags", regular);
    });
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "fields",       "spread",   "subplane", "quadrics",
      "tangents",     "covers",   "transversals", "carriers",
      "disjoint",     "sublines", "special-conics", "replacement"};
  return names;
}

bool is_suite_name(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<std::string> default_suites(uint16_t q) {
  if (q >= 7) return {"fields"};
  std::vector<std::string> out;
  for (const std::string& s : suite_names()) {
    if (q >= 4 && s == "replacement") continue;
    if (q == 5 && (s == "sublines" || s == "special-conics")) continue;
    out.push_back(s);
  }
  return out;
}

std::unique_ptr<World> make_world(FieldTower t,
                                  const std::vector<std::string>& suites) {
  auto layer_for = [](const std::string& s) {
    if (s == "fields") return 0;
    if (s == "spread" || s == "disjoint" || s == "replacement") return 1;
    if (s == "subplane" || s == "quadrics") return 2;
    return 3;
  };
  auto w = std::make_unique<World>(std::move(t));
  int need = 0;
  for (const std::string& s : suites) need = std::max(need, layer_for(s));
  if (need >= 1) w->ctx.emplace(make_bb_context(w->tower));
  if (need >= 2) {
    w->subplane.emplace(build_subplane(*w->ctx));
    w->splash.emplace(splash_of(*w->subplane));
  }
  if (need >= 3) {
    auto [tc, cc] = covers_of_splash(*w->ctx, *w->splash);
    w->tangent_cover.emplace(std::move(tc));
    w->conic_cover.emplace(std::move(cc));
  }
  return w;
}

SuiteResult run_suite(const World& w, const std::string& name) {
  SuiteResult out;
  out.name = name;
  if (name == "fields")
    suite_fields(w, out);
  else if (name == "spread")
    suite_spread(w, out);
  else if (name == "subplane")
    suite_subplane(w, out);
  else if (name == "quadrics")
    suite_quadrics(w, out);
  else if (name == "tangents")
    suite_tangents(w, out);
  else if (name == "covers")
    suite_covers(w, out);
  else if (name == "transversals")
    suite_transversals(w, out);
  else if (name == "carriers")
    suite_carriers(w, out);
  else if (name == "disjoint")
    suite_disjoint(w, out);
  else if (name == "sublines")
    suite_sublines(w, out);
  else if (name == "special-conics")
    suite_special_conics(w, out);
  else if (name == "replacement")
    suite_replacement(w, out);
  else
    require(false, "unknown suite: " + name);
  return out;
}

const std::vector<std::string>& artifact_names() {
  static const std::vector<std::string> names = {
      "spread",   "subplane",       "covers", "transversals",
      "quadrics", "classification", "tangents"};
  return names;
}

namespace {

void put_basis_cells(std::ostringstream& out, const Subspace& s, int rows,
                     int cols) {
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out << "," << s.m.at(r, c);
}

void put_cubic_point(std::ostringstream& out, const FieldTower& T,
                     const Vec& v) {
  for (int i = 0; i < v.n; ++i) out << "," << tuple_str(T, v[i]);
}

}  // namespace

std::string dump_artifact(const World& w, const std::string& artifact) {
  const FieldTower& T = w.tower;
  std::ostringstream out;
  out << "# q=" << T.q() << " tower=" << T.token() << " artifact=" << artifact
      << "\n";

  if (artifact == "spread") {
    const BBContext& ctx = need_ctx(w);
    out << "label";
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 6; ++c) out << ",b" << r << c;
    out << "\n";
    for (size_t i = 0; i < ctx.spread.size(); ++i) {
      out << label_str(T, ctx.spread_labels[i]);
      put_basis_cells(out, ctx.spread[i], 3, 6);
      out << "\n";
    }
    return out.str();
  }

  if (artifact == "subplane") {
    const SubplaneConfig& sub = need_subplane(w);
    out << "x,y,z";
    for (int i = 0; i < 7; ++i) out << ",e" << i;
    out << "\n";
    for (const P2& p : sub.points) {
      for (int j = 0; j < 3; ++j) out << (j ? "," : "") << tuple_str(T, p.c[j]);
      Vec img = epsilon(T, p);
      for (int i = 0; i < 7; ++i) out << "," << img[i];
      out << "\n";
    }
    return out.str();
  }

  if (artifact == "covers") {
    out << "family,label";
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 6; ++c) out << ",b" << r << c;
    out << "\n";
    for (const Cover* cov : {&need_tc(w), &need_cc(w)}) {
      const char* family =
          cov->kind == CoverKind::Tangent ? "tangent" : "conic";
      for (size_t i = 0; i < cov->planes.size(); ++i) {
        out << family << "," << label_str(T, cov->labels[i]);
        put_basis_cells(out, cov->planes[i], 3, 6);
        out << "\n";
      }
    }
    return out.str();
  }

  if (artifact == "transversals") {
    const BBContext& ctx = need_ctx(w);
    out << "family,conjugate";
    for (int p = 0; p < 2; ++p)
      for (int c = 0; c < 6; ++c) out << ",p" << p << c;
    out << "\n";
    // spanning pairs: A1 with A2, A2^(q^2), A2^q, then their conjugates
    const std::array<std::pair<const char*, int>, 3> fams = {
        std::pair<const char*, int>{"spread", 0},
        std::pair<const char*, int>{"tangent", 2},
        std::pair<const char*, int>{"conic", 1}};
    for (const auto& [family, power] : fams)
      for (int i = 0; i < 3; ++i) {
        out << family << "," << i;
        put_cubic_point(out, T, frob_vec(T, ctx.a1, i));
        put_cubic_point(out, T, frob_vec(T, ctx.a2, (power + i) % 3));
        out << "\n";
      }
    return out.str();
  }

  if (artifact == "quadrics") {
    const SubplaneConfig& sub = need_subplane(w);
    std::array<QuadricForm, 9> forms = nine_quadrics(sub);
    out << "form";
    for (int i = 0; i < 7; ++i)
      for (int j = i; j < 7; ++j) out << ",c" << i << j;
    out << "\n";
    for (int f = 0; f < 9; ++f) {
      out << f;
      for (int i = 0; i < 7; ++i)
        for (int j = i; j < 7; ++j) out << "," << forms[f].at(i, j);
      out << "\n";
    }
    return out.str();
  }

  if (artifact == "classification") {
    const BBContext& ctx = need_ctx(w);
    const Splash& s = need_splash(w);
    const Cover& tc = need_tc(w);
    const Cover& cc = need_cc(w);
    out << "class,witness";
    for (uint32_t i = 0; i <= T.q(); ++i) out << ",label" << i;
    out << "\n";
    for (const std::vector<Code>& sl : splash_sublines(T, s.labels)) {
      Regulus r = subline_to_regulus(ctx, sl);
      SublineClassification cls = classify_subline_regulus(ctx, r, tc, cc);
      std::string name = "conic-only", witness;
      if (cls.value == SublineClassification::Pencil) name = "pencil";
      if (cls.value == SublineClassification::DualConic) name = "dual-conic";
      if (cls.witness.has_value()) {
        const Cover& owner =
            cls.value == SublineClassification::Pencil ? tc : cc;
        for (size_t i = 0; i < owner.planes.size(); ++i)
          if (owner.planes[i] == *cls.witness)
            witness = label_str(T, owner.labels[i]);
      }
      out << name << "," << witness;
      for (Code l : sl) out << "," << label_str(T, l);
      out << "\n";
    }
    return out.str();
  }

  if (artifact == "tangents") {
    const Field& B = T.base();
    const SubplaneConfig& sub = need_subplane(w);
    const Cover& tc = need_tc(w);
    out << "x,y,z";
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 7; ++c) out << ",t" << r << c;
    out << ",cover_label\n";
    for (size_t i = 0; i < sub.points.size(); ++i) {
      TangentResult tr = tangent_plane(sub, sub.points[i]);
      for (int j = 0; j < 3; ++j)
        out << (j ? "," : "") << tuple_str(T, sub.points[i].c[j]);
      put_basis_cells(out, tr.plane, 3, 7);
      Subspace trace = drop_to_pg5(tr.trace);
      std::string owner;
      for (size_t k = 0; k < tc.planes.size(); ++k)
        if (subspace_leq(B, trace, tc.planes[k]))
          owner = label_str(T, tc.labels[k]);
      out << "," << owner << "\n";
    }
    return out.str();
  }

  require(false, "unknown artifact: " + artifact);
  return {};
}

}  // namespace splash
