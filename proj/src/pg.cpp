#include "splash/pg.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "splash/check.hpp"

namespace splash {
namespace {

Vec vec_sub(const Field& F, const Vec& a, const Vec& b) {
  Vec r = a;
  for (int i = 0; i < a.n; ++i) r[i] = F.sub(a[i], b[i]);
  return r;
}

std::vector<Code> codes_by_rank(const Field& F) {
  std::vector<Code> order(F.n);
  for (uint32_t i = 0; i < F.n; ++i) order[i] = Code(i);
  std::sort(order.begin(), order.end(),
            [&](Code x, Code y) { return F.less(x, y); });
  return order;
}

/// Solve A x = rhs for invertible square A via an augmented RREF.
Vec solve_square(const Field& F, const Mat& A, const Vec& rhs) {
  const int n = A.rows;
  Mat aug;
  aug.rows = uint8_t(n);
  aug.cols = uint8_t(n + 1);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = A.at(r, c);
    aug.at(r, n) = rhs[r];
  }
  int rk = rref(F, aug);
  ensure(rk == n, "singular system in solve_square");
  Vec x = Vec::zero(n);
  for (int r = 0; r < n; ++r) x[r] = aug.at(r, n);
  return x;
}

}  // namespace

Vec make_vec(std::initializer_list<Code> v) {
  Vec r;
  r.n = uint8_t(v.size());
  int i = 0;
  for (Code c : v) r[i++] = c;
  return r;
}

Vec normalize(const Field& F, Vec v) {
  for (int i = 0; i < v.n; ++i)
    if (v[i]) {
      Code s = F.inv(v[i]);
      for (int j = i; j < v.n; ++j) v[j] = F.mul(s, v[j]);
      return v;
    }
  return v;
}

Vec vec_add(const Field& F, const Vec& a, const Vec& b) {
  Vec r = a;
  for (int i = 0; i < a.n; ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

Vec vec_scale(const Field& F, Code s, const Vec& a) {
  Vec r = a;
  for (int i = 0; i < a.n; ++i) r[i] = F.mul(s, a[i]);
  return r;
}

Code vec_dot(const Field& F, const Vec& a, const Vec& b) {
  Code r = 0;
  for (int i = 0; i < a.n; ++i) r = F.add(r, F.mul(a[i], b[i]));
  return r;
}

bool vec_less(const Field& F, const Vec& a, const Vec& b) {
  for (int i = 0; i < a.n && i < b.n; ++i)
    if (a[i] != b[i]) return F.less(a[i], b[i]);
  return a.n < b.n;
}

Vec Mat::row(int r) const {
  Vec v = Vec::zero(cols);
  for (int c = 0; c < cols; ++c) v[c] = at(r, c);
  return v;
}

void Mat::push_row(const Vec& v) {
  ensure(rows < 14 && v.n == cols, "matrix row capacity");
  ++rows;
  for (int c = 0; c < cols; ++c) at(rows - 1, c) = v[c];
}

int rref(const Field& F, Mat& m) {
  int piv = 0;
  for (int col = 0; col < m.cols && piv < m.rows; ++col) {
    int sel = -1;
    for (int r = piv; r < m.rows; ++r)
      if (m.at(r, col)) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != piv)
      for (int c = 0; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(piv, c));
    Code s = F.inv(m.at(piv, col));
    for (int c = 0; c < m.cols; ++c) m.at(piv, c) = F.mul(s, m.at(piv, c));
    for (int r = 0; r < m.rows; ++r) {
      if (r == piv || !m.at(r, col)) continue;
      Code f = m.at(r, col);
      for (int c = 0; c < m.cols; ++c)
        m.at(r, c) = F.sub(m.at(r, c), F.mul(f, m.at(piv, c)));
    }
    ++piv;
  }
  m.rows = uint8_t(piv);
  for (size_t k = size_t(m.rows) * m.cols; k < m.a.size(); ++k) m.a[k] = 0;
  return piv;
}

int rank_of(const Field& F, Mat m) { return rref(F, m); }

Subspace subspace_from_rows(const Field& F, const std::vector<Vec>& rows) {
  require(!rows.empty(), "subspace needs at least one row");
  Mat m;
  m.cols = rows[0].n;
  for (const Vec& v : rows) m.push_row(v);
  rref(F, m);
  return Subspace{m};
}

Subspace span(const Field& F, const Subspace& a, const Subspace& b) {
  Mat m;
  m.cols = a.m.cols;
  for (int r = 0; r < a.m.rows; ++r) m.push_row(a.m.row(r));
  for (int r = 0; r < b.m.rows; ++r) m.push_row(b.m.row(r));
  rref(F, m);
  return Subspace{m};
}

Subspace span_point(const Field& F, const Subspace& a, const Vec& p) {
  Mat m = a.m;
  m.push_row(p);
  rref(F, m);
  return Subspace{m};
}

Subspace annihilator(const Field& F, const Subspace& s) {
  const Mat& m = s.m;
  const int n = m.cols;
  std::vector<int> pivot_col(m.rows, -1);
  std::vector<bool> is_pivot(n, false);
  for (int r = 0, c = 0; r < m.rows; ++r) {
    while (c < n && !m.at(r, c)) ++c;
    ensure(c < n, "annihilator: basis not in RREF");
    pivot_col[r] = c;
    is_pivot[c] = true;
  }
  Mat out;
  out.cols = uint8_t(n);
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec x = Vec::zero(n);
    x[f] = 1;
    for (int r = 0; r < m.rows; ++r) x[pivot_col[r]] = F.neg(m.at(r, f));
    out.push_row(x);
  }
  rref(F, out);
  return Subspace{out};
}

Vec reduce_mod(const Field& F, const Subspace& s, Vec p) {
  const Mat& m = s.m;
  for (int r = 0, c = 0; r < m.rows; ++r) {
    while (c < m.cols && !m.at(r, c)) ++c;
    if (c >= m.cols) break;
    if (p[c]) {
      Code f = p[c];
      for (int j = c; j < m.cols; ++j) p[j] = F.sub(p[j], F.mul(f, m.at(r, j)));
    }
  }
  return normalize(F, p);
}

bool contains(const Field& F, const Subspace& s, const Vec& p) {
  return reduce_mod(F, s, p).is_zero();
}

bool subspace_leq(const Field& F, const Subspace& inner,
                  const Subspace& outer) {
  for (int r = 0; r < inner.m.rows; ++r)
    if (!contains(F, outer, inner.m.row(r))) return false;
  return true;
}

Subspace meet(const Field& F, const Subspace& a, const Subspace& b) {
  Subspace da = annihilator(F, a), db = annihilator(F, b);
  Mat m;
  m.cols = a.m.cols;
  for (int r = 0; r < da.m.rows; ++r) m.push_row(da.m.row(r));
  for (int r = 0; r < db.m.rows; ++r) m.push_row(db.m.row(r));
  rref(F, m);
  return annihilator(F, Subspace{m});
}

bool disjoint(const Field& F, const Subspace& a, const Subspace& b) {
  if (a.m.rows + b.m.rows > a.m.cols) return false;
  Mat m;
  m.cols = a.m.cols;
  for (int r = 0; r < a.m.rows; ++r) m.push_row(a.m.row(r));
  for (int r = 0; r < b.m.rows; ++r) m.push_row(b.m.row(r));
  return rref(F, m) == a.m.rows + b.m.rows;
}

std::vector<Vec> enumerate_points(const Field& F, const Subspace& s) {
  const int k = s.m.rows;  // vector dimension
  std::vector<Vec> pts;
  std::vector<Code> order = codes_by_rank(F);
  // lambda with first nonzero entry = 1, remaining entries free
  for (int lead = 0; lead < k; ++lead) {
    int free = k - lead - 1;
    std::vector<int> idx(free, 0);
    while (true) {
      Vec p = s.m.row(lead);
      for (int j = 0; j < free; ++j) {
        Code lam = order[idx[j]];
        if (lam) p = vec_add(F, p, vec_scale(F, lam, s.m.row(lead + 1 + j)));
      }
      pts.push_back(normalize(F, p));
      int j = free - 1;
      while (j >= 0 && idx[j] == int(F.n) - 1) idx[j--] = 0;
      if (j < 0) break;
      ++idx[j];
    }
  }
  std::sort(pts.begin(), pts.end(),
            [&](const Vec& x, const Vec& y) { return vec_less(F, x, y); });
  return pts;
}

uint64_t space_point_count(const Field& F, int ambient) {
  uint64_t total = 0, pw = 1;
  for (int i = 0; i <= ambient; ++i) {
    total += pw;
    pw *= F.n;
  }
  return total;
}

uint64_t point_index(const Field& F, const Vec& p) {
  const int n = p.n - 1;
  int lead = 0;
  while (lead <= n && p[lead] == 0) ++lead;
  ensure(lead <= n && p[lead] == 1, "point_index wants a normalized point");
  // points with a later leading position sort first; |F|^(n-j) of them each
  uint64_t idx = 0, pw = 1;
  for (int j = n; j > lead; --j) {
    idx += pw;
    pw *= F.n;
  }
  // pw == |F|^(n-lead); points with this leading position: pw
  uint64_t off = 0;
  for (int c = lead + 1; c <= n; ++c) {
    pw /= F.n;
    off += uint64_t(F.rank(p[c])) * pw;
  }
  return idx + off;
}

bool subspace_less(const Field& F, const Subspace& a, const Subspace& b) {
  if (a.m.rows != b.m.rows) return a.m.rows < b.m.rows;
  for (int r = 0; r < a.m.rows; ++r)
    for (int c = 0; c < a.m.cols; ++c)
      if (a.m.at(r, c) != b.m.at(r, c))
        return F.less(a.m.at(r, c), b.m.at(r, c));
  return false;
}

Homography make_homography(const Field& F, const Mat& m) {
  require(m.rows == m.cols, "homography matrix must be square");
  require(rank_of(F, m) == m.rows, "homography matrix is singular");
  Homography h{m};
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      if (m.at(r, c)) {
        Code s = F.inv(m.at(r, c));
        for (int i = 0; i < m.rows; ++i)
          for (int j = 0; j < m.cols; ++j)
            h.m.at(i, j) = F.mul(s, m.at(i, j));
        return h;
      }
  return h;
}

Vec apply_hom(const Field& F, const Homography& h, const Vec& p) {
  Vec r = Vec::zero(p.n);
  for (int i = 0; i < h.m.rows; ++i)
    for (int j = 0; j < h.m.cols; ++j)
      r[i] = F.add(r[i], F.mul(h.m.at(i, j), p[j]));
  return normalize(F, r);
}

Subspace apply_hom(const Field& F, const Homography& h, const Subspace& s) {
  std::vector<Vec> rows;
  for (int r = 0; r < s.m.rows; ++r)
    rows.push_back(apply_hom(F, h, s.m.row(r)));
  return subspace_from_rows(F, rows);
}

Homography hom_compose(const Field& F, const Homography& a,
                       const Homography& b) {
  Mat m;
  m.rows = m.cols = a.m.rows;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      Code v = 0;
      for (int k = 0; k < m.rows; ++k)
        v = F.add(v, F.mul(a.m.at(i, k), b.m.at(k, j)));
      m.at(i, j) = v;
    }
  return make_homography(F, m);
}

Homography hom_inverse(const Field& F, const Homography& h) {
  const int n = h.m.rows;
  Mat inv;
  inv.rows = inv.cols = uint8_t(n);
  for (int c = 0; c < n; ++c) {
    Vec e = Vec::zero(n);
    e[c] = 1;
    Vec x = solve_square(F, h.m, e);
    for (int r = 0; r < n; ++r) inv.at(r, c) = x[r];
  }
  return make_homography(F, inv);
}

Regulus regulus_from_three_planes(const Field& F, const Subspace& p1,
                                  const Subspace& p2, const Subspace& p3) {
  require(p1.dim() == 2 && p2.dim() == 2 && p3.dim() == 2 && p1.ambient() == 5,
          "regulus wants planes of PG(5)");
  require(disjoint(F, p1, p2) && disjoint(F, p1, p3) && disjoint(F, p2, p3),
          "regulus planes must be pairwise disjoint");
  // V = V(p1) (+) V(p2); V(p3) is the graph of the matching V(p1) -> V(p2)
  Mat A;  // columns: basis of V(p3) then basis of V(p2)
  A.rows = A.cols = 6;
  for (int j = 0; j < 3; ++j)
    for (int r = 0; r < 6; ++r) {
      A.at(r, j) = p3.m.at(j, r);
      A.at(r, 3 + j) = p2.m.at(j, r);
    }
  Regulus reg;
  for (int i = 0; i < 3; ++i) {
    Vec ai = p1.m.row(i);
    Vec x = solve_square(F, A, ai);  // ai = sum x_j v3_j + sum x_3+j v2_j
    Vec ci = Vec::zero(6);
    for (int j = 0; j < 3; ++j)
      ci = vec_add(F, ci, vec_scale(F, x[j], p3.m.row(j)));
    reg.a[i] = ai;
    reg.b[i] = vec_sub(F, ci, ai);
  }
  std::vector<Code> order = codes_by_rank(F);
  reg.planes.resize(F.n + 1);
  for (Code t = 0; t < F.n; ++t) {
    std::vector<Vec> rows;
    for (int i = 0; i < 3; ++i)
      rows.push_back(vec_add(F, reg.a[i], vec_scale(F, t, reg.b[i])));
    reg.planes[F.rank(t)] = subspace_from_rows(F, rows);
  }
  reg.planes[F.n] =
      subspace_from_rows(F, {reg.b[0], reg.b[1], reg.b[2]});
  ensure(reg.planes[F.rank(0)] == p1 && reg.planes[F.n] == p2 &&
             reg.planes[F.rank(1)] == p3,
         "regulus does not pass through its defining planes");
  for (const Subspace& pl : reg.planes) ensure(pl.dim() == 2, "regulus plane");
  for (size_t i = 0; i < reg.planes.size(); ++i)
    for (size_t j = i + 1; j < reg.planes.size(); ++j)
      ensure(disjoint(F, reg.planes[i], reg.planes[j]),
             "regulus planes not pairwise disjoint");
  // ruling lines, one per lambda in PG(2, F)
  for (int lead = 0; lead < 3; ++lead) {
    int free = 3 - lead - 1;
    std::vector<int> idx(free, 0);
    while (true) {
      Vec u = reg.a[lead], v = reg.b[lead];
      for (int j = 0; j < free; ++j) {
        Code lam = order[idx[j]];
        u = vec_add(F, u, vec_scale(F, lam, reg.a[lead + 1 + j]));
        v = vec_add(F, v, vec_scale(F, lam, reg.b[lead + 1 + j]));
      }
      Subspace line = subspace_from_rows(F, {u, v});
      ensure(line.dim() == 1, "degenerate ruling line");
      reg.ruling.push_back(line);
      int j = free - 1;
      while (j >= 0 && idx[j] == int(F.n) - 1) idx[j--] = 0;
      if (j < 0) break;
      ++idx[j];
    }
  }
  return reg;
}

Subspace extend_subspace(const FieldTower& T, const Subspace& s) {
  // base-field codes are cubic codes of the same elements, and an RREF basis
  // over GF(q) stays RREF over GF(q^3)
  (void)T;
  return s;
}

Regulus extend_regulus(const FieldTower& T, const Regulus& r) {
  const Field& C = T.cubic();
  Regulus ext;
  ext.a = r.a;
  ext.b = r.b;
  ext.planes.resize(C.n + 1);
  for (uint32_t t = 0; t < C.n; ++t) {
    std::vector<Vec> rows;
    for (int i = 0; i < 3; ++i)
      rows.push_back(vec_add(C, ext.a[i], vec_scale(C, Code(t), ext.b[i])));
    ext.planes[C.rank(Code(t))] = subspace_from_rows(C, rows);
  }
  ext.planes[C.n] =
      subspace_from_rows(C, {ext.b[0], ext.b[1], ext.b[2]});
  for (const Subspace& pl : ext.planes)
    ensure(pl.dim() == 2, "extended regulus plane degenerated");
  return ext;
}

bool is_plane_spread(const Field& F, const std::vector<Subspace>& planes) {
  const uint64_t total = space_point_count(F, 5);
  uint64_t covered = 0;
  std::vector<bool> seen(total, false);
  for (const Subspace& pl : planes) {
    if (pl.dim() != 2 || pl.ambient() != 5) return false;
    for (const Vec& p : enumerate_points(F, pl)) {
      uint64_t i = point_index(F, p);
      if (seen[i]) return false;
      seen[i] = true;
      ++covered;
    }
  }
  return covered == total;
}

bool is_regular_spread(const Field& F, const std::vector<Subspace>& planes) {
  require(is_plane_spread(F, planes), "input is not a plane spread of PG(5)");
  std::vector<Subspace> sorted = planes;
  std::sort(sorted.begin(), sorted.end(),
            [&](const Subspace& x, const Subspace& y) {
              return subspace_less(F, x, y);
            });
  std::unordered_set<Subspace, SubspaceHash> members(sorted.begin(),
                                                     sorted.end());
  const size_t n = sorted.size();
  auto closed = [&](size_t i, size_t j, size_t k) {
    Regulus r = regulus_from_three_planes(F, sorted[i], sorted[j], sorted[k]);
    for (const Subspace& pl : r.planes)
      if (!members.count(pl)) return false;
    return true;
  };
  if (F.n <= 3) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k)
          if (!closed(i, j, k)) return false;
    return true;
  }
  for (size_t k = 2; k < n; ++k)
    if (!closed(0, 1, k)) return false;
  std::mt19937 rng(kRegularityProbeSeed);
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  for (int probe = 0; probe < 100;) {
    size_t i = pick(rng), j = pick(rng), k = pick(rng);
    if (i == j || j == k || i == k) continue;
    if (!closed(i, j, k)) return false;
    ++probe;
  }
  return true;
}

}  // namespace splash
