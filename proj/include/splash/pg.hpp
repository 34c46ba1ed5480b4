#pragma once
// Projective geometry over one runtime Field: points, canonical subspaces
// (reduced row echelon bases), span/meet, homographies, 2-reguli of planes
// in PG(5), and the regularity test for plane spreads.
//
// Subspace bases are stored as RREF matrices, so equality and hashing are
// structural. Points are row vectors normalized to a leading 1. Enumeration
// and search orders follow the canonical element order of the Field.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "splash/gf.hpp"

namespace splash {

struct Vec {
  uint8_t n = 0;
  std::array<Code, 8> c{};

  static Vec zero(int n) {
    Vec v;
    v.n = uint8_t(n);
    return v;
  }
  Code operator[](int i) const { return c[i]; }
  Code& operator[](int i) { return c[i]; }
  bool operator==(const Vec&) const = default;
  bool is_zero() const {
    for (int i = 0; i < n; ++i)
      if (c[i]) return false;
    return true;
  }
};

Vec make_vec(std::initializer_list<Code> v);
/// Scale so the leftmost nonzero coordinate is 1.
Vec normalize(const Field& F, Vec v);
Vec vec_add(const Field& F, const Vec& a, const Vec& b);
Vec vec_scale(const Field& F, Code s, const Vec& a);
Code vec_dot(const Field& F, const Vec& a, const Vec& b);
/// Strict canonical order (by per-coordinate element rank).
bool vec_less(const Field& F, const Vec& a, const Vec& b);

struct Mat {
  uint8_t rows = 0, cols = 0;
  std::array<Code, 112> a{};  // up to 14 x 8

  Code at(int r, int c) const { return a[size_t(r) * cols + c]; }
  Code& at(int r, int c) { return a[size_t(r) * cols + c]; }
  Vec row(int r) const;
  void push_row(const Vec& v);
  bool operator==(const Mat&) const = default;
};

/// In-place Gauss-Jordan to reduced row echelon form; returns the rank and
/// drops zero rows.
int rref(const Field& F, Mat& m);
int rank_of(const Field& F, Mat m);

/// A projective subspace as its canonical RREF row basis. rows = dim + 1.
struct Subspace {
  Mat m;

  int dim() const { return int(m.rows) - 1; }
  int ambient() const { return int(m.cols) - 1; }
  bool operator==(const Subspace&) const = default;
};

struct SubspaceHash {
  size_t operator()(const Subspace& s) const {
    size_t h = 1469598103934665603ull;
    h = h * 1099511628211ull + s.m.rows;
    for (int r = 0; r < s.m.rows; ++r)
      for (int c = 0; c < s.m.cols; ++c)
        h = (h ^ s.m.at(r, c)) * 1099511628211ull;
    return h;
  }
};

Subspace subspace_from_rows(const Field& F, const std::vector<Vec>& rows);
Subspace span(const Field& F, const Subspace& a, const Subspace& b);
Subspace span_point(const Field& F, const Subspace& a, const Vec& p);
/// Intersection of two subspaces (empty => rows == 0).
Subspace meet(const Field& F, const Subspace& a, const Subspace& b);
/// Dual subspace: all x with r . x = 0 for every basis row r.
Subspace annihilator(const Field& F, const Subspace& s);
bool contains(const Field& F, const Subspace& s, const Vec& p);
bool subspace_leq(const Field& F, const Subspace& inner, const Subspace& outer);
bool disjoint(const Field& F, const Subspace& a, const Subspace& b);
/// Residual of p after reduction modulo the RREF basis of s (zero iff
/// contained); normalized when nonzero.
Vec reduce_mod(const Field& F, const Subspace& s, Vec p);

/// All points, sorted canonically. Size (|F|^(dim+1)-1)/(|F|-1).
std::vector<Vec> enumerate_points(const Field& F, const Subspace& s);
uint64_t space_point_count(const Field& F, int ambient);
/// Rank of a normalized point in the canonical enumeration of PG(n, F).
uint64_t point_index(const Field& F, const Vec& p);
bool subspace_less(const Field& F, const Subspace& a, const Subspace& b);

/// Invertible (n+1)x(n+1) matrix acting on points as column vectors,
/// normalized so the first nonzero entry in reading order is 1.
struct Homography {
  Mat m;
  bool operator==(const Homography&) const = default;
};

Homography make_homography(const Field& F, const Mat& m);
Vec apply_hom(const Field& F, const Homography& h, const Vec& p);
Subspace apply_hom(const Field& F, const Homography& h, const Subspace& s);
Homography hom_compose(const Field& F, const Homography& a,
                       const Homography& b);
Homography hom_inverse(const Field& F, const Homography& h);

/// Plane 2-regulus in PG(5): |F|+1 pairwise disjoint planes parametrized by
/// matched bases, plane(t) = span{a_i + t b_i}, plane(inf) = span{b_i}.
/// planes[rank(t)] holds the finite parameters, planes.back() is t = inf.
struct Regulus {
  std::array<Vec, 3> a, b;
  std::vector<Subspace> planes;
  std::vector<Subspace> ruling;  // q^2+q+1 lines, lambda-enumeration order

  const Subspace& plane_at(const Field& F, Code t) const {
    return planes[F.rank(t)];
  }
  const Subspace& plane_at_inf() const { return planes.back(); }
};

/// The unique 2-regulus through three pairwise disjoint planes of PG(5).
/// plane(0) = p1, plane(inf) = p2, plane(1) = p3.
Regulus regulus_from_three_planes(const Field& F, const Subspace& p1,
                                  const Subspace& p2, const Subspace& p3);
/// Re-evaluate a regulus over the cubic extension (|F|^3 + 1 planes).
/// Ruling lines are not materialized.
Regulus extend_regulus(const FieldTower& T, const Regulus& r);
Subspace extend_subspace(const FieldTower& T, const Subspace& s);

/// A spread of planes with a cached regularity verdict.
struct Spread2 {
  std::vector<Subspace> planes;
  bool regular = false;
};

inline constexpr uint32_t kRegularityProbeSeed = 0x2F5A11;

/// Partition check plus the regulus-closure test: exhaustive over all plane
/// triples when |F| <= 3, otherwise all triples through the first two planes
/// of the canonically sorted list plus 100 seeded pseudorandom triples.
bool is_regular_spread(const Field& F, const std::vector<Subspace>& planes);
/// The partition check alone: pairwise disjoint planes covering PG(5).
bool is_plane_spread(const Field& F, const std::vector<Subspace>& planes);

}  // namespace splash
