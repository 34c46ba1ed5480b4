#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "splash/gf.hpp"
#include "splash/pg.hpp"

namespace splash {

// projective parameter or spread label "infinity"
inline constexpr Code kInf = 0xFFFF;

// point or line of PG(2,q^3), coordinates in the cubic field
struct P2 {
  std::array<Code, 3> c{0, 0, 0};
  bool operator==(const P2&) const = default;
};

P2 make_p2(Code x, Code y, Code z);
P2 normalize_p2(const Field& C, P2 p);
Code p2_dot(const Field& C, const P2& a, const P2& b);
P2 p2_cross(const Field& C, const P2& a, const P2& b);
P2 mat3_point(const Field& C, const Mat3& m, const P2& p);  // m * column
P2 mat3_line(const Field& C, const P2& l, const Mat3& m);   // row * m

// Bruck-Bose skeleton: Sigma_inf carries the labelled regular spread
// [S_k] = {([kx],[x],0)}, and g_S = <A1,A2> is a transversal line of the
// spread's extension to GF(q^3).
struct BBContext {
  const FieldTower* tw = nullptr;
  Subspace sigma_inf;               // z = 0, ambient 6
  std::vector<Subspace> spread;     // ambient 5; index rank(k), infinity last
  std::vector<Code> spread_labels;  // cubic codes plus kInf, aligned
  Vec a1, a2;                       // marked points of g_S, 6 cubic coords
  Subspace g_s;                     // line of PG(5,q^3)

  const Field& base() const { return tw->base(); }
  const Field& cubic() const { return tw->cubic(); }
  int plane_index(Code label) const;
  const Subspace& plane_of(Code label) const;
};

BBContext make_bb_context(const FieldTower& T);

// the Bruck-Bose point map (alpha,beta,z) -> ([alpha],[beta],z); inputs with
// z outside GF(q) are rescaled by z^(q^2+q) so the last coordinate is norm(z)
Vec epsilon(const FieldTower& T, const P2& p);

// spread label of a point of Sigma_inf given in 6 base coordinates
Code point_label(const FieldTower& T, const Vec& p);

Subspace lift_to_pg6(const Subspace& s);  // append a zero z coordinate
Subspace drop_to_pg5(const Subspace& s);  // inverse, requires z = 0 rows
Vec lift_point(const Vec& p);
Vec drop_point(const Vec& p);

// entrywise Frobenius image of a cubic-coordinate subspace
Subspace frob_subspace(const FieldTower& T, const Subspace& s, int power);

// every line of PG(5,q^3) meeting all of the given pairwise disjoint planes;
// candidates are the lines through one point of planes[0] and one of planes[1]
std::vector<Subspace> transversal_search(const Field& C,
                                         const std::vector<Subspace>& planes);

struct TransversalSet {
  std::array<Subspace, 3> lines;   // g, g^q, g^(q^2)
  std::array<Vec, 2> span_points;  // A1, A2 generating lines[0]
};
TransversalSet spread_transversals(const BBContext& ctx);

// labels k in GF(q^3) plus kInf as points (k:1), (1:0) of PG(1,q^3)
struct ProjPair {
  Code u = 0, v = 0;
};
ProjPair label_pair(const FieldTower& T, Code label);
Code pair_label(const Field& C, const ProjPair& p);

// the unique order-q-subline of PG(1,q^3) through three distinct labels,
// returned sorted (finite labels by field rank, kInf last)
std::vector<Code> subline_through(const FieldTower& T, Code a, Code b, Code c);
bool is_subline(const FieldTower& T, std::vector<Code> labels);

// the 2-regulus on the spread planes named by an order-q-subline of labels
Regulus subline_to_regulus(const BBContext& ctx,
                           const std::vector<Code>& labels);

// Bruck-Bose image of the affine parametrized subline P(t) = A + tB,
// written as seven base-field polynomials of degree <= 3 in t
struct TwistedCubicParam {
  std::array<std::array<Code, 4>, 7> polys{};
  Code inf_label = 0;  // spread plane about whose 3-space the cubic sits
};
TwistedCubicParam twisted_cubic_from_subline(const BBContext& ctx, const P2& a,
                                             const P2& b);
Vec cubic_point_base(const FieldTower& T, const TwistedCubicParam& n, Code t);
Vec cubic_point_ext(const FieldTower& T, const TwistedCubicParam& n, Code t);
// tangent line at t = 0: span of c(0) and the first divided difference of
// c at 0 that is not proportional to c(0)
Subspace cubic_tangent_at_zero(const FieldTower& T,
                               const TwistedCubicParam& n);
// spread label of a line's point on the infinite line; rejects z = 0 itself
Code line_inf_label(const Field& C, const P2& line);

// true iff the GF(q^3) extension of the cubic meets all three lines
bool is_special_cubic(const BBContext& ctx, const TwistedCubicParam& n,
                      const std::array<Subspace, 3>& lines);

}  // namespace splash
