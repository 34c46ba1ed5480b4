#pragma once
// The coordinatised exterior order-q-subplane K * PG(2,q) of PG(2,q^3), its
// splash of infinite points, the nine quadrics cutting out its Bruck-Bose
// image, and the tangent planes at its points (polar route and twisted-cubic
// route).

#include <array>
#include <cstdint>
#include <vector>

#include "splash/bruckbose.hpp"
#include "splash/gf.hpp"
#include "splash/pg.hpp"

namespace splash {

/// The subplane with both coordinate charts. points[i] = K * point_pre[i],
/// lines[i] = line_pre[i] * K_inv; preimages are PG(2,q) in base codes.
struct SubplaneConfig {
  const BBContext* ctx = nullptr;
  Mat3 k{}, k_inv{};  // cubic codes; k * k_inv = (tau - tau^q) * identity
  std::vector<P2> points;
  std::vector<P2> lines;
  std::vector<P2> point_pre;
  std::vector<P2> line_pre;

  const FieldTower& tower() const { return *ctx->tw; }
};

/// Builds the subplane and verifies it is an order-q-subplane with no point
/// on the infinite line, carrying incidence faithfully.
SubplaneConfig build_subplane(const BBContext& ctx);

/// The infinite points of the subplane's extended lines, as spread labels
/// with their planes. Carriers are the two planes every subline regulus of
/// the splash misses.
struct Splash {
  std::vector<Code> labels;      // sorted by element rank
  std::vector<Subspace> planes;  // aligned with labels
  std::array<Code, 2> carrier_labels{kInf, 0};
  std::array<Subspace, 2> carriers;
};

/// Intersects every extended subplane line with the infinite line and checks
/// the label set against the closed form {tau^((q-1)i)}. Throws
/// std::logic_error on disagreement.
Splash splash_of(const SubplaneConfig& B);

/// Quadratic form on PG(6,q), upper-triangular base-field coefficients.
struct QuadricForm {
  std::array<Code, 49> c{};  // row-major 7x7, entries below the diagonal zero

  Code at(int i, int j) const { return c[size_t(i) * 7 + j]; }
  Code& at(int i, int j) { return c[size_t(i) * 7 + j]; }
  bool operator==(const QuadricForm&) const = default;
};

Code quadric_eval(const Field& F, const QuadricForm& f, const Vec& p);
/// Coefficient vector of the polar linear form b(p, .) where
/// b(x,y) = Q(x+y) - Q(x) - Q(y); may be identically zero.
Vec quadric_polar(const Field& F, const QuadricForm& f, const Vec& p);
/// Scale so the first nonzero coefficient is 1.
QuadricForm quadric_normalize(const Field& F, QuadricForm f);

/// The nine quadratic forms whose common affine zero set is the Bruck-Bose
/// image of the subplane: tau-power components of U^q V - U V^q over the
/// pairs (Y,X), (Z,X), (Z,Y) of subplane coordinate forms.
std::array<QuadricForm, 9> nine_quadrics(const SubplaneConfig& B);

struct TangentResult {
  Subspace plane;       // ambient 6, holds the image of the subplane point
  Subspace trace;       // plane meet Sigma_inf, a line
  int zero_polars = 0;  // forms whose polar vanished at the point
};

/// Tangent plane at a subplane point as the meet of the nine polar
/// hyperplanes there. Forms with an identically zero polar contribute no
/// constraint and are counted.
TangentResult tangent_plane(const SubplaneConfig& B, const P2& p,
                            const std::array<QuadricForm, 9>& forms);
TangentResult tangent_plane(const SubplaneConfig& B, const P2& p);

/// Tangent plane at a subplane point as the span of the tangent lines of
/// the q+1 twisted cubics through it. Throws std::logic_error if the
/// tangent lines fail to be coplanar.
Subspace tangent_plane_via_cubics(const SubplaneConfig& B, const P2& p);

/// The 2-regulus named by the infinite points of the q+1 subplane lines
/// through a subplane point.
Regulus pencil_regulus(const SubplaneConfig& B, const P2& a);

}  // namespace splash
