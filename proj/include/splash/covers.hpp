#pragma once
// The tangent and conic covers of the splash, the homographies beta and
// Theta, the cover transversal lines with their marked intersection points,
// carrier characterisation, disjoint coset splashes, hyper-regulus
// replacement, and the classification of splash sublines by their cover
// sections.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "splash/bruckbose.hpp"
#include "splash/gf.hpp"
#include "splash/pg.hpp"
#include "splash/subplane.hpp"

namespace splash {

enum class CoverKind { Tangent, Conic };

/// One cover of a splash: [T_k] = {([kx],[x^q],0)} or [C_k] =
/// {([kx],[x^(q^2)],0)} for k in the splash's label set.
struct Cover {
  CoverKind kind = CoverKind::Tangent;
  std::vector<Code> labels;      // sorted by element rank
  std::vector<Subspace> planes;  // ambient 5, aligned with labels
};

/// ([x],[y]) -> ([x],[y^q]) on Sigma_inf; order 3, maps S -> T -> C -> S.
Homography beta_hom(const BBContext& ctx);
/// diag(M_tau, M_tau, 1) on PG(6,q); fixes every spread plane.
Homography theta_hom(const BBContext& ctx);
/// The restriction of theta to Sigma_inf.
Homography theta_inf_hom(const BBContext& ctx);

/// Builds both covers via beta and verifies the cover axioms: families are
/// beta images of each other, planes within a family are pairwise disjoint,
/// the three families share one point union, planes across families meet in
/// single points, and beta fixes the carrier planes.
std::pair<Cover, Cover> covers_of_splash(const BBContext& ctx,
                                         const Splash& S);

/// The three conjugate transversal lines of a cover with the closed-form
/// marked points: g_T = <A1, A2^(q^2)> met by [T_k]* at
/// k A1 + eta^(1-q^2) A2^(q^2), and g_C = <A1, A2^q> met by [C_k]* at
/// k A1 + eta^(1-q) A2^q. Membership of every marked point is verified.
struct CoverTransversals {
  std::array<Subspace, 3> lines;  // g, g^q, g^(q^2)
  std::vector<Vec> marked;        // aligned with the cover's labels
};
CoverTransversals cover_transversals(const BBContext& ctx, const Cover& c);

/// Checks Theta's action: every spread plane fixed, [T_k] -> [T_(tau^(1-q^2)
/// k)], [C_k] -> [C_(tau^(1-q) k)], and one orbit per cover.
struct ThetaReport {
  bool fixes_spread = false;
  bool maps_covers = false;
  uint32_t tangent_orbit = 0, conic_orbit = 0;
};
ThetaReport verify_theta_action(const BBContext& ctx, const Splash& S,
                                const Cover& tcov, const Cover& ccov);

/// The spread planes whose extension meets all nine transversal lines;
/// verified to be exactly the two carriers.
std::vector<Subspace> carrier_characterisation(const BBContext& ctx,
                                               const Splash& S,
                                               const Cover& tcov,
                                               const Cover& ccov);

/// The q-1 coset splashes tau^j K, pairwise disjoint, missing only the
/// carriers, with the common transversal lines of all their covers.
struct SplashFamily {
  std::vector<Splash> splashes;
  std::array<Subspace, 3> tangent_lines, conic_lines;
};
SplashFamily disjoint_splashes(const BBContext& ctx);

enum class Choice { Keep, Tangent, Conic };

/// Replaces each coset splash by the chosen cover family and re-checks the
/// spread axioms. regular reports is_regular_spread on the result.
struct ReplacementSpread {
  std::vector<Choice> choice;
  std::vector<Subspace> planes;
  bool regular = false;
};
ReplacementSpread replace_hyperreguli(const BBContext& ctx,
                                      const std::vector<Choice>& choice);

/// Section of a splash regulus by one cover plane: the q+1 points, one per
/// regulus plane, are either collinear or no three collinear.
struct SectionResult {
  enum Kind { Line, ConicPoints } kind = Line;
  Subspace line;           // set for Line only
  std::vector<Vec> points;  // one per regulus plane, plane order
};
SectionResult cover_plane_section(const BBContext& ctx, const Regulus& r,
                                  const Subspace& cover_plane);

/// Classifies a regulus contained in the splash by its cover sections and
/// verifies uniformity across both covers. Line sections must be ruling
/// lines, pairwise distinct over the family. ConicOnly records a regulus
/// whose sections are conics in both covers.
struct SublineClassification {
  enum Value { Pencil, DualConic, ConicOnly } value = ConicOnly;
  std::optional<Subspace> witness;  // first cover plane met in a line
};
SublineClassification classify_subline_regulus(const BBContext& ctx,
                                               const Regulus& r,
                                               const Cover& tcov,
                                               const Cover& ccov);

/// The regulus on the q+1 splash planes met by a line inside a conic-cover
/// plane; the line is one of its ruling lines.
Regulus dual_conic_regulus(const BBContext& ctx, const Cover& ccov,
                           const Subspace& u);

/// True iff the extended section of the regulus by the cover plane contains
/// the plane's intersection points with all three given transversal lines.
bool is_cover_special_conic(const BBContext& ctx, const Regulus& r,
                            const Subspace& cover_plane,
                            const std::array<Subspace, 3>& transversals);

/// Every order-q-subline of PG(1,q^3) whose labels all lie in the given
/// set, deduplicated, each sorted by element rank, in lexicographic order.
std::vector<std::vector<Code>> splash_sublines(const FieldTower& T,
                                               const std::vector<Code>& labels);

}  // namespace splash
