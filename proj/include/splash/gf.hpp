#pragma once
// Finite field tower GF(p) <= GF(q) <= GF(q^3) with table-backed arithmetic,
// the coordinate map [.] onto GF(q)^3, and the 3x3 matrices (companion,
// Frobenius, multiplication) that drive the geometry layers.
//
// Element encoding. A GF(q) element with coefficient vector (c0,...,c_{d-1})
// over GF(p), least significant first, has integer code c0 + c1*p + ... ;
// a GF(q^3) element a0 + a1*tau + a2*tau^2 has code a0 + a1*q + a2*q^2 where
// the a_i are GF(q) codes. tau is a root of x^3 - t2*x^2 - t1*x - t0.
//
// Canonical element order: coefficient arrays compared lexicographically,
// least significant coefficient first. Cubic polynomial candidates are
// ordered by (t2, t1, t0) under that element order; find_primitive_poly
// returns the first primitive one.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace splash {

using Code = uint16_t;

/// One finite field with full lookup tables. Immutable after construction.
/// Serves both GF(q) and GF(q^3); subspace/matrix code is written against
/// this interface only.
struct Field {
  uint32_t n = 0;                       // element count
  std::vector<Code> addt, mult;         // n*n tables
  std::vector<Code> negt, invt, frobt;  // per-element tables; invt[0] unused
  std::vector<uint32_t> rankt;          // canonical ordering rank

  Code add(Code a, Code b) const { return addt[size_t(a) * n + b]; }
  Code sub(Code a, Code b) const { return add(a, negt[b]); }
  Code mul(Code a, Code b) const { return mult[size_t(a) * n + b]; }
  Code neg(Code a) const { return negt[a]; }
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  // x -> x^q where q is the base field size (identity on the base field)
  Code frob(Code a) const { return frobt[a]; }
  Code pow(Code a, long e) const;
  uint32_t rank(Code a) const { return rankt[a]; }
  bool less(Code a, Code b) const { return rankt[a] < rankt[b]; }
};

/// 3x3 matrix over one field, row-major codes.
using Mat3 = std::array<Code, 9>;
/// Coefficient triple (a0, a1, a2).
using Triple = std::array<Code, 3>;

Triple mat3_apply(const Field& F, const Mat3& m, const Triple& v);
Mat3 mat3_mul(const Field& F, const Mat3& a, const Mat3& b);
bool mat3_is_identity(const Mat3& m);

/// The distinguished frame elements p0 = t1 + t2*tau - tau^2,
/// p1 = t2 - tau, p2 = -1 and eta = p0 + p1*tau + p2*tau^2 (nonzero).
struct TransversalFrame {
  Triple p{};  // GF(q^3) codes
  Code eta = 0;
};

class FieldTower {
 public:
  /// Field sizes with a built-in base polynomial.
  static const std::vector<uint16_t>& supported();
  /// Smallest (t2,t1,t0)-ordered primitive cubic over GF(q).
  static Triple find_primitive_poly(uint16_t q);
  /// Every (t0,t1,t2) whose cubic is irreducible with a primitive root.
  static std::vector<Triple> all_primitive_polys(uint16_t q);

  static FieldTower make(uint16_t q);
  static FieldTower make(uint16_t q, const Triple& t);
  /// Token format "p^d:b0,b1,...,bd:t0,t1,t2" (base modulus little-endian,
  /// monic). Throws std::invalid_argument on any malformed or non-primitive
  /// input.
  static FieldTower parse(const std::string& token);
  std::string token() const;

  int p() const { return p_; }
  int d() const { return d_; }
  uint16_t q() const { return q_; }
  uint32_t q3() const { return q3_; }
  const Field& base() const { return base_; }
  const Field& cubic() const { return cubic_; }
  const std::vector<uint8_t>& base_poly() const { return base_poly_; }
  Triple tpoly() const { return {t_[0], t_[1], t_[2]}; }

  Code tau() const { return tau_; }
  Triple coeffs(Code x) const {
    return {Code(x % q_), Code((x / q_) % q_), Code(x / (q_ * q_))};
  }
  Code make_elem(Code a0, Code a1, Code a2) const {
    return Code(a0 + a1 * q_ + a2 * q_ * q_);
  }
  Code embed(Code a) const { return a; }  // GF(q) sits at codes 0..q-1
  bool in_base(Code x) const { return x < q_; }

  Code frob(Code x, int i = 1) const;  // x^(q^i), via the matrix N
  Code norm(Code x) const;             // x^(1+q+q^2), a GF(q) code

  /// Reference arithmetic by direct polynomial reduction; the cubic tables
  /// are memoized from this path.
  Code mul_direct(Code a, Code b) const;
  Code inv_direct(Code a) const;
  /// Discrete-log path (tau is primitive); must agree with mul_direct.
  Code mul_log(Code a, Code b) const;
  Code pow_log(Code a, long e) const;

  /// M_k over GF(q) with M_k [x] = [k x].
  Mat3 mult_matrix(Code k) const;
  const Mat3& companion() const { return mtau_; }
  /// N over GF(q) with N [y] = [y^q]; N^3 = I.
  const Mat3& frobenius_matrix() const { return nfrob_; }
  /// U_i = (p0 I + p1 M_tau + p2 M_tau^2)^(q^i), entries in GF(q^3).
  Mat3 u_matrix(int i) const;
  const TransversalFrame& frame() const { return frame_; }

 private:
  FieldTower() = default;
  void build(int p, int d, std::vector<uint8_t> base_poly, const Triple& t);

  int p_ = 0, d_ = 0;
  uint16_t q_ = 0;
  uint32_t q3_ = 0;
  std::vector<uint8_t> base_poly_;
  Triple t_{};
  Code tau_ = 0;
  Field base_, cubic_;
  Mat3 mtau_{}, nfrob_{};
  TransversalFrame frame_{};
  std::vector<int32_t> logt_;
  std::vector<Code> alogt_;
};

}  // namespace splash
