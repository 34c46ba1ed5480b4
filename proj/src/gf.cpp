#include "splash/gf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "splash/check.hpp"

namespace splash {
namespace {

struct BaseSpec {
  int p, d;
  std::vector<uint8_t> poly;  // monic modulus, little-endian, length d+1
};

// Base moduli for the non-prime sizes; primes use the trivial modulus x.
BaseSpec base_spec(uint16_t q) {
  switch (q) {
    case 2: return {2, 1, {0, 1}};
    case 3: return {3, 1, {0, 1}};
    case 5: return {5, 1, {0, 1}};
    case 7: return {7, 1, {0, 1}};
    case 4: return {2, 2, {1, 1, 1}};        // x^2 + x + 1
    case 8: return {2, 3, {1, 1, 0, 1}};     // x^3 + x + 1
    case 9: return {3, 2, {2, 2, 1}};        // x^2 + 2x + 2
    default: require(false, "unsupported field size q=" + std::to_string(q));
  }
  return {};
}

std::vector<uint8_t> to_poly(uint32_t code, int p, int d) {
  std::vector<uint8_t> c(d);
  for (int i = 0; i < d; ++i) {
    c[i] = uint8_t(code % p);
    code /= p;
  }
  return c;
}

uint32_t from_poly(const std::vector<uint8_t>& c, int p) {
  uint32_t v = 0;
  for (size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

Field make_base_field(const BaseSpec& s) {
  Field F;
  uint32_t n = 1;
  for (int i = 0; i < s.d; ++i) n *= s.p;
  F.n = n;
  F.addt.resize(size_t(n) * n);
  F.mult.resize(size_t(n) * n);
  F.negt.resize(n);
  F.invt.resize(n, 0);
  F.frobt.resize(n);
  F.rankt.resize(n);
  const int p = s.p, d = s.d;
  for (uint32_t a = 0; a < n; ++a) {
    auto ca = to_poly(a, p, d);
    std::vector<uint8_t> cn(d);
    for (int i = 0; i < d; ++i) cn[i] = uint8_t((p - ca[i]) % p);
    F.negt[a] = Code(from_poly(cn, p));
    F.frobt[a] = Code(a);  // x^q = x inside GF(q)
    for (uint32_t b = 0; b < n; ++b) {
      auto cb = to_poly(b, p, d);
      std::vector<uint8_t> cs(d);
      for (int i = 0; i < d; ++i) cs[i] = uint8_t((ca[i] + cb[i]) % p);
      F.addt[size_t(a) * n + b] = Code(from_poly(cs, p));
      std::vector<int> prod(2 * d - 1, 0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) prod[i + j] += int(ca[i]) * cb[j];
      for (int i = 2 * d - 2; i >= d; --i) {
        int c = prod[i] % p;
        prod[i] = 0;
        // x^i = -sum_j poly[j] x^(i-d+j)
        for (int j = 0; j < d; ++j)
          prod[i - d + j] = (prod[i - d + j] + c * (p - s.poly[j])) % p;
      }
      std::vector<uint8_t> cp(d);
      for (int i = 0; i < d; ++i) cp[i] = uint8_t(((prod[i] % p) + p) % p);
      F.mult[size_t(a) * n + b] = Code(from_poly(cp, p));
    }
  }
  for (uint32_t a = 1; a < n; ++a)
    for (uint32_t b = 1; b < n; ++b)
      if (F.mult[size_t(a) * n + b] == 1) {
        F.invt[a] = Code(b);
        break;
      }
  // rank: coefficient arrays compared least significant coefficient first
  std::vector<Code> order(n);
  std::iota(order.begin(), order.end(), Code(0));
  std::sort(order.begin(), order.end(), [&](Code x, Code y) {
    return to_poly(x, p, d) < to_poly(y, p, d);
  });
  for (uint32_t i = 0; i < n; ++i) F.rankt[order[i]] = i;
  return F;
}

// GF(q^3) product by polynomial reduction, usable before any tower exists.
Code cubic_mul_raw(const Field& B, uint16_t q, const Triple& t, Code a,
                   Code b) {
  Code a0 = Code(a % q), a1 = Code((a / q) % q), a2 = Code(a / (q * q));
  Code b0 = Code(b % q), b1 = Code((b / q) % q), b2 = Code(b / (q * q));
  Code c[5] = {};
  const Code av[3] = {a0, a1, a2}, bv[3] = {b0, b1, b2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      c[i + j] = B.add(c[i + j], B.mul(av[i], bv[j]));
  // tau^k = t2 tau^(k-1) + t1 tau^(k-2) + t0 tau^(k-3)
  for (int k = 4; k >= 3; --k) {
    Code h = c[k];
    c[k] = 0;
    c[k - 1] = B.add(c[k - 1], B.mul(h, t[2]));
    c[k - 2] = B.add(c[k - 2], B.mul(h, t[1]));
    c[k - 3] = B.add(c[k - 3], B.mul(h, t[0]));
  }
  return Code(c[0] + c[1] * q + c[2] * uint32_t(q) * q);
}

bool cubic_irreducible(const Field& B, uint16_t q, const Triple& t) {
  // a cubic is irreducible over GF(q) iff it has no root there
  for (Code a = 0; a < q; ++a) {
    Code a2 = B.mul(a, a), a3 = B.mul(a2, a);
    Code v = B.sub(a3, B.mul(t[2], a2));
    v = B.sub(v, B.mul(t[1], a));
    v = B.sub(v, t[0]);
    if (v == 0) return false;
  }
  return true;
}

uint32_t tau_order(const Field& B, uint16_t q, const Triple& t) {
  const Code tau = Code(q);  // (0,1,0)
  Code x = tau;
  uint32_t ord = 1;
  while (x != 1) {
    x = cubic_mul_raw(B, q, t, x, tau);
    ++ord;
  }
  return ord;
}

std::vector<Code> by_rank(const Field& F) {
  std::vector<Code> order(F.n);
  std::iota(order.begin(), order.end(), Code(0));
  std::sort(order.begin(), order.end(),
            [&](Code x, Code y) { return F.rankt[x] < F.rankt[y]; });
  return order;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

int parse_int(const std::string& s) {
  require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos,
          "tower token: bad integer '" + s + "'");
  return std::stoi(s);
}

}  // namespace

Code Field::inv(Code a) const {
  require(a != 0, "division by zero");
  return invt[a];
}

Code Field::pow(Code a, long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Code r = 1, b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Triple mat3_apply(const Field& F, const Mat3& m, const Triple& v) {
  Triple r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i] = F.add(r[i], F.mul(m[i * 3 + j], v[j]));
  return r;
}

Mat3 mat3_mul(const Field& F, const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        r[i * 3 + j] = F.add(r[i * 3 + j], F.mul(a[i * 3 + k], b[k * 3 + j]));
  return r;
}

bool mat3_is_identity(const Mat3& m) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (m[i * 3 + j] != (i == j ? 1 : 0)) return false;
  return true;
}

const std::vector<uint16_t>& FieldTower::supported() {
  static const std::vector<uint16_t> s = {2, 3, 4, 5, 7, 8, 9};
  return s;
}

Triple FieldTower::find_primitive_poly(uint16_t q) {
  BaseSpec spec = base_spec(q);
  Field B = make_base_field(spec);
  auto order = by_rank(B);
  const uint32_t q3m1 = uint32_t(q) * q * q - 1;
  for (Code t2 : order)
    for (Code t1 : order)
      for (Code t0 : order) {
        Triple t = {t0, t1, t2};
        if (!cubic_irreducible(B, q, t)) continue;
        if (tau_order(B, q, t) == q3m1) return t;
      }
  ensure(false, "no primitive cubic found");
  return {};
}

std::vector<Triple> FieldTower::all_primitive_polys(uint16_t q) {
  BaseSpec spec = base_spec(q);
  Field B = make_base_field(spec);
  auto order = by_rank(B);
  const uint32_t q3m1 = uint32_t(q) * q * q - 1;
  std::vector<Triple> out;
  for (Code t2 : order)
    for (Code t1 : order)
      for (Code t0 : order) {
        Triple t = {t0, t1, t2};
        if (cubic_irreducible(B, q, t) && tau_order(B, q, t) == q3m1)
          out.push_back(t);
      }
  return out;
}

FieldTower FieldTower::make(uint16_t q) {
  return make(q, find_primitive_poly(q));
}

FieldTower FieldTower::make(uint16_t q, const Triple& t) {
  BaseSpec spec = base_spec(q);
  FieldTower T;
  T.build(spec.p, spec.d, spec.poly, t);
  return T;
}

void FieldTower::build(int p, int d, std::vector<uint8_t> base_poly,
                       const Triple& t) {
  p_ = p;
  d_ = d;
  base_poly_ = std::move(base_poly);
  uint32_t q = 1;
  for (int i = 0; i < d; ++i) q *= uint32_t(p);
  require(q <= 9, "base field too large");
  q_ = uint16_t(q);
  q3_ = q * q * q;
  base_ = make_base_field({p, d, base_poly_});
  for (auto c : t) require(c < q_, "cubic coefficient out of range");
  t_ = t;
  require(cubic_irreducible(base_, q_, t_), "cubic is reducible");
  require(tau_order(base_, q_, t_) == q3_ - 1, "tau is not primitive");
  tau_ = Code(q_);

  // companion matrix: columns [tau], [tau^2], [tau^3]
  mtau_ = {0, 0, t_[0], 1, 0, t_[1], 0, 1, t_[2]};

  // N columns [1], [tau^q], [tau^2q]; tau^q by raw square-and-multiply
  Code tq = 1;
  for (uint16_t e = 0; e < q_; ++e) tq = cubic_mul_raw(base_, q_, t_, tq, tau_);
  Code tq2 = cubic_mul_raw(base_, q_, t_, tq, tq);
  const Triple cols[3] = {{1, 0, 0}, coeffs(tq), coeffs(tq2)};
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r) nfrob_[r * 3 + c] = cols[c][r];

  // cubic field tables, memoized from the reduction path
  Field& C = cubic_;
  C.n = q3_;
  C.addt.resize(size_t(q3_) * q3_);
  C.mult.resize(size_t(q3_) * q3_);
  C.negt.resize(q3_);
  C.invt.resize(q3_, 0);
  C.frobt.resize(q3_);
  C.rankt.resize(q3_);
  for (uint32_t a = 0; a < q3_; ++a) {
    Triple ca = coeffs(Code(a));
    C.negt[a] =
        make_elem(base_.neg(ca[0]), base_.neg(ca[1]), base_.neg(ca[2]));
    Triple fa = mat3_apply(base_, nfrob_, ca);
    C.frobt[a] = make_elem(fa[0], fa[1], fa[2]);
    for (uint32_t b = 0; b < q3_; ++b) {
      Triple cb = coeffs(Code(b));
      C.addt[size_t(a) * q3_ + b] = make_elem(base_.add(ca[0], cb[0]),
                                              base_.add(ca[1], cb[1]),
                                              base_.add(ca[2], cb[2]));
      C.mult[size_t(a) * q3_ + b] =
          cubic_mul_raw(base_, q_, t_, Code(a), Code(b));
    }
  }
  std::vector<Code> order(q3_);
  std::iota(order.begin(), order.end(), Code(0));
  std::sort(order.begin(), order.end(), [&](Code x, Code y) {
    Triple cx = coeffs(x), cy = coeffs(y);
    for (int i = 0; i < 3; ++i)
      if (cx[i] != cy[i]) return base_.rankt[cx[i]] < base_.rankt[cy[i]];
    return false;
  });
  for (uint32_t i = 0; i < q3_; ++i) C.rankt[order[i]] = i;

  // discrete logs over the primitive root tau
  logt_.assign(q3_, -1);
  alogt_.assign(q3_ - 1, 0);
  Code x = 1;
  for (uint32_t i = 0; i < q3_ - 1; ++i) {
    alogt_[i] = x;
    logt_[x] = int32_t(i);
    x = C.mul(x, tau_);
  }
  ensure(x == 1, "log table did not close");
  for (uint32_t a = 1; a < q3_; ++a) {
    C.invt[a] = alogt_[(q3_ - 1 - logt_[a]) % (q3_ - 1)];
    ensure(C.mul(Code(a), C.invt[a]) == 1, "inverse table broken");
  }

  // frame: p0 = t1 + t2 tau - tau^2, p1 = t2 - tau, p2 = -1
  const Code tau2 = C.mul(tau_, tau_);
  frame_.p[0] = C.sub(make_elem(t_[1], t_[2], 0), tau2);
  frame_.p[1] = C.sub(Code(t_[2]), tau_);
  frame_.p[2] = C.neg(1);
  frame_.eta = C.add(frame_.p[0],
                     C.add(C.mul(frame_.p[1], tau_), C.mul(frame_.p[2], tau2)));
  ensure(frame_.eta != 0, "frame scalar eta vanished");
  const Code tqq = C.frob(tq);  // tau^(q^2)
  ensure(frame_.p[0] == C.neg(C.mul(tq, tqq)), "p0 != -tau^q tau^q2");
  ensure(frame_.p[1] == C.add(tq, tqq), "p1 != tau^q + tau^q2");
}

Code FieldTower::frob(Code x, int i) const {
  i %= 3;
  if (i < 0) i += 3;
  Code r = x;
  for (int k = 0; k < i; ++k) r = cubic_.frob(r);
  return r;
}

Code FieldTower::norm(Code x) const {
  Code v = cubic_.mul(x, cubic_.mul(frob(x, 1), frob(x, 2)));
  Triple c = coeffs(v);
  ensure(c[1] == 0 && c[2] == 0, "norm left the base field");
  return c[0];
}

Code FieldTower::mul_direct(Code a, Code b) const {
  return cubic_mul_raw(base_, q_, t_, a, b);
}

Code FieldTower::inv_direct(Code a) const {
  require(a != 0, "division by zero");
  Code y = mul_direct(frob(a, 1), frob(a, 2));
  Code n = norm(a);  // a * y
  return mul_direct(y, base_.inv(n));
}

Code FieldTower::mul_log(Code a, Code b) const {
  if (a == 0 || b == 0) return 0;
  return alogt_[(uint32_t(logt_[a]) + uint32_t(logt_[b])) % (q3_ - 1)];
}

Code FieldTower::pow_log(Code a, long e) const {
  if (a == 0) {
    require(e >= 0, "zero to a negative power");
    return e == 0 ? 1 : 0;
  }
  long m = long(q3_ - 1);
  long le = (long(logt_[a]) * (e % m)) % m;
  if (le < 0) le += m;
  return alogt_[le];
}

Mat3 FieldTower::mult_matrix(Code k) const {
  Triple c = coeffs(k);
  Mat3 m2 = mat3_mul(base_, mtau_, mtau_);
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Code v = base_.mul(c[1], mtau_[i * 3 + j]);
      v = base_.add(v, base_.mul(c[2], m2[i * 3 + j]));
      if (i == j) v = base_.add(v, c[0]);
      r[i * 3 + j] = v;
    }
  return r;
}

Mat3 FieldTower::u_matrix(int i) const {
  // base-field matrix entries double as cubic codes
  Mat3 m2 = mat3_mul(base_, mtau_, mtau_);
  Mat3 u{};
  const Field& C = cubic_;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Code v = C.mul(frame_.p[1], mtau_[r * 3 + c]);
      v = C.add(v, C.mul(frame_.p[2], m2[r * 3 + c]));
      if (r == c) v = C.add(v, frame_.p[0]);
      u[r * 3 + c] = frob(v, i);
    }
  return u;
}

std::string FieldTower::token() const {
  std::string s = std::to_string(p_) + "^" + std::to_string(d_) + ":";
  for (int i = 0; i <= d_; ++i)
    s += (i ? "," : "") + std::to_string(base_poly_[i]);
  s += ":";
  for (int i = 0; i < 3; ++i) s += (i ? "," : "") + std::to_string(t_[i]);
  return s;
}

FieldTower FieldTower::parse(const std::string& token) {
  auto parts = split(token, ':');
  require(parts.size() == 3, "tower token: expected p^d:basepoly:t0,t1,t2");
  auto pd = split(parts[0], '^');
  require(pd.size() == 2, "tower token: bad p^d");
  int p = parse_int(pd[0]), d = parse_int(pd[1]);
  require(p == 2 || p == 3 || p == 5 || p == 7, "tower token: p not prime");
  require(d >= 1 && d <= 3, "tower token: d out of range");
  uint32_t q = 1;
  for (int i = 0; i < d; ++i) q *= uint32_t(p);
  bool ok = false;
  for (auto s : supported()) ok = ok || s == q;
  require(ok, "tower token: unsupported q");
  auto bp = split(parts[1], ',');
  require(int(bp.size()) == d + 1, "tower token: base polynomial degree");
  std::vector<uint8_t> poly;
  for (auto& c : bp) {
    int v = parse_int(c);
    require(v >= 0 && v < p, "tower token: base coefficient out of range");
    poly.push_back(uint8_t(v));
  }
  require(poly.back() == 1, "tower token: base polynomial not monic");
  if (d == 1) {
    require(poly[0] == 0, "tower token: degree-1 modulus must be x");
  } else {
    Field P = make_base_field({p, 1, {0, 1}});
    bool has_root = false;
    for (Code a = 0; a < p; ++a) {
      Code v = 0;
      for (int i = d; i >= 0; --i) v = P.add(P.mul(v, a), poly[i]);
      has_root = has_root || v == 0;
    }
    require(!has_root, "tower token: base polynomial reducible");
  }
  auto tp = split(parts[2], ',');
  require(tp.size() == 3, "tower token: need three cubic coefficients");
  Triple t{};
  for (int i = 0; i < 3; ++i) {
    int v = parse_int(tp[i]);
    require(v >= 0 && uint32_t(v) < q, "tower token: cubic coefficient range");
    t[i] = Code(v);
  }
  FieldTower T;
  T.build(p, d, poly, t);
  return T;
}

}  // namespace splash
