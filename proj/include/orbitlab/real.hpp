#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "orbitlab/arith.hpp"

namespace orbitlab {

/// Working precision in bits for all real enclosures. Read once from
/// ORBITLAB_PRECISION_BITS (default 128, clamped to at least 64).
inline mpfr_prec_t precision_bits() {
  static const mpfr_prec_t bits = [] {
    long v = 128;
    if (const char* env = std::getenv("ORBITLAB_PRECISION_BITS")) {
      char* end = nullptr;
      const long parsed = std::strtol(env, &end, 10);
      if (end != env && *end == '\0') v = parsed;
    }
    return static_cast<mpfr_prec_t>(std::max(64L, v));
  }();
  return bits;
}

/// Owning wrapper around an mpfr_t at the working precision.
class Real {
 public:
  Real() { mpfr_init2(v_, precision_bits()); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept : Real() { mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  static Real from(const BigInt& z, mpfr_rnd_t rnd) {
    Real r;
    mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
    return r;
  }
  static Real from(const Rat& q, mpfr_rnd_t rnd) {
    Real r;
    mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
    return r;
  }
  static Real from(double x) {
    Real r;
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real infinity(int sign) {
    Real r;
    mpfr_set_inf(r.v_, sign);
    return r;
  }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Exact dyadic value of a finite Real.
  Rat to_rational() const {
    if (!mpfr_number_p(v_)) throw Error(ErrorKind::PreconditionViolated, "non-finite real");
    BigInt m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    Rat q(m);
    if (e >= 0) {
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return q;
  }

  /// Decimal rendering with `digits` significant digits, rounded in the
  /// given direction (nearest by default).
  std::string str(int digits = 20, mpfr_rnd_t rnd = MPFR_RNDN) const {
    if (mpfr_zero_p(v_)) return "0";
    if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
    char* buf = nullptr;
    const char dir = rnd == MPFR_RNDD ? 'D' : rnd == MPFR_RNDU ? 'U' : 'N';
    const std::string fmt = std::string("%.") + std::to_string(digits) + "R" + dir + "g";
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

namespace detail {
template <class Op>
inline Real rounded(Op op, mpfr_rnd_t rnd) {
  Real r;
  op(r.get(), rnd);
  return r;
}
}  // namespace detail

/// Closed interval [lo, hi] with outward-rounded arithmetic. Every value
/// produced by these operations encloses the exact real result.
class Interval {
 public:
  Interval() = default;
  Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

  static Interval point(const BigInt& z) {
    return {Real::from(z, MPFR_RNDD), Real::from(z, MPFR_RNDU)};
  }
  static Interval point(const Rat& q) {
    return {Real::from(q, MPFR_RNDD), Real::from(q, MPFR_RNDU)};
  }
  static Interval hull(const Rat& a, const Rat& b) {
    return {Real::from(std::min(a, b), MPFR_RNDD), Real::from(std::max(a, b), MPFR_RNDU)};
  }

  /// Enclosure of log(z) for z >= 1 (exactly [0, 0] at z = 1).
  static Interval log_of(const BigInt& z) {
    if (z <= 0) throw Error(ErrorKind::PreconditionViolated, "log of non-positive integer");
    Real zl = Real::from(z, MPFR_RNDD), zh = Real::from(z, MPFR_RNDU);
    return {detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_log(r, zl.get(), m); }, MPFR_RNDD),
            detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_log(r, zh.get(), m); }, MPFR_RNDU)};
  }
  static Interval log_of(const Rat& q) {
    if (q <= 0) throw Error(ErrorKind::PreconditionViolated, "log of non-positive rational");
    return log_of(q.get_num()) - log_of(q.get_den());
  }

  /// Enclosure of Euler's number.
  static Interval e() {
    Real one = Real::from(BigInt(1), MPFR_RNDN);
    return {detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_exp(r, one.get(), m); }, MPFR_RNDD),
            detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_exp(r, one.get(), m); }, MPFR_RNDU)};
  }

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }

  Real width() const {
    return detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sub(r, hi_.get(), lo_.get(), m); },
                           MPFR_RNDU);
  }
  Real midpoint() const {
    Real r = detail::rounded(
        [&](mpfr_ptr out, mpfr_rnd_t m) { mpfr_add(out, lo_.get(), hi_.get(), m); }, MPFR_RNDN);
    mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDN);
    return r;
  }

  bool contains(const Real& x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool intersects(const Interval& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }
  bool certainly_positive() const { return lo_.sign() > 0; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return {detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_add(r, a.lo_.get(), b.lo_.get(), m); }, MPFR_RNDD),
            detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_add(r, a.hi_.get(), b.hi_.get(), m); }, MPFR_RNDU)};
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return {detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sub(r, a.lo_.get(), b.hi_.get(), m); }, MPFR_RNDD),
            detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_sub(r, a.hi_.get(), b.lo_.get(), m); }, MPFR_RNDU)};
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Real lo = Real::infinity(1), hi = Real::infinity(-1);
    for (const Real* x : {&a.lo_, &a.hi_}) {
      for (const Real* y : {&b.lo_, &b.hi_}) {
        Real pl = detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_mul(r, x->get(), y->get(), m); }, MPFR_RNDD);
        Real ph = detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_mul(r, x->get(), y->get(), m); }, MPFR_RNDU);
        if (pl < lo) lo = pl;
        if (ph > hi) hi = ph;
      }
    }
    return {lo, hi};
  }
  /// Division; the divisor must not contain zero.
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw Error(ErrorKind::PreconditionViolated, "interval division by zero");
    Real lo = Real::infinity(1), hi = Real::infinity(-1);
    for (const Real* x : {&a.lo_, &a.hi_}) {
      for (const Real* y : {&b.lo_, &b.hi_}) {
        Real ql = detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_div(r, x->get(), y->get(), m); }, MPFR_RNDD);
        Real qh = detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_div(r, x->get(), y->get(), m); }, MPFR_RNDU);
        if (ql < lo) lo = ql;
        if (qh > hi) hi = qh;
      }
    }
    return {lo, hi};
  }

  /// Enclosure of log(x) for an interval with lo > 0.
  friend Interval log(const Interval& x) {
    if (!x.certainly_positive()) throw Error(ErrorKind::PreconditionViolated, "log of non-positive interval");
    return {detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_log(r, x.lo_.get(), m); }, MPFR_RNDD),
            detail::rounded([&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_log(r, x.hi_.get(), m); }, MPFR_RNDU)};
  }

  std::string str(int digits = 20) const {
    return "[" + lo_.str(digits, MPFR_RNDD) + ", " + hi_.str(digits, MPFR_RNDU) + "]";
  }

 private:
  Real lo_, hi_;
};

inline Interval operator*(const Rat& q, const Interval& x) { return Interval::point(q) * x; }

/// Certified strict comparisons: true only when the enclosures prove it.
inline bool certainly_less(const Interval& a, const Interval& b) { return a.hi() < b.lo(); }
inline bool certainly_greater(const Interval& a, const Interval& b) { return a.lo() > b.hi(); }

}  // namespace orbitlab
