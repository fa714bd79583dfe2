#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>

#include "crosscap/errors.hpp"

namespace crosscap {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw InputError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Floating scalar carrying a running bound on the magnitude of the terms
/// that produced it. Zero tests compare |value| against eps * max(1, scale),
/// so a cancellation among large terms is recognised as zero.
struct Approx {
  double value = 0.0;
  double scale = 0.0;

  Approx() = default;
  Approx(double v) : value(v), scale(std::fabs(v)) {}  // NOLINT(google-explicit-constructor)
  Approx(double v, double s) : value(v), scale(s) {}

  friend Approx operator+(const Approx& a, const Approx& b) {
    return {a.value + b.value, a.scale + b.scale};
  }
  friend Approx operator-(const Approx& a, const Approx& b) {
    return {a.value - b.value, a.scale + b.scale};
  }
  friend Approx operator*(const Approx& a, const Approx& b) {
    return {a.value * b.value, a.scale * b.scale};
  }
  friend Approx operator/(const Approx& a, const Approx& b) {
    if (b.value == 0.0) throw PreconditionError("division by zero in float mode");
    return {a.value / b.value, a.scale / std::fabs(b.value)};
  }
  Approx operator-() const { return {-value, scale}; }
  Approx& operator+=(const Approx& o) { return *this = *this + o; }
  Approx& operator-=(const Approx& o) { return *this = *this - o; }
  Approx& operator*=(const Approx& o) { return *this = *this * o; }
  Approx& operator/=(const Approx& o) { return *this = *this / o; }
};

enum class Mode { Exact, Float };

struct Tolerance {
  double eps = 1e-9;
};

template <class T>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr Mode mode = Mode::Exact;
  static Rational from_int(long n) { return Rational(n); }
  static Rational from_rational(const Rational& r) { return r; }
  static bool is_zero(const Rational& x, const Tolerance& = {}) { return sgn(x) == 0; }
  static int sign(const Rational& x, const Tolerance& = {}) { return sgn(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
  static std::string format(const Rational& x) {
    Rational c = x;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
  }
};

template <>
struct ScalarOps<Approx> {
  static constexpr Mode mode = Mode::Float;
  static Approx from_int(long n) { return Approx(static_cast<double>(n)); }
  static Approx from_rational(const Rational& r) { return Approx(r.get_d()); }
  static bool is_zero(const Approx& x, const Tolerance& tol = {}) {
    return std::fabs(x.value) <= tol.eps * std::max(1.0, x.scale);
  }
  static int sign(const Approx& x, const Tolerance& tol = {}) {
    if (is_zero(x, tol)) return 0;
    return x.value > 0 ? 1 : -1;
  }
  static double to_double(const Approx& x) { return x.value; }
  static double magnitude(const Approx& x) { return std::fabs(x.value); }
  static std::string format(const Approx& x) {
    std::ostringstream os;
    os << std::setprecision(17) << x.value;
    return os.str();
  }
};

template <class T>
concept JetScalar = requires { ScalarOps<T>::mode; };

template <JetScalar T>
std::string to_string(const T& x) {
  return ScalarOps<T>::format(x);
}

}  // namespace crosscap
