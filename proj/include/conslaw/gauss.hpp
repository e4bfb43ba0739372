/** @file gauss.hpp
 *  Exact Gaussian-rational scalar: re + im*sqrt(-1) with arbitrary-precision
 *  rational components. All symbolic arithmetic in the engine is exact.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace conslaw {

using Rational = boost::multiprecision::cpp_rational;

struct GaussScalar {
  Rational re{0};
  Rational im{0};

  GaussScalar() = default;
  GaussScalar(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
  GaussScalar(Rational r) : re(std::move(r)) {}  // NOLINT
  GaussScalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  static GaussScalar sqrt_minus_one() { return GaussScalar{Rational(0), Rational(1)}; }
  static GaussScalar ratio(long num, long den) { return GaussScalar{Rational(num, den)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool is_one() const { return re == 1 && im == 0; }

  GaussScalar conj() const { return {re, -im}; }

  GaussScalar operator-() const { return {-re, -im}; }
  GaussScalar operator+(const GaussScalar& o) const { return {re + o.re, im + o.im}; }
  GaussScalar operator-(const GaussScalar& o) const { return {re - o.re, im - o.im}; }
  GaussScalar operator*(const GaussScalar& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussScalar operator/(const GaussScalar& o) const {
    Rational n = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  GaussScalar& operator+=(const GaussScalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussScalar& operator-=(const GaussScalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussScalar& operator*=(const GaussScalar& o) { return *this = *this * o; }

  bool operator==(const GaussScalar& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussScalar& o) const { return !(*this == o); }
  // Deterministic total order (for canonical tie-breaking only).
  bool operator<(const GaussScalar& o) const {
    if (re != o.re) return re < o.re;
    return im < o.im;
  }

  double to_double_re() const { return static_cast<double>(re); }
  double to_double_im() const { return static_cast<double>(im); }
};

/// "p" or "p/q" with positive denominator in lowest terms.
std::string rational_to_string(const Rational& r);

/// Parses "p" or "p/q"; throws std::invalid_argument on bad input.
Rational rational_from_string(const std::string& s);

}  // namespace conslaw
