#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>

#include "nclc/error.hpp"

namespace nclc {

using Rational = mpq_class;

inline int compare(const Rational& x, const Rational& y) { return cmp(x, y); }

/// Gaussian rational re + i*im.
class Complex {
 public:
  Complex() = default;
  Complex(long re) : re_(re) {}  // NOLINT: implicit from integers is intended
  Complex(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Complex i() { return Complex(0, 1); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_imaginary() const { return sgn(re_) == 0; }

  Complex conj() const { return Complex(re_, -im_); }

  Complex inverse() const {
    if (is_zero()) throw Error(ErrorKind::ZeroElement, "inverse of zero scalar");
    Rational norm = re_ * re_ + im_ * im_;
    return Complex(re_ / norm, -im_ / norm);
  }

  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    if (o.is_real()) {
      re_ *= o.re_;
      im_ *= o.re_;
      return *this;
    }
    if (is_real()) {
      im_ = re_ * o.im_;
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }

  /// *this += a * b without building the product.
  void add_product(const Complex& a, const Complex& b) {
    thread_local Rational t;
    mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.re_.get_mpq_t());
    re_ += t;
    if (!a.is_real() && !b.is_real()) {
      mpq_mul(t.get_mpq_t(), a.im_.get_mpq_t(), b.im_.get_mpq_t());
      re_ -= t;
    }
    if (!b.is_imaginary() && !a.is_real()) {
      mpq_mul(t.get_mpq_t(), a.im_.get_mpq_t(), b.re_.get_mpq_t());
      im_ += t;
    }
    if (!a.is_imaginary() && !b.is_real()) {
      mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.im_.get_mpq_t());
      im_ += t;
    }
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re_, -a.im_); }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // Total order (re first, then im); only used to keep containers deterministic.
  friend std::strong_ordering operator<=>(const Complex& a, const Complex& b) {
    int c = cmp(a.re_, b.re_);
    if (c == 0) c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Complex& c) {
  return os << "(" << c.re().get_str() << "," << c.im().get_str() << ")";
}

}  // namespace nclc
