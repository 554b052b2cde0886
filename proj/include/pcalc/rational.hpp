#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace pcalc {

// Exact rational scalar. All bookkeeping in this library is rational-closed,
// so no floating point appears anywhere.
using Rat = mpq_class;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input (rationals, matrices, scenario files).
struct parse_error : error {
  using error::error;
};

// A structural invariant does not hold (bad weight range, incomplete fiber
// listing, Riemann-Hurwitz failure surfaced as an exception, ...).
struct validation_error : error {
  using error::error;
};

// An operation was called outside its contract (unsaturated fiber, wrong
// field kind, non-Galois profile, ...).
struct precondition_error : error {
  using error::error;
};

// A redundant cross-check failed; indicates a bug, not bad input.
struct internal_error : error {
  using error::error;
};

Rat rat(long num, long den = 1);

// floor(q) as a machine integer; values in this library stay tiny.
long floor_rat(const Rat& q);

// q - floor(q), always in [0,1).
Rat frac_rat(const Rat& q);

bool is_integer(const Rat& q);

// Canonical "p/q" (lowest terms, positive denominator, "p" when q == 1).
std::string to_string(const Rat& q);

Rat parse_rat(const std::string& text);

// Element of Q(i). Eigenvalue data of Higgs fields and connections needs the
// imaginary part; everything stays exact.
struct GaussRat {
  Rat re;
  Rat im;

  GaussRat() : re(0), im(0) {}
  GaussRat(Rat r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  GaussRat(long r, long i = 0) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }

  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
  // Lexicographic; used only to canonicalize multisets.
  friend bool operator<(const GaussRat& a, const GaussRat& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
};

GaussRat operator/(const GaussRat& a, const GaussRat& b);

// Canonical "p/q", "p/q+r/s i" or "p/q-r/s i".
std::string to_string(const GaussRat& z);

// Accepts "p/q", "p", "a+b i", "a-b i", "b i", with optional spaces.
GaussRat parse_gauss(const std::string& text);

}  // namespace pcalc
