#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dyncoh {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Int& x) { return x.str(); }

inline std::string to_string(const Rat& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << '/' << denominator(x);
  return os.str();
}

// Element of Q(sqrt 5), written a + b*sqrt(5). Exact arithmetic for the
// reflection representations of H3 and H4 (2cos(pi/5) = (1+sqrt5)/2).
struct QuadQ5 {
  Rat a;
  Rat b;

  QuadQ5() = default;
  QuadQ5(Rat a_, Rat b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
  QuadQ5(int v) : a(v), b(0) {}

  bool is_zero() const { return a == 0 && b == 0; }

  friend QuadQ5 operator+(const QuadQ5& x, const QuadQ5& y) { return {x.a + y.a, x.b + y.b}; }
  friend QuadQ5 operator-(const QuadQ5& x, const QuadQ5& y) { return {x.a - y.a, x.b - y.b}; }
  friend QuadQ5 operator-(const QuadQ5& x) { return {-x.a, -x.b}; }
  friend QuadQ5 operator*(const QuadQ5& x, const QuadQ5& y) {
    return {x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  QuadQ5 inverse() const {
    Rat n = a * a - 5 * b * b;
    if (n == 0) throw std::domain_error("QuadQ5: not invertible");
    return {a / n, -b / n};
  }
  friend bool operator==(const QuadQ5& x, const QuadQ5& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const QuadQ5& x, const QuadQ5& y) { return !(x == y); }

  std::string str() const {
    std::ostringstream os;
    os << to_string(a);
    if (b != 0) os << (b > 0 ? "+" : "") << to_string(b) << "r5";
    return os.str();
  }
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace dyncoh
