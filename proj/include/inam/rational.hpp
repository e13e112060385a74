#ifndef INAM_RATIONAL_HPP_
#define INAM_RATIONAL_HPP_

#include <gmpxx.h>

#include <cmath>
#include <sstream>
#include <string>
#include <type_traits>

#include "json.hpp"

namespace inam {

using Rational = mpq_class;

// Arithmetic mode of a scalar type: exact rationals compare with zero
// tolerance, doubles with 1e-12 on probability totals.
template <typename Scalar>
struct ArithTraits;

template <>
struct ArithTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* tag = "exact";
  static Rational tolerance() { return Rational(0); }
  static Rational from_ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static std::string to_string(const Rational& x) { return x.get_str(); }
  static nlohmann::json to_json(const Rational& x) { return x.get_str(); }
  static Rational from_json(const nlohmann::json& j) {
    if (j.is_string()) {
      Rational q(j.get<std::string>());
      q.canonicalize();
      return q;
    }
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) return Rational(j.get<double>());
    throw std::invalid_argument("mass must be a rational string or number");
  }
};

template <>
struct ArithTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* tag = "float";
  static double tolerance() { return 1e-12; }
  static double from_ratio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static std::string to_string(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  }
  static nlohmann::json to_json(double x) { return x; }
  static double from_json(const nlohmann::json& j) {
    if (j.is_string()) {
      Rational q(j.get<std::string>());
      q.canonicalize();
      return q.get_d();
    }
    return j.get<double>();
  }
};

template <typename Scalar>
inline bool approx_leq(const std::type_identity_t<Scalar>& a, const std::type_identity_t<Scalar>& b) {
  return a <= b + ArithTraits<Scalar>::tolerance();
}

}  // namespace inam

#endif  // INAM_RATIONAL_HPP_
