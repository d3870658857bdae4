#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace foliate {

/// Exact rational number in canonical form (gcd(num, den) = 1, den > 0).
///
/// Values whose numerator and denominator fit in 64 bits are stored inline
/// and computed with 128-bit intermediates; anything larger is promoted to a
/// GMP rational and demoted again once it fits. The two representations are
/// never observable through the public interface.
class Rational {
 public:
  Rational() noexcept = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    assign_integer(static_cast<__int128>(value));
  }

  /// Throws InputError if `den == 0`.
  Rational(std::int64_t num, std::int64_t den);

  explicit Rational(const mpq_class& value);

  Rational(const Rational& other);
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  /// Parses "p", "-p", "+p" or "p/q" with decimal integers of any length.
  /// Rejects decimal points, exponents, whitespace and zero denominators.
  static Rational parse(std::string_view text);

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;
  mpq_class to_mpq() const;
  double to_double() const;

  int sign() const noexcept;
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_integer() const noexcept;
  Rational abs() const;
  Rational reciprocal() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs);
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  /// Adds `a * b` in place; avoids a temporary on the hot path.
  void add_product(const Rational& a, const Rational& b);

 private:
  void assign_integer(__int128 value);
  void assign_fraction(__int128 num, __int128 den);  // den > 0, not necessarily reduced
  void assign_big(mpq_class value);
  bool is_small() const noexcept { return !big_; }

  // Inline representation: num_ in [INT64_MIN + 1, INT64_MAX], den_ >= 1.
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

using Scalar = Rational;
using Vector = std::vector<Rational>;

std::ostream& operator<<(std::ostream& os, const Rational& value);

/// Zero vector of length `dim`.
inline Vector zero_vector(std::size_t dim) { return Vector(dim); }

/// Unit vector e_index of length `dim`.
Vector unit_vector(std::size_t dim, std::size_t index);

bool is_zero(const Vector& v);
Vector& axpy(Vector& y, const Rational& a, const Vector& x);  // y += a x
Vector scaled(const Vector& x, const Rational& a);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);

}  // namespace foliate
