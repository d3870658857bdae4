#include "foliate/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

#include "foliate/error.hpp"

namespace foliate {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kSmallMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kSmallMin = -kSmallMax;  // INT64_MIN is excluded so negation is total

bool fits_small(i128 v) { return v >= kSmallMin && v <= kSmallMax; }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    if (a <= std::numeric_limits<std::uint64_t>::max() &&
        b <= std::numeric_limits<std::uint64_t>::max()) {
      auto x = static_cast<std::uint64_t>(a);
      auto y = static_cast<std::uint64_t>(b);
      while (y != 0) {
        auto t = x % y;
        x = y;
        y = t;
      }
      return x;
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t uabs(std::int64_t v) {
  return v < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
}

mpz_class to_mpz(i128 v) {
  const bool negative = v < 0;
  u128 mag = negative ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
  std::uint64_t limbs[2] = {static_cast<std::uint64_t>(mag), static_cast<std::uint64_t>(mag >> 64)};
  mpz_class out;
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
  if (negative) out = -out;
  return out;
}

mpz_class to_mpz(std::int64_t v) {
  mpz_class out;
  mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
  return out;
}

bool mpz_small(const mpz_class& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) && z != std::numeric_limits<long>::min();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("rational with zero denominator");
  i128 n = num;
  i128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  assign_fraction(n, d);
}

Rational::Rational(const mpq_class& value) { assign_big(value); }

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_) {
    if (big_) {
      *big_ = *other.big_;
    } else {
      big_ = std::make_unique<mpq_class>(*other.big_);
    }
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::assign_integer(i128 value) {
  if (fits_small(value)) {
    big_.reset();
    num_ = static_cast<std::int64_t>(value);
    den_ = 1;
    return;
  }
  assign_big(mpq_class(to_mpz(value)));
}

void Rational::assign_fraction(i128 num, i128 den) {
  if (num == 0) {
    big_.reset();
    num_ = 0;
    den_ = 1;
    return;
  }
  u128 mag = num < 0 ? u128(0) - static_cast<u128>(num) : static_cast<u128>(num);
  u128 g = gcd128(mag, static_cast<u128>(den));
  if (g != 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (fits_small(num) && den <= kSmallMax) {
    big_.reset();
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    return;
  }
  mpq_class q(to_mpz(num), to_mpz(den));
  assign_big(std::move(q));
}

void Rational::assign_big(mpq_class value) {
  value.canonicalize();
  if (mpz_small(value.get_num()) && mpz_fits_slong_p(value.get_den_mpz_t())) {
    num_ = value.get_num().get_si();
    den_ = value.get_den().get_si();
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  if (big_) {
    *big_ = std::move(value);
  } else {
    big_ = std::make_unique<mpq_class>(std::move(value));
  }
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw InputError("invalid rational literal '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  auto valid_integer = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s) {
      if (ch < '0' || ch > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num_text = text.substr(0, slash);
  std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num_text, true) || !valid_integer(den_text, false)) return fail();
  if (num_text.front() == '+') num_text.remove_prefix(1);

  mpz_class num(std::string(num_text), 10);
  mpz_class den(std::string(den_text), 10);
  if (den == 0) throw InputError("rational with zero denominator '" + std::string(text) + "'");
  return Rational(mpq_class(num, den));
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(to_mpz(num_), to_mpz(den_));
  return q;
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const noexcept {
  if (big_) return big_->get_den() == 1;
  return den_ == 1;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::reciprocal() const {
  if (is_zero()) throw InputError("reciprocal of zero");
  Rational out;
  if (big_) {
    out.assign_big(1 / *big_);
    return out;
  }
  i128 n = den_;
  i128 d = num_;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  out.assign_fraction(n, d);
  return out;
}

Rational Rational::operator-() const {
  Rational out;
  if (big_) {
    out.assign_big(-*big_);
  } else {
    out.num_ = -num_;
    out.den_ = den_;
  }
  return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (is_small() && rhs.is_small()) {
    if (den_ == 1 && rhs.den_ == 1) {
      assign_integer(i128(num_) + rhs.num_);
      return *this;
    }
    if (den_ == rhs.den_) {
      assign_fraction(i128(num_) + rhs.num_, den_);
      return *this;
    }
    assign_fraction(i128(num_) * rhs.den_ + i128(rhs.num_) * den_, i128(den_) * rhs.den_);
    return *this;
  }
  assign_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (is_small() && rhs.is_small()) {
    if (den_ == 1 && rhs.den_ == 1) {
      assign_integer(i128(num_) - rhs.num_);
      return *this;
    }
    if (den_ == rhs.den_) {
      assign_fraction(i128(num_) - rhs.num_, den_);
      return *this;
    }
    assign_fraction(i128(num_) * rhs.den_ - i128(rhs.num_) * den_, i128(den_) * rhs.den_);
    return *this;
  }
  assign_big(to_mpq() - rhs.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  if (is_small() && rhs.is_small()) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && rhs.den_ == 1) {
      assign_integer(i128(num_) * rhs.num_);
      return *this;
    }
    // Cross-reduce so the product is already canonical.
    const std::uint64_t g1 = gcd64(uabs(num_), static_cast<std::uint64_t>(rhs.den_));
    const std::uint64_t g2 = gcd64(uabs(rhs.num_), static_cast<std::uint64_t>(den_));
    const i128 n = i128(num_ / static_cast<std::int64_t>(g1)) * (rhs.num_ / static_cast<std::int64_t>(g2));
    const i128 d = i128(den_ / static_cast<std::int64_t>(g2)) * (rhs.den_ / static_cast<std::int64_t>(g1));
    if (fits_small(n) && d <= kSmallMax) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      assign_big(mpq_class(to_mpz(n), to_mpz(d)));
    }
    return *this;
  }
  assign_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw InputError("division by zero");
  return *this *= rhs.reciprocal();
}

void Rational::add_product(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) return;
  if (is_small() && a.is_small() && b.is_small() && a.den_ == 1 && b.den_ == 1 && den_ == 1) {
    const i128 p = i128(a.num_) * b.num_;
    assign_integer(p + num_);
    return;
  }
  *this += a * b;
}

bool operator==(const Rational& lhs, const Rational& rhs) {
  if (lhs.is_small() && rhs.is_small()) return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  if (lhs.is_small() != rhs.is_small()) return false;  // canonical: big values never fit inline
  return *lhs.big_ == *rhs.big_;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  if (lhs.is_small() && rhs.is_small()) {
    const i128 l = i128(lhs.num_) * rhs.den_;
    const i128 r = i128(rhs.num_) * lhs.den_;
    return l <=> r;
  }
  const int c = cmp(lhs.to_mpq(), rhs.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

Vector unit_vector(std::size_t dim, std::size_t index) {
  Vector v(dim);
  v.at(index) = 1;
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Vector& axpy(Vector& y, const Rational& a, const Vector& x) {
  if (y.size() != x.size()) throw InputError("vector length mismatch");
  if (a.is_zero()) return y;
  for (std::size_t i = 0; i < y.size(); ++i) y[i].add_product(a, x[i]);
  return y;
}

Vector scaled(const Vector& x, const Rational& a) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * a;
  return out;
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

}  // namespace foliate
