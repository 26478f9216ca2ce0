#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gd3 {

// Arbitrary-precision signed integer, sized for Smith normal form on
// adversarial inputs. Sign-magnitude, 32-bit limbs, little-endian.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT: implicit by design, mirrors int literals

  static BigInt from_string(const std::string& s);

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return negative_; }
  int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

  BigInt operator-() const;
  BigInt abs() const;

  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;

  // Truncated division (C semantics): quotient rounds toward zero,
  // remainder has the dividend's sign.
  struct DivMod;
  DivMod divmod(const BigInt& divisor) const;
  BigInt operator/(const BigInt& o) const;
  BigInt operator%(const BigInt& o) const;

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  bool operator==(const BigInt& o) const;
  std::strong_ordering operator<=>(const BigInt& o) const;

  std::string to_string() const;

  // Value clamped into long long; throws DomainError when out of range.
  long long to_ll() const;
  bool fits_ll() const;

  static BigInt gcd(BigInt a, BigInt b);

 private:
  bool negative_ = false;
  std::vector<std::uint32_t> limbs_;  // empty means zero

  void trim();
  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
};

struct BigInt::DivMod {
  BigInt quot;
  BigInt rem;
};

inline BigInt BigInt::operator/(const BigInt& o) const { return divmod(o).quot; }
inline BigInt BigInt::operator%(const BigInt& o) const { return divmod(o).rem; }

}  // namespace gd3
