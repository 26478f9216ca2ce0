#include "gd3/bigint.hpp"

#include <algorithm>

#include "gd3/diagram.hpp"

namespace gd3 {

BigInt::BigInt(long long v) {
  negative_ = v < 0;
  unsigned long long m = negative_ ? (~static_cast<unsigned long long>(v) + 1ull)
                                   : static_cast<unsigned long long>(v);
  while (m != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(m & 0xffffffffull));
    m >>= 32;
  }
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) negative_ = false;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    std::uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    out.push_back(static_cast<std::uint32_t>(s & 0xffffffffull));
    carry = s >> 32;
  }
  if (carry) out.push_back(static_cast<std::uint32_t>(carry));
  return out;
}

// requires |a| >= |b|
std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (s < 0) {
      s += (1ll << 32);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(static_cast<std::uint32_t>(s));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.is_zero()) r.negative_ = !r.negative_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.negative_ = false;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  BigInt r;
  if (negative_ == o.negative_) {
    r.limbs_ = add_mag(limbs_, o.limbs_);
    r.negative_ = negative_;
  } else {
    int c = cmp_mag(limbs_, o.limbs_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.limbs_ = sub_mag(limbs_, o.limbs_);
      r.negative_ = negative_;
    } else {
      r.limbs_ = sub_mag(o.limbs_, limbs_);
      r.negative_ = o.negative_;
    }
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  if (is_zero() || o.is_zero()) return BigInt();
  BigInt r;
  r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
      std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] +
                          r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffull);
      carry = cur >> 32;
    }
    std::size_t k = i + o.limbs_.size();
    while (carry) {
      std::uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffull);
      carry = cur >> 32;
      ++k;
    }
  }
  r.negative_ = negative_ != o.negative_;
  r.trim();
  return r;
}

BigInt::DivMod BigInt::divmod(const BigInt& divisor) const {
  if (divisor.is_zero()) throw DomainError("division by zero");
  DivMod dm;
  // binary long division on magnitudes
  const std::size_t bits = limbs_.size() * 32;
  BigInt rem, quot;
  quot.limbs_.assign(limbs_.size(), 0);
  for (std::size_t i = bits; i-- > 0;) {
    // rem = rem*2 + bit_i
    std::uint32_t carry = 0;
    for (std::size_t k = 0; k < rem.limbs_.size(); ++k) {
      std::uint32_t nv = (rem.limbs_[k] << 1) | carry;
      carry = rem.limbs_[k] >> 31;
      rem.limbs_[k] = nv;
    }
    if (carry) rem.limbs_.push_back(carry);
    if ((limbs_[i / 32] >> (i % 32)) & 1u) {
      if (rem.limbs_.empty())
        rem.limbs_.push_back(1);
      else
        rem.limbs_ = add_mag(rem.limbs_, {1});
    }
    if (cmp_mag(rem.limbs_, divisor.limbs_) >= 0) {
      rem.limbs_ = sub_mag(rem.limbs_, divisor.limbs_);
      quot.limbs_[i / 32] |= (1u << (i % 32));
    }
  }
  quot.negative_ = negative_ != divisor.negative_;
  rem.negative_ = negative_;
  quot.trim();
  rem.trim();
  dm.quot = std::move(quot);
  dm.rem = std::move(rem);
  return dm;
}

bool BigInt::operator==(const BigInt& o) const {
  return negative_ == o.negative_ && limbs_ == o.limbs_;
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
  if (negative_ != o.negative_) return negative_ ? std::strong_ordering::less
                                                 : std::strong_ordering::greater;
  int c = cmp_mag(limbs_, o.limbs_);
  if (negative_) c = -c;
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  BigInt x = abs();
  std::string digits;
  BigInt ten(10);
  while (!x.is_zero()) {
    DivMod dm = x.divmod(ten);
    long long dig = dm.rem.limbs_.empty() ? 0 : dm.rem.limbs_[0];
    digits.push_back(static_cast<char>('0' + dig));
    x = dm.quot;
  }
  if (negative_) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

BigInt BigInt::from_string(const std::string& s) {
  BigInt r;
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw DomainError("not an integer: '" + s + "'");
  BigInt ten(10);
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw DomainError("not an integer: '" + s + "'");
    r = r * ten + BigInt(s[i] - '0');
  }
  if (neg) r = -r;
  return r;
}

bool BigInt::fits_ll() const {
  if (limbs_.size() < 2) return true;
  if (limbs_.size() > 2) return false;
  std::uint64_t m = (static_cast<std::uint64_t>(limbs_[1]) << 32) | limbs_[0];
  return m <= 0x7fffffffffffffffull;
}

long long BigInt::to_ll() const {
  if (!fits_ll()) throw DomainError("integer too large for long long");
  std::uint64_t m = 0;
  if (limbs_.size() > 0) m |= limbs_[0];
  if (limbs_.size() > 1) m |= static_cast<std::uint64_t>(limbs_[1]) << 32;
  return negative_ ? -static_cast<long long>(m) : static_cast<long long>(m);
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace gd3
