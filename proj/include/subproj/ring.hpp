#pragma once

#include "subproj/matrix.hpp"

#include <cstdint>
#include <numeric>
#include <string>

namespace subproj {

/// Coefficient ring: the integers or the integers modulo m.
///
/// Over Z/m every stored entry is the canonical representative in [0, m),
/// so equality of reduced data is bit-exact.
class Ring {
 public:
  enum class Kind { Integers, IntegersMod };

  /// Moduli are kept below 2^31 so that residue products fit in 64 bits.
  static constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

  static Ring integers() { return Ring(Kind::Integers, 0); }
  static Ring integers_mod(std::int64_t m) {
    if (m < 2) throw Error("modulus must be at least 2, got " + std::to_string(m));
    if (m > kMaxModulus) throw Error("modulus too large: " + std::to_string(m));
    return Ring(Kind::IntegersMod, m);
  }
  /// Parses "Z" or "Zmod:m".
  static Ring parse(const std::string& text) {
    if (text == "Z") return integers();
    const std::string prefix = "Zmod:";
    if (text.rfind(prefix, 0) == 0) {
      std::size_t used = 0;
      long long m = 0;
      try {
        m = std::stoll(text.substr(prefix.size()), &used);
      } catch (const std::exception&) {
        throw Error("bad ring descriptor: " + text);
      }
      if (used != text.size() - prefix.size()) throw Error("bad ring descriptor: " + text);
      return integers_mod(m);
    }
    throw Error("bad ring descriptor: " + text);
  }

  Kind kind() const { return kind_; }
  bool is_integers() const { return kind_ == Kind::Integers; }
  bool is_finite() const { return kind_ == Kind::IntegersMod; }
  /// 0 for Z.
  std::int64_t modulus() const { return modulus_; }

  /// Squarefree Z/m is a product of fields, so every module is projective.
  bool is_semisimple() const {
    if (!is_finite()) return false;
    for (std::int64_t d = 2; d * d <= modulus_; ++d)
      if (modulus_ % (d * d) == 0) return false;
    return true;
  }
  /// Z is hereditary; Z/m is hereditary exactly when it is semisimple.
  bool is_hereditary() const { return is_integers() || is_semisimple(); }

  Integer reduce(const Integer& v) const {
    if (!is_finite()) return v;
    Integer r = v % modulus_;
    if (r < 0) r += modulus_;
    return r;
  }
  Matrix reduce(const Matrix& a) const {
    if (!is_finite()) return a;
    Matrix r = a;
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = reduce(r(i, j));
    return r;
  }

  bool is_unit(const Integer& v) const {
    if (!is_finite()) return v == 1 || v == -1;
    Integer r = reduce(v);
    return boost::multiprecision::gcd(r, Integer(modulus_)) == 1;
  }

  std::string to_string() const {
    return is_integers() ? std::string("Z") : "Zmod:" + std::to_string(modulus_);
  }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }

 private:
  Ring(Kind k, std::int64_t m) : kind_(k), modulus_(m) {}
  Kind kind_;
  std::int64_t modulus_;
};

}  // namespace subproj
