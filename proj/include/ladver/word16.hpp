#pragma once

#include <cstdint>
#include <string>

namespace ladver {

constexpr long long kWord16Min = -32768;
constexpr long long kWord16Max = 32767;

constexpr bool fits_word16(long long v) {
  return v >= kWord16Min && v <= kWord16Max;
}

/// Signed 16-bit PLC data word. Construction never truncates: out-of-range
/// inputs are rejected except through the explicit wrap() helper.
class Word16 {
 public:
  constexpr Word16() = default;

  // Throws std::out_of_range if v is outside [-32768, 32767].
  static Word16 checked(long long v);

  // Two's-complement reduction of v mod 2^16 into [-32768, 32767].
  static Word16 wrap(long long v);

  constexpr int value() const { return value_; }

  friend constexpr bool operator==(Word16 a, Word16 b) = default;
  friend constexpr auto operator<=>(Word16 a, Word16 b) = default;

 private:
  constexpr explicit Word16(std::int16_t v) : value_(v) {}
  std::int16_t value_ = 0;
};

Word16 wrap_add(Word16 a, Word16 b);
Word16 wrap_sub(Word16 a, Word16 b);
Word16 wrap_mul(Word16 a, Word16 b);

std::string to_string(Word16 w);

}  // namespace ladver
