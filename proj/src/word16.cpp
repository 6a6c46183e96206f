#include "ladver/word16.hpp"

#include <stdexcept>

namespace ladver {

Word16 Word16::checked(long long v) {
  if (!fits_word16(v)) {
    throw std::out_of_range("Word16: value " + std::to_string(v) +
                            " outside [-32768, 32767]");
  }
  return Word16(static_cast<std::int16_t>(v));
}

Word16 Word16::wrap(long long v) {
  long long m = ((v + 32768) % 65536 + 65536) % 65536 - 32768;
  return Word16(static_cast<std::int16_t>(m));
}

Word16 wrap_add(Word16 a, Word16 b) {
  return Word16::wrap(static_cast<long long>(a.value()) + b.value());
}

Word16 wrap_sub(Word16 a, Word16 b) {
  return Word16::wrap(static_cast<long long>(a.value()) - b.value());
}

Word16 wrap_mul(Word16 a, Word16 b) {
  return Word16::wrap(static_cast<long long>(a.value()) * b.value());
}

std::string to_string(Word16 w) {
  return std::to_string(w.value());
}

}  // namespace ladver
