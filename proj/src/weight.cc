#include "abskernel/weight.h"

#include <cctype>
#include <limits>

#include "abskernel/errors.h"

namespace abskernel {

Weight parse_weight(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw InputError("expected an integer, got '" + std::string(text) + "'");
  }
  Weight value = 0;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw InputError("expected an integer, got '" + std::string(text) + "'");
    }
    value *= 10;
    value += ch - '0';
  }
  return negative ? Weight(-value) : value;
}

std::string to_string(const Weight& w) { return w.str(); }

std::optional<std::int64_t> to_int64(const Weight& w) {
  static const Weight lo = std::numeric_limits<std::int64_t>::min();
  static const Weight hi = std::numeric_limits<std::int64_t>::max();
  if (w < lo || w > hi) return std::nullopt;
  return w.convert_to<std::int64_t>();
}

Weight ipow(const Weight& base, unsigned exponent) {
  // 0^0 = 1 here, matching the polynomial model.
  return boost::multiprecision::pow(base, exponent);
}

Weight binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Weight result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::size_t bit_length(const Weight& w) {
  if (w == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(w)) + 1;
}

}  // namespace abskernel
