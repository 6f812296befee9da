#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace abskernel {

// Exact, unbounded signed integer used for every weight and target value.
using Weight = boost::multiprecision::cpp_int;

Weight parse_weight(std::string_view text);
std::string to_string(const Weight& w);

// Narrowing conversion; nullopt if the value does not fit.
std::optional<std::int64_t> to_int64(const Weight& w);

Weight ipow(const Weight& base, unsigned exponent);
Weight binomial(unsigned n, unsigned k);

// Number of significant bits of |w| (0 for w == 0).
std::size_t bit_length(const Weight& w);

}  // namespace abskernel
