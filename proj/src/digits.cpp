#include "exo/digits.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "exo/error.hpp"

namespace exo {

namespace {

using boost::multiprecision::cpp_int;

// scale * arctan(1/x), truncating each term.
cpp_int arctan_inverse(unsigned x, const cpp_int& scale) {
    cpp_int sum = 0;
    cpp_int power = scale / x;
    const unsigned x2 = x * x;
    for (unsigned k = 0; power != 0; ++k) {
        cpp_int term = power / (2 * k + 1);
        if (k % 2 == 0)
            sum += term;
        else
            sum -= term;
        power /= x2;
    }
    return sum;
}

cpp_int scaled_constant(MathConstant c, const cpp_int& scale) {
    switch (c) {
        case MathConstant::Pi:
            // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
            return 16 * arctan_inverse(5, scale) - 4 * arctan_inverse(239, scale);
        case MathConstant::E: {
            cpp_int sum = 0;
            cpp_int term = scale;
            for (unsigned k = 1; term != 0; ++k) {
                sum += term;
                term /= k;
            }
            return sum;
        }
    }
    return 0;
}

std::size_t integer_digit_count(unsigned integer_part, unsigned base) {
    std::size_t n = 0;
    for (unsigned v = integer_part; v > 0; v /= base) ++n;
    return std::max<std::size_t>(n, 1);
}

}  // namespace

std::vector<std::uint8_t> constant_digits(MathConstant c, unsigned base, std::size_t count) {
    if (base == 0 || base > 256) throw Error(ErrorCode::InvalidArgument, "digit base must be in [1, 256]");
    if (base == 1) return std::vector<std::uint8_t>(count, 0);
    if (count == 0) return {};

    const unsigned integer_part = c == MathConstant::Pi ? 3 : 2;
    const std::size_t int_digits = integer_digit_count(integer_part, base);
    const std::size_t frac_digits = count > int_digits ? count - int_digits : 0;

    // 2^96 guard absorbs the per-term truncation error of the series.
    const cpp_int guard = cpp_int(1) << 96;
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac_digits; ++i) scale *= base;

    cpp_int value = scaled_constant(c, scale * guard) / guard;

    std::vector<std::uint8_t> digits;
    digits.reserve(int_digits + frac_digits);
    while (value > 0) {
        digits.push_back(static_cast<std::uint8_t>(static_cast<unsigned>(value % base)));
        value /= base;
    }
    std::reverse(digits.begin(), digits.end());
    digits.resize(count);
    return digits;
}

std::uint8_t constant_digit(MathConstant c, unsigned base, std::size_t t) {
    static std::mutex mutex;
    static std::map<std::pair<MathConstant, unsigned>, std::vector<std::uint8_t>> cache;

    std::lock_guard lock(mutex);
    auto& digits = cache[{c, base}];
    if (t >= digits.size()) digits = constant_digits(c, base, std::max<std::size_t>({256, t + 1, digits.size() * 2}));
    return digits[t];
}

}  // namespace exo
