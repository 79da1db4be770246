#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace exo {

enum class MathConstant { Pi, E };

/// First `count` digits of the constant's positional expansion in `base`,
/// most significant integer digit first (pi in base 10: 3,1,4,1,5,...).
/// Base 1 is the degenerate single-symbol alphabet and yields all zeros.
std::vector<std::uint8_t> constant_digits(MathConstant c, unsigned base, std::size_t count);

/// Digit `t` of the expansion, served from a process-wide cache that grows on
/// demand. Thread-safe.
std::uint8_t constant_digit(MathConstant c, unsigned base, std::size_t t);

}  // namespace exo
