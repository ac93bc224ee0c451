#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffdot {

using u128 = unsigned __int128;
using i128 = __int128;

// Odd primality test by trial division; q is always desk-scale here.
bool is_odd_prime(int64_t q);

// q^d with an overflow guard (throws std::overflow_error past 2^62).
int64_t checked_pow(int64_t q, int d);

std::string to_string_u128(u128 v);

// "0x" + 16 hex digits; the form seeds are echoed in.
std::string hex_seed(uint64_t s);

}  // namespace ffdot
