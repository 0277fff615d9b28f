#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace abelfun {

// All character/dimension arithmetic is exact. i^g terms in the dimension
// formulas overflow 64-bit integers already around g = 20, so arbitrary
// precision is not optional.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// binomial(n, k) with the convention C(n, k) = 0 for k < 0 or k > n.
// The summation bounds in the closed-form dimension formulas rely on it.
inline Int binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact at every step
    }
    return r;
}

inline Int int_pow(Int base, long e) {
    if (e < 0) throw std::invalid_argument("int_pow: negative exponent");
    Int r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Int factorial(long n) {
    Int r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace abelfun
