#include "abelfun/charcomb.hpp"

#include <stdexcept>

namespace abelfun::charcomb {

Int eq12_value(long g, long n) {
    if (n < 2) throw std::invalid_argument("eq12_value: n must be >= 2");
    Int a = ((n - 1) & 1 ? -1 : 1) * binomial(g, n - 2);
    for (long i = 2; i <= n; ++i)
        a += ((n - i) & 1 ? -1 : 1) * binomial(g + 1, n - i) * int_pow(i, g);
    for (long i = 0; i <= n - 3; ++i) {
        Int term = binomial(g, n - 1) * binomial(g, n - 2 - i)
                 - binomial(g, n) * binomial(g, n - 3 - i);
        a += (i & 1) ? -term : term;
    }
    return a;
}

Int a_dim(long g, long n) {
    if (g < 2) throw std::invalid_argument("a_dim: requires g >= 2");
    if (n < 0 || n == 1 || n >= g + 2) return 0;
    if (n == 0) return 1;
    return eq12_value(g, n);
}

DimTable dim_table(long g) {
    DimTable t;
    t.g = g;
    t.values.reserve(g + 2);
    for (long n = 0; n <= g + 1; ++n) t.values.push_back(a_dim(g, n));
    if (t.values.front() != 1 || t.values[1] != 0 || t.values.back() != 1)
        throw std::logic_error("dim_table: boundary values violated");
    return t;
}

LaurentPoly ch_h_top_table(long g) {
    LaurentPoly p;
    for (long n = 0; n <= g + 1; ++n) p.add_term(n - g, a_dim(g, n));
    return p;
}

LaurentPoly ch_h_top_closed(long g) {
    if (g < 2) throw std::invalid_argument("ch_h_top_closed: requires g >= 2");
    const long N = g + 3;  // two orders of headroom past the expected degree g+1

    // (t d/dt)^g (1-t)^{-1} as the truncated series sum_{n>=1} n^g t^n.
    LaurentPoly euler_series;
    for (long n = 1; n <= N; ++n) euler_series.add_term(n, int_pow(n, g));
    euler_series.add_term(0, 1);  // the "1 +" of the closed form

    LaurentPoly p = LaurentPoly::one();
    p -= LaurentPoly::one_minus_t_pow(g);
    p += LaurentPoly::mul_truncated(LaurentPoly::one_minus_t_pow(g + 1), euler_series, N);
    for (long m = 0; m + 1 <= g - 1; ++m)
        for (long i = 1; m + i <= g - 1; ++i)
            p.add_term(g + 1 - m, ((i & 1) ? 1 : -1) * binomial(g, m + i) * binomial(g, m));
    for (long m = 0; m + 1 <= g - 2; ++m)
        for (long i = 1; m + i <= g - 2; ++i)
            p.add_term(g - m, ((i & 1) ? -1 : 1) * binomial(g, m + i + 2) * binomial(g, m));

    // The truncated pieces must cancel above degree g+1, otherwise the
    // series did not terminate as a Laurent polynomial.
    for (long e = g + 2; e <= N; ++e)
        if (p.coeff(e) != 0)
            throw std::logic_error("ch_h_top_closed: series failed to terminate");
    return p.shifted(-g);
}

Int top_betti_affine(long g) {
    Int catalanish = factorial(2 * g) / (factorial(g) * factorial(g + 1));
    return binomial(2 * g, g) - binomial(2 * g, g - 2) + factorial(g) - catalanish;
}

std::pair<bool, bool> prop3_identities(long g) {
    bool first = eq12_value(g, g + 1) == 1;
    Int sum = 0;
    for (long n = 0; n <= g + 1; ++n) sum += a_dim(g, n);
    bool second = sum == top_betti_affine(g);
    return {first, second};
}

LaurentPoly ch_w_closed(long g, long k) {
    if (k < 0 || k > g) throw std::invalid_argument("ch_w_closed: requires 0 <= k <= g");
    LaurentPoly p;
    p.add_term(-k, binomial(g, k));
    for (long m = 0; m <= k - 1; ++m) p.add_term(1 - m, binomial(g, k - m) * binomial(g, m));
    for (long m = 0; m <= k - 2; ++m) p.add_term(-m, -binomial(g, k - 2 - m) * binomial(g, m));
    return p;
}

Int dim_gr_a(long g, long n) {
    if (n < 0) return 0;
    if (n == 0) return 1;
    if (n == 1) return 0;
    return int_pow(n, g) - int_pow(n - 1, g);
}

LaurentPoly ch_gr_a_top(long g, long N) {
    if (N < 0) throw std::invalid_argument("ch_gr_a_top: requires N >= 0");
    LaurentPoly p;
    for (long n = 0; n <= N; ++n) p.add_term(n, dim_gr_a(g, n));
    return p;
}

bool euler_identity_check(long g, long N) {
    if (N < g + 3) throw std::invalid_argument("euler_identity_check: requires N >= g+3");
    // Everything is cleared by t^g so both sides are ordinary power series.
    LaurentPoly lhs = ch_gr_a_top(g, N);

    LaurentPoly alt;  // sum_i (-1)^i t^g ch H^{g-i}
    for (long i = 0; i <= g; ++i) {
        long k = g - i;
        LaurentPoly chk = (k == g) ? ch_h_top_table(g) : ch_w_closed(g, k);
        chk = chk.shifted(g);
        if (i & 1)
            alt -= chk;
        else
            alt += chk;
    }
    LaurentPoly rhs = LaurentPoly::mul_truncated(LaurentPoly::geometric_pow(g, N), alt, N);
    return lhs == rhs.truncated(N);
}

}  // namespace abelfun::charcomb
