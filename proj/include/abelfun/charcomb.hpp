#pragma once

#include "abelfun/laurent.hpp"

#include <utility>
#include <vector>

// Closed-form dimension and character formulas for the top cohomology of the
// graded de Rham complex of an abelian variety minus its theta divisor, and
// the identities tying them to the affine-ring character. Everything here is
// exact integer arithmetic; repeated runs are bit-identical.
namespace abelfun::charcomb {

// Literal term-by-term evaluation of the closed dimension formula
//
//   a = (-1)^{n-1} C(g,n-2) + sum_{i=2}^n (-1)^{n-i} C(g+1,n-i) i^g
//       + sum_{i=0}^{n-3} (-1)^i [ C(g,n-1)C(g,n-2-i) - C(g,n)C(g,n-3-i) ],
//
// meaningful for 2 <= n <= g+1 but evaluable for any n >= 2.
Int eq12_value(long g, long n);

// dim of the degree-(n-g) slice of the top cohomology group:
// 1 at n = 0, 0 at n = 1 and outside [0, g+1], eq12_value in between.
// The boundary cases are dispatched before the formula, which is only
// asserted on 2 <= n <= g+1. Requires g >= 2.
Int a_dim(long g, long n);

struct DimTable {
    long g = 0;
    std::vector<Int> values;  // a_0 .. a_{g+1}
};

DimTable dim_table(long g);

// ch H = sum_{n=0}^{g+1} a_n t^{n-g}, built from the dimension table.
LaurentPoly ch_h_top_table(long g);

// The same character from the generating-function closed form
//
//   t^g ch H = 1 - (1-t)^g + (1-t)^{g+1} (1 + (t d/dt)^g (1-t)^{-1})
//              - sum_{I1} (-1)^i C(g,m+i)C(g,m) t^{g+1-m}
//              + sum_{I2} (-1)^i C(g,m+i+2)C(g,m) t^{g-m},
//
// with I1 = {m+i <= g-1, m >= 0, i >= 1}, I2 = {m+i <= g-2, m >= 0, i >= 1}.
// (t d/dt)^g (1-t)^{-1} is the series sum_{n>=1} n^g t^n, truncated at order
// g+3; the product must terminate at degree g+1, and any surviving higher
// coefficient signals an implementation bug (throws std::logic_error).
LaurentPoly ch_h_top_closed(long g);

// dim H^g(J - Theta, C) = C(2g,g) - C(2g,g-2) + g! - (2g)!/(g!(g+1)!).
Int top_betti_affine(long g);

// first: the closed formula evaluates to 1 at n = g+1;
// second: sum_n a_dim(g,n) equals top_betti_affine(g).
std::pair<bool, bool> prop3_identities(long g);

// ch W^k = C(g,k) t^{-k} + sum_{m=0}^{k-1} C(g,k-m)C(g,m) t^{1-m}
//                        - sum_{m=0}^{k-2} C(g,k-2-m)C(g,m) t^{-m}.
// Requires 0 <= k <= g; returns 1 for k = 0.
LaurentPoly ch_w_closed(long g, long k);

// Truncated series with coefficient dim gr_n A at t^n: 1, 0, then
// n^g - (n-1)^g for 2 <= n <= N.
LaurentPoly ch_gr_a_top(long g, long N);

// dim gr_n A as a single value (0 for n < 0).
Int dim_gr_a(long g, long n);

// The alternating character identity
//   ch(gr A (x) wedge^g T*) = sum_{i=0}^g (-1)^i ch(D (x) H^{g-i})
// checked as an exact truncated series to order t^N (after clearing t^g),
// with ch D = (1-t)^{-g}, H^i = W^i for i < g and H^g from the table form.
// Requires N >= g+3.
bool euler_identity_check(long g, long N);

}  // namespace abelfun::charcomb
