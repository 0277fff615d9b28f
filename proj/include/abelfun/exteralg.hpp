#pragma once

#include "abelfun/laurent.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

// Brute-force model of the graded exterior algebra on V = V_+ (+) V_- with
// basis beta_1..beta_g, alpha_1..alpha_g, the omega-wedge map and the
// quotients W^k = wedge^k V / omega wedge^{k-2} V. Dimensions come out of
// exact integer rank computations, cross-checked modulo a large prime.
namespace abelfun::exteralg {

// A basis monomial of wedge V, stored as two bitmask subsets of {0..g-1}.
// Canonical factor order inside a blade: beta factors ascending, then alpha
// factors ascending; all wedge signs follow from that convention.
struct Blade {
    std::uint32_t beta = 0;
    std::uint32_t alpha = 0;

    int beta_count() const { return __builtin_popcount(beta); }
    int alpha_count() const { return __builtin_popcount(alpha); }
    int weight() const { return beta_count() + alpha_count(); }

    // Grading rule: a blade containing at least one beta factor has degree
    // 1 - (#alpha); a pure alpha blade has degree -(#alpha).
    int degree() const { return beta ? 1 - alpha_count() : -alpha_count(); }

    auto operator<=>(const Blade&) const = default;
};

// Left-wedge a single generator into a canonical blade. Returns the sign
// (+1/-1) and updates b, or returns 0 when the factor repeats.
int wedge_beta(Blade& b, int i);
int wedge_alpha(Blade& b, int i);

// All blades of wedge^k V in canonical order (ascending (beta, alpha) masks).
std::vector<Blade> blades_of_weight(long g, long k);
// The degree-d subset, same order.
std::vector<Blade> blades_of_weight_degree(long g, long k, int d);

// Dense exact integer matrix; rank by fraction-free (Bareiss) elimination.
class IntMatrix {
public:
    IntMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    long rows() const { return rows_; }
    long cols() const { return cols_; }
    Int& at(long r, long c) { return a_[r * cols_ + c]; }
    const Int& at(long r, long c) const { return a_[r * cols_ + c]; }

    long rank_bareiss() const;
    // Row-reduction rank over F_p, p an odd prime < 2^31.
    long rank_mod_p(std::int64_t p = 2147483647) const;

private:
    long rows_, cols_;
    std::vector<Int> a_;
};

// omega ^ src expanded over canonical blades; empty when the product
// vanishes. omega = sum_i beta_i ^ alpha_i.
std::vector<std::pair<int, Blade>> omega_wedge(long g, const Blade& src);

// Matrix of omega ^ (-): wedge^k V -> wedge^{k+2} V in canonical blade bases
// (rows index wedge^{k+2} V, columns wedge^k V), omega = sum_i beta_i^alpha_i.
// Entries lie in {-1,0,1}. Each column is homogeneous: the image of a pure
// alpha blade sits in the source degree, the image of a blade with a beta
// factor sits one degree lower. Requires 0 <= k <= 2g-2.
IntMatrix wedge_omega_matrix(long g, long k);

// The degree of the (homogeneous) image omega ^ src, or the degree the image
// would have when it vanishes: -(alpha count of src).
int omega_image_degree(const Blade& src);

// Per-degree dimensions of W^k = wedge^k V / omega wedge^{k-2} V, each value
// dim wedge^k V_d minus the exact rank of the degree-d block of the omega
// image. Requires 0 <= k <= g.
std::map<int, long> w_space_dims(long g, long k);

// Blade representatives whose cosets form a basis of W^k in degree d,
// selected by greedy exact-rank extension in canonical blade order.
std::vector<Blade> w_basis_cosets(long g, long k, int d);

// Brute-force w_space_dims equals the closed character formula.
bool lemma8_check(long g, long k);

}  // namespace abelfun::exteralg
