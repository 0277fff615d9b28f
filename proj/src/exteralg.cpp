#include "abelfun/exteralg.hpp"

#include "abelfun/charcomb.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace abelfun::exteralg {

namespace {

// Subsets of {0..g-1} with c elements, ascending as integers (Gosper's hack).
std::vector<std::uint32_t> masks_of_popcount(long g, long c) {
    std::vector<std::uint32_t> out;
    if (c < 0 || c > g) return out;
    if (c == 0) {
        out.push_back(0);
        return out;
    }
    std::uint32_t v = (1u << c) - 1;
    const std::uint32_t limit = 1u << g;
    while (v < limit) {
        out.push_back(v);
        std::uint32_t t = v | (v - 1);
        v = (t + 1) | (((~t & (t + 1)) - 1) >> (__builtin_ctz(v) + 1));
    }
    return out;
}

int popcount_below(std::uint32_t mask, int i) {
    return __builtin_popcount(mask & ((1u << i) - 1u));
}

}  // namespace

int wedge_beta(Blade& b, int i) {
    const std::uint32_t bit = 1u << i;
    if (b.beta & bit) return 0;
    // beta_i passes the beta factors with smaller index
    int inv = popcount_below(b.beta, i);
    b.beta |= bit;
    return (inv & 1) ? -1 : 1;
}

int wedge_alpha(Blade& b, int i) {
    const std::uint32_t bit = 1u << i;
    if (b.alpha & bit) return 0;
    // alpha_i passes every beta factor plus the alphas with smaller index
    int inv = b.beta_count() + popcount_below(b.alpha, i);
    b.alpha |= bit;
    return (inv & 1) ? -1 : 1;
}

std::vector<Blade> blades_of_weight(long g, long k) {
    std::vector<Blade> out;
    if (k < 0 || k > 2 * g) return out;
    for (long bc = 0; bc <= std::min(k, g); ++bc) {
        long ac = k - bc;
        if (ac > g) continue;
        for (auto bm : masks_of_popcount(g, bc))
            for (auto am : masks_of_popcount(g, ac)) out.push_back(Blade{bm, am});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Blade> blades_of_weight_degree(long g, long k, int d) {
    std::vector<Blade> out;
    for (const auto& b : blades_of_weight(g, k))
        if (b.degree() == d) out.push_back(b);
    return out;
}

long IntMatrix::rank_bareiss() const {
    std::vector<Int> m(a_);
    const long R = rows_, C = cols_;
    auto at = [&](long r, long c) -> Int& { return m[r * C + c]; };
    long rank = 0;
    Int prev = 1;
    for (long c = 0; c < C && rank < R; ++c) {
        // smallest nonzero pivot keeps the fraction-free growth down
        long pr = -1;
        for (long r = rank; r < R; ++r) {
            if (at(r, c) == 0) continue;
            if (pr < 0 || abs(at(r, c)) < abs(at(pr, c))) pr = r;
        }
        if (pr < 0) continue;
        if (pr != rank)
            for (long j = c; j < C; ++j) std::swap(at(pr, j), at(rank, j));
        const Int pivot = at(rank, c);
        for (long r = rank + 1; r < R; ++r) {
            const Int head = at(r, c);
            // every remaining row gets the fraction-free update, even with a
            // zero head, or later exact divisions break; identity scalings
            // (pivot == prev, head == 0) are the one safe shortcut
            if (head == 0 && pivot == prev) continue;
            for (long j = c + 1; j < C; ++j)
                at(r, j) = (at(r, j) * pivot - head * at(rank, j)) / prev;
            at(r, c) = 0;
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

long IntMatrix::rank_mod_p(std::int64_t p) const {
    const long R = rows_, C = cols_;
    std::vector<std::int64_t> m(R * C);
    for (long i = 0; i < R * C; ++i) {
        Int v = a_[i] % p;
        if (v < 0) v += p;
        m[i] = static_cast<std::int64_t>(v);
    }
    auto at = [&](long r, long c) -> std::int64_t& { return m[r * C + c]; };
    long rank = 0;
    for (long c = 0; c < C && rank < R; ++c) {
        long pr = -1;
        for (long r = rank; r < R; ++r)
            if (at(r, c) != 0) { pr = r; break; }
        if (pr < 0) continue;
        if (pr != rank)
            for (long j = c; j < C; ++j) std::swap(at(pr, j), at(rank, j));
        const std::int64_t pivot = at(rank, c);
        for (long r = rank + 1; r < R; ++r) {
            const std::int64_t head = at(r, c);
            if (head == 0) continue;
            for (long j = c + 1; j < C; ++j)
                at(r, j) = (at(r, j) * pivot - head * at(rank, j)) % p;
            at(r, c) = 0;
        }
        ++rank;
    }
    return rank;
}

std::vector<std::pair<int, Blade>> omega_wedge(long g, const Blade& src) {
    std::vector<std::pair<int, Blade>> out;
    for (int i = 0; i < g; ++i) {
        Blade b = src;
        int s1 = wedge_alpha(b, i);
        if (s1 == 0) continue;
        int s2 = wedge_beta(b, i);
        if (s2 == 0) continue;
        out.emplace_back(s1 * s2, b);
    }
    return out;
}

int omega_image_degree(const Blade& src) { return -src.alpha_count(); }

IntMatrix wedge_omega_matrix(long g, long k) {
    if (k < 0 || k > 2 * g - 2)
        throw std::invalid_argument("wedge_omega_matrix: requires 0 <= k <= 2g-2");
    auto srcs = blades_of_weight(g, k);
    auto dsts = blades_of_weight(g, k + 2);
    std::map<Blade, long> dst_index;
    for (long i = 0; i < static_cast<long>(dsts.size()); ++i) dst_index[dsts[i]] = i;
    IntMatrix m(static_cast<long>(dsts.size()), static_cast<long>(srcs.size()));
    for (long c = 0; c < static_cast<long>(srcs.size()); ++c)
        for (const auto& [sign, b] : omega_wedge(g, srcs[c])) m.at(dst_index.at(b), c) = sign;
    return m;
}

std::map<int, long> w_space_dims(long g, long k) {
    if (k < 0 || k > g) throw std::invalid_argument("w_space_dims: requires 0 <= k <= g");
    std::map<int, long> dims;
    for (const auto& b : blades_of_weight(g, k)) dims[b.degree()]++;
    if (k < 2) return dims;

    // Group image columns by their (homogeneous) degree and subtract ranks.
    std::map<int, std::vector<Blade>> srcs_by_deg;
    for (const auto& c : blades_of_weight(g, k - 2)) srcs_by_deg[omega_image_degree(c)].push_back(c);
    for (auto& [d, srcs] : srcs_by_deg) {
        auto rows = blades_of_weight_degree(g, k, d);
        if (rows.empty()) continue;
        std::map<Blade, long> row_index;
        for (long i = 0; i < static_cast<long>(rows.size()); ++i) row_index[rows[i]] = i;
        IntMatrix block(static_cast<long>(rows.size()), static_cast<long>(srcs.size()));
        for (long c = 0; c < static_cast<long>(srcs.size()); ++c)
            for (const auto& [sign, b] : omega_wedge(g, srcs[c])) block.at(row_index.at(b), c) = sign;
        dims[d] -= block.rank_bareiss();
        if (dims[d] == 0) dims.erase(d);
    }
    return dims;
}

namespace {

// Incremental echelon form over Q, rows normalized to unit pivot.
class RowEliminator {
public:
    explicit RowEliminator(long dim) : dim_(dim) {}

    bool insert(std::vector<Rat> v) {
        reduce(v);
        long p = first_nonzero(v);
        if (p < 0) return false;
        Rat inv = Rat(1) / v[p];
        for (long j = p; j < dim_; ++j) v[j] *= inv;
        rows_.emplace_back(p, std::move(v));
        return true;
    }

    bool would_grow(std::vector<Rat> v) const {
        reduce(v);
        return first_nonzero(v) >= 0;
    }

    long rank() const { return static_cast<long>(rows_.size()); }

private:
    void reduce(std::vector<Rat>& v) const {
        for (const auto& [p, row] : rows_) {
            if (v[p] == 0) continue;
            Rat f = v[p];
            for (long j = p; j < dim_; ++j) v[j] -= f * row[j];
        }
    }
    long first_nonzero(const std::vector<Rat>& v) const {
        for (long j = 0; j < dim_; ++j)
            if (v[j] != 0) return j;
        return -1;
    }

    long dim_;
    std::vector<std::pair<long, std::vector<Rat>>> rows_;
};

}  // namespace

std::vector<Blade> w_basis_cosets(long g, long k, int d) {
    auto all = blades_of_weight_degree(g, k, d);
    std::map<Blade, long> index;
    for (long i = 0; i < static_cast<long>(all.size()); ++i) index[all[i]] = i;
    const long dim = static_cast<long>(all.size());

    RowEliminator elim(dim);
    if (k >= 2) {
        for (const auto& c : blades_of_weight(g, k - 2)) {
            if (omega_image_degree(c) != d) continue;
            std::vector<Rat> v(dim);
            bool nonzero = false;
            for (const auto& [sign, b] : omega_wedge(g, c)) {
                v[index.at(b)] = sign;
                nonzero = true;
            }
            if (nonzero) elim.insert(std::move(v));
        }
    }

    std::vector<Blade> reps;
    for (long i = 0; i < dim; ++i) {
        std::vector<Rat> v(dim);
        v[i] = 1;
        if (elim.insert(std::move(v))) reps.push_back(all[i]);
    }
    return reps;
}

bool lemma8_check(long g, long k) {
    LaurentPoly brute;
    for (const auto& [d, dim] : w_space_dims(g, k)) brute.add_term(d, dim);
    return brute == charcomb::ch_w_closed(g, k);
}

}  // namespace abelfun::exteralg
