#include "abelfun/dcomplex.hpp"

#include "abelfun/charcomb.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace abelfun::dcomplex {

using exteralg::Blade;

int MonomialD::degree() const {
    int s = 0;
    for (int e : exponents) s += e;
    return s;
}

namespace {

void gen_monomials(long g, long left, std::vector<int>& cur, std::vector<MonomialD>& out) {
    if (static_cast<long>(cur.size()) == g - 1) {
        cur.push_back(static_cast<int>(left));
        out.push_back(MonomialD{cur});
        cur.pop_back();
        return;
    }
    for (long e = left; e >= 0; --e) {
        cur.push_back(static_cast<int>(e));
        gen_monomials(g, left - e, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<MonomialD> monomials_of_degree(long g, long m) {
    std::vector<MonomialD> out;
    if (m < 0) return out;
    std::vector<int> cur;
    gen_monomials(g, m, cur, out);
    return out;
}

Int monomial_count(long g, long m) {
    if (m < 0) return 0;
    return binomial(m + g - 1, g - 1);
}

// ---------------------------------------------------------------------------
// modular rank with lazy reduction
// ---------------------------------------------------------------------------

namespace {

// Verified primes close to 2^20..2^22; small enough that thousands of
// row updates fit in uint64 without intermediate reduction.
constexpr std::int64_t kPrimes[] = {1048573, 2097143, 4194301};

struct PrimeClash : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw PrimeClash("mod_inverse: not invertible");
    return t < 0 ? t + p : t;
}

std::int64_t rat_mod_p(const Rat& x, std::int64_t p) {
    Int num = boost::multiprecision::numerator(x) % p;
    Int den = boost::multiprecision::denominator(x) % p;
    std::int64_t n = static_cast<std::int64_t>(num);
    std::int64_t d = static_cast<std::int64_t>(den);
    if (n < 0) n += p;
    if (d < 0) d += p;
    if (d == 0) throw PrimeClash("rat_mod_p: denominator divisible by p");
    return static_cast<std::int64_t>((__int128)n * mod_inverse(d, p) % p);
}

long rank_mod_p(const SparseRatMatrix& m, std::int64_t p) {
    const long R = m.rows, C = m.cols;
    if (R == 0 || C == 0) return 0;
    std::vector<std::uint64_t> a(static_cast<size_t>(R) * C, 0);
    for (long c = 0; c < C; ++c)
        for (const auto& [r, v] : m.cols_data[c]) a[static_cast<size_t>(r) * C + c] = rat_mod_p(v, p);

    const std::uint64_t up = static_cast<std::uint64_t>(p);
    long rank = 0;
    for (long c = 0; c < C && rank < R; ++c) {
        long pr = -1;
        for (long r = rank; r < R; ++r) {
            if (a[static_cast<size_t>(r) * C + c] % up != 0) { pr = r; break; }
        }
        if (pr < 0) continue;
        std::uint64_t* prow = &a[static_cast<size_t>(pr) * C];
        // fully reduce the pivot row so later products stay below p^2
        for (long j = c; j < C; ++j) prow[j] %= up;
        if (pr != rank) {
            std::uint64_t* rrow = &a[static_cast<size_t>(rank) * C];
            for (long j = c; j < C; ++j) std::swap(prow[j], rrow[j]);
            prow = &a[static_cast<size_t>(rank) * C];
        }
        const std::uint64_t inv = static_cast<std::uint64_t>(
            mod_inverse(static_cast<std::int64_t>(prow[c]), p));
        for (long r = rank + 1; r < R; ++r) {
            std::uint64_t* row = &a[static_cast<size_t>(r) * C];
            std::uint64_t f = row[c] % up;
            if (f == 0) { row[c] = 0; continue; }
            // row += (p - f/pivot) * pivot_row, kept lazily unreduced
            std::uint64_t mult = up - (__int128)f * inv % up;
            for (long j = c + 1; j < C; ++j) row[j] += mult * prow[j];
            row[c] = 0;
        }
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// coset blocks and structure constants
// ---------------------------------------------------------------------------

// Exact Gauss-Jordan inverse; the blocks are small (dim <= C(2g, g) per
// degree) so rational arithmetic is cheap here.
std::vector<std::vector<Rat>> invert(std::vector<std::vector<Rat>> m) {
    const long n = static_cast<long>(m.size());
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
    for (long i = 0; i < n; ++i) inv[i][i] = 1;
    for (long c = 0; c < n; ++c) {
        long pr = -1;
        for (long r = c; r < n; ++r)
            if (m[r][c] != 0) { pr = r; break; }
        if (pr < 0) throw std::logic_error("invert: singular coset system");
        std::swap(m[c], m[pr]);
        std::swap(inv[c], inv[pr]);
        Rat d = m[c][c];
        for (long j = 0; j < n; ++j) { m[c][j] /= d; inv[c][j] /= d; }
        for (long r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rat f = m[r][c];
            for (long j = 0; j < n; ++j) {
                m[r][j] -= f * m[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

struct Block {
    int degree = 0;
    std::vector<Blade> targets;           // basis of wedge^k V at this degree
    std::map<Blade, long> target_index;
    std::vector<Blade> reps;              // coset representatives, q of them
    long q = 0;
    // inverse of [rep unit columns | independent omega-image columns];
    // the first q coordinates of inv * v are the coset coordinates of v
    std::vector<std::vector<Rat>> inv;

    std::vector<Rat> reduce(const std::vector<Rat>& v) const {
        std::vector<Rat> out(q);
        for (long i = 0; i < q; ++i) {
            Rat s = 0;
            for (long j = 0; j < static_cast<long>(targets.size()); ++j)
                if (v[j] != 0) s += inv[i][j] * v[j];
            out[i] = s;
        }
        return out;
    }
};

using SparseVec = std::vector<std::pair<long, Rat>>;  // (rep index, coeff)

}  // namespace

struct ComplexModel::Impl {
    long g;
    // levels[k]: degree -> Block, for k = 0..g
    std::vector<std::map<int, Block>> levels;
    // alpha_red[k][d][rep][i]: reduction of alpha_i ^ rep into the coset
    // basis of level k+1 at degree d-1 (k = 0..g-1)
    std::vector<std::map<int, std::vector<std::vector<SparseVec>>>> alpha_red;
};

namespace {

Block make_block(long g, long k, int d) {
    Block b;
    b.degree = d;
    b.targets = exteralg::blades_of_weight_degree(g, k, d);
    for (long i = 0; i < static_cast<long>(b.targets.size()); ++i) b.target_index[b.targets[i]] = i;
    const long n = static_cast<long>(b.targets.size());
    if (n == 0) return b;

    // Greedy echelon pass over omega-image columns, then unit columns;
    // reproduces w_basis_cosets and records an invertible square system.
    std::vector<std::vector<Rat>> kept_cols;
    std::vector<std::vector<Rat>> echelon;  // rows with unit pivots
    std::vector<long> pivots;
    auto try_insert = [&](std::vector<Rat> v) {
        for (size_t r = 0; r < echelon.size(); ++r) {
            if (v[pivots[r]] == 0) continue;
            Rat f = v[pivots[r]];
            for (long j = 0; j < n; ++j) v[j] -= f * echelon[r][j];
        }
        long p = -1;
        for (long j = 0; j < n; ++j)
            if (v[j] != 0) { p = j; break; }
        if (p < 0) return false;
        Rat inv = Rat(1) / v[p];
        for (long j = 0; j < n; ++j) v[j] *= inv;
        pivots.push_back(p);
        echelon.push_back(std::move(v));
        return true;
    };

    std::vector<std::vector<Rat>> omega_cols;
    if (k >= 2) {
        for (const auto& src : exteralg::blades_of_weight(g, k - 2)) {
            if (exteralg::omega_image_degree(src) != d) continue;
            auto img = exteralg::omega_wedge(g, src);
            if (img.empty()) continue;
            std::vector<Rat> v(n);
            for (const auto& [sign, blade] : img) v[b.target_index.at(blade)] = sign;
            if (try_insert(v)) omega_cols.push_back(std::move(v));
        }
    }
    std::vector<std::vector<Rat>> rep_cols;
    for (long i = 0; i < n; ++i) {
        std::vector<Rat> v(n);
        v[i] = 1;
        if (try_insert(v)) {
            b.reps.push_back(b.targets[i]);
            rep_cols.push_back(std::move(v));
        }
    }
    b.q = static_cast<long>(b.reps.size());

    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    for (long c = 0; c < b.q; ++c)
        for (long r = 0; r < n; ++r) m[r][c] = rep_cols[c][r];
    for (long c = 0; c < static_cast<long>(omega_cols.size()); ++c)
        for (long r = 0; r < n; ++r) m[r][b.q + c] = omega_cols[c][r];
    if (b.q + static_cast<long>(omega_cols.size()) != n)
        throw std::logic_error("make_block: coset system is not square");
    b.inv = invert(std::move(m));
    return b;
}

}  // namespace

ComplexModel::ComplexModel(long g) : g_(g), impl_(new Impl{g, {}, {}}) {
    if (g < 2) throw std::invalid_argument("ComplexModel: requires g >= 2");
    impl_->levels.resize(g + 1);
    for (long k = 0; k <= g; ++k) {
        std::map<int, long> degs;
        for (const auto& bl : exteralg::blades_of_weight(g, k)) degs[bl.degree()]++;
        for (const auto& [d, cnt] : degs) {
            Block b = make_block(g, k, d);
            if (b.q > 0) impl_->levels[k].emplace(d, std::move(b));
        }
    }

    // structure constants: alpha_i ^ rep, reduced into the next level
    impl_->alpha_red.resize(g);
    for (long k = 0; k < g; ++k) {
        for (const auto& [d, blk] : impl_->levels[k]) {
            auto nit = impl_->levels[k + 1].find(d - 1);
            std::vector<std::vector<SparseVec>> per_rep(
                blk.q, std::vector<SparseVec>(g));
            if (nit != impl_->levels[k + 1].end()) {
                const Block& nxt = nit->second;
                std::vector<Rat> v(nxt.targets.size());
                for (long ri = 0; ri < blk.q; ++ri) {
                    for (int i = 0; i < g; ++i) {
                        Blade t = blk.reps[ri];
                        int sign = exteralg::wedge_alpha(t, i);
                        if (sign == 0) continue;
                        std::fill(v.begin(), v.end(), Rat(0));
                        v[nxt.target_index.at(t)] = sign;
                        auto red = nxt.reduce(v);
                        SparseVec sv;
                        for (long c = 0; c < nxt.q; ++c)
                            if (red[c] != 0) sv.emplace_back(c, red[c]);
                        per_rep[ri][i] = std::move(sv);
                    }
                }
            }
            impl_->alpha_red[k].emplace(d, std::move(per_rep));
        }
    }

    // d o d = 0 at the structure-constant level: the coefficient of
    // partial_i partial_j in d(d(1 (x) [b])) must vanish in W^{k+2}
    for (long k = 0; k + 2 <= g; ++k) {
        for (const auto& [d, blk] : impl_->levels[k]) {
            const auto& s1 = impl_->alpha_red[k].at(d);
            auto nit = impl_->levels[k + 1].find(d - 1);
            if (nit == impl_->levels[k + 1].end()) continue;
            auto s2it = impl_->alpha_red[k + 1].find(d - 1);
            if (s2it == impl_->alpha_red[k + 1].end()) continue;
            const auto& s2 = s2it->second;
            auto n2it = impl_->levels[k + 2].find(d - 2);
            const long q2 = n2it == impl_->levels[k + 2].end() ? 0 : n2it->second.q;
            if (q2 == 0) continue;
            for (long ri = 0; ri < blk.q; ++ri)
                for (int i = 0; i < g; ++i)
                    for (int j = i; j < g; ++j) {
                        std::vector<Rat> acc(q2);
                        for (const auto& [c, vc] : s1[ri][i])
                            for (const auto& [e, ve] : s2[c][j]) acc[e] += vc * ve;
                        if (j > i)
                            for (const auto& [c, vc] : s1[ri][j])
                                for (const auto& [e, ve] : s2[c][i]) acc[e] += vc * ve;
                        for (const auto& x : acc)
                            if (x != 0) throw std::logic_error("ComplexModel: d o d != 0");
                    }
        }
    }
}

ComplexModel::~ComplexModel() { delete impl_; }

ComplexSlice ComplexModel::build_slice(long t) const {
    const long g = g_;
    if (t < -g) throw std::invalid_argument("build_slice: requires t >= -g");
    ComplexSlice s;
    s.g = g;
    s.t = t;
    s.bases.resize(g + 1);
    s.maps.resize(g);

    // flat index of (k, degree, rep, monomial)
    struct LevelIndex {
        std::map<int, long> block_offset;                       // degree -> base
        std::map<int, std::map<std::vector<int>, long>> monos;  // degree -> monomial -> idx
        std::map<int, long> mono_count;
    };
    std::vector<LevelIndex> idx(g + 1);

    for (long k = 0; k <= g; ++k) {
        long off = 0;
        for (const auto& [d, blk] : impl_->levels[k]) {
            auto ms = monomials_of_degree(g, t - d);
            if (ms.empty()) continue;
            idx[k].block_offset[d] = off;
            auto& mm = idx[k].monos[d];
            for (long i = 0; i < static_cast<long>(ms.size()); ++i) mm[ms[i].exponents] = i;
            idx[k].mono_count[d] = static_cast<long>(ms.size());
            for (long ri = 0; ri < blk.q; ++ri)
                for (const auto& m : ms) s.bases[k].push_back(BasisElement{m, blk.reps[ri]});
            off += blk.q * static_cast<long>(ms.size());
        }
    }

    for (long k = 0; k < g; ++k) {
        SparseRatMatrix& mat = s.maps[k];
        mat.rows = static_cast<long>(s.bases[k + 1].size());
        mat.cols = static_cast<long>(s.bases[k].size());
        mat.cols_data.resize(mat.cols);
        for (const auto& [d, blk] : impl_->levels[k]) {
            auto boff = idx[k].block_offset.find(d);
            if (boff == idx[k].block_offset.end()) continue;
            const auto& ms = idx[k].monos.at(d);
            const long nmono = idx[k].mono_count.at(d);
            auto toff = idx[k + 1].block_offset.find(d - 1);
            if (toff == idx[k + 1].block_offset.end()) continue;
            const auto& tmono = idx[k + 1].monos.at(d - 1);
            const auto& st = impl_->alpha_red[k].at(d);
            for (const auto& [mexp, mi] : ms) {
                for (long ri = 0; ri < blk.q; ++ri) {
                    const long col = boff->second + ri * nmono + mi;
                    auto& cd = mat.cols_data[col];
                    for (int i = 0; i < g; ++i) {
                        if (st[ri][i].empty()) continue;
                        std::vector<int> te = mexp;
                        te[i] += 1;
                        const long tmi = tmono.at(te);
                        const long tn = idx[k + 1].mono_count.at(d - 1);
                        for (const auto& [c, v] : st[ri][i])
                            cd.emplace_back(toff->second + c * tn + tmi, v);
                    }
                    std::sort(cd.begin(), cd.end(),
                              [](const auto& a, const auto& b) { return a.first < b.first; });
                }
            }
        }
    }

    // assembled-matrix composition check, done modulo a prime (the exact
    // structure-level check already ran in the constructor)
    for (long k = 0; k + 1 < g; ++k) {
        const auto& A = s.maps[k + 1];
        const auto& B = s.maps[k];
        for (std::int64_t p : kPrimes) {
            try {
                for (long c = 0; c < B.cols; ++c) {
                    std::map<long, std::int64_t> acc;
                    for (const auto& [mid, v] : B.cols_data[c]) {
                        std::int64_t vm = rat_mod_p(v, p);
                        for (const auto& [r, w] : A.cols_data[mid])
                            acc[r] = (acc[r] + (__int128)vm * rat_mod_p(w, p)) % p;
                    }
                    for (const auto& [r, v] : acc)
                        if (v % p != 0)
                            throw std::logic_error("build_slice: d o d != 0 on slice");
                }
            } catch (const PrimeClash&) {
                continue;  // denominator hit this prime; try the next one
            }
            break;
        }
    }
    return s;
}

SliceReport ComplexModel::analyze(long t) const {
    const long g = g_;
    ComplexSlice s = build_slice(t);
    SliceReport rep;
    rep.g = g;
    rep.t = t;
    rep.dims.resize(g + 1);
    for (long k = 0; k <= g; ++k) rep.dims[k] = static_cast<long>(s.bases[k].size());
    rep.ranks.assign(g, 0);

    auto compute_ranks = [&](std::int64_t p) {
        std::vector<long> r(g);
        for (long k = 0; k < g; ++k) r[k] = rank_mod_p(s.maps[k], p);
        return r;
    };
    auto evaluate = [&](const std::vector<long>& ranks) {
        std::vector<ExactnessEntry> entries;
        for (long k = 0; k < g; ++k) {
            ExactnessEntry e;
            e.k = static_cast<int>(k);
            e.dim = rep.dims[k];
            e.rank_in = k == 0 ? 0 : ranks[k - 1];
            e.rank_out = ranks[k];
            e.exact = (e.rank_in + e.rank_out == e.dim);
            entries.push_back(e);
        }
        return entries;
    };

    rep.predicted_cokernel = predicted_top_cokernel(g, t);
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<long> ranks;
        try {
            ranks = compute_ranks(kPrimes[attempt]);
        } catch (const PrimeClash&) {
            continue;
        }
        // modular ranks only ever fall short, so keep the best lower bound
        for (long k = 0; k < g; ++k) rep.ranks[k] = std::max(rep.ranks[k], ranks[k]);
        rep.entries = evaluate(rep.ranks);
        rep.top_cokernel = rep.dims[g] - rep.ranks[g - 1];
        rep.cokernel_matches = Int(rep.top_cokernel) == rep.predicted_cokernel;
        bool all_exact = true;
        for (const auto& e : rep.entries) all_exact &= e.exact;
        if (all_exact && rep.cokernel_matches) break;
    }
    if (rep.entries.empty()) {
        rep.entries = evaluate(rep.ranks);
        rep.top_cokernel = rep.dims[g] - rep.ranks[g - 1];
        rep.cokernel_matches = Int(rep.top_cokernel) == rep.predicted_cokernel;
    }
    rep.dd_zero = true;  // build_slice throws otherwise
    return rep;
}

ComplexSlice build_slice(long g, long t) { return ComplexModel(g).build_slice(t); }

std::vector<ExactnessEntry> exactness_check(long g, long t) {
    return ComplexModel(g).analyze(t).entries;
}

SliceReport analyze_slice(long g, long t) { return ComplexModel(g).analyze(t); }

Int predicted_level_dim(long g, long k, long t) {
    const LaurentPoly ch_w = charcomb::ch_w_closed(g, k);
    Int sum = 0;
    for (const auto& [d, c] : ch_w.coeffs()) sum += monomial_count(g, t - d) * c;
    return sum;
}

Int predicted_top_cokernel(long g, long t) {
    LaurentPoly ch_u = charcomb::ch_h_top_table(g) - charcomb::ch_w_closed(g, g);
    Int correction = 0;
    for (const auto& [d, c] : ch_u.coeffs()) correction += monomial_count(g, t - d) * c;
    return charcomb::dim_gr_a(g, t + g) - correction;
}

}  // namespace abelfun::dcomplex
