#include "abelfun/abelianfn.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace abelfun::abelian {

namespace {

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (size_t j = 0; j < r.size(); ++j) r[j] += b[j];
    return r;
}

MultiIndex sub(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (size_t j = 0; j < r.size(); ++j) r[j] -= b[j];
    return r;
}

// componentwise odometer over 0 <= beta <= gamma; returns false after wrap
bool next_multi_below(MultiIndex& beta, const MultiIndex& gamma) {
    for (size_t j = 0; j < beta.size(); ++j) {
        if (beta[j] < gamma[j]) {
            ++beta[j];
            return true;
        }
        beta[j] = 0;
    }
    return false;
}

double binom_small(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double binom_multi(const MultiIndex& gamma, const MultiIndex& beta) {
    double r = 1;
    for (size_t j = 0; j < gamma.size(); ++j) r *= binom_small(gamma[j], beta[j]);
    return r;
}

bool is_zero_multi(const MultiIndex& m) {
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

int permutation_sign(const std::vector<int>& sigma) {
    int inv = 0;
    for (size_t a = 0; a < sigma.size(); ++a)
        for (size_t b = a + 1; b < sigma.size(); ++b)
            if (sigma[a] > sigma[b]) ++inv;
    return (inv & 1) ? -1 : 1;
}

// deterministic uniforms in [0,1), independent of platform distributions
struct Uniform {
    std::mt19937_64 rng;
    explicit Uniform(std::uint64_t seed) : rng(seed) {}
    double operator()() { return double(rng() >> 11) * 0x1.0p-53; }
};

}  // namespace

// ---------------------------------------------------------------------------
// LogThetaCache
// ---------------------------------------------------------------------------

LogThetaCache::LogThetaCache(Eigen::VectorXcd z, const PeriodMatrix& pm, Characteristic chr,
                             const ThetaEvalConfig& cfg, double theta_floor)
    : z_(std::move(z)), pm_(pm), chr_(std::move(chr)), cfg_(cfg), floor_(theta_floor) {}

Complex LogThetaCache::theta_value() {
    if (!theta0_) {
        Complex v = theta::theta(z_, pm_, chr_, MultiIndex(pm_.g(), 0), cfg_);
        if (std::abs(v) < floor_)
            throw NearThetaDivisor("theta value below floor: too close to the divisor");
        theta0_ = v;
    }
    return *theta0_;
}

Complex LogThetaCache::theta_deriv(const MultiIndex& m) {
    auto it = theta_.find(m);
    if (it != theta_.end()) return it->second;
    Complex v = theta::theta(z_, pm_, chr_, m, cfg_);
    theta_.emplace(m, v);
    return v;
}

Complex LogThetaCache::zeta(const MultiIndex& multi) {
    int i = -1;
    for (size_t j = 0; j < multi.size(); ++j)
        if (multi[j] > 0) {
            i = static_cast<int>(j);
            break;
        }
    if (i < 0) throw std::invalid_argument("zeta: requires |multi| >= 1");
    MultiIndex gamma = multi;
    gamma[i] -= 1;
    return zeta_rec(i, gamma);
}

Complex LogThetaCache::zeta_rec(int i, const MultiIndex& gamma) {
    auto key = std::make_pair(i, gamma);
    auto it = zeta_.find(key);
    if (it != zeta_.end()) return it->second;

    const Complex th = theta_value();
    Complex v;
    if (is_zero_multi(gamma)) {
        MultiIndex ei(gamma.size(), 0);
        ei[i] = 1;
        v = theta_deriv(ei) / th;
    } else {
        MultiIndex gi = gamma;
        gi[i] += 1;
        Complex acc = theta_deriv(gi);
        MultiIndex beta(gamma.size(), 0);
        while (next_multi_below(beta, gamma)) {
            acc -= binom_multi(gamma, beta) * theta_deriv(beta) * zeta_rec(i, sub(gamma, beta));
        }
        v = acc / th;
    }
    zeta_.emplace(std::move(key), v);
    return v;
}

// ---------------------------------------------------------------------------
// labels
// ---------------------------------------------------------------------------

AbelianLabel AbelianLabel::one() { return AbelianLabel{}; }

AbelianLabel AbelianLabel::zeta(MultiIndex multi) {
    AbelianLabel l;
    l.kind = Kind::Zeta;
    l.multi = std::move(multi);
    if (theta::multi_total(l.multi) < 2)
        throw std::invalid_argument("AbelianLabel::zeta: needs |multi| >= 2, single zeta_i is "
                                    "not lattice-periodic");
    return l;
}

AbelianLabel AbelianLabel::det(std::vector<int> I, std::vector<int> J, MultiIndex derivs) {
    if (I.size() != J.size() || I.empty())
        throw std::invalid_argument("AbelianLabel::det: requires |I| = |J| >= 1");
    AbelianLabel l;
    l.kind = Kind::Det;
    l.I = std::move(I);
    l.J = std::move(J);
    l.derivs = std::move(derivs);
    return l;
}

AbelianLabel AbelianLabel::order_n(int n, std::vector<int> digits) {
    AbelianLabel l;
    l.kind = Kind::OrderNQuotient;
    l.order = n;
    l.digits = std::move(digits);
    return l;
}

AbelianLabel AbelianLabel::v3(MultiIndex derivs) {
    AbelianLabel l;
    l.kind = Kind::V3Element;
    l.derivs = std::move(derivs);
    return l;
}

int AbelianLabel::pole_order() const {
    switch (kind) {
        case Kind::One: return 0;
        case Kind::Zeta: return theta::multi_total(multi);
        case Kind::Det: return static_cast<int>(I.size()) + 1 + theta::multi_total(derivs);
        case Kind::OrderNQuotient: return order;
        case Kind::V3Element: return 2 + theta::multi_total(derivs);
    }
    return 0;
}

std::string AbelianLabel::name() const {
    std::ostringstream os;
    auto subscript = [&os](const MultiIndex& m) {
        for (size_t j = 0; j < m.size(); ++j)
            for (int e = 0; e < m[j]; ++e) os << (j + 1);
    };
    switch (kind) {
        case Kind::One: os << "1"; break;
        case Kind::Zeta:
            os << "zeta_";
            subscript(multi);
            break;
        case Kind::Det: {
            os << "(";
            for (int i : I) os << i;
            os << ";";
            for (int j : J) os << j;
            os << ")";
            if (theta::multi_total(derivs) > 0) {
                os << "_";
                subscript(derivs);
            }
            break;
        }
        case Kind::OrderNQuotient: {
            os << "q" << order << "[";
            for (int d : digits) os << d;
            os << "]";
            break;
        }
        case Kind::V3Element:
            os << "v";
            if (theta::multi_total(derivs) > 0) {
                os << "_";
                subscript(derivs);
            }
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// evaluator
// ---------------------------------------------------------------------------

AbelianEvaluator::AbelianEvaluator(PeriodMatrix pm, ThetaEvalConfig cfg, double theta_floor)
    : pm_(std::move(pm)), cfg_(cfg), floor_(theta_floor) {}

AbelianEvaluator AbelianEvaluator::with_floor(double f) const {
    AbelianEvaluator ev(pm_, cfg_, f);
    ev.v3_ = v3_;
    return ev;
}

namespace {

// partial^gamma of the product of zeta factors with base multi-indices
// base[k..], distributing the derivative by the Leibniz rule.
Complex deriv_product(LogThetaCache& cache, const std::vector<MultiIndex>& base, size_t k,
                      const MultiIndex& gamma) {
    if (k + 1 == base.size()) return cache.zeta(add(base[k], gamma));
    if (is_zero_multi(gamma))
        return cache.zeta(base[k]) * deriv_product(cache, base, k + 1, gamma);
    Complex sum = 0;
    MultiIndex beta(gamma.size(), 0);
    do {
        sum += binom_multi(gamma, beta) * cache.zeta(add(base[k], beta)) *
               deriv_product(cache, base, k + 1, sub(gamma, beta));
    } while (next_multi_below(beta, gamma));
    return sum;
}

Complex det_eval(const std::vector<int>& I, const std::vector<int>& J, const MultiIndex& derivs,
                 LogThetaCache& cache, int g) {
    const size_t r = I.size();
    std::vector<int> sigma(r);
    std::iota(sigma.begin(), sigma.end(), 0);
    Complex total = 0;
    do {
        std::vector<MultiIndex> base(r, MultiIndex(g, 0));
        for (size_t k = 0; k < r; ++k) {
            base[k][I[k] - 1] += 1;
            base[k][J[sigma[k]] - 1] += 1;
        }
        total += double(permutation_sign(sigma)) * deriv_product(cache, base, 0, derivs);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

}  // namespace

Complex AbelianEvaluator::eval_one(const AbelianLabel& label, LogThetaCache& cache,
                                   const Eigen::VectorXcd& z) const {
    const int g = pm_.g();
    switch (label.kind) {
        case AbelianLabel::Kind::One:
            return 1.0;
        case AbelianLabel::Kind::Zeta:
            return cache.zeta(label.multi);
        case AbelianLabel::Kind::Det:
            return det_eval(label.I, label.J, label.derivs, cache, g);
        case AbelianLabel::Kind::OrderNQuotient: {
            theta::OrderNQuotient f;
            f.n = label.order;
            f.digits = label.digits;
            f.pm_scaled = PeriodMatrix::create(double(label.order) * pm_.tau());
            Eigen::VectorXd a(g);
            for (int j = 0; j < g; ++j) a[j] = double(label.digits[j]) / label.order;
            f.chr = Characteristic{a, Eigen::VectorXd::Zero(g)};
            Complex num =
                theta::theta(Eigen::VectorXcd(double(f.n) * z), f.pm_scaled, f.chr,
                             MultiIndex(g, 0), cfg_);
            return num / std::pow(cache.theta_value(), f.n);
        }
        case AbelianLabel::Kind::V3Element: {
            if (!v3_) throw std::logic_error("V3Element label needs select_v3 first");
            // v = N / theta^2 with N(z) = theta[a/2,0](2z | 2tau); derivatives
            // by the same divide-through Leibniz recursion as for zeta
            std::map<MultiIndex, Complex> memo;
            const Complex th2 = cache.theta_value() * cache.theta_value();
            std::function<Complex(const MultiIndex&)> vd = [&](const MultiIndex& gamma) -> Complex {
                auto it = memo.find(gamma);
                if (it != memo.end()) return it->second;
                Complex numer =
                    theta::theta(Eigen::VectorXcd(2.0 * z), v3_->pm_scaled, v3_->chr, gamma, cfg_) *
                    std::pow(2.0, theta::multi_total(gamma));
                Complex acc = numer;
                MultiIndex beta(gamma.size(), 0);
                while (next_multi_below(beta, gamma)) {
                    // partial^beta (theta^2)
                    Complex t2b = 0;
                    MultiIndex delta(beta.size(), 0);
                    do {
                        t2b += binom_multi(beta, delta) * cache.theta_deriv(delta) *
                               cache.theta_deriv(sub(beta, delta));
                    } while (next_multi_below(delta, beta));
                    acc -= binom_multi(gamma, beta) * t2b * vd(sub(gamma, beta));
                }
                Complex v = acc / th2;
                memo.emplace(gamma, v);
                return v;
            };
            return vd(label.derivs);
        }
    }
    throw std::logic_error("eval_one: unreachable");
}

Complex AbelianEvaluator::evaluate(const AbelianLabel& label, const Eigen::VectorXcd& z) const {
    LogThetaCache cache(z, pm_, Characteristic::zero(pm_.g()), cfg_, floor_);
    return eval_one(label, cache, z);
}

std::vector<Complex> AbelianEvaluator::evaluate_all(const std::vector<AbelianLabel>& labels,
                                                    const Eigen::VectorXcd& z) const {
    LogThetaCache cache(z, pm_, Characteristic::zero(pm_.g()), cfg_, floor_);
    std::vector<Complex> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(eval_one(l, cache, z));
    return out;
}

Complex zeta_multi(const MultiIndex& multi, const Eigen::VectorXcd& z, const PeriodMatrix& pm,
                   const ThetaEvalConfig& cfg, double theta_floor) {
    LogThetaCache cache(z, pm, Characteristic::zero(pm.g()), cfg, theta_floor);
    return cache.zeta(multi);
}

Complex det_IJ(const std::vector<int>& I, const std::vector<int>& J, const MultiIndex& derivs,
               const Eigen::VectorXcd& z, const PeriodMatrix& pm, const ThetaEvalConfig& cfg,
               double theta_floor) {
    if (I.size() != J.size()) throw std::invalid_argument("det_IJ: requires |I| = |J|");
    LogThetaCache cache(z, pm, Characteristic::zero(pm.g()), cfg, theta_floor);
    return det_eval(I, J, derivs, cache, pm.g());
}

double relation_residual(RelationKind kind, const std::vector<int>& idx,
                         const Eigen::VectorXcd& z, const AbelianEvaluator& ev) {
    const int g = ev.pm().g();
    LogThetaCache cache(z, ev.pm(), Characteristic::zero(g), ev.cfg(), ev.theta_floor());
    auto e = [&](int i) {
        MultiIndex m(g, 0);
        m[i - 1] = 1;
        return m;
    };
    switch (kind) {
        case RelationKind::R41: {
            if (g < 4) throw std::invalid_argument("R41 with r = 2 needs g >= 4");
            if (idx.size() != 4) throw std::invalid_argument("R41: indices {i1,j1,j2,j3}");
            int i1 = idx[0], j1 = idx[1], j2 = idx[2], j3 = idx[3];
            MultiIndex none(g, 0);
            Complex s = det_eval({i1, j1}, {j2, j3}, none, cache, g) -
                        det_eval({i1, j2}, {j1, j3}, none, cache, g) +
                        det_eval({i1, j3}, {j1, j2}, none, cache, g);
            return std::abs(s);
        }
        case RelationKind::R43: {
            if (idx.size() != 3) throw std::invalid_argument("R43: indices {i,j,k}");
            MultiIndex a = add(add(e(idx[0]), e(idx[1])), e(idx[2]));
            MultiIndex b = add(add(e(idx[0]), e(idx[2])), e(idx[1]));
            return std::abs(cache.zeta(a) - cache.zeta(b));
        }
        case RelationKind::R44: {
            if (idx.size() != 5) throw std::invalid_argument("R44: indices {i,j,k,l,m}");
            int i = idx[0], j = idx[1], k = idx[2], l = idx[3], m = idx[4];
            Complex s = det_eval({i, j}, {k, l}, e(m), cache, g) -
                        det_eval({i, j}, {k, m}, e(l), cache, g) +
                        det_eval({i, j}, {l, m}, e(k), cache, g);
            return std::abs(s);
        }
    }
    throw std::logic_error("relation_residual: unreachable");
}

// ---------------------------------------------------------------------------
// sampling and rank tests
// ---------------------------------------------------------------------------

std::vector<Eigen::VectorXcd> draw_samples(const PeriodMatrix& pm, const SamplePlan& plan,
                                           const ThetaEvalConfig& cfg) {
    const int g = pm.g();
    Uniform u(plan.seed);
    std::vector<Eigen::VectorXcd> out;
    long tried = 0;
    while (static_cast<long>(out.size()) < plan.count) {
        ++tried;
        if (tried > 64 && out.size() * 10 < static_cast<size_t>(tried))
            throw NearThetaDivisor("draw_samples: rejection rate above 90%, theta floor too "
                                   "aggressive for this tau");
        Eigen::VectorXd x(g), y(g);
        for (int j = 0; j < g; ++j) x[j] = u();
        for (int j = 0; j < g; ++j) y[j] = u();
        Eigen::VectorXcd z = x.cast<Complex>() + pm.tau() * y.cast<Complex>();
        if (std::abs(theta::theta(z, pm, cfg)) < plan.theta_floor) continue;
        out.push_back(std::move(z));
    }
    return out;
}

RankReport numerical_rank(Eigen::MatrixXcd m, double tol, long expected) {
    RankReport rep;
    rep.rows = m.rows();
    rep.cols = m.cols();
    rep.tolerance = tol;
    rep.expected = expected;
    for (long r = 0; r < m.rows(); ++r) {
        double mx = m.row(r).cwiseAbs().maxCoeff();
        if (mx > 0) m.row(r) /= mx;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    rep.singular_values.assign(sv.data(), sv.data() + sv.size());
    if (!rep.singular_values.empty()) {
        double top = rep.singular_values.front();
        for (double s : rep.singular_values)
            if (s > tol * top) ++rep.rank;
    }
    rep.pass = (rep.rank == expected) && (rep.cols == expected);
    return rep;
}

std::vector<AbelianLabel> basis_labels_g2(long n) {
    std::vector<AbelianLabel> out;
    if (n == 0) {
        out.push_back(AbelianLabel::one());
        return out;
    }
    if (n == 1) return out;  // gr_1 A = 0
    for (long r = n; r >= 0; --r)
        out.push_back(AbelianLabel::zeta({int(r), int(n - r)}));
    for (long r = n - 3; r >= 0; --r)
        out.push_back(AbelianLabel::det({1, 2}, {1, 2}, {int(r), int(n - 3 - r)}));
    return out;
}

namespace {

std::vector<MultiIndex> compositions3(long total) {
    std::vector<MultiIndex> out;
    if (total < 0) return out;
    for (long a = total; a >= 0; --a)
        for (long b = total - a; b >= 0; --b)
            out.push_back({int(a), int(b), int(total - a - b)});
    return out;
}

}  // namespace

std::vector<AbelianLabel> basis_labels_g3(long n) {
    std::vector<AbelianLabel> out;
    if (n == 0) {
        out.push_back(AbelianLabel::one());
        return out;
    }
    if (n == 1) return out;
    for (const auto& m : compositions3(n)) out.push_back(AbelianLabel::zeta(m));
    for (const auto& m : compositions3(n - 2)) out.push_back(AbelianLabel::v3(m));
    // derivatives of (12;**) only in variables 1 and 2: the third relation
    // of (42) eliminates every partial_3 derivative of them
    for (long a = n - 3; a >= 0; --a) {
        MultiIndex m{int(a), int(n - 3 - a), 0};
        out.push_back(AbelianLabel::det({1, 2}, {1, 2}, m));
        out.push_back(AbelianLabel::det({1, 2}, {1, 3}, m));
        out.push_back(AbelianLabel::det({1, 2}, {2, 3}, m));
    }
    for (const auto& m : compositions3(n - 3)) {
        out.push_back(AbelianLabel::det({1, 3}, {1, 3}, m));
        out.push_back(AbelianLabel::det({1, 3}, {2, 3}, m));
        out.push_back(AbelianLabel::det({2, 3}, {2, 3}, m));
    }
    for (const auto& m : compositions3(n - 4))
        out.push_back(AbelianLabel::det({1, 2, 3}, {1, 2, 3}, m));
    return out;
}

std::vector<AbelianLabel> cumulative_labels(long g, long n) {
    std::vector<AbelianLabel> out;
    for (long m = 0; m <= n; ++m) {
        auto part = (g == 2) ? basis_labels_g2(m) : basis_labels_g3(m);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

RankReport gr_rank_test(long g, long n, const std::vector<AbelianLabel>& labels,
                        const SamplePlan& plan, const AbelianEvaluator& ev) {
    for (const auto& l : labels)
        if (l.pole_order() > n)
            throw std::invalid_argument("gr_rank_test: label pole order exceeds n");
    SamplePlan p = plan;
    if (p.count < 2 * static_cast<long>(labels.size()))
        throw std::invalid_argument("gr_rank_test: needs count >= 2 |labels|");
    auto samples = draw_samples(ev.pm(), p, ev.cfg());
    Eigen::MatrixXcd m(static_cast<long>(samples.size()), static_cast<long>(labels.size()));
    for (long s = 0; s < m.rows(); ++s) {
        auto row = ev.evaluate_all(labels, samples[s]);
        for (long c = 0; c < m.cols(); ++c) m(s, c) = row[c];
    }
    long expected = 1;
    for (long i = 0; i < g; ++i) expected *= n;
    return numerical_rank(std::move(m), 1e-8, expected);
}

V3Selection select_v3(const PeriodMatrix& pm, const SamplePlan& plan,
                      const ThetaEvalConfig& cfg) {
    if (pm.g() != 3) throw std::invalid_argument("select_v3: requires g = 3");
    SamplePlan p = plan;
    if (p.count < 40) p.count = 40;
    auto samples = draw_samples(pm, p, cfg);
    const long S = static_cast<long>(samples.size());

    std::vector<AbelianLabel> base{AbelianLabel::one()};
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) {
            MultiIndex m(3, 0);
            m[i - 1] += 1;
            m[j - 1] += 1;
            base.push_back(AbelianLabel::zeta(m));
        }
    auto quots = theta::order_n_basis(pm, 2);

    AbelianEvaluator ev(pm, cfg, p.theta_floor);
    Eigen::MatrixXcd full(S, 7 + 8);
    for (long s = 0; s < S; ++s) {
        auto row = ev.evaluate_all(base, samples[s]);
        for (int c = 0; c < 7; ++c) full(s, c) = row[c];
        for (int c = 0; c < 8; ++c) full(s, 7 + c) = quots[c].eval(samples[s], pm, cfg);
    }
    for (long r = 0; r < S; ++r) {
        double mx = full.row(r).cwiseAbs().maxCoeff();
        if (mx > 0) full.row(r) /= mx;
    }

    // thin orthonormal basis of the span of {1, zeta_ij}
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(full.leftCols(7));
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(S, 7);

    V3Selection sel;
    for (int c = 0; c < 8; ++c) {
        Eigen::VectorXcd h = full.col(7 + c);
        double norm = h.norm();
        if (norm == 0) continue;
        double resid = (h - Q * (Q.adjoint() * h)).norm() / norm;
        if (resid > sel.orth_residual) {
            sel.orth_residual = resid;
            sel.index = c;
        }
    }
    if (sel.index < 0) throw std::logic_error("select_v3: all quotients vanished on samples");

    sel.base_rank = numerical_rank(full.leftCols(7), 1e-8, 7).rank;
    sel.combined_rank = numerical_rank(full, 1e-8, 8).rank;
    if (sel.combined_rank != 8)
        throw std::logic_error("select_v3: combined rank of A_2 candidates is not 8 "
                               "(tau or precision problem)");
    sel.v = quots[sel.index];
    return sel;
}

// ---------------------------------------------------------------------------
// pole probes
// ---------------------------------------------------------------------------

namespace {

Eigen::VectorXcd find_theta_zero(const PeriodMatrix& pm, const ThetaEvalConfig& cfg,
                                 std::uint64_t seed) {
    const int g = pm.g();
    Uniform u(seed);
    // rank candidate starts by |theta|
    std::vector<std::pair<double, Eigen::VectorXcd>> starts;
    for (int s = 0; s < 32; ++s) {
        Eigen::VectorXd x(g), y(g);
        for (int j = 0; j < g; ++j) x[j] = u();
        for (int j = 0; j < g; ++j) y[j] = u();
        Eigen::VectorXcd z = x.cast<Complex>() + pm.tau() * y.cast<Complex>();
        starts.emplace_back(std::abs(theta::theta(z, pm, cfg)), z);
    }
    std::sort(starts.begin(), starts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    for (int attempt = 0; attempt < 5; ++attempt) {
        Eigen::VectorXcd z = starts[attempt].second;
        for (int iter = 0; iter < 80; ++iter) {
            Complex tv = theta::theta(z, pm, cfg);
            if (std::abs(tv) < 1e-13) return z;
            Eigen::VectorXcd grad(g);
            for (int i = 0; i < g; ++i) {
                MultiIndex d(g, 0);
                d[i] = 1;
                grad[i] = theta::theta(z, pm, Characteristic::zero(g), d, cfg);
            }
            double den = grad.squaredNorm();
            if (den == 0) break;
            z -= tv * grad.conjugate() / den;
        }
        if (std::abs(theta::theta(z, pm, cfg)) < 1e-11) return z;
    }
    throw std::runtime_error("find_theta_zero: Newton failed to locate a theta zero; "
                             "retry with another seed");
}

}  // namespace

PoleProbe pole_order_probe(const AbelianLabel& label, const AbelianEvaluator& ev,
                           std::uint64_t seed, int order_override) {
    const int g = ev.pm().g();
    const int m = order_override >= 0 ? order_override : label.pole_order();
    PoleProbe probe;
    probe.z_theta = find_theta_zero(ev.pm(), ev.cfg(), seed);

    AbelianEvaluator near_ev = ev.with_floor(1e-14);
    Uniform u(seed ^ 0x9e3779b97f4a7c15ull);
    const double scales[3] = {1e-1, 1e-2, 1e-3};
    bool all_bounded = true;
    for (int dir = 0; dir < 3; ++dir) {
        Eigen::VectorXcd dz(g);
        for (int j = 0; j < g; ++j) dz[j] = Complex(u() - 0.5, u() - 0.5);
        dz /= dz.norm();
        double vmin = 0, vmax = 0;
        for (int si = 0; si < 3; ++si) {
            Eigen::VectorXcd z = probe.z_theta + scales[si] * dz;
            double tv = std::abs(theta::theta(z, ev.pm(), ev.cfg()));
            double fv = std::abs(near_ev.evaluate(label, z));
            double v = std::pow(tv, m) * fv;
            if (si == 0) {
                vmin = vmax = v;
            } else {
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
        }
        double ratio = vmin > 0 ? vmax / vmin : std::numeric_limits<double>::infinity();
        probe.max_ratio = std::max(probe.max_ratio, ratio);
        all_bounded &= (ratio <= 10.0);
    }
    probe.bounded = all_bounded;
    return probe;
}

// ---------------------------------------------------------------------------
// genus-1 addition formula and the bilinear identity
// ---------------------------------------------------------------------------

double frobenius_stickelberger_residual(int n, const PeriodMatrix& pm_g1,
                                        const std::vector<Complex>& zs,
                                        const ThetaEvalConfig& cfg, double floor) {
    if (pm_g1.g() != 1) throw std::invalid_argument("frobenius_stickelberger: requires g = 1");
    if (n < 2 || static_cast<int>(zs.size()) != n)
        throw std::invalid_argument("frobenius_stickelberger: needs n >= 2 points");
    const Characteristic odd = Characteristic::half(1);

    Eigen::VectorXcd zero1(1);
    zero1[0] = 0;
    const Complex dtheta0 = theta::theta(zero1, pm_g1, odd, MultiIndex{1}, cfg);

    auto sigma = [&](Complex z) {
        Eigen::VectorXcd zv(1);
        zv[0] = z;
        Complex v = theta::theta(zv, pm_g1, odd, MultiIndex{0}, cfg) / dtheta0;
        if (std::abs(v) < floor)
            throw NearThetaDivisor("frobenius_stickelberger: configuration too close to "
                                   "the lattice");
        return v;
    };

    // wp^(k)(z) = -(d/dz)^{k+2} log sigma-hat(z)
    auto wp_deriv = [&](Complex z, int k) {
        Eigen::VectorXcd zv(1);
        zv[0] = z;
        LogThetaCache cache(zv, pm_g1, odd, cfg, floor * std::abs(dtheta0));
        return -cache.zeta(MultiIndex{k + 2});
    };

    Complex zsum = 0;
    for (auto z : zs) zsum += z;
    Complex lhs_num = sigma(zsum);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) lhs_num *= sigma(zs[i] - zs[j]);
    Complex lhs_den = 1;
    for (auto z : zs) lhs_den *= std::pow(sigma(z), n);
    double pref_sign = (((n - 1) * (n - 2) / 2) & 1) ? -1.0 : 1.0;
    double pref = pref_sign;
    for (int k = 1; k <= n - 1; ++k)
        for (int i = 2; i <= k; ++i) pref *= i;
    Complex lhs = pref * lhs_num / lhs_den;

    Eigen::MatrixXcd det(n, n);
    for (int c = 0; c < n; ++c) det(0, c) = 1;
    for (int r = 1; r < n; ++r)
        for (int c = 0; c < n; ++c) det(r, c) = wp_deriv(zs[c], r - 1);
    Complex rhs = det.determinant();

    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs));
}

double hirota4_residual(const Eigen::VectorXcd& z, const PeriodMatrix& pm, int j,
                        const ThetaEvalConfig& cfg, double theta_floor) {
    const int g = pm.g();
    if (j < 1 || j > g) throw std::invalid_argument("hirota4_residual: direction out of range");
    LogThetaCache cache(z, pm, Characteristic::zero(g), cfg, theta_floor);
    auto d = [&](int order) {
        MultiIndex m(g, 0);
        m[j - 1] = order;
        return m;
    };
    const Complex th = cache.theta_value();
    const Complex t1 = cache.theta_deriv(d(1));
    const Complex t2 = cache.theta_deriv(d(2));
    const Complex t3 = cache.theta_deriv(d(3));
    const Complex t4 = cache.theta_deriv(d(4));
    const Complex lhs = 2.0 * (t4 * th - 4.0 * t3 * t1 + 3.0 * t2 * t2) / (th * th);
    const Complex z2 = cache.zeta(d(2));
    const Complex z4 = cache.zeta(d(4));
    const Complex rhs = 2.0 * (z4 + 6.0 * z2 * z2);
    return std::abs(lhs - rhs);
}

}  // namespace abelfun::abelian
