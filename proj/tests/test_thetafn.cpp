#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abelfun/thetafn.hpp"

#include <random>

using namespace abelfun::theta;

namespace {

const ThetaEvalConfig kCfg{};

Eigen::MatrixXcd tau_g1() {
    Eigen::MatrixXcd t(1, 1);
    t(0, 0) = Complex(0, 1);
    return t;
}

Eigen::MatrixXcd tau_g2() {
    Eigen::MatrixXcd t(2, 2);
    t(0, 0) = Complex(0.10, 1.0);
    t(0, 1) = Complex(0.05, 0.5);
    t(1, 0) = Complex(0.05, 0.5);
    t(1, 1) = Complex(-0.10, 2.0);
    return t;
}

Eigen::MatrixXcd tau_g3() {
    Eigen::MatrixXcd t(3, 3);
    t.setZero();
    double im[3][3] = {{1.0, 0.30, 0.20}, {0.30, 1.5, 0.25}, {0.20, 0.25, 2.0}};
    double re[3][3] = {{0.10, 0.02, 0.03}, {0.02, -0.05, 0.04}, {0.03, 0.04, 0.08}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = Complex(re[i][j], im[i][j]);
    return t;
}

Eigen::MatrixXcd tau_g4() {
    Eigen::MatrixXcd t(4, 4);
    t.setZero();
    for (int i = 0; i < 4; ++i) t(i, i) = Complex(0.05 * i, 1.0 + 0.4 * i);
    for (int i = 0; i < 3; ++i) {
        t(i, i + 1) = Complex(0.02, 0.3);
        t(i + 1, i) = Complex(0.02, 0.3);
    }
    return t;
}

// deterministic uniforms in [0,1)
struct Uniform {
    std::mt19937_64 rng;
    explicit Uniform(std::uint64_t seed) : rng(seed) {}
    double operator()() { return double(rng() >> 11) * 0x1.0p-53; }
};

Eigen::VectorXcd random_z(const PeriodMatrix& pm, Uniform& u) {
    const int g = pm.g();
    Eigen::VectorXcd x(g);
    for (int j = 0; j < g; ++j) {
        Complex zj(u(), 0);
        for (int k = 0; k < g; ++k) zj += pm.tau()(j, k) * u();
        x[j] = zj;
    }
    return x;
}

}  // namespace

TEST_CASE("period matrix validation") {
    CHECK_NOTHROW(PeriodMatrix::create(tau_g2()));
    Eigen::MatrixXcd bad = tau_g2();
    bad(0, 1) += Complex(1e-6, 0);  // breaks symmetry beyond tolerance
    CHECK_THROWS_AS((void)PeriodMatrix::create(bad), std::invalid_argument);
    Eigen::MatrixXcd neg(1, 1);
    neg(0, 0) = Complex(0, -1);
    CHECK_THROWS_AS((void)PeriodMatrix::create(neg), std::invalid_argument);
    // tiny asymmetry is absorbed
    Eigen::MatrixXcd nearly = tau_g2();
    nearly(0, 1) += Complex(1e-14, 0);
    CHECK_NOTHROW(PeriodMatrix::create(nearly));
}

TEST_CASE("g = 1 value against independent direct summation") {
    auto pm = PeriodMatrix::create(tau_g1());
    Eigen::VectorXcd z(1);
    z[0] = 0;
    Complex v = theta(z, pm, kCfg);
    // oracle: plain sum over |n| <= 30 of exp(-pi n^2)
    double oracle = 0;
    for (int n = -30; n <= 30; ++n) oracle += std::exp(-M_PI * double(n) * double(n));
    CHECK(std::abs(v - Complex(oracle, 0)) < 1e-12);
    CHECK(v.real() == doctest::Approx(1.0864348112).epsilon(1e-9));
}

TEST_CASE("odd half characteristic vanishes at the origin") {
    for (auto tau : {tau_g1()}) {
        auto pm = PeriodMatrix::create(tau);
        Eigen::VectorXcd z = Eigen::VectorXcd::Zero(pm.g());
        Complex v = theta(z, pm, Characteristic::half(pm.g()), MultiIndex(pm.g(), 0), kCfg);
        CHECK(std::abs(v) < 1e-12);
    }
}

TEST_CASE("evenness at random points") {
    Uniform u(11);
    for (auto tau : {tau_g1(), tau_g2(), tau_g3()}) {
        auto pm = PeriodMatrix::create(tau);
        for (int rep = 0; rep < 20; ++rep) {
            auto z = random_z(pm, u);
            Complex a = theta(z, pm, kCfg);
            Complex b = theta(Eigen::VectorXcd(-z), pm, kCfg);
            CHECK(std::abs(a - b) < 1e-10);
        }
    }
}

TEST_CASE("quasi-periodicity for g = 1..4") {
    Uniform u(12);
    std::vector<Eigen::MatrixXcd> taus{tau_g1(), tau_g2(), tau_g3(), tau_g4()};
    for (const auto& tau : taus) {
        auto pm = PeriodMatrix::create(tau);
        const int g = pm.g();
        for (int rep = 0; rep < 20; ++rep) {
            auto z = random_z(pm, u);
            Eigen::VectorXi p(g), q(g);
            for (int j = 0; j < g; ++j) {
                p[j] = int(u() * 5) - 2;  // entries in -2..2
                q[j] = int(u() * 5) - 2;
            }
            CHECK(quasiperiodicity_residual(z, p, q, pm, kCfg) < 1e-9);
        }
        // the canonical generators explicitly
        Eigen::VectorXi e1 = Eigen::VectorXi::Zero(g), zero = Eigen::VectorXi::Zero(g);
        e1[0] = 1;
        auto z = random_z(pm, u);
        CHECK(quasiperiodicity_residual(z, e1, zero, pm, kCfg) < 1e-9);
        CHECK(quasiperiodicity_residual(z, zero, e1, pm, kCfg) < 1e-9);
        CHECK(quasiperiodicity_residual(z, zero, zero, pm, kCfg) == 0.0);
    }
}

TEST_CASE("series derivative vs central finite difference") {
    Uniform u(13);
    const double h = 1e-5;
    for (auto tau : {tau_g1(), tau_g2(), tau_g3()}) {
        auto pm = PeriodMatrix::create(tau);
        const int g = pm.g();
        for (int rep = 0; rep < 20; ++rep) {
            auto z = random_z(pm, u);
            int i = int(u() * g);
            MultiIndex d(g, 0);
            d[i] = 1;
            Complex series = theta(z, pm, Characteristic::zero(g), d, kCfg);
            Eigen::VectorXcd zp = z, zm = z;
            zp[i] += h;
            zm[i] -= h;
            Complex fd = (theta(zp, pm, kCfg) - theta(zm, pm, kCfg)) / (2 * h);
            CHECK(std::abs(series - fd) / (1.0 + std::abs(series)) < 1e-6);
        }
    }
}

TEST_CASE("doubling the radius moves nothing beyond the error target") {
    Uniform u(14);
    for (auto tau : {tau_g1(), tau_g2(), tau_g3(), tau_g4()}) {
        auto pm = PeriodMatrix::create(tau);
        const int g = pm.g();
        int R = truncation_radius(pm, 0, kCfg.target_abs_error);
        ThetaEvalConfig wide = kCfg;
        wide.radius_override = 2 * R;
        for (int rep = 0; rep < 5; ++rep) {
            auto z = random_z(pm, u);
            Complex a = theta(z, pm, kCfg);
            Complex b = theta(z, pm, wide);
            CHECK(std::abs(a - b) <= kCfg.target_abs_error);
        }
    }
}

TEST_CASE("truncation radius bound") {
    auto pm = PeriodMatrix::create(tau_g1());
    int r0 = truncation_radius(pm, 0, 1e-12);
    CHECK(r0 <= 4);
    // more derivatives never shrink the radius
    int prev = r0;
    for (int ord = 1; ord <= 6; ++ord) {
        int r = truncation_radius(pm, ord, 1e-12);
        CHECK(r >= prev);
        prev = r;
    }
    // nearly degenerate tau exceeds the cap
    Eigen::MatrixXcd thin(1, 1);
    thin(0, 0) = Complex(0, 1e-4);
    auto pm_thin = PeriodMatrix::create(thin);
    CHECK_THROWS_AS((void)truncation_radius(pm_thin, 0, 1e-12, 40), RadiusCapError);
}

TEST_CASE("order-n quotients are invariant under the lattice") {
    Uniform u(15);
    auto pm = PeriodMatrix::create(tau_g2());
    for (int n : {1, 2, 3}) {
        auto basis = order_n_basis(pm, n);
        CHECK(basis.size() == size_t(std::pow(n, pm.g())));
        auto z = random_z(pm, u);
        Eigen::VectorXi p(2), q(2);
        p << 1, -1;
        q << 0, 2;
        for (const auto& f : basis) CHECK(f.invariance_residual(z, p, q, pm, kCfg) < 1e-8);
    }
    // n = 1: the single quotient is the constant 1
    auto one = order_n_basis(pm, 1);
    REQUIRE(one.size() == 1);
    auto z = random_z(pm, u);
    CHECK(std::abs(one[0].eval(z, pm, kCfg) - Complex(1, 0)) < 1e-10);
}
