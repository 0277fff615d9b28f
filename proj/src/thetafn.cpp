#include "abelfun/thetafn.hpp"

#include <cmath>
#include <numbers>

namespace abelfun::theta {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// Tail of the lattice sum past sup-norm radius R around the stationary
// point: shell count times Gaussian bound times derivative factor.
double tail_bound(int g, double lambda_min, int deriv_order, double center_norm, int R,
                  double stop_below) {
    double tail = 0;
    for (int s = R + 1; s <= R + 400; ++s) {
        double shell = std::pow(2.0 * s + 1, g) - std::pow(2.0 * s - 1, g);
        double m = s - 0.5;
        double term = shell * std::exp(-kPi * lambda_min * m * m);
        if (deriv_order > 0)
            term *= std::pow(2.0 * kPi * (s + 0.5 + center_norm), deriv_order);
        tail += term;
        if (term < stop_below) break;
    }
    return tail;
}

int radius_for(const PeriodMatrix& pm, int deriv_order, double target, double center_norm,
               int max_radius) {
    for (int R = 1; R <= max_radius; ++R) {
        if (tail_bound(pm.g(), pm.lambda_min(), deriv_order, center_norm, R, target * 1e-6)
            <= target)
            return R;
    }
    throw RadiusCapError("truncation radius exceeds the configured cap (Im tau too small "
                         "for the requested precision)");
}

}  // namespace

PeriodMatrix PeriodMatrix::create(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw std::invalid_argument("PeriodMatrix: tau must be square and nonempty");
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("PeriodMatrix: tau is not symmetric (beyond 1e-12)");
    PeriodMatrix pm;
    pm.tau_ = 0.5 * (m + m.transpose());
    pm.im_ = pm.tau_.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pm.im_);
    pm.lambda_min_ = es.eigenvalues().minCoeff();
    if (pm.lambda_min_ <= 0)
        throw std::invalid_argument("PeriodMatrix: Im tau is not positive definite");
    pm.im_inv_ = pm.im_.inverse();
    return pm;
}

int truncation_radius(const PeriodMatrix& pm, int deriv_order, double target_abs_error,
                      int max_radius) {
    return radius_for(pm, deriv_order, target_abs_error, 0.5, max_radius);
}

Complex theta(const Eigen::VectorXcd& z, const PeriodMatrix& pm, const Characteristic& chr,
              const MultiIndex& deriv, const ThetaEvalConfig& cfg) {
    const int g = pm.g();
    if (z.size() != g || chr.a.size() != g || chr.b.size() != g ||
        static_cast<int>(deriv.size()) != g)
        throw std::invalid_argument("theta: dimension mismatch");
    const int ord = multi_total(deriv);
    if (ord > cfg.max_deriv_order)
        throw std::invalid_argument("theta: derivative order exceeds max_deriv_order");

    // center the box at the stationary point of the Gaussian factor
    const Eigen::VectorXd c = -pm.im_inv() * z.imag();
    const double prefactor = std::exp(kPi * c.dot(pm.im() * c));
    const double cnorm = c.size() ? c.cwiseAbs().maxCoeff() : 0.0;

    int R = cfg.radius_override > 0
                ? cfg.radius_override
                : radius_for(pm, ord, cfg.target_abs_error / std::max(prefactor, 1e-300),
                             cnorm + 0.5, cfg.max_radius);

    Eigen::VectorXi ctr(g);
    for (int j = 0; j < g; ++j) ctr[j] = static_cast<int>(std::lround(c[j] - chr.a[j]));

    const Eigen::VectorXcd zb = z + chr.b.cast<Complex>();
    Complex sum = 0;
    std::vector<int> ofs(g, -R);
    Eigen::VectorXd w(g);
    while (true) {
        for (int j = 0; j < g; ++j) w[j] = ctr[j] + ofs[j] + chr.a[j];
        // pi i w^T tau w + 2 pi i w^T (z + b)
        Complex quad = 0;
        for (int j = 0; j < g; ++j) {
            Complex row = 0;
            for (int k = 0; k < g; ++k) row += pm.tau()(j, k) * w[k];
            quad += w[j] * row;
        }
        Complex expo = kI * kPi * quad;
        for (int j = 0; j < g; ++j) expo += 2.0 * kPi * kI * w[j] * zb[j];
        Complex term = std::exp(expo);
        for (int j = 0; j < g; ++j)
            for (int e = 0; e < deriv[j]; ++e) term *= 2.0 * kPi * kI * w[j];
        sum += term;

        int j = g - 1;
        while (j >= 0 && ofs[j] == R) ofs[j--] = -R;
        if (j < 0) break;
        ++ofs[j];
    }
    return sum;
}

Complex theta(const Eigen::VectorXcd& z, const PeriodMatrix& pm, const ThetaEvalConfig& cfg) {
    return theta(z, pm, Characteristic::zero(pm.g()), MultiIndex(pm.g(), 0), cfg);
}

double quasiperiodicity_residual(const Eigen::VectorXcd& z, const Eigen::VectorXi& p,
                                 const Eigen::VectorXi& q, const PeriodMatrix& pm,
                                 const ThetaEvalConfig& cfg) {
    const Eigen::VectorXcd pc = p.cast<Complex>();
    const Eigen::VectorXcd shifted = z + pm.tau() * pc + q.cast<Complex>();
    const Complex lhs = theta(shifted, pm, cfg);
    const Complex base = theta(z, pm, cfg);
    const Complex factor =
        std::exp(-kPi * kI * (pc.transpose() * pm.tau() * pc)(0) - 2.0 * kPi * kI * pc.dot(z));
    // both sides can reach e^{pi p^T Im(tau) p} in magnitude, far beyond what
    // an absolute comparison in doubles can resolve, so the scale of the
    // compared values joins the denominator
    return std::abs(lhs - factor * base) /
           (1.0 + std::abs(base) + std::max(std::abs(lhs), std::abs(factor * base)));
}

Complex OrderNQuotient::eval(const Eigen::VectorXcd& z, const PeriodMatrix& pm,
                             const ThetaEvalConfig& cfg, const MultiIndex* numerator_deriv) const {
    const int g = pm.g();
    Complex num;
    if (numerator_deriv) {
        num = theta(Eigen::VectorXcd(double(n) * z), pm_scaled, chr, *numerator_deriv, cfg);
        // chain rule for the argument scaling
        num *= std::pow(double(n), multi_total(*numerator_deriv));
    } else {
        num = theta(Eigen::VectorXcd(double(n) * z), pm_scaled, chr, MultiIndex(g, 0), cfg);
    }
    const Complex den = theta(z, pm, cfg);
    return num / std::pow(den, n);
}

double OrderNQuotient::invariance_residual(const Eigen::VectorXcd& z, const Eigen::VectorXi& p,
                                           const Eigen::VectorXi& q, const PeriodMatrix& pm,
                                           const ThetaEvalConfig& cfg) const {
    const Eigen::VectorXcd shifted = z + pm.tau() * p.cast<Complex>() + q.cast<Complex>();
    const Complex a = eval(shifted, pm, cfg);
    const Complex b = eval(z, pm, cfg);
    return std::abs(a - b) / (1.0 + std::abs(b));
}

std::vector<OrderNQuotient> order_n_basis(const PeriodMatrix& pm, int n) {
    if (n < 1) throw std::invalid_argument("order_n_basis: requires n >= 1");
    const int g = pm.g();
    PeriodMatrix scaled = PeriodMatrix::create(double(n) * pm.tau());
    std::vector<OrderNQuotient> out;
    std::vector<int> digits(g, 0);
    while (true) {
        OrderNQuotient f;
        f.n = n;
        f.digits = digits;
        f.pm_scaled = scaled;
        Eigen::VectorXd a(g);
        for (int j = 0; j < g; ++j) a[j] = double(digits[j]) / n;
        f.chr = Characteristic{a, Eigen::VectorXd::Zero(g)};
        out.push_back(std::move(f));

        int j = g - 1;
        while (j >= 0 && digits[j] == n - 1) digits[j--] = 0;
        if (j < 0) break;
        ++digits[j];
    }
    return out;
}

}  // namespace abelfun::theta
