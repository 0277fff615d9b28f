#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

// Riemann theta functions with real characteristics and term-wise
// derivatives, summed over a lattice box centered at the stationary point of
// the Gaussian factor, with a certified tail bound choosing the radius.
namespace abelfun::theta {

using Complex = std::complex<double>;

struct RadiusCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// tau symmetric (within 1e-12, then symmetrized) with positive definite
// imaginary part; both conditions checked on construction.
class PeriodMatrix {
public:
    // A default-constructed PeriodMatrix is empty (g() == 0) and only valid
    // as an assignment target; create() is the checked entry point.
    PeriodMatrix() = default;
    static PeriodMatrix create(const Eigen::MatrixXcd& m);

    int g() const { return static_cast<int>(tau_.rows()); }
    const Eigen::MatrixXcd& tau() const { return tau_; }
    const Eigen::MatrixXd& im() const { return im_; }
    const Eigen::MatrixXd& im_inv() const { return im_inv_; }
    double lambda_min() const { return lambda_min_; }

private:
    Eigen::MatrixXcd tau_;
    Eigen::MatrixXd im_, im_inv_;
    double lambda_min_ = 0;
};

struct Characteristic {
    Eigen::VectorXd a, b;
    static Characteristic zero(int g) {
        return {Eigen::VectorXd::Zero(g), Eigen::VectorXd::Zero(g)};
    }
    // a = b = (1/2, ..., 1/2); for g = 1 this is the odd theta
    static Characteristic half(int g) {
        return {Eigen::VectorXd::Constant(g, 0.5), Eigen::VectorXd::Constant(g, 0.5)};
    }
};

// derivative orders per variable
using MultiIndex = std::vector<int>;

inline int multi_total(const MultiIndex& m) {
    int s = 0;
    for (int e : m) s += e;
    return s;
}

struct ThetaEvalConfig {
    double target_abs_error = 1e-12;
    int max_radius = 40;
    int max_deriv_order = 8;
    // test hook: force the summation radius instead of the tail bound
    int radius_override = 0;
};

// Smallest box radius R whose tail bound (union bound over sup-norm shells,
// Gaussian factor via lambda_min(Im tau), polynomial derivative factor)
// drops below target_abs_error. Throws RadiusCapError past max_radius.
int truncation_radius(const PeriodMatrix& pm, int deriv_order, double target_abs_error,
                      int max_radius = 40);

// partial^deriv theta[chr](z | tau), absolute truncation error below
// cfg.target_abs_error. Summation order is fixed, so results are
// deterministic for a fixed config.
Complex theta(const Eigen::VectorXcd& z, const PeriodMatrix& pm, const Characteristic& chr,
              const MultiIndex& deriv, const ThetaEvalConfig& cfg);

// zero characteristic, no derivative
Complex theta(const Eigen::VectorXcd& z, const PeriodMatrix& pm, const ThetaEvalConfig& cfg);

// |theta(z + tau p + q) - exp(-pi i p^T tau p - 2 pi i p^T z) theta(z)|
// normalized by 1 + |theta(z)|; zero characteristic.
double quasiperiodicity_residual(const Eigen::VectorXcd& z, const Eigen::VectorXi& p,
                                 const Eigen::VectorXi& q, const PeriodMatrix& pm,
                                 const ThetaEvalConfig& cfg);

// One element theta[a/n, 0](n z | n tau) / theta(z)^n of the order-n basis
// of A_n; fully invariant under z -> z + tau p + q.
struct OrderNQuotient {
    int n = 1;
    std::vector<int> digits;  // a, entries in 0..n-1
    PeriodMatrix pm_scaled;   // n tau
    Characteristic chr;       // [a/n, 0]

    Complex eval(const Eigen::VectorXcd& z, const PeriodMatrix& pm,
                 const ThetaEvalConfig& cfg, const MultiIndex* numerator_deriv = nullptr) const;
    double invariance_residual(const Eigen::VectorXcd& z, const Eigen::VectorXi& p,
                               const Eigen::VectorXi& q, const PeriodMatrix& pm,
                               const ThetaEvalConfig& cfg) const;
};

// all n^g quotients, digit vectors in lexicographic order
std::vector<OrderNQuotient> order_n_basis(const PeriodMatrix& pm, int n);

}  // namespace abelfun::theta
