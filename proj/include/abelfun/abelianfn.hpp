#pragma once

#include "abelfun/thetafn.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

// The abelian functions built from logarithmic derivatives of theta:
// zeta multi-derivatives, the determinant functions (I;J), order-n theta
// quotients and the extra genus-3 generator v, together with their
// relations, pole-order probes and the sampled-matrix rank certification of
// the explicit bases for genus 2 and 3.
namespace abelfun::abelian {

using theta::Characteristic;
using theta::Complex;
using theta::MultiIndex;
using theta::PeriodMatrix;
using theta::ThetaEvalConfig;

struct NearThetaDivisor : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Memoized theta derivatives and log-theta derivatives at a single point.
// partial^gamma zeta_i is obtained from the Leibniz identity
//   theta * partial^gamma zeta_i
//     = partial^gamma theta_i - sum_{0 < beta <= gamma} C(gamma,beta)
//       partial^beta theta * partial^{gamma-beta} zeta_i.
class LogThetaCache {
public:
    LogThetaCache(Eigen::VectorXcd z, const PeriodMatrix& pm, Characteristic chr,
                  const ThetaEvalConfig& cfg, double theta_floor);

    Complex theta_value();               // theta[chr](z)
    Complex theta_deriv(const MultiIndex& m);
    Complex zeta(const MultiIndex& multi);  // |multi| >= 1
    const Eigen::VectorXcd& z() const { return z_; }

private:
    Complex zeta_rec(int i, const MultiIndex& gamma);

    Eigen::VectorXcd z_;
    const PeriodMatrix& pm_;
    Characteristic chr_;
    const ThetaEvalConfig& cfg_;
    double floor_;
    std::map<MultiIndex, Complex> theta_;
    std::map<std::pair<int, MultiIndex>, Complex> zeta_;
    std::optional<Complex> theta0_;
};

// Symbolic name of one abelian function.
struct AbelianLabel {
    enum class Kind { One, Zeta, Det, OrderNQuotient, V3Element };
    Kind kind = Kind::One;
    MultiIndex multi;        // Zeta: the full derivative multi-index of log theta
    std::vector<int> I, J;   // Det: row/column indices, 1-based
    MultiIndex derivs;       // Det, V3Element: outer derivatives
    int order = 0;           // OrderNQuotient
    std::vector<int> digits; // OrderNQuotient

    static AbelianLabel one();
    static AbelianLabel zeta(MultiIndex multi);
    static AbelianLabel det(std::vector<int> I, std::vector<int> J, MultiIndex derivs);
    static AbelianLabel order_n(int n, std::vector<int> digits);
    static AbelianLabel v3(MultiIndex derivs);

    // One: 0; Zeta: |multi|; Det: |I| + 1 + |derivs|; OrderNQuotient: n;
    // V3Element: 2 + |derivs|.
    int pole_order() const;
    std::string name() const;
};

// Evaluates labels at points; holds the period matrix, the evaluation
// config, the pole-proximity floor, and (for genus 3) the selected v.
class AbelianEvaluator {
public:
    AbelianEvaluator(PeriodMatrix pm, ThetaEvalConfig cfg, double theta_floor = 1e-2);

    void set_v3(theta::OrderNQuotient v) { v3_ = std::move(v); }
    const std::optional<theta::OrderNQuotient>& v3() const { return v3_; }
    AbelianEvaluator with_floor(double f) const;

    Complex evaluate(const AbelianLabel& label, const Eigen::VectorXcd& z) const;
    std::vector<Complex> evaluate_all(const std::vector<AbelianLabel>& labels,
                                      const Eigen::VectorXcd& z) const;

    const PeriodMatrix& pm() const { return pm_; }
    const ThetaEvalConfig& cfg() const { return cfg_; }
    double theta_floor() const { return floor_; }

private:
    Complex eval_one(const AbelianLabel& label, LogThetaCache& cache,
                     const Eigen::VectorXcd& z) const;

    PeriodMatrix pm_;
    ThetaEvalConfig cfg_;
    double floor_;
    std::optional<theta::OrderNQuotient> v3_;
};

// partial^multi log theta at z (|multi| >= 1).
Complex zeta_multi(const MultiIndex& multi, const Eigen::VectorXcd& z, const PeriodMatrix& pm,
                   const ThetaEvalConfig& cfg, double theta_floor = 1e-2);

// partial^derivs det(zeta_{I_k J_l}) at z, by Leibniz expansion of the
// permutation sum into mixed-order zeta blocks.
Complex det_IJ(const std::vector<int>& I, const std::vector<int>& J, const MultiIndex& derivs,
               const Eigen::VectorXcd& z, const PeriodMatrix& pm, const ThetaEvalConfig& cfg,
               double theta_floor = 1e-2);

enum class RelationKind { R41, R43, R44 };

// R41 (g >= 4), indices {i1,j1,j2,j3}:
//   (i1 j1; j2 j3) - (i1 j2; j1 j3) + (i1 j3; j1 j2)
// R43, indices {i,j,k}: partial_k zeta_ij - partial_j zeta_ik
// R44, indices {i,j,k,l,m}:
//   partial_m (ij;kl) - partial_l (ij;km) + partial_k (ij;lm)
double relation_residual(RelationKind kind, const std::vector<int>& indices,
                         const Eigen::VectorXcd& z, const AbelianEvaluator& ev);

// Deterministic sampling of z = x + tau y, x, y uniform in [0,1)^g, with
// rejection below the theta floor.
struct SamplePlan {
    std::uint64_t seed = 20240801;
    long count = 0;
    double theta_floor = 1e-2;
};

std::vector<Eigen::VectorXcd> draw_samples(const PeriodMatrix& pm, const SamplePlan& plan,
                                           const ThetaEvalConfig& cfg);

struct RankReport {
    long rows = 0, cols = 0;
    std::vector<double> singular_values;  // descending
    double tolerance = 1e-8;              // relative to the leading value
    long rank = 0;
    long expected = 0;
    bool pass = false;
};

// Numerical rank of the sampled value matrix after scaling every row to unit
// max magnitude; rank = number of singular values above tol * sigma_max.
RankReport numerical_rank(Eigen::MatrixXcd m, double tol, long expected);

// The genus-2 basis of gr_n A: zeta_{1^r 2^s} (r+s = n) and
// (12;12)_{1^r' 2^s'} (r'+s' = n-3); 2n-1 labels for n >= 2.
std::vector<AbelianLabel> basis_labels_g2(long n);
// The genus-3 families: zeta (sum n), v-derivatives (sum n-2), (12;**) with
// derivatives in variables 1,2 only (sum n-3), the (13;13)/(13;23)/(23;23)
// family (sum n-3), and (123;123) (sum n-4); 3n^2-3n+1 labels for n >= 2.
std::vector<AbelianLabel> basis_labels_g3(long n);
// Union over m <= n; the candidate basis of A_n. Counts are n^2 resp. n^3.
std::vector<AbelianLabel> cumulative_labels(long g, long n);

// Sampled-matrix rank test of a cumulative label set against dim A_n = n^g.
RankReport gr_rank_test(long g, long n, const std::vector<AbelianLabel>& labels,
                        const SamplePlan& plan, const AbelianEvaluator& ev);

struct V3Selection {
    theta::OrderNQuotient v;
    int index = -1;          // position in the order-2 basis
    double orth_residual = 0;  // normalized component outside span{1, zeta_ij}
    long base_rank = 0;      // rank of {1, zeta_ij}: expected 7
    long combined_rank = 0;  // rank with the 8 quotients: expected 8 = dim A_2
};

// Picks the order-2 quotient with the largest component orthogonal to
// span{1, zeta_ij} in the sampled-value space; throws if the combined rank
// is not 8.
V3Selection select_v3(const PeriodMatrix& pm, const SamplePlan& plan,
                      const ThetaEvalConfig& cfg);

struct PoleProbe {
    bool bounded = false;
    double max_ratio = 0;    // worst max/min of |theta^m f| over the probe path
    Eigen::VectorXcd z_theta;
};

// Walks z = z_Theta + s u for s in {1e-1, 1e-2, 1e-3} and three seeded
// directions u, where z_Theta is a Newton-refined zero of theta; bounded
// means |theta(z)^m f(z)| stays within a factor 10 along every direction,
// with m the label's pole order (or order_override when >= 0).
PoleProbe pole_order_probe(const AbelianLabel& label, const AbelianEvaluator& ev,
                           std::uint64_t seed, int order_override = -1);

// Relative residual of the genus-1 addition formula at z_1..z_n, sigma
// realized as theta[1/2,1/2](z)/theta'[1/2,1/2](0) and p as minus the second
// logarithmic derivative; the exponential normalization of sigma cancels on
// the left and the additive constant of p drops out of the determinant.
double frobenius_stickelberger_residual(int n, const PeriodMatrix& pm_g1,
                                        const std::vector<Complex>& zs,
                                        const ThetaEvalConfig& cfg, double floor = 1e-3);

// Residual of D_j^4 theta.theta / theta^2 = 2(partial_j^4 log theta
// + 6 (partial_j^2 log theta)^2) with D_j^4 theta.theta expanded as
// 2(theta_jjjj theta - 4 theta_jjj theta_j + 3 theta_jj^2).
double hirota4_residual(const Eigen::VectorXcd& z, const PeriodMatrix& pm, int j,
                        const ThetaEvalConfig& cfg, double theta_floor = 1e-2);

}  // namespace abelfun::abelian
