#pragma once

#include "abelfun/thetafn.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace abelfun::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything the verification suites need: seeds, tolerances, tau matrices
// per genus, and the per-suite degree cutoffs. String keys in the JSON file
// mirror the field names; tau matrices are nested arrays of [re, im] pairs,
// a list of matrices per genus (extra entries serve as alternate tau values,
// e.g. for the addition-formula checks).
struct WorkbenchConfig {
    std::uint64_t seed = 20240801;
    double theta_target_abs_error = 1e-12;
    int theta_max_radius = 40;
    int max_deriv_order = 8;
    double rank_tolerance = 1e-8;
    double theta_floor = 1e-2;
    long sample_margin = 8;  // samples = 2 * labels + margin

    std::vector<int> genus{1, 2, 3, 4};
    std::map<int, std::vector<Eigen::MatrixXcd>> tau;

    long char_g_max = 12;
    long euler_g_max = 6;
    long ext_g_max = 6;
    std::map<long, long> slice_t_max{{2, 8}, {3, 6}, {4, 4}};
    long g2_basis_n_max = 5;
    long g3_basis_n_max = 3;

    std::vector<std::string> suites{"characters", "exterior", "complex", "theta", "abelian"};

    static WorkbenchConfig defaults();
    // throws ConfigError with the offending key in the message
    static WorkbenchConfig from_json(const nlohmann::json& j);
    static WorkbenchConfig load_file(const std::string& path);
    nlohmann::json to_json() const;

    theta::ThetaEvalConfig theta_cfg() const;
    // idx-th tau for genus g; throws ConfigError when missing
    const Eigen::MatrixXcd& tau_for(int g, size_t idx = 0) const;
    bool has_tau(int g, size_t idx = 0) const;
};

}  // namespace abelfun::cli
