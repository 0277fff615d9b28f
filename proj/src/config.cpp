#include "abelfun/config.hpp"

#include <fstream>

namespace abelfun::cli {

namespace {

using Complex = std::complex<double>;

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw ConfigError(where + ": expected a nonempty array of rows");
    const size_t n = j.size();
    Eigen::MatrixXcd m(n, n);
    for (size_t r = 0; r < n; ++r) {
        const auto& row = j.at(r);
        if (!row.is_array() || row.size() != n)
            throw ConfigError(where + ": row " + std::to_string(r) + " must have " +
                              std::to_string(n) + " entries");
        for (size_t c = 0; c < n; ++c) {
            const auto& e = row.at(c);
            if (!e.is_array() || e.size() != 2)
                throw ConfigError(where + ": entry (" + std::to_string(r) + "," +
                                  std::to_string(c) + ") must be a [re, im] pair");
            m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (long r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (long c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd default_tau(int g) {
    Eigen::MatrixXcd t(g, g);
    t.setZero();
    switch (g) {
        case 1:
            t(0, 0) = Complex(0, 1);
            break;
        case 2:
            t(0, 0) = Complex(0.10, 1.0);
            t(0, 1) = t(1, 0) = Complex(0.05, 0.5);
            t(1, 1) = Complex(-0.10, 2.0);
            break;
        case 3: {
            double im[3][3] = {{1.0, 0.30, 0.20}, {0.30, 1.5, 0.25}, {0.20, 0.25, 2.0}};
            double re[3][3] = {{0.10, 0.02, 0.03}, {0.02, -0.05, 0.04}, {0.03, 0.04, 0.08}};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) t(i, j) = Complex(re[i][j], im[i][j]);
            break;
        }
        case 4:
            for (int i = 0; i < 4; ++i) t(i, i) = Complex(0.05 * i, 1.0 + 0.4 * i);
            for (int i = 0; i < 3; ++i) t(i, i + 1) = t(i + 1, i) = Complex(0.02, 0.3);
            break;
        default:
            throw ConfigError("no default tau for genus " + std::to_string(g));
    }
    return t;
}

void validate(const WorkbenchConfig& c) {
    if (c.theta_target_abs_error <= 0 || c.theta_target_abs_error >= 1)
        throw ConfigError("theta_target_abs_error: must be in (0, 1)");
    if (c.rank_tolerance <= 0) throw ConfigError("rank_tolerance: must be positive");
    if (c.theta_floor <= 0) throw ConfigError("theta_floor: must be positive");
    if (c.theta_max_radius < 1) throw ConfigError("theta_max_radius: must be >= 1");
    if (c.max_deriv_order < 4) throw ConfigError("max_deriv_order: must be >= 4");
    // cutoffs the dense exact machinery is sized for
    static const std::map<long, long> kSliceCap{{2, 10}, {3, 7}, {4, 5}};
    for (const auto& [g, t] : c.slice_t_max) {
        auto cap = kSliceCap.find(g);
        if (cap == kSliceCap.end())
            throw ConfigError("slice_t_max: unsupported genus " + std::to_string(g));
        if (t > cap->second)
            throw ConfigError("slice_t_max[" + std::to_string(g) + "]: beyond the safe range");
    }
    if (c.char_g_max < 5 || c.char_g_max > 60)
        throw ConfigError("char_g_max: must be in [5, 60]");
    if (c.ext_g_max < 2 || c.ext_g_max > 7) throw ConfigError("ext_g_max: must be in [2, 7]");
    if (c.g2_basis_n_max > 6) throw ConfigError("g2_basis_n_max: beyond the safe range");
    if (c.g3_basis_n_max > 4) throw ConfigError("g3_basis_n_max: beyond the safe range");
    for (const auto& [g, taus] : c.tau) {
        for (size_t i = 0; i < taus.size(); ++i) {
            try {
                (void)theta::PeriodMatrix::create(taus[i]);
            } catch (const std::exception& e) {
                throw ConfigError("tau[" + std::to_string(g) + "][" + std::to_string(i) +
                                  "]: " + e.what());
            }
        }
    }
    for (const auto& s : c.suites)
        if (s != "characters" && s != "exterior" && s != "complex" && s != "theta" &&
            s != "abelian")
            throw ConfigError("suites: unknown suite '" + s + "'");
}

}  // namespace

WorkbenchConfig WorkbenchConfig::defaults() {
    WorkbenchConfig c;
    c.tau[1] = {default_tau(1), [] {
                    Eigen::MatrixXcd t(1, 1);
                    t(0, 0) = Complex(0.5, 1.5);  // (1 + 3i)/2
                    return t;
                }()};
    c.tau[2] = {default_tau(2)};
    c.tau[3] = {default_tau(3)};
    c.tau[4] = {default_tau(4)};
    validate(c);
    return c;
}

WorkbenchConfig WorkbenchConfig::from_json(const nlohmann::json& j) {
    WorkbenchConfig c = defaults();
    if (!j.is_object()) throw ConfigError("config root must be an object");
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "seed") c.seed = val.get<std::uint64_t>();
            else if (key == "theta_target_abs_error") c.theta_target_abs_error = val.get<double>();
            else if (key == "theta_max_radius") c.theta_max_radius = val.get<int>();
            else if (key == "max_deriv_order") c.max_deriv_order = val.get<int>();
            else if (key == "rank_tolerance") c.rank_tolerance = val.get<double>();
            else if (key == "theta_floor") c.theta_floor = val.get<double>();
            else if (key == "sample_margin") c.sample_margin = val.get<long>();
            else if (key == "genus") c.genus = val.get<std::vector<int>>();
            else if (key == "char_g_max") c.char_g_max = val.get<long>();
            else if (key == "euler_g_max") c.euler_g_max = val.get<long>();
            else if (key == "ext_g_max") c.ext_g_max = val.get<long>();
            else if (key == "g2_basis_n_max") c.g2_basis_n_max = val.get<long>();
            else if (key == "g3_basis_n_max") c.g3_basis_n_max = val.get<long>();
            else if (key == "suites") c.suites = val.get<std::vector<std::string>>();
            else if (key == "slice_t_max") {
                c.slice_t_max.clear();
                for (const auto& [gk, tv] : val.items())
                    c.slice_t_max[std::stol(gk)] = tv.get<long>();
            } else if (key == "tau") {
                c.tau.clear();
                for (const auto& [gk, mats] : val.items()) {
                    int g = std::stoi(gk);
                    if (!mats.is_array())
                        throw ConfigError("tau." + gk + ": expected a list of matrices");
                    std::vector<Eigen::MatrixXcd> list;
                    for (size_t i = 0; i < mats.size(); ++i)
                        list.push_back(matrix_from_json(
                            mats.at(i), "tau." + gk + "[" + std::to_string(i) + "]"));
                    c.tau[g] = std::move(list);
                }
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }
    validate(c);
    return c;
}

WorkbenchConfig WorkbenchConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return from_json(j);
}

nlohmann::json WorkbenchConfig::to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["theta_target_abs_error"] = theta_target_abs_error;
    j["theta_max_radius"] = theta_max_radius;
    j["max_deriv_order"] = max_deriv_order;
    j["rank_tolerance"] = rank_tolerance;
    j["theta_floor"] = theta_floor;
    j["sample_margin"] = sample_margin;
    j["genus"] = genus;
    j["char_g_max"] = char_g_max;
    j["euler_g_max"] = euler_g_max;
    j["ext_g_max"] = ext_g_max;
    j["g2_basis_n_max"] = g2_basis_n_max;
    j["g3_basis_n_max"] = g3_basis_n_max;
    j["suites"] = suites;
    nlohmann::json st;
    for (const auto& [g, t] : slice_t_max) st[std::to_string(g)] = t;
    j["slice_t_max"] = std::move(st);
    nlohmann::json taus;
    for (const auto& [g, list] : tau) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& m : list) arr.push_back(matrix_to_json(m));
        taus[std::to_string(g)] = std::move(arr);
    }
    j["tau"] = std::move(taus);
    return j;
}

theta::ThetaEvalConfig WorkbenchConfig::theta_cfg() const {
    theta::ThetaEvalConfig cfg;
    cfg.target_abs_error = theta_target_abs_error;
    cfg.max_radius = theta_max_radius;
    cfg.max_deriv_order = max_deriv_order;
    return cfg;
}

const Eigen::MatrixXcd& WorkbenchConfig::tau_for(int g, size_t idx) const {
    auto it = tau.find(g);
    if (it == tau.end() || idx >= it->second.size())
        throw ConfigError("no tau configured for genus " + std::to_string(g) + " index " +
                          std::to_string(idx));
    return it->second[idx];
}

bool WorkbenchConfig::has_tau(int g, size_t idx) const {
    auto it = tau.find(g);
    return it != tau.end() && idx < it->second.size();
}

}  // namespace abelfun::cli
