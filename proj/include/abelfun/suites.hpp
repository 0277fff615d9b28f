#pragma once

#include "abelfun/config.hpp"
#include "abelfun/report.hpp"

namespace abelfun::cli {

// Genus filter from the command line, "3" or "2..5".
struct GenusRange {
    int lo = 1;
    int hi = 64;
    bool contains(long g) const { return g >= lo && g <= hi; }
    static GenusRange parse(const std::string& s);
};

std::vector<CheckRecord> run_characters(const WorkbenchConfig& cfg, const GenusRange& range);
std::vector<CheckRecord> run_exterior(const WorkbenchConfig& cfg, const GenusRange& range);
std::vector<CheckRecord> run_complex(const WorkbenchConfig& cfg, const GenusRange& range);
std::vector<CheckRecord> run_theta(const WorkbenchConfig& cfg, const GenusRange& range);
std::vector<CheckRecord> run_abelian(const WorkbenchConfig& cfg, const GenusRange& range);

// Runs the selected suites in dependency order and returns sorted records.
// An empty effective selection yields a single skip-status warning record.
std::vector<CheckRecord> run_suites(const WorkbenchConfig& cfg,
                                    const std::vector<std::string>& selection,
                                    const GenusRange& range);

}  // namespace abelfun::cli
