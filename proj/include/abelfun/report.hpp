#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace abelfun::cli {

enum class Status { Pass, Fail, Skip };

std::string status_str(Status s);
Status status_from_str(const std::string& s);

// One executed check. On failure the payload carries the violated
// expectation next to the observed value.
struct CheckRecord {
    std::string suite;
    std::string name;
    nlohmann::json params = nlohmann::json::object();
    Status status = Status::Pass;
    nlohmann::json payload = nlohmann::json::object();
    double elapsed_ms = 0;

    bool operator==(const CheckRecord&) const = default;
};

nlohmann::json record_to_json(const CheckRecord& r);
CheckRecord record_from_json(const nlohmann::json& j);

// Stable order: suite, then name, then serialized params. Reports are
// byte-identical across runs with the same config and seed, elapsed-time
// fields aside.
void sort_records(std::vector<CheckRecord>& records);

bool any_failure(const std::vector<CheckRecord>& records);

// format "json": the documented schema {"records": [...]}; format "table":
// aligned text, with the characters-suite dimension tables printed as
// "1 0 15 25 10 1 | 52" rows.
std::string emit_report(const std::vector<CheckRecord>& records, const std::string& format);

}  // namespace abelfun::cli
