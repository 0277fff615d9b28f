#include "abelfun/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace abelfun::cli {

std::string status_str(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skip: return "skip";
    }
    return "?";
}

Status status_from_str(const std::string& s) {
    if (s == "pass") return Status::Pass;
    if (s == "fail") return Status::Fail;
    if (s == "skip") return Status::Skip;
    throw std::invalid_argument("unknown status: " + s);
}

nlohmann::json record_to_json(const CheckRecord& r) {
    return nlohmann::json{{"suite", r.suite},     {"name", r.name},
                          {"params", r.params},   {"status", status_str(r.status)},
                          {"payload", r.payload}, {"elapsed_ms", r.elapsed_ms}};
}

CheckRecord record_from_json(const nlohmann::json& j) {
    CheckRecord r;
    r.suite = j.at("suite").get<std::string>();
    r.name = j.at("name").get<std::string>();
    r.params = j.at("params");
    r.status = status_from_str(j.at("status").get<std::string>());
    r.payload = j.at("payload");
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    return r;
}

void sort_records(std::vector<CheckRecord>& records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) {
                         if (a.suite != b.suite) return a.suite < b.suite;
                         if (a.name != b.name) return a.name < b.name;
                         return a.params.dump() < b.params.dump();
                     });
}

bool any_failure(const std::vector<CheckRecord>& records) {
    return std::any_of(records.begin(), records.end(),
                       [](const CheckRecord& r) { return r.status == Status::Fail; });
}

namespace {

std::string table_line(const CheckRecord& r) {
    std::ostringstream os;
    os << std::left << std::setw(11) << r.suite << " " << std::setw(24) << r.name << " "
       << std::setw(5) << status_str(r.status);
    if (r.suite == "characters" && r.name == "table" && r.payload.contains("values")) {
        // reproduce the published table layout per row
        os << "  ";
        for (const auto& v : r.payload.at("values")) os << v.get<std::string>() << " ";
        os << "| " << r.payload.at("sum").get<std::string>();
    } else if (!r.params.empty()) {
        os << "  " << r.params.dump();
    }
    if (r.status == Status::Fail) os << "  payload=" << r.payload.dump();
    return os.str();
}

}  // namespace

std::string emit_report(const std::vector<CheckRecord>& records, const std::string& format) {
    if (records.empty()) throw std::invalid_argument("emit_report: no records");
    if (format == "json") {
        nlohmann::json out;
        out["records"] = nlohmann::json::array();
        for (const auto& r : records) out["records"].push_back(record_to_json(r));
        return out.dump(2) + "\n";
    }
    if (format == "table") {
        std::ostringstream os;
        long pass = 0, fail = 0, skip = 0;
        for (const auto& r : records) {
            os << table_line(r) << "\n";
            switch (r.status) {
                case Status::Pass: ++pass; break;
                case Status::Fail: ++fail; break;
                case Status::Skip: ++skip; break;
            }
        }
        os << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
        return os.str();
    }
    throw std::invalid_argument("emit_report: unknown format " + format);
}

}  // namespace abelfun::cli
