#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "osculata/report.hpp"

namespace osculata {

/// One corpus entry: a parsed spec, or the reason it could not be parsed.
struct AuditInput {
    std::string label;
    std::optional<VarietySpec> spec;
    std::string error;
};

struct AuditRow {
    std::string variety;
    std::uint64_t seed = 0;
    std::string check; // "vanishing" or "secant_tangent"
    std::uint32_t k = 0;
    bool hypothesis = false;
    bool conclusion = false;
    bool respected = true;
    bool stable = true;
    std::string error;

    bool violation() const { return error.empty() && stable && !respected; }
};

inline std::vector<AuditInput> builtin_audit_inputs()
{
    std::vector<AuditInput> out;
    for (auto& spec : builtin_corpus()) out.push_back({spec.name(), std::move(spec), {}});
    return out;
}

/// Every *.json under dir, in filename order. Unparseable files become error entries.
inline std::vector<AuditInput> load_corpus(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<AuditInput> out;
    for (const auto& f : files) {
        AuditInput in{f.filename().string(), std::nullopt, {}};
        try {
            std::ifstream is(f);
            std::stringstream buf;
            buf << is.rdbuf();
            in.spec = parse_spec(buf.str());
            in.label = in.spec->name();
        } catch (const std::exception& e) {
            in.error = e.what();
        }
        out.push_back(std::move(in));
    }
    return out;
}

inline std::vector<AuditRow> audit_one(const AuditInput& in, std::uint64_t seed, std::uint32_t max_order,
                                       std::uint32_t trials, std::int64_t bound)
{
    std::vector<AuditRow> rows;
    if (!in.spec) {
        rows.push_back({in.label, seed, "parse", 0, false, false, true, true, in.error});
        return rows;
    }
    const SamplerConfig cfg{seed, trials, bound};
    try {
        for (std::uint32_t k = 1; k + 2 <= max_order; ++k) {
            const auto v = vanishing_check(*in.spec, k, cfg);
            rows.push_back({in.label, seed, "vanishing", k, v.hypothesis, v.conclusion, v.respected, v.stable, {}});
        }
        const auto c = cor_tm06_check(*in.spec, cfg);
        rows.push_back({in.label, seed, "secant_tangent", 1, c.hypothesis, c.conclusion, c.respected, c.stable, {}});
    } catch (const std::exception& e) {
        rows.push_back({in.label, seed, "error", 0, false, false, true, true, e.what()});
    }
    return rows;
}

/// Runs every (input, seed) job concurrently; rows come back in input order.
inline std::vector<AuditRow> run_audit(const std::vector<AuditInput>& inputs, std::span<const std::uint64_t> seeds,
                                       std::uint32_t max_order, std::uint32_t trials = 3, std::int64_t bound = 10)
{
    if (max_order < 3) throw InputError("audit needs max order >= 3");
    std::vector<std::future<std::vector<AuditRow>>> jobs;
    for (const auto& in : inputs) {
        for (auto seed : seeds) {
            jobs.push_back(std::async(std::launch::async, [&in, seed, max_order, trials, bound] {
                return audit_one(in, seed, max_order, trials, bound);
            }));
        }
    }
    std::vector<AuditRow> rows;
    for (auto& j : jobs) {
        auto part = j.get();
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

inline Json audit_json(const std::vector<AuditRow>& rows)
{
    Json j;
    Json arr = Json::array();
    std::size_t violations = 0;
    for (const auto& r : rows) {
        Json o;
        o["variety"] = r.variety;
        o["seed"] = r.seed;
        o["check"] = r.check;
        o["k"] = r.k;
        o["hypothesis"] = r.hypothesis;
        o["conclusion"] = r.conclusion;
        o["respected"] = r.respected;
        o["stable"] = r.stable;
        if (!r.error.empty()) o["error"] = r.error;
        violations += r.violation();
        arr.push_back(std::move(o));
    }
    j["rows"] = std::move(arr);
    j["violations"] = violations;
    return j;
}

inline std::string audit_table(const std::vector<AuditRow>& rows)
{
    std::ostringstream os;
    os << std::left << std::setw(44) << "variety" << std::setw(6) << "seed" << std::setw(16) << "check"
       << std::setw(3) << "k" << std::setw(11) << "hypothesis" << std::setw(11) << "conclusion"
       << std::setw(10) << "respected" << "stable\n";
    const auto yn = [](bool b) { return b ? "yes" : "no"; };
    for (const auto& r : rows) {
        os << std::setw(44) << r.variety << std::setw(6) << r.seed << std::setw(16) << r.check;
        if (!r.error.empty()) {
            os << "ERROR: " << r.error << "\n";
            continue;
        }
        os << std::setw(3) << r.k << std::setw(11) << yn(r.hypothesis) << std::setw(11) << yn(r.conclusion)
           << std::setw(10) << yn(r.respected) << yn(r.stable) << "\n";
    }
    return os.str();
}

} // namespace osculata
