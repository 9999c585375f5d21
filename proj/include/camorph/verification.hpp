#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace camorph {

struct Witness {
    std::vector<std::size_t> where;  // basis indices pinning the failure
    std::string detail;
};

// One named check with up to kMaxWitnesses of the earliest failures
// (lexicographic in the scan order), plus the total failure count.
struct CheckResult {
    static constexpr std::size_t kMaxWitnesses = 10;

    std::string name;
    bool pass = true;
    std::size_t failures = 0;
    std::vector<Witness> witnesses;

    void fail(std::vector<std::size_t> where, std::string detail) {
        pass = false;
        ++failures;
        if (witnesses.size() < kMaxWitnesses)
            witnesses.push_back(Witness{std::move(where), std::move(detail)});
    }
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    CheckResult& add(std::string name) {
        checks.emplace_back();
        checks.back().name = std::move(name);
        return checks.back();
    }
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

void to_json(nlohmann::json& j, const Witness& w);
void to_json(nlohmann::json& j, const CheckResult& c);
void to_json(nlohmann::json& j, const VerificationReport& r);

}  // namespace camorph
