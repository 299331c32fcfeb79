#pragma once

#include <string>
#include <vector>

namespace swnfock {

/// Tabulated diagnostics with named pass/fail checks. The CLI serializes
/// these to JSON or CSV.
struct VerificationReport {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<std::pair<std::string, bool>> checks;

    bool pass() const {
        for (const auto& [name, ok] : checks)
            if (!ok) return false;
        return true;
    }

    void check(std::string name, bool ok) { checks.emplace_back(std::move(name), ok); }
    void scalar(std::string name, double v) { scalars.emplace_back(std::move(name), v); }
};

}  // namespace swnfock
