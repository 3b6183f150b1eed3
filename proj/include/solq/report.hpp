#pragma once

#include <map>
#include <string>
#include <vector>

namespace solq {

// One named check with an explicit pass/fail, a measured value and the bound
// it was held against. Commands collect these into their run report.
struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double bound = 0.0;
    std::string note;
};

struct CheckSet {
    std::vector<Check> checks;

    Check& add(const std::string& name, bool pass, double value, double bound,
               const std::string& note = {}) {
        checks.push_back({name, pass, value, bound, note});
        return checks.back();
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

} // namespace solq
