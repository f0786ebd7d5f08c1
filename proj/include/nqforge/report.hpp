#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nqforge {

struct Witness {
    std::string where;     // failing generator or tuple
    std::string residual;  // nonzero residual in text form
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::optional<Witness> witness;
    std::size_t cases = 0;  // number of identities evaluated
    double millis = 0;
    std::vector<CheckResult> children;

    void fail(std::string where, std::string residual) {
        if (pass) witness = Witness{std::move(where), std::move(residual)};
        pass = false;
    }
    void absorb(const CheckResult& c) {
        cases += c.cases;
        if (!c.pass && pass) {
            pass = false;
            witness = c.witness;
        }
    }
};

}  // namespace nqforge
