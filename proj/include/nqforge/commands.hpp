#pragma once

#include <string>
#include <vector>

#include "nqforge/structure_file.hpp"

namespace nqforge {

struct CommandOptions {
    int max_arity = 0;  // 0: n + 2 for identities, n + 1 for sampled forms
    unsigned seed = 1;
};

// verify_algebroid, consequence_checks and the CE formula on seeded random forms
std::vector<CheckResult> cmd_verify(const StructureFile& f, const CommandOptions& opt = {});
// "Q x = ..." and "Q u = ..." lines of the CE differential
std::string cmd_to_q(const StructureFile& f);
// the algebroid read off the Q block, in file form
std::string cmd_from_q(const StructureFile& f);
// extract∘ce on the algebroid; with a Q block also ce∘extract and Q against the algebroid;
// with a morphism extract_morphism∘build_phi
std::vector<CheckResult> cmd_roundtrip(const StructureFile& f);
// anchor, bracket and equivariance checks and whether the two sides agree
std::vector<CheckResult> cmd_check_morphism(const StructureFile& f, const CommandOptions& opt = {});

inline bool all_pass(const std::vector<CheckResult>& cs) {
    for (const auto& c : cs)
        if (!c.pass) return false;
    return true;
}

}  // namespace nqforge
