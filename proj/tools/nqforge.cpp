// nqforge: verify split Lie n-algebroids and their morphisms from JSON structure files.
// Exit codes: 0 pass, 1 a check failed, 2 input or usage error.

#include <iostream>

#include "CLI11.hpp"
#include "nqforge/commands.hpp"

using namespace nqforge;

namespace {

int report(const std::string& command, const std::vector<CheckResult>& checks, bool json) {
    std::cout << (json ? report_json(command, checks) : report_text(checks));
    return all_pass(checks) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Split Lie n-algebroids, their Chevalley-Eilenberg differentials and morphisms"};
    app.require_subcommand(1);

    std::string file;
    bool json = false;
    CommandOptions opt;
    auto add = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("file", file, "structure file (JSON)")->required();
        sub->add_flag("--json", json, "machine-readable report");
        sub->add_option("--max-arity", opt.max_arity, "largest tuple length to check (default n + 2)")->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", opt.seed, "seed for the sampled checks");
        return sub;
    };
    auto* verify = add("verify", "check the algebroid identities and Q^2 = 0");
    auto* to_q = add("to-q", "print the Chevalley-Eilenberg differential");
    auto* from_q = add("from-q", "print the algebroid read off the q block");
    auto* roundtrip = add("roundtrip", "check extract(ce(A)) = A, ce(extract(Q)) = Q and extract(build(phi)) = phi");
    auto* morph = add("check-morphism", "check a morphism both geometrically and as Q_E Phi = Phi Q_F");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        StructureFile f = load_structure(file);
        if (verify->parsed()) return report("verify", cmd_verify(f, opt), json);
        if (roundtrip->parsed()) return report("roundtrip", cmd_roundtrip(f), json);
        if (morph->parsed()) return report("check-morphism", cmd_check_morphism(f, opt), json);
        if (to_q->parsed()) std::cout << cmd_to_q(f);
        if (from_q->parsed()) std::cout << cmd_from_q(f);
        return 0;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
