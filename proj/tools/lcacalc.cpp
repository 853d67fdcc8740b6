#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lcacalc/errors.hpp"
#include "lcacalc/query.hpp"
#include "lcacalc/selftest.hpp"

namespace {

// Exit codes: 0 success, 1 input/parse error, 2 engine error, 3 selftest failure.
constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitEngine = 2;
constexpr int kExitSelftest = 3;

bool is_input_error(const lca::Error& e) {
    const std::string& c = e.code();
    return c == "ParseError" || c == "UnknownAtom" || c == "UnknownCategory" ||
           c == "InvalidAtom";
}

int run_selftest_command(const lca::Session& session, unsigned seed, bool structured) {
    lca::SelftestReport report = lca::run_selftest(session.engine(), seed);
    if (structured) {
        nlohmann::json j;
        j["criteria"] = nlohmann::json::array();
        for (const lca::CriterionResult& c : report.criteria)
            j["criteria"].push_back({{"index", c.index},
                                     {"name", c.name},
                                     {"pass", c.pass},
                                     {"checks", c.checks},
                                     {"detail", c.detail}});
        j["all_pass"] = report.all_pass();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << lca::format_report(report);
    }
    return report.all_pass() ? kExitOk : kExitSelftest;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic calculator for locally compact Polish abelian groups"};
    app.footer("commands:\n"
               "  dual <expr>                     Pontryagin dual\n"
               "  hom <operand> <operand>         Hom group\n"
               "  ext <operand> <operand>         Ext group\n"
               "  extq <operand> <operand>        countability of Ext\n"
               "  props <expr>                    property vector\n"
               "  decompose <expr>                type decomposition\n"
               "  member <expr> <category>        category membership\n"
               "  injective <operand> <category>  injectivity verdict\n"
               "  projective <operand> <category> projectivity verdict\n"
               "  resolve <expr>                  essentially injective resolution\n"
               "  oracle-ext <expr> <expr>        finite-group cocycle oracle\n"
               "  derive <hom|ext> <op> <op>      from-scratch derivation\n"
               "  selftest                        run the acceptance criteria");

    std::string format = "text";
    std::string facts_path;
    int depth = 3;
    unsigned seed = 0;
    std::vector<std::string> words;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--facts", facts_path, "load a fact file instead of the builtin table");
    app.add_option("--depth", depth, "derivation search depth")->check(CLI::Range(0, 8));
    app.add_option("--seed", seed, "seed for the randomized selftest suites");
    app.add_option("command", words, "command and its operands");

    CLI11_PARSE(app, argc, argv);
    bool structured = format == "structured";

    try {
        lca::FactBase facts =
            facts_path.empty() ? lca::FactBase::builtin() : lca::FactBase::load_file(facts_path);
        lca::Session session(std::move(facts), depth);
        session.engine().audit();

        if (words.empty()) {
            std::cerr << "ParseError: missing command (try --help)\n";
            return kExitParse;
        }
        if (words[0] == "selftest") return run_selftest_command(session, seed, structured);

        lca::QueryRecord r = session.run(words);
        std::cout << (structured ? lca::Session::render_structured(r)
                                 : lca::Session::render_text(r));
        if (structured) std::cout << "\n";
        return kExitOk;
    } catch (const lca::Error& e) {
        std::cerr << e.what() << "\n";
        return is_input_error(e) ? kExitParse : kExitEngine;
    } catch (const std::exception& e) {
        std::cerr << "InternalError: " << e.what() << "\n";
        return kExitEngine;
    }
}
