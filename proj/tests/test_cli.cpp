#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "lcacalc/facts.hpp"
#include "lcacalc/query.hpp"

using namespace lca;

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(LCACALC_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("basic queries succeed with exit code 0") {
    RunResult r = run_cli("dual 'Q+C(12)'");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("Sol+C(4)+C(3)") != std::string::npos);

    r = run_cli("ext 'Pr(2)' 'Zp(2)'");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("value: Zp(2)") != std::string::npos);
    CHECK(r.output.find("EXT-PRUFER-1") != std::string::npos);

    r = run_cli("injective 'Xi(2)' 'LH(TDLCPAb)'");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("value: false") != std::string::npos);
}

TEST_CASE("structured output is one well-formed JSON object") {
    RunResult r = run_cli("--format structured ext T 'C(9)'");
    CHECK(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.output);
    CHECK(j["value"] == "C(9)");
    CHECK(j["kind"] == "expr");
    CHECK(j["citations"].is_array());

    r = run_cli("--format structured extq Sol Q");
    CHECK(r.exit_code == 0);
    j = nlohmann::json::parse(r.output);
    CHECK(j["value"] == "Yes");
}

TEST_CASE("input errors exit with code 1") {
    CHECK(run_cli("ext bogus Z").exit_code == 1);
    CHECK(run_cli("dual 'C(0)'").exit_code == 1);
    CHECK(run_cli("member Z NoSuchCategory").exit_code == 1);
    CHECK(run_cli("frobnicate Z").exit_code == 1);
    CHECK(run_cli("ext Z").exit_code == 1); // missing operand
}

TEST_CASE("engine errors exit with code 2") {
    CHECK(run_cli("dual 'T^w'").exit_code == 2);           // dual unsupported
    CHECK(run_cli("resolve Sol").exit_code == 2);          // resolution unsupported
    CHECK(run_cli("injective R TorLCPAb").exit_code == 2); // not a member
    CHECK(run_cli("oracle-ext 'C(128)' 'C(2)'").exit_code == 2); // size bound
}

TEST_CASE("fact files load, and malformed ones fail the audit") {
    std::string good = write_temp("lcacalc_facts_good.tsv",
                                  std::string(FactBase::builtin_text()) +
                                      "EXT\tSol\tZ\tQ\tDERIVED\tEXT-SOL-Z-LOCAL\n");
    RunResult r = run_cli("--facts " + good + " ext Sol Z");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("value: Q") != std::string::npos);
    CHECK(r.output.find("EXT-SOL-Z-LOCAL") != std::string::npos);

    std::string bad = write_temp("lcacalc_facts_bad.tsv", "EXT\tSol\tZ\tQ\tPAPER\n");
    r = run_cli("--facts " + bad + " ext Sol Z");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("AuditError") != std::string::npos);

    // a fact contradicting the structural rules must be caught at startup
    std::string wrong = write_temp("lcacalc_facts_wrong.tsv",
                                   std::string(FactBase::builtin_text()) +
                                       "EXT\tC(4)\tZ\tC(8)\tDERIVED\tEXT-WRONG-1\n");
    r = run_cli("--facts " + wrong + " ext 'C(4)' Z");
    CHECK(r.exit_code == 2);
}

TEST_CASE("derive prints the step list") {
    RunResult r = run_cli("derive ext 'Pr(2)' 'Zp(2)'");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("value: Zp(2)") != std::string::npos);

    r = run_cli("derive ext 'T^w' Z");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("value: Failure") != std::string::npos);
}

TEST_CASE("query layer renders text and structured forms consistently") {
    Session session;
    QueryRecord rec = session.run({"hom", "Zp(3)", "Zp(3)"});
    CHECK(rec.value == "Zp(3)");
    std::string text = Session::render_text(rec);
    CHECK(text.find("query: hom(Zp(3), Zp(3))") != std::string::npos);
    nlohmann::json j = nlohmann::json::parse(Session::render_structured(rec));
    CHECK(j["value"] == "Zp(3)");
}
