#pragma once

#include <string>
#include <vector>

#include "lcacalc/homext.hpp"

namespace lca {

struct QueryRecord {
    struct Citation {
        std::string id;
        std::string provenance; // PAPER | DERIVED | TRIVIAL for facts, RULE otherwise
        std::string text;
    };

    std::string query; // echoed normalized query
    std::string kind;  // expr | cover | boolean | unresolved | property-vector |
                       // resolution | report
    std::string value;
    std::string reason;
    std::vector<std::string> trace;
    std::vector<Citation> citations;
    std::vector<std::string> lines; // additional report rows
};

class Session {
public:
    explicit Session(FactBase facts = FactBase::builtin(), int derive_depth = 3);

    const Engine& engine() const { return engine_; }

    // args = command followed by its operands; throws Error on bad input
    QueryRecord run(const std::vector<std::string>& args) const;

    static std::string render_text(const QueryRecord& r);
    static std::string render_structured(const QueryRecord& r); // one JSON object

private:
    QueryRecord::Citation describe_citation(const std::string& id) const;
    void attach_value(QueryRecord& r, const HomExtValue& v) const;

    Engine engine_;
};

} // namespace lca
