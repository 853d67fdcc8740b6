#include "lcacalc/query.hpp"

#include <sstream>

#include <json.hpp>

#include "lcacalc/classify.hpp"
#include "lcacalc/duality.hpp"
#include "lcacalc/errors.hpp"
#include "lcacalc/finab.hpp"
#include "lcacalc/parse.hpp"

namespace lca {

namespace {

void require_arity(const std::vector<std::string>& args, std::size_t n,
                   const std::string& usage) {
    if (args.size() != n + 1)
        throw parse_error("expected " + std::to_string(n) + " operand(s): " + usage);
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

} // namespace

Session::Session(FactBase facts, int derive_depth)
    : engine_(std::move(facts), derive_depth) {}

QueryRecord::Citation Session::describe_citation(const std::string& id) const {
    for (const Fact& f : engine_.fact_base().facts())
        if (f.citation == id) return {id, f.provenance, "seeded fact"};
    std::string text = Engine::rule_citation(id);
    return {id, "RULE", text.empty() ? "engine rule" : text};
}

void Session::attach_value(QueryRecord& r, const HomExtValue& v) const {
    if (!v.resolved()) {
        r.kind = "unresolved";
        r.value = "Unresolved";
        r.reason = v.reason;
    } else if (v.kind == HomExtValue::Kind::Cover) {
        r.kind = "cover";
        r.value = to_string(*v.cover);
    } else {
        r.kind = "expr";
        r.value = render(v.expr);
    }
    r.trace = v.trace;
    for (const std::string& c : v.citations) r.citations.push_back(describe_citation(c));
}

QueryRecord Session::run(const std::vector<std::string>& args) const {
    if (args.empty()) throw parse_error("missing command");
    const std::string& cmd = args[0];
    QueryRecord r;

    if (cmd == "dual") {
        require_arity(args, 1, "dual <expr>");
        GroupExpr g = parse_expr(args[1]);
        r.query = "dual(" + render(g) + ")";
        r.kind = "expr";
        r.value = render(dual(g));
        return r;
    }

    if (cmd == "hom" || cmd == "ext") {
        require_arity(args, 2, cmd + " <operand> <operand>");
        Operand a = parse_operand(args[1]), b = parse_operand(args[2]);
        r.query = cmd + "(" + render(a) + ", " + render(b) + ")";
        attach_value(r, cmd == "hom" ? engine_.hom(a, b) : engine_.ext(a, b));
        return r;
    }

    if (cmd == "extq") {
        require_arity(args, 2, "extq <operand> <operand>");
        Operand a = parse_operand(args[1]), b = parse_operand(args[2]);
        r.query = "extq(" + render(a) + ", " + render(b) + ")";
        CountabilityResult c = engine_.ext_countable(a, b);
        r.kind = "report";
        r.value = to_string(c.verdict);
        if (!c.citation.empty()) r.citations.push_back(describe_citation(c.citation));
        return r;
    }

    if (cmd == "props") {
        require_arity(args, 1, "props <expr>");
        GroupExpr g = parse_expr(args[1]);
        r.query = "props(" + render(g) + ")";
        r.kind = "property-vector";
        PropertyVector v = properties(g);
        auto row = [&](const char* name, bool val) {
            r.lines.push_back(std::string(name) + ": " + bool_str(val));
        };
        row("compact", v.compact);
        row("discrete", v.discrete);
        row("countable", v.countable);
        row("connected", v.connected);
        row("totally_disconnected", v.totally_disconnected);
        row("topological_torsion", v.topological_torsion);
        row("divisible", v.divisible);
        r.lines.push_back(std::string("codivisible: ") +
                          (v.codivisible ? bool_str(*v.codivisible) : "undetermined"));
        row("compactly_generated", v.compactly_generated);
        row("lie", v.lie);
        row("finite_ranks", v.finite_ranks);
        row("type_S1", v.type_S1);
        row("type_A", v.type_A);
        row("type_Z", v.type_Z);
        r.value = render(g);
        return r;
    }

    if (cmd == "decompose") {
        require_arity(args, 1, "decompose <expr>");
        GroupExpr g = parse_expr(args[1]);
        r.query = "decompose(" + render(g) + ")";
        r.kind = "report";
        TypeDecomposition d = decompose(g);
        r.lines.push_back("S1-part: " + render(d.s1_part));
        r.lines.push_back("R-part: " + render(d.r_part));
        r.lines.push_back("T-part: " + render(d.t_part));
        r.lines.push_back("Z-part: " + render(d.z_part));
        r.value = render(g);
        return r;
    }

    if (cmd == "member") {
        require_arity(args, 2, "member <expr> <category>");
        GroupExpr g = parse_expr(args[1]);
        CategoryTag cat = parse_category(args[2]);
        r.query = "member(" + render(g) + ", " + to_string(cat) + ")";
        r.kind = "boolean";
        r.value = bool_str(member(g, cat));
        return r;
    }

    if (cmd == "injective" || cmd == "projective") {
        require_arity(args, 2, cmd + " <operand> <category>");
        Operand o = parse_operand(args[1]);
        CategoryTag cat = parse_category(args[2]);
        r.query = cmd + "(" + render(o) + ", " + to_string(cat) + ")";
        Verdict v = cmd == "injective" ? classify_injective(o, cat)
                                       : classify_projective(o, cat);
        r.kind = "boolean";
        r.value = bool_str(v.value);
        r.reason = v.reason;
        return r;
    }

    if (cmd == "resolve") {
        require_arity(args, 1, "resolve <expr>");
        GroupExpr g = parse_expr(args[1]);
        r.query = "resolve(" + render(g) + ")";
        r.kind = "resolution";
        Resolution res = resolve(g);
        r.lines.push_back("d0: " + render(res.d0));
        r.lines.push_back("d1: " + render(res.d1));
        r.value = render(res.d0) + " -> " + render(res.d1);
        return r;
    }

    if (cmd == "oracle-ext") {
        require_arity(args, 2, "oracle-ext <finite expr> <finite expr>");
        FinAb g = FinAb::from_expr(parse_expr(args[1]));
        FinAb a = FinAb::from_expr(parse_expr(args[2]));
        r.query = "oracle-ext(" + to_string(g) + ", " + to_string(a) + ")";
        r.kind = "report";
        CocycleReport rep = cocycle_group(g, a);
        CrosscheckReport cc = crosscheck(g, a);
        r.value = to_string(cc.formula_value);
        r.lines.push_back("ext_finite: " + to_string(cc.formula_value));
        r.lines.push_back("Z^2: " + to_string(rep.z2));
        r.lines.push_back("B^2: " + to_string(rep.b2));
        r.lines.push_back("Z^2/B^2: " + to_string(rep.quotient));
        r.lines.push_back(std::string("crosscheck: ") + (cc.agree ? "agree" : "DISAGREE") +
                          " (" + cc.detail + ")");
        if (!cc.agree) throw audit_error("oracle crosscheck disagreement: " + cc.detail);
        return r;
    }

    if (cmd == "derive") {
        require_arity(args, 3, "derive <hom|ext> <operand> <operand>");
        Functor f;
        if (args[1] == "hom") f = Functor::Hom;
        else if (args[1] == "ext") f = Functor::Ext;
        else throw parse_error("derive expects 'hom' or 'ext', got '" + args[1] + "'");
        Operand a = parse_operand(args[2]), b = parse_operand(args[3]);
        r.query = "derive(" + to_string(f) + ", " + render(a) + ", " + render(b) + ")";
        auto d = engine_.derive(f, a, b);
        if (!d) {
            r.kind = "unresolved";
            r.value = "Failure";
            r.reason = "no derivation found within depth " + std::to_string(engine_.depth());
            return r;
        }
        r.kind = "report";
        r.value = to_string(d->result);
        for (const DeriveStep& s : d->steps) r.lines.push_back(s.rule + ": " + s.detail);
        for (const std::string& c : d->citations) r.citations.push_back(describe_citation(c));
        return r;
    }

    throw parse_error("unknown command '" + cmd + "'");
}

std::string Session::render_text(const QueryRecord& r) {
    std::ostringstream out;
    out << "query: " << r.query << "\n";
    out << "kind: " << r.kind << "\n";
    out << "value: " << r.value << "\n";
    if (!r.reason.empty()) out << "reason: " << r.reason << "\n";
    for (const std::string& l : r.lines) out << "  " << l << "\n";
    if (!r.trace.empty()) {
        out << "trace:";
        for (const std::string& t : r.trace) out << " " << t;
        out << "\n";
    }
    for (const auto& c : r.citations)
        out << "citation: " << c.id << " [" << c.provenance << "] " << c.text << "\n";
    return out.str();
}

std::string Session::render_structured(const QueryRecord& r) {
    nlohmann::json j;
    j["query"] = r.query;
    j["kind"] = r.kind;
    j["value"] = r.value;
    if (!r.reason.empty()) j["reason"] = r.reason;
    j["trace"] = r.trace;
    j["citations"] = nlohmann::json::array();
    for (const auto& c : r.citations)
        j["citations"].push_back({{"id", c.id}, {"provenance", c.provenance}, {"text", c.text}});
    if (!r.lines.empty()) j["lines"] = r.lines;
    return j.dump();
}

} // namespace lca
