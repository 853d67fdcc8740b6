#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lcacalc/errors.hpp"
#include "lcacalc/query.hpp"
#include "lcacalc/selftest.hpp"

namespace py = pybind11;

namespace {

py::dict record_to_dict(const lca::QueryRecord& r) {
    py::dict d;
    d["query"] = r.query;
    d["kind"] = r.kind;
    d["value"] = r.value;
    d["reason"] = r.reason;
    d["trace"] = r.trace;
    d["lines"] = r.lines;
    py::list citations;
    for (const auto& c : r.citations) {
        py::dict cd;
        cd["id"] = c.id;
        cd["provenance"] = c.provenance;
        cd["text"] = c.text;
        citations.append(cd);
    }
    d["citations"] = citations;
    return d;
}

class Calculator {
public:
    explicit Calculator(const std::string& facts_path = "", int depth = 3)
        : session_(facts_path.empty() ? lca::FactBase::builtin()
                                      : lca::FactBase::load_file(facts_path),
                   depth) {
        session_.engine().audit();
    }

    py::dict query(const std::vector<std::string>& args) const {
        return record_to_dict(session_.run(args));
    }

    std::string value_of(const std::vector<std::string>& args) const {
        return session_.run(args).value;
    }

    py::dict selftest(unsigned seed) const {
        lca::SelftestReport report = lca::run_selftest(session_.engine(), seed);
        py::dict d;
        d["all_pass"] = report.all_pass();
        d["report"] = lca::format_report(report);
        py::list rows;
        for (const lca::CriterionResult& c : report.criteria) {
            py::dict row;
            row["index"] = c.index;
            row["name"] = c.name;
            row["pass"] = c.pass;
            row["checks"] = c.checks;
            row["detail"] = c.detail;
            rows.append(row);
        }
        d["criteria"] = rows;
        return d;
    }

private:
    lca::Session session_;
};

const Calculator& default_calculator() {
    static Calculator calc;
    return calc;
}

} // namespace

PYBIND11_MODULE(_lcacalc, m) {
    m.doc() = "symbolic calculator for locally compact Polish abelian groups";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const lca::Error& e) {
            const std::string& c = e.code();
            if (c == "ParseError" || c == "UnknownAtom" || c == "UnknownCategory" ||
                c == "InvalidAtom")
                PyErr_SetString(PyExc_ValueError, e.what());
            else
                PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    py::class_<Calculator>(m, "Calculator")
        .def(py::init<const std::string&, int>(), py::arg("facts_path") = "",
             py::arg("depth") = 3)
        .def("query", &Calculator::query, py::arg("args"),
             "run a command (same vocabulary as the CLI) and return the full record")
        .def("selftest", &Calculator::selftest, py::arg("seed") = 0);

    m.def("query", [](const std::vector<std::string>& args) {
        return default_calculator().query(args);
    });
    m.def("dual", [](const std::string& g) {
        return default_calculator().value_of({"dual", g});
    });
    m.def("hom", [](const std::string& a, const std::string& b) {
        return default_calculator().value_of({"hom", a, b});
    });
    m.def("ext", [](const std::string& a, const std::string& b) {
        return default_calculator().value_of({"ext", a, b});
    });
    m.def("ext_countable", [](const std::string& a, const std::string& b) {
        return default_calculator().value_of({"extq", a, b});
    });
    m.def("member", [](const std::string& g, const std::string& cat) {
        return default_calculator().value_of({"member", g, cat}) == "true";
    });
    m.def("injective", [](const std::string& g, const std::string& cat) {
        return default_calculator().value_of({"injective", g, cat}) == "true";
    });
    m.def("projective", [](const std::string& g, const std::string& cat) {
        return default_calculator().value_of({"projective", g, cat}) == "true";
    });
    m.def("resolve", [](const std::string& g) {
        return default_calculator().query({"resolve", g});
    });
    m.def("oracle_ext", [](const std::string& g, const std::string& a) {
        return default_calculator().query({"oracle-ext", g, a});
    });
    m.def("derive", [](const std::string& functor, const std::string& a,
                       const std::string& b) {
        return default_calculator().query({"derive", functor, a, b});
    });
    m.def("selftest", [](unsigned seed) { return default_calculator().selftest(seed); },
          py::arg("seed") = 0);
}
