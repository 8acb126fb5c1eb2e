// Python module over the model document format: models and supervisors go in
// and out as JSON, verdicts come back as dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "alter/closedloop.hpp"
#include "alter/io.hpp"
#include "alter/oracle.hpp"
#include "alter/synth.hpp"
#include "alter/verify.hpp"

namespace py = pybind11;
using namespace alter;
using alter::io::Json;

namespace {

py::object toPython(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json fromPython(const py::object& o) {
    return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

// Model with its observer built once.
class PyModel {
public:
    explicit PyModel(SystemModel m) : m_(std::move(m)) {
        requireValid(m_);
        obs_ = buildObserver(m_);
    }

    static PyModel fromJson(const std::string& text) { return PyModel(io::parseModel(Json::parse(text))); }
    static PyModel fromDict(const py::dict& doc) { return PyModel(io::parseModel(fromPython(doc))); }
    static PyModel load(const std::string& path) { return PyModel(io::loadModel(path)); }

    std::string toJson() const { return io::dump(io::modelToJson(m_)); }
    std::size_t observerSize() const { return obs_.size(); }

    py::dict check(bool firstOnly) const {
        CheckOptions opt{firstOnly};
        auto det = deterministicSupervisorExists(m_, obs_, opt);
        auto nb = nonblockingSupervisorExists(m_, obs_, opt);
        py::dict out;
        out["ca_d_controllable"] = toPython(io::verdictToJson(m_, det.controllability));
        out["ca_controllable"] = toPython(io::verdictToJson(m_, checkCAControllable(m_, opt)));
        out["ca_s_controllable"] = toPython(io::verdictToJson(m_, checkCASControllable(m_, opt)));
        out["ca_d_observable"] = toPython(io::verdictToJson(m_, det.observability));
        out["lm_closed"] = toPython(io::verdictToJson(m_, nb.lmClosed));
        out["deterministic_supervisor_exists"] = det.exists;
        out["nonblocking_supervisor_exists"] = nb.exists;
        return out;
    }

    py::object synthesize(const std::string& variant) const {
        return toPython(io::supervisorToJson(m_, obs_, supervisor(variant, py::none())));
    }

    py::dict closedLoop(const py::object& sup, const std::string& which) const {
        auto s = supervisor("p", sup);
        LoopKind kind = which == "large" ? LoopKind::Large
                        : which == "small" ? LoopKind::Small
                                           : throw InputError("which must be 'large' or 'small', got '" + which + "'");
        auto cl = buildClosedLoop(m_, obs_, s, kind);
        auto eq = dfaEquivalent(cl.automaton, specAutomaton(m_, true), false);
        py::dict out;
        out["states"] = cl.automaton.size();
        out["equals_spec"] = eq.equal;
        out["witness"] = eq.witness ? py::object(py::str(m_.events.render(*eq.witness))) : py::object(py::none());
        return out;
    }

    py::dict nonblocking(const py::object& sup) const {
        auto r = checkNonblocking(m_, obs_, supervisor("p", sup));
        py::dict out;
        out["nonblocking"] = r.nonblocking;
        out["cond1"] = r.cond1;
        out["cond2"] = r.cond2;
        out["witness"] = r.witness ? py::object(py::str(m_.events.render(*r.witness))) : py::object(py::none());
        out["witness_kind"] = r.witnessKind;
        return out;
    }

    bool boundedObservable(std::size_t maxLen) const {
        OracleConfig cfg;
        cfg.maxPlantLen = maxLen;
        return defCheckCADObservable(m_, cfg).holds;
    }

    std::string dot(const std::string& what) const {
        if (what == "plant") return io::plantDot(m_);
        if (what == "observer") return io::observerDot(m_, obs_);
        if (what == "attacked") return io::attackedDot(m_, buildGpi(m_));
        throw InputError("unknown graph '" + what + "'");
    }

private:
    // `sup` is a supervisor document, or None for the synthesized one.
    Supervisor supervisor(const std::string& variant, const py::object& sup) const {
        if (!sup.is_none()) return io::supervisorFromJson(m_, obs_, fromPython(sup));
        if (variant == "p") return synthSp(m_, obs_);
        if (variant == "r") return synthSr(m_, obs_);
        throw InputError("variant must be 'p' or 'r', got '" + variant + "'");
    }

    SystemModel m_;
    Observer obs_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Supervisor synthesis under sensor and actuator attacks";
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    py::class_<PyModel>(m, "Model")
        .def_static("from_json", &PyModel::fromJson, py::arg("text"))
        .def_static("from_dict", &PyModel::fromDict, py::arg("doc"))
        .def_static("load", &PyModel::load, py::arg("path"))
        .def("to_json", &PyModel::toJson)
        .def_property_readonly("observer_size", &PyModel::observerSize)
        .def("check", &PyModel::check, py::arg("first_only") = false)
        .def("synthesize", &PyModel::synthesize, py::arg("variant") = "p")
        .def("closed_loop", &PyModel::closedLoop, py::arg("supervisor") = py::none(), py::arg("which") = "large")
        .def("nonblocking", &PyModel::nonblocking, py::arg("supervisor") = py::none())
        .def("bounded_observable", &PyModel::boundedObservable, py::arg("max_len") = 8)
        .def("dot", &PyModel::dot, py::arg("what") = "plant");
}
