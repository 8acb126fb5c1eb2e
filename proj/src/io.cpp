#include "alter/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace alter::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw InputError(where + ": " + what);
}

void onlyKeys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) fail(where, "unknown field '" + key + "'");
    }
}

const Json& need(const Json& j, const std::string& where, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string str(const Json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

bool flag(const Json& j, const std::string& where, const char* key, bool fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_boolean()) fail(where + "/" + key, "expected a boolean");
    return it->get<bool>();
}

const Json& array(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array");
    return j;
}

// Inline automaton with string state names; labels are event names or null
// for epsilon.
Automaton parseLanguage(const Json& j, const std::string& where, const EventTable& events) {
    onlyKeys(j, where, {"states", "initial", "marked", "transitions"});
    Automaton a;
    std::map<std::string, StateId> ids;
    const auto& states = array(need(j, where, "states"), where + "/states");
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto name = str(states[i], where + "/states/" + std::to_string(i));
        if (ids.count(name)) fail(where + "/states/" + std::to_string(i), "duplicate state '" + name + "'");
        ids[name] = a.addState(false);
        a.setLabel(ids[name], name);
    }
    if (a.empty()) fail(where + "/states", "needs at least one state");
    auto lookup = [&](const Json& s, const std::string& at) {
        auto name = str(s, at);
        auto it = ids.find(name);
        if (it == ids.end()) fail(at, "unknown state '" + name + "'");
        return it->second;
    };
    a.setInitial(lookup(need(j, where, "initial"), where + "/initial"));
    const auto& marked = array(need(j, where, "marked"), where + "/marked");
    for (std::size_t i = 0; i < marked.size(); ++i) a.setMarked(lookup(marked[i], where + "/marked/" + std::to_string(i)));
    const auto& trs = array(need(j, where, "transitions"), where + "/transitions");
    for (std::size_t i = 0; i < trs.size(); ++i) {
        auto at = where + "/transitions/" + std::to_string(i);
        if (!trs[i].is_array() || trs[i].size() != 3) fail(at, "expected [source, event, target]");
        EventId label = kEpsilon;
        if (!trs[i][1].is_null()) {
            auto name = str(trs[i][1], at + "/1");
            auto e = events.find(name);
            if (!e) fail(at + "/1", "undeclared event '" + name + "'");
            label = *e;
        }
        a.addTransition(lookup(trs[i][0], at + "/0"), label, lookup(trs[i][2], at + "/2"));
    }
    return a;
}

Json languageToJson(const SystemModel& m, const Automaton& a) {
    Json states = Json::array(), marked = Json::array(), trs = Json::array();
    for (StateId q = 0; q < a.size(); ++q) {
        states.push_back(a.label(q));
        if (a.isMarked(q)) marked.push_back(a.label(q));
        for (const auto& e : a.edges(q))
            trs.push_back(Json::array({a.label(q), isEpsilon(e.label) ? Json(nullptr) : Json(m.events.name(e.label)),
                                       a.label(e.target)}));
    }
    return Json{{"states", states}, {"initial", a.label(a.initial())}, {"marked", marked}, {"transitions", trs}};
}

}  // namespace

SystemModel parseModel(const Json& doc) {
    onlyKeys(doc, "", {"events", "plant", "spec", "attacks"});
    SystemModel m;

    const auto& events = array(need(doc, "", "events"), "/events");
    for (std::size_t i = 0; i < events.size(); ++i) {
        auto at = "/events/" + std::to_string(i);
        onlyKeys(events[i], at, {"name", "controllable", "observable", "attackable_control", "attackable_observation"});
        auto name = str(need(events[i], at, "name"), at + "/name");
        if (m.events.find(name)) fail(at, "duplicate event '" + name + "'");
        EventAttributes attrs;
        attrs.controllable = flag(events[i], at, "controllable", true);
        attrs.observable = flag(events[i], at, "observable", true);
        attrs.attackableControl = flag(events[i], at, "attackable_control", false);
        attrs.attackableObservation = flag(events[i], at, "attackable_observation", false);
        m.addEvent(name, attrs);
    }

    const auto& plant = need(doc, "", "plant");
    onlyKeys(plant, "/plant", {"states", "initial", "marked", "transitions"});
    auto alphabet = m.plant.alphabet();
    m.plant = parseLanguage(plant, "/plant", m.events);
    for (auto e : alphabet) m.plant.addEvent(e);
    for (StateId x = 0; x < m.plant.size(); ++x)
        for (const auto& e : m.plant.edges(x))
            if (isEpsilon(e.label)) fail("/plant/transitions", "plant transitions cannot be silent");

    const auto& spec = need(doc, "", "spec");
    onlyKeys(spec, "/spec", {"states", "marked", "transitions"});
    auto stateAt = [&](const Json& j, const std::string& at) {
        auto name = str(j, at);
        for (StateId x = 0; x < m.plant.size(); ++x)
            if (m.plant.label(x) == name) return x;
        fail(at, "unknown plant state '" + name + "'");
    };
    auto eventAt = [&](const Json& j, const std::string& at) {
        auto name = str(j, at);
        auto e = m.events.find(name);
        if (!e) fail(at, "undeclared event '" + name + "'");
        return *e;
    };
    StateSet specStates, specMarked;
    const auto& ss = array(need(spec, "/spec", "states"), "/spec/states");
    for (std::size_t i = 0; i < ss.size(); ++i) specStates.push_back(stateAt(ss[i], "/spec/states/" + std::to_string(i)));
    const auto& sm = array(need(spec, "/spec", "marked"), "/spec/marked");
    for (std::size_t i = 0; i < sm.size(); ++i) specMarked.push_back(stateAt(sm[i], "/spec/marked/" + std::to_string(i)));
    m.setInducedSpec(specStates, specMarked);
    if (auto it = spec.find("transitions"); it != spec.end()) {
        m.spec.transitions.clear();
        const auto& trs = array(*it, "/spec/transitions");
        for (std::size_t i = 0; i < trs.size(); ++i) {
            auto at = "/spec/transitions/" + std::to_string(i);
            if (!trs[i].is_array() || trs[i].size() != 3) fail(at, "expected [source, event, target]");
            m.spec.transitions.push_back({stateAt(trs[i][0], at + "/0"), eventAt(trs[i][1], at + "/1"), stateAt(trs[i][2], at + "/2")});
        }
        std::sort(m.spec.transitions.begin(), m.spec.transitions.end());
        m.spec.transitions.erase(std::unique(m.spec.transitions.begin(), m.spec.transitions.end()), m.spec.transitions.end());
    }

    if (auto it = doc.find("attacks"); it != doc.end()) {
        // Per-transition declarations take precedence over per-event ones.
        const auto& attacks = array(*it, "/attacks");
        std::set<PlantTransition> explicitOnes;
        std::set<EventId> perEvent;
        std::map<PlantTransition, Automaton> fromEvents;
        for (std::size_t i = 0; i < attacks.size(); ++i) {
            auto at = "/attacks/" + std::to_string(i);
            onlyKeys(attacks[i], at, {"on", "language"});
            const auto& on = need(attacks[i], at, "on");
            auto lang = parseLanguage(need(attacks[i], at, "language"), at + "/language", m.events);
            if (on.is_object() && on.size() == 1 && on.contains("event")) {
                auto e = eventAt(on["event"], at + "/on/event");
                if (!perEvent.insert(e).second) fail(at + "/on", "event attacked twice");
                bool any = false;
                for (const auto& tr : m.plantTransitions())
                    if (tr.event == e) {
                        fromEvents[tr] = lang;
                        any = true;
                    }
                if (!any) fail(at + "/on", "event labels no plant transition");
            } else {
                onlyKeys(on, at + "/on", {"source", "event", "target"});
                PlantTransition tr{stateAt(need(on, at + "/on", "source"), at + "/on/source"),
                                   eventAt(need(on, at + "/on", "event"), at + "/on/event"),
                                   stateAt(need(on, at + "/on", "target"), at + "/on/target")};
                if (!explicitOnes.insert(tr).second) fail(at, "transition attacked twice");
                m.attacks[tr] = lang;
            }
        }
        for (auto& [tr, lang] : fromEvents)
            if (!explicitOnes.count(tr)) m.attacks[tr] = std::move(lang);
    }
    return m;
}

SystemModel loadModel(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError(file.string() + ": cannot open");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(file.string() + ": " + e.what());
    }
    try {
        return parseModel(doc);
    } catch (const InputError& e) {
        throw InputError(file.string() + ":" + e.what());
    }
}

Json modelToJson(const SystemModel& m) {
    Json events = Json::array();
    for (auto e : m.events.all()) {
        const auto& a = m.attr(e);
        events.push_back({{"name", m.events.name(e)},
                          {"controllable", a.controllable},
                          {"observable", a.observable},
                          {"attackable_control", a.attackableControl},
                          {"attackable_observation", a.attackableObservation}});
    }
    Json plant = languageToJson(m, m.plant);
    Json specStates = Json::array(), specMarked = Json::array(), specTrs = Json::array();
    for (auto x : m.spec.states) specStates.push_back(m.plant.label(x));
    for (auto x : m.spec.marked) specMarked.push_back(m.plant.label(x));
    for (const auto& tr : m.spec.transitions)
        specTrs.push_back(Json::array({m.plant.label(tr.source), m.events.name(tr.event), m.plant.label(tr.target)}));
    Json attacks = Json::array();
    for (const auto& [tr, lang] : m.attacks)
        attacks.push_back({{"on",
                            {{"source", m.plant.label(tr.source)},
                             {"event", m.events.name(tr.event)},
                             {"target", m.plant.label(tr.target)}}},
                           {"language", languageToJson(m, lang)}});
    return Json{{"events", events},
                {"plant", plant},
                {"spec", {{"states", specStates}, {"marked", specMarked}, {"transitions", specTrs}}},
                {"attacks", attacks}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void writeFile(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file);
    if (!out) throw InputError(file.string() + ": cannot write");
    out << text;
}

std::string stateSetLabel(const SystemModel& m, const Observer&, const StateSet& members) {
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ',';
        out += members[i] < m.plant.size() ? m.plant.label(members[i]) : "#" + std::to_string(members[i]);
    }
    return out + "}";
}

namespace {

// Member labels of an observer state, taken from the attacked plant.
std::vector<std::string> memberLabels(const Automaton& gpi, const Observer& obs, StateId y) {
    std::vector<std::string> out;
    for (auto q : obs.members(y)) out.push_back(gpi.label(q));
    return out;
}

std::string hex(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

}  // namespace

Json supervisorToJson(const SystemModel& m, const Observer& obs, const Supervisor& s) {
    requireMatchingSupervisor(obs, s);
    auto gpi = buildGpi(m).automaton;
    Json states = Json::array();
    for (StateId y = 0; y < obs.size(); ++y) {
        Json enabled = Json::array(), disabled = Json::array(), est = Json::array();
        for (auto e : m.events.all()) (s.enables(y, e) ? enabled : disabled).push_back(m.events.name(e));
        for (auto x : estimate(obs, y)) est.push_back(m.plant.label(x));
        states.push_back({{"id", y},
                          {"members", memberLabels(gpi, obs, y)},
                          {"estimate", est},
                          {"marked", obs.isMarked(y)},
                          {"enabled", enabled},
                          {"disabled", disabled}});
    }
    return Json{{"format", "alter-supervisor/1"}, {"observer_fingerprint", hex(obs.fingerprint)}, {"states", states}};
}

Supervisor supervisorFromJson(const SystemModel& m, const Observer& obs, const Json& doc) {
    onlyKeys(doc, "", {"format", "observer_fingerprint", "states"});
    if (str(need(doc, "", "format"), "/format") != "alter-supervisor/1") fail("/format", "unsupported format");
    if (str(need(doc, "", "observer_fingerprint"), "/observer_fingerprint") != hex(obs.fingerprint))
        fail("/observer_fingerprint", "supervisor was built for a different observer");
    auto gpi = buildGpi(m).automaton;
    std::map<std::vector<std::string>, StateId> byMembers;
    for (StateId y = 0; y < obs.size(); ++y) byMembers[memberLabels(gpi, obs, y)] = y;

    Supervisor s;
    s.observerFingerprint = obs.fingerprint;
    s.enabled.resize(obs.size());
    std::vector<bool> seen(obs.size(), false);
    const auto& states = array(need(doc, "", "states"), "/states");
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto at = "/states/" + std::to_string(i);
        onlyKeys(states[i], at, {"id", "members", "estimate", "marked", "enabled", "disabled"});
        auto members = need(states[i], at, "members").get<std::vector<std::string>>();
        auto it = byMembers.find(members);
        if (it == byMembers.end()) fail(at + "/members", "no observer state has these members");
        if (seen[it->second]) fail(at, "observer state listed twice");
        seen[it->second] = true;
        for (const auto& name : need(states[i], at, "enabled").get<std::vector<std::string>>()) {
            auto e = m.events.find(name);
            if (!e) fail(at + "/enabled", "undeclared event '" + name + "'");
            s.enabled[it->second].push_back(*e);
        }
        std::sort(s.enabled[it->second].begin(), s.enabled[it->second].end());
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) fail("/states", "supervisor is not total on the observer");
    return s;
}

Json verdictToJson(const SystemModel& m, const Verdict& v) {
    Json ws = Json::array();
    for (const auto& w : v.witnesses) {
        Json j{{"kind", toString(w.kind)}, {"detail", w.detail}};
        if (w.event) j["event"] = m.events.name(*w.event);
        if (w.plantStates) j["plant_states"] = {m.plant.label(w.plantStates->first), m.plant.label(w.plantStates->second)};
        if (w.observerState) {
            Json est = Json::array();
            for (auto q : *w.observerState)
                if (q < m.plant.size()) est.push_back(m.plant.label(q));
            j["estimate"] = est;
        }
        ws.push_back(std::move(j));
    }
    return Json{{"holds", v.holds}, {"witnesses", ws}, {"notes", v.notes}};
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

struct NodeStyle {
    bool initial = false;
    bool marked = false;
    bool dashed = false;
};

template <class Style, class EdgeLabel>
std::string render(const Automaton& a, const std::string& name, Style style, EdgeLabel edgeLabel) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  rankdir=LR;\n";
    for (StateId q = 0; q < a.size(); ++q) {
        NodeStyle st = style(q);
        std::vector<std::string> styles;
        if (st.initial) styles.push_back("bold");
        if (st.dashed) styles.push_back("dashed");
        os << "  " << q << " [label=" << quote(a.label(q)) << ", shape=" << (st.marked ? "doublecircle" : "circle");
        if (!styles.empty()) {
            std::string joined;
            for (std::size_t i = 0; i < styles.size(); ++i) joined += (i ? "," : "") + styles[i];
            os << ", style=" << quote(joined);
        }
        os << "];\n";
    }
    for (StateId q = 0; q < a.size(); ++q)
        for (const auto& e : a.edges(q)) os << "  " << q << " -> " << e.target << " [label=" << quote(edgeLabel(e.label)) << "];\n";
    os << "}\n";
    return os.str();
}

}  // namespace

std::string plantDot(const SystemModel& m) {
    auto legal = m.legalMask();
    return render(
        m.plant, "G",
        [&](StateId q) { return NodeStyle{q == m.plant.initial(), m.plant.isMarked(q), !legal[q]}; },
        [&](EventId e) { return m.events.name(e); });
}

std::string automatonDot(const Automaton& a, const std::string& name, const EventTable& events) {
    return render(
        a, name, [&](StateId q) { return NodeStyle{q == a.initial(), a.isMarked(q), false}; },
        [&](EventId e) { return events.name(e); });
}

std::string attackedDot(const SystemModel& m, const AttackedAutomaton& g) {
    auto legal = m.legalMask();
    return render(
        g.automaton, "G_pi",
        [&](StateId q) {
            return NodeStyle{q == g.automaton.initial(), g.automaton.isMarked(q), g.isPlantState(q) && !legal[q]};
        },
        [&](EventId e) { return m.events.name(e); });
}

std::string observerDot(const SystemModel& m, const Observer& obs) {
    return render(
        obs.automaton, "G_obs", [&](StateId q) { return NodeStyle{q == obs.initial(), obs.isMarked(q), false}; },
        [&](EventId e) { return m.events.name(e); });
}

std::string closedLoopDot(const SystemModel& m, const ClosedLoopAutomaton& cl) {
    auto legal = m.legalMask();
    return render(
        cl.automaton, std::string("closed_loop_") + toString(cl.kind),
        [&](StateId q) {
            return NodeStyle{q == cl.automaton.initial(), cl.automaton.isMarked(q), !legal[cl.meta[q].plantState]};
        },
        [&](EventId e) { return m.events.name(e); });
}

}  // namespace alter::io
