#include "alter/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace alter {

EventId SystemModel::addEvent(std::string_view name, EventAttributes attrs) {
    auto e = events.intern(name);
    if (attributes.size() <= e.value) attributes.resize(e.value + 1);
    attributes[e.value] = attrs;
    plant.addEvent(e);
    return e;
}

const EventAttributes& SystemModel::attr(EventId e) const {
    if (e.value >= attributes.size()) throw InputError("no attributes for event id " + std::to_string(e.value));
    return attributes[e.value];
}

EventAttributes& SystemModel::attr(EventId e) {
    if (e.value >= attributes.size()) throw InputError("no attributes for event id " + std::to_string(e.value));
    return attributes[e.value];
}

std::vector<EventId> SystemModel::uncontrollable() const {
    std::vector<EventId> out;
    for (auto e : events.all())
        if (!attr(e).controllable) out.push_back(e);
    return out;
}

std::vector<EventId> SystemModel::observableEvents() const {
    std::vector<EventId> out;
    for (auto e : events.all())
        if (attr(e).observable) out.push_back(e);
    return out;
}

std::vector<EventId> SystemModel::attackableControlEvents() const {
    std::vector<EventId> out;
    for (auto e : events.all())
        if (attr(e).attackableControl) out.push_back(e);
    return out;
}

std::vector<bool> SystemModel::legalMask() const {
    std::vector<bool> mask(plant.size(), false);
    for (auto x : spec.states)
        if (x < mask.size()) mask[x] = true;
    return mask;
}

std::vector<PlantTransition> SystemModel::plantTransitions() const {
    std::vector<PlantTransition> out;
    for (StateId x = 0; x < plant.size(); ++x)
        for (const auto& e : plant.edges(x)) out.push_back({x, e.label, e.target});
    return out;
}

StateId SystemModel::stateByName(std::string_view name) const {
    for (StateId x = 0; x < plant.size(); ++x)
        if (plant.label(x) == name) return x;
    throw InputError("unknown plant state '" + std::string(name) + "'");
}

EventId SystemModel::eventByName(std::string_view name) const {
    auto e = events.find(name);
    if (!e) throw InputError("unknown event '" + std::string(name) + "'");
    return *e;
}

PlantTransition SystemModel::transition(std::string_view src, std::string_view event, std::string_view dst) const {
    return {stateByName(src), eventByName(event), stateByName(dst)};
}

const Automaton* SystemModel::attackOn(const PlantTransition& tr) const {
    auto it = attacks.find(tr);
    return it == attacks.end() ? nullptr : &it->second;
}

void SystemModel::setInducedSpec(StateSet states, StateSet marked) {
    normalize(states);
    normalize(marked);
    spec.states = std::move(states);
    spec.marked = std::move(marked);
    spec.transitions.clear();
    for (const auto& tr : plantTransitions())
        if (contains(spec.states, tr.source) && contains(spec.states, tr.target)) spec.transitions.push_back(tr);
}

void SystemModel::attackEvent(EventId event, const Automaton& language) {
    for (const auto& tr : plantTransitions())
        if (tr.event == event) attacks[tr] = language;
}

namespace {

std::string describe(const SystemModel& m, const PlantTransition& tr) {
    auto stateName = [&](StateId x) { return x < m.plant.size() ? m.plant.label(x) : std::to_string(x); };
    std::string ev = tr.event.value < m.events.size() ? m.events.name(tr.event) : std::to_string(tr.event.value);
    return "(" + stateName(tr.source) + "," + ev + "," + stateName(tr.target) + ")";
}

}  // namespace

ValidationReport validate(const SystemModel& m) {
    ValidationReport r;
    auto fail = [&](const char* rule, std::string detail, std::string element) {
        r.violations.push_back({rule, std::move(detail), std::move(element)});
    };

    const auto& g = m.plant;
    if (g.empty()) {
        fail(rule::kPlantTrim, "plant has no states", "");
        r.ok = false;
        return r;
    }
    if (!g.isDeterministic()) fail(rule::kPlantDeterministic, "plant must be deterministic and epsilon-free", "");
    auto trim = trimReport(g);
    for (StateId x = 0; x < g.size(); ++x) {
        if (!contains(trim.accessible, x)) fail(rule::kPlantTrim, "plant state unreachable", g.label(x));
        if (!contains(trim.coaccessible, x)) fail(rule::kPlantTrim, "plant state cannot reach a marked state", g.label(x));
    }

    if (m.attributes.size() != m.events.size())
        fail(rule::kAttributes, "every event needs attributes", std::to_string(m.attributes.size()));
    for (auto e : m.events.all()) {
        if (e.value >= m.attributes.size()) break;
        const auto& a = m.attr(e);
        if (a.attackableControl && !a.controllable)
            fail(rule::kAttributes, "attackable controllable event must be controllable", m.events.name(e));
        if (a.attackableObservation && !a.observable)
            fail(rule::kAttributes, "attackable observable event must be observable", m.events.name(e));
    }
    for (auto e : g.alphabet())
        if (e.value >= m.events.size()) fail(rule::kAttributes, "plant uses an undeclared event", std::to_string(e.value));

    // Specification sub-automaton.
    const auto& h = m.spec;
    std::set<PlantTransition> plantEdges;
    for (const auto& tr : m.plantTransitions()) plantEdges.insert(tr);
    if (!contains(h.states, g.initial())) fail(rule::kSubAutomaton, "spec must contain the plant's initial state", g.label(g.initial()));
    for (auto x : h.states)
        if (x >= g.size()) fail(rule::kSubAutomaton, "spec state is not a plant state", std::to_string(x));
    for (auto x : h.marked)
        if (!contains(h.states, x)) fail(rule::kSubAutomaton, "spec marked state outside spec states", std::to_string(x));
    std::set<PlantTransition> specEdges(h.transitions.begin(), h.transitions.end());
    for (const auto& tr : specEdges) {
        if (!plantEdges.count(tr)) fail(rule::kSubAutomaton, "spec transition absent from plant", describe(m, tr));
        else if (!contains(h.states, tr.source) || !contains(h.states, tr.target))
            fail(rule::kSubAutomaton, "spec transition leaves spec states", describe(m, tr));
    }
    for (const auto& tr : plantEdges)
        if (contains(h.states, tr.source) && contains(h.states, tr.target) && !specEdges.count(tr))
            fail(rule::kInduced, "plant transition between spec states missing from spec", describe(m, tr));

    bool specShapeOk = std::none_of(r.violations.begin(), r.violations.end(),
                                    [](const Violation& v) { return v.rule == rule::kSubAutomaton; });
    if (specShapeOk && !h.states.empty()) {
        // Trimness of the spec on its own transitions.
        Automaton sub;
        std::vector<StateId> local(g.size(), 0);
        for (auto x : h.states) {
            local[x] = sub.addState(contains(h.marked, x));
            sub.setLabel(local[x], g.label(x));
        }
        sub.setInitial(local[g.initial()]);
        for (const auto& tr : specEdges) sub.addTransition(local[tr.source], tr.event, local[tr.target]);
        auto specTrim = trimReport(sub);
        for (StateId s = 0; s < sub.size(); ++s) {
            if (!contains(specTrim.accessible, s)) fail(rule::kSpecTrim, "spec state unreachable within spec", sub.label(s));
            if (!contains(specTrim.coaccessible, s))
                fail(rule::kSpecTrim, "spec state cannot reach a spec marked state", sub.label(s));
        }
    }

    // Attack map.
    for (const auto& [tr, lang] : m.attacks) {
        bool known = tr.event.value < m.attributes.size();
        if (!plantEdges.count(tr)) fail(rule::kPiDomain, "attacked transition absent from plant", describe(m, tr));
        if (!known || !m.attr(tr.event).attackableObservation)
            fail(rule::kPiDomain, "attacked transition's event is not attackable-observable", describe(m, tr));
        for (StateId s = 0; s < lang.size(); ++s)
            for (const auto& e : lang.edges(s)) {
                if (isEpsilon(e.label)) continue;
                if (e.label.value >= m.attributes.size() || !m.attr(e.label).observable)
                    fail(rule::kAttackAlphabet, "attack language uses a non-observable event", describe(m, tr));
            }
        auto lt = trimReport(lang);
        if (lang.empty() || !contains(lt.coaccessible, lang.initial()))
            fail(rule::kAttackNonempty, "attack language is empty", describe(m, tr));
    }
    for (const auto& tr : attackableTransitions(m))
        if (!m.attacks.count(tr)) fail(rule::kPiTotal, "attackable transition has no attack language", describe(m, tr));

    r.ok = r.violations.empty();
    return r;
}

void requireValid(const SystemModel& m) {
    auto r = validate(m);
    if (r.ok) return;
    std::ostringstream os;
    os << "invalid model:";
    for (const auto& v : r.violations) os << "\n  [" << v.rule << "] " << v.detail << (v.element.empty() ? "" : ": ") << v.element;
    throw InputError(os.str());
}

std::vector<PlantTransition> attackableTransitions(const SystemModel& m) {
    std::vector<PlantTransition> out;
    for (const auto& tr : m.plantTransitions())
        if (tr.event.value < m.attributes.size() && m.attr(tr.event).attackableObservation) out.push_back(tr);
    return out;
}

namespace attack_language {

Automaton deletion() {
    Automaton a;
    a.setInitial(a.addState(true));
    return a;
}

Automaton replacement(const Word& alpha) {
    Automaton a;
    StateId cur = a.addState(alpha.empty());
    a.setInitial(cur);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        auto nxt = a.addState(i + 1 == alpha.size());
        a.addTransition(cur, alpha[i], nxt);
        cur = nxt;
    }
    return a;
}

Automaton insertion(EventId sigma, const Word& alpha) {
    // Two branches sharing the initial state: sigma.alpha and alpha.sigma.
    Automaton a;
    auto init = a.addState(false);
    a.setInitial(init);
    auto branch = [&](Word w) {
        StateId cur = init;
        for (std::size_t i = 0; i < w.size(); ++i) {
            auto nxt = a.addState(i + 1 == w.size());
            a.addTransition(cur, w[i], nxt);
            cur = nxt;
        }
    };
    Word first{sigma};
    first.insert(first.end(), alpha.begin(), alpha.end());
    Word second = alpha;
    second.push_back(sigma);
    branch(first);
    branch(second);
    return a;
}

Automaton allOut(const std::vector<EventId>& observable) {
    Automaton a;
    auto s = a.addState(true);
    a.setInitial(s);
    for (auto e : observable) a.addTransition(s, e, s);
    return a;
}

}  // namespace attack_language

}  // namespace alter
