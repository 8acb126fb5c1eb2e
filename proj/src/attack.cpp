#include "alter/attack.hpp"

#include <deque>
#include <set>

namespace alter {

AttackedAutomaton buildGpi(const SystemModel& m) {
    AttackedAutomaton out;
    const auto& g = m.plant;
    auto& a = out.automaton;
    for (auto e : g.alphabet()) a.addEvent(e);
    for (StateId x = 0; x < g.size(); ++x) {
        a.addState(true);
        a.setLabel(x, g.label(x));
    }
    out.plantStates = g.size();
    if (g.empty()) return out;
    a.setInitial(g.initial());

    for (const auto& tr : m.plantTransitions()) {
        const Automaton* lang = m.attackOn(tr);
        if (!lang) {
            a.addTransition(tr.source, tr.event, tr.target);
            continue;
        }
        // Fresh copy per attacked transition.
        auto offset = static_cast<StateId>(a.size());
        std::string prefix = "(" + g.label(tr.source) + "," + m.events.name(tr.event) + "," + g.label(tr.target) + ")";
        for (StateId q = 0; q < lang->size(); ++q) {
            auto id = a.addState(false);
            a.setLabel(id, prefix + "." + lang->label(q));
            out.copies.push_back({tr, q});
        }
        for (StateId q = 0; q < lang->size(); ++q)
            for (const auto& e : lang->edges(q)) a.addTransition(offset + q, e.label, offset + e.target);
        a.addTransition(tr.source, kEpsilon, offset + lang->initial());
        for (auto q : lang->markedStates()) a.addTransition(offset + q, kEpsilon, tr.target);
    }
    return out;
}

Automaton buildGepsPi(const AttackedAutomaton& g, const SystemModel& m) {
    const auto& src = g.automaton;
    Automaton out;
    for (auto e : m.observableEvents()) out.addEvent(e);
    for (StateId q = 0; q < src.size(); ++q) {
        out.addState(src.isMarked(q));
        out.setLabel(q, src.label(q));
    }
    if (src.empty()) return out;
    out.setInitial(src.initial());
    for (StateId q = 0; q < src.size(); ++q)
        for (const auto& e : src.edges(q)) {
            bool silent = isEpsilon(e.label) || !m.observable(e.label);
            out.addTransition(q, silent ? kEpsilon : e.label, e.target);
        }
    return out;
}

namespace {

std::uint64_t fingerprintOf(const Automaton& a) {
    // FNV-1a over the initial state and the transitions.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(a.size());
    mix(a.initial());
    for (StateId q = 0; q < a.size(); ++q) {
        mix(a.isMarked(q));
        for (const auto& e : a.edges(q)) {
            mix(e.label.value);
            mix(e.target);
        }
    }
    return h;
}

}  // namespace

std::uint64_t observationFingerprint(const SystemModel& m) { return fingerprintOf(buildGepsPi(buildGpi(m), m)); }

Observer buildObserver(const SystemModel& m) {
    auto gpi = buildGpi(m);
    auto geps = buildGepsPi(gpi, m);
    Observer obs;
    obs.plantStates = gpi.plantStates;
    obs.automaton = subsetConstruct(geps);
    obs.fingerprint = fingerprintOf(geps);
    return obs;
}

StateSet estimate(const Observer& obs, StateId y) {
    StateSet out;
    for (auto q : obs.members(y))
        if (q < obs.plantStates) out.push_back(q);
    return out;
}

std::vector<StateId> findByEstimate(const Observer& obs, const StateSet& plantStates) {
    std::vector<StateId> out;
    for (StateId y = 0; y < obs.size(); ++y)
        if (estimate(obs, y) == plantStates) out.push_back(y);
    return out;
}

bool deterministicUpToEpsilon(const Automaton& gEps, std::size_t anchors) {
    auto det = subsetConstruct(gEps);
    for (StateId y = 0; y < det.size(); ++y) {
        std::size_t n = 0;
        for (auto q : det.members(y))
            if (q < anchors) ++n;
        if (n > 1) return false;
    }
    return true;
}

ObserverStepper::ObserverStepper(const SystemModel& m, const Observer& obs) : model_(m), obs_(obs) {}

const StateSet& ObserverStepper::attackedReach(StateId y, const PlantTransition& tr) {
    auto key = std::make_pair(y, tr);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    auto dit = attackDfa_.find(tr);
    if (dit == attackDfa_.end()) dit = attackDfa_.emplace(tr, subsetConstruct(*model_.attackOn(tr))).first;
    const Automaton& f = dit->second;

    // Reachable pairs of (observer state, attack state) from (y, initial);
    // collect observer states paired with a marked attack state.
    const auto& o = obs_.automaton;
    StateSet reach;
    std::set<std::pair<StateId, StateId>> seen{{y, f.initial()}};
    std::deque<std::pair<StateId, StateId>> work{{y, f.initial()}};
    while (!work.empty()) {
        auto [oy, fq] = work.front();
        work.pop_front();
        if (f.isMarked(fq)) reach.push_back(oy);
        for (const auto& e : f.edges(fq)) {
            auto next = o.next(oy, e.label);
            if (!next) continue;
            if (seen.insert({*next, e.target}).second) work.push_back({*next, e.target});
        }
    }
    normalize(reach);
    return memo_.emplace(key, std::move(reach)).first->second;
}

StateSet ObserverStepper::step(const StateSet& from, const PlantTransition& tr) {
    if (from.empty()) throw InputError("observerStep: empty observer-state set");
    StateSet out;
    if (model_.attackOn(tr)) {
        for (auto y : from) {
            const auto& r = attackedReach(y, tr);
            out.insert(out.end(), r.begin(), r.end());
        }
    } else if (!model_.observable(tr.event)) {
        return from;
    } else {
        for (auto y : from)
            if (auto n = obs_.automaton.next(y, tr.event)) out.push_back(*n);
    }
    normalize(out);
    if (out.empty())
        throw InternalError("observerStep: no observer state follows transition (" + model_.plant.label(tr.source) + "," +
                            model_.events.name(tr.event) + "," + model_.plant.label(tr.target) + ")");
    return out;
}

StateSet observerStep(const SystemModel& m, const Observer& obs, const StateSet& from, const PlantTransition& tr) {
    ObserverStepper stepper(m, obs);
    return stepper.step(from, tr);
}

}  // namespace alter
