#include "alter/closedloop.hpp"

#include <deque>
#include <map>

#include "alter/verify.hpp"

namespace alter {

const char* toString(LoopKind k) { return k == LoopKind::Large ? "large" : "small"; }

bool largeGuard(const SystemModel& m, const Supervisor& s, const StateSet& b, EventId sigma) {
    if (!m.controllable(sigma) || m.attackableControl(sigma)) return true;
    for (auto y : b)
        if (s.enables(y, sigma)) return true;
    return false;
}

bool smallGuard(const SystemModel& m, const Supervisor& s, const StateSet& b, EventId sigma) {
    if (m.attackableControl(sigma)) return false;
    if (!m.controllable(sigma)) return true;
    for (auto y : b)
        if (!s.enables(y, sigma)) return false;
    return true;
}

ClosedLoopAutomaton buildClosedLoop(const SystemModel& m, const Observer& obs, const Supervisor& s, LoopKind kind) {
    requireMatchingObserver(m, obs);
    requireMatchingSupervisor(obs, s);
    ClosedLoopAutomaton cl;
    cl.kind = kind;
    auto& a = cl.automaton;
    for (auto e : m.plant.alphabet()) a.addEvent(e);
    const auto& g = m.plant;

    ObserverStepper stepper(m, obs);
    using Key = std::pair<StateId, StateSet>;
    std::map<Key, StateId> index;
    std::deque<Key> work;
    auto intern = [&](StateId x, StateSet b) {
        Key key{x, std::move(b)};
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        for (auto y : key.second)
            if (!obs.isMarked(y))
                throw InternalError("closed loop reached an unmarked observer state at plant state " + g.label(x));
        auto id = a.addState(g.isMarked(x));
        std::string label = g.label(x) + " | {";
        for (std::size_t i = 0; i < key.second.size(); ++i) {
            if (i) label += ',';
            label += obs.automaton.label(key.second[i]);
        }
        a.setLabel(id, label + "}");
        cl.meta.push_back({x, key.second});
        index.emplace(key, id);
        work.push_back(key);
        return id;
    };
    a.setInitial(intern(g.initial(), StateSet{obs.initial()}));
    while (!work.empty()) {
        Key cur = work.front();
        work.pop_front();
        auto src = index.at(cur);
        const auto& [x, b] = cur;
        for (const auto& e : g.edges(x)) {
            bool allowed = kind == LoopKind::Large ? largeGuard(m, s, b, e.label) : smallGuard(m, s, b, e.label);
            if (!allowed) continue;
            auto nb = stepper.step(b, {x, e.label, e.target});
            a.addTransition(src, e.label, intern(e.target, std::move(nb)));
        }
    }
    return cl;
}

ClosedLoopAutomaton buildLarge(const SystemModel& m, const Observer& obs, const Supervisor& s) {
    return buildClosedLoop(m, obs, s, LoopKind::Large);
}

ClosedLoopAutomaton buildSmall(const SystemModel& m, const Observer& obs, const Supervisor& s) {
    return buildClosedLoop(m, obs, s, LoopKind::Small);
}

Automaton markedLarge(const ClosedLoopAutomaton& cl, const SystemModel&) {
    if (cl.kind != LoopKind::Large) throw InputError("markedLarge expects the large closed loop");
    return cl.automaton;
}

NonblockingReport checkNonblocking(const SystemModel& m, const Observer& obs, const Supervisor& s) {
    NonblockingReport r;
    auto large = buildLarge(m, obs, s);
    auto small = buildSmall(m, obs, s);
    const auto& a = large.automaton;

    auto trim = trimReport(a);
    r.cond1 = trim.coaccessible.size() == a.size();
    auto eq = dfaEquivalent(a, small.automaton, false);
    r.cond2 = eq.equal;
    r.nonblocking = r.cond1 && r.cond2;

    if (!r.cond1) {
        // Shortest path to a blocking state.
        std::vector<std::optional<std::pair<StateId, EventId>>> parent(a.size());
        std::vector<bool> seen(a.size(), false);
        std::deque<StateId> work{a.initial()};
        seen[a.initial()] = true;
        while (!work.empty()) {
            auto q = work.front();
            work.pop_front();
            if (!contains(trim.coaccessible, q)) {
                Word w;
                for (auto c = q; parent[c]; c = parent[c]->first) w.push_back(parent[c]->second);
                r.witness = Word(w.rbegin(), w.rend());
                r.witnessKind = "blocking-state";
                break;
            }
            for (const auto& e : a.edges(q))
                if (!seen[e.target]) {
                    seen[e.target] = true;
                    parent[e.target] = std::make_pair(q, e.label);
                    work.push_back(e.target);
                }
        }
    } else if (!r.cond2) {
        r.witness = eq.witness;
        r.witnessKind = "large-small-difference";
    }
    return r;
}

Automaton specAutomaton(const SystemModel& m, bool markAll) {
    Automaton h;
    for (auto e : m.plant.alphabet()) h.addEvent(e);
    std::map<StateId, StateId> local;
    for (auto x : m.spec.states) {
        local[x] = h.addState(markAll || contains(m.spec.marked, x));
        h.setLabel(local[x], m.plant.label(x));
    }
    if (h.empty()) return h;
    h.setInitial(local.at(m.plant.initial()));
    for (const auto& tr : m.spec.transitions) h.addTransition(local.at(tr.source), tr.event, local.at(tr.target));
    return h;
}

}  // namespace alter
