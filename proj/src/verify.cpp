#include "alter/verify.hpp"

#include <algorithm>

namespace alter {

const char* toString(WitnessKind k) {
    switch (k) {
        case WitnessKind::UncontrollableExit: return "uncontrollable-exit";
        case WitnessKind::AttackableEventInSpec: return "attackable-event-in-spec";
        case WitnessKind::EstimateConflict: return "estimate-conflict";
        case WitnessKind::MarkingMismatch: return "marking-mismatch";
    }
    return "?";
}

void Verdict::add(Witness w) {
    holds = false;
    witnesses.push_back(std::move(w));
}

void Verdict::finish(bool firstOnly) {
    std::sort(witnesses.begin(), witnesses.end());
    witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());
    if (firstOnly && witnesses.size() > 1) witnesses.resize(1);
    holds = witnesses.empty();
}

namespace {

std::string stateName(const SystemModel& m, StateId x) { return m.plant.label(x); }

// Condition 1 with the given set of events that cannot be prevented.
void exitCheck(const SystemModel& m, const std::vector<bool>& forced, Verdict& v) {
    auto legal = m.legalMask();
    for (auto x : m.spec.states)
        for (const auto& e : m.plant.edges(x)) {
            if (!forced[e.label.value] || legal[e.target]) continue;
            v.add({WitnessKind::UncontrollableExit, std::nullopt, e.label, std::make_pair(x, e.target),
                   "event " + m.events.name(e.label) + " leaves the spec from " + stateName(m, x) + " to " +
                       stateName(m, e.target)});
        }
}

void attackFreeSpecCheck(const SystemModel& m, Verdict& v) {
    for (const auto& tr : m.spec.transitions)
        if (m.attackableControl(tr.event))
            v.add({WitnessKind::AttackableEventInSpec, std::nullopt, tr.event, std::make_pair(tr.source, tr.target),
                   "spec transition uses attackable controllable event " + m.events.name(tr.event)});
}

std::vector<bool> mask(const SystemModel& m, bool withAttackable) {
    std::vector<bool> out(m.events.size(), false);
    for (auto e : m.events.all()) out[e.value] = !m.controllable(e) || (withAttackable && m.attackableControl(e));
    return out;
}

}  // namespace

Verdict checkCADControllable(const SystemModel& m, CheckOptions opt) {
    Verdict v;
    exitCheck(m, mask(m, true), v);
    attackFreeSpecCheck(m, v);
    v.finish(opt.firstOnly);
    return v;
}

Verdict checkCAControllable(const SystemModel& m, CheckOptions opt) {
    Verdict v;
    exitCheck(m, mask(m, true), v);
    v.finish(opt.firstOnly);
    return v;
}

Verdict checkCASControllable(const SystemModel& m, CheckOptions opt) {
    Verdict v;
    exitCheck(m, mask(m, false), v);
    attackFreeSpecCheck(m, v);
    v.finish(opt.firstOnly);
    return v;
}

void requireMatchingObserver(const SystemModel& m, const Observer& obs) {
    if (obs.plantStates != m.plant.size() || obs.fingerprint != observationFingerprint(m))
        throw InputError("observer was built for a different model");
}

namespace {

struct Split {
    std::vector<StateId> staying;  // legal x with xi(x, s) legal
    std::vector<StateId> leaving;  // legal x with xi(x, s) illegal
};

Split splitEstimate(const SystemModel& m, const std::vector<bool>& legal, const StateSet& est, EventId s) {
    Split out;
    for (auto x : est) {
        if (!legal[x]) continue;
        auto nx = m.plant.next(x, s);
        if (!nx) continue;
        (legal[*nx] ? out.staying : out.leaving).push_back(x);
    }
    return out;
}

}  // namespace

namespace {

// Estimate-level test with the feasibility guard over the estimates of `obs`.
Verdict estimateConflicts(const SystemModel& m, const Observer& obs, CheckOptions opt) {
    auto legal = m.legalMask();
    Verdict v;
    for (StateId y = 0; y < obs.size(); ++y) {
        if (!obs.isMarked(y)) continue;
        auto est = estimate(obs, y);
        for (auto s : m.events.all()) {
            auto split = splitEstimate(m, legal, est, s);
            // Feasibility guard: nothing to decide if no legal state of y has s.
            if (split.staying.empty() || split.leaving.empty()) continue;
            for (auto x : split.staying)
                for (auto xp : split.leaving)
                    v.add({WitnessKind::EstimateConflict, obs.members(y), s, std::make_pair(x, xp),
                           "estimate " + obs.automaton.label(y) + ": " + m.events.name(s) + " stays legal from " +
                               stateName(m, x) + " but leaves the spec from " + stateName(m, xp)});
        }
    }
    v.finish(opt.firstOnly);
    return v;
}

}  // namespace

Verdict checkCADObservable(const SystemModel& m, const Observer& obs, CheckOptions opt) {
    requireMatchingObserver(m, obs);
    auto v = estimateConflicts(m, obs, opt);
    auto literal = checkCADObservableLiteral(m, obs);
    v.notes.push_back(std::string("unrestricted reading ") + (literal.holds ? "holds" : "fails"));
    return v;
}

SystemModel restrictToSpecRuns(const SystemModel& m) {
    SystemModel r = m;
    r.plant = Automaton{};
    for (auto e : m.plant.alphabet()) r.plant.addEvent(e);
    for (StateId x = 0; x < m.plant.size(); ++x) {
        r.plant.addState(m.plant.isMarked(x));
        r.plant.setLabel(x, m.plant.label(x));
    }
    r.plant.setInitial(m.plant.initial());
    for (StateId x = 0; x < m.plant.size(); ++x)
        if (m.legal(x))
            for (const auto& e : m.plant.edges(x)) r.plant.addTransition(x, e.label, e.target);
    std::erase_if(r.attacks, [&](const auto& kv) { return !m.legal(kv.first.source); });
    return r;
}

Verdict checkCADObservableExact(const SystemModel& m, CheckOptions opt) {
    auto r = restrictToSpecRuns(m);
    return estimateConflicts(r, buildObserver(r), opt);
}

Verdict checkCADObservableLiteral(const SystemModel& m, const Observer& obs) {
    requireMatchingObserver(m, obs);
    auto legal = m.legalMask();
    Verdict v;
    for (StateId y = 0; y < obs.size(); ++y) {
        if (!obs.isMarked(y)) continue;
        auto est = estimate(obs, y);
        for (auto s : m.events.all()) {
            auto split = splitEstimate(m, legal, est, s);
            bool forall = split.leaving.empty();
            bool exists = !split.staying.empty();
            if (forall != exists)
                v.add({WitnessKind::EstimateConflict, obs.members(y), s, std::nullopt,
                       "estimate " + obs.automaton.label(y) + ", event " + m.events.name(s)});
        }
    }
    v.finish(false);
    return v;
}

Verdict checkLmClosed(const SystemModel& m, CheckOptions opt) {
    Verdict v;
    StateSet expected;
    for (auto x : m.spec.states)
        if (m.plant.isMarked(x)) expected.push_back(x);
    StateSet diff;
    std::set_symmetric_difference(expected.begin(), expected.end(), m.spec.marked.begin(), m.spec.marked.end(),
                                  std::back_inserter(diff));
    for (auto x : diff)
        v.add({WitnessKind::MarkingMismatch, std::nullopt, std::nullopt, std::make_pair(x, x),
               contains(m.spec.marked, x) ? "spec marks " + stateName(m, x) + " but the plant does not"
                                          : "plant marks spec state " + stateName(m, x) + " but the spec does not"});
    v.finish(opt.firstOnly);
    return v;
}

DeterministicExistence deterministicSupervisorExists(const SystemModel& m, const Observer& obs, CheckOptions opt) {
    DeterministicExistence r;
    r.controllability = checkCADControllable(m, opt);
    r.observability = checkCADObservable(m, obs, opt);
    r.exists = r.controllability.holds && r.observability.holds;
    return r;
}

NonblockingExistence nonblockingSupervisorExists(const SystemModel& m, const Observer& obs, CheckOptions opt) {
    NonblockingExistence r;
    r.lmClosed = checkLmClosed(m, opt);
    // The spec automaton generates the prefix closure of its marked language.
    r.controllability = checkCADControllable(m, opt);
    r.observability = checkCADObservable(m, obs, opt);
    r.exists = r.lmClosed.holds && r.controllability.holds && r.observability.holds;
    return r;
}

}  // namespace alter
