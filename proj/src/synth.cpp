#include "alter/synth.hpp"

#include <algorithm>

#include "alter/verify.hpp"

namespace alter {

bool Supervisor::enables(StateId y, EventId e) const {
    const auto& row = enabled.at(y);
    return std::binary_search(row.begin(), row.end(), e);
}

namespace {

template <class Rule>
Supervisor tabulate(const SystemModel& m, const Observer& obs, Rule rule) {
    requireMatchingObserver(m, obs);
    auto legal = m.legalMask();
    Supervisor s;
    s.observerFingerprint = obs.fingerprint;
    s.enabled.resize(obs.size());
    for (StateId y = 0; y < obs.size(); ++y) {
        auto est = estimate(obs, y);
        for (auto e : m.events.all())
            if (rule(est, e, legal)) s.enabled[y].push_back(e);
    }
    return s;
}

}  // namespace

Supervisor synthSp(const SystemModel& m, const Observer& obs) {
    return tabulate(m, obs, [&](const StateSet& est, EventId e, const std::vector<bool>& legal) {
        return std::all_of(est.begin(), est.end(), [&](StateId x) {
            if (!legal[x]) return true;
            auto nx = m.plant.next(x, e);
            return !nx || legal[*nx];
        });
    });
}

Supervisor synthSr(const SystemModel& m, const Observer& obs) {
    return tabulate(m, obs, [&](const StateSet& est, EventId e, const std::vector<bool>& legal) {
        return std::any_of(est.begin(), est.end(), [&](StateId x) {
            if (!legal[x]) return false;
            auto nx = m.plant.next(x, e);
            return nx && legal[*nx];
        });
    });
}

void requireMatchingSupervisor(const Observer& obs, const Supervisor& s) {
    if (s.observerFingerprint != obs.fingerprint || s.size() != obs.size())
        throw InputError("supervisor was built over a different observer");
}

SupervisorComparison supervisorsEqual(const SystemModel& m, const Observer& obs, const Supervisor& first,
                                      const Supervisor& second, CompareScope scope) {
    requireMatchingObserver(m, obs);
    requireMatchingSupervisor(obs, first);
    requireMatchingSupervisor(obs, second);
    SupervisorComparison out;
    for (StateId y = 0; y < obs.size(); ++y) {
        if (!obs.isMarked(y)) continue;
        const auto& a = first.enabled[y];
        const auto& b = second.enabled[y];
        std::vector<EventId> onlyA, onlyB;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(onlyA));
        std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(onlyB));
        auto counts = [&](EventId e) {
            if (scope == CompareScope::All) return true;
            for (auto x : estimate(obs, y))
                if (m.legal(x) && m.plant.next(x, e)) return true;
            return false;
        };
        for (auto e : onlyA)
            if (counts(e)) out.diffs.push_back({y, e, DiffSide::OnlyFirst});
        for (auto e : onlyB)
            if (counts(e)) out.diffs.push_back({y, e, DiffSide::OnlySecond});
    }
    std::sort(out.diffs.begin(), out.diffs.end());
    out.equal = out.diffs.empty();
    return out;
}

std::vector<StateId> uncontrollableNotEnabled(const SystemModel& m, const Observer& obs, const Supervisor& s) {
    requireMatchingSupervisor(obs, s);
    std::vector<StateId> out;
    auto uc = m.uncontrollable();
    for (StateId y = 0; y < obs.size(); ++y) {
        if (!obs.isMarked(y)) continue;
        if (std::any_of(uc.begin(), uc.end(), [&](EventId e) { return !s.enables(y, e); })) out.push_back(y);
    }
    return out;
}

namespace {

bool member(const std::vector<EventId>& v, EventId e) { return std::find(v.begin(), v.end(), e) != v.end(); }

}  // namespace

bool commandContainsExists(const ControlCommandSet& c, EventId sigma) {
    return member(c.base, sigma) || member(c.attackable, sigma);
}

bool commandContainsForall(const ControlCommandSet& c, EventId sigma) {
    return member(c.base, sigma) && !member(c.attackable, sigma);
}

}  // namespace alter
