#pragma once

// Large and small closed-loop languages as deterministic products of the plant
// with sets of observer states, and the nonblocking test built on them.

#include <optional>
#include <string>
#include <vector>

#include "alter/attack.hpp"
#include "alter/model.hpp"
#include "alter/synth.hpp"

namespace alter {

enum class LoopKind { Large, Small };

const char* toString(LoopKind k);

struct ProductMeta {
    StateId plantState = 0;
    StateSet observerStates;  // sorted observer ids
};

struct ClosedLoopAutomaton {
    Automaton automaton;
    std::vector<ProductMeta> meta;
    LoopKind kind = LoopKind::Large;
};

/// sigma may occur from (x, B) in the large language: plant-feasible and
/// uncontrollable, control-attackable, or enabled at some y in B.
bool largeGuard(const SystemModel& m, const Supervisor& s, const StateSet& b, EventId sigma);
/// sigma may occur in the small language: not control-attackable, and
/// uncontrollable or enabled at every y in B.
bool smallGuard(const SystemModel& m, const Supervisor& s, const StateSet& b, EventId sigma);

ClosedLoopAutomaton buildClosedLoop(const SystemModel& m, const Observer& obs, const Supervisor& s, LoopKind kind);
ClosedLoopAutomaton buildLarge(const SystemModel& m, const Observer& obs, const Supervisor& s);
ClosedLoopAutomaton buildSmall(const SystemModel& m, const Observer& obs, const Supervisor& s);

/// The large product viewed as a recognizer of the marked large language.
Automaton markedLarge(const ClosedLoopAutomaton& cl, const SystemModel& m);

struct NonblockingReport {
    bool nonblocking = false;
    /// Every reachable state of the large product reaches a marked state.
    bool cond1 = false;
    /// Large and small languages coincide.
    bool cond2 = false;
    std::optional<Word> witness;
    std::string witnessKind;  // "blocking-state" or "large-small-difference"
};

NonblockingReport checkNonblocking(const SystemModel& m, const Observer& obs, const Supervisor& s);

/// Copy of the spec as a deterministic automaton over the plant alphabet,
/// marking either all spec states or only the spec's marked states.
Automaton specAutomaton(const SystemModel& m, bool markAll);

}  // namespace alter
