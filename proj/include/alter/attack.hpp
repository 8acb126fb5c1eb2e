#pragma once

// Observation machinery under sensor attacks: the attack-replaced plant, its
// observable projection, the attack-aware observer and the per-transition
// observer update used by the closed loop.

#include <cstdint>
#include <map>
#include <vector>

#include "alter/fsa.hpp"
#include "alter/model.hpp"

namespace alter {

/// Back-reference of an added state to the attacked transition and the state
/// of that transition's attack automaton it copies.
struct AttackCopy {
    PlantTransition transition;
    StateId attackState = 0;
};

/// The plant with each attacked transition replaced by a fresh copy of its
/// attack automaton. States [0, plantStates) are the plant's own ids; the
/// rest are copies, described by `copies[q - plantStates]`. Marked = plant
/// states.
struct AttackedAutomaton {
    Automaton automaton;
    std::size_t plantStates = 0;
    std::vector<AttackCopy> copies;

    bool isPlantState(StateId q) const { return q < plantStates; }
};

AttackedAutomaton buildGpi(const SystemModel& m);

/// Rewrites unobservable labels to epsilon. Alphabet becomes the observable
/// events.
Automaton buildGepsPi(const AttackedAutomaton& g, const SystemModel& m);

/// Attack-aware observer: deterministic over the observable events, each
/// state carrying its member set over plant states and attack copies.
struct Observer {
    Automaton automaton;
    std::size_t plantStates = 0;
    std::uint64_t fingerprint = 0;

    std::size_t size() const { return automaton.size(); }
    StateId initial() const { return automaton.initial(); }
    const StateSet& members(StateId y) const { return automaton.members(y); }
    /// y intersects the plant states.
    bool isMarked(StateId y) const { return automaton.isMarked(y); }
};

Observer buildObserver(const SystemModel& m);

/// Hash of the projected attacked plant, which determines the observer. Equal
/// to the `fingerprint` of buildObserver(m).
std::uint64_t observationFingerprint(const SystemModel& m);

/// Plant states of an observer state.
StateSet estimate(const Observer& obs, StateId y);

/// Observer states whose plant part equals `plantStates` exactly.
std::vector<StateId> findByEstimate(const Observer& obs, const StateSet& plantStates);

/// True iff every subset reached by determinizing `gEps` contains at most
/// one of the anchor states [0, anchors). For the projected attacked plant
/// this is determinism modulo the epsilon links introduced by splicing.
bool deterministicUpToEpsilon(const Automaton& gEps, std::size_t anchors);

/// Advances a set of observer states across one plant transition. Reach sets
/// for attacked transitions are memoized per (observer state, transition);
/// an instance must not be shared across threads.
class ObserverStepper {
public:
    ObserverStepper(const SystemModel& m, const Observer& obs);

    StateSet step(const StateSet& from, const PlantTransition& tr);

private:
    const StateSet& attackedReach(StateId y, const PlantTransition& tr);

    const SystemModel& model_;
    const Observer& obs_;
    std::map<PlantTransition, Automaton> attackDfa_;
    std::map<std::pair<StateId, PlantTransition>, StateSet> memo_;
};

/// One-shot form of ObserverStepper::step.
StateSet observerStep(const SystemModel& m, const Observer& obs, const StateSet& from, const PlantTransition& tr);

}  // namespace alter
