#pragma once

// Plant, specification sub-automaton, event partition and sensor-attack map.

#include <map>
#include <string>
#include <vector>

#include "alter/fsa.hpp"

namespace alter {

struct EventAttributes {
    bool controllable = true;
    bool observable = true;
    bool attackableControl = false;
    bool attackableObservation = false;
    bool operator==(const EventAttributes&) const = default;
};

struct PlantTransition {
    StateId source = 0;
    EventId event;
    StateId target = 0;
    auto operator<=>(const PlantTransition&) const = default;
};

/// Sub-automaton of the plant: legal states, their marking, and the legal
/// transitions. State ids are plant ids.
struct SpecAutomaton {
    StateSet states;
    StateSet marked;
    std::vector<PlantTransition> transitions;
    bool operator==(const SpecAutomaton&) const = default;
};

struct SystemModel {
    EventTable events;
    std::vector<EventAttributes> attributes;  // indexed by EventId::value
    Automaton plant;
    SpecAutomaton spec;
    std::map<PlantTransition, Automaton> attacks;

    EventId addEvent(std::string_view name, EventAttributes attrs);
    const EventAttributes& attr(EventId e) const;
    EventAttributes& attr(EventId e);

    bool controllable(EventId e) const { return attr(e).controllable; }
    bool observable(EventId e) const { return attr(e).observable; }
    bool attackableControl(EventId e) const { return attr(e).attackableControl; }
    bool attackableObservation(EventId e) const { return attr(e).attackableObservation; }

    std::vector<EventId> uncontrollable() const;
    std::vector<EventId> observableEvents() const;
    std::vector<EventId> attackableControlEvents() const;

    /// Per-plant-state membership in the specification.
    std::vector<bool> legalMask() const;
    bool legal(StateId x) const { return contains(spec.states, x); }

    std::vector<PlantTransition> plantTransitions() const;
    StateId stateByName(std::string_view name) const;
    EventId eventByName(std::string_view name) const;
    PlantTransition transition(std::string_view src, std::string_view event, std::string_view dst) const;

    /// Attack automaton keyed on `tr`, or nullptr if the transition is not
    /// attacked.
    const Automaton* attackOn(const PlantTransition& tr) const;

    /// Makes the spec the sub-automaton induced by `states`.
    void setInducedSpec(StateSet states, StateSet marked);
    /// Attaches `language` to every plant transition labeled `event`.
    void attackEvent(EventId event, const Automaton& language);
};

/// Stable identifiers for validation rules.
namespace rule {
inline constexpr const char* kPlantDeterministic = "plant deterministic";
inline constexpr const char* kPlantTrim = "plant trim";
inline constexpr const char* kAttributes = "attributes";
inline constexpr const char* kSubAutomaton = "sub-automaton";
inline constexpr const char* kInduced = "induced";
inline constexpr const char* kSpecTrim = "spec trim";
inline constexpr const char* kPiDomain = "pi domain";
inline constexpr const char* kPiTotal = "pi total";
inline constexpr const char* kAttackAlphabet = "attack alphabet";
inline constexpr const char* kAttackNonempty = "attack nonempty";
}  // namespace rule

struct Violation {
    std::string rule;
    std::string detail;
    std::string element;
    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate(const SystemModel& m);

/// Throws InputError listing the violations when the model is not valid.
void requireValid(const SystemModel& m);

/// Plant transitions labeled by attackable observable events.
std::vector<PlantTransition> attackableTransitions(const SystemModel& m);

// Convenience constructors for common attack languages over the observable
// alphabet.
namespace attack_language {
/// {eps}
Automaton deletion();
/// {alpha}
Automaton replacement(const Word& alpha);
/// {sigma alpha, alpha sigma}
Automaton insertion(EventId sigma, const Word& alpha);
/// Sigma_o^*
Automaton allOut(const std::vector<EventId>& observable);
}  // namespace attack_language

}  // namespace alter
