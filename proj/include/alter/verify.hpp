#pragma once

// Existence conditions for deterministic and nonblocking supervisors under
// sensor and actuator attacks.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alter/attack.hpp"
#include "alter/model.hpp"

namespace alter {

enum class WitnessKind {
    UncontrollableExit,
    AttackableEventInSpec,
    EstimateConflict,
    MarkingMismatch,
};

const char* toString(WitnessKind k);

struct Witness {
    WitnessKind kind = WitnessKind::UncontrollableExit;
    /// Member set (plant states and attack copies) of the offending observer
    /// state; EstimateConflict only.
    std::optional<StateSet> observerState;
    std::optional<EventId> event;
    /// UncontrollableExit / AttackableEventInSpec: (x, xi(x, event)).
    /// EstimateConflict: (state enabling the event legally, state exiting the
    /// spec). MarkingMismatch: (x, x).
    std::optional<std::pair<StateId, StateId>> plantStates;
    std::string detail;

    auto operator<=>(const Witness&) const = default;
};

struct Verdict {
    bool holds = true;
    std::vector<Witness> witnesses;
    /// Informational remarks that do not affect `holds`.
    std::vector<std::string> notes;

    void add(Witness w);
    void finish(bool firstOnly);
};

struct CheckOptions {
    /// Keep only the canonically first witness.
    bool firstOnly = false;
};

/// J(Sigma_uc + Sigma_c^a) & L(G) in J, and J free of Sigma_c^a.
Verdict checkCADControllable(const SystemModel& m, CheckOptions opt = {});
/// J(Sigma_uc + Sigma_c^a) & L(G) in J.
Verdict checkCAControllable(const SystemModel& m, CheckOptions opt = {});
/// J Sigma_uc & L(G) in J, and J free of Sigma_c^a.
Verdict checkCASControllable(const SystemModel& m, CheckOptions opt = {});

/// Estimate-level observability test on the attack-aware observer. For each
/// marked observer state y and event sigma feasible from some legal state of
/// y, it fails when one legal state of y stays legal under sigma while another
/// leaves the spec. Legal means membership in the spec's states; attack copies
/// and illegal members of y are ignored.
///
/// The verdict's notes record whether the unrestricted reading (every event,
/// feasible or not) would also hold.
Verdict checkCADObservable(const SystemModel& m, const Observer& obs, CheckOptions opt = {});

/// The plant with every transition leaving a non-spec state removed. Its
/// runs into spec states are exactly the strings of J, and it keeps every
/// one-step exit from J.
SystemModel restrictToSpecRuns(const SystemModel& m);

/// The estimate-level test evaluated on the observer of restrictToSpecRuns(m).
/// Unlike checkCADObservable it decides the string-level definition exactly
/// when the plant can re-enter spec states from outside: estimates then only
/// hold states reached by strings of J.
Verdict checkCADObservableExact(const SystemModel& m, CheckOptions opt = {});

/// The unrestricted reading: the biconditional evaluated for every marked y
/// and every event, without the feasibility guard.
Verdict checkCADObservableLiteral(const SystemModel& m, const Observer& obs);

/// Spec marking equals spec states intersected with plant marking.
Verdict checkLmClosed(const SystemModel& m, CheckOptions opt = {});

struct DeterministicExistence {
    bool exists = false;
    Verdict controllability;
    Verdict observability;
};

DeterministicExistence deterministicSupervisorExists(const SystemModel& m, const Observer& obs, CheckOptions opt = {});

struct NonblockingExistence {
    bool exists = false;
    Verdict lmClosed;
    Verdict controllability;
    Verdict observability;
};

NonblockingExistence nonblockingSupervisorExists(const SystemModel& m, const Observer& obs, CheckOptions opt = {});

/// Throws InputError when `obs` was not built from `m`.
void requireMatchingObserver(const SystemModel& m, const Observer& obs);

}  // namespace alter
