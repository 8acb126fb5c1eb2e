#pragma once

// State-estimate supervisors and closed forms for tampered control commands.

#include <cstdint>
#include <vector>

#include "alter/attack.hpp"
#include "alter/model.hpp"

namespace alter {

/// Enabled events per observer state. Total on the observer it was built for.
struct Supervisor {
    std::vector<std::vector<EventId>> enabled;  // sorted per observer state
    std::uint64_t observerFingerprint = 0;

    bool enables(StateId y, EventId e) const;
    std::size_t size() const { return enabled.size(); }
    bool operator==(const Supervisor&) const = default;
};

/// Conservative supervisor: enable sigma at y unless some legal plant state
/// of y would leave the spec under sigma.
Supervisor synthSp(const SystemModel& m, const Observer& obs);

/// Optimistic supervisor: enable sigma at y if some legal plant state of y
/// stays legal under sigma.
Supervisor synthSr(const SystemModel& m, const Observer& obs);

enum class DiffSide { OnlyFirst, OnlySecond };

struct SupervisorDiff {
    StateId state = 0;
    EventId event;
    DiffSide side = DiffSide::OnlyFirst;
    auto operator<=>(const SupervisorDiff&) const = default;
};

struct SupervisorComparison {
    bool equal = true;
    std::vector<SupervisorDiff> diffs;
};

/// Which events take part in a comparison at an observer state y.
enum class CompareScope {
    Feasible,  // events defined in the plant at some legal state of y
    All,       // every event
};

/// Compares two supervisors on the marked observer states only. The default
/// scope ignores events no legal estimated state can execute, where the two
/// supervisors disagree vacuously.
SupervisorComparison supervisorsEqual(const SystemModel& m, const Observer& obs, const Supervisor& first,
                                      const Supervisor& second, CompareScope scope = CompareScope::Feasible);

/// Throws InputError unless `s` was built over `obs`.
void requireMatchingSupervisor(const Observer& obs, const Supervisor& s);

/// Observer states (marked) where some uncontrollable event is not enabled.
std::vector<StateId> uncontrollableNotEnabled(const SystemModel& m, const Observer& obs, const Supervisor& s);

/// An issued command together with the events an attacker may add or remove.
struct ControlCommandSet {
    std::vector<EventId> base;
    std::vector<EventId> attackable;
};

/// sigma belongs to some tampered command: sigma in base or attackable.
bool commandContainsExists(const ControlCommandSet& c, EventId sigma);
/// sigma belongs to every tampered command: sigma in base and not attackable.
bool commandContainsForall(const ControlCommandSet& c, EventId sigma);

}  // namespace alter
