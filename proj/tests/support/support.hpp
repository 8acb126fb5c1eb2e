#pragma once

// Shared helpers for the test suites: fixture loading, random small models and
// a naive enumeration oracle that shares no code with the library's oracle.

#include <random>
#include <set>
#include <string>
#include <vector>

#include <ostream>

#include "alter/attack.hpp"
#include "alter/closedloop.hpp"
#include "alter/model.hpp"
#include "alter/verify.hpp"

namespace alter {

// Printers for assertion messages.
inline std::ostream& operator<<(std::ostream& os, WitnessKind k) { return os << toString(k); }
inline std::ostream& operator<<(std::ostream& os, LoopKind k) { return os << toString(k); }
inline std::ostream& operator<<(std::ostream& os, EventId e) { return os << "#" << e.value; }

}  // namespace alter

namespace alter::testing {

/// Robot grid fixture; `nonblocking` selects the X_m = {25} variant.
SystemModel robot(int caseNo, bool nonblocking = false);
std::string fixturePath(const std::string& name);

Word words(const SystemModel& m, const std::string& spaced);
StateSet states(const SystemModel& m, std::initializer_list<const char*> names);

struct RandomLimits {
    std::size_t maxStates = 8;
    std::size_t maxEvents = 4;
    std::size_t maxAttacked = 2;
    std::size_t maxAttackStates = 3;
    /// Random plant marking with a spec marking equal to X_H & X_m; otherwise
    /// everything is marked.
    bool randomMarking = false;
};

/// A valid random model within the limits.
SystemModel randomModel(std::mt19937_64& rng, const RandomLimits& limits = {});

/// Words of the marked language of `a` of length at most `maxLen`, found by
/// breadth-first expansion with epsilon moves.
std::set<Word> boundedLanguage(const Automaton& a, std::size_t maxLen);

/// Observations of plant word `w` with at most `maxLen` symbols, assembled by
/// concatenating bounded members of each per-transition piece.
std::set<Word> naiveObservations(const SystemModel& m, const Word& w, std::size_t maxLen);

/// Plant states reached by some plant word up to `plantLen` having `v` among
/// its observations (observations bounded by |v|).
StateSet naiveEstimate(const SystemModel& m, const Word& v, std::size_t plantLen);

/// All plant words up to `maxLen` (independent of the library's enumerator).
std::vector<Word> plantWords(const SystemModel& m, std::size_t maxLen);
/// Plant words up to `maxLen` that stay inside the spec.
std::vector<Word> specWords(const SystemModel& m, std::size_t maxLen);

/// Observer with states merged by estimate: one state per distinct y & X, an
/// edge sigma between estimates whenever some pair of members is linked. Used
/// to compare observers with relabeled plants.
struct EstimateQuotient {
    std::vector<StateSet> estimates;
    std::set<std::tuple<std::size_t, EventId, std::size_t>> edges;
};
EstimateQuotient quotientByEstimate(const Observer& obs);

}  // namespace alter::testing
