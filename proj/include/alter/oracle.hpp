#pragma once

// Bounded brute-force evaluation of the attack-observation maps, the
// observability definitions and the closed-loop recursions. Plant strings are
// enumerated up to a length bound; attack languages are never enumerated and
// are handled exactly through automata.

#include <cstddef>
#include <optional>
#include <vector>

#include "alter/attack.hpp"
#include "alter/closedloop.hpp"
#include "alter/model.hpp"
#include "alter/synth.hpp"

namespace alter {

struct OracleConfig {
    /// Longest plant string enumerated.
    std::size_t maxPlantLen = 8;
    /// Longest observation string enumerated where a test needs members of a
    /// regular set.
    std::size_t maxWitnessLen = 10;
};

/// Marks exactly the post-attack strings of a plant string.
Automaton thetaPiAutomaton(const SystemModel& m, const Word& w);
/// Marks exactly the observations of a plant string under attack.
Automaton phiPiAutomaton(const SystemModel& m, const Word& w);

/// Strings of the plant (or of the spec) up to `maxLen`, in shortlex order.
std::vector<Word> enumeratePlant(const SystemModel& m, std::size_t maxLen);
std::vector<Word> enumerateSpec(const SystemModel& m, std::size_t maxLen);

/// Tree of plant strings up to a bound with each edge replaced by its
/// observation piece. Reaching node n after reading v means v is an
/// observation of words[n].
struct Unfolding {
    Automaton nfa;
    std::vector<Word> words;        // per trie node; node ids are nfa ids [0, words.size())
    std::vector<StateId> plantState;  // per trie node
    std::size_t nodes() const { return words.size(); }
};

Unfolding buildUnfolding(const SystemModel& m, std::size_t maxLen, bool specOnly);

/// {xi(x0, w) : w enumerated, v an observation of w}.
StateSet unfoldingEstimate(const Unfolding& u, const Word& v);

/// Observer states reached by the observations of `w`, computed by a product of
/// phiPiAutomaton(w) with the observer.
StateSet observerStatesOf(const SystemModel& m, const Observer& obs, const Word& w);

struct DefinitionViolation {
    Word w;
    Word wPrime;  // empty where the definition has no second string
    EventId sigma;
};

struct OracleVerdict {
    bool holds = true;
    std::vector<DefinitionViolation> violations;
};

/// Pairs w, w' in J with w.sigma in J, w'.sigma in L(G) \ J and a shared
/// observation. Violations are reported once per (end of w, end of w', sigma),
/// using the shortlex-first pair.
OracleVerdict defCheckCADObservable(const SystemModel& m, const OracleConfig& cfg);
/// Some w.sigma in J where every observation of w is shared with a bounded
/// w' in J whose sigma-extension leaves J.
OracleVerdict defCheckCAObservable(const SystemModel& m, const OracleConfig& cfg);
/// Some w in J, w.sigma in L(G) \ J, where every observation of w is shared
/// with a bounded w' in J whose sigma-extension stays in J.
OracleVerdict defCheckCASObservable(const SystemModel& m, const OracleConfig& cfg);

/// Literal evaluation of the large/small recursion for one string.
bool defMembership(const SystemModel& m, const Observer& obs, const Supervisor& s, const Word& w, LoopKind kind);

}  // namespace alter
