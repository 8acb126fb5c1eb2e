#pragma once

// Finite automata over interned events: epsilon closure, subset construction,
// synchronous products, trimness, equivalence and emptiness with shortest
// witnesses.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "alter/error.hpp"

namespace alter {

using StateId = std::uint32_t;

struct EventId {
    std::uint32_t value = 0;
    auto operator<=>(const EventId&) const = default;
};

/// Reserved label for silent transitions; never a member of an alphabet.
inline constexpr EventId kEpsilon{0xFFFFFFFFu};

inline bool isEpsilon(EventId e) { return e == kEpsilon; }

using Word = std::vector<EventId>;

/// Sorted, duplicate-free set of state ids.
using StateSet = std::vector<StateId>;

void normalize(StateSet& s);
bool contains(const StateSet& s, StateId x);
StateSet intersect(const StateSet& a, const StateSet& b);

/// Interns event names. Ids are dense and assigned in insertion order, which is
/// also the tie-breaking order used for shortest witnesses.
class EventTable {
public:
    EventId intern(std::string_view name);
    std::optional<EventId> find(std::string_view name) const;
    const std::string& name(EventId e) const;
    std::size_t size() const { return names_.size(); }
    std::vector<EventId> all() const;

    std::string render(const Word& w) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

struct Edge {
    EventId label;
    StateId target;
    auto operator<=>(const Edge&) const = default;
};

/// Finite automaton with a partial, possibly nondeterministic transition
/// relation. An undefined (state, event) pair is simply absent; there is no
/// implicit sink.
class Automaton {
public:
    StateId addState(bool marked = false);
    void setInitial(StateId s);
    void setMarked(StateId s, bool marked = true);
    void addEvent(EventId e);
    /// Adds (src, label, dst); duplicates are ignored. Non-epsilon labels join
    /// the alphabet.
    void addTransition(StateId src, EventId label, StateId dst);

    std::size_t size() const { return marked_.size(); }
    bool empty() const { return marked_.empty(); }
    StateId initial() const { return initial_; }
    bool isMarked(StateId s) const { return marked_.at(s); }
    StateSet markedStates() const;
    StateSet allStates() const;
    const std::vector<EventId>& alphabet() const { return alphabet_; }
    bool hasEvent(EventId e) const;

    std::span<const Edge> edges(StateId s) const { return edges_.at(s); }
    /// All targets of (s, e), sorted.
    StateSet targets(StateId s, EventId e) const;
    /// First target of (s, e); meaningful for deterministic automata.
    std::optional<StateId> next(StateId s, EventId e) const;
    /// Runs a word from the initial state; deterministic automata only.
    std::optional<StateId> run(const Word& w) const;

    bool isDeterministic() const;
    bool hasEpsilon() const;
    std::size_t transitionCount() const;

    /// Member set of a state produced by subset construction (empty otherwise).
    const StateSet& members(StateId s) const;
    void setMembers(StateId s, StateSet m);

    std::string label(StateId s) const;
    void setLabel(StateId s, std::string l);

    void checkState(StateId s) const;

private:
    std::vector<std::vector<Edge>> edges_;
    std::vector<bool> marked_;
    std::vector<StateSet> members_;
    std::vector<std::string> labels_;
    std::vector<EventId> alphabet_;
    StateId initial_ = 0;
};

/// Smallest superset of `s` closed under epsilon transitions.
StateSet epsilonClosure(const Automaton& a, const StateSet& s);

/// Accessible determinization. The initial state is the epsilon closure of
/// {initial}; a subset is marked iff it meets the marked states of `a`. Every
/// produced state carries its member set.
Automaton subsetConstruct(const Automaton& a);

enum class SyncRule {
    /// Both operands must have the same alphabet; every event synchronizes.
    Strict,
    /// Shared events synchronize, private events interleave.
    Shared,
};

struct Product {
    Automaton automaton;
    std::vector<std::pair<StateId, StateId>> pairs;
};

/// Accessible synchronous product. A pair is marked iff both sides are.
Product syncProduct(const Automaton& a, const Automaton& b, SyncRule rule);

struct TrimReport {
    StateSet accessible;
    StateSet coaccessible;
    bool isTrim = false;
};

TrimReport trimReport(const Automaton& a);

struct Equivalence {
    bool equal = true;
    std::optional<Word> witness;
};

/// Language equivalence of deterministic automata. When unequal, the witness
/// is a shortest distinguishing word, ties broken by event order.
Equivalence dfaEquivalent(const Automaton& a, const Automaton& b, bool compareMarked);

/// Automaton marking the concatenation of the pieces' marked languages; an
/// empty sequence marks exactly the empty word.
Automaton stringLanguageNfa(std::span<const Automaton> pieces);

struct Emptiness {
    bool empty = true;
    std::optional<Word> witness;
};

/// Whether the marked languages of `a` and `b` are disjoint; otherwise a
/// shortest common word.
Emptiness intersectionEmpty(const Automaton& a, const Automaton& b);

/// Whether the marked language of `a` is contained in that of `b`; otherwise
/// a shortest word of a that b does not mark.
Emptiness inclusionCounterexample(const Automaton& a, const Automaton& b);

/// Membership of a word in the marked language (epsilon moves allowed).
bool accepts(const Automaton& a, const Word& w);
/// Membership of a word in the generated language (epsilon moves allowed).
bool generates(const Automaton& a, const Word& w);

/// Two-state automaton marking exactly {e}.
Automaton singleEvent(EventId e);

}  // namespace alter
