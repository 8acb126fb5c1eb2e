#include "alter/fsa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace alter {

void normalize(StateSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool contains(const StateSet& s, StateId x) { return std::binary_search(s.begin(), s.end(), x); }

StateSet intersect(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// ---------------------------------------------------------------------------
// EventTable

EventId EventTable::intern(std::string_view name) {
    if (name.empty()) throw InputError("event names must be nonempty");
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return EventId{it->second};
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    index_.emplace(std::string(name), id);
    return EventId{id};
}

std::optional<EventId> EventTable::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return EventId{it->second};
}

const std::string& EventTable::name(EventId e) const {
    static const std::string eps = "eps";
    if (isEpsilon(e)) return eps;
    if (e.value >= names_.size()) throw InputError("unknown event id " + std::to_string(e.value));
    return names_[e.value];
}

std::vector<EventId> EventTable::all() const {
    std::vector<EventId> out;
    for (std::uint32_t i = 0; i < names_.size(); ++i) out.push_back(EventId{i});
    return out;
}

std::string EventTable::render(const Word& w) const {
    if (w.empty()) return "eps";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += name(w[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Automaton

StateId Automaton::addState(bool marked) {
    auto id = static_cast<StateId>(marked_.size());
    edges_.emplace_back();
    marked_.push_back(marked);
    members_.emplace_back();
    labels_.emplace_back();
    return id;
}

void Automaton::checkState(StateId s) const {
    if (s >= size()) throw InputError("unknown state id " + std::to_string(s));
}

void Automaton::setInitial(StateId s) {
    checkState(s);
    initial_ = s;
}

void Automaton::setMarked(StateId s, bool marked) {
    checkState(s);
    marked_[s] = marked;
}

void Automaton::addEvent(EventId e) {
    if (isEpsilon(e)) throw InputError("epsilon cannot be an alphabet member");
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), e);
    if (it == alphabet_.end() || *it != e) alphabet_.insert(it, e);
}

bool Automaton::hasEvent(EventId e) const {
    return std::binary_search(alphabet_.begin(), alphabet_.end(), e);
}

void Automaton::addTransition(StateId src, EventId label, StateId dst) {
    checkState(src);
    checkState(dst);
    if (!isEpsilon(label)) addEvent(label);
    auto& out = edges_[src];
    Edge e{label, dst};
    auto it = std::lower_bound(out.begin(), out.end(), e);
    if (it == out.end() || *it != e) out.insert(it, e);
}

StateSet Automaton::markedStates() const {
    StateSet out;
    for (StateId s = 0; s < size(); ++s)
        if (marked_[s]) out.push_back(s);
    return out;
}

StateSet Automaton::allStates() const {
    StateSet out(size());
    for (StateId s = 0; s < size(); ++s) out[s] = s;
    return out;
}

StateSet Automaton::targets(StateId s, EventId e) const {
    StateSet out;
    for (const auto& edge : edges(s))
        if (edge.label == e) out.push_back(edge.target);
    return out;  // edges are sorted by (label, target)
}

std::optional<StateId> Automaton::next(StateId s, EventId e) const {
    for (const auto& edge : edges(s))
        if (edge.label == e) return edge.target;
    return std::nullopt;
}

std::optional<StateId> Automaton::run(const Word& w) const {
    if (empty()) return std::nullopt;
    std::optional<StateId> cur = initial_;
    for (auto e : w) {
        cur = next(*cur, e);
        if (!cur) return std::nullopt;
    }
    return cur;
}

bool Automaton::isDeterministic() const {
    for (const auto& out : edges_) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (isEpsilon(out[i].label)) return false;
            if (i > 0 && out[i - 1].label == out[i].label) return false;
        }
    }
    return true;
}

bool Automaton::hasEpsilon() const {
    for (const auto& out : edges_)
        for (const auto& e : out)
            if (isEpsilon(e.label)) return true;
    return false;
}

std::size_t Automaton::transitionCount() const {
    std::size_t n = 0;
    for (const auto& out : edges_) n += out.size();
    return n;
}

const StateSet& Automaton::members(StateId s) const {
    checkState(s);
    return members_[s];
}

void Automaton::setMembers(StateId s, StateSet m) {
    checkState(s);
    normalize(m);
    members_[s] = std::move(m);
}

std::string Automaton::label(StateId s) const {
    checkState(s);
    if (!labels_[s].empty()) return labels_[s];
    return std::to_string(s);
}

void Automaton::setLabel(StateId s, std::string l) {
    checkState(s);
    labels_[s] = std::move(l);
}

// ---------------------------------------------------------------------------
// Operations

StateSet epsilonClosure(const Automaton& a, const StateSet& s) {
    std::vector<bool> seen(a.size(), false);
    std::vector<StateId> stack;
    for (auto x : s) {
        a.checkState(x);
        if (!seen[x]) {
            seen[x] = true;
            stack.push_back(x);
        }
    }
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (const auto& e : a.edges(x)) {
            if (!isEpsilon(e.label)) continue;
            if (!seen[e.target]) {
                seen[e.target] = true;
                stack.push_back(e.target);
            }
        }
    }
    StateSet out;
    for (StateId x = 0; x < a.size(); ++x)
        if (seen[x]) out.push_back(x);
    return out;
}

namespace {

std::string subsetLabel(const Automaton& a, const StateSet& members) {
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ',';
        out += a.label(members[i]);
    }
    return out + "}";
}

StateSet move(const Automaton& a, const StateSet& from, EventId e) {
    StateSet out;
    for (auto x : from)
        for (const auto& edge : a.edges(x))
            if (edge.label == e) out.push_back(edge.target);
    normalize(out);
    return out;
}

}  // namespace

Automaton subsetConstruct(const Automaton& a) {
    Automaton out;
    for (auto e : a.alphabet()) out.addEvent(e);
    StateSet init;
    if (!a.empty()) init = epsilonClosure(a, {a.initial()});

    std::map<StateSet, StateId> index;
    std::deque<StateSet> work;
    auto intern = [&](StateSet s) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        bool marked = std::any_of(s.begin(), s.end(), [&](StateId x) { return a.isMarked(x); });
        auto id = out.addState(marked);
        out.setMembers(id, s);
        out.setLabel(id, subsetLabel(a, s));
        index.emplace(s, id);
        work.push_back(std::move(s));
        return id;
    };
    out.setInitial(intern(init));
    while (!work.empty()) {
        StateSet cur = std::move(work.front());
        work.pop_front();
        auto src = index.at(cur);
        for (auto e : a.alphabet()) {
            auto step = move(a, cur, e);
            if (step.empty()) continue;
            auto dst = intern(epsilonClosure(a, step));
            out.addTransition(src, e, dst);
        }
    }
    return out;
}

Product syncProduct(const Automaton& a, const Automaton& b, SyncRule rule) {
    if (rule == SyncRule::Strict && a.alphabet() != b.alphabet())
        throw InputError("syncProduct: alphabets differ under strict synchronization");
    Product p;
    std::vector<EventId> events;
    std::set_union(a.alphabet().begin(), a.alphabet().end(), b.alphabet().begin(), b.alphabet().end(),
                   std::back_inserter(events));
    for (auto e : events) p.automaton.addEvent(e);
    if (a.empty() || b.empty()) return p;

    std::map<std::pair<StateId, StateId>, StateId> index;
    std::deque<std::pair<StateId, StateId>> work;
    auto intern = [&](StateId x, StateId y) {
        auto key = std::make_pair(x, y);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        auto id = p.automaton.addState(a.isMarked(x) && b.isMarked(y));
        p.automaton.setLabel(id, "(" + a.label(x) + "," + b.label(y) + ")");
        p.pairs.push_back(key);
        index.emplace(key, id);
        work.push_back(key);
        return id;
    };
    p.automaton.setInitial(intern(a.initial(), b.initial()));
    while (!work.empty()) {
        auto [x, y] = work.front();
        work.pop_front();
        auto src = index.at({x, y});
        for (const auto& e : a.edges(x)) {
            if (isEpsilon(e.label)) {
                p.automaton.addTransition(src, kEpsilon, intern(e.target, y));
            } else if (b.hasEvent(e.label)) {
                for (auto t : b.targets(y, e.label)) p.automaton.addTransition(src, e.label, intern(e.target, t));
            } else {
                p.automaton.addTransition(src, e.label, intern(e.target, y));
            }
        }
        for (const auto& e : b.edges(y)) {
            if (isEpsilon(e.label) || !a.hasEvent(e.label))
                p.automaton.addTransition(src, e.label, intern(x, e.target));
        }
    }
    return p;
}

TrimReport trimReport(const Automaton& a) {
    TrimReport r;
    if (a.empty()) {
        r.isTrim = true;
        return r;
    }
    std::vector<bool> fwd(a.size(), false), bwd(a.size(), false);
    std::vector<StateId> stack{a.initial()};
    fwd[a.initial()] = true;
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (const auto& e : a.edges(x))
            if (!fwd[e.target]) {
                fwd[e.target] = true;
                stack.push_back(e.target);
            }
    }
    std::vector<std::vector<StateId>> rev(a.size());
    for (StateId x = 0; x < a.size(); ++x)
        for (const auto& e : a.edges(x)) rev[e.target].push_back(x);
    for (StateId x = 0; x < a.size(); ++x)
        if (a.isMarked(x)) {
            bwd[x] = true;
            stack.push_back(x);
        }
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (auto y : rev[x])
            if (!bwd[y]) {
                bwd[y] = true;
                stack.push_back(y);
            }
    }
    for (StateId x = 0; x < a.size(); ++x) {
        if (fwd[x]) r.accessible.push_back(x);
        if (bwd[x]) r.coaccessible.push_back(x);
    }
    r.isTrim = r.accessible.size() == a.size() && r.coaccessible.size() == a.size();
    return r;
}

namespace {

using OptState = std::optional<StateId>;

std::vector<EventId> unionAlphabet(const Automaton& a, const Automaton& b) {
    std::vector<EventId> events;
    std::set_union(a.alphabet().begin(), a.alphabet().end(), b.alphabet().begin(), b.alphabet().end(),
                   std::back_inserter(events));
    return events;
}

Word rebuild(const std::map<std::pair<OptState, OptState>, std::pair<std::pair<OptState, OptState>, EventId>>& parent,
             std::pair<OptState, OptState> key, std::pair<OptState, OptState> root) {
    Word w;
    while (key != root) {
        const auto& [prev, e] = parent.at(key);
        w.push_back(e);
        key = prev;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

// Breadth-first search over pairs of (possibly undefined) states of two DFAs;
// `bad` decides whether a pair is a witness. Events are expanded in id order,
// so the first witness found is shortlex-minimal.
template <class Bad>
std::optional<Word> pairSearch(const Automaton& a, const Automaton& b, Bad bad) {
    using Key = std::pair<OptState, OptState>;
    Key root{a.empty() ? OptState{} : OptState{a.initial()}, b.empty() ? OptState{} : OptState{b.initial()}};
    if (!root.first && !root.second) return std::nullopt;
    auto events = unionAlphabet(a, b);
    std::map<Key, std::pair<Key, EventId>> parent;
    std::map<Key, bool> seen;
    std::deque<Key> work{root};
    seen[root] = true;
    while (!work.empty()) {
        auto key = work.front();
        work.pop_front();
        if (bad(key.first, key.second)) return rebuild(parent, key, root);
        for (auto e : events) {
            OptState na = key.first ? a.next(*key.first, e) : OptState{};
            OptState nb = key.second ? b.next(*key.second, e) : OptState{};
            if (!na && !nb) continue;
            Key nk{na, nb};
            if (seen.emplace(nk, true).second) {
                parent[nk] = {key, e};
                work.push_back(nk);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

Equivalence dfaEquivalent(const Automaton& a, const Automaton& b, bool compareMarked) {
    if (!a.isDeterministic() || !b.isDeterministic())
        throw InputError("dfaEquivalent requires deterministic automata");
    auto witness = pairSearch(a, b, [&](OptState x, OptState y) {
        if (x.has_value() != y.has_value()) return true;
        return compareMarked && a.isMarked(*x) != b.isMarked(*y);
    });
    return Equivalence{!witness.has_value(), witness};
}

Automaton stringLanguageNfa(std::span<const Automaton> pieces) {
    Automaton out;
    if (pieces.empty()) {
        out.setInitial(out.addState(true));
        return out;
    }
    std::vector<StateId> lastMarked;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& piece = pieces[i];
        if (piece.empty()) throw InputError("stringLanguageNfa: empty piece");
        for (auto e : piece.alphabet()) out.addEvent(e);
        auto offset = static_cast<StateId>(out.size());
        for (StateId s = 0; s < piece.size(); ++s) {
            auto id = out.addState(false);
            out.setLabel(id, std::to_string(i) + "." + piece.label(s));
        }
        for (StateId s = 0; s < piece.size(); ++s)
            for (const auto& e : piece.edges(s)) out.addTransition(offset + s, e.label, offset + e.target);
        if (i == 0) {
            out.setInitial(offset + piece.initial());
        } else {
            for (auto m : lastMarked) out.addTransition(m, kEpsilon, offset + piece.initial());
        }
        lastMarked.clear();
        for (auto m : piece.markedStates()) lastMarked.push_back(offset + m);
    }
    for (auto m : lastMarked) out.setMarked(m);
    return out;
}

Emptiness intersectionEmpty(const Automaton& a, const Automaton& b) {
    auto da = subsetConstruct(a);
    auto db = subsetConstruct(b);
    auto witness = pairSearch(da, db, [&](OptState x, OptState y) {
        return x && y && da.isMarked(*x) && db.isMarked(*y);
    });
    return Emptiness{!witness.has_value(), witness};
}

Emptiness inclusionCounterexample(const Automaton& a, const Automaton& b) {
    auto da = subsetConstruct(a);
    auto db = subsetConstruct(b);
    auto witness = pairSearch(da, db, [&](OptState x, OptState y) {
        return x && da.isMarked(*x) && !(y && db.isMarked(*y));
    });
    return Emptiness{!witness.has_value(), witness};
}

namespace {

StateSet simulate(const Automaton& a, const Word& w) {
    if (a.empty()) return {};
    auto cur = epsilonClosure(a, {a.initial()});
    for (auto e : w) {
        cur = move(a, cur, e);
        if (cur.empty()) return {};
        cur = epsilonClosure(a, cur);
    }
    return cur;
}

}  // namespace

bool accepts(const Automaton& a, const Word& w) {
    auto s = simulate(a, w);
    return std::any_of(s.begin(), s.end(), [&](StateId x) { return a.isMarked(x); });
}

bool generates(const Automaton& a, const Word& w) { return !simulate(a, w).empty(); }

Automaton singleEvent(EventId e) {
    Automaton a;
    auto s0 = a.addState(false);
    auto s1 = a.addState(true);
    a.setInitial(s0);
    a.addTransition(s0, e, s1);
    return a;
}

}  // namespace alter
