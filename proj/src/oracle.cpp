#include "alter/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace alter {

namespace {

// Per-state transitions of the spec, keyed by (source, event).
class SpecIndex {
public:
    explicit SpecIndex(const SystemModel& m) {
        for (const auto& tr : m.spec.transitions) next_[{tr.source, tr.event}] = tr.target;
    }
    std::optional<StateId> next(StateId x, EventId e) const {
        auto it = next_.find({x, e});
        if (it == next_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::map<std::pair<StateId, EventId>, StateId> next_;
};

std::vector<PlantTransition> transitionsOf(const SystemModel& m, const Word& w) {
    std::vector<PlantTransition> out;
    StateId x = m.plant.initial();
    for (auto e : w) {
        auto nx = m.plant.next(x, e);
        if (!nx) throw InputError("string '" + m.events.render(w) + "' is not generated by the plant");
        out.push_back({x, e, *nx});
        x = *nx;
    }
    return out;
}

Automaton project(const SystemModel& m, const Automaton& a) {
    Automaton out;
    for (auto e : m.observableEvents()) out.addEvent(e);
    for (StateId q = 0; q < a.size(); ++q) out.addState(a.isMarked(q));
    if (a.empty()) return out;
    out.setInitial(a.initial());
    for (StateId q = 0; q < a.size(); ++q)
        for (const auto& e : a.edges(q))
            out.addTransition(q, isEpsilon(e.label) || !m.observable(e.label) ? kEpsilon : e.label, e.target);
    return out;
}

template <class Next>
std::vector<Word> enumerate(StateId init, std::size_t maxLen, Next next) {
    std::vector<Word> out{Word{}};
    std::deque<std::pair<Word, StateId>> work{{Word{}, init}};
    while (!work.empty()) {
        auto [w, x] = work.front();
        work.pop_front();
        if (w.size() == maxLen) continue;
        for (const auto& [e, y] : next(x)) {
            Word nw = w;
            nw.push_back(e);
            out.push_back(nw);
            work.push_back({std::move(nw), y});
        }
    }
    return out;
}

}  // namespace

Automaton thetaPiAutomaton(const SystemModel& m, const Word& w) {
    std::vector<Automaton> pieces;
    for (const auto& tr : transitionsOf(m, w)) {
        if (const Automaton* lang = m.attackOn(tr)) pieces.push_back(*lang);
        else pieces.push_back(singleEvent(tr.event));
    }
    return stringLanguageNfa(pieces);
}

Automaton phiPiAutomaton(const SystemModel& m, const Word& w) {
    return subsetConstruct(project(m, thetaPiAutomaton(m, w)));
}

std::vector<Word> enumeratePlant(const SystemModel& m, std::size_t maxLen) {
    return enumerate(m.plant.initial(), maxLen, [&](StateId x) {
        std::vector<std::pair<EventId, StateId>> out;
        for (const auto& e : m.plant.edges(x)) out.push_back({e.label, e.target});
        return out;
    });
}

std::vector<Word> enumerateSpec(const SystemModel& m, std::size_t maxLen) {
    std::map<StateId, std::vector<std::pair<EventId, StateId>>> adj;
    for (const auto& tr : m.spec.transitions) adj[tr.source].push_back({tr.event, tr.target});
    for (auto& [x, v] : adj) std::sort(v.begin(), v.end());
    return enumerate(m.plant.initial(), maxLen, [&](StateId x) { return adj[x]; });
}

Unfolding buildUnfolding(const SystemModel& m, std::size_t maxLen, bool specOnly) {
    Unfolding u;
    u.words = specOnly ? enumerateSpec(m, maxLen) : enumeratePlant(m, maxLen);
    auto& a = u.nfa;
    for (auto e : m.observableEvents()) a.addEvent(e);
    std::map<Word, StateId> node;
    for (StateId n = 0; n < u.words.size(); ++n) {
        a.addState(true);
        node[u.words[n]] = n;
        auto x = m.plant.run(u.words[n]);
        u.plantState.push_back(*x);
        a.setLabel(n, m.events.render(u.words[n]));
    }
    a.setInitial(0);
    for (StateId n = 1; n < u.words.size(); ++n) {
        const auto& w = u.words[n];
        Word parentWord(w.begin(), w.end() - 1);
        StateId parent = node.at(parentWord);
        PlantTransition tr{u.plantState[parent], w.back(), u.plantState[n]};
        if (const Automaton* lang = m.attackOn(tr)) {
            auto offset = static_cast<StateId>(a.size());
            for (StateId q = 0; q < lang->size(); ++q) a.addState(false);
            for (StateId q = 0; q < lang->size(); ++q)
                for (const auto& e : lang->edges(q))
                    a.addTransition(offset + q, isEpsilon(e.label) || !m.observable(e.label) ? kEpsilon : e.label,
                                    offset + e.target);
            a.addTransition(parent, kEpsilon, offset + lang->initial());
            for (auto q : lang->markedStates()) a.addTransition(offset + q, kEpsilon, n);
        } else {
            a.addTransition(parent, m.observable(tr.event) ? tr.event : kEpsilon, n);
        }
    }
    return u;
}

StateSet unfoldingEstimate(const Unfolding& u, const Word& v) {
    const auto& a = u.nfa;
    auto cur = epsilonClosure(a, {a.initial()});
    for (auto e : v) {
        StateSet nxt;
        for (auto q : cur)
            for (auto t : a.targets(q, e)) nxt.push_back(t);
        normalize(nxt);
        if (nxt.empty()) return {};
        cur = epsilonClosure(a, nxt);
    }
    StateSet out;
    for (auto q : cur)
        if (q < u.nodes()) out.push_back(u.plantState[q]);
    normalize(out);
    return out;
}

StateSet observerStatesOf(const SystemModel& m, const Observer& obs, const Word& w) {
    auto phi = phiPiAutomaton(m, w);
    const auto& o = obs.automaton;
    StateSet out;
    std::set<std::pair<StateId, StateId>> seen{{phi.initial(), o.initial()}};
    std::deque<std::pair<StateId, StateId>> work{{phi.initial(), o.initial()}};
    while (!work.empty()) {
        auto [p, y] = work.front();
        work.pop_front();
        if (phi.isMarked(p)) out.push_back(y);
        for (const auto& e : phi.edges(p)) {
            auto ny = o.next(y, e.label);
            if (ny && seen.insert({e.target, *ny}).second) work.push_back({e.target, *ny});
        }
    }
    normalize(out);
    return out;
}

namespace {

// Sets of trie nodes that share an observation: the trie-node parts of the
// subsets reached by determinizing the unfolding.
struct Classes {
    std::vector<StateSet> sets;
    std::vector<std::vector<std::size_t>> ofNode;  // class indices per node
};

Classes observationClasses(const Unfolding& u) {
    auto det = subsetConstruct(u.nfa);
    std::set<StateSet> uniq;
    for (StateId s = 0; s < det.size(); ++s) {
        StateSet nodes;
        for (auto q : det.members(s))
            if (q < u.nodes()) nodes.push_back(q);
        if (!nodes.empty()) uniq.insert(std::move(nodes));
    }
    Classes c;
    c.sets.assign(uniq.begin(), uniq.end());
    c.ofNode.resize(u.nodes());
    for (std::size_t i = 0; i < c.sets.size(); ++i)
        for (auto n : c.sets[i]) c.ofNode[n].push_back(i);
    return c;
}

bool shortlexLess(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// Every observation of node n is shared with some node satisfying pred.
template <class Pred>
bool coveredBy(const Classes& c, StateId n, Pred pred) {
    for (auto ci : c.ofNode[n]) {
        const auto& s = c.sets[ci];
        if (std::none_of(s.begin(), s.end(), pred)) return false;
    }
    return !c.ofNode[n].empty();
}

// Some enumerated string of J has a one-step exit from J. Without one neither
// observability definition can fail, and the class construction is skipped.
bool anyExit(const SystemModel& m, const SpecIndex& spec, const Unfolding& u) {
    for (StateId n = 0; n < u.nodes(); ++n)
        for (auto e : m.events.all())
            if (m.plant.next(u.plantState[n], e) && !spec.next(u.plantState[n], e)) return true;
    return false;
}

}  // namespace

OracleVerdict defCheckCADObservable(const SystemModel& m, const OracleConfig& cfg) {
    SpecIndex spec(m);
    auto u = buildUnfolding(m, cfg.maxPlantLen, true);
    auto events = m.events.all();

    // Nodes that can play w (some sigma stays in J) and w' (some sigma leaves).
    std::vector<bool> first(u.nodes()), second(u.nodes());
    for (StateId n = 0; n < u.nodes(); ++n) {
        auto x = u.plantState[n];
        for (auto e : events) {
            if (spec.next(x, e)) first[n] = true;
            else if (m.plant.next(x, e)) second[n] = true;
        }
    }
    OracleVerdict v;
    if (std::none_of(first.begin(), first.end(), [](bool b) { return b; }) ||
        std::none_of(second.begin(), second.end(), [](bool b) { return b; }))
        return v;

    // Pairs of trie nodes with a shared observation: reachability in the
    // self-product of the unfolding synchronized on observable labels.
    const auto& a = u.nfa;
    std::set<std::pair<StateId, StateId>> seen{{a.initial(), a.initial()}};
    std::deque<std::pair<StateId, StateId>> work{{a.initial(), a.initial()}};
    auto visit = [&](StateId p, StateId q) {
        if (seen.insert({p, q}).second) work.push_back({p, q});
    };
    while (!work.empty()) {
        auto [p, q] = work.front();
        work.pop_front();
        for (const auto& e : a.edges(p))
            if (isEpsilon(e.label)) visit(e.target, q);
        for (const auto& e : a.edges(q))
            if (isEpsilon(e.label)) visit(p, e.target);
        for (const auto& ep : a.edges(p)) {
            if (isEpsilon(ep.label)) continue;
            for (const auto& eq : a.edges(q))
                if (eq.label == ep.label) visit(ep.target, eq.target);
        }
    }

    // (end of w, end of w', sigma) -> best (w, w') pair.
    std::map<std::tuple<StateId, StateId, EventId>, std::pair<StateId, StateId>> best;
    auto better = [&](std::pair<StateId, StateId> x, std::pair<StateId, StateId> y) {
        auto lx = u.words[x.first].size() + u.words[x.second].size();
        auto ly = u.words[y.first].size() + u.words[y.second].size();
        if (lx != ly) return lx < ly;
        if (u.words[x.first] != u.words[y.first]) return shortlexLess(u.words[x.first], u.words[y.first]);
        return shortlexLess(u.words[x.second], u.words[y.second]);
    };
    for (auto [n1, n2] : seen) {
        if (n1 >= u.nodes() || n2 >= u.nodes() || !first[n1] || !second[n2]) continue;
        auto x1 = u.plantState[n1], x2 = u.plantState[n2];
        for (auto e : events) {
            if (!spec.next(x1, e)) continue;
            if (!m.plant.next(x2, e) || spec.next(x2, e)) continue;
            auto key = std::make_tuple(x1, x2, e);
            auto it = best.find(key);
            if (it == best.end()) best.emplace(key, std::make_pair(n1, n2));
            else if (better({n1, n2}, it->second)) it->second = {n1, n2};
        }
    }

    for (const auto& [key, pr] : best) {
        const auto& w = u.words[pr.first];
        const auto& wp = u.words[pr.second];
        // Second route: the two observation sets must intersect.
        if (intersectionEmpty(phiPiAutomaton(m, w), phiPiAutomaton(m, wp)).empty)
            throw InternalError("oracle: unfolding and per-string observation automata disagree");
        v.violations.push_back({w, wp, std::get<2>(key)});
    }
    v.holds = v.violations.empty();
    return v;
}

OracleVerdict defCheckCAObservable(const SystemModel& m, const OracleConfig& cfg) {
    SpecIndex spec(m);
    auto u = buildUnfolding(m, cfg.maxPlantLen, true);
    OracleVerdict v;
    if (!anyExit(m, spec, u)) return v;
    auto classes = observationClasses(u);
    for (auto e : m.events.all()) {
        auto bad = [&](StateId n) {
            auto x = u.plantState[n];
            return m.plant.next(x, e) && !spec.next(x, e);
        };
        for (StateId n = 0; n < u.nodes(); ++n) {
            if (!spec.next(u.plantState[n], e)) continue;
            if (coveredBy(classes, n, bad)) v.violations.push_back({u.words[n], {}, e});
        }
    }
    v.holds = v.violations.empty();
    return v;
}

OracleVerdict defCheckCASObservable(const SystemModel& m, const OracleConfig& cfg) {
    SpecIndex spec(m);
    auto u = buildUnfolding(m, cfg.maxPlantLen, true);
    OracleVerdict v;
    if (!anyExit(m, spec, u)) return v;
    auto classes = observationClasses(u);
    for (auto e : m.events.all()) {
        auto good = [&](StateId n) { return spec.next(u.plantState[n], e).has_value(); };
        for (StateId n = 0; n < u.nodes(); ++n) {
            auto x = u.plantState[n];
            if (!m.plant.next(x, e) || spec.next(x, e)) continue;
            if (coveredBy(classes, n, good)) v.violations.push_back({u.words[n], {}, e});
        }
    }
    v.holds = v.violations.empty();
    return v;
}

bool defMembership(const SystemModel& m, const Observer& obs, const Supervisor& s, const Word& w, LoopKind kind) {
    requireMatchingSupervisor(obs, s);
    auto attackable = m.attackableControlEvents();
    Word prefix;
    StateId x = m.plant.initial();
    for (auto e : w) {
        auto nx = m.plant.next(x, e);
        if (!nx) return false;
        bool allowed = !m.controllable(e);
        if (!allowed) {
            auto views = observerStatesOf(m, obs, prefix);
            if (kind == LoopKind::Large) {
                allowed = std::any_of(views.begin(), views.end(), [&](StateId y) {
                    return commandContainsExists({s.enabled[y], attackable}, e);
                });
            } else {
                allowed = !views.empty() && std::all_of(views.begin(), views.end(), [&](StateId y) {
                    return commandContainsForall({s.enabled[y], attackable}, e);
                });
            }
        }
        if (!allowed) return false;
        prefix.push_back(e);
        x = *nx;
    }
    return true;
}

}  // namespace alter
