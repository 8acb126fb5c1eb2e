#include "support.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

#include "alter/io.hpp"

namespace alter::testing {

std::string fixturePath(const std::string& name) { return std::string(ALTER_FIXTURE_DIR) + "/" + name; }

SystemModel robot(int caseNo, bool nonblocking) {
    return io::loadModel(fixturePath("robot_case" + std::to_string(caseNo) + (nonblocking ? "_nb" : "") + ".json"));
}

Word words(const SystemModel& m, const std::string& spaced) {
    Word w;
    std::istringstream in(spaced);
    std::string tok;
    while (in >> tok) w.push_back(m.eventByName(tok));
    return w;
}

StateSet states(const SystemModel& m, std::initializer_list<const char*> names) {
    StateSet out;
    for (const char* n : names) out.push_back(m.stateByName(n));
    normalize(out);
    return out;
}

// ---------------------------------------------------------------------------
// Random models

namespace {

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::size_t upTo(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<StateId> reachable(StateId init, std::size_t n,
                               const std::vector<std::tuple<StateId, std::size_t, StateId>>& trs) {
    std::vector<bool> seen(n, false);
    std::deque<StateId> work{init};
    seen[init] = true;
    while (!work.empty()) {
        auto x = work.front();
        work.pop_front();
        for (const auto& [s, e, t] : trs)
            if (s == x && !seen[t]) {
                seen[t] = true;
                work.push_back(t);
            }
    }
    std::vector<StateId> out;
    for (StateId x = 0; x < n; ++x)
        if (seen[x]) out.push_back(x);
    return out;
}

Automaton randomAttack(std::mt19937_64& rng, const std::vector<EventId>& observable, std::size_t maxStates) {
    for (;;) {
        Automaton a;
        auto n = upTo(rng, 1, maxStates);
        for (std::size_t i = 0; i < n; ++i) a.addState(chance(rng, 0.5));
        a.setInitial(0);
        auto edges = upTo(rng, 0, 2 * n);
        for (std::size_t i = 0; i < edges; ++i) {
            EventId label = kEpsilon;
            if (!observable.empty() && !chance(rng, 0.15)) label = observable[upTo(rng, 0, observable.size() - 1)];
            a.addTransition(static_cast<StateId>(upTo(rng, 0, n - 1)), label, static_cast<StateId>(upTo(rng, 0, n - 1)));
        }
        auto tr = trimReport(a);
        if (contains(tr.coaccessible, a.initial())) return a;
    }
}

}  // namespace

SystemModel randomModel(std::mt19937_64& rng, const RandomLimits& limits) {
    for (;;) {
        SystemModel m;
        auto nEvents = upTo(rng, 1, limits.maxEvents);
        for (std::size_t i = 0; i < nEvents; ++i) {
            EventAttributes a;
            a.controllable = chance(rng, 0.75);
            a.observable = chance(rng, 0.8);
            a.attackableControl = a.controllable && chance(rng, 0.2);
            m.addEvent(std::string(1, static_cast<char>('a' + i)), a);
        }
        auto evs = m.events.all();

        auto nStates = upTo(rng, 1, limits.maxStates);
        std::vector<std::tuple<StateId, std::size_t, StateId>> raw;
        for (StateId x = 0; x < nStates; ++x)
            for (std::size_t e = 0; e < nEvents; ++e)
                if (chance(rng, 0.45)) raw.emplace_back(x, e, static_cast<StateId>(upTo(rng, 0, nStates - 1)));
        auto keep = reachable(0, nStates, raw);
        std::map<StateId, StateId> renum;
        for (auto x : keep) {
            renum[x] = m.plant.addState(true);
            m.plant.setLabel(renum[x], "s" + std::to_string(renum[x]));
        }
        m.plant.setInitial(0);
        for (const auto& [s, e, t] : raw)
            if (renum.count(s) && renum.count(t)) m.plant.addTransition(renum[s], evs[e], renum[t]);

        if (limits.randomMarking) {
            for (StateId x = 0; x < m.plant.size(); ++x) m.plant.setMarked(x, chance(rng, 0.4));
            if (!trimReport(m.plant).isTrim) continue;
        }

        // Spec: random subset containing the initial state, cut to what the
        // induced sub-automaton reaches.
        std::vector<bool> pick(m.plant.size(), false);
        pick[0] = true;
        for (StateId x = 1; x < m.plant.size(); ++x) pick[x] = chance(rng, 0.7);
        std::vector<std::tuple<StateId, std::size_t, StateId>> inside;
        for (const auto& tr : m.plantTransitions())
            if (pick[tr.source] && pick[tr.target]) inside.emplace_back(tr.source, tr.event.value, tr.target);
        auto legal = reachable(0, m.plant.size(), inside);
        StateSet specStates(legal.begin(), legal.end()), specMarked;
        for (auto x : specStates)
            if (m.plant.isMarked(x)) specMarked.push_back(x);
        m.setInducedSpec(specStates, specMarked);

        // Sensor attacks on at most maxAttacked transitions.
        auto observable = m.observableEvents();
        std::shuffle(observable.begin(), observable.end(), rng);
        std::size_t budget = upTo(rng, 0, limits.maxAttacked);
        for (auto e : observable) {
            std::vector<PlantTransition> labeled;
            for (const auto& tr : m.plantTransitions())
                if (tr.event == e) labeled.push_back(tr);
            if (labeled.empty() || labeled.size() > budget) continue;
            budget -= labeled.size();
            m.attr(e).attackableObservation = true;
            for (const auto& tr : labeled) m.attacks[tr] = randomAttack(rng, m.observableEvents(), limits.maxAttackStates);
        }

        if (validate(m).ok) return m;
    }
}

// ---------------------------------------------------------------------------
// Naive oracle

std::set<Word> boundedLanguage(const Automaton& a, std::size_t maxLen) {
    std::set<Word> out;
    if (a.empty()) return out;
    std::set<std::pair<StateId, Word>> seen;
    std::deque<std::pair<StateId, Word>> work{{a.initial(), {}}};
    seen.insert(work.front());
    while (!work.empty()) {
        auto [q, w] = work.front();
        work.pop_front();
        if (a.isMarked(q)) out.insert(w);
        for (const auto& e : a.edges(q)) {
            Word nw = w;
            if (!isEpsilon(e.label)) {
                if (nw.size() == maxLen) continue;
                nw.push_back(e.label);
            }
            std::pair<StateId, Word> next{e.target, nw};
            if (seen.insert(next).second) work.push_back(next);
        }
    }
    return out;
}

std::set<Word> naiveObservations(const SystemModel& m, const Word& w, std::size_t maxLen) {
    std::set<Word> acc{Word{}};
    StateId x = m.plant.initial();
    for (auto e : w) {
        auto nx = m.plant.next(x, e);
        if (!nx) return {};
        PlantTransition tr{x, e, *nx};
        std::set<Word> piece;
        if (const auto* lang = m.attackOn(tr)) {
            for (const auto& s : boundedLanguage(*lang, maxLen)) {
                Word p;
                for (auto c : s)
                    if (m.observable(c)) p.push_back(c);
                piece.insert(p);
            }
        } else {
            piece.insert(m.observable(e) ? Word{e} : Word{});
        }
        std::set<Word> next;
        for (const auto& a : acc)
            for (const auto& b : piece)
                if (a.size() + b.size() <= maxLen) {
                    Word c = a;
                    c.insert(c.end(), b.begin(), b.end());
                    next.insert(c);
                }
        acc = std::move(next);
        x = *nx;
    }
    return acc;
}

std::vector<Word> plantWords(const SystemModel& m, std::size_t maxLen) {
    std::vector<Word> out;
    std::vector<std::pair<Word, StateId>> layer{{Word{}, m.plant.initial()}};
    for (std::size_t len = 0; len <= maxLen; ++len) {
        std::vector<std::pair<Word, StateId>> next;
        for (const auto& [w, x] : layer) {
            out.push_back(w);
            if (len == maxLen) continue;
            for (const auto& e : m.plant.edges(x)) {
                Word nw = w;
                nw.push_back(e.label);
                next.emplace_back(nw, e.target);
            }
        }
        layer = std::move(next);
    }
    return out;
}

std::vector<Word> specWords(const SystemModel& m, std::size_t maxLen) {
    std::vector<Word> out;
    for (const auto& w : plantWords(m, maxLen)) {
        StateId x = m.plant.initial();
        bool inside = m.legal(x);
        for (auto e : w) {
            x = *m.plant.next(x, e);
            inside = inside && m.legal(x);
        }
        if (inside) out.push_back(w);
    }
    return out;
}

StateSet naiveEstimate(const SystemModel& m, const Word& v, std::size_t plantLen) {
    StateSet out;
    for (const auto& w : plantWords(m, plantLen))
        if (naiveObservations(m, w, v.size()).count(v)) out.push_back(*m.plant.run(w));
    normalize(out);
    return out;
}

EstimateQuotient quotientByEstimate(const Observer& obs) {
    EstimateQuotient q;
    std::map<StateSet, std::size_t> index;
    std::vector<std::size_t> of(obs.size());
    for (StateId y = 0; y < obs.size(); ++y) {
        auto est = estimate(obs, y);
        auto [it, fresh] = index.emplace(est, q.estimates.size());
        if (fresh) q.estimates.push_back(est);
        of[y] = it->second;
    }
    for (StateId y = 0; y < obs.size(); ++y)
        for (const auto& e : obs.automaton.edges(y)) q.edges.emplace(of[y], e.label, of[e.target]);
    return q;
}

}  // namespace alter::testing
