#include <random>

#include "alter/closedloop.hpp"
#include "alter/oracle.hpp"
#include "alter/synth.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace alter;
using namespace alter::testing;

namespace {

// Same automaton with every state marked, so marked-language operations act
// on the generated language.
Automaton markAll(Automaton a) {
    for (StateId s = 0; s < a.size(); ++s) a.setMarked(s);
    return a;
}

bool generatedEqual(const Automaton& a, const Automaton& b) {
    return dfaEquivalent(a, b, false).equal;
}

Supervisor enablingNothing(const Observer& obs) {
    Supervisor s;
    s.enabled.assign(obs.size(), {});
    s.observerFingerprint = obs.fingerprint;
    return s;
}

SystemModel withoutAttacks(SystemModel m) {
    m.attacks.clear();
    for (auto e : m.events.all()) {
        m.attr(e).attackableObservation = false;
        m.attr(e).attackableControl = false;
    }
    return m;
}

// Classical closed loop under partial observation: w.sigma survives iff w
// survives, sigma is feasible and sigma is uncontrollable or enabled at the
// observer state reached by the projection of w.
std::set<Word> classicalLoop(const SystemModel& m, const Observer& obs, const Supervisor& s, std::size_t maxLen) {
    std::set<Word> out{Word{}};
    std::vector<std::pair<Word, Word>> frontier{{{}, {}}};  // (w, P(w))
    for (std::size_t len = 0; len < maxLen; ++len) {
        std::vector<std::pair<Word, Word>> next;
        for (const auto& [w, p] : frontier) {
            auto x = *m.plant.run(w);
            auto y = *obs.automaton.run(p);
            for (const auto& e : m.plant.edges(x)) {
                if (m.controllable(e.label) && !s.enables(y, e.label)) continue;
                Word w2 = w, p2 = p;
                w2.push_back(e.label);
                if (m.observable(e.label)) p2.push_back(e.label);
                out.insert(w2);
                next.emplace_back(w2, p2);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

std::vector<SystemModel> sampleModels(std::uint64_t seed, int n, bool randomMarking = false) {
    std::mt19937_64 rng(seed);
    RandomLimits limits;
    limits.randomMarking = randomMarking;
    std::vector<SystemModel> out{robot(1), robot(2), robot(3)};
    for (int i = 0; i < n; ++i) out.push_back(randomModel(rng, limits));
    return out;
}

}  // namespace

TEST_CASE("case 2 conservative loop generates the spec language") {
    auto m = robot(2);
    auto obs = buildObserver(m);
    auto sp = synthSp(m, obs);
    auto h = specAutomaton(m, true);
    CHECK(generatedEqual(buildLarge(m, obs, sp).automaton, h));
    CHECK(generatedEqual(buildSmall(m, obs, sp).automaton, h));
}

TEST_CASE("case 3 conservative loop: large equals the spec, small is strictly smaller") {
    auto m = robot(3);
    auto obs = buildObserver(m);
    auto sp = synthSp(m, obs);
    auto large = buildLarge(m, obs, sp), small = buildSmall(m, obs, sp);
    CHECK(generatedEqual(large.automaton, specAutomaton(m, true)));
    auto diff = dfaEquivalent(large.automaton, small.automaton, false);
    CHECK_FALSE(diff.equal);
    REQUIRE(diff.witness);
    CHECK((*diff.witness == words(m, "e1 d1 d2 e2 e3")));
    CHECK(inclusionCounterexample(markAll(small.automaton), markAll(large.automaton)).empty);
}

TEST_CASE("case 3 optimistic loop leaves the spec through 18 and e3") {
    auto m = robot(3);
    auto obs = buildObserver(m);
    auto large = buildLarge(m, obs, synthSr(m, obs));
    auto leak = inclusionCounterexample(markAll(large.automaton), specAutomaton(m, true));
    REQUIRE_FALSE(leak.empty);
    auto& w = *leak.witness;
    REQUIRE_FALSE(w.empty());
    CHECK((w.back() == m.eventByName("e3")));
    Word prefix(w.begin(), w.end() - 1);
    CHECK((m.plant.run(prefix) == m.stateByName("18")));
}

TEST_CASE("nothing enabled and nothing forced gives the empty word") {
    auto m = robot(2);
    auto obs = buildObserver(m);
    auto none = enablingNothing(obs);
    for (auto kind : {LoopKind::Large, LoopKind::Small}) {
        auto cl = buildClosedLoop(m, obs, none, kind);
        CHECK(cl.automaton.size() == 1);
        CHECK(cl.automaton.edges(cl.automaton.initial()).empty());
    }
}

TEST_CASE("every controllable event attackable blocks the small loop") {
    auto m = robot(2);
    for (auto e : m.events.all()) m.attr(e).attackableControl = true;
    auto obs = buildObserver(m);
    auto small = buildSmall(m, obs, synthSp(m, obs));
    CHECK(small.automaton.size() == 1);
    CHECK(small.automaton.edges(small.automaton.initial()).empty());
    // The large loop ignores the supervisor entirely.
    CHECK(generatedEqual(buildLarge(m, obs, enablingNothing(obs)).automaton, markAll(m.plant)));
}

TEST_CASE("marked large language on the nonblocking fixture") {
    auto m = robot(2, true);
    auto obs = buildObserver(m);
    auto cl = buildLarge(m, obs, synthSp(m, obs));
    auto marked = markedLarge(cl, m);
    CHECK(dfaEquivalent(marked, specAutomaton(m, false), true).equal);
    CHECK(accepts(marked, words(m, "e1 e2 e3 e4 d1 d2 d3 d4")));
    CHECK_FALSE(accepts(marked, words(m, "e1 e2 e3")));

    // With X_m = X the marked language is the generated one.
    auto all = robot(2);
    auto o2 = buildObserver(all);
    auto cl2 = buildLarge(all, o2, synthSp(all, o2));
    CHECK(dfaEquivalent(markedLarge(cl2, all), markAll(cl2.automaton), true).equal);

    // Nothing enabled: 25 is unreachable.
    auto cl3 = buildLarge(m, obs, enablingNothing(obs));
    CHECK(inclusionCounterexample(markedLarge(cl3, m), Automaton{}).empty);
}

TEST_CASE("nonblocking of the robot supervisors") {
    auto m2 = robot(2, true);
    auto o2 = buildObserver(m2);
    auto r2 = checkNonblocking(m2, o2, synthSp(m2, o2));
    CHECK(r2.nonblocking);
    CHECK(r2.cond1);
    CHECK(r2.cond2);
    CHECK_FALSE(r2.witness);

    auto m3 = robot(3, true);
    auto o3 = buildObserver(m3);
    auto r3 = checkNonblocking(m3, o3, synthSp(m3, o3));
    CHECK_FALSE(r3.nonblocking);
    CHECK_FALSE(r3.cond2);
    REQUIRE(r3.witness);
    CHECK(r3.witnessKind == "large-small-difference");
}

TEST_CASE("disabling everything with the initial state marked is nonblocking") {
    auto m = robot(2, true);
    m.plant.setMarked(m.plant.initial());
    m.spec.marked.push_back(m.plant.initial());
    normalize(m.spec.marked);
    auto obs = buildObserver(m);
    auto r = checkNonblocking(m, obs, enablingNothing(obs));
    CHECK(r.nonblocking);

    // Without the initial mark the empty word cannot complete.
    auto n = robot(2, true);
    auto on = buildObserver(n);
    auto rn = checkNonblocking(n, on, enablingNothing(on));
    CHECK_FALSE(rn.cond1);
    CHECK(rn.witnessKind == "blocking-state");
}

TEST_CASE("small loop is contained in the large loop") {
    for (const auto& m : sampleModels(73, 150)) {
        auto obs = buildObserver(m);
        for (const auto& s : {synthSp(m, obs), synthSr(m, obs)}) {
            auto large = buildLarge(m, obs, s), small = buildSmall(m, obs, s);
            CHECK(inclusionCounterexample(markAll(small.automaton), markAll(large.automaton)).empty);
            CHECK(inclusionCounterexample(markAll(large.automaton), markAll(m.plant)).empty);
        }
    }
}

TEST_CASE("without attacks both loops reduce to the classical loop") {
    std::mt19937_64 rng(79);
    std::vector<SystemModel> models{withoutAttacks(robot(2)), withoutAttacks(robot(3))};
    for (int i = 0; i < 100; ++i) models.push_back(withoutAttacks(randomModel(rng)));
    for (const auto& m : models) {
        auto obs = buildObserver(m);
        auto sp = synthSp(m, obs);
        auto large = buildLarge(m, obs, sp), small = buildSmall(m, obs, sp);
        CHECK(generatedEqual(large.automaton, small.automaton));
        std::set<Word> fromLoop;
        for (const auto& w : plantWords(m, 6))
            if (generates(large.automaton, w)) fromLoop.insert(w);
        CHECK(fromLoop == classicalLoop(m, obs, sp, 6));
    }
}

TEST_CASE("product membership agrees with the literal recursion") {
    for (const auto& m : sampleModels(83, 60)) {
        auto obs = buildObserver(m);
        for (const auto& s : {synthSp(m, obs), synthSr(m, obs)})
            for (auto kind : {LoopKind::Large, LoopKind::Small}) {
                auto cl = buildClosedLoop(m, obs, s, kind);
                for (const auto& w : plantWords(m, 6))
                    CHECK(generates(cl.automaton, w) == defMembership(m, obs, s, w, kind));
            }
    }
}

TEST_CASE("large and small coincide iff no reachable state splits the guards") {
    for (const auto& m : sampleModels(89, 200, true)) {
        auto obs = buildObserver(m);
        for (const auto& s : {synthSp(m, obs), synthSr(m, obs)}) {
            auto large = buildLarge(m, obs, s);
            bool split = false;
            for (StateId q = 0; q < large.automaton.size(); ++q) {
                const auto& meta = large.meta[q];
                for (auto e : m.events.all())
                    if (m.controllable(e) && m.plant.next(meta.plantState, e) && largeGuard(m, s, meta.observerStates, e) &&
                        !smallGuard(m, s, meta.observerStates, e))
                        split = true;
            }
            CHECK(checkNonblocking(m, obs, s).cond2 == !split);
        }
    }
}

TEST_CASE("product states carry marked observer states only") {
    for (const auto& m : sampleModels(97, 150)) {
        auto obs = buildObserver(m);
        auto sp = synthSp(m, obs);
        for (auto kind : {LoopKind::Large, LoopKind::Small}) {
            auto cl = buildClosedLoop(m, obs, sp, kind);
            CHECK((cl.kind == kind));
            for (const auto& meta : cl.meta) {
                CHECK_FALSE(meta.observerStates.empty());
                for (auto y : meta.observerStates) CHECK(obs.isMarked(y));
            }
        }
    }
}

TEST_CASE("observer sets match the observations of the string") {
    for (const auto& m : sampleModels(101, 60)) {
        auto obs = buildObserver(m);
        auto sr = synthSr(m, obs);
        auto large = buildLarge(m, obs, sr);
        for (const auto& w : plantWords(m, 5)) {
            auto q = large.automaton.run(w);
            if (!q) continue;
            CHECK(large.meta[*q].observerStates == observerStatesOf(m, obs, w));
            CHECK(large.meta[*q].plantState == *m.plant.run(w));
        }
    }
}

TEST_CASE("supervisor for another observer is rejected") {
    auto m2 = robot(2), m3 = robot(3);
    auto o2 = buildObserver(m2), o3 = buildObserver(m3);
    CHECK_THROWS_AS(buildLarge(m3, o3, synthSp(m2, o2)), InputError);
    CHECK_THROWS_AS(buildSmall(m2, o3, synthSp(m3, o3)), InputError);
}
