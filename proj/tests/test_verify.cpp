#include <random>

#include "alter/oracle.hpp"
#include "alter/verify.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace alter;
using namespace alter::testing;

namespace {

SystemModel withAttackableControl(SystemModel m, std::initializer_list<const char*> names) {
    for (const char* n : names) m.attr(m.eventByName(n)).attackableControl = true;
    return m;
}

SystemModel withUncontrollable(SystemModel m, std::initializer_list<const char*> names) {
    for (const char* n : names) m.attr(m.eventByName(n)).controllable = false;
    return m;
}

bool hasWitness(const Verdict& v, WitnessKind kind, EventId e, StateId x, StateId y) {
    for (const auto& w : v.witnesses)
        if (w.kind == kind && w.event == e && w.plantStates == std::pair{x, y}) return true;
    return false;
}

std::size_t countKind(const Verdict& v, WitnessKind kind) {
    std::size_t n = 0;
    for (const auto& w : v.witnesses) n += w.kind == kind;
    return n;
}

}  // namespace

TEST_CASE("robot without attackable controllable events is CA-D-controllable") {
    for (int c = 1; c <= 3; ++c) {
        auto v = checkCADControllable(robot(c));
        CHECK(v.holds);
        CHECK(v.witnesses.empty());
    }
}

TEST_CASE("attackable e3 breaks both CA-D-controllability conditions") {
    auto m = withAttackableControl(robot(1), {"e3"});
    auto v = checkCADControllable(m);
    CHECK_FALSE(v.holds);
    auto e3 = m.eventByName("e3");
    CHECK(hasWitness(v, WitnessKind::UncontrollableExit, e3, m.stateByName("18"), m.stateByName("19")));
    CHECK(countKind(v, WitnessKind::UncontrollableExit) == 1);
    CHECK(countKind(v, WitnessKind::AttackableEventInSpec) > 0);
}

TEST_CASE("spec equal to plant makes the first condition vacuous") {
    auto m = withUncontrollable(robot(2), {"d1", "e2", "e3"});
    m.setInducedSpec(m.plant.allStates(), m.plant.allStates());
    CHECK(checkCAControllable(m).holds);
    CHECK(checkCADControllable(m).holds);
}

TEST_CASE("CA-controllability on the robot") {
    CHECK(checkCAControllable(withAttackableControl(robot(2), {"e1"})).holds);
    auto m = withAttackableControl(robot(2), {"d1"});
    auto v = checkCAControllable(m);
    CHECK_FALSE(v.holds);
    CHECK(hasWitness(v, WitnessKind::UncontrollableExit, m.eventByName("d1"), m.stateByName("3"), m.stateByName("8")));
    CHECK(checkCAControllable(robot(3)).holds);
}

TEST_CASE("exactly d1, d3, e2, e3 break CA-controllability when attackable") {
    auto base = robot(2);
    for (auto e : base.events.all()) {
        auto name = base.events.name(e);
        auto m = withAttackableControl(base, {name.c_str()});
        bool breaks = name == "d1" || name == "d3" || name == "e2" || name == "e3";
        CHECK_MESSAGE(checkCAControllable(m).holds == !breaks, name);
    }
}

TEST_CASE("CA-S-controllability on the robot") {
    CHECK(checkCASControllable(robot(2)).holds);
    auto m = withUncontrollable(robot(2), {"d1"});
    auto v = checkCASControllable(m);
    CHECK_FALSE(v.holds);
    CHECK(hasWitness(v, WitnessKind::UncontrollableExit, m.eventByName("d1"), m.stateByName("3"), m.stateByName("8")));

    auto n = withAttackableControl(robot(2), {"e2"});
    auto vn = checkCASControllable(n);
    CHECK_FALSE(vn.holds);
    CHECK(countKind(vn, WitnessKind::AttackableEventInSpec) > 0);
    CHECK(countKind(vn, WitnessKind::UncontrollableExit) == 0);
}

TEST_CASE("CA-D-observability of the three robot cases") {
    for (int c = 1; c <= 2; ++c) {
        auto m = robot(c);
        auto v = checkCADObservable(m, buildObserver(m));
        CHECK_MESSAGE(v.holds, "case " << c);
    }
    auto m = robot(3);
    auto obs = buildObserver(m);
    auto v = checkCADObservable(m, obs);
    CHECK_FALSE(v.holds);
    REQUIRE_FALSE(v.witnesses.empty());
    auto x13 = m.stateByName("13"), x18 = m.stateByName("18");
    auto e3 = m.eventByName("e3");
    for (const auto& w : v.witnesses) {
        CHECK((w.kind == WitnessKind::EstimateConflict));
        CHECK((w.event == e3));
        CHECK((w.plantStates == std::pair{x13, x18}));
        REQUIRE(w.observerState);
        CHECK(contains(*w.observerState, x13));
        CHECK(contains(*w.observerState, x18));
    }
}

TEST_CASE("first-only checks keep one witness") {
    auto m = robot(3);
    auto obs = buildObserver(m);
    auto all = checkCADObservable(m, obs);
    auto first = checkCADObservable(m, obs, {true});
    REQUIRE(all.witnesses.size() > 1);
    REQUIRE(first.witnesses.size() == 1);
    CHECK(first.witnesses.front() == all.witnesses.front());
    CHECK_FALSE(first.holds);
}

TEST_CASE("unrestricted reading is reported as a note") {
    auto m = robot(2);
    auto obs = buildObserver(m);
    auto v = checkCADObservable(m, obs);
    CHECK(v.holds);
    CHECK_FALSE(checkCADObservableLiteral(m, obs).holds);
    REQUIRE(v.notes.size() == 1);
    CHECK(v.notes.front().find("unrestricted") != std::string::npos);
}

TEST_CASE("L_m(G)-closeness") {
    CHECK(checkLmClosed(robot(2, true)).holds);
    CHECK(checkLmClosed(robot(2)).holds);
    auto m = robot(2, true);
    m.spec.marked.clear();
    auto v = checkLmClosed(m);
    CHECK_FALSE(v.holds);
    auto x25 = m.stateByName("25");
    REQUIRE(v.witnesses.size() == 1);
    CHECK((v.witnesses.front().kind == WitnessKind::MarkingMismatch));
    CHECK((v.witnesses.front().plantStates == std::pair{x25, x25}));
}

TEST_CASE("deterministic supervisor existence") {
    auto c2 = robot(2);
    CHECK(deterministicSupervisorExists(c2, buildObserver(c2)).exists);

    auto c3 = robot(3);
    auto r3 = deterministicSupervisorExists(c3, buildObserver(c3));
    CHECK_FALSE(r3.exists);
    CHECK(r3.controllability.holds);
    CHECK_FALSE(r3.observability.holds);

    auto c1 = withAttackableControl(robot(1), {"e3"});
    auto r1 = deterministicSupervisorExists(c1, buildObserver(c1));
    CHECK_FALSE(r1.exists);
    CHECK_FALSE(r1.controllability.holds);
    CHECK(r1.observability.holds);
}

TEST_CASE("nonblocking supervisor existence") {
    for (int c = 1; c <= 3; ++c) {
        auto m = robot(c, true);
        auto r = nonblockingSupervisorExists(m, buildObserver(m));
        CHECK(r.lmClosed.holds);
        CHECK_MESSAGE(r.exists == (c != 3), "case " << c);
    }
    auto m = robot(2, true);
    m.spec.marked = states(m, {"24", "25"});
    auto r = nonblockingSupervisorExists(m, buildObserver(m));
    CHECK_FALSE(r.exists);
    CHECK_FALSE(r.lmClosed.holds);
    CHECK(r.controllability.holds);
    CHECK(r.observability.holds);
}

TEST_CASE("observer built for another model is rejected") {
    auto m2 = robot(2), m3 = robot(3);
    CHECK_THROWS_AS(checkCADObservable(m2, buildObserver(m3)), InputError);
}

TEST_CASE("CA-D-controllability is CA-controllability plus CA-S-controllability") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 300; ++i) {
        auto m = randomModel(rng);
        bool d = checkCADControllable(m).holds;
        CHECK(d == (checkCAControllable(m).holds && checkCASControllable(m).holds));
    }
}

TEST_CASE("CA-D-observability implies bounded CA- and CA-S-observability") {
    std::mt19937_64 rng(53);
    OracleConfig cfg;
    cfg.maxPlantLen = 6;
    int holding = 0;
    for (int i = 0; i < 200; ++i) {
        auto m = randomModel(rng);
        if (!checkCADObservable(m, buildObserver(m)).holds) continue;
        ++holding;
        CHECK(defCheckCAObservable(m, cfg).holds);
        CHECK(defCheckCASObservable(m, cfg).holds);
    }
    CHECK(holding > 50);
}

TEST_CASE("deterministic projected plant implies CA-D-observability") {
    std::mt19937_64 rng(59);
    int deterministic = 0;
    for (int i = 0; i < 300; ++i) {
        auto m = randomModel(rng);
        auto ge = buildGepsPi(buildGpi(m), m);
        if (!deterministicUpToEpsilon(ge, m.plant.size())) continue;
        ++deterministic;
        CHECK(checkCADObservable(m, buildObserver(m)).holds);
    }
    CHECK(deterministic > 20);
    CHECK(checkCADObservable(robot(1), buildObserver(robot(1))).holds);
}

TEST_CASE("estimate-level and definition-level CA-D-observability agree on the robot") {
    OracleConfig cfg;
    cfg.maxPlantLen = 8;
    for (int c = 1; c <= 3; ++c) {
        auto m = robot(c);
        auto obs = buildObserver(m);
        auto exact = checkCADObservable(m, obs);
        auto def = defCheckCADObservable(m, cfg);
        CHECK(exact.holds == def.holds);
        // Every definition-level violation ends in a pair the exact check names.
        for (const auto& v : def.violations) {
            auto x = *m.plant.run(v.w), y = *m.plant.run(v.wPrime);
            bool named = false;
            for (const auto& w : exact.witnesses) named = named || (w.event == v.sigma && w.plantStates == std::pair{x, y});
            CHECK(named);
        }
    }
}
