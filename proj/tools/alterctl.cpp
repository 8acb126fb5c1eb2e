// alterctl: command-line front end for the attack-aware supervisory control
// toolkit.
//
// Exit codes: 0 all requested verdicts hold, 1 some verdict fails, 2 input
// error, 3 internal inconsistency.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "alter/attack.hpp"
#include "alter/closedloop.hpp"
#include "alter/io.hpp"
#include "alter/oracle.hpp"
#include "alter/synth.hpp"
#include "alter/verify.hpp"

using namespace alter;
using io::Json;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kInput = 2;
constexpr int kInternal = 3;

class Timer {
public:
    void mark(const std::string& stage) {
        auto now = std::chrono::steady_clock::now();
        timings_[stage] = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
    }
    const Json& json() const { return timings_; }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
    Json timings_ = Json::object();
};

struct Output {
    std::string reportFile;
    bool json = false;
    std::ostringstream text;

    int finish(Json report, int code) {
        report["exit_code"] = code;
        if (!reportFile.empty()) io::writeFile(reportFile, io::dump(report));
        if (json)
            std::cout << io::dump(report);
        else
            std::cout << text.str();
        return code;
    }
};

const char* yesNo(bool b) { return b ? "yes" : "no"; }

SystemModel load(const std::string& path) {
    auto m = io::loadModel(path);
    requireValid(m);
    return m;
}

std::string estimateText(const SystemModel& m, const Observer& obs, StateId y) {
    return io::stateSetLabel(m, obs, estimate(obs, y));
}

void printWitnesses(std::ostream& os, const Verdict& v) {
    for (const auto& w : v.witnesses) os << "    - " << toString(w.kind) << ": " << w.detail << "\n";
    for (const auto& n : v.notes) os << "    note: " << n << "\n";
}

Json readJson(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------

int runCheck(const std::string& model, bool first, bool nonblocking, Output& out) {
    Timer t;
    auto m = load(model);
    t.mark("load");
    auto obs = buildObserver(m);
    t.mark("observer");
    CheckOptions opt{first};
    auto det = deterministicSupervisorExists(m, obs, opt);
    auto ca = checkCAControllable(m, opt);
    auto cas = checkCASControllable(m, opt);
    auto lm = checkLmClosed(m, opt);
    bool nbExists = lm.holds && det.exists;
    t.mark("verify");

    auto& os = out.text;
    os << "model: " << model << "\n";
    os << "observer states: " << obs.size() << "\n";
    os << "CA-D-controllable: " << yesNo(det.controllability.holds) << "\n";
    printWitnesses(os, det.controllability);
    os << "CA-controllable: " << yesNo(ca.holds) << "\n";
    os << "CA-S-controllable: " << yesNo(cas.holds) << "\n";
    os << "CA-D-observable: " << yesNo(det.observability.holds) << "\n";
    printWitnesses(os, det.observability);
    os << "Lm(G)-closed: " << yesNo(lm.holds) << "\n";
    if (nonblocking) printWitnesses(os, lm);
    os << "deterministic supervisor exists: " << yesNo(det.exists) << "\n";
    os << "nonblocking supervisor exists: " << yesNo(nbExists) << "\n";

    Json verdicts{{"ca_d_controllable", io::verdictToJson(m, det.controllability)},
                  {"ca_controllable", io::verdictToJson(m, ca)},
                  {"ca_s_controllable", io::verdictToJson(m, cas)},
                  {"ca_d_observable", io::verdictToJson(m, det.observability)},
                  {"lm_closed", io::verdictToJson(m, lm)},
                  {"deterministic_supervisor_exists", det.exists},
                  {"nonblocking_supervisor_exists", nbExists}};
    Json witnesses = Json::array();
    for (const auto& [name, v] : verdicts.items())
        if (v.is_object())
            for (auto w : v["witnesses"]) {
                w["check"] = name;
                witnesses.push_back(std::move(w));
            }
    Json report{{"command", "check"}, {"model", model},           {"observer_states", obs.size()},
                {"verdicts", verdicts}, {"witnesses", witnesses}, {"timings_ms", t.json()}};
    bool ok = det.exists && (!nonblocking || nbExists);
    return out.finish(report, ok ? kHolds : kFails);
}

int runSynthesize(const std::string& model, const std::string& outFile, bool force, const std::string& which,
                  Output& out) {
    Timer t;
    auto m = load(model);
    auto obs = buildObserver(m);
    auto det = deterministicSupervisorExists(m, obs);
    t.mark("verify");
    auto& os = out.text;
    Json report{{"command", "synthesize"}, {"model", model}, {"deterministic_supervisor_exists", det.exists}};
    if (!det.exists && !force) {
        os << "no deterministic supervisor exists; not writing " << outFile << " (use --force)\n";
        printWitnesses(os, det.controllability);
        printWitnesses(os, det.observability);
        report["written"] = false;
        report["timings_ms"] = t.json();
        return out.finish(report, kFails);
    }
    auto s = which == "r" ? synthSr(m, obs) : synthSp(m, obs);
    t.mark("synthesize");
    io::writeFile(outFile, io::dump(io::supervisorToJson(m, obs, s)));
    Json warnings = Json::array();
    if (!det.exists) warnings.push_back("no deterministic supervisor exists; table written anyway");
    if (!uncontrollableNotEnabled(m, obs, s).empty())
        warnings.push_back("some uncontrollable event is not enabled at a marked observer state");
    for (const auto& w : warnings) os << "warning: " << w.get<std::string>() << "\n";

    os << "supervisor S_" << which << " written to " << outFile << "\n";
    Json disabled = Json::array();
    for (StateId y = 0; y < obs.size(); ++y) {
        if (!obs.isMarked(y)) continue;
        std::vector<std::string> off;
        for (auto e : m.plant.alphabet())
            if (!s.enables(y, e)) off.push_back(m.events.name(e));
        if (off.empty()) continue;
        std::string joined;
        for (const auto& name : off) joined += (joined.empty() ? "" : ",") + name;
        os << "  " << estimateText(m, obs, y) << " disables " << joined << "\n";
        disabled.push_back({{"estimate", estimateText(m, obs, y)}, {"events", off}});
    }
    report["written"] = true;
    report["out"] = outFile;
    report["warnings"] = warnings;
    report["disablements"] = disabled;
    report["timings_ms"] = t.json();
    return out.finish(report, kHolds);
}

int runClosedLoop(const std::string& model, const std::string& supFile, const std::string& which,
                  const std::string& dotFile, bool nonblocking, Output& out) {
    Timer t;
    auto m = load(model);
    auto obs = buildObserver(m);
    auto s = io::supervisorFromJson(m, obs, readJson(supFile));
    t.mark("load");
    auto kind = which == "small" ? LoopKind::Small : LoopKind::Large;
    auto cl = buildClosedLoop(m, obs, s, kind);
    t.mark("product");
    auto spec = specAutomaton(m, true);
    auto vsSpec = dfaEquivalent(cl.automaton, spec, false);
    auto vsOther = dfaEquivalent(buildLarge(m, obs, s).automaton, buildSmall(m, obs, s).automaton, false);
    t.mark("compare");

    auto& os = out.text;
    os << which << " closed loop: " << cl.automaton.size() << " states, " << cl.automaton.transitionCount()
       << " transitions\n";
    os << "equals specification: " << yesNo(vsSpec.equal) << "\n";
    if (vsSpec.witness) os << "  distinguishing string: " << m.events.render(*vsSpec.witness) << "\n";
    os << "large equals small: " << yesNo(vsOther.equal) << "\n";
    if (vsOther.witness) os << "  distinguishing string: " << m.events.render(*vsOther.witness) << "\n";

    Json report{{"command", "closed-loop"},
                {"model", model},
                {"supervisor", supFile},
                {"which", which},
                {"states", cl.automaton.size()},
                {"transitions", cl.automaton.transitionCount()}};
    Json verdicts{{"equals_spec", vsSpec.equal}, {"large_equals_small", vsOther.equal}};
    if (vsSpec.witness) verdicts["equals_spec_witness"] = m.events.render(*vsSpec.witness);
    if (vsOther.witness) verdicts["large_small_witness"] = m.events.render(*vsOther.witness);
    bool ok = vsSpec.equal;
    if (nonblocking) {
        if (kind != LoopKind::Large) throw InputError("--nonblocking requires --which large");
        auto nb = checkNonblocking(m, obs, s);
        t.mark("nonblocking");
        os << "nonblocking: " << yesNo(nb.nonblocking) << " (cond1 " << yesNo(nb.cond1) << ", cond2 "
           << yesNo(nb.cond2) << ")\n";
        if (nb.witness) os << "  " << nb.witnessKind << ": " << m.events.render(*nb.witness) << "\n";
        verdicts["nonblocking"] = nb.nonblocking;
        verdicts["nonblocking_cond1"] = nb.cond1;
        verdicts["nonblocking_cond2"] = nb.cond2;
        if (nb.witness) verdicts["nonblocking_witness"] = {{"kind", nb.witnessKind}, {"string", m.events.render(*nb.witness)}};
        ok = ok && nb.nonblocking;
    }
    if (!dotFile.empty()) {
        io::writeFile(dotFile, io::closedLoopDot(m, cl));
        report["dot"] = dotFile;
    }
    report["verdicts"] = verdicts;
    report["timings_ms"] = t.json();
    return out.finish(report, ok ? kHolds : kFails);
}

int runObserver(const std::string& model, const std::string& dotFile, Output& out) {
    Timer t;
    auto m = load(model);
    auto g = buildGpi(m);
    auto obs = buildObserver(m);
    t.mark("observer");
    auto& os = out.text;
    Json states = Json::array();
    os << "observer: " << obs.size() << " states\n";
    for (StateId y = 0; y < obs.size(); ++y) {
        std::vector<std::string> members;
        for (auto q : obs.members(y)) members.push_back(g.automaton.label(q));
        std::string joined;
        for (const auto& s : members) joined += (joined.empty() ? "" : ",") + s;
        os << "  " << y << (y == obs.initial() ? " (initial)" : "") << (obs.isMarked(y) ? " marked" : "") << ": {"
           << joined << "}\n";
        states.push_back({{"id", y}, {"members", members}, {"marked", obs.isMarked(y)}, {"initial", y == obs.initial()}});
    }
    if (!dotFile.empty()) io::writeFile(dotFile, io::observerDot(m, obs));
    Json report{{"command", "observer"}, {"model", model}, {"states", states}, {"timings_ms", t.json()}};
    if (!dotFile.empty()) report["dot"] = dotFile;
    return out.finish(report, kHolds);
}

int runOracle(const std::string& model, std::size_t maxLen, std::size_t memberLen, Output& out) {
    Timer t;
    auto m = load(model);
    auto obs = buildObserver(m);
    OracleConfig cfg;
    cfg.maxPlantLen = maxLen;
    auto exact = checkCADObservable(m, obs);
    auto restricted = checkCADObservableExact(m);
    t.mark("exact");
    auto def = defCheckCADObservable(m, cfg);
    auto defCA = defCheckCAObservable(m, cfg);
    auto defCAS = defCheckCASObservable(m, cfg);
    t.mark("definitions");

    auto sp = synthSp(m, obs);
    auto large = buildLarge(m, obs, sp);
    auto small = buildSmall(m, obs, sp);
    std::size_t checked = 0, disagreements = 0;
    for (const auto& w : enumeratePlant(m, memberLen)) {
        ++checked;
        if (generates(large.automaton, w) != defMembership(m, obs, sp, w, LoopKind::Large)) ++disagreements;
        if (generates(small.automaton, w) != defMembership(m, obs, sp, w, LoopKind::Small)) ++disagreements;
    }
    t.mark("membership");

    bool cadAgree = exact.holds == def.holds;
    // A bounded pass cannot refute a failing exact verdict; a bounded failure
    // under an exact pass would.
    bool prop1 = !exact.holds || (defCA.holds && defCAS.holds);
    bool agree = cadAgree && prop1 && disagreements == 0;

    auto& os = out.text;
    os << "bound: " << maxLen << " (membership " << memberLen << ")\n";
    os << "CA-D-observable by estimates: " << yesNo(exact.holds) << ", by definition (bounded): " << yesNo(def.holds)
       << ", estimates restricted to J: " << yesNo(restricted.holds) << "\n";
    if (exact.holds != restricted.holds)
        os << "  note: the plant re-enters the spec; estimates over L(G) include states reached outside J\n";
    for (const auto& v : def.violations)
        os << "    - w=" << m.events.render(v.w) << " w'=" << m.events.render(v.wPrime)
           << " sigma=" << m.events.name(v.sigma) << "\n";
    os << "CA-observable (bounded): " << yesNo(defCA.holds) << "\n";
    os << "CA-S-observable (bounded): " << yesNo(defCAS.holds) << "\n";
    os << "closed-loop membership: " << checked << " strings, " << disagreements << " disagreements\n";
    os << (agree ? "all checks agree" : "checks disagree") << "\n";

    Json violations = Json::array();
    for (const auto& v : def.violations)
        violations.push_back(
            {{"w", m.events.render(v.w)}, {"w_prime", m.events.render(v.wPrime)}, {"sigma", m.events.name(v.sigma)}});
    Json report{{"command", "oracle"},
                {"model", model},
                {"max_len", maxLen},
                {"membership_len", memberLen},
                {"verdicts",
                 {{"ca_d_observable_exact", exact.holds},
                  {"ca_d_observable_definition", def.holds},
                  {"ca_d_observable_restricted", restricted.holds},
                  {"ca_observable_bounded", defCA.holds},
                  {"ca_s_observable_bounded", defCAS.holds},
                  {"membership_strings", checked},
                  {"membership_disagreements", disagreements},
                  {"agree", agree}}},
                {"witnesses", violations},
                {"timings_ms", t.json()}};
    return out.finish(report, agree ? kHolds : kFails);
}

int runExportDot(const std::string& model, const std::string& what, const std::string& supFile,
                 const std::string& outFile, Output& out) {
    auto m = load(model);
    std::string dot;
    if (what == "plant") {
        dot = io::plantDot(m);
    } else if (what == "spec") {
        dot = io::automatonDot(specAutomaton(m, false), "H", m.events);
    } else if (what == "attacked") {
        dot = io::attackedDot(m, buildGpi(m));
    } else if (what == "observer") {
        dot = io::observerDot(m, buildObserver(m));
    } else if (what == "large" || what == "small") {
        auto obs = buildObserver(m);
        auto s = supFile.empty() ? synthSp(m, obs) : io::supervisorFromJson(m, obs, readJson(supFile));
        dot = io::closedLoopDot(m, buildClosedLoop(m, obs, s, what == "large" ? LoopKind::Large : LoopKind::Small));
    } else {
        throw InputError("unknown automaton '" + what + "'");
    }
    if (outFile.empty() || outFile == "-") {
        std::cout << dot;
    } else {
        io::writeFile(outFile, dot);
        out.text << "wrote " << outFile << "\n";
        std::cout << out.text.str();
    }
    return kHolds;
}

std::size_t defaultOracleBound() {
    if (const char* v = std::getenv("ALTER_ORACLE_MAX_LEN")) {
        try {
            auto n = std::stoul(v);
            if (n >= 1) return n;
        } catch (const std::exception&) {
        }
        throw InputError(std::string("ALTER_ORACLE_MAX_LEN must be a positive integer, got '") + v + "'");
    }
    return 8;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Supervisory control under sensor and actuator attacks"};
    app.require_subcommand(1);

    Output out;
    std::string model, outFile, supFile, dotFile, which, what;
    bool first = false, force = false, nonblocking = false;
    std::size_t maxLen = 0, memberLen = 6;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--model", model, "System document")->required()->check(CLI::ExistingFile);
        sub->add_option("--report", out.reportFile, "Also write the report document to this file");
        sub->add_flag("--json", out.json, "Print the report document instead of text");
    };

    auto* check = app.add_subcommand("check", "Decide existence of deterministic and nonblocking supervisors");
    common(check);
    check->add_flag("--first", first, "Keep only the first witness per check");
    check->add_flag("--nonblocking", nonblocking, "Also require a nonblocking supervisor for exit code 0");

    auto* synth = app.add_subcommand("synthesize", "Write the state-estimate supervisor");
    common(synth);
    synth->add_option("--out", outFile, "Supervisor document to write")->required();
    synth->add_flag("--force", force, "Write even when no deterministic supervisor exists");
    which = "p";
    synth->add_option("--variant", which, "p (conservative) or r (optimistic)")->check(CLI::IsMember({"p", "r"}));

    auto* loop = app.add_subcommand("closed-loop", "Build the large or small closed-loop language");
    common(loop);
    loop->add_option("--supervisor", supFile, "Supervisor document")->required()->check(CLI::ExistingFile);
    std::string loopWhich = "large";
    loop->add_option("--which", loopWhich, "large or small")->check(CLI::IsMember({"large", "small"}));
    loop->add_option("--dot", dotFile, "Write the product as DOT");
    loop->add_flag("--nonblocking", nonblocking, "Also test nonblocking (large only)");

    auto* observer = app.add_subcommand("observer", "Build the attack-aware observer");
    common(observer);
    observer->add_option("--dot", dotFile, "Write the observer as DOT");

    auto* oracle = app.add_subcommand("oracle", "Cross-check the exact procedures against bounded enumeration");
    common(oracle);
    oracle->add_option("--max-len", maxLen, "Longest plant string (default $ALTER_ORACLE_MAX_LEN or 8)")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--membership-len", memberLen, "Longest string for closed-loop membership")
        ->check(CLI::NonNegativeNumber);

    auto* dot = app.add_subcommand("export-dot", "Write an automaton as DOT");
    dot->add_option("--model", model, "System document")->required()->check(CLI::ExistingFile);
    dot->add_option("--what", what, "plant, spec, attacked, observer, large or small")->required();
    dot->add_option("--supervisor", supFile, "Supervisor for closed loops (default: conservative)");
    dot->add_option("--out", outFile, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*check) return runCheck(model, first, nonblocking, out);
        if (*synth) return runSynthesize(model, outFile, force, which, out);
        if (*loop) return runClosedLoop(model, supFile, loopWhich, dotFile, nonblocking, out);
        if (*observer) return runObserver(model, dotFile, out);
        if (*oracle) return runOracle(model, maxLen ? maxLen : defaultOracleBound(), memberLen, out);
        if (*dot) return runExportDot(model, what, supFile, outFile, out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInput;
}
