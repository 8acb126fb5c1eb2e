#pragma once

// JSON documents for models, supervisors and reports, and Graphviz export.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "alter/attack.hpp"
#include "alter/closedloop.hpp"
#include "alter/model.hpp"
#include "alter/synth.hpp"
#include "alter/verify.hpp"

namespace alter::io {

using Json = nlohmann::json;

/// Parses a system document. Unknown fields, undeclared names and structural
/// errors raise InputError with a JSON-pointer-like location. The result is
/// not validated; call validate() for the semantic rules.
SystemModel parseModel(const Json& doc);
SystemModel loadModel(const std::filesystem::path& file);

/// Serializes with attacks in per-transition form.
Json modelToJson(const SystemModel& m);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);
void writeFile(const std::filesystem::path& file, const std::string& text);

Json supervisorToJson(const SystemModel& m, const Observer& obs, const Supervisor& s);
/// Rebuilds a supervisor from its document against `obs`; states are matched
/// by member sets. Raises InputError when the document does not fit `obs`.
Supervisor supervisorFromJson(const SystemModel& m, const Observer& obs, const Json& doc);

Json verdictToJson(const SystemModel& m, const Verdict& v);
std::string stateSetLabel(const SystemModel& m, const Observer& obs, const StateSet& members);

// Graphviz. Initial state bold, marked states double circles, and plant states
// outside the spec dashed.
std::string plantDot(const SystemModel& m);
std::string automatonDot(const Automaton& a, const std::string& name, const EventTable& events);
std::string attackedDot(const SystemModel& m, const AttackedAutomaton& g);
std::string observerDot(const SystemModel& m, const Observer& obs);
std::string closedLoopDot(const SystemModel& m, const ClosedLoopAutomaton& cl);

}  // namespace alter::io
