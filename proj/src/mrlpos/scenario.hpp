// Copyright (c) 2026 The mrlpos developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MRLPOS_SCENARIO_HPP
#define MRLPOS_SCENARIO_HPP

#include "mrlpos/sim.hpp"
#include "mrlpos/trace.hpp"

#include <filesystem>

namespace mrlpos {

/**
 * Scenario and trace-script files are YAML. Omitted fields take their
 * defaults; unknown keys are rejected. Errors carry an ErrorCode of Parse,
 * UnknownKey or Range (Io for an unreadable file) and a message naming the
 * dotted field path and its line, e.g. "learning.alpha must be in (0, 1] (line 14)".
 */
Scenario parse_scenario(const std::string& text, const std::string& source = "<string>");
Scenario load_scenario(const std::filesystem::path& path);

TraceScript parse_trace_script(const std::string& text, const std::string& source = "<string>");
TraceScript load_trace_script(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

} // namespace mrlpos

#endif // MRLPOS_SCENARIO_HPP
