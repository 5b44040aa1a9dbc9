// Copyright 2026 The nsroot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nsroot/executor.hpp"
#include "nsroot/probes.hpp"
#include "nsroot/sandbox_spec.hpp"

namespace nsroot {

// Tool-internal failures (usage errors, validation, setup) exit 125,
// leaving 126/127 for the exec-stage conventions.
inline constexpr int kToolFailureExit = 125;

/// One parsed `nsroot [OPTIONS] NEWROOT [COMMAND [ARG]...]` invocation.
/// COMMAND defaults to the invoking user's shell, run interactively.
struct CliInvocation {
  std::string new_root;
  std::string old_root_dir = "mnt";
  std::vector<BindMount> binds;
  bool net = false;
  bool ipc = false;
  IdMapPolicy id_map = IdMapPolicy::RootInside;
  bool dry_run = false;
  std::vector<std::string> command;

  bool operator==(const CliInvocation&) const = default;
};

struct HelpRequest {};
struct VersionRequest {};
struct VerifyRequest {
  ProbeConfig config;
};
struct UsageError {
  std::string message;
};

using ParsedArgs =
    std::variant<CliInvocation, HelpRequest, VersionRequest, VerifyRequest, UsageError>;

/// Total over argv: option parsing halts at the first positional
/// (NEWROOT); everything after it is the command, verbatim. `shell` is
/// the SHELL environment value (null -> /bin/sh) used for the default
/// command.
ParsedArgs parse_args(const std::vector<std::string>& args, const char* shell);

/// -b/--bind argument: SRC[:DST][:ro]. DST defaults to SRC. Paths
/// containing ':' are not representable (documented limitation).
std::variant<BindMount, std::string> parse_bind_spec(const std::string& spec);

/// Exit-code table: Exited(n) -> n, Signaled(n) -> 128+n, setup
/// failures -> 125.
int exit_code_for(const ExecutionOutcome& outcome);

/// One-line stderr diagnostic for failures; nullopt for clean exits.
std::optional<std::string> diagnostic_for(const ExecutionOutcome& outcome);

std::string usage_synopsis();
std::string usage_text();
std::string version_text();

/// Builds the spec candidate an invocation describes (env captured from
/// `envp`).
SandboxSpec spec_from_invocation(const CliInvocation& invocation, char** envp);

/// Full CLI entry point: parse, validate, compile, then dry-run render
/// or execute. Returns the process exit code.
int cli_main(const std::vector<std::string>& args, char** envp);

}  // namespace nsroot
