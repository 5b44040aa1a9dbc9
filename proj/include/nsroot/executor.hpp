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

#include <string>
#include <variant>
#include <vector>

#include "nsroot/backend.hpp"
#include "nsroot/plan.hpp"
#include "nsroot/recording_backend.hpp"

namespace nsroot {

namespace outcome {

struct Exited {
  int code = 0;  // 0..255
  bool operator==(const Exited&) const = default;
};

struct Signaled {
  int signal = 0;
  bool operator==(const Signaled&) const = default;
};

/// A setup op failed before the command ran. `stage` is the op_name of
/// the failing op ("WAIT" for a wait failure).
struct SetupFailed {
  std::string stage;
  std::string detail;
  bool operator==(const SetupFailed&) const = default;
};

}  // namespace outcome

/// How the sandboxed command terminated.
using ExecutionOutcome =
    std::variant<outcome::Exited, outcome::Signaled, outcome::SetupFailed>;

struct ExecContext {
  std::string new_root;  // diagnostics only; ops carry their own paths
  IdMapPolicy id_map = IdMapPolicy::RootInside;
};

/// Runs a compiled script: creates the isolated child, performs the
/// parent-side id-map handshake, and reports how the child ended. All
/// mount/namespace changes are confined to the child; the parent's own
/// view is untouched. One invocation at a time per process (signal
/// handling and inherited descriptors are process-global).
ExecutionOutcome execute(const OperationScript& script, const ExecContext& context,
                         SyscallBackend& backend);

/// Drives the script's ops through a recording backend, one call per op
/// (read-only binds expand to bind + remount entries), and returns the
/// call log. No privileges, no side effects.
std::vector<std::string> run_recorded(const OperationScript& script,
                                      RecordingBackend& backend);

/// Child-side op loop shared by the real and recording paths; returns
/// only when the backend's exec call returns (the recording case).
int run_child_ops(SyscallBackend& backend, const std::vector<Op>& ops, std::size_t first);

}  // namespace nsroot
