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

#include <sys/types.h>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsroot/sandbox_spec.hpp"

namespace nsroot {

/// Success-or-errno result of one backend operation.
struct [[nodiscard]] Status {
  bool ok = true;
  int errnum = 0;
  std::string message;

  static Status success() { return {}; }
  static Status failure(std::string msg, int err = 0) {
    return Status{false, err, std::move(msg)};
  }
  explicit operator bool() const { return ok; }
};

/// Composes "context: strerror(err)".
std::string errno_message(const std::string& context, int err);

/// Setup failure reported by the child: the op that failed plus the OS
/// error text.
struct SetupFailure {
  std::string stage;
  std::string detail;
};

/// Single-line id-map file content (no trailing newline), e.g. "0 1000 1".
std::string id_map_line(IdMapPolicy policy, unsigned outer_id);

/// 127 when the command was not found, 126 when found but not runnable.
int exec_failure_exit_code(int errnum);

/// Diagnostic the child emits on stderr when exec fails.
std::string exec_failure_message(const std::string& command, const std::string& detail);

// Raw wait-status encodings, for backends that fabricate statuses.
int make_exit_status(int code);
int make_signal_status(int signal);

/// The artifact's single boundary to the kernel. The Linux backend maps
/// each call to one kernel facility; the recording backend logs calls
/// and returns scripted results, with no side effects.
///
/// Parent-side calls (create_isolated_child .. take_child_failure) are
/// made by execute(); child-side calls run inside the function passed to
/// create_isolated_child. Backends are single-invocation-at-a-time: one
/// sandbox run per backend instance at any moment.
class SyscallBackend {
 public:
  using ChildMain = std::function<int()>;

  virtual ~SyscallBackend() = default;

  // -- parent side -----------------------------------------------------
  virtual Status create_isolated_child(const NamespaceSet& namespaces,
                                       ChildMain child_main, pid_t& child) = 0;
  // "deny" -> setgroups, then gid_map, then uid_map, single line each.
  virtual Status write_id_maps(pid_t child, IdMapPolicy policy) = 0;
  virtual Status signal_maps_ready(pid_t child) = 0;
  virtual Status wait_child(pid_t child, int& raw_status) = 0;
  // Setup failure the child reported, if any. Valid after wait_child.
  virtual std::optional<SetupFailure> take_child_failure(pid_t child) = 0;

  // -- child side ------------------------------------------------------
  virtual Status await_id_map_handshake() = 0;
  virtual Status make_mounts_private() = 0;
  virtual Status bind_mount(const std::string& source, const std::string& target,
                            bool recursive, bool read_only) = 0;
  virtual Status check_directory(const std::string& path) = 0;
  virtual Status pivot_root(const std::string& new_root, const std::string& put_old) = 0;
  virtual Status chdir_to(const std::string& path) = 0;
  virtual Status detach_unmount(const std::string& path) = 0;
  // Returns only on failure.
  virtual Status exec_command(const std::vector<std::string>& argv,
                              const std::map<std::string, std::string>& env) = 0;
  // Terminate the child with a setup-failure report / a plain exit code.
  [[noreturn]] virtual void fail_child(const std::string& stage,
                                       const std::string& detail) = 0;
  [[noreturn]] virtual void exit_child(int code, const std::string& stderr_message) = 0;
};

}  // namespace nsroot
