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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsroot/backend.hpp"

namespace nsroot {

/// Privilege-free fake: appends every call to an inspectable log and
/// performs no real side effects. The "child" runs inline during
/// wait_child(), so a fully scripted run works on any platform without
/// root.
///
/// Failures are injected per method name (see kMethodNames below);
/// exec's wait status is scripted via set_command_wait_status.
class RecordingBackend final : public SyscallBackend {
 public:
  RecordingBackend(unsigned outer_uid = 1000, unsigned outer_gid = 1000)
      : outer_uid_(outer_uid), outer_gid_(outer_gid) {}

  // Method names accepted by fail_on: create_isolated_child,
  // write_setgroups, write_gid_map, write_uid_map, signal_maps_ready,
  // wait_child, await_id_map_handshake, make_mounts_private, bind_mount,
  // check_directory, pivot_root, chdir, detach_unmount, exec.
  void fail_on(const std::string& method, int errnum) { failures_[method] = errnum; }

  /// Raw wait status "observed" for the command once exec is reached.
  void set_command_wait_status(int raw_status) { command_wait_status_ = raw_status; }

  const std::vector<std::string>& log() const { return log_; }
  void clear_log() { log_.clear(); }

  Status create_isolated_child(const NamespaceSet& namespaces, ChildMain child_main,
                               pid_t& child) override;
  Status write_id_maps(pid_t child, IdMapPolicy policy) override;
  Status signal_maps_ready(pid_t child) override;
  Status wait_child(pid_t child, int& raw_status) override;
  std::optional<SetupFailure> take_child_failure(pid_t child) override;

  Status await_id_map_handshake() override;
  Status make_mounts_private() override;
  Status bind_mount(const std::string& source, const std::string& target,
                    bool recursive, bool read_only) override;
  Status check_directory(const std::string& path) override;
  Status pivot_root(const std::string& new_root, const std::string& put_old) override;
  Status chdir_to(const std::string& path) override;
  Status detach_unmount(const std::string& path) override;
  Status exec_command(const std::vector<std::string>& argv,
                      const std::map<std::string, std::string>& env) override;
  [[noreturn]] void fail_child(const std::string& stage, const std::string& detail) override;
  [[noreturn]] void exit_child(int code, const std::string& stderr_message) override;

 private:
  struct FakeChildExit {
    int raw_status;
  };

  std::optional<Status> scripted_failure(const std::string& method);

  unsigned outer_uid_;
  unsigned outer_gid_;
  std::vector<std::string> log_;
  std::map<std::string, int> failures_;
  int command_wait_status_ = 0;  // make_exit_status(0)
  ChildMain child_main_;
  std::optional<SetupFailure> child_failure_;
  bool exec_reached_ = false;
};

}  // namespace nsroot
