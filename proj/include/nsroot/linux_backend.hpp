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

#include <memory>
#include <optional>
#include <string>

#include "nsroot/backend.hpp"

namespace nsroot {

/// Real kernel backend. create_isolated_child clones with the namespace
/// flags; the child blocks in await_id_map_handshake on a pipe until the
/// parent has written the id maps, then runs the remaining ops and
/// execs. Setup failures travel back over a CLOEXEC error pipe so the
/// parent can name the failed stage.
class LinuxBackend final : public SyscallBackend {
 public:
  LinuxBackend() = default;
  ~LinuxBackend() override;

  LinuxBackend(const LinuxBackend&) = delete;
  LinuxBackend& operator=(const LinuxBackend&) = delete;

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
  static int child_trampoline(void* arg);
  int child_entry();
  void close_fds();

  ChildMain child_main_;
  std::unique_ptr<char[]> child_stack_;
  int sync_read_ = -1;   // child blocks here until the maps are in
  int sync_write_ = -1;  // parent writes one byte, then closes
  int err_read_ = -1;    // parent collects the child's setup failure
  int err_write_ = -1;
  std::optional<SetupFailure> child_failure_;
};

}  // namespace nsroot
