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
#include <vector>

namespace nsroot {

struct ProbeConfig {
  std::string old_root_dir = "mnt";  // where the old root would be mounted
  std::string host_only_path;        // a path that exists on the host only
  std::string ipc_token;             // System V key (decimal or 0x hex)
};

/// What a process can observe about its own isolation. Fields are
/// nullopt when the probe's kernel interface was unavailable; every
/// field carries a raw-evidence string either way.
struct ProbeReport {
  std::optional<long> inside_uid;
  std::optional<bool> old_root_mounted;
  std::optional<bool> host_path_visible;
  std::optional<std::vector<std::string>> interfaces;  // sorted, unique
  std::optional<bool> ipc_segment_visible;

  // field name -> single-line raw evidence, nonempty for every field
  std::string evidence_inside_uid;
  std::string evidence_old_root_mounted;
  std::string evidence_host_path_visible;
  std::string evidence_interfaces;
  std::string evidence_ipc_segment_visible;

  bool operator==(const ProbeReport&) const = default;

  /// key=value lines in fixed order, then "# evidence:" lines.
  std::string to_text() const;
};

/// Runs every probe, never fatally: an unavailable kernel interface is
/// reported in-band as an "unavailable" value with the reason in the
/// evidence line. Meant to run as the sandboxed command.
ProbeReport run_probes(const ProbeConfig& config);

/// Inverse of ProbeReport::to_text (identity round-trip).
std::optional<ProbeReport> parse_probe_report(std::string_view text);

}  // namespace nsroot
