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
#include <string_view>
#include <variant>
#include <vector>

#include "nsroot/sandbox_spec.hpp"

namespace nsroot {
namespace ops {

// Primitive operations a sandbox run is made of. Each variant carries
// everything needed to execute it; none refer back to the SandboxSpec.

struct EnterNamespaces {
  NamespaceSet namespaces;
  bool operator==(const EnterNamespaces&) const = default;
};

// Child blocks until the parent confirms the id maps are written.
struct AwaitIdMapHandshake {
  bool operator==(const AwaitIdMapHandshake&) const = default;
};

// Recursively mark the mount tree private so nothing propagates back.
struct MakeMountTreePrivate {
  bool operator==(const MakeMountTreePrivate&) const = default;
};

// Bind new_root onto itself so pivot_root sees a mount point.
struct SelfBindNewRoot {
  std::string new_root;
  bool operator==(const SelfBindNewRoot&) const = default;
};

// The old-root holding directory must pre-exist inside the new root.
struct CheckOldRootDir {
  std::string path;  // new_root/old_root_dir, host view
  bool operator==(const CheckOldRootDir&) const = default;
};

struct PivotRoot {
  std::string new_root;
  std::string old_root_dir;  // relative; put_old = new_root/old_root_dir
  bool operator==(const PivotRoot&) const = default;
};

struct ChdirRoot {
  bool operator==(const ChdirRoot&) const = default;
};

// source is already resolved under the old root ("/mnt/data"): by the
// time binds run, the pivot has happened and host paths are only
// reachable through the old-root mount.
struct ApplyBind {
  std::string source;
  std::string target;
  bool read_only = false;
  bool operator==(const ApplyBind&) const = default;
};

// Lazy unmount; the old root is still busy backing open descriptors.
struct DetachOldRoot {
  std::string old_root_dir;  // relative; mounted at /old_root_dir
  bool operator==(const DetachOldRoot&) const = default;
};

struct Exec {
  std::vector<std::string> command;
  std::map<std::string, std::string> env;
  bool operator==(const Exec&) const = default;
};

}  // namespace ops

using Op = std::variant<ops::EnterNamespaces, ops::AwaitIdMapHandshake,
                        ops::MakeMountTreePrivate, ops::SelfBindNewRoot,
                        ops::CheckOldRootDir, ops::PivotRoot, ops::ChdirRoot,
                        ops::ApplyBind, ops::DetachOldRoot, ops::Exec>;

/// Ordered script of primitive operations compiled from one spec.
struct OperationScript {
  std::vector<Op> ops;
  bool operator==(const OperationScript&) const = default;
};

/// Render name of an op, e.g. "PIVOT_ROOT". Also used as the failure
/// stage name in ExecutionOutcome.
std::string_view op_name(const Op& op);

/// Compiles a validated spec into its operation script. Pure and
/// deterministic: equal specs yield equal scripts. Binds keep their
/// spec order, sources resolved under the old root.
OperationScript compile_plan(const SandboxSpec& spec);

/// Returns a description of the first violated script ordering rule, or
/// nullopt when the script is well-formed.
std::optional<std::string> script_invariant_violation(const OperationScript& script);

/// One "N. OPNAME key=value ..." line per op, 1-based, trailing newline.
/// Values are backslash-escaped so parse_plan can reverse the rendering
/// losslessly.
std::string render_plan(const OperationScript& script);

struct PlanParseError {
  int line = 0;  // 1-based; 0 when the error is not tied to a line
  std::string message;
};

/// Inverse of render_plan: parse_plan(render_plan(s)) == s.
std::variant<OperationScript, PlanParseError> parse_plan(std::string_view text);

}  // namespace nsroot
