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
#include <string>
#include <variant>
#include <vector>

namespace nsroot {

/// Namespaces a sandbox runs in. User and mount namespaces are the
/// foundation of the tool and cannot be switched off; network and IPC
/// namespaces are opt-in.
struct NamespaceSet {
  bool net = false;
  bool ipc = false;

  static constexpr bool user() { return true; }
  static constexpr bool mount() { return true; }

  bool operator==(const NamespaceSet&) const = default;
};

/// How the invoking user's uid/gid appear inside the user namespace.
/// Both modes install exactly one single-line mapping per map file.
enum class IdMapPolicy {
  RootInside,    // outer uid/gid -> 0/0 inside
  SameIdInside,  // outer uid/gid -> identical ids inside
};

/// One host directory shared into the sandbox. `source` is a host path,
/// resolved under the old root at execution time; `target` is the mount
/// point inside the new root. Both are absolute, normalized paths once
/// the owning spec has been validated.
struct BindMount {
  std::string source;
  std::string target;
  bool read_only = false;

  bool operator==(const BindMount&) const = default;
};

/// A full description of one sandbox run. Construct freely, then pass
/// through validate_spec() before compiling a plan from it.
struct SandboxSpec {
  std::string new_root;
  std::string old_root_dir = "mnt";  // relative to new_root; must pre-exist
  std::vector<BindMount> binds;
  NamespaceSet namespaces;
  IdMapPolicy id_map = IdMapPolicy::RootInside;
  std::vector<std::string> command;
  std::map<std::string, std::string> env;
  bool dry_run = false;

  bool operator==(const SandboxSpec&) const = default;
};

enum class ValidationErrorCode {
  NonAbsolutePath,
  DuplicateBindTarget,
  EmptyCommand,
  BadOldRootDir,
  BindTargetConflictsWithOldRoot,
};

/// First violated validation rule, with the field it was found in.
struct ValidationError {
  ValidationErrorCode code;
  std::string field;
  std::string message;
};

std::string_view to_string(ValidationErrorCode code);

/// Checks every SandboxSpec rule and returns a canonical copy (paths
/// normalized, trailing slashes stripped) or the first violation.
std::variant<SandboxSpec, ValidationError> validate_spec(const SandboxSpec& raw);

/// Lexical path cleanup: collapses repeated separators, resolves "." and
/// (for absolute paths) "..", strips trailing slashes except for "/".
std::string normalize_path(std::string_view path);

/// In-sandbox location of the old root after pivoting, e.g. "/mnt".
std::string old_root_sandbox_path(const SandboxSpec& spec);

}  // namespace nsroot
