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

#include "nsroot/sandbox_spec.hpp"

#include <string_view>
#include <vector>

namespace nsroot {
namespace {

std::vector<std::string> split_components(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    std::size_t start = i;
    while (i < path.size() && path[i] != '/') ++i;
    if (i > start) parts.emplace_back(path.substr(start, i - start));
  }
  return parts;
}

std::string join_components(const std::vector<std::string>& parts, bool absolute) {
  std::string out = absolute ? "/" : "";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += '/';
    out += parts[i];
  }
  return out;
}

// True when `prefix` equals `path` or names one of its ancestors,
// component-wise ("/mn" is not a prefix of "/mnt").
bool component_prefix(const std::vector<std::string>& prefix,
                      const std::vector<std::string>& path) {
  if (prefix.size() > path.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prefix[i] != path[i]) return false;
  return true;
}

ValidationError error(ValidationErrorCode code, std::string field, std::string message) {
  return ValidationError{code, std::move(field), std::move(message)};
}

}  // namespace

std::string normalize_path(std::string_view path) {
  bool absolute = !path.empty() && path.front() == '/';
  std::vector<std::string> parts;
  for (auto& part : split_components(path)) {
    if (part == ".") continue;
    if (part == ".." && absolute) {
      if (!parts.empty()) parts.pop_back();
      continue;  // "/.." clamps to "/"
    }
    parts.push_back(std::move(part));
  }
  if (absolute && parts.empty()) return "/";
  return join_components(parts, absolute);
}

std::string old_root_sandbox_path(const SandboxSpec& spec) {
  return "/" + spec.old_root_dir;
}

std::string_view to_string(ValidationErrorCode code) {
  switch (code) {
    case ValidationErrorCode::NonAbsolutePath: return "NonAbsolutePath";
    case ValidationErrorCode::DuplicateBindTarget: return "DuplicateBindTarget";
    case ValidationErrorCode::EmptyCommand: return "EmptyCommand";
    case ValidationErrorCode::BadOldRootDir: return "BadOldRootDir";
    case ValidationErrorCode::BindTargetConflictsWithOldRoot:
      return "BindTargetConflictsWithOldRoot";
  }
  return "ValidationError";
}

std::variant<SandboxSpec, ValidationError> validate_spec(const SandboxSpec& raw) {
  SandboxSpec spec = raw;

  spec.new_root = normalize_path(spec.new_root);
  if (spec.new_root.empty() || spec.new_root.front() != '/')
    return error(ValidationErrorCode::NonAbsolutePath, "new_root",
                 "new_root must be an absolute path, got '" + raw.new_root + "'");

  // old_root_dir: relative, at least one component, no ".." anywhere.
  if (!raw.old_root_dir.empty() && raw.old_root_dir.front() == '/')
    return error(ValidationErrorCode::BadOldRootDir, "old_root_dir",
                 "old-root directory must be relative to the new root, got '" +
                     raw.old_root_dir + "'");
  {
    auto parts = split_components(raw.old_root_dir);
    std::vector<std::string> kept;
    for (auto& part : parts) {
      if (part == "..")
        return error(ValidationErrorCode::BadOldRootDir, "old_root_dir",
                     "old-root directory must not contain '..', got '" +
                         raw.old_root_dir + "'");
      if (part == ".") continue;
      kept.push_back(std::move(part));
    }
    if (kept.empty())
      return error(ValidationErrorCode::BadOldRootDir, "old_root_dir",
                   "old-root directory must have at least one component, got '" +
                       raw.old_root_dir + "'");
    spec.old_root_dir = join_components(kept, false);
  }

  if (spec.command.empty())
    return error(ValidationErrorCode::EmptyCommand, "command",
                 "command must have at least one element");

  const auto old_root_parts = split_components(spec.old_root_dir);
  for (std::size_t i = 0; i < spec.binds.size(); ++i) {
    auto& bind = spec.binds[i];
    const std::string field = "binds[" + std::to_string(i) + "]";

    bind.source = normalize_path(bind.source);
    if (bind.source.empty() || bind.source.front() != '/')
      return error(ValidationErrorCode::NonAbsolutePath, field + ".source",
                   "bind source must be an absolute path, got '" +
                       raw.binds[i].source + "'");
    bind.target = normalize_path(bind.target);
    if (bind.target.empty() || bind.target.front() != '/')
      return error(ValidationErrorCode::NonAbsolutePath, field + ".target",
                   "bind target must be an absolute path, got '" +
                       raw.binds[i].target + "'");

    // The old-root holding directory must stay reachable until it is
    // detached, so no target may shadow it, replace it, or hide inside it.
    const auto target_parts = split_components(bind.target);
    if (component_prefix(target_parts, old_root_parts) ||
        component_prefix(old_root_parts, target_parts))
      return error(ValidationErrorCode::BindTargetConflictsWithOldRoot,
                   field + ".target",
                   "bind target '" + bind.target +
                       "' conflicts with the old-root directory '" +
                       old_root_sandbox_path(spec) + "'");

    for (std::size_t j = 0; j < i; ++j)
      if (spec.binds[j].target == bind.target)
        return error(ValidationErrorCode::DuplicateBindTarget, field + ".target",
                     "bind target '" + bind.target + "' appears more than once");
  }

  return spec;
}

}  // namespace nsroot
