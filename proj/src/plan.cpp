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

#include "nsroot/plan.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace nsroot {
namespace {

// Token values are escaped so that a rendered line splits on plain
// spaces: '\s' space, '\n' newline, '\t' tab, '\r' CR, '\\' backslash.
std::string escape_value(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case ' ': out += "\\s"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::optional<std::string> unescape_value(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (value[i] != '\\') {
      out += value[i];
      continue;
    }
    if (++i == value.size()) return std::nullopt;
    switch (value[i]) {
      case '\\': out += '\\'; break;
      case 's': out += ' '; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      default: return std::nullopt;
    }
  }
  return out;
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

struct LineWriter {
  std::string line;

  explicit LineWriter(int index, std::string_view name) {
    line = std::to_string(index) + ". ";
    line += name;
  }
  void field(std::string_view key, std::string_view value) {
    line += ' ';
    line += key;
    line += '=';
    line += escape_value(value);
  }
  void field(std::string_view key, bool value) { field(key, bool_str(value)); }
};

struct RenderVisitor {
  int index;
  std::string operator()(const ops::EnterNamespaces& op) const {
    LineWriter w(index, "ENTER_NAMESPACES");
    w.field("user", op.namespaces.user());
    w.field("mount", op.namespaces.mount());
    w.field("net", op.namespaces.net);
    w.field("ipc", op.namespaces.ipc);
    return w.line;
  }
  std::string operator()(const ops::AwaitIdMapHandshake&) const {
    return LineWriter(index, "AWAIT_IDMAP_HANDSHAKE").line;
  }
  std::string operator()(const ops::MakeMountTreePrivate&) const {
    return LineWriter(index, "MAKE_MOUNT_TREE_PRIVATE").line;
  }
  std::string operator()(const ops::SelfBindNewRoot& op) const {
    LineWriter w(index, "SELF_BIND_NEW_ROOT");
    w.field("new_root", op.new_root);
    return w.line;
  }
  std::string operator()(const ops::CheckOldRootDir& op) const {
    LineWriter w(index, "CHECK_OLD_ROOT_DIR");
    w.field("path", op.path);
    return w.line;
  }
  std::string operator()(const ops::PivotRoot& op) const {
    LineWriter w(index, "PIVOT_ROOT");
    w.field("new_root", op.new_root);
    w.field("old_root_dir", op.old_root_dir);
    return w.line;
  }
  std::string operator()(const ops::ChdirRoot&) const {
    return LineWriter(index, "CHDIR_ROOT").line;
  }
  std::string operator()(const ops::ApplyBind& op) const {
    LineWriter w(index, "APPLY_BIND");
    w.field("source", op.source);
    w.field("target", op.target);
    w.field("read_only", op.read_only);
    return w.line;
  }
  std::string operator()(const ops::DetachOldRoot& op) const {
    LineWriter w(index, "DETACH_OLD_ROOT");
    w.field("old_root_dir", op.old_root_dir);
    return w.line;
  }
  std::string operator()(const ops::Exec& op) const {
    LineWriter w(index, "EXEC");
    for (const auto& arg : op.command) w.field("arg", arg);
    for (const auto& [name, value] : op.env) w.field("env", name + "=" + value);
    return w.line;
  }
};

// ---- parsing ---------------------------------------------------------

struct Token {
  std::string key;
  std::string value;
};

std::optional<std::vector<Token>> parse_tokens(std::string_view rest) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < rest.size()) {
    std::size_t end = rest.find(' ', pos);
    if (end == std::string_view::npos) end = rest.size();
    std::string_view tok = rest.substr(pos, end - pos);
    pos = end + 1;
    if (tok.empty()) return std::nullopt;
    std::size_t eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0) return std::nullopt;
    auto value = unescape_value(tok.substr(eq + 1));
    if (!value) return std::nullopt;
    tokens.push_back(Token{std::string(tok.substr(0, eq)), std::move(*value)});
  }
  return tokens;
}

class TokenReader {
 public:
  explicit TokenReader(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::optional<std::string> take(std::string_view key) {
    if (next_ < tokens_.size() && tokens_[next_].key == key)
      return std::move(tokens_[next_++].value);
    return std::nullopt;
  }
  std::optional<bool> take_bool(std::string_view key) {
    auto v = take(key);
    if (!v) return std::nullopt;
    if (*v == "true") return true;
    if (*v == "false") return false;
    return std::nullopt;
  }
  bool done() const { return next_ == tokens_.size(); }

 private:
  std::vector<Token> tokens_;
  std::size_t next_ = 0;
};

std::optional<Op> parse_op(std::string_view name, TokenReader& t) {
  if (name == "ENTER_NAMESPACES") {
    auto user = t.take_bool("user");
    auto mount = t.take_bool("mount");
    auto net = t.take_bool("net");
    auto ipc = t.take_bool("ipc");
    if (!user || !mount || !net || !ipc) return std::nullopt;
    if (!*user || !*mount) return std::nullopt;  // cannot be disabled
    return Op{ops::EnterNamespaces{NamespaceSet{*net, *ipc}}};
  }
  if (name == "AWAIT_IDMAP_HANDSHAKE") return Op{ops::AwaitIdMapHandshake{}};
  if (name == "MAKE_MOUNT_TREE_PRIVATE") return Op{ops::MakeMountTreePrivate{}};
  if (name == "SELF_BIND_NEW_ROOT") {
    auto new_root = t.take("new_root");
    if (!new_root) return std::nullopt;
    return Op{ops::SelfBindNewRoot{std::move(*new_root)}};
  }
  if (name == "CHECK_OLD_ROOT_DIR") {
    auto path = t.take("path");
    if (!path) return std::nullopt;
    return Op{ops::CheckOldRootDir{std::move(*path)}};
  }
  if (name == "PIVOT_ROOT") {
    auto new_root = t.take("new_root");
    auto old_root = t.take("old_root_dir");
    if (!new_root || !old_root) return std::nullopt;
    return Op{ops::PivotRoot{std::move(*new_root), std::move(*old_root)}};
  }
  if (name == "CHDIR_ROOT") return Op{ops::ChdirRoot{}};
  if (name == "APPLY_BIND") {
    auto source = t.take("source");
    auto target = t.take("target");
    auto read_only = t.take_bool("read_only");
    if (!source || !target || !read_only) return std::nullopt;
    return Op{ops::ApplyBind{std::move(*source), std::move(*target), *read_only}};
  }
  if (name == "DETACH_OLD_ROOT") {
    auto old_root = t.take("old_root_dir");
    if (!old_root) return std::nullopt;
    return Op{ops::DetachOldRoot{std::move(*old_root)}};
  }
  if (name == "EXEC") {
    ops::Exec exec;
    while (auto arg = t.take("arg")) exec.command.push_back(std::move(*arg));
    if (exec.command.empty()) return std::nullopt;
    while (auto entry = t.take("env")) {
      std::size_t eq = entry->find('=');
      if (eq == std::string::npos) return std::nullopt;
      exec.env[entry->substr(0, eq)] = entry->substr(eq + 1);
    }
    return Op{std::move(exec)};
  }
  return std::nullopt;
}

template <typename T>
bool is_op(const Op& op) {
  return std::holds_alternative<T>(op);
}

template <typename T>
std::vector<std::size_t> positions_of(const std::vector<Op>& ops) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (is_op<T>(ops[i])) out.push_back(i);
  return out;
}

}  // namespace

std::string_view op_name(const Op& op) {
  return std::visit(
      [](const auto& o) -> std::string_view {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, ops::EnterNamespaces>) return "ENTER_NAMESPACES";
        if constexpr (std::is_same_v<T, ops::AwaitIdMapHandshake>)
          return "AWAIT_IDMAP_HANDSHAKE";
        if constexpr (std::is_same_v<T, ops::MakeMountTreePrivate>)
          return "MAKE_MOUNT_TREE_PRIVATE";
        if constexpr (std::is_same_v<T, ops::SelfBindNewRoot>) return "SELF_BIND_NEW_ROOT";
        if constexpr (std::is_same_v<T, ops::CheckOldRootDir>) return "CHECK_OLD_ROOT_DIR";
        if constexpr (std::is_same_v<T, ops::PivotRoot>) return "PIVOT_ROOT";
        if constexpr (std::is_same_v<T, ops::ChdirRoot>) return "CHDIR_ROOT";
        if constexpr (std::is_same_v<T, ops::ApplyBind>) return "APPLY_BIND";
        if constexpr (std::is_same_v<T, ops::DetachOldRoot>) return "DETACH_OLD_ROOT";
        if constexpr (std::is_same_v<T, ops::Exec>) return "EXEC";
      },
      op);
}

OperationScript compile_plan(const SandboxSpec& spec) {
  OperationScript script;
  script.ops.reserve(9 + spec.binds.size());

  const std::string old_root_inside = old_root_sandbox_path(spec);

  script.ops.push_back(ops::EnterNamespaces{spec.namespaces});
  script.ops.push_back(ops::AwaitIdMapHandshake{});
  script.ops.push_back(ops::MakeMountTreePrivate{});
  script.ops.push_back(ops::SelfBindNewRoot{spec.new_root});
  script.ops.push_back(ops::CheckOldRootDir{spec.new_root + "/" + spec.old_root_dir});
  script.ops.push_back(ops::PivotRoot{spec.new_root, spec.old_root_dir});
  script.ops.push_back(ops::ChdirRoot{});
  for (const auto& bind : spec.binds) {
    std::string source =
        bind.source == "/" ? old_root_inside : old_root_inside + bind.source;
    script.ops.push_back(ops::ApplyBind{std::move(source), bind.target, bind.read_only});
  }
  script.ops.push_back(ops::DetachOldRoot{spec.old_root_dir});
  script.ops.push_back(ops::Exec{spec.command, spec.env});
  return script;
}

std::optional<std::string> script_invariant_violation(const OperationScript& script) {
  const auto& ops = script.ops;
  if (ops.size() < 2) return "script has fewer than two ops";
  if (!is_op<ops::EnterNamespaces>(ops[0])) return "ops[0] is not ENTER_NAMESPACES";
  if (!is_op<ops::AwaitIdMapHandshake>(ops[1]))
    return "ops[1] is not AWAIT_IDMAP_HANDSHAKE";

  auto private_pos = positions_of<ops::MakeMountTreePrivate>(ops);
  auto self_bind_pos = positions_of<ops::SelfBindNewRoot>(ops);
  auto pivot_pos = positions_of<ops::PivotRoot>(ops);
  auto chdir_pos = positions_of<ops::ChdirRoot>(ops);
  auto detach_pos = positions_of<ops::DetachOldRoot>(ops);
  auto exec_pos = positions_of<ops::Exec>(ops);

  if (pivot_pos.size() != 1) return "expected exactly one PIVOT_ROOT";
  if (chdir_pos.size() != 1) return "expected exactly one CHDIR_ROOT";
  if (detach_pos.size() != 1) return "expected exactly one DETACH_OLD_ROOT";
  if (exec_pos.size() != 1) return "expected exactly one EXEC";

  if (private_pos.empty() || self_bind_pos.empty())
    return "missing MAKE_MOUNT_TREE_PRIVATE or SELF_BIND_NEW_ROOT";
  if (!(private_pos.front() < self_bind_pos.front() &&
        self_bind_pos.front() < pivot_pos.front()))
    return "MAKE_MOUNT_TREE_PRIVATE must precede SELF_BIND_NEW_ROOT, which must "
           "precede PIVOT_ROOT";

  if (chdir_pos.front() != pivot_pos.front() + 1)
    return "CHDIR_ROOT must immediately follow PIVOT_ROOT";

  for (std::size_t i = 0; i < ops.size(); ++i)
    if (is_op<ops::ApplyBind>(ops[i]) &&
        !(i > chdir_pos.front() && i < detach_pos.front()))
      return "APPLY_BIND must occur after CHDIR_ROOT and before DETACH_OLD_ROOT";

  if (exec_pos.front() != ops.size() - 1) return "EXEC must be the final op";
  return std::nullopt;
}

std::string render_plan(const OperationScript& script) {
  std::string out;
  for (std::size_t i = 0; i < script.ops.size(); ++i) {
    out += std::visit(RenderVisitor{static_cast<int>(i) + 1}, script.ops[i]);
    out += '\n';
  }
  return out;
}

std::variant<OperationScript, PlanParseError> parse_plan(std::string_view text) {
  OperationScript script;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty())
      return PlanParseError{line_no, "empty line"};

    std::size_t dot = line.find(". ");
    if (dot == std::string_view::npos)
      return PlanParseError{line_no, "missing 'N. ' index prefix"};
    int index = 0;
    auto [ptr, ec] =
        std::from_chars(line.data(), line.data() + dot, index);
    if (ec != std::errc() || ptr != line.data() + dot || index != line_no)
      return PlanParseError{line_no, "bad or out-of-sequence index"};

    std::string_view rest = line.substr(dot + 2);
    std::size_t name_end = rest.find(' ');
    std::string_view name =
        name_end == std::string_view::npos ? rest : rest.substr(0, name_end);
    std::string_view args =
        name_end == std::string_view::npos ? std::string_view{} : rest.substr(name_end + 1);
    if (name.empty()) return PlanParseError{line_no, "missing op name"};

    auto tokens = parse_tokens(args);
    if (!tokens) return PlanParseError{line_no, "malformed key=value token"};
    TokenReader reader(std::move(*tokens));
    auto op = parse_op(name, reader);
    if (!op) return PlanParseError{line_no, "unknown op or bad payload: '" +
                                                std::string(name) + "'"};
    if (!reader.done()) return PlanParseError{line_no, "trailing tokens"};
    script.ops.push_back(std::move(*op));
  }
  if (script.ops.empty()) return PlanParseError{0, "empty plan"};
  return script;
}

}  // namespace nsroot
