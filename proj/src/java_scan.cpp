#include "strata/java_scan.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "strata/error.hpp"

namespace strata {

namespace fs = std::filesystem;

std::string SourceUnit::qualified_name() const {
  return package.empty() ? type_name : package + "." + type_name;
}

std::string strip_comments_and_literals(std::string_view src) {
  std::string out(src);
  enum class State { Code, LineComment, BlockComment, String, Char, TextBlock };
  State state = State::Code;
  auto blank = [&](std::size_t i) {
    if (out[i] != '\n') out[i] = ' ';
  };
  for (std::size_t i = 0; i < src.size(); ++i) {
    const char c = src[i];
    const char next = i + 1 < src.size() ? src[i + 1] : '\0';
    switch (state) {
      case State::Code:
        if (c == '/' && next == '/') {
          state = State::LineComment;
          blank(i);
        } else if (c == '/' && next == '*') {
          state = State::BlockComment;
          blank(i);
          blank(++i);
        } else if (c == '"' && src.substr(i, 3) == "\"\"\"") {
          state = State::TextBlock;
          blank(i);
          blank(++i);
          blank(++i);
        } else if (c == '"') {
          state = State::String;
          blank(i);
        } else if (c == '\'') {
          state = State::Char;
          blank(i);
        }
        break;
      case State::LineComment:
        if (c == '\n') state = State::Code;
        blank(i);
        break;
      case State::BlockComment:
        blank(i);
        if (c == '*' && next == '/') {
          blank(++i);
          state = State::Code;
        }
        break;
      case State::String:
      case State::Char: {
        const char quote = state == State::String ? '"' : '\'';
        blank(i);
        if (c == '\\' && i + 1 < src.size()) {
          blank(++i);
        } else if (c == quote || c == '\n') {
          state = State::Code;
        }
        break;
      }
      case State::TextBlock:
        blank(i);
        if (c == '\\' && i + 1 < src.size()) {
          blank(++i);
        } else if (src.substr(i, 3) == "\"\"\"") {
          blank(++i);
          blank(++i);
          state = State::Code;
        }
        break;
    }
  }
  return out;
}

namespace {

bool is_ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

std::vector<std::string_view> tokenize(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (is_ident_char(c)) {
      const auto start = i;
      while (i < text.size() && is_ident_char(static_cast<unsigned char>(text[i]))) ++i;
      tokens.push_back(text.substr(start, i - start));
    } else {
      tokens.push_back(text.substr(i, 1));
      ++i;
    }
  }
  return tokens;
}

bool is_identifier(std::string_view token) {
  return !token.empty() && is_ident_char(static_cast<unsigned char>(token.front())) &&
         !std::isdigit(static_cast<unsigned char>(token.front()));
}

}  // namespace

std::optional<SourceUnit> parse_source_unit(std::string_view source, const fs::path& path) {
  const auto stripped = strip_comments_and_literals(source);
  const auto tokens = tokenize(stripped);

  SourceUnit unit;
  unit.path = path;
  std::optional<std::string> first_public;
  int braces = 0;
  int parens = 0;
  bool saw_public = false;

  auto collect_name = [&](std::size_t& i) {
    std::string name;
    while (i < tokens.size() && tokens[i] != ";") {
      if (is_identifier(tokens[i]) || tokens[i] == "." || tokens[i] == "*") name += tokens[i];
      ++i;
    }
    return name;
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto tok = tokens[i];
    if (tok == "{") {
      ++braces;
      continue;
    }
    if (tok == "}") {
      if (braces > 0) --braces;
      if (braces == 0) saw_public = false;
      continue;
    }
    if (tok == "(") {
      ++parens;
      continue;
    }
    if (tok == ")") {
      if (parens > 0) --parens;
      continue;
    }
    if (braces != 0 || parens != 0) continue;

    const bool after_dot = i > 0 && tokens[i - 1] == ".";
    if (tok == ";") {
      saw_public = false;
    } else if (tok == "package" && !after_dot && unit.declared_types.empty()) {
      unit.package = collect_name(++i);
    } else if (tok == "import" && !after_dot && unit.declared_types.empty()) {
      ++i;
      const bool is_static = i < tokens.size() && tokens[i] == "static";
      if (is_static) ++i;
      auto name = collect_name(i);
      if (is_static) {
        const auto dot = name.rfind('.');
        if (dot == std::string::npos) continue;
        name.resize(dot);
      }
      if (!name.empty()) unit.imports.push_back(std::move(name));
    } else if (tok == "public") {
      saw_public = true;
    } else if (!after_dot && i + 1 < tokens.size()) {
      bool declares = false;
      if (tok == "class" || tok == "enum") {
        declares = true;
      } else if (tok == "interface") {
        declares = true;  // also covers @interface
      } else if (tok == "record" && is_identifier(tokens[i + 1]) && i + 2 < tokens.size() &&
                 (tokens[i + 2] == "(" || tokens[i + 2] == "<")) {
        declares = true;
      }
      if (declares && is_identifier(tokens[i + 1])) {
        std::string name(tokens[i + 1]);
        unit.declared_types.push_back(name);
        if (saw_public && !first_public) first_public = name;
        saw_public = false;
        ++i;
      }
    }
  }

  if (unit.declared_types.empty()) return std::nullopt;
  unit.type_name = first_public ? *first_public : unit.declared_types.front();
  return unit;
}

DependencyGraph build_import_graph(const std::vector<SourceUnit>& input,
                                   std::vector<std::string>* log) {
  std::vector<const SourceUnit*> units;
  for (const auto& u : input) units.push_back(&u);
  std::sort(units.begin(), units.end(), [](const SourceUnit* a, const SourceUnit* b) {
    return a->path < b->path;
  });

  std::map<std::string, const SourceUnit*> by_name;
  std::map<std::string, std::vector<std::string>> by_package;
  for (const auto* u : units) {
    auto name = u->qualified_name();
    if (!by_name.emplace(name, u).second) {
      if (log) log->push_back("duplicate type " + name + " in " + u->path.string() + ", ignored");
      continue;
    }
    by_package[u->package].push_back(std::move(name));
  }

  std::vector<std::string> nodes;
  std::vector<NamedEdge> edges;
  for (const auto& [name, u] : by_name) {
    nodes.push_back(name);
    auto link = [&](const std::string& target) {
      if (target != name) edges.emplace_back(name, target);
    };
    for (const auto& import : u->imports) {
      if (import.size() > 2 && import.ends_with(".*")) {
        const auto prefix = import.substr(0, import.size() - 2);
        if (auto it = by_package.find(prefix); it != by_package.end()) {
          for (const auto& target : it->second) link(target);
        }
        // `import p.Outer.*` pulls in nested types of a scanned unit.
        if (by_name.contains(prefix)) link(prefix);
        continue;
      }
      // Nested-type imports resolve to the enclosing scanned unit.
      std::string candidate = import;
      while (true) {
        if (by_name.contains(candidate)) {
          link(candidate);
          break;
        }
        const auto dot = candidate.rfind('.');
        if (dot == std::string::npos) break;
        candidate.resize(dot);
      }
    }
  }
  return DependencyGraph(Level::Class, std::move(nodes), std::move(edges));
}

ScanResult scan_sources(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw ValidationError("not a readable directory: " + root.string());
  }

  std::vector<fs::path> files;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw ValidationError("cannot read directory " + root.string() + ": " + ec.message());
  for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) break;
    if (it->path().extension() == ".java" && it->is_regular_file(ec)) files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());

  ScanResult result;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      result.log.push_back("cannot read " + file.string() + ", skipped");
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto unit = parse_source_unit(buf.str(), file);
    if (!unit) {
      result.log.push_back("no top-level type in " + file.string() + ", skipped");
      continue;
    }
    if (unit->declared_types.size() > 1) {
      std::string others;
      for (const auto& t : unit->declared_types) {
        if (t != unit->type_name) others += " " + t;
      }
      result.log.push_back(file.string() + ": using " + unit->type_name +
                           ", ignoring other top-level types:" + others);
    }
    result.units.push_back(std::move(*unit));
  }
  if (result.units.empty()) {
    throw EmptyResultError("no Java source units found under " + root.string());
  }
  result.graph = build_import_graph(result.units, &result.log);
  return result;
}

}  // namespace strata
