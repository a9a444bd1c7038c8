#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strata/graph.hpp"

namespace strata {

/// What the lexical scanner extracts from one `.java` file.
struct SourceUnit {
  std::filesystem::path path;
  std::string package;    ///< empty for the default package
  std::string type_name;  ///< first public top-level type, else the first declared
  /// Dot-qualified imports; static imports are cut back to the owning type,
  /// wildcard imports keep their trailing ".*".
  std::vector<std::string> imports;
  /// All top-level type names declared in the file, in declaration order.
  std::vector<std::string> declared_types;

  /// `package.TypeName`, or just `TypeName` in the default package.
  std::string qualified_name() const;
};

/// Replaces comments and string/char/text-block literals with spaces,
/// keeping newlines so offsets and line numbers survive.
std::string strip_comments_and_literals(std::string_view source);

/// Parses one compilation unit. Returns nullopt when no top-level type is
/// declared (package-info.java, module-info.java, empty files).
std::optional<SourceUnit> parse_source_unit(std::string_view source,
                                            const std::filesystem::path& path = {});

struct ScanResult {
  DependencyGraph graph;
  std::vector<SourceUnit> units;
  /// Skipped files, duplicate types, ignored secondary types.
  std::vector<std::string> log;
};

/// Builds the class-level import graph of every `.java` file under `root`.
/// Throws ValidationError when `root` is not a directory and
/// EmptyResultError when no unit is found.
ScanResult scan_sources(const std::filesystem::path& root);

/// Resolves parsed units into a graph; `scan_sources` minus the file system.
DependencyGraph build_import_graph(const std::vector<SourceUnit>& units,
                                   std::vector<std::string>* log = nullptr);

}  // namespace strata
