#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "strata/error.hpp"
#include "strata/java_scan.hpp"

using namespace strata;
namespace fs = std::filesystem;

namespace {

const fs::path kJava = fs::path(STRATA_FIXTURE_DIR) / "java";

SourceUnit unit(std::string_view text) {
  auto u = parse_source_unit(text);
  REQUIRE(u.has_value());
  return *u;
}

}  // namespace

TEST_CASE("strip_comments_and_literals keeps layout") {
  const std::string src = "a // x\nb /* y\nz */ c \"q\\\"r\" 'k' d";
  const auto out = strip_comments_and_literals(src);
  CHECK(out.size() == src.size());
  CHECK(std::count(out.begin(), out.end(), '\n') == 2);
  CHECK(out.find('x') == std::string::npos);
  CHECK(out.find('y') == std::string::npos);
  CHECK(out.find('q') == std::string::npos);
  CHECK(out.find('k') == std::string::npos);
  CHECK(out.find('d') != std::string::npos);
}

TEST_CASE("strip_comments_and_literals handles text blocks") {
  const auto out = strip_comments_and_literals("x = \"\"\"\nimport p.A;\n\"\"\"; y");
  CHECK(out.find("import") == std::string::npos);
  CHECK(out.find('y') != std::string::npos);
}

TEST_CASE("parse_source_unit: package, imports and type") {
  const auto u = unit(R"(package com.acme.core;

import java.util.List;
import static com.acme.util.Strings.join;
import com.acme.io.*;

/** docs mention class Fake */
public class Engine {
  class Inner {}
}
class Helper {}
)");
  CHECK(u.package == "com.acme.core");
  CHECK(u.type_name == "Engine");
  CHECK(u.qualified_name() == "com.acme.core.Engine");
  CHECK(u.imports == std::vector<std::string>{"java.util.List", "com.acme.util.Strings", "com.acme.io.*"});
  CHECK(u.declared_types == std::vector<std::string>{"Engine", "Helper"});
}

TEST_CASE("parse_source_unit: records, annotations, default package") {
  const auto u = unit("@Deprecated\nrecord Point(int x, int y) {}\n");
  CHECK(u.package.empty());
  CHECK(u.qualified_name() == "Point");
  CHECK(unit("public @interface Marker {}").type_name == "Marker");
}

TEST_CASE("parse_source_unit: no type declared") {
  CHECK_FALSE(parse_source_unit("package p;\n").has_value());
  CHECK_FALSE(parse_source_unit("").has_value());
  CHECK_FALSE(parse_source_unit("// class Foo {}\n").has_value());
}

TEST_CASE("parse_source_unit: Foo.class is not a declaration") {
  const auto u = unit("class A { Object o = B.class; }");
  CHECK(u.declared_types == std::vector<std::string>{"A"});
}

TEST_CASE("build_import_graph resolution rules") {
  std::vector<SourceUnit> units{
      unit("package p; public class A {}"),
      unit("package p; public class A2 {}"),
      unit("package q; import p.A; import p.A.Nested; import java.util.Map; public class B {}"),
      unit("package r; import p.*; import r.C; public class C {}"),
  };
  units[0].path = "p/A.java";
  units[1].path = "p/A2.java";
  units[2].path = "q/B.java";
  units[3].path = "r/C.java";
  const auto g = build_import_graph(units);
  CHECK(g.level() == Level::Class);
  CHECK(g.named_edges() ==
        std::vector<NamedEdge>{{"q.B", "p.A"}, {"r.C", "p.A"}, {"r.C", "p.A2"}});
}

TEST_CASE("build_import_graph logs duplicate type names") {
  std::vector<SourceUnit> units{unit("package p; class A {}"), unit("package p; class A {}")};
  units[0].path = "one/A.java";
  units[1].path = "two/A.java";
  std::vector<std::string> log;
  const auto g = build_import_graph(units, &log);
  CHECK(g.node_count() == 1);
  CHECK(log.size() == 1);
}

TEST_CASE("scan_sources: fixtures") {
  SUBCASE("tiny: one import edge") {
    const auto r = scan_sources(kJava / "tiny");
    CHECK(r.graph.named_edges() == std::vector<NamedEdge>{{"q.B", "p.A"}});
  }
  SUBCASE("commented import: no edge") {
    const auto r = scan_sources(kJava / "commented");
    CHECK(r.graph.node_count() == 2);
    CHECK(r.graph.edge_count() == 0);
  }
  SUBCASE("wildcard import reaches every unit of the package") {
    const auto r = scan_sources(kJava / "wildcard");
    CHECK(r.graph.named_edges() == std::vector<NamedEdge>{{"q.B", "p.A1"}, {"q.B", "p.A2"}});
  }
}

TEST_CASE("scan_sources: errors") {
  CHECK_THROWS_AS(scan_sources(kJava / "does_not_exist"), ValidationError);
  const auto empty = fs::temp_directory_path() / "strata_unit_empty_scan";
  fs::remove_all(empty);
  fs::create_directories(empty);
  std::ofstream(empty / "package-info.java") << "package p;\n";
  CHECK_THROWS_AS(scan_sources(empty), EmptyResultError);
  fs::remove_all(empty);
}
