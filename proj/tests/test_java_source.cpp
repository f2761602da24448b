#include "intentest/errors.hpp"
#include "intentest/java_source.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

using namespace intentest;
using namespace intentest::java;

TEST(JavaSource, MaskKeepsOffsetsAndNewlines) {
  const std::string src = "int a = 1; // c { }\nString s = \"{ }\"; char c = '{';\n/* { */ int b;";
  auto masked = mask_non_code(src);
  ASSERT_EQ(masked.size(), src.size());
  EXPECT_EQ(std::count(masked.begin(), masked.end(), '\n'), 2);
  EXPECT_EQ(masked.find('{'), std::string::npos);
  EXPECT_NE(masked.find("int b;"), std::string::npos);
}

TEST(JavaSource, MaskTextBlocksAndEscapes) {
  const std::string src = "String t = \"\"\"\n  { \\\"\"\" }\n  \"\"\"; String e = \"\\\"{\"; int x;";
  auto masked = mask_non_code(src);
  EXPECT_EQ(masked.find('{'), std::string::npos);
  EXPECT_NE(masked.find("int x;"), std::string::npos);
}

TEST(JavaSource, LineOf) {
  EXPECT_EQ(line_of("a\nb\nc", 0), 1);
  EXPECT_EQ(line_of("a\nb\nc", 2), 2);
  EXPECT_EQ(line_of("a\nb\nc", 100), 3);
}

TEST(JavaSource, FencedBlocks) {
  auto blocks = fenced_blocks("text\n```java\nint a;\n```\nmore\n```\nint b;\n```\n");
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0], "int a;\n");
  EXPECT_EQ(blocks[1], "int b;\n");
  EXPECT_TRUE(fenced_blocks("no fences").empty());
  auto cut = fenced_blocks("```java\nclass A {\n");
  ASSERT_EQ(cut.size(), 1u);
}

TEST(JavaSource, SplitUnitClass) {
  const std::string src =
      "package a.b;\n"
      "import org.junit.jupiter.api.Test;\n"
      "import static org.junit.jupiter.api.Assertions.*;\n"
      "\n"
      "/** Docs with a { brace */\n"
      "public class FooTest {\n"
      "    private static final String S = \"}\";\n"
      "    private int[] xs = {1, 2};\n"
      "\n"
      "    // helper\n"
      "    private int helper() { return 1; }\n"
      "\n"
      "    @Test\n"
      "    void first() {\n"
      "        assertEquals(1, helper());\n"
      "    }\n"
      "\n"
      "    @ParameterizedTest\n"
      "    @ValueSource(ints = {1, 2})\n"
      "    void second(int x) { assertTrue(x > 0); }\n"
      "}\n";
  auto parts = split_unit(src);
  EXPECT_TRUE(parts.has_class);
  EXPECT_EQ(parts.package_name, "a.b");
  EXPECT_EQ(parts.type_header, "public class FooTest");
  ASSERT_EQ(parts.imports.size(), 2u);
  ASSERT_EQ(parts.members.size(), 5u);
  EXPECT_FALSE(parts.members[0].is_test);
  EXPECT_EQ(parts.members[1].text, "private int[] xs = {1, 2};");
  EXPECT_EQ(parts.members[2].name, "helper");
  EXPECT_EQ(parts.members[2].text.rfind("// helper", 0), 0u);
  EXPECT_TRUE(parts.members[3].is_test);
  EXPECT_EQ(parts.members[3].name, "first");
  EXPECT_EQ(parts.members[3].text, "@Test\nvoid first() {\n    assertEquals(1, helper());\n}");
  EXPECT_TRUE(parts.members[4].is_test);
  EXPECT_EQ(parts.members[4].name, "second");
}

TEST(JavaSource, SplitUnitBareMembers) {
  auto parts = split_unit("@Test\nvoid a() { }\n\n@Test\nvoid b() { if (x) { y(); } }\n");
  EXPECT_FALSE(parts.has_class);
  ASSERT_EQ(parts.members.size(), 2u);
  EXPECT_EQ(parts.members[1].name, "b");
}

TEST(JavaSource, MethodNames) {
  EXPECT_EQ(method_name_of("@Test\npublic void testX() {}"), "testX");
  EXPECT_EQ(method_name_of("@Test(timeout = 5) void y() throws Exception {}"), "y");
  EXPECT_EQ(method_name_of("private int count = 0;"), "");
  EXPECT_EQ(method_name_of("public <T> List<T> of(T t) { return null; }"), "of");
  EXPECT_EQ(rename_method("@Test void a() { a(); }", "a_2"), "@Test void a_2() { a(); }");
}

TEST(JavaSource, RenderTestClass) {
  TestSuite suite;
  GeneratedTest a;
  a.test_id = "a";
  a.source = "@Test\nvoid a() {\n    x();\n}";
  a.imports = {"import org.junit.jupiter.api.Test;"};
  a.members = {"private int n;"};
  GeneratedTest b = a;
  b.test_id = "b";
  b.source = "@Test\nvoid b() {}";
  suite.tests = {a, b};
  auto r = render_test_class(suite, "p.q", "QTest");
  EXPECT_EQ(r.text,
            "package p.q;\n\nimport org.junit.jupiter.api.Test;\n\npublic class QTest {\n\n    private int n;\n\n"
            "    @Test\n    void a() {\n        x();\n    }\n\n    @Test\n    void b() {}\n}\n");
  EXPECT_EQ(r.test_lines.at("a"), (LineSpan{9, 12}));
  EXPECT_EQ(r.test_lines.at("b"), (LineSpan{14, 15}));
}

TEST(JavaSource, RenderTestClassDefaultsImports) {
  TestSuite suite;
  GeneratedTest a;
  a.test_id = "a";
  a.source = "@Test void a() {}";
  suite.tests = {a};
  auto r = render_test_class(suite, "", "T");
  EXPECT_NE(r.text.find("import org.junit.jupiter.api.Test;"), std::string::npos);
  EXPECT_NE(r.text.find("import static org.junit.jupiter.api.Assertions.*;"), std::string::npos);
  EXPECT_EQ(r.text.find("package"), std::string::npos);
}

TEST(JavaSource, SpliceFocalClass) {
  auto sample = testkit::is_simple_number();
  auto spliced = splice_focal_class(sample, ProgramVersion::buggy);
  EXPECT_EQ(spliced.text.rfind("package com.example.json;\n\nimport java.io.Writer;\n\npublic class JsonWriter {\n", 0),
            0u);
  EXPECT_NE(spliced.text.find("s.length() == 1"), std::string::npos);
  // The span covers exactly the method lines.
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(spliced.text);
  while (std::getline(in, line)) lines.push_back(line);
  EXPECT_EQ(lines.at(spliced.focal_span.first - 1), "public static boolean isSimpleNumber(String s) {");
  EXPECT_EQ(lines.at(spliced.focal_span.last - 1), "}");
  EXPECT_EQ(spliced.focal_span.last - spliced.focal_span.first + 1,
            std::count(sample.buggy_source.begin(), sample.buggy_source.end(), '\n') + 1);
  EXPECT_EQ(test_class_name(sample), "JsonWriterGeneratedTest");

  sample.context.class_declaration = "public";
  EXPECT_THROW(splice_focal_class(sample, ProgramVersion::fixed), ScaffoldError);
}

TEST(JavaSource, ClassContextSkeleton) {
  auto sample = testkit::is_simple_number();
  EXPECT_EQ(class_context_skeleton(sample),
            "package com.example.json;\nimport java.io.Writer;\npublic class JsonWriter {\n"
            "    public JsonWriter(java.io.Writer out);\n    public JsonWriter value(String value);\n}");
}

TEST(JavaSource, SignatureParts) {
  EXPECT_EQ(parameter_names("public static boolean isSimpleNumber(String s)"), (std::vector<std::string>{"s"}));
  EXPECT_EQ(parameter_names("void f(Map<String, List<Integer>> m, final int[] xs, int ys[], String... rest)"),
            (std::vector<std::string>{"m", "xs", "ys", "rest"}));
  EXPECT_TRUE(parameter_names("int size()").empty());
  EXPECT_EQ(return_type("public static boolean isSimpleNumber(String s)"), "boolean");
  EXPECT_EQ(return_type("@Override public synchronized <T> Map<String, T> of(T t)"), "Map<String, T>");
  EXPECT_EQ(return_type("public void run()"), "void");
  EXPECT_EQ(return_type("public JsonWriter(Writer out)"), "");
}
