#include "intentest/oracle.hpp"

#include "intentest/errors.hpp"
#include "intentest/java_source.hpp"

#include <fstream>
#include <sstream>

namespace intentest {

namespace {

void write_if_changed(const std::filesystem::path& path, const std::string& content) {
  {
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::stringstream ss;
      ss << in.rdbuf();
      if (ss.str() == content) return;
    }
  }
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw ScaffoldError("cannot write " + path.string());
}

}  // namespace

std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += '\n';
    out += d.file + ":" + std::to_string(d.line) + ": " + d.message;
  }
  return out;
}

std::filesystem::path package_dir(std::string_view package_name) {
  std::filesystem::path p;
  std::string part;
  for (char c : package_name) {
    if (c == '.') {
      if (!part.empty()) p /= part;
      part.clear();
    } else {
      part += c;
    }
  }
  if (!part.empty()) p /= part;
  return p;
}

Workspace ExecutionOracle::prepare_workspace(const BenchmarkSample& sample, ProgramVersion version) {
  auto spliced = java::splice_focal_class(sample, version);
  Workspace ws;
  ws.sample_id = sample.id;
  ws.version = version;
  ws.root = workdir_ / sample.id / "workspace" / std::string(to_string(version));
  ws.package_name = sample.package_name;
  ws.focal_class = sample.class_name();
  ws.test_class = java::test_class_name(sample);
  ws.focal_file = ws.root / "src" / package_dir(sample.package_name) / (ws.focal_class + ".java");
  ws.focal_span = spliced.focal_span;
  write_if_changed(ws.focal_file, spliced.text);
  return ws;
}

std::filesystem::path ExecutionOracle::write_test_class(const Workspace& ws, const TestSuite& suite) const {
  auto rendered = java::render_test_class(suite, ws.package_name, ws.test_class);
  auto path = ws.root / "test" / package_dir(ws.package_name) / (ws.test_class + ".java");
  write_if_changed(path, rendered.text);
  return path;
}

}  // namespace intentest
