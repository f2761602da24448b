#include "intentest/cli.hpp"

#include "intentest/bench.hpp"
#include "intentest/config.hpp"
#include "intentest/errors.hpp"
#include "intentest/java_oracle.hpp"
#include "intentest/mock_oracle.hpp"
#include "intentest/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

namespace intentest::cli {
namespace fs = std::filesystem;

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_sigint(int) { g_stop.store(true); }

struct BackendOptions {
  std::string backend;
  std::string record;
  std::string replay;
  std::string script;
};

struct PipelineOverrides {
  std::string config;
  std::string oracle;
  std::string workdir;
  std::string templates;
  std::optional<int> workers;
  std::optional<int> max_iter_val;
  std::optional<int> max_iter_ana;
  std::optional<int> n_tests;
};

// Thrown for problems with the host environment (exit code 3).
struct EnvironmentProblem : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Thrown for inconsistent command-line input (exit code 2).
struct UsageProblem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunConfig resolve_config(const PipelineOverrides& o, const BackendOptions& b) {
  RunConfig rc = o.config.empty() ? RunConfig{} : load_config(o.config);
  auto& p = rc.pipeline;
  if (!b.backend.empty()) p.backend_id = b.backend;
  else if (!b.replay.empty()) p.backend_id = "replay";
  else if (!b.script.empty()) p.backend_id = "scripted";
  if (!o.oracle.empty()) p.oracle_id = o.oracle;
  if (!o.workdir.empty()) p.workdir = o.workdir;
  if (!o.templates.empty()) rc.templates_dir = o.templates;
  if (o.workers) p.worker_count = *o.workers;
  if (o.max_iter_val) p.max_iter_val = *o.max_iter_val;
  if (o.max_iter_ana) p.max_iter_ana = *o.max_iter_ana;
  if (o.n_tests) p.n_tests = *o.n_tests;
  p.validate();
  if (p.backend_id != "http" && p.backend_id != "replay" && p.backend_id != "scripted") {
    throw UsageProblem("unknown backend '" + p.backend_id + "' (http, replay, scripted)");
  }
  if (p.oracle_id != "mock" && p.oracle_id != "java") {
    throw UsageProblem("unknown oracle '" + p.oracle_id + "' (java, mock)");
  }
  return rc;
}

std::shared_ptr<Backend> make_backend(const RunConfig& rc, const BackendOptions& b, bool allow_record) {
  std::shared_ptr<Backend> backend;
  const auto& id = rc.pipeline.backend_id;
  if (id == "replay") {
    if (b.replay.empty()) throw UsageProblem("the replay backend needs --replay <transcript>");
    backend = ReplayBackend::load(b.replay);
  } else if (id == "scripted") {
    if (b.script.empty()) throw UsageProblem("the scripted backend needs --script <file>");
    backend = ScriptedBackend::load(b.script);
  } else {
    const char* key = rc.http.api_key_env.empty() ? nullptr : std::getenv(rc.http.api_key_env.c_str());
    if (!key || !*key) {
      throw EnvironmentProblem("environment variable " + rc.http.api_key_env + " holding the API key is not set");
    }
    backend = std::make_shared<HttpBackend>(rc.http);
  }
  if (!b.record.empty()) {
    if (!allow_record) throw UsageProblem("--record is not supported here");
    backend = std::make_shared<RecordingBackend>(backend, b.record);
  }
  return backend;
}

std::unique_ptr<ExecutionOracle> make_oracle(const RunConfig& rc, const Dataset& ds, const fs::path& workdir) {
  if (rc.pipeline.oracle_id == "java") {
    if (!JavaOracle::toolchain_ready(rc.java)) {
      std::string missing;
      for (const auto& c : JavaOracle::doctor(rc.java)) {
        if (!c.ok) missing += "\n  " + c.name + ": " + c.detail;
      }
      throw EnvironmentProblem("Java toolchain incomplete (run `intentest doctor`):" + missing);
    }
    return std::make_unique<JavaOracle>(workdir, rc.java);
  }
  auto mock = std::make_unique<MockOracle>(workdir);
  for (std::size_t i = 0; i < ds.samples.size(); ++i) mock->load_rules(ds.samples[i].id, ds.sample_dirs[i]);
  return mock;
}

PromptCatalog make_catalog(const RunConfig& rc) {
  return rc.templates_dir ? PromptCatalog::load(*rc.templates_dir) : PromptCatalog::builtin();
}

bool has_failures(const MetricsReport& r) {
  for (const auto& [state, count] : r.terminal_states) {
    if (count > 0 && state != "consistent" && state != "iteration_cap") return true;
  }
  return r.interrupted;
}

void print_summary(std::ostream& out, const MetricsReport& r, const fs::path& dir) {
  out << render_markdown_table({{dir.string(), to_json(r)}});
  for (const auto& row : r.samples) {
    out << "  " << row.outcome.sample_id << ": " << row.terminal_state;
    if (!row.error.empty()) out << " (" << row.error << ")";
    out << "\n";
  }
}

void add_pipeline_options(CLI::App* cmd, PipelineOverrides& o, BackendOptions& b) {
  cmd->add_option("--config", o.config, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--backend", b.backend, "http, replay or scripted");
  cmd->add_option("--oracle", o.oracle, "java or mock");
  cmd->add_option("--replay", b.replay, "replay responses from a transcript")->check(CLI::ExistingFile);
  cmd->add_option("--script", b.script, "scripted backend rules (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--workdir", o.workdir, "directory for workspaces, logs and reports");
  cmd->add_option("--workers", o.workers, "samples processed in parallel")->check(CLI::PositiveNumber);
  cmd->add_option("--templates", o.templates, "directory overriding prompt templates")->check(CLI::ExistingDirectory);
}

int cmd_run(const std::string& dataset, PipelineOverrides& o, BackendOptions& b, std::ostream& out) {
  auto rc = resolve_config(o, b);
  auto ds = load_dataset(dataset);
  auto backend = make_backend(rc, b, true);
  auto oracle = make_oracle(rc, ds, rc.pipeline.workdir);
  auto catalog = make_catalog(rc);
  auto run = run_benchmark(ds.samples, rc.pipeline, *backend, *oracle, catalog, &g_stop);
  write_report(run.report, rc.pipeline.workdir);
  print_summary(out, run.report, rc.pipeline.workdir);
  return has_failures(run.report) ? kFailures : kOk;
}

int cmd_validate(const std::string& dataset, std::ostream& out) {
  Dataset ds;
  try {
    ds = load_dataset(dataset);
  } catch (const SchemaError& e) {
    out << e.what() << "\n";
    return kFailures;
  } catch (const DuplicateId& e) {
    out << e.what() << "\n";
    return kFailures;
  }
  std::size_t violations = 0;
  for (const auto& s : ds.samples) {
    for (const auto& v : check_nld_protocol(s)) {
      out << s.id << ": " << v.rule << ": " << v.message << "\n";
      ++violations;
    }
  }
  out << ds.samples.size() << " samples, " << violations << " protocol violations\n";
  return violations ? kFailures : kOk;
}

int cmd_stats(const std::string& dataset, std::ostream& out) {
  auto ds = load_dataset(dataset);
  out << format_stats_table(dataset_stats(ds.samples), ds.name);
  return kOk;
}

int cmd_doctor(const std::string& config, std::ostream& out) {
  RunConfig rc = config.empty() ? RunConfig{} : load_config(config);
  bool ok = true;
  for (const auto& c : JavaOracle::doctor(rc.java)) {
    out << (c.ok ? "[ok]      " : "[missing] ") << c.name << ": " << c.detail << "\n";
    ok = ok && c.ok;
  }
  const char* key = rc.http.api_key_env.empty() ? nullptr : std::getenv(rc.http.api_key_env.c_str());
  out << (key && *key ? "[ok]      " : "[info]    ") << "http api key: " << rc.http.api_key_env
      << (key && *key ? " is set" : " is not set (only needed for --backend http)") << "\n";
  return ok ? kOk : kEnvironment;
}

int cmd_report(const std::string& in_dir, const std::string& out_file, std::ostream& out) {
  std::vector<fs::path> found;
  for (const auto& entry : fs::recursive_directory_iterator(in_dir)) {
    if (entry.is_regular_file() && entry.path().filename() == "report.json") found.push_back(entry.path());
  }
  std::sort(found.begin(), found.end());
  if (found.empty()) {
    out << "no report.json under " << in_dir << "\n";
    return kFailures;
  }
  std::vector<std::pair<std::string, nlohmann::json>> rows;
  for (const auto& path : found) {
    std::ifstream in(path);
    auto label = fs::relative(path.parent_path(), in_dir).generic_string();
    rows.emplace_back(label, nlohmann::json::parse(in));
  }
  auto table = render_markdown_table(rows);
  if (out_file.empty()) {
    out << table;
  } else {
    std::ofstream(out_file, std::ios::binary | std::ios::trunc) << "# Runs\n\n" << table;
    out << "wrote " << out_file << " (" << rows.size() << " reports)\n";
  }
  return kOk;
}

int cmd_import(const ImportOptions& options, std::ostream& out) {
  auto result = import_pairs(options);
  for (const auto& s : result.skipped) out << "skipped " << s << "\n";
  for (const auto& s : result.missing_nld) out << "no description for " << s << " (nld.txt left empty)\n";
  out << "imported " << result.imported.size() << " samples into " << options.out_dir.string() << "\n";
  return result.imported.empty() || !result.missing_nld.empty() ? kFailures : kOk;
}

struct SweepOptions {
  std::string val_iters = "3,5,7,9";
  std::string ana_iters = "3,5,7,9";
  std::string n = "5";
  bool parallel_cells = false;
};

std::string cell_name(int v, int a, int n) {
  return "val" + std::to_string(v) + "_ana" + std::to_string(a) + "_n" + std::to_string(n);
}

int cmd_sweep(const std::string& dataset, PipelineOverrides& o, BackendOptions& b, const SweepOptions& s,
              std::ostream& out) {
  const auto vals = parse_int_list(s.val_iters);
  const auto anas = parse_int_list(s.ana_iters);
  const auto ns = parse_int_list(s.n);
  auto base = resolve_config(o, b);
  auto ds = load_dataset(dataset);
  const fs::path root = base.pipeline.workdir / "sweep";
  auto catalog = make_catalog(base);

  struct Cell {
    int v, a, n;
    MetricsReport report;
  };
  std::vector<Cell> cells;
  for (int n : ns) {
    for (int v : vals) {
      for (int a : anas) cells.push_back({v, a, n, {}});
    }
  }
  // Fail on environment problems before any cell starts.
  make_backend(base, b, false);

  auto run_cell = [&](Cell& cell) {
    auto rc = base;
    rc.pipeline.max_iter_val = cell.v;
    rc.pipeline.max_iter_ana = cell.a;
    rc.pipeline.n_tests = cell.n;
    rc.pipeline.workdir = root / cell_name(cell.v, cell.a, cell.n);
    rc.pipeline.validate();
    auto backend = make_backend(rc, b, false);
    auto oracle = make_oracle(rc, ds, rc.pipeline.workdir);
    cell.report = run_benchmark(ds.samples, rc.pipeline, *backend, *oracle, catalog, &g_stop).report;
    write_report(cell.report, rc.pipeline.workdir);
  };
  if (s.parallel_cells) {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      threads.emplace_back([&, i] {
        try {
          run_cell(cells[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (auto& cell : cells) run_cell(cell);
  }

  nlohmann::json matrix = {{"val_iters", vals}, {"ana_iters", anas}, {"n", ns}, {"cells", nlohmann::json::array()}};
  std::vector<std::pair<std::string, nlohmann::json>> rows;
  bool failures = false;
  for (const auto& cell : cells) {
    auto j = to_json(cell.report);
    matrix["cells"].push_back({{"max_iter_val", cell.v},
                               {"max_iter_ana", cell.a},
                               {"n_tests", cell.n},
                               {"report", cell_name(cell.v, cell.a, cell.n) + "/report.json"},
                               {"metrics", j["metrics"]},
                               {"terminal_states", j["terminal_states"]}});
    rows.emplace_back(cell_name(cell.v, cell.a, cell.n), j);
    failures = failures || has_failures(cell.report);
  }
  std::ostringstream md;
  md << "# Sweep\n\n" << render_markdown_table(rows);
  for (int n : ns) {
    md << "\n## DDR (%), N = " << n << "\n\n| max_iter_val \\ max_iter_ana |";
    for (int a : anas) md << " " << a << " |";
    md << "\n|---|";
    for (std::size_t i = 0; i < anas.size(); ++i) md << "---|";
    md << "\n";
    for (int v : vals) {
      md << "| " << v << " |";
      for (int a : anas) {
        for (const auto& cell : cells) {
          if (cell.v == v && cell.a == a && cell.n == n) {
            char buf[32];
            std::snprintf(buf, sizeof buf, " %.2f |", cell.report.ddr);
            md << buf;
          }
        }
      }
      md << "\n";
    }
  }
  fs::create_directories(root);
  std::ofstream(root / "matrix.json", std::ios::binary | std::ios::trunc) << matrix.dump(2) << "\n";
  std::ofstream(root / "matrix.md", std::ios::binary | std::ios::trunc) << md.str();
  out << md.str();
  return failures ? kFailures : kOk;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageProblem("bad integer list '" + spec + "'");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
    } else {
      int lo = to_int(item.substr(0, dots));
      int hi = to_int(item.substr(dots + 2));
      if (hi < lo) throw UsageProblem("empty range '" + item + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  if (out.empty()) throw UsageProblem("empty integer list");
  return out;
}

void install_interrupt_handler() { std::signal(SIGINT, on_sigint); }

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intention-driven unit test generation and evaluation"};
  app.require_subcommand(1);

  PipelineOverrides overrides;
  BackendOptions backend;
  std::string dataset;

  auto* run = app.add_subcommand("run", "run the pipeline on a dataset and write report.json/report.md");
  run->add_option("--dataset", dataset, "dataset directory")->required()->check(CLI::ExistingDirectory);
  add_pipeline_options(run, overrides, backend);
  run->add_option("--record", backend.record, "record every exchange to a transcript");
  run->add_option("--max-iter-val", overrides.max_iter_val, "repair attempts per validation");
  run->add_option("--max-iter-ana", overrides.max_iter_ana, "analyzer rounds");
  run->add_option("--n-tests", overrides.n_tests, "tests kept from each reply");

  auto* validate = app.add_subcommand("validate-dataset", "check dataset schema and description protocol");
  validate->add_option("dataset", dataset, "dataset directory")->required()->check(CLI::ExistingDirectory);

  auto* stats = app.add_subcommand("stats", "token statistics of a dataset");
  stats->add_option("dataset", dataset, "dataset directory")->required()->check(CLI::ExistingDirectory);

  SweepOptions sweep_options;
  auto* sweep = app.add_subcommand("sweep", "run the pipeline over a grid of iteration caps and test counts");
  sweep->add_option("--dataset", dataset, "dataset directory")->required()->check(CLI::ExistingDirectory);
  add_pipeline_options(sweep, overrides, backend);
  sweep->add_option("--val-iters", sweep_options.val_iters, "max_iter_val values, e.g. 3,5,7,9");
  sweep->add_option("--ana-iters", sweep_options.ana_iters, "max_iter_ana values, e.g. 3,5,7,9");
  sweep->add_option("--n", sweep_options.n, "test counts, e.g. 5..10");
  sweep->add_flag("--parallel-cells", sweep_options.parallel_cells, "run grid cells concurrently");

  std::string doctor_config;
  auto* doctor = app.add_subcommand("doctor", "check the external Java toolchain");
  doctor->add_option("--config", doctor_config, "configuration file")->check(CLI::ExistingFile);

  std::string report_in, report_out;
  auto* report = app.add_subcommand("report", "tabulate every report.json under a directory");
  report->add_option("--in", report_in, "directory to scan")->required()->check(CLI::ExistingDirectory);
  report->add_option("--out", report_out, "markdown output file (stdout if omitted)");

  ImportOptions import_options;
  std::string nld_dir;
  auto* import = app.add_subcommand("import", "build a dataset from buggy/fixed Java file pairs");
  import->add_option("--buggy-dir", import_options.buggy_dir)->required()->check(CLI::ExistingDirectory);
  import->add_option("--fixed-dir", import_options.fixed_dir)->required()->check(CLI::ExistingDirectory);
  import->add_option("--nld-dir", nld_dir, "descriptions as <name>.txt")->check(CLI::ExistingDirectory);
  import->add_option("--out", import_options.out_dir)->required();
  import->add_option("--project", import_options.project, "project label")->required();
  import->add_option("--name", import_options.dataset_name, "dataset name");

  std::vector<const char*> argv{"intentest"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(dataset, overrides, backend, out);
    if (*validate) return cmd_validate(dataset, out);
    if (*stats) return cmd_stats(dataset, out);
    if (*sweep) return cmd_sweep(dataset, overrides, backend, sweep_options, out);
    if (*doctor) return cmd_doctor(doctor_config, out);
    if (*report) return cmd_report(report_in, report_out, out);
    if (*import) {
      if (!nld_dir.empty()) import_options.nld_dir = nld_dir;
      return cmd_import(import_options, out);
    }
  } catch (const UsageProblem& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const EnvironmentProblem& e) {
    err << "error: " << e.what() << "\n";
    return kEnvironment;
  } catch (const ToolchainMissing& e) {
    err << "error: " << e.what() << "\n";
    return kEnvironment;
  } catch (const BackendUnavailable& e) {
    err << "error: " << e.what() << "\n";
    return kEnvironment;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailures;
  }
  return kUsage;
}

}  // namespace intentest::cli
