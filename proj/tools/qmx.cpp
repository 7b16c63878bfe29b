#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "qmx/report.hpp"
#include "qmx/runner.hpp"
#include "qmx/scenario.hpp"
#include "qmx/version.hpp"

namespace {

// A scenario argument is either a path or the name of a shipped scenario.
qmx::Scenario resolve_scenario(const std::string& arg) {
  if (const char* text = qmx::builtin_scenario_text(arg)) return qmx::scenario_from_text(text, arg);
  return qmx::load_scenario(arg);
}

int exit_code_for(const qmx::Error& e) {
  switch (e.code()) {
    case qmx::Errc::parse_error:
    case qmx::Errc::schema_error:
    case qmx::Errc::io_error:
      return 2;
    case qmx::Errc::budget_exceeded:
      return 4;
    default:
      return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasimorphism extension workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("qmx ") + qmx::version_string);

  std::string scenario_arg;
  std::string out_dir = "qmx-out";
  std::string format = "json";
  std::optional<std::uint64_t> seed_override;

  CLI::App* run = app.add_subcommand("run", "execute a scenario and write its report");
  run->add_option("scenario", scenario_arg, "scenario file or shipped scenario name")->required();
  run->add_option("--out", out_dir, "output directory (default qmx-out)");
  run->add_option("--format", format, "json | csv (csv adds per-task tables)")
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--seed", seed_override, "override the scenario seed");

  CLI::App* validate = app.add_subcommand("validate", "parse and schema-check a scenario");
  validate->add_option("scenario", scenario_arg, "scenario file or shipped scenario name")->required();

  CLI::App* scenarios = app.add_subcommand("scenarios", "shipped scenario operations");
  CLI::App* list = scenarios->add_subcommand("list", "list shipped scenarios");
  scenarios->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const qmx::BuiltinScenario& b : qmx::builtin_scenarios()) std::printf("%s\n", b.name);
      return 0;
    }
    if (validate->parsed()) {
      qmx::Scenario sc = resolve_scenario(scenario_arg);
      std::printf("ok: %zu task(s), seed %llu\n", sc.tasks.size(),
                  static_cast<unsigned long long>(sc.seed));
      return 0;
    }
    qmx::Scenario sc = resolve_scenario(scenario_arg);
    if (seed_override) {
      sc.seed = *seed_override;
      sc.echo["seed"] = *seed_override;  // the report echoes what actually ran
    }
    qmx::RunResult rr = qmx::run_scenario(sc);
    qmx::emit(rr.report, format, out_dir);
    for (const auto& [name, ms] : rr.timings_ms) std::fprintf(stderr, "task %s: %.1f ms\n", name.c_str(), ms);
    for (const qmx::TaskResult& t : rr.report.tasks)
      if (t.status != "ok") std::fprintf(stderr, "task %s failed: %s\n", t.name.c_str(), t.error.c_str());
    return rr.exit_code;
  } catch (const qmx::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
}
