#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "depuse/metrics.hpp"
#include "depuse/model.hpp"
#include "depuse/report_io.hpp"
#include "depuse/repo.hpp"
#include "depuse/usage.hpp"
#include "depuse/zip.hpp"

namespace {

namespace fs = std::filesystem;

std::string read_file_or_die(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw depuse::error(depuse::errc::artifact_not_found, "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw depuse::error(depuse::errc::usage, "cannot write " + path.string());
  }
  out << bytes;
}

struct cli_options {
  std::string pom_path;
  std::string repo_path;
  std::string scopes = "compile";
  std::string ignore;
  std::string format = "text";
  std::string out_path;
  bool fail_on_bloat = false;
};

depuse::analysis_config make_config(const cli_options& opts) {
  depuse::analysis_config cfg;
  cfg.scopes.clear();
  std::istringstream scopes(opts.scopes);
  for (std::string token; std::getline(scopes, token, ',');) {
    auto scope = depuse::scope_from_string(token);
    if (!scope) {
      throw depuse::error(depuse::errc::usage, "unknown scope '" + token + "'");
    }
    cfg.scopes.insert(*scope);
  }
  if (cfg.scopes.empty()) {
    throw depuse::error(depuse::errc::usage, "--scopes must name at least one scope");
  }
  std::istringstream ignore(opts.ignore);
  for (std::string token; std::getline(ignore, token, ',');) {
    if (!token.empty()) cfg.ignore.insert(depuse::parse_ga(token));
  }
  return cfg;
}

depuse::artifact_bundle load_project(const std::string& pom_bytes, depuse::repository& repo) {
  depuse::artifact_bundle project;
  project.mf = depuse::parse_manifest(pom_bytes);
  project.coord = project.mf.coord;
  if (project.mf.packaging != "pom") {
    auto jar_path = repo.root() / depuse::artifact_path(project.coord, ".jar");
    depuse::archive_scan scan = depuse::scan_archive(depuse::read_zip(read_file_or_die(jar_path)));
    project.classes = std::move(scan.classes);
    project.warnings = std::move(scan.warnings);
  }
  return project;
}

void emit_report(const depuse::usage_report& report, const cli_options& opts,
                 bool out_is_report) {
  std::string rendered = opts.format == "machine" ? depuse::report_to_json(report)
                                                  : depuse::report_to_text(report);
  if (out_is_report && !opts.out_path.empty()) {
    write_file(opts.out_path, rendered);
  } else {
    std::cout << rendered;
  }
}

int bloat_exit_code(const depuse::usage_report& report, bool fail_on_bloat) {
  if (!fail_on_bloat) return 0;
  int bloated = 0;
  for (const char* label : {"bd", "bi", "bt"}) {
    if (auto it = report.counts.find(label); it != report.counts.end()) bloated += it->second;
  }
  return bloated > 0 ? 1 : 0;
}

int run_analyze(const cli_options& opts) {
  depuse::repository repo(opts.repo_path);
  std::string pom_bytes = read_file_or_die(opts.pom_path);
  depuse::artifact_bundle project = load_project(pom_bytes, repo);
  depuse::usage_report report = depuse::debloat(project, repo, make_config(opts));
  emit_report(report, opts, /*out_is_report=*/true);
  return bloat_exit_code(report, opts.fail_on_bloat);
}

int run_debloat(const cli_options& opts) {
  depuse::repository repo(opts.repo_path);
  std::string pom_bytes = read_file_or_die(opts.pom_path);
  depuse::artifact_bundle project = load_project(pom_bytes, repo);
  depuse::usage_report report = depuse::debloat(project, repo, make_config(opts));
  std::string debloated = depuse::write_debloated_manifest(
      pom_bytes, project.mf, depuse::applicable_actions(report, project.mf));
  write_file(opts.out_path, debloated);
  emit_report(report, opts, /*out_is_report=*/false);
  return bloat_exit_code(report, opts.fail_on_bloat);
}

int run_metrics(const std::string& reports_dir, const std::string& out_csv) {
  std::vector<depuse::usage_report> reports;
  if (!fs::is_directory(reports_dir)) {
    throw depuse::error(depuse::errc::usage, reports_dir + " is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(reports_dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    reports.push_back(depuse::report_from_json(read_file_or_die(file)));
  }

  depuse::corpus_stats stats = depuse::aggregate(reports);
  if (!out_csv.empty()) write_file(out_csv, depuse::stats_csv(stats));

  std::cout << "aggregated " << reports.size() << " reports\n";
  std::cout << "label distribution:\n";
  for (const auto& [label, n] : stats.global_counts) {
    std::cout << "  " << label << ": " << n << " (" << stats.global_ratios.at(label) * 100.0
              << "%)\n";
  }
  std::cout << "tree height vs bloated-transitive ratio:\n";
  for (const auto& bucket : depuse::height_vs_bloat(stats)) {
    if (bucket.artifact_count == 0) continue;
    std::cout << "  height " << bucket.label << ": " << bucket.artifact_count << " artifacts";
    if (bucket.sample_count > 0) {
      std::cout << ", bt ratio min/q1/median/q3/max = " << bucket.min << "/" << bucket.q1 << "/"
                << bucket.median << "/" << bucket.q3 << "/" << bucket.max;
    }
    std::cout << "\n";
  }

  std::vector<double> transitive, bloat;
  for (const auto& row : stats.per_artifact) {
    if (row.total == 0) continue;
    transitive.push_back(row.transitive_ratio);
    bloat.push_back(row.bloat_ratio);
  }
  std::string rho;
  try {
    rho = std::to_string(depuse::spearman_rho(transitive, bloat));
  } catch (const depuse::error&) {
    rho = "undefined";
  }
  std::cout << "spearman rho (transitive ratio vs bloat ratio): " << rho << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"detects and removes bloated dependencies in JVM build manifests"};
  app.require_subcommand(1);

  cli_options opts;

  CLI::App* analyze = app.add_subcommand("analyze", "label every dependency used or bloated");
  analyze->add_option("pom", opts.pom_path, "project manifest")->required();
  analyze->add_option("--repo", opts.repo_path, "local repository root")->required();
  analyze->add_option("--scopes", opts.scopes, "comma-separated scopes (default compile)");
  analyze->add_option("--ignore", opts.ignore, "comma-separated G:A list forced to used");
  analyze->add_option("--format", opts.format, "text or machine")
      ->check(CLI::IsMember({"text", "machine"}));
  analyze->add_option("--out", opts.out_path, "write the report here instead of stdout");
  analyze->add_flag("--fail-on-bloat", opts.fail_on_bloat, "exit 1 when bloat is found");

  CLI::App* debloat = app.add_subcommand("debloat", "analyze and write a debloated manifest");
  debloat->add_option("pom", opts.pom_path, "project manifest")->required();
  debloat->add_option("--repo", opts.repo_path, "local repository root")->required();
  debloat->add_option("--out", opts.out_path, "debloated manifest destination")->required();
  debloat->add_option("--scopes", opts.scopes, "comma-separated scopes (default compile)");
  debloat->add_option("--ignore", opts.ignore, "comma-separated G:A list forced to used");
  debloat->add_option("--format", opts.format, "text or machine")
      ->check(CLI::IsMember({"text", "machine"}));
  debloat->add_flag("--fail-on-bloat", opts.fail_on_bloat, "exit 1 when bloat is found");

  std::string reports_dir, metrics_csv;
  CLI::App* metrics = app.add_subcommand("metrics", "aggregate machine reports into corpus stats");
  metrics->add_option("reports", reports_dir, "directory of machine-format reports")->required();
  metrics->add_option("--out", metrics_csv, "CSV destination");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (analyze->parsed()) return run_analyze(opts);
    if (debloat->parsed()) return run_debloat(opts);
    return run_metrics(reports_dir, metrics_csv);
  } catch (const depuse::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
