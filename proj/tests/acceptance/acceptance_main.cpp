// Acceptance suite: one criterion per function, one pass/fail line each.
// Every tolerance is pinned in the checks themselves.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "depuse/classfile.hpp"
#include "depuse/manifest.hpp"
#include "depuse/metrics.hpp"
#include "depuse/repo.hpp"
#include "depuse/resolver.hpp"
#include "depuse/usage.hpp"
#include "support/classfile_writer.hpp"
#include "support/fixture_repo.hpp"
#include "support/pom_writer.hpp"
#include "support/pool_dump.hpp"
#include "support/process.hpp"
#include "support/random_repo.hpp"
#include "support/spearman_oracle.hpp"
#include "support/temp_dir.hpp"
#include "support/usage_oracle.hpp"

using namespace depuse;

namespace {

struct check_failure {
  std::string message;
};

void expect(bool condition, const std::string& message) {
  if (!condition) throw check_failure{message};
}

struct analyzed_fixture {
  support::temp_dir dir;
  std::unique_ptr<repository> repo;
  artifact_bundle project;
  resolved_tree tree;
  analysis_context ctx;

  explicit analyzed_fixture(const support::fixture& fx) {
    support::write_fixture_repo(dir.path(), fx);
    repo = std::make_unique<repository>(dir.path());
    project = repo->bundle_for(fx.root);
    tree = resolve_tree(project.mf, *repo, {dep_scope::compile});
    ctx = build_analysis_context(project, tree, *repo);
  }
};

std::map<std::string, std::string> labels_by_ga(const usage_report& report) {
  std::map<std::string, std::string> out;
  for (const dependency_usage& usage : report.usages) {
    out[usage.dep_ga.str()] = encode_label(usage.label);
  }
  return out;
}

// ---------------------------------------------------------------- criterion 1
void jxls_labeling_exactness() {
  analyzed_fixture fx(support::jxls_fixture());
  usage_report report = debloat(fx.project, *fx.repo, {});
  std::map<std::string, std::string> expected = {
      {"org.apache.poi:poi", "ud"},
      {"org.jxls:jxls", "ud"},
      {"org.slf4j:jcl-over-slf4j", "ui"},
      {"commons-beanutils:commons-beanutils", "ut"},
      {"ch.qos.logback:logback-core", "ut"},
      {"org.apache.commons:commons-collections4", "ut"},
      {"org.apache.commons:commons-jexl", "bd"},
      {"org.slf4j:slf4j-api", "bi"},
      {"commons-logging:commons-logging", "bt"},
      {"commons-collections:commons-collections", "bt"},
      {"commons-codec:commons-codec", "bt"},
      {"org.apache.commons:commons-jexl3", "bt"},
  };
  std::map<std::string, std::string> actual = labels_by_ga(report);
  expect(actual == expected, "labeling differs from the expected contingency table");
  expect(report.counts == std::map<std::string, int>{{"ud", 2},
                                                     {"ui", 1},
                                                     {"ut", 3},
                                                     {"bd", 1},
                                                     {"bi", 1},
                                                     {"bt", 4}},
         "label counts differ");
}

// ---------------------------------------------------------------- criterion 2
void mediation_exactness() {
  analyzed_fixture fx(support::jxls_fixture());
  bool found = false;
  for (const resolved_node* node : non_omitted_nodes(fx.tree)) {
    if (node->coord.ga() == ga{"org.slf4j", "slf4j-api"}) {
      found = true;
      expect(node->coord.version == "1.7.12",
             "slf4j-api resolved to " + node->coord.version + " instead of 1.7.12");
    }
  }
  expect(found, "slf4j-api missing from the resolved tree");
}

// ---------------------------------------------------------------- criterion 3
void propagation_oracle_equivalence() {
  int repos = 0;
  for (unsigned seed = 1; seed <= 200; ++seed) {
    std::mt19937 rng(seed);
    analyzed_fixture fx(support::make_random_repo(rng));
    std::set<coordinate> used = used_dependencies(fx.project, fx.tree, fx.ctx);
    std::set<coordinate> expected = support::used_dependencies_oracle(
        fx.project, fx.tree,
        [&](const coordinate& c) -> const artifact_bundle& { return fx.repo->bundle_for(c); });
    expect(used == expected,
           "used-dependency set diverges from the path-chain oracle at seed " +
               std::to_string(seed));
    ++repos;
  }
  expect(repos == 200, "expected 200 generated repositories");
}

// ---------------------------------------------------------------- criterion 4
void closure_soundness_one(const support::fixture& fx, const std::string& tag) {
  analyzed_fixture original(fx);
  usage_report report = debloat(original.project, *original.repo, {});
  std::vector<debloat_action> actions = applicable_actions(report, original.project.mf);

  std::string rewritten = write_debloated_manifest(fx.root_pom, original.project.mf, actions);
  artifact_bundle after = original.project;
  after.mf = parse_manifest(rewritten);
  resolved_tree tree2 = resolve_tree(after.mf, *original.repo, {dep_scope::compile});
  analysis_context ctx2 = build_analysis_context(after, tree2, *original.repo);
  usage_propagation propagation2 = propagate_usage(after, tree2, ctx2);

  std::set<std::string> closure;
  for (const class_summary& cls : after.classes) closure.insert(cls.name);
  for (const auto& [coord, part] : propagation2.parts) {
    if (propagation2.used.contains(coord)) {
      closure.insert(part.classes.begin(), part.classes.end());
    }
  }

  for (const std::string& name : closure) {
    auto it = ctx2.summaries.find(name);
    expect(it != ctx2.summaries.end(), tag + ": closure class " + name + " has no summary");
    auto covered = [&](const std::string& target) {
      if (is_platform_class(target)) return;
      if (!original.ctx.index.mapping.contains(target)) return;  // never resolvable
      expect(ctx2.index.mapping.contains(target),
             tag + ": reference " + name + " -> " + target + " dangles after debloating");
    };
    for (const member_ref& ref : it->second->refs) {
      if (ref.kind != ref_kind::string_literal) covered(ref.owner);
    }
    for (const std::string& candidate : it->second->string_class_candidates) covered(candidate);
  }
}

void closure_soundness() {
  closure_soundness_one(support::jxls_fixture(), "jxls");
  closure_soundness_one(support::undertow_fixture(), "undertow");
  for (unsigned seed = 1; seed <= 200; ++seed) {
    std::mt19937 rng(seed);
    closure_soundness_one(support::make_random_repo(rng), "seed " + std::to_string(seed));
  }
}

// ---------------------------------------------------------------- criterion 5
void classfile_oracle() {
  using support::class_file_builder;
  std::vector<class_file_builder> fixtures;

  class_file_builder plain("acc.Plain");
  plain.method("<init>", "()V");
  fixtures.push_back(plain);

  class_file_builder child("acc.Child");
  child.super("lib.Base");
  fixtures.push_back(child);

  class_file_builder impl("acc.Impl");
  impl.implements("lib.IfaceA");
  impl.implements("lib.IfaceB");
  fixtures.push_back(impl);

  class_file_builder annotated("acc.Annotated");
  annotated.annotate({"Llib/anno/Marker;", {}});
  annotated.annotate({"Llib/anno/Complex;",
                      {{"mode", {'e', "Llib/anno/Mode;", "ON", {}}},
                       {"target", {'c', "Llib/anno/Target;", "", {}}}}},
                     false);
  fixtures.push_back(annotated);

  class_file_builder fields("acc.Fields");
  fields.field("single", "Llib/data/Row;");
  fields.field("grid", "[[Llib/data/Cell;");
  fields.ref_field("lib.data.Holder", "value", "J");
  fixtures.push_back(fields);

  class_file_builder methods("acc.Methods");
  methods.method("run", "(Llib/call/Arg;)Llib/call/Out;");
  methods.ref_method("lib.call.Service", "invoke", "(I)V");
  methods.ref_interface_method("lib.call.Iface", "apply", "()V");
  fixtures.push_back(methods);

  class_file_builder literals("acc.Literals");
  literals.string_literal("lib.reflect.Loaded");
  literals.string_literal("not a class name");
  fixtures.push_back(literals);

  class_file_builder arrays("acc.Arrays");
  arrays.ref_array("[Llib/arr/Elem;");
  arrays.ref_array("[[J");
  arrays.ref_method("[Llib.arr.Owner;", "clone", "()Ljava/lang/Object;");
  fixtures.push_back(arrays);

  class_file_builder generic("acc.Generic");
  generic.class_signature("Ljava/lang/Object;Ljava/util/List<Llib/gen/Elem;>;");
  fixtures.push_back(generic);

  class_file_builder constants("acc.Constants");
  constants.long_constant(1234567890123LL);
  constants.double_constant(2.75);
  constants.ref_class("lib.after.TwoSlot");
  fixtures.push_back(constants);

  class_file_builder indy("acc.Indy");
  indy.method_handle("lib.boot.Strap", "factory", "()V");
  indy.method_type("(Llib/boot/Param;)V");
  indy.invoke_dynamic("lambda", "(Llib/boot/Lambda;)V");
  fixtures.push_back(indy);

  class_file_builder mixed("acc.Mixed");
  mixed.super("lib.Base");
  mixed.implements("lib.IfaceA");
  mixed.field("rows", "[Llib/data/Row;");
  mixed.ref_method("lib.call.Service", "invoke", "(I)V");
  mixed.string_literal("lib.reflect.Loaded");
  mixed.annotate({"Llib/anno/Marker;", {}});
  fixtures.push_back(mixed);

  expect(fixtures.size() >= 10, "need at least ten fixture classes");

  for (const class_file_builder& builder : fixtures) {
    std::string bytes = builder.build();
    class_summary summary = parse_class(bytes);
    std::set<std::string> extracted;
    for (const member_ref& ref : summary.refs) {
      if (ref.kind != ref_kind::string_literal) extracted.insert(ref.owner);
    }
    std::set<std::string> oracle = support::referenced_classes(bytes);
    expect(extracted == oracle,
           "referenced-class set for " + summary.name + " differs from the disassembler oracle");
  }

  class_summary literal_summary = parse_class(literals.build());
  expect(literal_summary.string_class_candidates == std::set<std::string>{"lib.reflect.Loaded"},
         "string-literal candidates differ");
}

// ---------------------------------------------------------------- criterion 6
void manifest_round_trip_and_idempotence() {
  for (const support::fixture& fx : {support::jxls_fixture(), support::undertow_fixture()}) {
    for (const support::fixture_artifact& artifact : fx.artifacts) {
      manifest m = parse_manifest(artifact.pom);
      expect(parse_manifest(write_debloated_manifest(artifact.pom, m, {})) == m,
             "round trip differs for " + artifact.coord.str());
    }
  }

  std::mt19937 rng(404);
  int sequences = 0;
  while (sequences < 100) {
    support::fixture fx = support::make_random_repo(rng);
    manifest m = parse_manifest(fx.root_pom);
    if (m.dependencies.empty()) continue;

    std::uniform_int_distribution<> dep_pick(0, static_cast<int>(m.dependencies.size()) - 1);
    std::uniform_int_distribution<> length(1, 6);
    std::vector<debloat_action> sequence;
    int n = length(rng);
    for (int i = 0; i < n; ++i) {
      const dependency_decl& via = m.dependencies[dep_pick(rng)];
      if (rng() % 2 == 0) {
        sequence.push_back({debloat_action::action_kind::remove_direct, via.ga, {}});
      } else {
        ga target{"excl.g" + std::to_string(rng() % 5), "t" + std::to_string(rng() % 5)};
        sequence.push_back({debloat_action::action_kind::add_exclusion, target, via.ga});
      }
    }
    std::vector<debloat_action> doubled;
    for (const debloat_action& action : sequence) {
      doubled.push_back(action);
      doubled.push_back(action);
    }
    manifest once = parse_manifest(write_debloated_manifest(fx.root_pom, m, sequence));
    manifest twice = parse_manifest(write_debloated_manifest(fx.root_pom, m, doubled));
    expect(once == twice, "duplicated action sequence changed the result");
    ++sequences;
  }
}

// ---------------------------------------------------------------- criterion 7
void spearman_correctness() {
  std::mt19937 rng(777);
  std::uniform_int_distribution<> length(2, 10);
  std::uniform_int_distribution<> value(0, 4);  // ties are frequent
  int checked = 0;
  while (checked < 1000) {
    int n = length(rng);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = value(rng);
      y[i] = value(rng);
    }
    auto flat = [](const std::vector<double>& v) {
      for (double e : v) {
        if (e != v[0]) return false;
      }
      return true;
    };
    if (flat(x) || flat(y)) continue;
    double actual = spearman_rho(x, y);
    double expected = support::brute_force_spearman(x, y);
    expect(std::abs(actual - expected) <= 1e-12,
           "rho " + std::to_string(actual) + " vs oracle " + std::to_string(expected));
    expect(std::abs(actual) <= 1.0 + 1e-12, "|rho| exceeded 1");
    ++checked;
  }
  expect(std::abs(spearman_rho({1, 2, 3, 4}, {2, 4, 6, 8}) - 1.0) <= 1e-12,
         "monotone increasing input must give +1");
  expect(std::abs(spearman_rho({1, 2, 3, 4}, {9, 7, 5, 3}) + 1.0) <= 1e-12,
         "monotone decreasing input must give -1");
}

// ---------------------------------------------------------------- criterion 8
void removal_impact() {
  support::fixture fx = support::undertow_fixture();
  analyzed_fixture analyzed(fx);
  usage_report report = debloat(analyzed.project, *analyzed.repo, {});

  std::vector<debloat_action> removals;
  for (const debloat_action& action : report.actions) {
    if (action.kind == debloat_action::action_kind::remove_direct) removals.push_back(action);
  }
  expect(removals.size() == 6,
         "expected 6 remove-direct actions, got " + std::to_string(removals.size()));

  std::size_t before = non_omitted_nodes(analyzed.tree).size();
  manifest after =
      parse_manifest(write_debloated_manifest(fx.root_pom, analyzed.project.mf, removals));
  std::size_t remaining =
      non_omitted_nodes(resolve_tree(after, *analyzed.repo, {dep_scope::compile})).size();
  expect(before - remaining == 17,
         "removal dropped " + std::to_string(before - remaining) + " nodes, expected 17");
}

// ---------------------------------------------------------------- criterion 9
void cli_contract() {
  support::fixture fx = support::jxls_fixture();
  support::temp_dir dir;
  support::write_fixture_repo(dir.path() / "repo", fx);
  std::ofstream(dir.path() / "project.pom", std::ios::binary) << fx.root_pom;

  auto run = [&](const std::string& args) {
    return support::run_command(std::string("'") + DEPUSE_CLI_PATH + "' " + args, dir.path());
  };

  expect(run("analyze project.pom --repo repo").exit_code == 0, "clean analyze must exit 0");
  expect(run("analyze project.pom --repo repo --fail-on-bloat").exit_code == 1,
         "--fail-on-bloat with bloat must exit 1");
  std::string ignore_all =
      "org.apache.commons:commons-jexl,org.slf4j:slf4j-api,commons-logging:commons-logging,"
      "commons-collections:commons-collections,commons-codec:commons-codec,"
      "org.apache.commons:commons-jexl3";
  expect(run("analyze project.pom --repo repo --fail-on-bloat --ignore " + ignore_all)
                 .exit_code == 0,
         "ignore list covering all bloat must exit 0 under --fail-on-bloat");
  expect(run("analyze missing.pom --repo repo").exit_code == 2, "input errors must exit 2");
  expect(run("analyze").exit_code == 2, "usage errors must exit 2");
}

}  // namespace

int main() {
  struct criterion {
    const char* name;
    std::function<void()> run;
  };
  const std::vector<criterion> criteria = {
      {"1 jxls fixture labeling matches the contingency table exactly", jxls_labeling_exactness},
      {"2 nearest-wins mediation picks slf4j-api 1.7.12", mediation_exactness},
      {"3 used-dependency propagation matches the path-chain oracle on 200 repos",
       propagation_oracle_equivalence},
      {"4 debloat actions keep the used-class closure resolvable", closure_soundness},
      {"5 class-file parser agrees with the disassembler oracle", classfile_oracle},
      {"6 manifest round-trip identity and action idempotence", manifest_round_trip_and_idempotence},
      {"7 spearman matches a brute-force oracle to 1e-12 on 1000 vectors", spearman_correctness},
      {"8 six bloated-direct removals drop 17 tree nodes", removal_impact},
      {"9 CLI exit codes: 0 clean, 1 bloated under --fail-on-bloat, 2 usage errors",
       cli_contract},
  };

  int failures = 0;
  for (const criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    try {
      c.run();
      double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::printf("[PASS] criterion %s (%.2fs)\n", c.name, seconds);
    } catch (const check_failure& failure) {
      ++failures;
      std::printf("[FAIL] criterion %s: %s\n", c.name, failure.message.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] criterion %s: unexpected error: %s\n", c.name, e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
