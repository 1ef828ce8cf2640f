#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "depuse/report_io.hpp"
#include "depuse/usage.hpp"
#include "support/fixture_repo.hpp"
#include "support/random_repo.hpp"
#include "support/temp_dir.hpp"

using namespace depuse;

namespace {

usage_report analyze_fixture(const support::fixture& fx) {
  support::temp_dir dir;
  support::write_fixture_repo(dir.path(), fx);
  repository repo(dir.path());
  artifact_bundle project = repo.bundle_for(fx.root);
  return debloat(project, repo, {});
}

}  // namespace

TEST_CASE("machine format round-trips field for field") {
  usage_report report = analyze_fixture(support::jxls_fixture());
  usage_report parsed = report_from_json(report_to_json(report));
  CHECK(parsed == report);

  std::mt19937 rng(23);
  for (int i = 0; i < 10; ++i) {
    usage_report random_report = analyze_fixture(support::make_random_repo(rng));
    CHECK(report_from_json(report_to_json(random_report)) == random_report);
  }
}

TEST_CASE("text rendering summarizes the labeling") {
  usage_report report = analyze_fixture(support::jxls_fixture());
  std::string text = report_to_text(report);
  CHECK(text.find("org.jxls:jxls-poi:1.0.15") != std::string::npos);
  CHECK(text.find("6 used, 6 bloated of 12 dependencies") != std::string::npos);
  CHECK(text.find("bloated direct (1):") != std::string::npos);
  CHECK(text.find("remove direct dependency org.apache.commons:commons-jexl") !=
        std::string::npos);
  CHECK(text.find("exclude commons-codec:commons-codec via org.apache.poi:poi") !=
        std::string::npos);
  // the bloated-inherited dependency gets a parent-manifest recommendation
  CHECK(text.find("remove org.slf4j:slf4j-api from the parent manifest") != std::string::npos);
  CHECK(text.find("tree height 3, multi-module") != std::string::npos);
}

TEST_CASE("forced usages are marked in the text report") {
  support::fixture fx = support::jxls_fixture();
  support::temp_dir dir;
  support::write_fixture_repo(dir.path(), fx);
  repository repo(dir.path());
  artifact_bundle project = repo.bundle_for(fx.root);
  analysis_config cfg;
  cfg.ignore = {ga{"org.apache.commons", "commons-jexl"}};
  usage_report report = debloat(project, repo, cfg);
  std::string text = report_to_text(report);
  CHECK(text.find("[kept by ignore list]") != std::string::npos);
  usage_report parsed = report_from_json(report_to_json(report));
  CHECK(parsed == report);
}
