#pragma once
// The verification suites: each one inspects a prepared world and emits
// checks with theorem tags, counts, and witnesses, plus the CSV dumps of
// the constructed objects.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "splash/bruckbose.hpp"
#include "splash/covers.hpp"
#include "splash/gf.hpp"
#include "splash/report.hpp"
#include "splash/subplane.hpp"

namespace splash {

/// Everything the suites read, built eagerly up to the layer the selected
/// suites need. Heap-allocated so internal pointers stay put.
struct World {
  FieldTower tower;
  std::optional<BBContext> ctx;
  std::optional<SubplaneConfig> subplane;
  std::optional<Splash> splash;
  std::optional<Cover> tangent_cover, conic_cover;

  explicit World(FieldTower t) : tower(std::move(t)) {}
  World(const World&) = delete;
  World& operator=(const World&) = delete;
};

/// All suite names in canonical report order.
const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);
/// Default selection per q; enumeration-heavy suites drop out as q grows.
std::vector<std::string> default_suites(uint16_t q);

std::unique_ptr<World> make_world(FieldTower t,
                                  const std::vector<std::string>& suites);

SuiteResult run_suite(const World& w, const std::string& name);

/// CSV text for one artifact: spread, subplane, covers, transversals,
/// quadrics, or classification. Header names q, tower token, and artifact.
std::string dump_artifact(const World& w, const std::string& artifact);
const std::vector<std::string>& artifact_names();

}  // namespace splash
