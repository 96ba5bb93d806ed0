#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace svis::instrumentation {

// One tolerance-relation construction. `purpose` is "column" for partition
// columns of a full universe, "image" for representative-scale rebuilds,
// "adhoc" for direct calls.
struct RelationBuild {
    std::string attribute;
    std::size_t universe_size;
    std::string purpose;
};

// Recording is off by default; tests switch it on around incremental updates
// to check that old partition columns are never rebuilt.
void enable(bool on);
bool enabled();
void reset();
void record_relation_build(std::string attribute, std::size_t universe_size,
                           std::string purpose);
std::vector<RelationBuild> relation_builds();

}  // namespace svis::instrumentation
