#include "svis/instrumentation.hpp"

#include <mutex>

namespace svis::instrumentation {

namespace {
std::mutex mu;
bool on = false;
std::vector<RelationBuild> builds;
}  // namespace

void enable(bool value) {
    std::lock_guard lock(mu);
    on = value;
}

bool enabled() {
    std::lock_guard lock(mu);
    return on;
}

void reset() {
    std::lock_guard lock(mu);
    builds.clear();
}

void record_relation_build(std::string attribute, std::size_t universe_size,
                           std::string purpose) {
    std::lock_guard lock(mu);
    if (!on) return;
    builds.push_back({std::move(attribute), universe_size, std::move(purpose)});
}

std::vector<RelationBuild> relation_builds() {
    std::lock_guard lock(mu);
    return builds;
}

}  // namespace svis::instrumentation
