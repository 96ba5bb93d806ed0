#pragma once

#include <string>

#include "json.hpp"
#include "svis/compress.hpp"
#include "svis/dynamic.hpp"
#include "svis/partition.hpp"
#include "svis/reduct.hpp"
#include "svis/relation.hpp"
#include "svis/table.hpp"

namespace svis {

// Insertion-ordered JSON keeps every dump byte-deterministic.
using Json = nlohmann::ordered_json;

// {"universe":[...],"rows":{"x1":["x1","x2"],...}} in universe order.
Json relation_to_json(const Relation& relation);
Relation relation_from_json(const Json& doc);

// Ordered list of ordered blocks: [["x1","x7"],["x2","x4"],...].
Json partition_to_json(const Partition& partition);

// {"assignment":{"x1":"y1",...},"blocks":[["x1","x7"],...]}.
Json mapping_to_json(const BlockMapping& mapping);
BlockMapping mapping_from_json(const Json& doc);

// {"universe":[...],"relations":[{"name":...,"rows":{...}},...]}.
Json system_to_json(const RelationSystem& system);
RelationSystem system_from_json(const Json& doc);

Json table_to_json(const SetValuedTable& table);
SetValuedTable table_from_json(const Json& doc, bool allow_empty_cells = false);

Json update_report_to_json(const UpdateReport& report);
Json batch_report_to_json(const BatchReport& report);

}  // namespace svis
