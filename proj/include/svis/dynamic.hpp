#pragma once

#include <optional>
#include <string>
#include <vector>

#include "svis/compress.hpp"
#include "svis/partition.hpp"
#include "svis/relation.hpp"
#include "svis/table.hpp"

namespace svis {

struct StateOptions {
    bool lax_covering = false;   // downgrade non-covering relations to warnings
    bool verify_pullback = true; // round-trip check after compression
    WarningSink warnings = {};
};

// Everything needed to maintain the compression incrementally. Two stored
// layers: per-relation partitions + joint + image for the tolerance-relation
// pipeline, and the row-identity (T_A) quotient feeding object edits.
struct CompressionState {
    SetValuedTable table;
    ThresholdVector thresholds;

    std::vector<Partition> relation_partitions;  // one per attribute
    Partition joint;
    BlockMapping mapping;
    RelationSystem image;  // members named "g(<attribute>)"

    Partition t_partition;
    BlockMapping t_mapping;
    SetValuedTable t_compressed;

    bool operator==(const CompressionState&) const = default;

    // View of the relation-layer compression for reduct transfer.
    SystemCompression system_compression() const;
};

struct Correspondence {
    std::string from;
    std::vector<std::string> to;  // empty = cancelled / vanished
};

struct UpdateReport {
    std::string operation;
    std::vector<Correspondence> image_correspondence;  // relation-layer image
    std::vector<Correspondence> t_correspondence;      // row-identity image
    std::vector<std::string> cancelled;                // dropped image rows
    std::optional<SetValuedTable> incoming_compressed; // add_objects stage
    std::optional<SetValuedTable> merged;              // add_objects stage
};

struct UpdateResult {
    CompressionState state;
    UpdateReport report;
};

// Batch construction: induced system, per-relation partitions, joint,
// verified mapping, image, and the row-identity quotient.
CompressionState make_state(const SetValuedTable& table, const ThresholdVector& h,
                            const StateOptions& options = {});

// New columns only are turned into relations and partitions; the stored
// columns are reused untouched and the joint is refined in place.
// `columns` must carry fresh attribute names and one row per state object.
UpdateResult add_attributes(const CompressionState& state,
                            const SetValuedTable& columns,
                            const ThresholdVector& new_thresholds,
                            const StateOptions& options = {});

// Drops the named partition columns and re-intersects the rest; no relation
// is rebuilt.
UpdateResult delete_attributes(const CompressionState& state,
                               const std::vector<std::string>& names,
                               const StateOptions& options = {});

// Incoming rows are quotiented standalone, merged with the stored quotient,
// and re-quotiented; the result is verified to equal the quotient of the
// full union before anything downstream is rebuilt from it.
UpdateResult add_objects(const CompressionState& state,
                         const SetValuedTable& incoming,
                         const StateOptions& options = {});

// An image row is cancelled exactly when its whole class is deleted; classes
// untouched by the deletion keep their stored rows.
UpdateResult delete_objects(const CompressionState& state,
                            const std::vector<std::string>& ids,
                            const StateOptions& options = {});

// Versioned JSON envelope; load rejects unknown versions and corrupt payloads.
std::string save_state(const CompressionState& state);
CompressionState load_state(std::string_view bytes);

struct FieldCheck {
    std::string field;
    bool equal;
    std::string detail;
};

struct BatchReport {
    bool all_equal = true;
    std::vector<FieldCheck> fields;
};

// Recomputes everything from state.table and compares field by field.
// Divergence is a report outcome, not an exception.
BatchReport verify_against_batch(const CompressionState& state);

}  // namespace svis
