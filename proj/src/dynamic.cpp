#include "svis/dynamic.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "svis/instrumentation.hpp"

namespace svis {

SystemCompression CompressionState::system_compression() const {
    return SystemCompression{mapping, image, table.attributes()};
}

namespace {

std::vector<Row> table_rows(const SetValuedTable& table) {
    std::vector<Row> rows;
    rows.reserve(table.object_count());
    for (std::size_t i = 0; i < table.object_count(); ++i) {
        const auto cells = table.row_cells(i);
        rows.push_back(Row{table.objects()[i], {cells.begin(), cells.end()}});
    }
    return rows;
}

void check_covering(const Relation& relation, const std::string& attribute,
                    std::size_t h, const StateOptions& options) {
    if (is_covering(relation)) return;
    const auto message = "relation for '" + attribute + "' (h=" + std::to_string(h) +
                         ") is not a covering";
    if (!options.lax_covering) throw DomainError(message);
    warn(options.warnings, message);
}

// Image relations evaluated at joint-block representatives; the
// representative table is one row per image object.
RelationSystem image_from_representatives(const SetValuedTable& table,
                                          const ThresholdVector& h,
                                          const BlockMapping& mapping) {
    std::vector<Row> rows;
    rows.reserve(mapping.blocks().size());
    for (std::size_t b = 0; b < mapping.blocks().size(); ++b) {
        const auto cells = table.row_cells(mapping.representative(b));
        rows.push_back(Row{mapping.image()[b], {cells.begin(), cells.end()}});
    }
    const SetValuedTable representatives(table.attributes(), std::move(rows),
                                         table.allows_empty_cells());
    RelationSystem image(mapping.image());
    for (std::size_t i = 0; i < table.attribute_count(); ++i)
        image.add("g(" + table.attributes()[i] + ")",
                  detail::build_tolerance_ge(representatives, i, h.at(i), "image"));
    return image;
}

// Lifts a partition of the quotient universe through the class structure.
Partition pullback_partition(const Partition& quotient_partition,
                             const BlockMapping& classes,
                             const std::vector<std::string>& universe) {
    std::vector<std::vector<std::uint32_t>> blocks;
    blocks.reserve(quotient_partition.block_count());
    for (const auto& qblock : quotient_partition.blocks()) {
        std::vector<std::uint32_t> members;
        for (const auto q : qblock)
            for (const auto i : classes.blocks()[q]) members.push_back(i);
        blocks.push_back(std::move(members));
    }
    return Partition(universe, std::move(blocks));
}

struct RelationLayer {
    std::vector<Partition> partitions;
    Partition joint;
    BlockMapping mapping;
    RelationSystem image;
};

// Tolerance relations factor through row identity, so after an object edit
// the whole relation layer can be rebuilt from the stored quotient table and
// pulled back; no relation is ever built on the full universe.
RelationLayer relation_layer_from_quotient(const SetValuedTable& full_table,
                                           const ThresholdVector& h,
                                           const BlockMapping& classes,
                                           const SetValuedTable& quotient_table,
                                           const StateOptions& options) {
    RelationLayer layer;
    std::vector<Relation> quotient_relations;
    quotient_relations.reserve(quotient_table.attribute_count());
    for (std::size_t i = 0; i < quotient_table.attribute_count(); ++i) {
        auto relation =
            detail::build_tolerance_ge(quotient_table, i, h.at(i), "quotient");
        check_covering(relation, quotient_table.attributes()[i], h.at(i), options);
        layer.partitions.push_back(pullback_partition(
            partition_by_relation(relation), classes, full_table.objects()));
        quotient_relations.push_back(std::move(relation));
    }
    layer.joint = joint_partition(layer.partitions);
    layer.mapping = BlockMapping::from_partition(layer.joint);

    const auto image_count = layer.mapping.blocks().size();
    RelationSystem image(layer.mapping.image());
    for (std::size_t i = 0; i < quotient_relations.size(); ++i) {
        std::vector<Bitset> rows(image_count, Bitset(image_count));
        for (std::size_t bi = 0; bi < image_count; ++bi) {
            const auto qi = classes.image_of(layer.mapping.representative(bi));
            for (std::size_t bj = 0; bj < image_count; ++bj) {
                const auto qj = classes.image_of(layer.mapping.representative(bj));
                if (quotient_relations[i].related(qi, qj)) rows[bi].set(bj);
            }
        }
        image.add("g(" + full_table.attributes()[i] + ")",
                  Relation(layer.mapping.image(), std::move(rows)));
    }
    layer.image = std::move(image);
    return layer;
}

// old block -> the new blocks its members landed in, in old image order
std::vector<Correspondence> correspondence(const Partition& old_partition,
                                           const BlockMapping& old_mapping,
                                           const Partition& new_partition,
                                           const BlockMapping& new_mapping,
                                           const std::vector<std::uint32_t>* index_map) {
    std::vector<Correspondence> out;
    out.reserve(old_partition.block_count());
    constexpr std::uint32_t kGone = ~std::uint32_t{0};
    for (std::size_t b = 0; b < old_partition.block_count(); ++b) {
        Correspondence c{old_mapping.image()[b], {}};
        std::vector<bool> seen(new_partition.block_count(), false);
        for (const auto member : old_partition.block(b)) {
            const auto mapped = index_map ? (*index_map)[member] : member;
            if (mapped == kGone) continue;
            const auto nb = new_partition.block_of(mapped);
            if (!seen[nb]) {
                seen[nb] = true;
                c.to.push_back(new_mapping.image()[nb]);
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

// Checks that the stored quotient really is the row-identity quotient of the
// full table: every object matches its representative row and representative
// rows are pairwise distinct.
void verify_quotient(const SetValuedTable& full_table, const BlockMapping& classes,
                     const SetValuedTable& quotient_table) {
    if (quotient_table.object_count() != classes.blocks().size())
        throw DomainError("quotient verification failed: row count mismatch");
    std::unordered_set<std::string> keys;
    for (std::size_t k = 0; k < quotient_table.object_count(); ++k) {
        std::string key;
        for (const auto& cell : quotient_table.row_cells(k)) key += cell.braced();
        if (!keys.insert(std::move(key)).second)
            throw DomainError(
                "quotient verification failed: duplicate representative rows");
    }
    for (std::size_t i = 0; i < full_table.object_count(); ++i) {
        const auto k = classes.image_of(i);
        const auto mine = full_table.row_cells(i);
        const auto reps = quotient_table.row_cells(k);
        if (!std::equal(mine.begin(), mine.end(), reps.begin(), reps.end()))
            throw DomainError("quotient verification failed: object '" +
                              full_table.objects()[i] +
                              "' disagrees with its representative row");
    }
}

}  // namespace

CompressionState make_state(const SetValuedTable& table, const ThresholdVector& h,
                            const StateOptions& options) {
    if (table.attribute_count() == 0)
        throw DomainError("a compression state needs at least one attribute");
    const auto system = induced_system(table, h, options.lax_covering, options.warnings);

    CompressionState state;
    state.table = table;
    state.thresholds = h;
    state.relation_partitions.reserve(system.size());
    for (std::size_t i = 0; i < system.size(); ++i)
        state.relation_partitions.push_back(partition_by_relation(system.at(i)));
    state.joint = joint_partition(state.relation_partitions);

    auto compression = detail::compress_from_joint(system, state.joint);
    if (options.verify_pullback) {
        for (std::size_t i = 0; i < system.size(); ++i) {
            const auto restored =
                pullback_relation(compression.mapping, compression.image.at(i));
            if (!(restored == system.at(i)))
                throw DomainError("pullback of image relation '" +
                                  compression.image.name(i) +
                                  "' does not restore the original");
        }
    }
    state.mapping = std::move(compression.mapping);
    state.image = std::move(compression.image);

    auto quotient = compress_table(table);
    state.t_partition = quotient.mapping.to_partition();
    state.t_mapping = std::move(quotient.mapping);
    state.t_compressed = std::move(quotient.table);
    return state;
}

UpdateResult add_attributes(const CompressionState& state,
                            const SetValuedTable& columns,
                            const ThresholdVector& new_thresholds,
                            const StateOptions& options) {
    if (new_thresholds.size() != columns.attribute_count())
        throw DomainError("need one threshold per new attribute");
    const auto& universe = state.table.objects();
    if (columns.object_count() != universe.size())
        throw DomainError("new columns carry " + std::to_string(columns.object_count()) +
                          " rows for " + std::to_string(universe.size()) + " objects");

    std::vector<Column> aligned;
    aligned.reserve(columns.attribute_count());
    for (std::size_t j = 0; j < columns.attribute_count(); ++j)
        aligned.push_back(Column{columns.attributes()[j], {}});
    for (const auto& id : universe) {
        const auto row = columns.object_index(id);
        if (!row) throw DomainError("new columns are missing a row for '" + id + "'");
        for (std::size_t j = 0; j < columns.attribute_count(); ++j)
            aligned[j].cells.push_back(columns.cell(*row, j));
    }

    CompressionState next;
    next.table = state.table.add_columns(aligned);
    {
        auto values = state.thresholds.values();
        for (std::size_t j = 0; j < new_thresholds.size(); ++j)
            values.push_back(new_thresholds.at(j));
        next.thresholds = ThresholdVector(std::move(values));
    }

    next.relation_partitions = state.relation_partitions;
    std::vector<Partition> refinement{state.joint};
    const auto old_attribute_count = state.table.attribute_count();
    for (std::size_t j = 0; j < columns.attribute_count(); ++j) {
        auto relation = detail::build_tolerance_ge(
            next.table, old_attribute_count + j, new_thresholds.at(j), "column");
        check_covering(relation, columns.attributes()[j], new_thresholds.at(j), options);
        auto partition = partition_by_relation(relation);
        refinement.push_back(partition);
        next.relation_partitions.push_back(std::move(partition));
    }
    next.joint = joint_partition(refinement);
    next.mapping = BlockMapping::from_partition(next.joint);
    next.image = image_from_representatives(next.table, next.thresholds, next.mapping);

    if (columns.attribute_count() > 0) {
        const auto t_new =
            partition_by_equivalence(next.table, columns.attributes());
        const Partition t_parts[] = {state.t_partition, t_new};
        next.t_partition = joint_partition(t_parts);
    } else {
        next.t_partition = state.t_partition;
    }
    next.t_mapping = BlockMapping::from_partition(next.t_partition);
    {
        std::vector<Row> rows;
        rows.reserve(next.t_mapping.blocks().size());
        for (std::size_t k = 0; k < next.t_mapping.blocks().size(); ++k) {
            const auto cells = next.table.row_cells(next.t_mapping.representative(k));
            rows.push_back(Row{next.t_mapping.image()[k], {cells.begin(), cells.end()}});
        }
        next.t_compressed = SetValuedTable(next.table.attributes(), std::move(rows),
                                           next.table.allows_empty_cells());
    }

    UpdateReport report;
    report.operation = "add_attributes";
    report.image_correspondence = correspondence(state.joint, state.mapping,
                                                 next.joint, next.mapping, nullptr);
    report.t_correspondence = correspondence(state.t_partition, state.t_mapping,
                                             next.t_partition, next.t_mapping, nullptr);
    return UpdateResult{std::move(next), std::move(report)};
}

UpdateResult delete_attributes(const CompressionState& state,
                               const std::vector<std::string>& names,
                               const StateOptions& options) {
    (void)options;
    std::unordered_set<std::string> dropped;
    for (const auto& name : names) {
        state.table.require_attribute(name);
        if (!dropped.insert(name).second)
            throw DomainError("attribute '" + name + "' listed twice");
    }
    if (dropped.size() >= state.table.attribute_count())
        throw DomainError("cannot delete every attribute");

    CompressionState next;
    next.table = state.table.drop_columns(names);
    {
        std::vector<std::size_t> values;
        for (std::size_t i = 0; i < state.table.attribute_count(); ++i)
            if (!dropped.count(state.table.attributes()[i])) {
                values.push_back(state.thresholds.at(i));
                next.relation_partitions.push_back(state.relation_partitions[i]);
            }
        next.thresholds = ThresholdVector(std::move(values));
    }
    next.joint = joint_partition(next.relation_partitions);
    next.mapping = BlockMapping::from_partition(next.joint);
    next.image = image_from_representatives(next.table, next.thresholds, next.mapping);

    auto quotient = compress_table(next.table);
    next.t_partition = quotient.mapping.to_partition();
    next.t_mapping = std::move(quotient.mapping);
    next.t_compressed = std::move(quotient.table);

    UpdateReport report;
    report.operation = "delete_attributes";
    report.image_correspondence = correspondence(state.joint, state.mapping,
                                                 next.joint, next.mapping, nullptr);
    report.t_correspondence = correspondence(state.t_partition, state.t_mapping,
                                             next.t_partition, next.t_mapping, nullptr);
    return UpdateResult{std::move(next), std::move(report)};
}

UpdateResult add_objects(const CompressionState& state, const SetValuedTable& incoming,
                         const StateOptions& options) {
    if (incoming.attributes() != state.table.attributes())
        throw DomainError("incoming objects must carry the same attribute list");

    // S3 -> S5: quotient the incoming rows standalone, numbering the image
    // objects after the stored ones.
    const auto incoming_quotient =
        compress_table(incoming, state.t_compressed.object_count() + 1);
    // S6 = stored quotient + S5, then one more quotient pass for S7.
    const auto merged = state.t_compressed.append_rows(table_rows(incoming_quotient.table));
    const auto merged_quotient = compress_table(merged);

    CompressionState next;
    next.table = state.table.append_rows(table_rows(incoming));
    next.thresholds = state.thresholds;

    const auto old_object_count = state.table.object_count();
    const auto old_class_count = state.t_mapping.blocks().size();
    std::vector<std::vector<std::uint32_t>> blocks;
    blocks.reserve(merged_quotient.mapping.blocks().size());
    for (const auto& qblock : merged_quotient.mapping.blocks()) {
        std::vector<std::uint32_t> members;
        for (const auto q : qblock) {
            if (q < old_class_count) {
                for (const auto i : state.t_mapping.blocks()[q]) members.push_back(i);
            } else {
                for (const auto i : incoming_quotient.mapping.blocks()[q - old_class_count])
                    members.push_back(static_cast<std::uint32_t>(old_object_count + i));
            }
        }
        blocks.push_back(std::move(members));
    }
    next.t_partition = Partition(next.table.objects(), std::move(blocks));
    next.t_mapping = BlockMapping::from_partition(next.t_partition);
    next.t_compressed = merged_quotient.table;

    // The merged quotient is claimed to equal the quotient of the full
    // union; that claim is checked here rather than assumed.
    verify_quotient(next.table, next.t_mapping, next.t_compressed);

    const auto layer = relation_layer_from_quotient(
        next.table, next.thresholds, next.t_mapping, next.t_compressed, options);
    next.relation_partitions = layer.partitions;
    next.joint = layer.joint;
    next.mapping = layer.mapping;
    next.image = layer.image;

    UpdateReport report;
    report.operation = "add_objects";
    report.incoming_compressed = incoming_quotient.table;
    report.merged = merged;
    report.image_correspondence = correspondence(state.joint, state.mapping,
                                                 next.joint, next.mapping, nullptr);
    report.t_correspondence = correspondence(state.t_partition, state.t_mapping,
                                             next.t_partition, next.t_mapping, nullptr);
    return UpdateResult{std::move(next), std::move(report)};
}

UpdateResult delete_objects(const CompressionState& state,
                            const std::vector<std::string>& ids,
                            const StateOptions& options) {
    std::unordered_set<std::size_t> deleted;
    for (const auto& id : ids) {
        const auto idx = state.table.object_index(id);
        if (!idx) throw DomainError("unknown object id '" + id + "'");
        deleted.insert(*idx);
    }
    if (deleted.empty()) {
        UpdateReport report;
        report.operation = "delete_objects";
        report.image_correspondence = correspondence(state.joint, state.mapping,
                                                     state.joint, state.mapping, nullptr);
        report.t_correspondence = correspondence(
            state.t_partition, state.t_mapping, state.t_partition, state.t_mapping,
            nullptr);
        return UpdateResult{state, std::move(report)};
    }
    if (deleted.size() >= state.table.object_count())
        throw DomainError("cannot delete every object");

    // U3/A per the deletion procedure: quotient the deleted rows standalone,
    // then compare each class with the stored full class.
    std::vector<std::string> deleted_ids;
    for (std::size_t i = 0; i < state.table.object_count(); ++i)
        if (deleted.count(i)) deleted_ids.push_back(state.table.objects()[i]);
    std::vector<Row> deleted_rows;
    for (const auto& id : deleted_ids) {
        const auto idx = *state.table.object_index(id);
        const auto cells = state.table.row_cells(idx);
        deleted_rows.push_back(Row{id, {cells.begin(), cells.end()}});
    }
    const SetValuedTable deleted_table(state.table.attributes(), std::move(deleted_rows),
                                       state.table.allows_empty_cells());
    const auto deleted_classes =
        partition_by_equivalence(deleted_table, deleted_table.attributes());

    std::vector<std::size_t> deleted_in_class(state.t_partition.block_count(), 0);
    for (const auto& dblock : deleted_classes.blocks()) {
        const auto first_full = *state.table.object_index(
            deleted_table.objects()[dblock.front()]);
        const auto k = state.t_partition.block_of(first_full);
        for (const auto d : dblock) {
            const auto full = *state.table.object_index(deleted_table.objects()[d]);
            if (state.t_partition.block_of(full) != k)
                throw DomainError("deleted-class containment check failed");
        }
        deleted_in_class[k] = dblock.size();
    }

    // old index -> new index after row removal
    constexpr std::uint32_t kGone = ~std::uint32_t{0};
    std::vector<std::uint32_t> index_map(state.table.object_count(), kGone);
    {
        std::uint32_t next_index = 0;
        for (std::size_t i = 0; i < state.table.object_count(); ++i)
            if (!deleted.count(i)) index_map[i] = next_index++;
    }

    CompressionState next;
    next.table = state.table.remove_rows(ids);
    next.thresholds = state.thresholds;

    std::vector<std::pair<std::vector<std::uint32_t>, std::size_t>> survivors;
    std::vector<std::string> cancelled;
    for (std::size_t k = 0; k < state.t_partition.block_count(); ++k) {
        const auto& block = state.t_partition.block(k);
        if (deleted_in_class[k] == block.size()) {
            cancelled.push_back(state.t_mapping.image()[k]);
            continue;
        }
        std::vector<std::uint32_t> members;
        members.reserve(block.size() - deleted_in_class[k]);
        for (const auto i : block)
            if (index_map[i] != kGone) members.push_back(index_map[i]);
        survivors.emplace_back(std::move(members), k);
    }
    std::sort(survivors.begin(), survivors.end(),
              [](const auto& a, const auto& b) { return a.first.front() < b.first.front(); });

    std::vector<std::vector<std::uint32_t>> blocks;
    std::vector<Row> rows;
    blocks.reserve(survivors.size());
    rows.reserve(survivors.size());
    for (std::size_t k = 0; k < survivors.size(); ++k) {
        blocks.push_back(survivors[k].first);
        const auto cells = state.t_compressed.row_cells(survivors[k].second);
        rows.push_back(Row{"y" + std::to_string(k + 1), {cells.begin(), cells.end()}});
    }
    next.t_partition = Partition(next.table.objects(), std::move(blocks));
    next.t_mapping = BlockMapping::from_partition(next.t_partition);
    next.t_compressed = SetValuedTable(next.table.attributes(), std::move(rows),
                                       next.table.allows_empty_cells());
    verify_quotient(next.table, next.t_mapping, next.t_compressed);

    const auto layer = relation_layer_from_quotient(
        next.table, next.thresholds, next.t_mapping, next.t_compressed, options);
    next.relation_partitions = layer.partitions;
    next.joint = layer.joint;
    next.mapping = layer.mapping;
    next.image = layer.image;

    UpdateReport report;
    report.operation = "delete_objects";
    report.cancelled = std::move(cancelled);
    report.image_correspondence = correspondence(state.joint, state.mapping,
                                                 next.joint, next.mapping, &index_map);
    report.t_correspondence = correspondence(state.t_partition, state.t_mapping,
                                             next.t_partition, next.t_mapping,
                                             &index_map);
    return UpdateResult{std::move(next), std::move(report)};
}

BatchReport verify_against_batch(const CompressionState& state) {
    StateOptions options;
    options.lax_covering = true;
    options.verify_pullback = false;
    const auto batch = make_state(state.table, state.thresholds, options);

    BatchReport report;
    const auto check = [&](const char* field, bool equal, std::string detail) {
        report.fields.push_back(FieldCheck{field, equal, equal ? "" : std::move(detail)});
        report.all_equal = report.all_equal && equal;
    };
    check("relation_partitions",
          state.relation_partitions == batch.relation_partitions,
          "stored per-relation partitions differ from recomputation");
    check("joint", state.joint == batch.joint,
          "stored " + std::to_string(state.joint.block_count()) + " blocks, batch " +
              std::to_string(batch.joint.block_count()));
    check("mapping", state.mapping == batch.mapping, "block mapping differs");
    check("image", state.image == batch.image, "image system differs");
    check("t_partition", state.t_partition == batch.t_partition,
          "row-identity partition differs");
    check("t_mapping", state.t_mapping == batch.t_mapping,
          "row-identity mapping differs");
    check("t_compressed", state.t_compressed == batch.t_compressed,
          "compressed table differs");
    return report;
}

}  // namespace svis
