#include "svis/compress.hpp"

#include <algorithm>

namespace svis {

BlockMapping BlockMapping::from_partition(const Partition& partition,
                                          const std::string& prefix,
                                          std::size_t start) {
    BlockMapping m;
    m.source_ = partition.universe();
    m.blocks_ = partition.blocks();
    m.image_.reserve(m.blocks_.size());
    for (std::size_t b = 0; b < m.blocks_.size(); ++b)
        m.image_.push_back(prefix + std::to_string(start + b));
    m.assignment_.assign(m.source_.size(), 0);
    for (std::uint32_t b = 0; b < m.blocks_.size(); ++b)
        for (const auto i : m.blocks_[b]) m.assignment_[i] = b;
    return m;
}

BlockMapping BlockMapping::from_assignment(std::vector<std::string> source,
                                           std::vector<std::string> image,
                                           std::vector<std::uint32_t> assignment) {
    if (assignment.size() != source.size())
        throw DomainError("assignment length does not match the source universe");
    BlockMapping m;
    m.source_ = std::move(source);
    m.image_ = std::move(image);
    m.assignment_ = std::move(assignment);
    m.blocks_.assign(m.image_.size(), {});
    for (std::uint32_t i = 0; i < m.assignment_.size(); ++i) {
        const auto k = m.assignment_[i];
        if (k >= m.image_.size()) throw DomainError("assignment target out of range");
        m.blocks_[k].push_back(i);
    }
    for (std::size_t k = 0; k < m.blocks_.size(); ++k)
        if (m.blocks_[k].empty())
            throw DomainError("mapping is not surjective: '" + m.image_[k] +
                              "' has no preimage");
    return m;
}

Partition BlockMapping::to_partition() const {
    return Partition(source_, blocks_);
}

bool is_consistent(const BlockMapping& mapping, const Relation& relation) {
    if (mapping.source() != relation.universe())
        throw DomainError("mapping source does not match the relation universe");
    const auto& blocks = mapping.blocks();
    const auto n = relation.size();

    std::vector<Bitset> block_masks(blocks.size(), Bitset(n));
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (const auto i : blocks[b]) block_masks[b].set(i);

    // Membership over B_i x B_j must be constant; check every ordered pair of
    // blocks by counting row overlap with the target block mask.
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        for (std::size_t bj = 0; bj < blocks.size(); ++bj) {
            const auto expected =
                relation.related(blocks[bi].front(), blocks[bj].front())
                    ? blocks[bj].size()
                    : 0;
            for (const auto u : blocks[bi]) {
                if (relation.row(u).intersection_count(block_masks[bj]) != expected)
                    return false;
            }
        }
    }
    return true;
}

namespace detail {

Relation image_relation_unchecked(const BlockMapping& mapping,
                                  const Relation& relation) {
    const auto& blocks = mapping.blocks();
    const auto count = blocks.size();
    std::vector<Bitset> rows(count, Bitset(count));
    for (std::size_t bi = 0; bi < count; ++bi)
        for (std::size_t bj = 0; bj < count; ++bj)
            if (relation.related(blocks[bi].front(), blocks[bj].front()))
                rows[bi].set(bj);
    return Relation(mapping.image(), std::move(rows));
}

}  // namespace detail

Relation image_relation(const BlockMapping& mapping, const Relation& relation) {
    if (!is_consistent(mapping, relation))
        throw DomainError("mapping is not consistent with the relation; "
                          "refusing to build its image");
    return detail::image_relation_unchecked(mapping, relation);
}

Relation pullback_relation(const BlockMapping& mapping, const Relation& image) {
    if (mapping.image() != image.universe())
        throw DomainError("mapping image does not match the relation universe");
    const auto n = mapping.source().size();
    std::vector<Bitset> rows(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& image_row = image.row(mapping.image_of(i));
        image_row.for_each([&](std::size_t bj) {
            for (const auto j : mapping.blocks()[bj]) rows[i].set(j);
        });
    }
    return Relation(mapping.source(), std::move(rows));
}

namespace detail {

SystemCompression compress_from_joint(const RelationSystem& system,
                                      const Partition& joint) {
    auto mapping = BlockMapping::from_partition(joint);

    for (std::size_t i = 0; i < system.size(); ++i) {
        if (!is_consistent(mapping, system.at(i)))
            throw DomainError(
                "joint-partition mapping is not consistent with relation '" +
                system.name(i) + "'; aborting compression");
    }

    RelationSystem image(mapping.image());
    std::vector<std::string> source_names;
    for (std::size_t i = 0; i < system.size(); ++i) {
        image.add("g(" + system.name(i) + ")",
                  image_relation_unchecked(mapping, system.at(i)));
        source_names.push_back(system.name(i));
    }
    return SystemCompression{std::move(mapping), std::move(image),
                             std::move(source_names)};
}

}  // namespace detail

SystemCompression compress_system(const RelationSystem& system) {
    if (system.size() == 0)
        throw DomainError("cannot compress an empty relation system");
    std::vector<Partition> partitions;
    partitions.reserve(system.size());
    for (std::size_t i = 0; i < system.size(); ++i)
        partitions.push_back(partition_by_relation(system.at(i)));
    return detail::compress_from_joint(system, joint_partition(partitions));
}

TableCompression compress_table(const SetValuedTable& table,
                                std::size_t image_name_start) {
    const auto classes = partition_by_equivalence(table, table.attributes());
    auto mapping = BlockMapping::from_partition(classes, "y", image_name_start);
    std::vector<Row> rows;
    rows.reserve(mapping.blocks().size());
    for (std::size_t k = 0; k < mapping.blocks().size(); ++k) {
        const auto rep = mapping.representative(k);
        const auto cells = table.row_cells(rep);
        rows.push_back(Row{mapping.image()[k], {cells.begin(), cells.end()}});
    }
    return TableCompression{
        std::move(mapping),
        SetValuedTable(table.attributes(), std::move(rows), table.allows_empty_cells())};
}

}  // namespace svis
