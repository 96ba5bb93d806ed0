#include "svis/partition.hpp"

#include <algorithm>
#include <unordered_map>

namespace svis {

Partition::Partition(std::vector<std::string> universe,
                     std::vector<std::vector<std::uint32_t>> blocks)
    : universe_(std::move(universe)), blocks_(std::move(blocks)) {
    block_of_.assign(universe_.size(), 0);
    std::vector<bool> seen(universe_.size(), false);
    std::size_t covered = 0;
    for (auto& block : blocks_) {
        if (block.empty()) throw DomainError("empty partition block");
        std::sort(block.begin(), block.end());
        for (const auto i : block) {
            if (i >= universe_.size() || seen[i])
                throw DomainError("partition blocks must be disjoint and in range");
            seen[i] = true;
            ++covered;
        }
    }
    if (covered != universe_.size())
        throw DomainError("partition blocks do not cover the universe");
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::uint32_t b = 0; b < blocks_.size(); ++b)
        for (const auto i : blocks_[b]) block_of_[i] = b;
}

std::vector<std::string> Partition::block_ids(std::size_t b) const {
    std::vector<std::string> out;
    out.reserve(blocks_[b].size());
    for (const auto i : blocks_[b]) out.push_back(universe_[i]);
    return out;
}

namespace {

// first-occurrence grouping of per-object labels
Partition from_labels(std::vector<std::string> universe,
                      const std::vector<std::uint32_t>& labels,
                      std::size_t label_count) {
    std::vector<std::vector<std::uint32_t>> blocks(label_count);
    for (std::uint32_t i = 0; i < labels.size(); ++i)
        blocks[labels[i]].push_back(i);
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const auto& b) { return b.empty(); }),
                 blocks.end());
    return Partition(std::move(universe), std::move(blocks));
}

}  // namespace

Partition partition_by_relation(const Relation& relation) {
    const auto n = relation.size();
    std::vector<std::uint32_t> labels(n, 0);
    std::uint32_t next = 0;
    std::unordered_map<std::size_t, std::vector<std::uint32_t>> buckets;  // hash -> reps
    std::vector<std::uint32_t> rep_of_label;
    for (std::size_t i = 0; i < n; ++i) {
        const auto h = relation.row(i).hash();
        auto& reps = buckets[h];
        bool found = false;
        for (const auto label : reps) {
            if (relation.row(rep_of_label[label]) == relation.row(i)) {
                labels[i] = label;
                found = true;
                break;
            }
        }
        if (!found) {
            labels[i] = next;
            reps.push_back(next);
            rep_of_label.push_back(static_cast<std::uint32_t>(i));
            ++next;
        }
    }
    return from_labels(relation.universe(), labels, next);
}

Partition joint_partition(std::span<const Partition> partitions) {
    if (partitions.empty()) throw DomainError("joint of an empty partition list");
    const auto& universe = partitions.front().universe();
    for (const auto& p : partitions)
        if (p.universe() != universe)
            throw DomainError("partitions do not share a universe");

    const auto n = universe.size();
    std::vector<std::uint32_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = partitions.front().block_of(i);
    std::uint32_t label_count =
        static_cast<std::uint32_t>(partitions.front().block_count());

    for (std::size_t k = 1; k < partitions.size(); ++k) {
        std::unordered_map<std::uint64_t, std::uint32_t> renumber;
        std::uint32_t next = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t key =
                (static_cast<std::uint64_t>(labels[i]) << 32) | partitions[k].block_of(i);
            const auto [it, inserted] = renumber.emplace(key, next);
            if (inserted) ++next;
            labels[i] = it->second;
        }
        label_count = next;
    }
    return from_labels(universe, labels, label_count);
}

Partition partition_by_equivalence(const SetValuedTable& table,
                                   std::span<const std::string> attributes) {
    std::vector<std::size_t> attr_indices;
    attr_indices.reserve(attributes.size());
    for (const auto& name : attributes)
        attr_indices.push_back(table.require_attribute(name));

    const auto n = table.object_count();
    std::vector<std::uint32_t> labels(n, 0);
    std::uint32_t next = 0;
    std::unordered_map<std::string, std::uint32_t> groups;
    for (std::size_t i = 0; i < n; ++i) {
        std::string key;
        for (const auto j : attr_indices) {
            key += table.cell(i, j).braced();
            key += '|';
        }
        const auto [it, inserted] = groups.emplace(std::move(key), next);
        if (inserted) ++next;
        labels[i] = it->second;
    }
    return from_labels(table.objects(), labels, next);
}

}  // namespace svis
