#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "svis/relation.hpp"
#include "svis/table.hpp"

namespace svis {

// Disjoint nonempty blocks covering an ordered universe. Canonical form:
// block members ascend by universe index, blocks are ordered by their first
// member (= first occurrence in the universe).
class Partition {
public:
    Partition() = default;
    Partition(std::vector<std::string> universe,
              std::vector<std::vector<std::uint32_t>> blocks);

    std::size_t size() const { return universe_.size(); }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::string>& universe() const { return universe_; }
    const std::vector<std::vector<std::uint32_t>>& blocks() const { return blocks_; }
    const std::vector<std::uint32_t>& block(std::size_t b) const { return blocks_[b]; }
    std::uint32_t block_of(std::size_t object) const { return block_of_[object]; }

    std::vector<std::string> block_ids(std::size_t b) const;

    bool operator==(const Partition&) const = default;

private:
    std::vector<std::string> universe_;
    std::vector<std::vector<std::uint32_t>> blocks_;
    std::vector<std::uint32_t> block_of_;
};

// Blocks of objects with identical neighborhoods: x, y together iff
// row(x) = row(y). Rows are bucketed by hash and confirmed by full equality.
Partition partition_by_relation(const Relation& relation);

// Blockwise intersection: x, y together iff they share a block in every input.
Partition joint_partition(std::span<const Partition> partitions);

// x, y together iff their cells agree on every attribute in `attributes`
// (all attributes when empty span semantics are wanted, pass them explicitly;
// an empty list groups everything into one block).
Partition partition_by_equivalence(const SetValuedTable& table,
                                   std::span<const std::string> attributes);

}  // namespace svis
