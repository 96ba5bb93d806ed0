#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "svis/partition.hpp"
#include "svis/relation.hpp"
#include "svis/table.hpp"

namespace svis {

// Surjection g: source universe -> image universe together with its block
// structure (the level sets g^-1(y_k)).
class BlockMapping {
public:
    BlockMapping() = default;

    // Image objects named `<prefix><start>`, `<prefix><start+1>`, ... in block
    // order (first-occurrence order of the partition).
    static BlockMapping from_partition(const Partition& partition,
                                       const std::string& prefix = "y",
                                       std::size_t start = 1);
    static BlockMapping from_assignment(std::vector<std::string> source,
                                        std::vector<std::string> image,
                                        std::vector<std::uint32_t> assignment);

    const std::vector<std::string>& source() const { return source_; }
    const std::vector<std::string>& image() const { return image_; }
    const std::vector<std::uint32_t>& assignment() const { return assignment_; }
    const std::vector<std::vector<std::uint32_t>>& blocks() const { return blocks_; }

    std::size_t image_of(std::size_t source_index) const {
        return assignment_[source_index];
    }
    const std::string& image_name_of(std::size_t source_index) const {
        return image_[assignment_[source_index]];
    }
    std::size_t representative(std::size_t image_index) const {
        return blocks_[image_index].front();
    }

    // The level sets as a Partition of the source universe.
    Partition to_partition() const;

    bool operator==(const BlockMapping&) const = default;

private:
    std::vector<std::string> source_;
    std::vector<std::string> image_;
    std::vector<std::uint32_t> assignment_;
    std::vector<std::vector<std::uint32_t>> blocks_;
};

// True iff relation membership is constant on every block x block rectangle:
// R(u,v) = R(s,t) whenever u,s share a block and v,t share a block.
bool is_consistent(const BlockMapping& mapping, const Relation& relation);

// g(R): image objects related iff their blocks are related in R. Requires a
// consistent mapping and refuses otherwise.
Relation image_relation(const BlockMapping& mapping, const Relation& relation);

// (x,y) related iff (g(x),g(y)) related in the image. Inverse of
// image_relation for consistent mappings.
Relation pullback_relation(const BlockMapping& mapping, const Relation& image);

struct SystemCompression {
    BlockMapping mapping;
    RelationSystem image;                    // members named "g(<source name>)"
    std::vector<std::string> source_names;   // index-aligned with the image
};

// Partitions each relation by neighborhood equality, intersects the
// partitions, maps blocks to image objects, and images every relation.
// Consistency of the mapping is verified for every member, not assumed.
SystemCompression compress_system(const RelationSystem& system);

struct TableCompression {
    BlockMapping mapping;
    SetValuedTable table;
};

// Quotient of the table by row identity on all attributes: one representative
// row (the first member in object order) per class.
TableCompression compress_table(const SetValuedTable& table,
                                std::size_t image_name_start = 1);

namespace detail {
// Image construction without the consistency re-check; callers must have
// verified the mapping.
Relation image_relation_unchecked(const BlockMapping& mapping, const Relation& relation);

// Tail of compress_system for callers that already hold the joint partition:
// mapping, per-member consistency verification, image construction.
SystemCompression compress_from_joint(const RelationSystem& system,
                                      const Partition& joint);
}  // namespace detail

}  // namespace svis
