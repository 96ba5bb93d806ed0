#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "svis/bitset.hpp"
#include "svis/relation.hpp"
#include "svis/table.hpp"

namespace svis {

// Caps OpenMP parallelism for all kernels below (SVIS_THREADS). Values < 1
// leave the runtime default in place.
void set_max_threads(int n);
int max_threads();

// One attribute column prepared for pairwise intersection tests: the column's
// value domain is indexed once and every cell becomes a bit mask over it.
class EncodedColumn {
public:
    static EncodedColumn build(std::span<const ValueSet> cells);

    std::size_t object_count() const { return cell_sizes_.size(); }
    std::size_t domain_size() const { return domain_.size(); }
    std::size_t words_per_cell() const { return words_per_cell_; }
    std::size_t cell_size(std::size_t i) const { return cell_sizes_[i]; }
    std::size_t max_cell_size() const { return max_cell_size_; }

    std::span<const std::uint64_t> cell_words(std::size_t i) const {
        return {bits_.data() + i * words_per_cell_, words_per_cell_};
    }

    std::size_t intersection_size(std::size_t i, std::size_t j) const;

    // Encodes a subset of the column domain; nullopt when `p` has tokens
    // outside it.
    std::optional<std::vector<std::uint64_t>> encode_subset(const ValueSet& p) const;

    bool intersection_equals(std::size_t i, std::size_t j,
                             std::span<const std::uint64_t> target) const;

private:
    std::size_t words_per_cell_ = 1;
    std::size_t max_cell_size_ = 0;
    std::vector<std::uint64_t> bits_;       // object-major, words_per_cell_ each
    std::vector<std::uint32_t> cell_sizes_;
    std::vector<std::string> domain_;       // sorted tokens, index = bit
};

// Neighborhood rows for one attribute. The *_serial variants are the straight
// reference loops; the unsuffixed ones run the same loop under OpenMP and
// produce bit-identical rows.
std::vector<Bitset> min_intersection_rows(const EncodedColumn& column, std::size_t h);
std::vector<Bitset> min_intersection_rows_serial(const EncodedColumn& column,
                                                 std::size_t h);

std::vector<Bitset> exact_intersection_rows(const EncodedColumn& column, std::size_t h);
std::vector<Bitset> exact_intersection_rows_serial(const EncodedColumn& column,
                                                   std::size_t h);

std::vector<Bitset> exact_subset_rows(const EncodedColumn& column,
                                      std::span<const std::uint64_t> target);
std::vector<Bitset> exact_subset_rows_serial(const EncodedColumn& column,
                                             std::span<const std::uint64_t> target);

// Discernibility masks for all unordered pairs including the diagonal, lower
// triangle row-major: masks[i*(i+1)/2 + j] for j <= i has bit a set iff
// relation a does not relate (i, j). At most 64 relations.
std::vector<std::uint64_t> discernibility_masks(std::span<const Relation> relations);
std::vector<std::uint64_t> discernibility_masks_serial(
    std::span<const Relation> relations);

}  // namespace svis
