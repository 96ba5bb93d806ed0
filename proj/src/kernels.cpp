#include "svis/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "svis/error.hpp"

namespace svis {

namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int n) {
    g_max_threads.store(n > 0 ? n : 0);
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#endif
}

int max_threads() { return g_max_threads.load(); }

EncodedColumn EncodedColumn::build(std::span<const ValueSet> cells) {
    EncodedColumn col;
    std::unordered_map<std::string, std::uint32_t> index;
    for (const auto& cell : cells)
        for (const auto& token : cell.values())
            index.emplace(token, 0);
    col.domain_.reserve(index.size());
    for (const auto& [token, _] : index) col.domain_.push_back(token);
    std::sort(col.domain_.begin(), col.domain_.end());
    for (std::uint32_t i = 0; i < col.domain_.size(); ++i) index[col.domain_[i]] = i;

    col.words_per_cell_ = std::max<std::size_t>(1, (col.domain_.size() + 63) / 64);
    col.bits_.assign(cells.size() * col.words_per_cell_, 0);
    col.cell_sizes_.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        col.cell_sizes_.push_back(static_cast<std::uint32_t>(cells[i].size()));
        col.max_cell_size_ = std::max<std::size_t>(col.max_cell_size_, cells[i].size());
        auto* words = col.bits_.data() + i * col.words_per_cell_;
        for (const auto& token : cells[i].values()) {
            const auto bit = index.at(token);
            words[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        }
    }
    return col;
}

std::size_t EncodedColumn::intersection_size(std::size_t i, std::size_t j) const {
    const auto* a = bits_.data() + i * words_per_cell_;
    const auto* b = bits_.data() + j * words_per_cell_;
    std::size_t c = 0;
    for (std::size_t w = 0; w < words_per_cell_; ++w)
        c += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
    return c;
}

std::optional<std::vector<std::uint64_t>> EncodedColumn::encode_subset(
    const ValueSet& p) const {
    std::vector<std::uint64_t> words(words_per_cell_, 0);
    for (const auto& token : p.values()) {
        const auto it = std::lower_bound(domain_.begin(), domain_.end(), token);
        if (it == domain_.end() || *it != token) return std::nullopt;
        const auto bit = static_cast<std::size_t>(it - domain_.begin());
        words[bit >> 6] |= std::uint64_t{1} << (bit & 63);
    }
    return words;
}

bool EncodedColumn::intersection_equals(std::size_t i, std::size_t j,
                                        std::span<const std::uint64_t> target) const {
    const auto* a = bits_.data() + i * words_per_cell_;
    const auto* b = bits_.data() + j * words_per_cell_;
    for (std::size_t w = 0; w < words_per_cell_; ++w)
        if ((a[w] & b[w]) != target[w]) return false;
    return true;
}

namespace {

template <typename Pred>
std::vector<Bitset> build_rows_serial(std::size_t n, Pred&& related) {
    std::vector<Bitset> rows(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (related(i, j)) rows[i].set(j);
    return rows;
}

template <typename Pred>
std::vector<Bitset> build_rows_parallel(std::size_t n, Pred&& related) {
    std::vector<Bitset> rows(n, Bitset(n));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const auto ii = static_cast<std::size_t>(i);
        for (std::size_t j = 0; j < n; ++j)
            if (related(ii, j)) rows[ii].set(j);
    }
    return rows;
}

}  // namespace

std::vector<Bitset> min_intersection_rows_serial(const EncodedColumn& column,
                                                 std::size_t h) {
    const auto n = column.object_count();
    if (h == 0) return std::vector<Bitset>(n, Bitset(n, true));
    return build_rows_serial(
        n, [&](std::size_t i, std::size_t j) { return column.intersection_size(i, j) >= h; });
}

std::vector<Bitset> min_intersection_rows(const EncodedColumn& column, std::size_t h) {
    const auto n = column.object_count();
    if (h == 0) return std::vector<Bitset>(n, Bitset(n, true));
    return build_rows_parallel(
        n, [&](std::size_t i, std::size_t j) { return column.intersection_size(i, j) >= h; });
}

std::vector<Bitset> exact_intersection_rows_serial(const EncodedColumn& column,
                                                   std::size_t h) {
    return build_rows_serial(column.object_count(), [&](std::size_t i, std::size_t j) {
        return column.intersection_size(i, j) == h;
    });
}

std::vector<Bitset> exact_intersection_rows(const EncodedColumn& column, std::size_t h) {
    return build_rows_parallel(column.object_count(), [&](std::size_t i, std::size_t j) {
        return column.intersection_size(i, j) == h;
    });
}

std::vector<Bitset> exact_subset_rows_serial(const EncodedColumn& column,
                                             std::span<const std::uint64_t> target) {
    return build_rows_serial(column.object_count(), [&](std::size_t i, std::size_t j) {
        return column.intersection_equals(i, j, target);
    });
}

std::vector<Bitset> exact_subset_rows(const EncodedColumn& column,
                                      std::span<const std::uint64_t> target) {
    return build_rows_parallel(column.object_count(), [&](std::size_t i, std::size_t j) {
        return column.intersection_equals(i, j, target);
    });
}

namespace {

std::uint64_t pair_mask(std::span<const Relation> relations, std::size_t i,
                        std::size_t j) {
    std::uint64_t mask = 0;
    for (std::size_t a = 0; a < relations.size(); ++a)
        if (!relations[a].related(i, j)) mask |= std::uint64_t{1} << a;
    return mask;
}

}  // namespace

std::vector<std::uint64_t> discernibility_masks_serial(
    std::span<const Relation> relations) {
    if (relations.size() > 64) throw DomainError("more than 64 relations");
    const std::size_t n = relations.empty() ? 0 : relations.front().size();
    std::vector<std::uint64_t> masks(n * (n + 1) / 2, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            masks[i * (i + 1) / 2 + j] = pair_mask(relations, i, j);
    return masks;
}

std::vector<std::uint64_t> discernibility_masks(std::span<const Relation> relations) {
    if (relations.size() > 64) throw DomainError("more than 64 relations");
    const std::size_t n = relations.empty() ? 0 : relations.front().size();
    std::vector<std::uint64_t> masks(n * (n + 1) / 2, 0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const auto ii = static_cast<std::size_t>(i);
        for (std::size_t j = 0; j <= ii; ++j)
            masks[ii * (ii + 1) / 2 + j] = pair_mask(relations, ii, j);
    }
    return masks;
}

}  // namespace svis
