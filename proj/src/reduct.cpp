#include "svis/reduct.hpp"

#include <algorithm>
#include <bit>

#include "svis/kernels.hpp"

namespace svis {

DiscernibilityMatrix::DiscernibilityMatrix(std::vector<std::string> universe,
                                           std::vector<std::string> attributes,
                                           std::vector<std::uint64_t> lower_triangle)
    : universe_(std::move(universe)),
      attributes_(std::move(attributes)),
      entries_(std::move(lower_triangle)) {
    const auto n = universe_.size();
    if (entries_.size() != n * (n + 1) / 2)
        throw DomainError("discernibility triangle has the wrong size");
}

std::optional<std::size_t> DiscernibilityMatrix::index_of(std::string_view id) const {
    const auto it = std::find(universe_.begin(), universe_.end(), id);
    if (it == universe_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - universe_.begin());
}

std::vector<std::string> DiscernibilityMatrix::entry(std::size_t i,
                                                     std::size_t j) const {
    std::vector<std::string> out;
    const auto mask = entry_mask(i, j);
    for (std::size_t a = 0; a < attributes_.size(); ++a)
        if (mask >> a & 1) out.push_back(attributes_[a]);
    return out;
}

std::vector<std::string> DiscernibilityMatrix::entry(std::string_view a,
                                                     std::string_view b) const {
    const auto i = index_of(a);
    const auto j = index_of(b);
    if (!i || !j) throw DomainError("unknown object in discernibility lookup");
    return entry(*i, *j);
}

bool DiscernibilityMatrix::has_nonempty_diagonal() const {
    for (std::size_t i = 0; i < universe_.size(); ++i)
        if (entry_mask(i, i) != 0) return true;
    return false;
}

std::size_t DiscernibilityMatrix::indiscernible_distinct_pairs() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < universe_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (entry_mask(i, j) == 0) ++count;
    return count;
}

DiscernibilityMatrix discernibility_matrix(const RelationSystem& system) {
    std::vector<Relation> members;
    members.reserve(system.size());
    for (std::size_t i = 0; i < system.size(); ++i) members.push_back(system.at(i));
    return DiscernibilityMatrix(system.universe(), system.names(),
                                discernibility_masks(members));
}

DiscernibilityMatrix discernibility_matrix(const SetValuedTable& table,
                                           const ThresholdVector& h) {
    return discernibility_matrix(induced_system(table, h, /*lax=*/true));
}

namespace {

// keep only inclusion-minimal masks
void absorb(std::vector<std::uint64_t>& masks) {
    std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
        const auto ca = std::popcount(a), cb = std::popcount(b);
        return ca != cb ? ca < cb : a < b;
    });
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::vector<std::uint64_t> kept;
    for (const auto m : masks) {
        bool dominated = false;
        for (const auto k : kept) {
            if ((k & m) == k) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(m);
    }
    masks = std::move(kept);
}

std::vector<std::string> mask_names(std::uint64_t mask,
                                    const std::vector<std::string>& names) {
    std::vector<std::string> out;
    for (std::size_t a = 0; a < names.size(); ++a)
        if (mask >> a & 1) out.push_back(names[a]);
    return out;
}

ReductSet reduct_set_from_masks(std::vector<std::uint64_t> masks,
                                const std::vector<std::string>& names) {
    ReductSet out;
    out.members.reserve(masks.size());
    for (const auto m : masks) out.members.push_back(mask_names(m, names));
    std::sort(out.members.begin(), out.members.end(),
              [](const auto& a, const auto& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    return out;
}

}  // namespace

std::vector<std::vector<std::string>> CnfFormula::clause_names() const {
    std::vector<std::vector<std::string>> out;
    out.reserve(clauses.size());
    for (const auto c : clauses) out.push_back(mask_names(c, attributes));
    return out;
}

CnfFormula discernibility_function(const DiscernibilityMatrix& matrix) {
    CnfFormula formula;
    formula.attributes = matrix.attributes();
    const auto n = matrix.universe().size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (const auto mask = matrix.entry_mask(i, j)) formula.clauses.push_back(mask);
    if (matrix.has_nonempty_diagonal()) {
        formula.infeasible = true;
        formula.clauses.assign(1, 0);  // the unhittable requirement
        return formula;
    }
    absorb(formula.clauses);
    return formula;
}

bool preserves_intersection(const RelationSystem& system,
                            std::span<const std::string> subset) {
    const std::vector<std::string> names(subset.begin(), subset.end());
    return system.intersection(&names) == system.intersection();
}

bool is_reduct(const RelationSystem& system, std::span<const std::string> subset) {
    if (!preserves_intersection(system, subset)) return false;
    // Preservation is monotone, so minimality only needs the drop-one checks.
    for (std::size_t k = 0; k < subset.size(); ++k) {
        std::vector<std::string> smaller;
        for (std::size_t l = 0; l < subset.size(); ++l)
            if (l != k) smaller.push_back(subset[l]);
        if (preserves_intersection(system, smaller)) return false;
    }
    return true;
}

ReductSet reducts_bruteforce(const RelationSystem& system) {
    const auto m = system.size();
    if (m > 20)
        throw DomainError("brute-force reduction is limited to 20 relations, got " +
                          std::to_string(m));
    const auto target = system.intersection();

    std::vector<std::uint64_t> minimal;
    for (std::size_t size = 0; size <= m; ++size) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
            bool contains_minimal = false;
            for (const auto r : minimal) {
                if ((mask & r) == r) {
                    contains_minimal = true;
                    break;
                }
            }
            if (contains_minimal) continue;
            std::vector<std::string> names;
            for (std::size_t a = 0; a < m; ++a)
                if (mask >> a & 1) names.push_back(system.name(a));
            if (system.intersection(&names) == target) minimal.push_back(mask);
        }
    }
    return reduct_set_from_masks(std::move(minimal), system.names());
}

ReductSet reducts_via_primes(const CnfFormula& formula) {
    if (formula.attributes.size() > 24)
        throw DomainError("prime-implicant expansion is limited to 24 attributes, got " +
                          std::to_string(formula.attributes.size()));
    std::vector<std::uint64_t> dnf{0};
    for (const auto clause : formula.clauses) {
        std::vector<std::uint64_t> next;
        for (const auto term : dnf) {
            if (term & clause) {
                next.push_back(term);
                continue;
            }
            for (std::size_t a = 0; a < formula.attributes.size(); ++a)
                if (clause >> a & 1) next.push_back(term | (std::uint64_t{1} << a));
        }
        absorb(next);
        dnf = std::move(next);
    }
    return reduct_set_from_masks(std::move(dnf), formula.attributes);
}

std::vector<std::string> lift_reduct(const SystemCompression& compression,
                                     std::span<const std::string> image_reduct) {
    std::vector<std::string> out;
    out.reserve(image_reduct.size());
    for (const auto& name : image_reduct)
        out.push_back(compression.source_names[compression.image.require(name)]);
    return out;
}

std::vector<std::string> pick_single_reduct(const ReductSet& reducts) {
    if (reducts.members.empty())
        throw DomainError("no reduct to pick from an empty set");
    return reducts.members.front();
}

}  // namespace svis
