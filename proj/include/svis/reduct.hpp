#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "svis/compress.hpp"
#include "svis/relation.hpp"
#include "svis/table.hpp"

namespace svis {

// Pairwise distinguishing-attribute sets, stored once per unordered pair
// (diagonal included) as bit masks over the system's member list.
class DiscernibilityMatrix {
public:
    DiscernibilityMatrix() = default;
    DiscernibilityMatrix(std::vector<std::string> universe,
                         std::vector<std::string> attributes,
                         std::vector<std::uint64_t> lower_triangle);

    const std::vector<std::string>& universe() const { return universe_; }
    const std::vector<std::string>& attributes() const { return attributes_; }

    std::uint64_t entry_mask(std::size_t i, std::size_t j) const {
        if (j > i) std::swap(i, j);
        return entries_[i * (i + 1) / 2 + j];
    }
    std::vector<std::string> entry(std::size_t i, std::size_t j) const;
    std::vector<std::string> entry(std::string_view a, std::string_view b) const;

    // A nonempty diagonal entry means some object fails to relate to itself;
    // no attribute subset can repair that, so the reduction instance is
    // infeasible.
    bool has_nonempty_diagonal() const;

    // Distinct pairs with an empty entry are merely indiscernible; their
    // count is reported, never raised.
    std::size_t indiscernible_distinct_pairs() const;

private:
    std::optional<std::size_t> index_of(std::string_view id) const;

    std::vector<std::string> universe_;
    std::vector<std::string> attributes_;
    std::vector<std::uint64_t> entries_;
};

// M(x,y) = { a | (x,y) not in R_a } over the system's members.
DiscernibilityMatrix discernibility_matrix(const RelationSystem& system);
// Convenience: the matrix of the table's induced system (coverings not
// enforced here; a non-covering relation surfaces as a nonempty diagonal).
DiscernibilityMatrix discernibility_matrix(const SetValuedTable& table,
                                           const ThresholdVector& h);

// Conjunction of attribute disjunctions. Clauses are deduplicated and
// absorbed (supersets dropped). An infeasible instance is flagged and
// carries the single empty clause.
struct CnfFormula {
    std::vector<std::string> attributes;
    std::vector<std::uint64_t> clauses;
    bool infeasible = false;

    std::vector<std::vector<std::string>> clause_names() const;
};

CnfFormula discernibility_function(const DiscernibilityMatrix& matrix);

// Antichain of minimal preserving attribute subsets. Members list attribute
// names in system order; the set is ordered by (size, then name sequence).
struct ReductSet {
    std::vector<std::vector<std::string>> members;

    bool operator==(const ReductSet&) const = default;
};

// Intersection over `subset` equals the intersection over all members and no
// proper subset achieves that.
bool is_reduct(const RelationSystem& system, std::span<const std::string> subset);

// Non-minimal half of is_reduct, useful on its own for superfluity checks.
bool preserves_intersection(const RelationSystem& system,
                            std::span<const std::string> subset);

// Definition-level enumeration over all subsets in increasing size. Guarded
// to systems with at most 20 members.
ReductSet reducts_bruteforce(const RelationSystem& system);

// Clause-by-clause CNF -> DNF distribution with eager absorption; the prime
// implicants are exactly the minimal hitting sets of the clause family.
// Guarded to 24 attributes.
ReductSet reducts_via_primes(const CnfFormula& formula);

// Index-matched transfer of an image-system reduct back to source names.
std::vector<std::string> lift_reduct(const SystemCompression& compression,
                                     std::span<const std::string> image_reduct);

// Deterministic single answer: smallest cardinality, then lexicographically
// least name sequence.
std::vector<std::string> pick_single_reduct(const ReductSet& reducts);

}  // namespace svis
