#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svis/bitset.hpp"
#include "svis/error.hpp"
#include "svis/table.hpp"

namespace svis {

// Symmetric boolean relation on an ordered universe, one neighborhood bitset
// per object: row(x) = { y | (x,y) in R }.
class Relation {
public:
    Relation() = default;
    Relation(std::vector<std::string> universe, std::vector<Bitset> rows);

    static Relation full(std::vector<std::string> universe);

    std::size_t size() const { return universe_.size(); }
    const std::vector<std::string>& universe() const { return universe_; }
    const Bitset& row(std::size_t i) const { return rows_[i]; }
    const std::vector<Bitset>& rows() const { return rows_; }
    bool related(std::size_t i, std::size_t j) const { return rows_[i].test(j); }

    std::optional<std::size_t> object_index(std::string_view id) const;
    std::vector<std::string> neighborhood_ids(std::size_t i) const;

    bool is_symmetric() const;

    bool operator==(const Relation&) const = default;

private:
    std::vector<std::string> universe_;
    std::vector<Bitset> rows_;
};

// Per-attribute minimum intersection cardinalities, aligned with the table's
// attribute order. h_i = 0 marks attributes outside the scope B.
class ThresholdVector {
public:
    ThresholdVector() = default;
    explicit ThresholdVector(std::vector<std::size_t> values) : h_(std::move(values)) {}

    static ThresholdVector ones(std::size_t count) {
        return ThresholdVector(std::vector<std::size_t>(count, 1));
    }
    // "1,0,2" -> (1,0,2); must have exactly `expected` components.
    static ThresholdVector parse(std::string_view text, std::size_t expected);

    std::size_t size() const { return h_.size(); }
    std::size_t at(std::size_t i) const { return h_[i]; }
    const std::vector<std::size_t>& values() const { return h_; }

    // Attribute indices inside the scope B (h_i >= 1).
    std::vector<std::size_t> scope() const;

    bool leq(const ThresholdVector& other) const;  // componentwise

    bool operator==(const ThresholdVector&) const = default;

private:
    std::vector<std::size_t> h_;
};

// Ordered family of named relations over one shared universe. Names are
// unique; for induced systems they are the attribute names.
class RelationSystem {
public:
    RelationSystem() = default;
    explicit RelationSystem(std::vector<std::string> universe)
        : universe_(std::move(universe)) {}

    void add(std::string name, Relation relation);

    std::size_t size() const { return relations_.size(); }
    const std::vector<std::string>& universe() const { return universe_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const Relation& at(std::size_t i) const { return relations_[i]; }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t require(std::string_view name) const;

    // Intersection over the named members; over everything when `names` is
    // absent. The empty family intersects to the full relation.
    Relation intersection(const std::vector<std::string>* names = nullptr) const;

    bool operator==(const RelationSystem&) const = default;

private:
    std::vector<std::string> universe_;
    std::vector<std::string> names_;
    std::vector<Relation> relations_;
};

// (x,y) related iff |f(x,a) ∩ f(y,a)| >= h. h = 0 gives the full relation;
// h = 1 is the classical common-value tolerance relation.
Relation tolerance_ge(const SetValuedTable& table, std::string_view attribute,
                      std::size_t h);

// Intersection of the per-attribute >=-relations over the scope of H.
Relation tolerance_ge_joint(const SetValuedTable& table, const ThresholdVector& h);

// (x,y) related iff |f(x,a) ∩ f(y,a)| = h exactly.
Relation tolerance_exact(const SetValuedTable& table, std::string_view attribute,
                         std::size_t h);

// (x,y) related iff f(x,a) ∩ f(y,a) equals the set p. A p not contained in
// the column's value domain yields the empty relation plus a warning.
Relation tolerance_valueset(const SetValuedTable& table, std::string_view attribute,
                            const ValueSet& p, const WarningSink& warnings = {});

// True iff the neighborhoods cover the universe (every object lies in some
// tolerance class; by symmetry, no row is empty).
bool is_covering(const Relation& relation);

// The per-attribute family {R_1..R_m} with R_i built from h_i. Non-covering
// members are an error unless `lax`, which downgrades them to warnings.
RelationSystem induced_system(const SetValuedTable& table, const ThresholdVector& h,
                              bool lax = false, const WarningSink& warnings = {});

// Row-wise AND. `universe` names the carrier (used when `relations` is empty
// and checked against every member).
Relation intersect_relations(std::span<const Relation> relations,
                             const std::vector<std::string>& universe);

namespace detail {
// Tagged builder behind the public tolerance_ge; `purpose` feeds the
// instrumentation log ("column", "image", "adhoc").
Relation build_tolerance_ge(const SetValuedTable& table, std::size_t attribute,
                            std::size_t h, std::string_view purpose);
}  // namespace detail

}  // namespace svis
