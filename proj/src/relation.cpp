#include "svis/relation.hpp"

#include <algorithm>
#include <charconv>

#include "svis/instrumentation.hpp"
#include "svis/kernels.hpp"

namespace svis {

Relation::Relation(std::vector<std::string> universe, std::vector<Bitset> rows)
    : universe_(std::move(universe)), rows_(std::move(rows)) {
    if (rows_.size() != universe_.size())
        throw DomainError("relation has " + std::to_string(rows_.size()) +
                          " rows for " + std::to_string(universe_.size()) + " objects");
    for (const auto& row : rows_)
        if (row.size() != universe_.size())
            throw DomainError("relation row width does not match the universe");
}

Relation Relation::full(std::vector<std::string> universe) {
    const auto n = universe.size();
    return Relation(std::move(universe), std::vector<Bitset>(n, Bitset(n, true)));
}

std::optional<std::size_t> Relation::object_index(std::string_view id) const {
    const auto it = std::find(universe_.begin(), universe_.end(), id);
    if (it == universe_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - universe_.begin());
}

std::vector<std::string> Relation::neighborhood_ids(std::size_t i) const {
    std::vector<std::string> out;
    rows_[i].for_each([&](std::size_t j) { out.push_back(universe_[j]); });
    return out;
}

bool Relation::is_symmetric() const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (rows_[i].test(j) != rows_[j].test(i)) return false;
    return true;
}

ThresholdVector ThresholdVector::parse(std::string_view text, std::size_t expected) {
    std::vector<std::size_t> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma - start);
        std::size_t value = 0;
        const auto* begin = piece.data();
        const auto* end = piece.data() + piece.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end)
            throw ParseError("bad threshold component '" + std::string(piece) + "'");
        values.push_back(value);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (values.size() != expected)
        throw ParseError("expected " + std::to_string(expected) +
                         " thresholds, got " + std::to_string(values.size()));
    return ThresholdVector(std::move(values));
}

std::vector<std::size_t> ThresholdVector::scope() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < h_.size(); ++i)
        if (h_[i] >= 1) out.push_back(i);
    return out;
}

bool ThresholdVector::leq(const ThresholdVector& other) const {
    if (h_.size() != other.h_.size()) return false;
    for (std::size_t i = 0; i < h_.size(); ++i)
        if (h_[i] > other.h_[i]) return false;
    return true;
}

void RelationSystem::add(std::string name, Relation relation) {
    if (relation.universe() != universe_)
        throw DomainError("relation '" + name + "' has a different universe");
    if (find(name)) throw DomainError("duplicate relation name '" + name + "'");
    names_.push_back(std::move(name));
    relations_.push_back(std::move(relation));
}

std::optional<std::size_t> RelationSystem::find(std::string_view name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

std::size_t RelationSystem::require(std::string_view name) const {
    const auto idx = find(name);
    if (!idx) throw DomainError("unknown relation '" + std::string(name) + "'");
    return *idx;
}

Relation RelationSystem::intersection(const std::vector<std::string>* names) const {
    std::vector<const Relation*> members;
    if (names) {
        for (const auto& name : *names) members.push_back(&relations_[require(name)]);
    } else {
        for (const auto& r : relations_) members.push_back(&r);
    }
    Relation acc = Relation::full(universe_);
    if (members.empty()) return acc;
    std::vector<Bitset> rows = members.front()->rows();
    for (std::size_t k = 1; k < members.size(); ++k)
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i] &= members[k]->row(i);
    return Relation(universe_, std::move(rows));
}

namespace detail {

Relation build_tolerance_ge(const SetValuedTable& table, std::size_t attribute,
                            std::size_t h, std::string_view purpose) {
    instrumentation::record_relation_build(table.attributes()[attribute],
                                           table.object_count(),
                                           std::string(purpose));
    const auto cells = table.column_cells(attribute);
    const auto column = EncodedColumn::build(cells);
    return Relation(table.objects(), min_intersection_rows(column, h));
}

}  // namespace detail

Relation tolerance_ge(const SetValuedTable& table, std::string_view attribute,
                      std::size_t h) {
    return detail::build_tolerance_ge(table, table.require_attribute(attribute), h,
                                      "adhoc");
}

Relation tolerance_ge_joint(const SetValuedTable& table, const ThresholdVector& h) {
    if (h.size() != table.attribute_count())
        throw DomainError("threshold vector length does not match the table");
    std::vector<Bitset> rows(table.object_count(),
                             Bitset(table.object_count(), true));
    for (const auto i : h.scope()) {
        const auto r = detail::build_tolerance_ge(table, i, h.at(i), "joint");
        for (std::size_t x = 0; x < rows.size(); ++x) rows[x] &= r.row(x);
    }
    return Relation(table.objects(), std::move(rows));
}

Relation tolerance_exact(const SetValuedTable& table, std::string_view attribute,
                         std::size_t h) {
    const auto idx = table.require_attribute(attribute);
    const auto column = EncodedColumn::build(table.column_cells(idx));
    return Relation(table.objects(), exact_intersection_rows(column, h));
}

Relation tolerance_valueset(const SetValuedTable& table, std::string_view attribute,
                            const ValueSet& p, const WarningSink& warnings) {
    const auto idx = table.require_attribute(attribute);
    const auto column = EncodedColumn::build(table.column_cells(idx));
    const auto target = column.encode_subset(p);
    if (!target) {
        warn(warnings, "value set " + p.braced() + " is not contained in the domain of '" +
                           std::string(attribute) + "'; relation is empty");
        return Relation(table.objects(),
                        std::vector<Bitset>(table.object_count(),
                                            Bitset(table.object_count())));
    }
    return Relation(table.objects(), exact_subset_rows(column, *target));
}

bool is_covering(const Relation& relation) {
    Bitset covered(relation.size());
    for (std::size_t i = 0; i < relation.size(); ++i) covered |= relation.row(i);
    return covered.count() == relation.size();
}

RelationSystem induced_system(const SetValuedTable& table, const ThresholdVector& h,
                              bool lax, const WarningSink& warnings) {
    if (h.size() != table.attribute_count())
        throw DomainError("threshold vector length does not match the table");
    RelationSystem system(table.objects());
    for (std::size_t i = 0; i < table.attribute_count(); ++i) {
        auto relation = detail::build_tolerance_ge(table, i, h.at(i), "column");
        if (!is_covering(relation)) {
            const auto message = "relation for '" + table.attributes()[i] + "' (h=" +
                                 std::to_string(h.at(i)) + ") is not a covering";
            if (!lax) throw DomainError(message);
            warn(warnings, message);
        }
        system.add(table.attributes()[i], std::move(relation));
    }
    return system;
}

Relation intersect_relations(std::span<const Relation> relations,
                             const std::vector<std::string>& universe) {
    for (const auto& r : relations)
        if (r.universe() != universe)
            throw DomainError("relations do not share a universe");
    if (relations.empty()) return Relation::full(universe);
    std::vector<Bitset> rows = relations.front().rows();
    for (std::size_t k = 1; k < relations.size(); ++k)
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i] &= relations[k].row(i);
    return Relation(universe, std::move(rows));
}

}  // namespace svis
