#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "svis/error.hpp"

namespace svis {

// Finite set of value tokens, kept sorted lexicographically and deduplicated.
// Tokens are opaque strings compared by exact byte equality ("01" != "1").
class ValueSet {
public:
    ValueSet() = default;
    explicit ValueSet(std::vector<std::string> tokens);
    ValueSet(std::initializer_list<std::string> tokens);

    // Parses "{a, b, c}"; whitespace around tokens is trimmed, "{}" is empty.
    static ValueSet parse_braced(std::string_view text);

    bool empty() const { return values_.empty(); }
    std::size_t size() const { return values_.size(); }
    bool contains(std::string_view token) const;
    const std::vector<std::string>& values() const { return values_; }

    ValueSet set_union(const ValueSet& other) const;
    ValueSet intersect(const ValueSet& other) const;
    std::size_t intersection_size(const ValueSet& other) const;
    bool is_subset_of(const ValueSet& other) const;

    std::string braced() const;  // "{a,b,c}"

    bool operator==(const ValueSet&) const = default;
    auto operator<=>(const ValueSet&) const = default;

private:
    std::vector<std::string> values_;
};

struct Column {
    std::string name;
    std::vector<ValueSet> cells;  // aligned with the owning table's object order
};

struct Row {
    std::string id;
    std::vector<ValueSet> cells;  // aligned with the owning table's attribute order
};

enum class TableFormat { Csv, Json };

// Objects x attributes, every cell a ValueSet. Immutable after construction;
// edits return new tables and never touch the original.
//
// Identifier rules (object ids, attribute names, value tokens): non-empty,
// no ',', '{', '}', '"', no control characters, no leading/trailing blanks.
// This keeps CSV and JSON forms byte-deterministic and round-trippable.
class SetValuedTable {
public:
    SetValuedTable() = default;
    SetValuedTable(std::vector<std::string> attributes, std::vector<Row> rows,
                   bool allow_empty_cells = false);

    std::size_t object_count() const { return objects_.size(); }
    std::size_t attribute_count() const { return attributes_.size(); }

    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<std::string>& attributes() const { return attributes_; }

    std::optional<std::size_t> object_index(std::string_view id) const;
    std::optional<std::size_t> attribute_index(std::string_view name) const;
    // Throwing lookup for operations that require the attribute to exist.
    std::size_t require_attribute(std::string_view name) const;

    const ValueSet& cell(std::size_t object, std::size_t attribute) const {
        return cells_[object * attributes_.size() + attribute];
    }
    const ValueSet& cell(std::string_view object_id, std::string_view attribute_name) const;

    std::span<const ValueSet> row_cells(std::size_t object) const {
        return {cells_.data() + object * attributes_.size(), attributes_.size()};
    }
    std::vector<ValueSet> column_cells(std::size_t attribute) const;

    // V_a: union of the column's cells. V: union over all cells.
    ValueSet column_values(std::size_t attribute) const;
    ValueSet all_values() const;

    // Pure edits. Referenced names/ids must exist (drop/remove) or be fresh
    // (add/append); added data must be dimensioned to the table.
    SetValuedTable add_columns(const std::vector<Column>& columns) const;
    SetValuedTable drop_columns(const std::vector<std::string>& names) const;
    SetValuedTable append_rows(const std::vector<Row>& rows) const;
    SetValuedTable remove_rows(const std::vector<std::string>& ids) const;

    bool allows_empty_cells() const { return allow_empty_cells_; }

    bool operator==(const SetValuedTable& other) const {
        return objects_ == other.objects_ && attributes_ == other.attributes_ &&
               cells_ == other.cells_;
    }

private:
    void build_indices();

    std::vector<std::string> objects_;
    std::vector<std::string> attributes_;
    std::vector<ValueSet> cells_;  // row-major
    std::unordered_map<std::string, std::size_t> object_index_;
    std::unordered_map<std::string, std::size_t> attribute_index_;
    bool allow_empty_cells_ = false;
};

// CSV: header `object,<a1>,...`; each data row `<id>,"{v1,v2}",...` with cells
// quoted and braces mandatory. JSON: {"attributes":[...],"objects":[{"id":...,
// "cells":{"a1":["v1",...],...}},...]}.
SetValuedTable parse_table(std::string_view text, TableFormat format,
                           bool allow_empty_cells = false);
std::string serialize_table(const SetValuedTable& table, TableFormat format);

// First non-blank byte '{' or '[' means JSON, anything else CSV.
TableFormat sniff_format(std::string_view text);

}  // namespace svis
