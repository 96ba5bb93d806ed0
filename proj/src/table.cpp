#include "svis/table.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace svis {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
    return s;
}

void validate_token(std::string_view token, const char* what) {
    if (token.empty()) throw ParseError(std::string(what) + " must not be empty");
    if (is_blank(token.front()) || is_blank(token.back()))
        throw ParseError(std::string(what) + " '" + std::string(token) +
                         "' has leading or trailing blanks");
    for (char c : token) {
        if (c == ',' || c == '{' || c == '}' || c == '"' ||
            static_cast<unsigned char>(c) < 0x20)
            throw ParseError(std::string(what) + " '" + std::string(token) +
                             "' contains a forbidden character");
    }
}

}  // namespace

ValueSet::ValueSet(std::vector<std::string> tokens) : values_(std::move(tokens)) {
    for (const auto& t : values_) validate_token(t, "value token");
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

ValueSet::ValueSet(std::initializer_list<std::string> tokens)
    : ValueSet(std::vector<std::string>(tokens)) {}

ValueSet ValueSet::parse_braced(std::string_view text) {
    const auto trimmed = trim(text);
    if (trimmed.size() < 2 || trimmed.front() != '{' || trimmed.back() != '}')
        throw ParseError("malformed cell '" + std::string(text) +
                         "': expected '{v1,v2,...}'");
    const auto inner = trim(trimmed.substr(1, trimmed.size() - 2));
    std::vector<std::string> tokens;
    if (!inner.empty()) {
        std::size_t start = 0;
        while (true) {
            const auto comma = inner.find(',', start);
            const auto piece = trim(inner.substr(start, comma - start));
            if (piece.empty())
                throw ParseError("malformed cell '" + std::string(text) +
                                 "': empty token");
            tokens.emplace_back(piece);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    return ValueSet(std::move(tokens));
}

bool ValueSet::contains(std::string_view token) const {
    return std::binary_search(values_.begin(), values_.end(), token);
}

ValueSet ValueSet::set_union(const ValueSet& other) const {
    std::vector<std::string> out;
    out.reserve(values_.size() + other.values_.size());
    std::set_union(values_.begin(), values_.end(), other.values_.begin(),
                   other.values_.end(), std::back_inserter(out));
    ValueSet result;
    result.values_ = std::move(out);
    return result;
}

ValueSet ValueSet::intersect(const ValueSet& other) const {
    std::vector<std::string> out;
    std::set_intersection(values_.begin(), values_.end(), other.values_.begin(),
                          other.values_.end(), std::back_inserter(out));
    ValueSet result;
    result.values_ = std::move(out);
    return result;
}

std::size_t ValueSet::intersection_size(const ValueSet& other) const {
    std::size_t i = 0, j = 0, c = 0;
    while (i < values_.size() && j < other.values_.size()) {
        const int cmp = values_[i].compare(other.values_[j]);
        if (cmp < 0)
            ++i;
        else if (cmp > 0)
            ++j;
        else {
            ++c;
            ++i;
            ++j;
        }
    }
    return c;
}

bool ValueSet::is_subset_of(const ValueSet& other) const {
    return std::includes(other.values_.begin(), other.values_.end(),
                         values_.begin(), values_.end());
}

std::string ValueSet::braced() const {
    std::string out = "{";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) out += ',';
        out += values_[i];
    }
    out += '}';
    return out;
}

SetValuedTable::SetValuedTable(std::vector<std::string> attributes,
                               std::vector<Row> rows, bool allow_empty_cells)
    : attributes_(std::move(attributes)), allow_empty_cells_(allow_empty_cells) {
    for (const auto& a : attributes_) validate_token(a, "attribute name");
    objects_.reserve(rows.size());
    cells_.reserve(rows.size() * attributes_.size());
    for (auto& row : rows) {
        validate_token(row.id, "object id");
        if (row.cells.size() != attributes_.size())
            throw ParseError("ragged row '" + row.id + "': expected " +
                             std::to_string(attributes_.size()) + " cells, got " +
                             std::to_string(row.cells.size()));
        objects_.push_back(std::move(row.id));
        for (auto& cell : row.cells) {
            if (cell.empty() && !allow_empty_cells_)
                throw ParseError("empty cell in row '" + objects_.back() +
                                 "' (pass allow-empty to accept)");
            cells_.push_back(std::move(cell));
        }
    }
    build_indices();
}

void SetValuedTable::build_indices() {
    object_index_.clear();
    attribute_index_.clear();
    for (std::size_t i = 0; i < objects_.size(); ++i)
        if (!object_index_.emplace(objects_[i], i).second)
            throw ParseError("duplicate object id '" + objects_[i] + "'");
    for (std::size_t j = 0; j < attributes_.size(); ++j)
        if (!attribute_index_.emplace(attributes_[j], j).second)
            throw ParseError("duplicate attribute name '" + attributes_[j] + "'");
}

std::optional<std::size_t> SetValuedTable::object_index(std::string_view id) const {
    const auto it = object_index_.find(std::string(id));
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> SetValuedTable::attribute_index(
    std::string_view name) const {
    const auto it = attribute_index_.find(std::string(name));
    if (it == attribute_index_.end()) return std::nullopt;
    return it->second;
}

std::size_t SetValuedTable::require_attribute(std::string_view name) const {
    const auto idx = attribute_index(name);
    if (!idx) throw DomainError("unknown attribute '" + std::string(name) + "'");
    return *idx;
}

const ValueSet& SetValuedTable::cell(std::string_view object_id,
                                     std::string_view attribute_name) const {
    const auto oi = object_index(object_id);
    if (!oi) throw DomainError("unknown object id '" + std::string(object_id) + "'");
    return cell(*oi, require_attribute(attribute_name));
}

std::vector<ValueSet> SetValuedTable::column_cells(std::size_t attribute) const {
    std::vector<ValueSet> out;
    out.reserve(objects_.size());
    for (std::size_t i = 0; i < objects_.size(); ++i) out.push_back(cell(i, attribute));
    return out;
}

ValueSet SetValuedTable::column_values(std::size_t attribute) const {
    ValueSet v;
    for (std::size_t i = 0; i < objects_.size(); ++i)
        v = v.set_union(cell(i, attribute));
    return v;
}

ValueSet SetValuedTable::all_values() const {
    ValueSet v;
    for (const auto& c : cells_) v = v.set_union(c);
    return v;
}

SetValuedTable SetValuedTable::add_columns(const std::vector<Column>& columns) const {
    for (const auto& col : columns) {
        if (attribute_index(col.name))
            throw DomainError("attribute '" + col.name + "' already exists");
        if (col.cells.size() != objects_.size())
            throw DomainError("column '" + col.name + "' has " +
                              std::to_string(col.cells.size()) + " cells for " +
                              std::to_string(objects_.size()) + " objects");
    }
    for (std::size_t i = 0; i < columns.size(); ++i)
        for (std::size_t j = i + 1; j < columns.size(); ++j)
            if (columns[i].name == columns[j].name)
                throw DomainError("duplicate new attribute '" + columns[i].name + "'");

    std::vector<std::string> attrs = attributes_;
    for (const auto& col : columns) attrs.push_back(col.name);
    std::vector<Row> rows;
    rows.reserve(objects_.size());
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        Row r{objects_[i], {}};
        r.cells.reserve(attrs.size());
        const auto base = row_cells(i);
        r.cells.assign(base.begin(), base.end());
        for (const auto& col : columns) r.cells.push_back(col.cells[i]);
        rows.push_back(std::move(r));
    }
    return SetValuedTable(std::move(attrs), std::move(rows), allow_empty_cells_);
}

SetValuedTable SetValuedTable::drop_columns(const std::vector<std::string>& names) const {
    std::vector<bool> dropped(attributes_.size(), false);
    for (const auto& name : names) {
        const auto idx = attribute_index(name);
        if (!idx) throw DomainError("unknown attribute '" + name + "'");
        dropped[*idx] = true;
    }
    std::vector<std::string> attrs;
    for (std::size_t j = 0; j < attributes_.size(); ++j)
        if (!dropped[j]) attrs.push_back(attributes_[j]);
    std::vector<Row> rows;
    rows.reserve(objects_.size());
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        Row r{objects_[i], {}};
        for (std::size_t j = 0; j < attributes_.size(); ++j)
            if (!dropped[j]) r.cells.push_back(cell(i, j));
        rows.push_back(std::move(r));
    }
    return SetValuedTable(std::move(attrs), std::move(rows), allow_empty_cells_);
}

SetValuedTable SetValuedTable::append_rows(const std::vector<Row>& rows) const {
    std::vector<Row> all;
    all.reserve(objects_.size() + rows.size());
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        const auto base = row_cells(i);
        all.push_back(Row{objects_[i], {base.begin(), base.end()}});
    }
    for (const auto& row : rows) {
        if (object_index(row.id))
            throw DomainError("object id '" + row.id + "' already exists");
        if (row.cells.size() != attributes_.size())
            throw DomainError("row '" + row.id + "' has " +
                              std::to_string(row.cells.size()) + " cells for " +
                              std::to_string(attributes_.size()) + " attributes");
        all.push_back(row);
    }
    return SetValuedTable(attributes_, std::move(all), allow_empty_cells_);
}

SetValuedTable SetValuedTable::remove_rows(const std::vector<std::string>& ids) const {
    std::vector<bool> removed(objects_.size(), false);
    for (const auto& id : ids) {
        const auto idx = object_index(id);
        if (!idx) throw DomainError("unknown object id '" + id + "'");
        removed[*idx] = true;
    }
    std::vector<Row> rows;
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        if (removed[i]) continue;
        const auto base = row_cells(i);
        rows.push_back(Row{objects_[i], {base.begin(), base.end()}});
    }
    return SetValuedTable(attributes_, std::move(rows), allow_empty_cells_);
}

namespace {

// One CSV record, quote-aware; returns false at end of input.
bool next_record(std::string_view text, std::size_t& pos,
                 std::vector<std::string>& fields) {
    fields.clear();
    if (pos >= text.size()) return false;
    std::string field;
    bool quoted = false;
    bool any = false;
    while (pos < text.size()) {
        const char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    ++pos;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            ++pos;
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
            ++pos;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            any = true;
            ++pos;
        } else if (c == '\n' || c == '\r') {
            ++pos;
            if (c == '\r' && pos < text.size() && text[pos] == '\n') ++pos;
            break;
        } else {
            field += c;
            any = true;
            ++pos;
        }
    }
    if (quoted) throw ParseError("unterminated quote in CSV input");
    if (!any && fields.empty()) return next_record(text, pos, fields);  // blank line
    fields.push_back(std::move(field));
    return true;
}

SetValuedTable parse_csv(std::string_view text, bool allow_empty_cells) {
    std::size_t pos = 0;
    std::vector<std::string> fields;
    if (!next_record(text, pos, fields)) throw ParseError("empty CSV input");
    if (trim(fields[0]) != "object")
        throw ParseError("CSV header must start with 'object', got '" + fields[0] + "'");
    std::vector<std::string> attrs;
    for (std::size_t j = 1; j < fields.size(); ++j)
        attrs.emplace_back(trim(fields[j]));

    std::vector<Row> rows;
    while (next_record(text, pos, fields)) {
        if (fields.size() != attrs.size() + 1)
            throw ParseError("ragged CSV row starting with '" + fields[0] + "': expected " +
                             std::to_string(attrs.size() + 1) + " fields, got " +
                             std::to_string(fields.size()));
        Row row{std::string(trim(fields[0])), {}};
        for (std::size_t j = 1; j < fields.size(); ++j)
            row.cells.push_back(ValueSet::parse_braced(fields[j]));
        rows.push_back(std::move(row));
    }
    return SetValuedTable(std::move(attrs), std::move(rows), allow_empty_cells);
}

SetValuedTable parse_json(std::string_view text, bool allow_empty_cells) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("attributes") || !doc.contains("objects"))
        throw ParseError("table JSON must have 'attributes' and 'objects'");
    std::vector<std::string> attrs;
    for (const auto& a : doc.at("attributes")) {
        if (!a.is_string()) throw ParseError("attribute names must be strings");
        attrs.push_back(a.get<std::string>());
    }
    std::vector<Row> rows;
    for (const auto& obj : doc.at("objects")) {
        if (!obj.is_object() || !obj.contains("id") || !obj.contains("cells"))
            throw ParseError("each object needs 'id' and 'cells'");
        Row row{obj.at("id").get<std::string>(), {}};
        const auto& cells = obj.at("cells");
        if (!cells.is_object()) throw ParseError("'cells' must be an object");
        if (cells.size() != attrs.size())
            throw ParseError("row '" + row.id + "' has " + std::to_string(cells.size()) +
                             " cells for " + std::to_string(attrs.size()) + " attributes");
        for (const auto& name : attrs) {
            if (!cells.contains(name))
                throw ParseError("row '" + row.id + "' is missing cell '" + name + "'");
            std::vector<std::string> tokens;
            for (const auto& v : cells.at(name)) {
                if (!v.is_string()) throw ParseError("value tokens must be strings");
                tokens.push_back(v.get<std::string>());
            }
            row.cells.push_back(ValueSet(std::move(tokens)));
        }
        rows.push_back(std::move(row));
    }
    return SetValuedTable(std::move(attrs), std::move(rows), allow_empty_cells);
}

}  // namespace

SetValuedTable parse_table(std::string_view text, TableFormat format,
                           bool allow_empty_cells) {
    return format == TableFormat::Csv ? parse_csv(text, allow_empty_cells)
                                      : parse_json(text, allow_empty_cells);
}

std::string serialize_table(const SetValuedTable& table, TableFormat format) {
    if (format == TableFormat::Csv) {
        std::string out = "object";
        for (const auto& a : table.attributes()) {
            out += ',';
            out += a;
        }
        out += '\n';
        for (std::size_t i = 0; i < table.object_count(); ++i) {
            out += table.objects()[i];
            for (std::size_t j = 0; j < table.attribute_count(); ++j) {
                out += ",\"";
                out += table.cell(i, j).braced();
                out += '"';
            }
            out += '\n';
        }
        return out;
    }
    nlohmann::ordered_json doc;
    doc["attributes"] = table.attributes();
    auto& objects = doc["objects"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < table.object_count(); ++i) {
        nlohmann::ordered_json obj;
        obj["id"] = table.objects()[i];
        auto& cells = obj["cells"] = nlohmann::ordered_json::object();
        for (std::size_t j = 0; j < table.attribute_count(); ++j)
            cells[table.attributes()[j]] = table.cell(i, j).values();
        objects.push_back(std::move(obj));
    }
    return doc.dump();
}

TableFormat sniff_format(std::string_view text) {
    for (char c : text) {
        if (is_blank(c) || c == '\n' || c == '\r') continue;
        return (c == '{' || c == '[') ? TableFormat::Json : TableFormat::Csv;
    }
    return TableFormat::Csv;
}

}  // namespace svis
