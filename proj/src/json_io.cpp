#include "svis/json_io.hpp"

#include <algorithm>

namespace svis {

Json relation_to_json(const Relation& relation) {
    Json doc;
    doc["universe"] = relation.universe();
    auto& rows = doc["rows"] = Json::object();
    for (std::size_t i = 0; i < relation.size(); ++i)
        rows[relation.universe()[i]] = relation.neighborhood_ids(i);
    return doc;
}

Relation relation_from_json(const Json& doc) {
    const auto universe = doc.at("universe").get<std::vector<std::string>>();
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < universe.size(); ++i) index.emplace(universe[i], i);
    std::vector<Bitset> rows(universe.size(), Bitset(universe.size()));
    const auto& row_doc = doc.at("rows");
    for (std::size_t i = 0; i < universe.size(); ++i) {
        for (const auto& id : row_doc.at(universe[i])) {
            const auto it = index.find(id.get<std::string>());
            if (it == index.end())
                throw ParseError("relation row mentions unknown object");
            rows[i].set(it->second);
        }
    }
    return Relation(universe, std::move(rows));
}

Json partition_to_json(const Partition& partition) {
    Json blocks = Json::array();
    for (std::size_t b = 0; b < partition.block_count(); ++b)
        blocks.push_back(partition.block_ids(b));
    return blocks;
}

namespace {

Partition partition_from_json(const Json& doc, const std::vector<std::string>& universe) {
    std::unordered_map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < universe.size(); ++i) index.emplace(universe[i], i);
    std::vector<std::vector<std::uint32_t>> blocks;
    for (const auto& block_doc : doc) {
        std::vector<std::uint32_t> block;
        for (const auto& id : block_doc) {
            const auto it = index.find(id.get<std::string>());
            if (it == index.end())
                throw ParseError("partition block mentions unknown object");
            block.push_back(it->second);
        }
        blocks.push_back(std::move(block));
    }
    return Partition(universe, std::move(blocks));
}

}  // namespace

Json mapping_to_json(const BlockMapping& mapping) {
    Json doc;
    auto& assignment = doc["assignment"] = Json::object();
    for (std::size_t i = 0; i < mapping.source().size(); ++i)
        assignment[mapping.source()[i]] = mapping.image_name_of(i);
    auto& blocks = doc["blocks"] = Json::array();
    for (std::size_t b = 0; b < mapping.blocks().size(); ++b) {
        Json block = Json::array();
        for (const auto i : mapping.blocks()[b]) block.push_back(mapping.source()[i]);
        blocks.push_back(std::move(block));
    }
    return doc;
}

BlockMapping mapping_from_json(const Json& doc) {
    const auto& assignment_doc = doc.at("assignment");
    std::vector<std::string> source;
    source.reserve(assignment_doc.size());
    for (const auto& [id, _] : assignment_doc.items()) source.push_back(id);

    // image names in block order, recovered through each block's first member
    std::vector<std::string> image;
    std::unordered_map<std::string, std::uint32_t> image_index;
    for (const auto& block_doc : doc.at("blocks")) {
        if (block_doc.empty()) throw ParseError("mapping block is empty");
        const auto name =
            assignment_doc.at(block_doc.front().get<std::string>()).get<std::string>();
        image_index.emplace(name, static_cast<std::uint32_t>(image.size()));
        image.push_back(name);
    }
    std::vector<std::uint32_t> assignment;
    assignment.reserve(source.size());
    for (const auto& id : source) {
        const auto name = assignment_doc.at(id).get<std::string>();
        const auto it = image_index.find(name);
        if (it == image_index.end())
            throw ParseError("assignment target '" + name + "' missing from blocks");
        assignment.push_back(it->second);
    }
    return BlockMapping::from_assignment(std::move(source), std::move(image),
                                         std::move(assignment));
}

Json system_to_json(const RelationSystem& system) {
    Json doc;
    doc["universe"] = system.universe();
    auto& relations = doc["relations"] = Json::array();
    for (std::size_t i = 0; i < system.size(); ++i) {
        Json entry;
        entry["name"] = system.name(i);
        auto& rows = entry["rows"] = Json::object();
        for (std::size_t x = 0; x < system.at(i).size(); ++x)
            rows[system.universe()[x]] = system.at(i).neighborhood_ids(x);
        relations.push_back(std::move(entry));
    }
    return doc;
}

RelationSystem system_from_json(const Json& doc) {
    const auto universe = doc.at("universe").get<std::vector<std::string>>();
    RelationSystem system(universe);
    for (const auto& entry : doc.at("relations")) {
        Json relation_doc;
        relation_doc["universe"] = universe;
        relation_doc["rows"] = entry.at("rows");
        system.add(entry.at("name").get<std::string>(),
                   relation_from_json(relation_doc));
    }
    return system;
}

Json table_to_json(const SetValuedTable& table) {
    return Json::parse(serialize_table(table, TableFormat::Json));
}

SetValuedTable table_from_json(const Json& doc, bool allow_empty_cells) {
    return parse_table(doc.dump(), TableFormat::Json, allow_empty_cells);
}

Json update_report_to_json(const UpdateReport& report) {
    Json doc;
    doc["operation"] = report.operation;
    const auto correspondence_json = [](const std::vector<Correspondence>& list) {
        Json out = Json::object();
        for (const auto& c : list) out[c.from] = c.to;
        return out;
    };
    doc["image_correspondence"] = correspondence_json(report.image_correspondence);
    doc["t_correspondence"] = correspondence_json(report.t_correspondence);
    doc["cancelled"] = report.cancelled;
    if (report.incoming_compressed)
        doc["incoming_compressed"] = table_to_json(*report.incoming_compressed);
    if (report.merged) doc["merged"] = table_to_json(*report.merged);
    return doc;
}

Json batch_report_to_json(const BatchReport& report) {
    Json doc;
    doc["all_equal"] = report.all_equal;
    auto& fields = doc["fields"] = Json::array();
    for (const auto& f : report.fields) {
        Json entry;
        entry["field"] = f.field;
        entry["equal"] = f.equal;
        if (!f.detail.empty()) entry["detail"] = f.detail;
        fields.push_back(std::move(entry));
    }
    return doc;
}

std::string save_state(const CompressionState& state) {
    Json doc;
    doc["version"] = 1;
    doc["table"] = table_to_json(state.table);
    doc["thresholds"] = state.thresholds.values();
    auto& partitions = doc["partitions"] = Json::array();
    for (const auto& p : state.relation_partitions)
        partitions.push_back(partition_to_json(p));
    doc["joint"] = partition_to_json(state.joint);
    doc["mapping"] = mapping_to_json(state.mapping);
    doc["image"] = system_to_json(state.image);
    Json t_layer;
    t_layer["partition"] = partition_to_json(state.t_partition);
    t_layer["mapping"] = mapping_to_json(state.t_mapping);
    t_layer["table"] = table_to_json(state.t_compressed);
    doc["t_layer"] = std::move(t_layer);
    return doc.dump();
}

CompressionState load_state(std::string_view bytes) {
    Json doc;
    try {
        doc = Json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("corrupt state file: ") + e.what());
    }
    try {
        if (!doc.contains("version"))
            throw ParseError("state file has no version field");
        if (doc.at("version").get<int>() != 1)
            throw ParseError("unsupported state version " + doc.at("version").dump());
        CompressionState state;
        state.table = table_from_json(doc.at("table"));
        state.thresholds =
            ThresholdVector(doc.at("thresholds").get<std::vector<std::size_t>>());
        if (state.thresholds.size() != state.table.attribute_count())
            throw ParseError("state thresholds do not match the table");
        for (const auto& p : doc.at("partitions"))
            state.relation_partitions.push_back(
                partition_from_json(p, state.table.objects()));
        if (state.relation_partitions.size() != state.table.attribute_count())
            throw ParseError("state partition columns do not match the table");
        state.joint = partition_from_json(doc.at("joint"), state.table.objects());
        state.mapping = mapping_from_json(doc.at("mapping"));
        state.image = system_from_json(doc.at("image"));
        const auto& t_layer = doc.at("t_layer");
        state.t_partition =
            partition_from_json(t_layer.at("partition"), state.table.objects());
        state.t_mapping = mapping_from_json(t_layer.at("mapping"));
        state.t_compressed = table_from_json(t_layer.at("table"));
        if (state.mapping.source() != state.table.objects() ||
            state.t_mapping.source() != state.table.objects())
            throw ParseError("state mappings do not cover the table's objects");
        if (state.mapping.image() != state.image.universe())
            throw ParseError("state image universe does not match its mapping");
        return state;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("corrupt state file: ") + e.what());
    }
}

}  // namespace svis
