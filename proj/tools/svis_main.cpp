#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "svis/dynamic.hpp"
#include "svis/json_io.hpp"
#include "svis/kernels.hpp"
#include "svis/reduct.hpp"

namespace {

using svis::Json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw svis::DomainError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw svis::DomainError("cannot write '" + path + "'");
    out << bytes;
}

svis::SetValuedTable load_table(const std::string& path, const std::string& format,
                                bool allow_empty) {
    const auto text = read_file(path);
    svis::TableFormat f;
    if (format == "csv")
        f = svis::TableFormat::Csv;
    else if (format == "json")
        f = svis::TableFormat::Json;
    else
        f = svis::sniff_format(text);
    return svis::parse_table(text, f, allow_empty);
}

bool looks_like_state(const std::string& text) {
    try {
        const auto doc = Json::parse(text);
        return doc.is_object() && doc.contains("version") && doc.contains("t_layer");
    } catch (...) {
        return false;
    }
}

svis::ThresholdVector thresholds_or_ones(const std::string& flag, std::size_t count) {
    if (flag.empty()) return svis::ThresholdVector::ones(count);
    return svis::ThresholdVector::parse(flag, count);
}

svis::WarningSink stderr_warnings() {
    return [](const std::string& message) { std::cerr << "warning: " << message << "\n"; };
}

void emit(const Json& doc) { std::cout << doc.dump() << "\n"; }

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        out.push_back(text.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void pretty_partition(const svis::Partition& partition) {
    std::cerr << "{";
    for (std::size_t b = 0; b < partition.block_count(); ++b) {
        if (b) std::cerr << ", ";
        std::cerr << "{";
        const auto ids = partition.block_ids(b);
        for (std::size_t i = 0; i < ids.size(); ++i)
            std::cerr << (i ? "," : "") << ids[i];
        std::cerr << "}";
    }
    std::cerr << "}\n";
}

void pretty_relation(const svis::Relation& relation) {
    for (std::size_t i = 0; i < relation.size(); ++i) {
        std::cerr << relation.universe()[i] << " -> {";
        const auto ids = relation.neighborhood_ids(i);
        for (std::size_t k = 0; k < ids.size(); ++k)
            std::cerr << (k ? "," : "") << ids[k];
        std::cerr << "}\n";
    }
}

void pretty_table(const svis::SetValuedTable& table) {
    std::cerr << "object";
    for (const auto& a : table.attributes()) std::cerr << "\t" << a;
    std::cerr << "\n";
    for (std::size_t i = 0; i < table.object_count(); ++i) {
        std::cerr << table.objects()[i];
        for (std::size_t j = 0; j < table.attribute_count(); ++j)
            std::cerr << "\t" << table.cell(i, j).braced();
        std::cerr << "\n";
    }
}

struct RelationsArgs {
    std::string input;
    std::string format = "auto";
    std::string kind = "ge";
    std::string attr;
    std::string param = "1";
    std::string thresholds;
    bool allow_empty = false;
    bool pretty = false;
};

int run_relations(const RelationsArgs& args) {
    const auto table = load_table(args.input, args.format, args.allow_empty);
    svis::Relation relation;
    if (!args.attr.empty()) {
        if (args.kind == "ge") {
            relation = svis::tolerance_ge(table, args.attr, std::stoul(args.param));
        } else if (args.kind == "exact") {
            relation = svis::tolerance_exact(table, args.attr, std::stoul(args.param));
        } else if (args.kind == "valueset") {
            relation = svis::tolerance_valueset(
                table, args.attr, svis::ValueSet::parse_braced(args.param),
                stderr_warnings());
        } else {
            throw svis::DomainError("unknown relation kind '" + args.kind + "'");
        }
    } else if (!args.thresholds.empty()) {
        if (args.kind != "ge")
            throw svis::DomainError("joint relations exist only for --kind ge");
        relation = svis::tolerance_ge_joint(
            table, svis::ThresholdVector::parse(args.thresholds,
                                                table.attribute_count()));
    } else {
        throw svis::DomainError("pass --attr for one attribute or --thresholds for "
                                "the joint relation");
    }
    if (args.pretty) pretty_relation(relation);
    emit(svis::relation_to_json(relation));
    return 0;
}

struct PartitionArgs {
    std::string input;
    std::string format = "auto";
    std::string attr;
    std::size_t threshold = 1;
    std::string thresholds;
    bool equivalence = false;
    std::string attrs;
    bool allow_empty = false;
    bool lax = false;
    bool pretty = false;
};

int run_partition(const PartitionArgs& args) {
    const auto table = load_table(args.input, args.format, args.allow_empty);
    svis::Partition partition;
    if (args.equivalence) {
        std::vector<std::string> names = args.attrs.empty()
                                             ? table.attributes()
                                             : split_csv_list(args.attrs);
        partition = svis::partition_by_equivalence(table, names);
    } else if (!args.attr.empty()) {
        partition = svis::partition_by_relation(
            svis::tolerance_ge(table, args.attr, args.threshold));
    } else {
        const auto h = thresholds_or_ones(args.thresholds, table.attribute_count());
        const auto system = svis::induced_system(table, h, args.lax, stderr_warnings());
        std::vector<svis::Partition> columns;
        columns.reserve(system.size());
        for (std::size_t i = 0; i < system.size(); ++i)
            columns.push_back(svis::partition_by_relation(system.at(i)));
        partition = svis::joint_partition(columns);
    }
    if (args.pretty) pretty_partition(partition);
    emit(svis::partition_to_json(partition));
    return 0;
}

struct CompressArgs {
    std::string input;
    std::string format = "auto";
    std::string thresholds;
    std::string out;
    bool no_verify = false;
    bool lax = false;
    bool table_only = false;
    bool allow_empty = false;
    bool pretty = false;
};

int run_compress(const CompressArgs& args) {
    const auto table = load_table(args.input, args.format, args.allow_empty);
    if (args.table_only) {
        const auto quotient = svis::compress_table(table);
        if (args.pretty) pretty_table(quotient.table);
        Json doc;
        doc["mapping"] = svis::mapping_to_json(quotient.mapping);
        doc["table"] = svis::table_to_json(quotient.table);
        emit(doc);
        return 0;
    }
    svis::StateOptions options;
    options.lax_covering = args.lax;
    options.verify_pullback = !args.no_verify;
    options.warnings = stderr_warnings();
    const auto state = svis::make_state(
        table, thresholds_or_ones(args.thresholds, table.attribute_count()), options);
    if (!args.out.empty()) write_file(args.out, svis::save_state(state));
    if (args.pretty) pretty_partition(state.joint);
    Json doc;
    doc["mapping"] = svis::mapping_to_json(state.mapping);
    doc["image"] = svis::system_to_json(state.image);
    emit(doc);
    return 0;
}

struct ReduceArgs {
    std::string input;
    std::string format = "auto";
    std::string method = "primes";
    std::string thresholds;
    bool one = false;
    bool lax = false;
    bool allow_empty = false;
};

int run_reduce(const ReduceArgs& args) {
    const auto text = read_file(args.input);

    svis::ReductSet reducts;
    std::vector<std::vector<std::string>> clauses;
    bool infeasible = false;
    std::size_t indiscernible = 0;

    const auto rename = [](std::vector<std::vector<std::string>> lists,
                           const svis::SystemCompression& compression) {
        for (auto& list : lists) list = svis::lift_reduct(compression, list);
        return lists;
    };

    if (looks_like_state(text)) {
        const auto state = svis::load_state(text);
        const auto compression = state.system_compression();
        const auto matrix = svis::discernibility_matrix(state.image);
        const auto formula = svis::discernibility_function(matrix);
        infeasible = formula.infeasible;
        indiscernible = matrix.indiscernible_distinct_pairs();
        clauses = infeasible ? formula.clause_names()
                             : rename(formula.clause_names(), compression);
        if (args.method == "bruteforce") {
            reducts = svis::reducts_bruteforce(state.image);
        } else if (args.method == "primes") {
            reducts = svis::reducts_via_primes(formula);
        } else {
            throw svis::DomainError("unknown method '" + args.method + "'");
        }
        reducts.members = rename(std::move(reducts.members), compression);
    } else {
        const auto table = svis::parse_table(text, svis::sniff_format(text),
                                             args.allow_empty);
        const auto h = thresholds_or_ones(args.thresholds, table.attribute_count());
        const auto system = svis::induced_system(table, h, args.lax, stderr_warnings());
        const auto matrix = svis::discernibility_matrix(system);
        const auto formula = svis::discernibility_function(matrix);
        infeasible = formula.infeasible;
        indiscernible = matrix.indiscernible_distinct_pairs();
        clauses = formula.clause_names();
        if (args.method == "bruteforce") {
            reducts = svis::reducts_bruteforce(system);
        } else if (args.method == "primes") {
            reducts = svis::reducts_via_primes(formula);
        } else {
            throw svis::DomainError("unknown method '" + args.method + "'");
        }
    }

    if (args.one && !reducts.members.empty())
        reducts.members = {svis::pick_single_reduct(reducts)};

    Json doc;
    doc["reducts"] = reducts.members;
    doc["method"] = args.method;
    doc["discernibility_clauses"] = clauses;
    doc["indiscernible_pairs"] = indiscernible;
    if (infeasible)
        doc["note"] = "no reduct: some object is unrelated to itself under the "
                      "given thresholds";
    emit(doc);
    return 0;
}

struct UpdateArgs {
    std::string state_path;
    std::string out;
    bool lax = false;
    bool allow_empty = false;
    // add-attrs
    std::string add_attrs_file;
    std::string add_attrs_thresholds;
    // del-attrs
    std::string del_attrs_names;
    // add-objs
    std::string add_objs_file;
    // del-objs
    std::string del_objs_ids;
};

int run_update(const UpdateArgs& args, const std::string& which) {
    const auto state = svis::load_state(read_file(args.state_path));
    svis::StateOptions options;
    options.lax_covering = args.lax;
    options.warnings = stderr_warnings();

    svis::UpdateResult result;
    if (which == "add-attrs") {
        const auto columns = load_table(args.add_attrs_file, "auto", args.allow_empty);
        result = svis::add_attributes(
            state, columns,
            thresholds_or_ones(args.add_attrs_thresholds, columns.attribute_count()),
            options);
    } else if (which == "del-attrs") {
        result = svis::delete_attributes(state, split_csv_list(args.del_attrs_names),
                                         options);
    } else if (which == "add-objs") {
        const auto incoming = load_table(args.add_objs_file, "auto", args.allow_empty);
        result = svis::add_objects(state, incoming, options);
    } else {
        result = svis::delete_objects(state, split_csv_list(args.del_objs_ids), options);
    }

    if (!args.out.empty()) write_file(args.out, svis::save_state(result.state));
    auto doc = svis::update_report_to_json(result.report);
    doc["joint"] = svis::partition_to_json(result.state.joint);
    doc["t_table"] = svis::table_to_json(result.state.t_compressed);
    if (!args.out.empty()) doc["state_written"] = args.out;
    emit(doc);
    return 0;
}

int run_verify(const std::string& state_path) {
    const auto state = svis::load_state(read_file(state_path));
    emit(svis::batch_report_to_json(svis::verify_against_batch(state)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("SVIS_THREADS"))
        svis::set_max_threads(std::atoi(threads));

    CLI::App app{"set-valued information systems: tolerance relations, "
                 "homomorphism compression, attribute reduction, incremental updates"};
    app.require_subcommand(1);

    RelationsArgs relations_args;
    auto* relations = app.add_subcommand("relations", "build one tolerance relation");
    relations->add_option("input", relations_args.input, "table file (CSV or JSON)")
        ->required();
    relations->add_option("--format", relations_args.format, "csv|json|auto");
    relations->add_option("--kind", relations_args.kind, "ge|exact|valueset");
    relations->add_option("--attr", relations_args.attr, "attribute name");
    relations->add_option("--param", relations_args.param,
                          "threshold (ge/exact) or \"{v1,v2}\" (valueset)");
    relations->add_option("--thresholds", relations_args.thresholds,
                          "h1,...,hm for the joint relation");
    relations->add_flag("--allow-empty", relations_args.allow_empty,
                        "accept empty cells");
    relations->add_flag("--pretty", relations_args.pretty, "human table on stderr");

    PartitionArgs partition_args;
    auto* partition = app.add_subcommand("partition", "neighborhood or row-identity "
                                                      "partitions");
    partition->add_option("input", partition_args.input, "table file")->required();
    partition->add_option("--format", partition_args.format, "csv|json|auto");
    partition->add_option("--attr", partition_args.attr,
                          "partition by this attribute's relation");
    partition->add_option("--threshold", partition_args.threshold,
                          "h for --attr (default 1)");
    partition->add_option("--thresholds", partition_args.thresholds,
                          "h1,...,hm for the joint partition (default all 1)");
    partition->add_flag("--equivalence", partition_args.equivalence,
                        "row-identity partition instead");
    partition->add_option("--attrs", partition_args.attrs,
                          "attribute subset for --equivalence");
    partition->add_flag("--lax", partition_args.lax,
                        "warn instead of failing on non-covering relations");
    partition->add_flag("--allow-empty", partition_args.allow_empty, "accept empty cells");
    partition->add_flag("--pretty", partition_args.pretty, "human blocks on stderr");

    CompressArgs compress_args;
    auto* compress = app.add_subcommand("compress", "homomorphism compression");
    compress->add_option("input", compress_args.input, "table file")->required();
    compress->add_option("--format", compress_args.format, "csv|json|auto");
    compress->add_option("--thresholds", compress_args.thresholds,
                         "h1,...,hm (default all 1)");
    compress->add_option("--out", compress_args.out, "write the compression state here");
    compress->add_flag("--no-verify", compress_args.no_verify,
                       "skip the pullback round-trip check");
    compress->add_flag("--lax", compress_args.lax,
                       "warn instead of failing on non-covering relations");
    compress->add_flag("--table-only", compress_args.table_only,
                       "row-identity table compression only");
    compress->add_flag("--allow-empty", compress_args.allow_empty, "accept empty cells");
    compress->add_flag("--pretty", compress_args.pretty, "human output on stderr");

    ReduceArgs reduce_args;
    auto* reduce = app.add_subcommand("reduce", "attribute reduction");
    reduce->add_option("input", reduce_args.input, "table file or compression state")
        ->required();
    reduce->add_option("--format", reduce_args.format, "csv|json|auto");
    reduce->add_option("--method", reduce_args.method, "primes|bruteforce");
    reduce->add_option("--thresholds", reduce_args.thresholds,
                       "h1,...,hm (tables only, default all 1)");
    reduce->add_flag("--one", reduce_args.one, "emit a single deterministic reduct");
    reduce->add_flag("--lax", reduce_args.lax,
                     "warn instead of failing on non-covering relations");
    reduce->add_flag("--allow-empty", reduce_args.allow_empty, "accept empty cells");

    UpdateArgs update_args;
    auto* update = app.add_subcommand("update", "incremental edits against a state");
    update->require_subcommand(1);
    update->fallthrough();
    update->add_option("state", update_args.state_path, "compression state file")
        ->required();
    update->add_option("--out", update_args.out, "write the updated state here");
    update->add_flag("--lax", update_args.lax,
                     "warn instead of failing on non-covering relations");
    update->add_flag("--allow-empty", update_args.allow_empty, "accept empty cells");
    auto* add_attrs = update->add_subcommand("add-attrs", "append attribute columns");
    add_attrs->add_option("columns", update_args.add_attrs_file,
                          "table file with the new columns")->required();
    add_attrs->add_option("--thresholds", update_args.add_attrs_thresholds,
                          "per new attribute (default all 1)");
    auto* del_attrs = update->add_subcommand("del-attrs", "delete attributes");
    del_attrs->add_option("names", update_args.del_attrs_names, "a1,a2,...")->required();
    auto* add_objs = update->add_subcommand("add-objs", "append objects");
    add_objs->add_option("rows", update_args.add_objs_file,
                         "table file with the new rows")->required();
    auto* del_objs = update->add_subcommand("del-objs", "delete objects");
    del_objs->add_option("ids", update_args.del_objs_ids, "x1,x2,...")->required();
    for (auto* leaf : {add_attrs, del_attrs, add_objs, del_objs}) leaf->fallthrough();

    std::string verify_state;
    auto* verify = app.add_subcommand("verify", "compare a state against batch "
                                                "recomputation");
    verify->add_option("state", verify_state, "compression state file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (relations->parsed()) return run_relations(relations_args);
        if (partition->parsed()) return run_partition(partition_args);
        if (compress->parsed()) return run_compress(compress_args);
        if (reduce->parsed()) return run_reduce(reduce_args);
        if (update->parsed()) {
            std::string which;
            if (add_attrs->parsed()) which = "add-attrs";
            else if (del_attrs->parsed()) which = "del-attrs";
            else if (add_objs->parsed()) which = "add-objs";
            else which = "del-objs";
            return run_update(update_args, which);
        }
        if (verify->parsed()) return run_verify(verify_state);
    } catch (const svis::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const svis::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
