#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "svis/dynamic.hpp"
#include "svis/instrumentation.hpp"

using svis::CompressionState;
using svis::StateOptions;
using svis::ThresholdVector;

using Blocks = std::vector<std::vector<std::string>>;

namespace {

Blocks blocks_of(const svis::Partition& p) { return oracle::partition_ids(p); }

CompressionState table3_state() {
    return svis::make_state(fixtures::table3(), ThresholdVector::ones(4));
}

bool same_rows(const svis::SetValuedTable& a, const svis::SetValuedTable& b) {
    if (a.object_count() != b.object_count() || a.attributes() != b.attributes())
        return false;
    for (std::size_t i = 0; i < a.object_count(); ++i) {
        const auto left = a.row_cells(i);
        const auto right = b.row_cells(i);
        if (!std::equal(left.begin(), left.end(), right.begin(), right.end()))
            return false;
    }
    return true;
}

struct BuildScope {
    BuildScope() {
        svis::instrumentation::enable(true);
        svis::instrumentation::reset();
    }
    ~BuildScope() {
        svis::instrumentation::enable(false);
        svis::instrumentation::reset();
    }
};

}  // namespace

TEST_CASE("batch state of the 8x4 fixture") {
    const auto state = table3_state();
    CHECK(blocks_of(state.joint) ==
          Blocks{{"x1", "x7"}, {"x2", "x4"}, {"x3"}, {"x5", "x6", "x8"}});
    CHECK(state.relation_partitions.size() == 4);
    CHECK(state.image.universe().size() == 4);
    CHECK(blocks_of(state.t_partition) ==
          Blocks{{"x1", "x7"}, {"x2"}, {"x3"}, {"x4"}, {"x5"}, {"x6", "x8"}});
    CHECK(svis::verify_against_batch(state).all_equal);
}

TEST_CASE("adding the a5 column reuses the stored columns") {
    const auto state = table3_state();

    BuildScope scope;
    const auto result = svis::add_attributes(state, fixtures::column_a5(),
                                             ThresholdVector::ones(1));
    const auto builds = svis::instrumentation::relation_builds();
    for (const auto& build : builds) {
        if (build.purpose != "column") continue;
        CHECK(build.attribute == "a5");  // old partition columns stay untouched
    }
    CHECK(std::count_if(builds.begin(), builds.end(), [](const auto& b) {
              return b.purpose == "column";
          }) == 1);

    CHECK(result.state.table == fixtures::table6());
    CHECK(blocks_of(result.state.relation_partitions[4]) ==
          Blocks{{"x1", "x2", "x3", "x4", "x5", "x6", "x7"}, {"x8"}});
    CHECK(blocks_of(result.state.joint) ==
          Blocks{{"x1", "x7"}, {"x2", "x4"}, {"x3"}, {"x5", "x6"}, {"x8"}});
    CHECK(result.state.thresholds == ThresholdVector::ones(5));
    CHECK(svis::verify_against_batch(result.state).all_equal);
    CHECK(result.state == svis::make_state(fixtures::table6(), ThresholdVector::ones(5)));

    // the old y4 block {x5,x6,x8} split into {x5,x6} and {x8}
    bool found = false;
    for (const auto& c : result.report.image_correspondence)
        if (c.from == "y4") {
            found = true;
            CHECK(c.to == std::vector<std::string>{"y4", "y5"});
        }
    CHECK(found);
}

TEST_CASE("adding a one-block column changes nothing but the column list") {
    const auto state = table3_state();
    // every cell shares the token, so the new relation is full
    std::vector<svis::Row> rows;
    for (const auto& id : state.table.objects())
        rows.push_back(svis::Row{id, {svis::ValueSet({"c"})}});
    const svis::SetValuedTable column({"a9"}, rows);
    const auto result = svis::add_attributes(state, column, ThresholdVector::ones(1));
    CHECK(result.state.joint == state.joint);
    CHECK(result.state.mapping == state.mapping);
    CHECK(svis::verify_against_batch(result.state).all_equal);
}

TEST_CASE("add_attributes validation") {
    const auto state = table3_state();
    CHECK_THROWS_AS(svis::add_attributes(state, fixtures::column_a5(),
                                         ThresholdVector::ones(2)),
                    svis::DomainError);
    // name collision
    std::vector<svis::Row> rows;
    for (const auto& id : state.table.objects())
        rows.push_back(svis::Row{id, {svis::ValueSet({"c"})}});
    CHECK_THROWS_AS(svis::add_attributes(state, svis::SetValuedTable({"a1"}, rows),
                                         ThresholdVector::ones(1)),
                    svis::DomainError);
    // missing row
    std::vector<svis::Row> short_rows(rows.begin(), rows.end() - 1);
    CHECK_THROWS_AS(svis::add_attributes(state,
                                         svis::SetValuedTable({"a9"}, short_rows),
                                         ThresholdVector::ones(1)),
                    svis::DomainError);
}

TEST_CASE("deleting a1 re-intersects the remaining columns") {
    const auto state = table3_state();
    BuildScope scope;
    const auto result = svis::delete_attributes(state, {"a1"});
    for (const auto& build : svis::instrumentation::relation_builds())
        CHECK(build.purpose != "column");  // nothing rebuilt at full scale
    CHECK(result.state.table == fixtures::table9());
    CHECK(blocks_of(result.state.joint) ==
          Blocks{{"x1", "x7"}, {"x2", "x3", "x4"}, {"x5", "x6", "x8"}});
    CHECK(svis::verify_against_batch(result.state).all_equal);
    CHECK(result.state ==
          svis::make_state(fixtures::table9(), ThresholdVector::ones(3)));
}

TEST_CASE("deleting a one-block column keeps the joint") {
    const auto state = table3_state();
    const auto result = svis::delete_attributes(state, {"a3"});
    CHECK(result.state.joint == state.joint);
    CHECK(svis::verify_against_batch(result.state).all_equal);
}

TEST_CASE("delete_attributes validation") {
    const auto state = table3_state();
    CHECK_THROWS_AS(svis::delete_attributes(state, {"zz"}), svis::DomainError);
    CHECK_THROWS_AS(svis::delete_attributes(state, {"a1", "a1"}), svis::DomainError);
    CHECK_THROWS_AS(svis::delete_attributes(state, {"a1", "a2", "a3", "a4"}),
                    svis::DomainError);
}

TEST_CASE("object addition walks the staged pipeline") {
    const auto state = svis::make_state(fixtures::table11(), ThresholdVector::ones(3));
    CHECK(state.t_compressed == fixtures::table12());

    const auto result = svis::add_objects(state, fixtures::table13());
    REQUIRE(result.report.incoming_compressed.has_value());
    REQUIRE(result.report.merged.has_value());
    CHECK(*result.report.incoming_compressed == fixtures::table15());
    CHECK(*result.report.merged == fixtures::table16());
    CHECK(result.state.t_compressed == fixtures::table17());
    CHECK(result.state.table == fixtures::table14());
    CHECK(blocks_of(result.state.t_partition) ==
          Blocks{{"x1", "x2"}, {"x3", "x4", "x9", "x10"}, {"x5", "x6"}, {"x7", "x8"}});
    CHECK(svis::verify_against_batch(result.state).all_equal);
    CHECK(result.state ==
          svis::make_state(fixtures::table14(), ThresholdVector::ones(3)));
    CHECK(same_rows(result.state.t_compressed,
                    svis::compress_table(fixtures::table14()).table));
}

TEST_CASE("adding rows identical to stored ones keeps the quotient rows") {
    const auto state = svis::make_state(fixtures::table11(), ThresholdVector::ones(3));
    std::vector<svis::Row> rows;
    for (std::size_t i = 0; i < 2; ++i) {
        const auto cells = state.table.row_cells(i);
        rows.push_back(svis::Row{"w" + std::to_string(i + 1),
                                 {cells.begin(), cells.end()}});
    }
    const svis::SetValuedTable incoming(state.table.attributes(), rows);
    const auto result = svis::add_objects(state, incoming);
    CHECK(same_rows(result.state.t_compressed, state.t_compressed));
    CHECK(svis::verify_against_batch(result.state).all_equal);
}

TEST_CASE("add_objects validation") {
    const auto state = svis::make_state(fixtures::table11(), ThresholdVector::ones(3));
    CHECK_THROWS_AS(svis::add_objects(state, fixtures::table9()), svis::DomainError);
    // id collision
    std::vector<svis::Row> rows;
    const auto cells = state.table.row_cells(0);
    rows.push_back(svis::Row{"x1", {cells.begin(), cells.end()}});
    CHECK_THROWS_AS(
        svis::add_objects(state, svis::SetValuedTable(state.table.attributes(), rows)),
        svis::DomainError);
}

TEST_CASE("object deletion cancels exactly the fully-deleted classes") {
    const auto base = svis::make_state(fixtures::table11(), ThresholdVector::ones(3));
    const auto grown = svis::add_objects(base, fixtures::table13());

    const auto result = svis::delete_objects(grown.state, {"x1", "x2", "x3"});
    CHECK(result.report.cancelled == std::vector<std::string>{"y1"});
    CHECK(result.state.table == fixtures::table19());
    CHECK(result.state.t_compressed == fixtures::table20());
    CHECK(svis::verify_against_batch(result.state).all_equal);
    CHECK(result.state ==
          svis::make_state(fixtures::table19(), ThresholdVector::ones(3)));

    // survivors keep their stored row content, re-indexed in order
    for (const auto& c : result.report.t_correspondence) {
        if (c.from == "y1") CHECK(c.to.empty());
        if (c.from == "y2") CHECK(c.to == std::vector<std::string>{"y1"});
        if (c.from == "y4") CHECK(c.to == std::vector<std::string>{"y3"});
    }

    // class containment: each deleted class sits inside its full class
    const auto deleted_classes = oracle::row_identity_partition(
        fixtures::table18(), fixtures::table18().attributes());
    CHECK(deleted_classes ==
          Blocks{{"x1", "x2"}, {"x3"}});
}

TEST_CASE("deleting nothing returns the state unchanged") {
    const auto state = table3_state();
    const auto result = svis::delete_objects(state, {});
    CHECK(result.state == state);
}

TEST_CASE("delete_objects validation") {
    const auto state = table3_state();
    CHECK_THROWS_AS(svis::delete_objects(state, {"zz"}), svis::DomainError);
    CHECK_THROWS_AS(svis::delete_objects(state, state.table.objects()),
                    svis::DomainError);
}

TEST_CASE("states round-trip through the envelope") {
    const auto state = table3_state();
    const auto restored = svis::load_state(svis::save_state(state));
    CHECK(restored == state);

    const auto grown = svis::add_attributes(state, fixtures::column_a5(),
                                            ThresholdVector::ones(1));
    CHECK(grown.state.relation_partitions.size() == 5);
    CHECK(svis::load_state(svis::save_state(grown.state)) == grown.state);

    const auto fresh = svis::make_state(fixtures::parse_csv("object,a\nx,\"{v}\"\n"),
                                        ThresholdVector::ones(1));
    CHECK(svis::load_state(svis::save_state(fresh)) == fresh);
}

TEST_CASE("load_state rejects bad envelopes") {
    CHECK_THROWS_AS(svis::load_state("not json"), svis::ParseError);
    CHECK_THROWS_AS(svis::load_state("{}"), svis::ParseError);
    auto text = svis::save_state(table3_state());
    const auto versioned = text.find("\"version\":1");
    REQUIRE(versioned != std::string::npos);
    text.replace(versioned, 11, "\"version\":9");
    CHECK_THROWS_AS(svis::load_state(text), svis::ParseError);
}

TEST_CASE("incremental equals batch over random edit sequences") {
    std::mt19937_64 rng(31337);
    int fresh_attr = 100;
    int fresh_object = 100;
    for (int sequence = 0; sequence < 25; ++sequence) {
        auto table = oracle::random_table(rng, {8, 3, 4});
        auto state = svis::make_state(table, ThresholdVector::ones(table.attribute_count()));
        const int edits = std::uniform_int_distribution<int>(1, 6)(rng);
        for (int e = 0; e < edits; ++e) {
            switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
                case 0: {  // add a fresh column
                    std::vector<svis::Row> rows;
                    std::uniform_int_distribution<int> coin(0, 2);
                    for (const auto& id : state.table.objects()) {
                        std::vector<std::string> tokens{"v" + std::to_string(coin(rng))};
                        if (coin(rng) == 0) tokens.push_back("v3");
                        rows.push_back(svis::Row{id, {svis::ValueSet(tokens)}});
                    }
                    const svis::SetValuedTable column(
                        {"b" + std::to_string(fresh_attr++)}, rows);
                    state = svis::add_attributes(state, column,
                                                 ThresholdVector::ones(1)).state;
                    break;
                }
                case 1: {  // delete one column if two remain
                    if (state.table.attribute_count() < 2) break;
                    std::uniform_int_distribution<std::size_t> pick(
                        0, state.table.attribute_count() - 1);
                    state = svis::delete_attributes(
                                state, {state.table.attributes()[pick(rng)]}).state;
                    break;
                }
                case 2: {  // append fresh objects with random rows
                    std::vector<svis::Row> rows;
                    const int count = std::uniform_int_distribution<int>(1, 3)(rng);
                    std::uniform_int_distribution<int> coin(0, 2);
                    for (int k = 0; k < count; ++k) {
                        svis::Row row{"z" + std::to_string(fresh_object++), {}};
                        for (std::size_t j = 0; j < state.table.attribute_count(); ++j) {
                            std::vector<std::string> tokens{"v" + std::to_string(coin(rng))};
                            if (coin(rng) == 0) tokens.push_back("v" + std::to_string(coin(rng)));
                            row.cells.push_back(svis::ValueSet(tokens));
                        }
                        rows.push_back(std::move(row));
                    }
                    state = svis::add_objects(
                                state, svis::SetValuedTable(state.table.attributes(), rows))
                                .state;
                    break;
                }
                default: {  // delete a random proper subset of objects
                    if (state.table.object_count() < 2) break;
                    std::vector<std::string> victims;
                    std::uniform_int_distribution<int> coin(0, 2);
                    for (const auto& id : state.table.objects())
                        if (coin(rng) == 0 &&
                            victims.size() + 1 < state.table.object_count())
                            victims.push_back(id);
                    if (victims.empty()) break;
                    state = svis::delete_objects(state, victims).state;
                    break;
                }
            }
            CHECK(svis::verify_against_batch(state).all_equal);
        }
        CHECK(state == svis::make_state(state.table, state.thresholds));
    }
}
