// Compares the serial reference kernels against the OpenMP ones on random
// tables and reports timings plus an equality check of the outputs.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svis/kernels.hpp"
#include "svis/relation.hpp"
#include "svis/table.hpp"

namespace {

using Clock = std::chrono::steady_clock;

svis::SetValuedTable random_table(std::size_t objects, std::size_t attributes,
                                  std::size_t domain, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> cell_size(1, std::min<std::size_t>(4, domain));
    std::uniform_int_distribution<std::size_t> pick(0, domain - 1);
    std::vector<std::string> attrs;
    for (std::size_t j = 0; j < attributes; ++j) attrs.push_back("a" + std::to_string(j + 1));
    std::vector<svis::Row> rows;
    for (std::size_t i = 0; i < objects; ++i) {
        svis::Row row{"x" + std::to_string(i + 1), {}};
        for (std::size_t j = 0; j < attributes; ++j) {
            std::vector<std::string> tokens;
            const auto k = cell_size(rng);
            for (std::size_t t = 0; t < k; ++t) tokens.push_back("v" + std::to_string(pick(rng)));
            row.cells.push_back(svis::ValueSet(std::move(tokens)));
        }
        rows.push_back(std::move(row));
    }
    return svis::SetValuedTable(std::move(attrs), std::move(rows));
}

template <typename F>
double time_ms(F&& f, int trials) {
    double best = 1e300;
    for (int t = 0; t < trials; ++t) {
        const auto start = Clock::now();
        f();
        const auto stop = Clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t objects = 1024;
    std::size_t attributes = 6;
    std::size_t domain = 16;
    int trials = 3;
    int threads = 0;
    std::uint64_t seed = 7;

    CLI::App app{"serial vs OpenMP kernel benchmark"};
    app.add_option("--objects", objects, "universe size");
    app.add_option("--attrs", attributes, "attribute count");
    app.add_option("--values", domain, "value domain size per attribute");
    app.add_option("--trials", trials, "trials per kernel (best-of)");
    app.add_option("--threads", threads, "cap OpenMP threads (0 = runtime default)");
    app.add_option("--seed", seed, "rng seed");
    CLI11_PARSE(app, argc, argv);

    if (threads > 0) svis::set_max_threads(threads);
    const auto table = random_table(objects, attributes, domain, seed);

    std::printf("%-24s %10s %12s %12s %8s %6s\n", "kernel", "n", "serial(ms)",
                "openmp(ms)", "speedup", "equal");

    std::vector<svis::Relation> relations;
    {
        const auto cells = table.column_cells(0);
        const auto column = svis::EncodedColumn::build(cells);
        std::vector<svis::Bitset> serial_rows, parallel_rows;
        const auto serial_ms =
            time_ms([&] { serial_rows = svis::min_intersection_rows_serial(column, 1); },
                    trials);
        const auto parallel_ms =
            time_ms([&] { parallel_rows = svis::min_intersection_rows(column, 1); },
                    trials);
        std::printf("%-24s %10zu %12.2f %12.2f %8.2f %6s\n", "tolerance_rows(ge)",
                    objects, serial_ms, parallel_ms, serial_ms / parallel_ms,
                    serial_rows == parallel_rows ? "yes" : "NO");
    }
    {
        const auto cells = table.column_cells(0);
        const auto column = svis::EncodedColumn::build(cells);
        std::vector<svis::Bitset> serial_rows, parallel_rows;
        const auto serial_ms = time_ms(
            [&] { serial_rows = svis::exact_intersection_rows_serial(column, 1); },
            trials);
        const auto parallel_ms = time_ms(
            [&] { parallel_rows = svis::exact_intersection_rows(column, 1); }, trials);
        std::printf("%-24s %10zu %12.2f %12.2f %8.2f %6s\n", "tolerance_rows(exact)",
                    objects, serial_ms, parallel_ms, serial_ms / parallel_ms,
                    serial_rows == parallel_rows ? "yes" : "NO");
    }
    for (std::size_t j = 0; j < attributes; ++j)
        relations.push_back(svis::tolerance_ge(table, table.attributes()[j], 1));
    {
        std::vector<std::uint64_t> serial_masks, parallel_masks;
        const auto serial_ms = time_ms(
            [&] { serial_masks = svis::discernibility_masks_serial(relations); }, trials);
        const auto parallel_ms =
            time_ms([&] { parallel_masks = svis::discernibility_masks(relations); },
                    trials);
        std::printf("%-24s %10zu %12.2f %12.2f %8.2f %6s\n", "discernibility_masks",
                    objects, serial_ms, parallel_ms, serial_ms / parallel_ms,
                    serial_masks == parallel_masks ? "yes" : "NO");
    }
    return 0;
}
