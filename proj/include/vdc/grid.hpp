#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "vdc/bound_engine.hpp"

namespace vdc {

// One sweep over the parameter lattice. Rows are emitted per
// (c, kernel, scheme, seed, (M, N), k) cell, iterated in exactly that
// nesting order.
struct GridSpec {
    std::vector<std::int64_t> moduli;
    std::vector<std::string> kernels;
    std::vector<std::string> schemes;
    std::vector<std::uint64_t> seeds;
    std::vector<std::pair<std::int64_t, std::int64_t>> mn_pairs;
    std::vector<int> depths;
    double shift_cap_constant = 1.0;
    double ratio_band = 2.0; // every pair needs 1/band <= M/N <= band
    SearchMode search_mode = SearchMode::exhaustive;
    int sample_count = 512;
    std::uint64_t sample_seed = 1;
    long long work_budget = 10000;
    AlphaExponentMode alpha_mode = AlphaExponentMode::as_stated;
    std::uint64_t kernel_seed = 1;
    std::int64_t twist_a = 1;
    int workers = 1;
    std::string output_csv = "grid.csv";

    int kmax() const;
    void validate() const; // throws config_error on band violations etc.
};

GridSpec grid_spec_from_json(const nlohmann::json& doc);
GridSpec load_grid_spec(const std::string& path);

// The beta sequence of a cell is seeded with seed + this offset, so alpha
// and beta draws are independent but still a pure function of the cell.
inline constexpr std::uint64_t kBetaSeedOffset = 0x9E3779B97F4A7C15ULL;

// Builds the alpha/beta pair for one cell.
CoefficientSequence cell_alpha(std::int64_t M, const std::string& scheme,
                               std::uint64_t seed, const Modulus& c);
CoefficientSequence cell_beta(std::int64_t N, const std::string& scheme,
                              std::uint64_t seed, const Modulus& c);

// Full CSV text, header included. Deterministic byte-for-byte for a fixed
// spec, independent of the worker count.
std::string run_grid_to_csv(const GridSpec& spec);

// Runs the sweep and writes the CSV to spec.output_csv (or the override).
void run_grid(const GridSpec& spec, const std::string& output_override = "");

// JSON record mirroring the BoundReport plus the trivial-bound comparison,
// as emitted by the single-audit CLI.
nlohmann::json audit_record(const RatioAudit& audit, std::int64_t c, std::int64_t M,
                            std::int64_t N, const std::string& kernel,
                            const std::string& scheme, std::uint64_t seed, int k,
                            std::int64_t L);

} // namespace vdc
