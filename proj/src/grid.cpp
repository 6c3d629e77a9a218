#include "vdc/grid.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <thread>

#include "vdc/errors.hpp"

namespace vdc {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sanitize(std::string msg) {
    for (auto& ch : msg)
        if (ch == ',' || ch == '\n' || ch == '\r')
            ch = ';';
    return msg;
}

struct Cell {
    std::int64_t c;
    std::string kernel;
    std::string scheme;
    std::uint64_t seed;
    std::int64_t M, N;
    int k;
};

std::string cell_row(const GridSpec& spec, const Cell& cell, int chain_cols) {
    const std::string id = std::to_string(cell.c) + "," + std::to_string(cell.M) + "," +
                           std::to_string(cell.N) + "," + cell.kernel + "," + cell.scheme +
                           "," + std::to_string(cell.seed) + "," + std::to_string(cell.k);
    try {
        const Modulus c = Modulus::of(cell.c);
        const Kernel K = build_kernel_by_name(cell.kernel, c, spec.kernel_seed, spec.twist_a);
        const auto alpha = cell_alpha(cell.M, cell.scheme, cell.seed, c);
        const auto beta = cell_beta(cell.N, cell.scheme, cell.seed, c);

        BoundConfig cfg;
        cfg.depth = cell.k;
        cfg.shift_cap_constant = spec.shift_cap_constant;
        cfg.search = spec.search_mode;
        cfg.sample_count = spec.sample_count;
        cfg.sample_seed = spec.sample_seed;
        cfg.alpha_mode = spec.alpha_mode;
        cfg.work_budget = spec.work_budget;
        const std::int64_t L = shift_cap(cfg, c, cell.N);

        const RatioAudit audit = ratio_audit(K, alpha, beta, cfg);
        const auto& rep = audit.theorem;

        std::string row = id + "," + std::to_string(L) + ",";
        row += rep.search_exhaustive ? "true," : "false,";
        row += fmt17(rep.lhs_abs) + "," + fmt17(rep.rhs_total) + "," + fmt17(rep.ratio) + "," +
               fmt17(audit.trivial_ratio) + ",";
        row += fmt17(rep.terms.front().value); // diag
        for (int j = 1; j <= chain_cols; ++j) {
            row += ",";
            if (j <= cell.k - 1)
                row += fmt17(rep.terms[static_cast<std::size_t>(j)].value);
        }
        row += "," + fmt17(rep.terms.back().value) + ",";
        for (std::size_t i = 0; i < rep.argmax_tuple.shifts.size(); ++i) {
            if (i)
                row += ";";
            row += std::to_string(rep.argmax_tuple.shifts[i]);
        }
        row += ","; // empty error column
        return row;
    } catch (const std::exception& e) {
        // Per-cell failure: identity columns stay, numeric columns go
        // empty, the message lands in the error column.
        std::string row = id;
        for (int j = 0; j < 9 + chain_cols; ++j)
            row += ",";
        return row + "," + sanitize(e.what());
    }
}

} // namespace

int GridSpec::kmax() const {
    int m = 1;
    for (const int k : depths)
        m = std::max(m, k);
    return m;
}

void GridSpec::validate() const {
    if (moduli.empty() || kernels.empty() || schemes.empty() || seeds.empty() ||
        mn_pairs.empty() || depths.empty())
        throw config_error("grid spec must list moduli, kernels, schemes, seeds, mn_pairs, depths");
    if (ratio_band < 1.0)
        throw config_error("ratio_band must be >= 1");
    for (const auto& [M, N] : mn_pairs) {
        if (M < 1 || N < 1)
            throw config_error("M and N must be >= 1");
        const double ratio = static_cast<double>(M) / static_cast<double>(N);
        if (ratio < 1.0 / ratio_band - 1e-12 || ratio > ratio_band + 1e-12)
            throw config_error("pair (" + std::to_string(M) + ", " + std::to_string(N) +
                               ") violates the M/N band [1/" + std::to_string(ratio_band) +
                               ", " + std::to_string(ratio_band) + "]");
    }
    for (const int k : depths)
        if (k < 1)
            throw config_error("depths must be >= 1");
    if (workers < 1)
        throw config_error("workers must be >= 1");
}

GridSpec grid_spec_from_json(const nlohmann::json& doc) {
    GridSpec spec;
    try {
        spec.moduli = doc.at("moduli").get<std::vector<std::int64_t>>();
        spec.kernels = doc.at("kernels").get<std::vector<std::string>>();
        spec.schemes = doc.at("schemes").get<std::vector<std::string>>();
        if (doc.at("seeds").is_object()) {
            const auto from = doc.at("seeds").at("from").get<std::uint64_t>();
            const auto to = doc.at("seeds").at("to").get<std::uint64_t>();
            if (to < from)
                throw config_error("seed range has to < from");
            for (std::uint64_t s = from; s <= to; ++s)
                spec.seeds.push_back(s);
        } else {
            spec.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
        }
        for (const auto& pair : doc.at("mn_pairs")) {
            if (!pair.is_array() || pair.size() != 2)
                throw config_error("mn_pairs entries must be [M, N]");
            spec.mn_pairs.emplace_back(pair[0].get<std::int64_t>(), pair[1].get<std::int64_t>());
        }
        spec.depths = doc.at("depths").get<std::vector<int>>();
        spec.shift_cap_constant = doc.value("shift_cap_constant", 1.0);
        spec.ratio_band = doc.value("ratio_band", 2.0);
        spec.work_budget = doc.value("work_budget", 10000LL);
        spec.sample_count = doc.value("sample_count", 512);
        spec.sample_seed = doc.value("sample_seed", std::uint64_t{1});
        spec.kernel_seed = doc.value("kernel_seed", std::uint64_t{1});
        spec.twist_a = doc.value("twist_a", std::int64_t{1});
        spec.workers = doc.value("workers", 1);
        spec.output_csv = doc.value("output_csv", std::string("grid.csv"));
        const std::string mode = doc.value("search_mode", std::string("exhaustive"));
        if (mode == "exhaustive")
            spec.search_mode = SearchMode::exhaustive;
        else if (mode == "sampled")
            spec.search_mode = SearchMode::sampled;
        else
            throw config_error("search_mode must be exhaustive or sampled");
        const std::string amode = doc.value("alpha_exponent_mode", std::string("as-stated"));
        if (amode == "as-stated")
            spec.alpha_mode = AlphaExponentMode::as_stated;
        else if (amode == "recomposed")
            spec.alpha_mode = AlphaExponentMode::recomposed;
        else
            throw config_error("alpha_exponent_mode must be as-stated or recomposed");
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("bad grid spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

GridSpec load_grid_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open grid spec: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("grid spec is not valid JSON: ") + e.what());
    }
    return grid_spec_from_json(doc);
}

CoefficientSequence cell_alpha(std::int64_t M, const std::string& scheme,
                               std::uint64_t seed, const Modulus& c) {
    return gen_coefficients(M, scheme_from_name(scheme), seed, c);
}

CoefficientSequence cell_beta(std::int64_t N, const std::string& scheme,
                              std::uint64_t seed, const Modulus& c) {
    return gen_coefficients(N, scheme_from_name(scheme), seed + kBetaSeedOffset, c);
}

std::string run_grid_to_csv(const GridSpec& spec) {
    spec.validate();
    const int chain_cols = spec.kmax();

    std::string header = "c,M,N,kernel,scheme,seed,k,L,search_exhaustive,lhs_abs,rhs_total,"
                         "ratio,trivial_ratio,term_diag";
    for (int j = 1; j <= chain_cols; ++j)
        header += ",term_chain_" + std::to_string(j);
    header += ",term_tail,argmax_tuple,error";

    std::vector<Cell> cells;
    for (const auto c : spec.moduli)
        for (const auto& kernel : spec.kernels)
            for (const auto& scheme : spec.schemes)
                for (const auto seed : spec.seeds)
                    for (const auto& [M, N] : spec.mn_pairs)
                        for (const int k : spec.depths)
                            cells.push_back(Cell{c, kernel, scheme, seed, M, N, k});

    std::vector<std::string> rows(cells.size());
    const int workers = std::min<int>(spec.workers, static_cast<int>(cells.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            rows[i] = cell_row(spec, cells[i], chain_cols);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells.size();
                     i = next.fetch_add(1))
                    rows[i] = cell_row(spec, cells[i], chain_cols);
            });
        }
        for (auto& t : pool)
            t.join();
    }

    std::string csv = header + "\n";
    for (const auto& row : rows)
        csv += row + "\n";
    return csv;
}

void run_grid(const GridSpec& spec, const std::string& output_override) {
    const std::string csv = run_grid_to_csv(spec);
    const std::string path = output_override.empty() ? spec.output_csv : output_override;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open for writing: " + path);
    out << csv;
    if (!out)
        throw io_error("write failed: " + path);
}

nlohmann::json audit_record(const RatioAudit& audit, std::int64_t c, std::int64_t M,
                            std::int64_t N, const std::string& kernel,
                            const std::string& scheme, std::uint64_t seed, int k,
                            std::int64_t L) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : audit.theorem.terms)
        terms.push_back({{"label", t.label}, {"value", t.value}});
    return nlohmann::json{
        {"c", c},
        {"M", M},
        {"N", N},
        {"kernel", kernel},
        {"scheme", scheme},
        {"seed", seed},
        {"k", k},
        {"L", L},
        {"search_exhaustive", audit.theorem.search_exhaustive},
        {"prefactor", audit.theorem.prefactor},
        {"terms", terms},
        {"argmax_tuple", audit.theorem.argmax_tuple.shifts},
        {"rhs_total", audit.theorem.rhs_total},
        {"lhs_abs", audit.lhs_abs},
        {"ratio", audit.theorem.ratio},
        {"trivial_bound", audit.trivial},
        {"trivial_ratio", audit.trivial_ratio},
        {"final_trivial_bound", audit.final_trivial.value},
        {"final_trivial_poisson_constant", audit.final_trivial.poisson_constant},
    };
}

} // namespace vdc
