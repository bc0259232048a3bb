#include "enemyforge/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace enemyforge {

namespace {

struct PerRun {
    std::array<std::optional<double>, kCellCount> cell_fitness;
    double wall_time = 0.0;
};

struct SortedAggregate {
    double mean = 0.0;
    double std_dev = 0.0;
    double min = 0.0;
    double max = 0.0;
    int n = 0;
};

// Order-independent aggregation: the values are sorted before summing, so
// any schedule that produced them yields bit-identical statistics.
SortedAggregate aggregate_sorted(std::vector<double>& values) {
    SortedAggregate a;
    a.n = static_cast<int>(values.size());
    if (a.n == 0) return a;
    std::sort(values.begin(), values.end());
    a.min = values.front();
    a.max = values.back();
    double sum = 0.0;
    for (double v : values) sum += v;
    a.mean = sum / a.n;
    if (a.n > 1) {
        double sq = 0.0;
        for (double v : values) sq += (v - a.mean) * (v - a.mean);
        a.std_dev = std::sqrt(sq / (a.n - 1));
    }
    return a;
}

GoalStats aggregate_goal(DifficultyGoal goal, const PerRun* runs, int n_runs) {
    GoalStats stats{};
    stats.goal = goal;
    std::vector<double> values;
    values.reserve(n_runs);
    for (int c = 0; c < kCellCount; ++c) {
        values.clear();
        for (int r = 0; r < n_runs; ++r)
            if (runs[r].cell_fitness[c]) values.push_back(*runs[r].cell_fitness[c]);
        const SortedAggregate a = aggregate_sorted(values);
        const BehaviorDescriptor d = cell_descriptor(c);
        stats.cells[c] = CellStats{d.movement, d.weapon, a.mean, a.std_dev,
                                   a.min, a.max, a.n};
    }
    values.clear();
    for (int r = 0; r < n_runs; ++r) values.push_back(runs[r].wall_time);
    const SortedAggregate t = aggregate_sorted(values);
    stats.timing = TimingStats{goal, t.mean, t.min, t.max, t.std_dev};
    return stats;
}

PerRun execute_run(const BatchConfig& config, DifficultyGoal goal, int run_index) {
    EvolutionConfig run_config = config.base_config;
    run_config.goal = goal;
    run_config.seed = deterministic_mix(config.base_seed, goal, run_index);
    const RunResult result = evolve(run_config);
    PerRun out;
    for (int c = 0; c < kCellCount; ++c)
        if (result.archive.cell(c)) out.cell_fitness[c] = result.archive.cell(c)->fitness;
    out.wall_time = result.wall_time_seconds;
    return out;
}

std::string format_run_error(double goal, int run_index, std::uint64_t seed,
                             const std::string& what) {
    std::ostringstream os;
    os << "run failed (goal " << goal << ", run " << run_index << ", seed "
       << seed << "): " << what;
    return os.str();
}

} // namespace

RunError::RunError(double goal_, int run_index_, std::uint64_t seed_,
                   const std::string& what_)
    : std::runtime_error(format_run_error(goal_, run_index_, seed_, what_)),
      goal(goal_), run_index(run_index_), seed(seed_) {}

void validate(const BatchConfig& config) {
    if (config.goals.empty()) throw ConfigInvalid("at least one goal required");
    for (const DifficultyGoal& g : config.goals)
        if (!(g.value > 0.0)) throw ConfigInvalid("difficulty goal must be positive");
    if (config.runs_per_goal < 1) throw ConfigInvalid("runs per goal must be at least 1");
    if (config.parallelism < 1) throw ConfigInvalid("parallelism must be at least 1");
    EvolutionConfig probe = config.base_config;
    probe.goal = config.goals.front();
    validate(probe);
}

std::uint64_t deterministic_mix(std::uint64_t base_seed, DifficultyGoal goal,
                                int run_index) {
    std::uint64_t z = splitmix64(base_seed);
    z = splitmix64(z ^ std::bit_cast<std::uint64_t>(goal.value));
    z = splitmix64(z ^ static_cast<std::uint64_t>(run_index));
    return z;
}

BatchResult run_batch(const BatchConfig& config) {
    validate(config);
    const int n_goals = static_cast<int>(config.goals.size());
    const int n_runs = config.runs_per_goal;
    const int total = n_goals * n_runs;

    std::vector<PerRun> runs(total);
    std::vector<std::unique_ptr<RunError>> errors(total);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) \
    num_threads(std::max(1, config.parallelism))
#endif
    for (int t = 0; t < total; ++t) {
        const int gi = t / n_runs;
        const int ri = t % n_runs;
        const DifficultyGoal goal = config.goals[gi];
        try {
            runs[t] = execute_run(config, goal, ri);
        } catch (const std::exception& ex) {
            errors[t] = std::make_unique<RunError>(
                goal.value, ri, deterministic_mix(config.base_seed, goal, ri),
                ex.what());
        }
    }

    for (const auto& err : errors)
        if (err) throw *err;

    BatchResult result;
    result.config = config;
    result.per_goal.reserve(n_goals);
    for (int gi = 0; gi < n_goals; ++gi)
        result.per_goal.push_back(
            aggregate_goal(config.goals[gi], runs.data() + gi * n_runs, n_runs));
    return result;
}

BatchResult run_batch_serial(const BatchConfig& config) {
    validate(config);
    BatchResult result;
    result.config = config;
    for (const DifficultyGoal goal : config.goals) {
        std::vector<PerRun> runs;
        runs.reserve(config.runs_per_goal);
        for (int ri = 0; ri < config.runs_per_goal; ++ri) {
            try {
                runs.push_back(execute_run(config, goal, ri));
            } catch (const std::exception& ex) {
                throw RunError(goal.value, ri,
                               deterministic_mix(config.base_seed, goal, ri),
                               ex.what());
            }
        }
        // Naive two-pass aggregation in run order.
        GoalStats stats{};
        stats.goal = goal;
        for (int c = 0; c < kCellCount; ++c) {
            double sum = 0.0, lo = 0.0, hi = 0.0;
            int n = 0;
            for (const PerRun& r : runs) {
                if (!r.cell_fitness[c]) continue;
                const double v = *r.cell_fitness[c];
                if (n == 0) {
                    lo = hi = v;
                } else {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                sum += v;
                ++n;
            }
            const double mean = n > 0 ? sum / n : 0.0;
            double sq = 0.0;
            for (const PerRun& r : runs)
                if (r.cell_fitness[c])
                    sq += (*r.cell_fitness[c] - mean) * (*r.cell_fitness[c] - mean);
            const double sd = n > 1 ? std::sqrt(sq / (n - 1)) : 0.0;
            const BehaviorDescriptor d = cell_descriptor(c);
            stats.cells[c] = CellStats{d.movement, d.weapon, mean, sd, lo, hi, n};
        }
        double tsum = 0.0, tlo = runs.front().wall_time, thi = runs.front().wall_time;
        for (const PerRun& r : runs) {
            tsum += r.wall_time;
            tlo = std::min(tlo, r.wall_time);
            thi = std::max(thi, r.wall_time);
        }
        const double tmean = tsum / runs.size();
        double tsq = 0.0;
        for (const PerRun& r : runs)
            tsq += (r.wall_time - tmean) * (r.wall_time - tmean);
        const double tsd =
            runs.size() > 1 ? std::sqrt(tsq / (runs.size() - 1)) : 0.0;
        stats.timing = TimingStats{goal, tmean, tlo, thi, tsd};
        result.per_goal.push_back(stats);
    }
    return result;
}

// --- reference comparison ---------------------------------------------------

const ReferenceEntry* ReferenceTable::find(double goal, MovementType m,
                                           WeaponType w) const {
    for (const ReferenceEntry& e : entries)
        if (std::abs(e.goal - goal) < 1e-9 && e.movement == m && e.weapon == w)
            return &e;
    return nullptr;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) {
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? ""
                                                : field.substr(b, e - b + 1));
    }
    return fields;
}

} // namespace

ReferenceTable load_reference_csv(std::istream& in) {
    ReferenceTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("reference csv: empty input");
    if (split_csv_line(line) !=
        std::vector<std::string>{"goal", "movement", "weapon", "mean", "std"})
        throw std::invalid_argument(
            "reference csv: expected header goal,movement,weapon,mean,std");
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 5)
            throw std::invalid_argument("reference csv line " +
                                        std::to_string(lineno) +
                                        ": expected 5 fields");
        try {
            table.entries.push_back(ReferenceEntry{
                std::stod(fields[0]), movement_from_string(fields[1]),
                weapon_from_string(fields[2]), std::stod(fields[3]),
                std::stod(fields[4])});
        } catch (const std::exception& ex) {
            throw std::invalid_argument("reference csv line " +
                                        std::to_string(lineno) + ": " +
                                        ex.what());
        }
    }
    return table;
}

ReferenceTable load_reference_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open reference csv: " + path);
    return load_reference_csv(in);
}

ComparisonReport compare_to_reference(const GoalStats& stats,
                                      const ReferenceTable& reference,
                                      TolerancePolicy policy) {
    ComparisonReport report{stats.goal.value, {}, 0, 0};
    for (const CellStats& cell : stats.cells) {
        const ReferenceEntry* ref =
            reference.find(stats.goal.value, cell.movement, cell.weapon);
        if (!ref)
            throw MissingCell("reference table lacks cell (" +
                              std::string(to_string(cell.movement)) + ", " +
                              std::string(to_string(cell.weapon)) +
                              ") at goal " + std::to_string(stats.goal.value));
        const double tol =
            std::max(policy.floor, policy.std_multiplier * ref->std_dev);
        const bool pass = std::abs(cell.mean - ref->mean) <= tol;
        report.cells.push_back(CellComparison{cell.movement, cell.weapon,
                                              cell.mean, ref->mean,
                                              ref->std_dev, tol, pass});
        ++(pass ? report.passed : report.failed);
    }
    return report;
}

// --- emitters -----------------------------------------------------------------

namespace {

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::string format_goal(double goal) { return format_double("%g", goal); }

} // namespace

std::string fitness_grid_csv(const GoalStats& stats, GridMode mode) {
    std::ostringstream os;
    os << "movement,barehand,sword,bow,bomb_thrower,shield,cure_spell\n";
    for (int m = 0; m < kMovementCount; ++m) {
        os << to_string(static_cast<MovementType>(m));
        for (int w = 0; w < kWeaponCount; ++w) {
            const CellStats& cell = stats.cells[m * kWeaponCount + w];
            os << ',';
            if (cell.n == 0) {
                if (mode == GridMode::report) os << "--";
            } else if (mode == GridMode::report) {
                os << format_double("%.2f", cell.mean) << "±"
                   << format_double("%.2f", cell.std_dev);
            } else {
                os << format_double("%.17g", cell.mean);
            }
        }
        os << '\n';
    }
    return os.str();
}

std::string timing_csv(const BatchResult& result) {
    std::ostringstream os;
    os << "difficulty,average,minimum,maximum,std\n";
    for (const GoalStats& g : result.per_goal) {
        os << format_goal(g.goal.value) << ','
           << format_double("%.4f", g.timing.mean) << ','
           << format_double("%.4f", g.timing.min) << ','
           << format_double("%.4f", g.timing.max) << ','
           << format_double("%.4f", g.timing.std_dev) << '\n';
    }
    return os.str();
}

nlohmann::ordered_json cell_stats_to_json(const CellStats& c) {
    nlohmann::ordered_json j;
    j["movement"] = to_string(c.movement);
    j["weapon"] = to_string(c.weapon);
    j["mean"] = c.mean;
    j["std"] = c.std_dev;
    j["min"] = c.min;
    j["max"] = c.max;
    j["n"] = c.n;
    return j;
}

nlohmann::ordered_json goal_report_json(const GoalStats& stats,
                                        const BatchConfig& config) {
    nlohmann::ordered_json j;
    j["goal"] = stats.goal.value;
    j["runs"] = config.runs_per_goal;
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const CellStats& c : stats.cells) cells.push_back(cell_stats_to_json(c));
    j["cells"] = std::move(cells);
    nlohmann::ordered_json timing;
    timing["mean"] = stats.timing.mean;
    timing["min"] = stats.timing.min;
    timing["max"] = stats.timing.max;
    timing["std"] = stats.timing.std_dev;
    j["timing"] = std::move(timing);
    j["config"] = config_to_json(config.base_config);
    j["base_seed"] = config.base_seed;
    return j;
}

} // namespace enemyforge
