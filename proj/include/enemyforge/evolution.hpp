#ifndef ENEMYFORGE_EVOLUTION_HPP
#define ENEMYFORGE_EVOLUTION_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "enemyforge/difficulty.hpp"
#include "enemyforge/genotype.hpp"
#include "enemyforge/rng.hpp"

namespace enemyforge {

struct ConfigInvalid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SeedExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyArchive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Elite {
    EnemyGenotype genotype;
    double fitness;
    int generation_found; // 0 for the seeding phase

    bool operator==(const Elite&) const = default;
};

enum class InsertOutcome { inserted, replaced, rejected };

inline constexpr int kCellCount = kMovementCount * kWeaponCount;

constexpr int cell_index(MovementType m, WeaponType w) noexcept {
    return ordinal(m) * kWeaponCount + ordinal(w);
}
constexpr int cell_index(BehaviorDescriptor d) noexcept {
    return cell_index(d.movement, d.weapon);
}
constexpr BehaviorDescriptor cell_descriptor(int index) noexcept {
    return {static_cast<MovementType>(index / kWeaponCount),
            static_cast<WeaponType>(index % kWeaponCount)};
}

// 7x6 grid holding at most one elite per (movement, weapon) cell. Cells are
// stored row-major, movement-major, matching the export order. Per-cell
// fitness never increases: a candidate replaces the incumbent only on a
// strict improvement, ties keep the incumbent.
class Archive {
public:
    explicit Archive(DifficultyGoal goal) : goal_(goal) {}

    InsertOutcome insert(const EnemyGenotype& e, int generation) {
        const int idx = cell_index(descriptor(e));
        const double f = enemyforge::fitness(e, goal_);
        std::optional<Elite>& cell = cells_[idx];
        if (!cell) {
            cell = Elite{e, f, generation};
            return InsertOutcome::inserted;
        }
        if (f < cell->fitness) {
            cell = Elite{e, f, generation};
            return InsertOutcome::replaced;
        }
        return InsertOutcome::rejected;
    }

    const std::optional<Elite>& cell(int index) const { return cells_[index]; }
    const std::optional<Elite>& cell(MovementType m, WeaponType w) const {
        return cells_[cell_index(m, w)];
    }

    DifficultyGoal goal() const { return goal_; }

    int occupied_count() const {
        int n = 0;
        for (const auto& c : cells_)
            if (c) ++n;
        return n;
    }

    // Sum of per-cell fitness over occupied cells; lower is better under
    // distance minimization.
    double qd_score() const {
        double s = 0.0;
        for (const auto& c : cells_)
            if (c) s += c->fitness;
        return s;
    }

    bool operator==(const Archive&) const = default;

private:
    DifficultyGoal goal_;
    std::array<std::optional<Elite>, kCellCount> cells_{};
};

struct EvolutionConfig {
    DifficultyGoal goal{};
    int generations = 500;
    int initial_population = 35;    // occupied cells required after seeding
    int intermediate_population = 100; // offspring per generation
    double mutation_rate = 0.20;
    double gene_mutation_rate = 0.30;
    int tournament_size = 2;
    double blx_alpha = 0.5;
    std::uint64_t seed = 0;
    int max_seed_attempts = 10000;
};

// Throws ConfigInvalid with the violated field named.
void validate(const EvolutionConfig& config);

struct RunResult {
    Archive archive;
    double wall_time_seconds; // generation process only, monotonic clock
    std::int64_t evaluations; // seed draws + generations * intermediate_population
    std::uint64_t seed;
    EvolutionConfig config;
};

// Draws random enemies with elitist insertion until `initial_population`
// cells are occupied, or throws SeedExhausted after max_seed_attempts
// draws. Repeated descriptor collisions are why this can take more draws
// than cells. `draws_out`, when given, receives the number of draws (one
// fitness evaluation each).
Archive seed_archive(const EvolutionConfig& config, Rng& rng,
                     std::int64_t* draws_out = nullptr);

// Best of k occupied cells sampled uniformly without replacement (with
// replacement when fewer than k are occupied). Ties break toward the lower
// (movement, weapon) ordinal. Throws EmptyArchive on an empty archive.
const Elite& tournament_select(const Archive& archive, int k, Rng& rng);

// Fixed single point at the behavior/weapon segment boundary, then BLX-a:
// every numeric gene of each child is redrawn uniformly from the parents'
// interval expanded by alpha times its width and clipped to the attribute
// range; integer genes round to nearest. Nominal genes are untouched by the
// blend, so the children land in the cells (a.movement, b.weapon) and
// (b.movement, a.weapon).
std::pair<EnemyGenotype, EnemyGenotype> crossover(const EnemyGenotype& a,
                                                  const EnemyGenotype& b,
                                                  double alpha, Rng& rng);

// With probability mutation_rate, redraw each of the 9 genes independently
// with probability gene_mutation_rate from its full range / value list.
EnemyGenotype mutate(const EnemyGenotype& e, double mutation_rate,
                     double gene_mutation_rate, Rng& rng);

// Called after each generation's offspring have been inserted.
using GenerationObserver = std::function<void(int generation, const Archive&)>;

// Full run: seed, then `generations` iterations each breeding an
// intermediate population from tournament-selected parents (crossover at
// 100% rate, then mutation) and inserting every offspring with elitism.
// Deterministic given config.seed.
RunResult evolve(const EvolutionConfig& config,
                 const GenerationObserver& observer = {});

// Export: {goal, seed, cells:[{movement, weapon, occupied, elite?} x42]} in
// row-major movement-major order. Elites with fitness above
// export_threshold are excluded and their cells flagged as filtered.
nlohmann::ordered_json archive_to_json(
    const Archive& archive, std::uint64_t seed,
    double export_threshold = std::numeric_limits<double>::infinity());

nlohmann::ordered_json config_to_json(const EvolutionConfig& config);

} // namespace enemyforge

#endif
