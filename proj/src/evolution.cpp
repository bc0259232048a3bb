#include "enemyforge/evolution.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <vector>

namespace enemyforge {

namespace {

// Numeric genes in genotype order; nominal genes are excluded from the
// blend step.
constexpr std::array<Attr, 7> kNumericAttrs{
    Attr::health,         Attr::damage,      Attr::attack_speed,
    Attr::movement_speed, Attr::active_time, Attr::rest_time,
    Attr::projectile_speed};

int occupied_cells(const Archive& archive, std::array<int, kCellCount>& out) {
    int n = 0;
    for (int i = 0; i < kCellCount; ++i)
        if (archive.cell(i)) out[n++] = i;
    return n;
}

// Tournament over a pre-built occupied-cell list; returns the winning cell
// index. Sampling is a partial Fisher-Yates when the pool is large enough,
// otherwise k draws with replacement.
int tournament_cell(const Archive& archive, std::array<int, kCellCount>& pool,
                    int pool_size, int k, Rng& rng) {
    int best_cell = -1;
    double best_fitness = std::numeric_limits<double>::infinity();
    const auto consider = [&](int cell) {
        const double f = archive.cell(cell)->fitness;
        if (f < best_fitness || (f == best_fitness && cell < best_cell)) {
            best_fitness = f;
            best_cell = cell;
        }
    };
    if (pool_size >= k) {
        for (int t = 0; t < k; ++t) {
            const int j = rng.uniform_int(t, pool_size - 1);
            std::swap(pool[t], pool[j]);
            consider(pool[t]);
        }
    } else {
        for (int t = 0; t < k; ++t)
            consider(pool[rng.uniform_int(0, pool_size - 1)]);
    }
    return best_cell;
}

} // namespace

void validate(const EvolutionConfig& config) {
    const auto fail = [](const std::string& what) { throw ConfigInvalid(what); };
    if (!(config.goal.value > 0.0)) fail("difficulty goal must be positive");
    if (config.generations <= 0) fail("generations must be positive");
    if (config.initial_population <= 0) fail("initial population must be positive");
    if (config.intermediate_population <= 0) fail("intermediate population must be positive");
    if (config.mutation_rate < 0.0 || config.mutation_rate > 1.0)
        fail("mutation rate must be in [0,1]");
    if (config.gene_mutation_rate < 0.0 || config.gene_mutation_rate > 1.0)
        fail("gene mutation rate must be in [0,1]");
    if (config.tournament_size < 2) fail("tournament size must be at least 2");
    if (config.blx_alpha < 0.0) fail("blx alpha must be non-negative");
    if (config.max_seed_attempts <= 0) fail("max seed attempts must be positive");
}

Archive seed_archive(const EvolutionConfig& config, Rng& rng,
                     std::int64_t* draws_out) {
    Archive archive(config.goal);
    std::int64_t draws = 0;
    int occupied = 0;
    while (occupied < config.initial_population) {
        if (draws >= config.max_seed_attempts) {
            if (draws_out) *draws_out = draws;
            throw SeedExhausted(
                "seeding stopped at " + std::to_string(draws) + " draws with " +
                std::to_string(occupied) + "/" +
                std::to_string(config.initial_population) + " cells occupied");
        }
        if (archive.insert(random_enemy(rng), 0) == InsertOutcome::inserted)
            ++occupied;
        ++draws;
    }
    if (draws_out) *draws_out = draws;
    return archive;
}

const Elite& tournament_select(const Archive& archive, int k, Rng& rng) {
    std::array<int, kCellCount> pool;
    const int n = occupied_cells(archive, pool);
    if (n == 0) throw EmptyArchive("tournament selection on an empty archive");
    const int cell = tournament_cell(archive, pool, n, k, rng);
    return *archive.cell(cell);
}

std::pair<EnemyGenotype, EnemyGenotype> crossover(const EnemyGenotype& a,
                                                  const EnemyGenotype& b,
                                                  double alpha, Rng& rng) {
    EnemyGenotype c1 = a;
    c1.weapon_type = b.weapon_type;
    c1.projectile_speed = b.projectile_speed;
    EnemyGenotype c2 = b;
    c2.weapon_type = a.weapon_type;
    c2.projectile_speed = a.projectile_speed;

    for (Attr g : kNumericAttrs) {
        const double p = std::min(numeric_gene(a, g), numeric_gene(b, g));
        const double q = std::max(numeric_gene(a, g), numeric_gene(b, g));
        const double r = q - p;
        const AttributeSpec& spec = attribute_spec(g);
        const double lo = std::max(spec.lower, p - alpha * r);
        const double hi = std::min(spec.upper, q + alpha * r);
        set_numeric_gene(c1, g, rng.uniform_real(lo, hi));
        set_numeric_gene(c2, g, rng.uniform_real(lo, hi));
    }
    return {c1, c2};
}

EnemyGenotype mutate(const EnemyGenotype& e, double mutation_rate,
                     double gene_mutation_rate, Rng& rng) {
    if (!rng.bernoulli(mutation_rate)) return e;
    EnemyGenotype out = e;
    for (int g = 0; g < kGeneCount; ++g)
        if (rng.bernoulli(gene_mutation_rate))
            redraw_gene(out, static_cast<Attr>(g), rng);
    return out;
}

RunResult evolve(const EvolutionConfig& config,
                 const GenerationObserver& observer) {
    validate(config);
    Rng rng(config.seed);

    const auto start = std::chrono::steady_clock::now();

    std::int64_t seed_draws = 0;
    Archive archive = seed_archive(config, rng, &seed_draws);

    std::array<int, kCellCount> pool;
    std::vector<EnemyGenotype> offspring;
    offspring.reserve(config.intermediate_population);

    for (int gen = 1; gen <= config.generations; ++gen) {
        // Parents come from the archive as it stands at the start of the
        // generation; offspring only compete once the batch is complete.
        const int n = occupied_cells(archive, pool);
        offspring.clear();
        while (static_cast<int>(offspring.size()) < config.intermediate_population) {
            const int p1 = tournament_cell(archive, pool, n, config.tournament_size, rng);
            int p2 = tournament_cell(archive, pool, n, config.tournament_size, rng);
            if (n >= 2) {
                for (int attempt = 0; p2 == p1 && attempt < 100; ++attempt)
                    p2 = tournament_cell(archive, pool, n, config.tournament_size, rng);
            }
            auto [c1, c2] = crossover(archive.cell(p1)->genotype,
                                      archive.cell(p2)->genotype,
                                      config.blx_alpha, rng);
            c1 = mutate(c1, config.mutation_rate, config.gene_mutation_rate, rng);
            c2 = mutate(c2, config.mutation_rate, config.gene_mutation_rate, rng);
            offspring.push_back(c1);
            if (static_cast<int>(offspring.size()) < config.intermediate_population)
                offspring.push_back(c2);
        }
        for (const EnemyGenotype& child : offspring)
            archive.insert(child, gen);
        if (observer) observer(gen, archive);
    }

    const auto stop = std::chrono::steady_clock::now();

    RunResult result{archive, std::chrono::duration<double>(stop - start).count(),
                     seed_draws + static_cast<std::int64_t>(config.generations) *
                                      config.intermediate_population,
                     config.seed, config};
    return result;
}

nlohmann::ordered_json archive_to_json(const Archive& archive,
                                       std::uint64_t seed,
                                       double export_threshold) {
    nlohmann::ordered_json j;
    j["goal"] = archive.goal().value;
    j["seed"] = seed;
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (int i = 0; i < kCellCount; ++i) {
        const BehaviorDescriptor d = cell_descriptor(i);
        nlohmann::ordered_json cell;
        cell["movement"] = to_string(d.movement);
        cell["weapon"] = to_string(d.weapon);
        const std::optional<Elite>& elite = archive.cell(i);
        const bool filtered = elite && elite->fitness > export_threshold;
        cell["occupied"] = elite.has_value() && !filtered;
        if (filtered) cell["filtered"] = true;
        if (elite && !filtered) {
            nlohmann::ordered_json ej = enemy_to_json(elite->genotype);
            ej["fitness"] = elite->fitness;
            ej["generation_found"] = elite->generation_found;
            cell["elite"] = std::move(ej);
        }
        cells.push_back(std::move(cell));
    }
    j["cells"] = std::move(cells);
    return j;
}

nlohmann::ordered_json config_to_json(const EvolutionConfig& config) {
    nlohmann::ordered_json j;
    j["goal"] = config.goal.value;
    j["generations"] = config.generations;
    j["initial_population"] = config.initial_population;
    j["intermediate_population"] = config.intermediate_population;
    j["mutation_rate"] = config.mutation_rate;
    j["gene_mutation_rate"] = config.gene_mutation_rate;
    j["tournament_size"] = config.tournament_size;
    j["blx_alpha"] = config.blx_alpha;
    j["seed"] = config.seed;
    j["max_seed_attempts"] = config.max_seed_attempts;
    return j;
}

} // namespace enemyforge
