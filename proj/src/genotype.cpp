#include "enemyforge/genotype.hpp"

#include <cmath>
#include <stdexcept>

namespace enemyforge {

namespace {

constexpr std::array<std::string_view, kMovementCount> kMovementNames{
    "None", "Random", "Random1D", "Flee", "Flee1D", "Follow", "Follow1D"};

constexpr std::array<std::string_view, kWeaponCount> kWeaponNames{
    "Barehand", "Sword", "Bow", "BombThrower", "Shield", "CureSpell"};

} // namespace

std::string_view to_string(MovementType m) { return kMovementNames[ordinal(m)]; }
std::string_view to_string(WeaponType w) { return kWeaponNames[ordinal(w)]; }

MovementType movement_from_string(std::string_view name) {
    for (int i = 0; i < kMovementCount; ++i)
        if (kMovementNames[i] == name) return static_cast<MovementType>(i);
    throw std::invalid_argument("unknown movement type: " + std::string(name));
}

WeaponType weapon_from_string(std::string_view name) {
    for (int i = 0; i < kWeaponCount; ++i)
        if (kWeaponNames[i] == name) return static_cast<WeaponType>(i);
    throw std::invalid_argument("unknown weapon type: " + std::string(name));
}

void redraw_gene(EnemyGenotype& e, Attr a, Rng& rng) {
    const AttributeSpec& spec = attribute_spec(a);
    switch (a) {
    case Attr::health:
        e.health = rng.uniform_int(static_cast<int>(spec.lower), static_cast<int>(spec.upper));
        break;
    case Attr::damage:
        e.damage = rng.uniform_int(static_cast<int>(spec.lower), static_cast<int>(spec.upper));
        break;
    case Attr::attack_speed:
        e.attack_speed = rng.uniform_real(spec.lower, spec.upper);
        break;
    case Attr::movement_type:
        e.movement_type = static_cast<MovementType>(rng.uniform_int(0, kMovementCount - 1));
        break;
    case Attr::movement_speed:
        e.movement_speed = rng.uniform_real(spec.lower, spec.upper);
        break;
    case Attr::active_time:
        e.active_time = rng.uniform_real(spec.lower, spec.upper);
        break;
    case Attr::rest_time:
        e.rest_time = rng.uniform_real(spec.lower, spec.upper);
        break;
    case Attr::weapon_type:
        e.weapon_type = static_cast<WeaponType>(rng.uniform_int(0, kWeaponCount - 1));
        break;
    case Attr::projectile_speed:
        e.projectile_speed = rng.uniform_real(spec.lower, spec.upper);
        break;
    }
}

EnemyGenotype random_enemy(Rng& rng) {
    EnemyGenotype e{};
    for (int a = 0; a < kGeneCount; ++a)
        redraw_gene(e, static_cast<Attr>(a), rng);
    return e;
}

bool is_valid(const EnemyGenotype& e) {
    const auto in = [](double v, Attr a) {
        const AttributeSpec& s = attribute_spec(a);
        return v >= s.lower && v <= s.upper;
    };
    return in(e.health, Attr::health) && in(e.damage, Attr::damage) &&
           in(e.attack_speed, Attr::attack_speed) &&
           in(e.movement_speed, Attr::movement_speed) &&
           in(e.active_time, Attr::active_time) &&
           in(e.rest_time, Attr::rest_time) &&
           in(e.projectile_speed, Attr::projectile_speed) &&
           ordinal(e.movement_type) >= 0 && ordinal(e.movement_type) < kMovementCount &&
           ordinal(e.weapon_type) >= 0 && ordinal(e.weapon_type) < kWeaponCount;
}

double numeric_gene(const EnemyGenotype& e, Attr a) {
    switch (a) {
    case Attr::health: return e.health;
    case Attr::damage: return e.damage;
    case Attr::attack_speed: return e.attack_speed;
    case Attr::movement_speed: return e.movement_speed;
    case Attr::active_time: return e.active_time;
    case Attr::rest_time: return e.rest_time;
    case Attr::projectile_speed: return e.projectile_speed;
    default: throw std::logic_error("numeric_gene: nominal attribute");
    }
}

void set_numeric_gene(EnemyGenotype& e, Attr a, double value) {
    const AttributeSpec& spec = attribute_spec(a);
    if (spec.kind == AttrKind::integer) {
        int v = static_cast<int>(std::lround(value));
        v = std::max(static_cast<int>(spec.lower), std::min(static_cast<int>(spec.upper), v));
        if (a == Attr::health)
            e.health = v;
        else
            e.damage = v;
        return;
    }
    const double v = std::max(spec.lower, std::min(spec.upper, value));
    switch (a) {
    case Attr::attack_speed: e.attack_speed = v; break;
    case Attr::movement_speed: e.movement_speed = v; break;
    case Attr::active_time: e.active_time = v; break;
    case Attr::rest_time: e.rest_time = v; break;
    case Attr::projectile_speed: e.projectile_speed = v; break;
    default: throw std::logic_error("set_numeric_gene: nominal attribute");
    }
}

nlohmann::ordered_json enemy_to_json(const EnemyGenotype& e) {
    nlohmann::ordered_json j;
    j["health"] = e.health;
    j["damage"] = e.damage;
    j["attack_speed"] = e.attack_speed;
    j["movement_type"] = to_string(e.movement_type);
    j["movement_speed"] = e.movement_speed;
    j["active_time"] = e.active_time;
    j["rest_time"] = e.rest_time;
    j["weapon_type"] = to_string(e.weapon_type);
    j["projectile_speed"] = e.projectile_speed;
    return j;
}

EnemyGenotype enemy_from_json(const nlohmann::json& j) {
    EnemyGenotype e{};
    try {
        e.health = j.at("health").get<int>();
        e.damage = j.at("damage").get<int>();
        e.attack_speed = j.at("attack_speed").get<double>();
        e.movement_type = movement_from_string(j.at("movement_type").get<std::string>());
        e.movement_speed = j.at("movement_speed").get<double>();
        e.active_time = j.at("active_time").get<double>();
        e.rest_time = j.at("rest_time").get<double>();
        e.weapon_type = weapon_from_string(j.at("weapon_type").get<std::string>());
        e.projectile_speed = j.at("projectile_speed").get<double>();
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument(std::string("malformed enemy object: ") + ex.what());
    }
    if (!is_valid(e))
        throw std::invalid_argument("enemy attribute out of range");
    return e;
}

} // namespace enemyforge
