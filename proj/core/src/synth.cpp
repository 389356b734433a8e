#include "bsid/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bsid/errors.hpp"
#include "bsid/rng.hpp"

namespace bsid {

namespace {

VariableSpec categorical(std::string name, std::vector<std::string> categories) {
    return {std::move(name), VariableKind::Categorical, std::move(categories)};
}

VariableSpec ordinal(std::string name, std::vector<std::string> categories) {
    return {std::move(name), VariableKind::Ordinal, std::move(categories)};
}

VariableSpec binary(std::string name, std::string off, std::string on) {
    return {std::move(name), VariableKind::Binary, {std::move(off), std::move(on)}};
}

VariableSpec numeric(std::string name) { return {std::move(name), VariableKind::Numeric, {}}; }

std::vector<std::string> traffic_classes() {
    // Daily traffic volume buckets: a wide 0-1000 rural bucket, then
    // 250-vehicle steps up to the busiest urban ring segments.
    std::vector<std::string> buckets;
    buckets.push_back("0-1000");
    for (int lo = 1001; buckets.size() < 538; lo += 250) {
        buckets.push_back(std::to_string(lo) + "-" + std::to_string(lo + 249));
    }
    return buckets;
}

// Draw an index from unnormalized weights.
std::size_t weighted_pick(Rng& rng, const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = rng.uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        u -= weights[i];
        if (u <= 0.0) return i;
    }
    return weights.size() - 1;
}

}  // namespace

Schema canonical_schema() {
    Schema s;
    s.variables = {
        categorical("Year", {"2014", "2015", "2016", "2017", "2018"}),
        categorical("Month", {"January", "February", "March", "April", "May", "June", "July",
                              "August", "September", "October", "November", "December"}),
        categorical("Weekday", {"Monday", "Tuesday", "Wednesday", "Thursday", "Friday",
                                "Saturday", "Sunday"}),
        numeric("Week of Year"),
        numeric("Time"),
        binary("Daylight", "No", "Yes"),
        numeric("Deceased"),
        numeric("Serious injuries"),
        numeric("Minor injuries"),
        numeric("Totally injured"),
        numeric("Vehicles involved"),
        ordinal("Traffic class", traffic_classes()),
        categorical("Roadway type", {"Tarmac", "Concrete", "Paved stone", "Gravel", "Dirt",
                                     "Under construction", "Metal deck", "Wooden deck", "Other"}),
        categorical("Atmospheric conditions",
                    {"Good weather", "Overcast", "Light rain", "Heavy rain", "Fog", "Snowfall",
                     "Sleet", "Hail", "Strong winds", "Dust", "Other"}),
        categorical("Roadside environment", {"Habited", "Uninhabited", "Industrial",
                                             "Agricultural", "Forested", "Coastal", "Mountainous"}),
        categorical("Road surface conditions", {"Normal", "Wet", "Icy", "Snow-covered", "Muddy",
                                                "Oily", "Gravelly", "Flooded", "Damaged"}),
        binary("Lane divider", "Not present", "Present"),
        numeric("Road width"),
        binary("Road narrowness", "Normal width", "Narrowing"),
        binary("Lane direction sign", "Not visible", "Visible"),
        binary("Sequential turns", "False", "True"),
        categorical("Road gradient", {"Level", "Uphill", "Downhill", "Crest", "Sag"}),
        categorical("Straightness", {"Straight", "Mild curve", "Sharp curve", "S-curve"}),
        binary("Right turn", "False", "True"),
        binary("Left turn", "False", "True"),
        binary("Left barrier", "Non existent", "Existent"),
        binary("Right barrier", "Non existent", "Existent"),
        categorical("Left edge line", {"Not present", "Visible", "Worn", "Reflective"}),
        categorical("Right edge line", {"Not present", "Visible", "Worn", "Reflective"}),
        categorical("Accident severity", {"Fatal", "Seriously wounded", "Wounded"}),
        ordinal("Vehicle age", {"<1", "1-3", "4-6", "7-9", "10-12", "13-15", "16-18", "19-21",
                                "22-24", "25-27", "28-30", "31-33", "34-36", "37-39", "40-42",
                                "43-45", ">45"}),
        categorical("Vehicle type",
                    {"Private car", "Taxi", "Van", "Bus", "Coach", "Truck <=3.5t", "Truck >3.5t",
                     "Tractor trailer", "Agricultural tractor", "Motorcycle <=125cc",
                     "Motorcycle >125cc", "Moped", "Bicycle", "Trolley", "Special vehicle",
                     "Other"}),
        categorical("Mechanical inspection", {"Passed", "Failed", "Expired", "Exempt"}),
        categorical("Driver's gender", {"Female", "Male", "Unknown"}),
        ordinal("Driver's age", {"1-25", "26-64", ">65"}),
    };
    s.target = binary("Black Spot", "Non-blackspot", "Blackspot");
    s.target.kind = VariableKind::Binary;
    s.validate();
    return s;
}

namespace {

// Road geometry shared by every location drawn from the same archetype.
struct Geometry {
    int traffic_class;
    int roadway_type;
    int roadside;
    int lane_divider;
    double road_width;  // archetype-level, half-metre grid
    int narrowness;
    int lane_sign;
    int seq_turns;
    int gradient;
    int straightness;
    int left_barrier;
    int right_barrier;
    int left_edge;
    int right_edge;
    double pocket_bump = 0.0;
};

struct Location {
    std::size_t archetype;
    double risk = 0.0;
};

Geometry make_geometry(Rng& rng) {
    Geometry g;
    // Volume: mostly quiet rural segments, a thin busy-urban tail.
    const double u = rng.uniform();
    if (u < 0.55) {
        g.traffic_class = 0;
    } else if (u < 0.85) {
        g.traffic_class = 1 + static_cast<int>(rng.below(60));
    } else if (u < 0.97) {
        g.traffic_class = 61 + static_cast<int>(rng.below(200));
    } else {
        g.traffic_class = 261 + static_cast<int>(rng.below(277));
    }
    g.roadway_type = static_cast<int>(weighted_pick(
        rng, {0.78, 0.08, 0.04, 0.04, 0.03, 0.01, 0.005, 0.002, 0.013}));
    g.roadside = static_cast<int>(weighted_pick(rng, {0.42, 0.22, 0.08, 0.13, 0.07, 0.05, 0.03}));
    g.lane_divider = rng.uniform() < 0.38 ? 1 : 0;
    g.road_width = 4.0 + std::round(36.0 * std::pow(rng.uniform(), 3.5)) * 0.5;
    g.narrowness = rng.uniform() < 0.55 ? 1 : 0;
    g.lane_sign = rng.uniform() < 0.62 ? 1 : 0;
    g.seq_turns = rng.uniform() < 0.30 ? 1 : 0;
    g.gradient = static_cast<int>(weighted_pick(rng, {0.30, 0.32, 0.22, 0.10, 0.06}));
    g.straightness = static_cast<int>(weighted_pick(rng, {0.56, 0.24, 0.13, 0.07}));
    g.left_barrier = rng.uniform() < 0.25 ? 1 : 0;
    g.right_barrier = rng.uniform() < 0.27 ? 1 : 0;
    g.left_edge = static_cast<int>(weighted_pick(rng, {0.48, 0.30, 0.14, 0.08}));
    g.right_edge = static_cast<int>(weighted_pick(rng, {0.47, 0.31, 0.14, 0.08}));
    return g;
}

// Many small contributions spread across the geometry indicators; no single
// split can capture the score.
double geometry_risk(const Geometry& g) {
    double risk = 0.0;
    risk += g.traffic_class > 60 ? 0.30 : (g.traffic_class > 0 ? 0.12 : 0.0);
    risk += g.narrowness ? 0.16 : 0.0;
    risk += g.seq_turns ? 0.18 : 0.0;
    risk += g.straightness >= 2 ? 0.22 : 0.0;                  // sharp or S curve
    risk += g.gradient == 1 || g.gradient == 3 ? 0.12 : 0.0;   // uphill or crest
    risk += g.lane_divider ? -0.14 : 0.0;
    risk += g.lane_sign ? -0.08 : 0.0;
    risk += g.left_edge == 0 ? 0.08 : 0.0;
    risk += g.right_edge == 0 ? 0.08 : 0.0;
    risk += g.road_width < 7.0 ? 0.14 : 0.0;
    risk += g.roadside == 0 ? 0.10 : 0.0;                      // habited
    risk += g.left_barrier || g.right_barrier ? -0.06 : 0.0;
    risk += g.roadway_type >= 3 ? 0.10 : 0.0;                  // unpaved-ish kinds
    return risk;
}

}  // namespace

Dataset generate_synthetic(const SynthConfig& cfg) {
    if (cfg.positives >= cfg.rows) throw ParamError("generate_synthetic: positives >= rows");
    if (cfg.locations < 8) throw ParamError("generate_synthetic: too few locations");

    const Schema schema = canonical_schema();
    Rng rng(cfg.seed);

    // Geometry archetype pool; a few archetypes carry a risk pocket.
    Rng arch_rng = rng.child("archetypes");
    std::vector<Geometry> archetypes;
    archetypes.reserve(cfg.archetypes);
    for (std::size_t a = 0; a < cfg.archetypes; ++a) {
        Geometry g = make_geometry(arch_rng);
        if (arch_rng.uniform() < 0.07) {
            g.pocket_bump = cfg.pocket_signal * (0.8 + 0.4 * arch_rng.uniform());
        }
        archetypes.push_back(g);
    }

    // Locations pick an archetype and draw their own risk around it.
    Rng loc_rng = rng.child("locations");
    std::vector<Location> locations;
    locations.reserve(cfg.locations);
    for (std::size_t l = 0; l < cfg.locations; ++l) {
        Location loc;
        loc.archetype = static_cast<std::size_t>(loc_rng.below(cfg.archetypes));
        const Geometry& g = archetypes[loc.archetype];
        loc.risk = cfg.geometry_signal * geometry_risk(g) + g.pocket_bump + loc_rng.normal();
        locations.push_back(loc);
    }

    // Accidents per location: everyone gets one; the rest follow risk.
    std::vector<std::size_t> accident_count(cfg.locations, 1);
    {
        Rng pick_rng = rng.child("multiplicity");
        std::vector<double> weights(cfg.locations);
        for (std::size_t l = 0; l < cfg.locations; ++l) {
            weights[l] = std::exp(0.4 * locations[l].risk);
        }
        for (std::size_t extra = cfg.locations; extra < cfg.rows; ++extra) {
            accident_count[weighted_pick(pick_rng, weights)]++;
        }
    }

    // Black-spot selection. A pocket share of the positive budget lands on
    // locations of the pocket archetypes (concentrated, learnable); the rest
    // follows the diffuse noisy risk. Counts are walked greedily so the
    // positive total is hit exactly.
    std::vector<int> is_blackspot(cfg.locations, 0);
    {
        Rng label_rng = rng.child("labels");
        std::vector<double> noisy(cfg.locations);
        for (std::size_t l = 0; l < cfg.locations; ++l) {
            noisy[l] = locations[l].risk + 0.6 * label_rng.normal();
        }
        auto pick_greedy = [&](std::vector<std::size_t> pool, std::size_t budget) {
            std::sort(pool.begin(), pool.end(),
                      [&](std::size_t a, std::size_t b) { return noisy[a] > noisy[b]; });
            for (const std::size_t l : pool) {
                if (budget == 0) break;
                if (!is_blackspot[l] && accident_count[l] <= budget) {
                    is_blackspot[l] = 1;
                    budget -= accident_count[l];
                }
            }
            return budget;
        };

        std::vector<std::size_t> pocket_pool;
        std::vector<std::size_t> diffuse_pool;
        std::size_t pocket_mass = 0;
        for (std::size_t l = 0; l < cfg.locations; ++l) {
            const bool pocket = archetypes[locations[l].archetype].pocket_bump > 0.0;
            (pocket ? pocket_pool : diffuse_pool).push_back(l);
            if (pocket) pocket_mass += accident_count[l];
        }

        // Unremarkable black spots first: a random slice of the budget with
        // no risk ordering at all.
        const auto clean_budget = static_cast<std::size_t>(
            std::round(std::clamp(cfg.clean_positive_share, 0.0, 0.5) *
                       static_cast<double>(cfg.positives)));
        {
            std::vector<std::size_t> everywhere(cfg.locations);
            std::iota(everywhere.begin(), everywhere.end(), 0);
            label_rng.shuffle(everywhere);
            std::size_t budget = clean_budget;
            for (const std::size_t l : everywhere) {
                if (budget == 0) break;
                if (!is_blackspot[l] && accident_count[l] <= budget) {
                    is_blackspot[l] = 1;
                    budget -= accident_count[l];
                }
            }
        }

        // Pocket archetypes converge on this positive rate; the remaining
        // budget spreads over the diffuse tail.
        const double pocket_rate = std::clamp(0.62 * cfg.pocket_signal, 0.0, 0.95);
        auto pocket_budget = static_cast<std::size_t>(
            std::round(pocket_rate * static_cast<double>(pocket_mass)));
        pocket_budget = std::min(pocket_budget, cfg.positives * 3 / 5);
        std::size_t placed_clean = 0;
        for (std::size_t l = 0; l < cfg.locations; ++l) {
            if (is_blackspot[l]) placed_clean += accident_count[l];
        }
        pocket_budget = std::min(pocket_budget, cfg.positives - placed_clean);
        std::size_t remaining = pick_greedy(pocket_pool, pocket_budget);
        remaining = pick_greedy(diffuse_pool,
                                cfg.positives - placed_clean - pocket_budget + remaining);
        if (remaining != 0) {
            throw DataError("generate_synthetic: could not hit the positive budget");
        }
    }

    // Accident-level sampling.
    const std::size_t nvars = schema.variable_count();
    std::vector<double> cells;
    cells.reserve(cfg.rows * nvars);
    std::vector<int> labels;
    labels.reserve(cfg.rows);

    Rng acc_rng = rng.child("accidents");
    const double monthly_weights[12] = {0.8, 0.75, 0.85, 0.85, 0.95, 1.0,
                                        1.45, 1.3, 1.0, 0.95, 0.85, 0.9};
    const double weekday_weights[7] = {1.35, 1.0, 0.95, 0.95, 1.1, 1.15, 1.2};
    const double year_weights[5] = {0.95, 1.0, 1.25, 1.0, 0.95};
    const int days_in_month[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

    const double coupling = std::clamp(0.55 * cfg.interaction_signal, 0.0, 1.0);

    for (std::size_t l = 0; l < cfg.locations; ++l) {
        const Location& loc = locations[l];
        const Geometry& geo = archetypes[loc.archetype];
        const bool hot = is_blackspot[l] == 1;
        const double shift = cfg.incident_signal * (hot ? 1.0 : 0.0);
        for (std::size_t a = 0; a < accident_count[l]; ++a) {
            std::vector<double> row(nvars, 0.0);

            const int year = static_cast<int>(weighted_pick(
                acc_rng, {year_weights[0], year_weights[1], year_weights[2], year_weights[3],
                          year_weights[4]}));
            const int month = static_cast<int>(weighted_pick(
                acc_rng, std::vector<double>(monthly_weights, monthly_weights + 12)));
            const int weekday = static_cast<int>(weighted_pick(
                acc_rng, std::vector<double>(weekday_weights, weekday_weights + 7)));
            int day_of_year = 0;
            for (int m = 0; m < month; ++m) day_of_year += days_in_month[m];
            day_of_year += static_cast<int>(acc_rng.below(
                static_cast<std::uint64_t>(days_in_month[month])));
            const double week = 1.0 + day_of_year / 7;

            // Two coupled condition pairs at black spots: night rides with
            // heavy weather, old vehicles with lapsed inspections. A shared
            // uniform couples the pair; the per-feature rates are the same
            // for both classes, so only the co-occurrence carries label
            // information.
            const double p_night = 0.145 + 0.13 * shift;
            const double p_badweather = 0.115 + 0.11 * shift;
            const double p_old_vehicle = 0.185 + 0.02 * shift;
            const double p_failed_check = 0.14 + 0.01 * shift;

            bool night;
            bool bad_weather;
            bool old_vehicle;
            bool failed_check;
            if (hot && acc_rng.uniform() < coupling) {
                const double u1 = acc_rng.uniform();
                night = u1 < p_night;
                bad_weather = u1 < p_badweather;
                const double u2 = acc_rng.uniform();
                old_vehicle = u2 < p_old_vehicle;
                failed_check = u2 < p_failed_check;
            } else {
                night = acc_rng.uniform() < p_night;
                bad_weather = acc_rng.uniform() < p_badweather;
                old_vehicle = acc_rng.uniform() < p_old_vehicle;
                failed_check = acc_rng.uniform() < p_failed_check;
            }

            double time;
            if (night) {
                time = acc_rng.uniform(0.0, 5.9);
            } else {
                if (acc_rng.uniform() < 0.68) {
                    time = 14.6 + 3.9 * acc_rng.normal();
                } else {
                    time = 9.3 + 2.6 * acc_rng.normal();
                }
                time = std::clamp(time, 5.9, 23.98);
            }
            const int daylight = time >= 6.9 && time <= 19.4 ? 1 : 0;

            int atmos;
            if (bad_weather) {
                atmos = 3 + static_cast<int>(weighted_pick(acc_rng, {0.5, 0.3, 0.2}));
            } else {
                const int mild[] = {0, 1, 2, 6, 7, 8, 9, 10};
                atmos = mild[weighted_pick(acc_rng,
                                           {3.05, 0.50, 0.42, 0.04, 0.02, 0.09, 0.02, 0.03})];
            }
            int surface = 0;
            if (atmos == 2 || atmos == 3) {
                surface = acc_rng.uniform() < 0.85 ? 1 : 0;
            } else if (atmos == 5) {
                surface = acc_rng.uniform() < 0.7 ? 3 : 2;
            } else if (atmos == 6) {
                surface = acc_rng.uniform() < 0.6 ? 2 : 1;
            } else if (atmos == 4) {
                surface = acc_rng.uniform() < 0.3 ? 1 : 0;
            } else {
                surface = static_cast<int>(weighted_pick(
                    acc_rng, {8.3, 0.35, 0.06, 0.04, 0.22, 0.12, 0.36, 0.06, 0.49}));
            }

            // Casualties: deadlier at black spots.
            const double sev = 1.0 + 0.1 * shift;
            const int deceased = acc_rng.uniform() < 0.187 * sev
                                     ? (acc_rng.uniform() < 0.12 ? 2 : 1)
                                     : 0;
            const int serious =
                acc_rng.uniform() < 0.155 * sev ? (acc_rng.uniform() < 0.1 ? 2 : 1) : 0;
            int minor = 0;
            {
                double expect = 0.99 * (1.0 + 0.12 * shift);
                double p = std::exp(-expect);
                double cum = p;
                const double u = acc_rng.uniform();
                while (u > cum && minor < 9) {
                    ++minor;
                    p *= expect / minor;
                    cum += p;
                }
            }
            if (deceased + serious + minor == 0) minor = 1;
            const int totally = minor;

            const int vehicles = static_cast<int>(
                1 + weighted_pick(acc_rng, {0.630, 0.318, 0.041, 0.009, 0.002}));

            const int severity = deceased > 0 ? 0 : (serious > 0 ? 1 : 2);

            int vehicle_age;
            if (old_vehicle) {
                vehicle_age = 8 + static_cast<int>(weighted_pick(
                                      acc_rng, {0.325, 0.243, 0.162, 0.108, 0.065, 0.043, 0.027,
                                                0.027}));
            } else {
                vehicle_age = static_cast<int>(weighted_pick(
                    acc_rng, {0.025, 0.061, 0.086, 0.110, 0.147, 0.190, 0.159, 0.122}));
            }
            const int vehicle_type = static_cast<int>(weighted_pick(
                acc_rng, {0.565, 0.03, 0.055, 0.02, 0.012, 0.06, 0.05, 0.03, 0.02, 0.05, 0.06,
                          0.025, 0.012, 0.002, 0.004, 0.003}));
            const int mech = failed_check
                                 ? 1 + static_cast<int>(weighted_pick(acc_rng, {0.21, 0.43, 0.36}))
                                 : 0;
            const int gender = static_cast<int>(weighted_pick(acc_rng, {0.52, 0.46, 0.02}));
            const int driver_age = static_cast<int>(weighted_pick(acc_rng, {0.17, 0.71, 0.12}));

            // Turns happen where the road bends.
            const int right_turn =
                acc_rng.uniform() < (geo.straightness >= 1 ? 0.28 : 0.08) ? 1 : 0;
            const int left_turn =
                acc_rng.uniform() < (geo.straightness >= 1 ? 0.24 : 0.07) ? 1 : 0;

            std::size_t v = 0;
            row[v++] = year;
            row[v++] = month;
            row[v++] = weekday;
            row[v++] = week;
            row[v++] = time;
            row[v++] = daylight;
            row[v++] = deceased;
            row[v++] = serious;
            row[v++] = minor;
            row[v++] = totally;
            row[v++] = vehicles;
            row[v++] = geo.traffic_class;
            row[v++] = geo.roadway_type;
            row[v++] = atmos;
            row[v++] = geo.roadside;
            row[v++] = surface;
            row[v++] = geo.lane_divider;
            row[v++] = geo.road_width;
            row[v++] = geo.narrowness;
            row[v++] = geo.lane_sign;
            row[v++] = geo.seq_turns;
            row[v++] = geo.gradient;
            row[v++] = geo.straightness;
            row[v++] = right_turn;
            row[v++] = left_turn;
            row[v++] = geo.left_barrier;
            row[v++] = geo.right_barrier;
            row[v++] = geo.left_edge;
            row[v++] = geo.right_edge;
            row[v++] = severity;
            row[v++] = vehicle_age;
            row[v++] = vehicle_type;
            row[v++] = mech;
            row[v++] = gender;
            row[v++] = driver_age;

            cells.insert(cells.end(), row.begin(), row.end());
            labels.push_back(hot ? 1 : 0);
        }
    }

    Dataset ds;
    ds.schema = schema;
    ds.values = Matrix::from_values(cfg.rows, nvars, std::move(cells));
    ds.labels = std::move(labels);

    // Nudge the numeric columns onto the published profile means.
    const struct {
        const char* name;
        double target;
        double lo;
        double hi;
    } calibrations[] = {
        {"Week of Year", 27.73, 1.0, 53.0},
        {"Time", 13.353, 0.0, 23.98},
    };
    Rng dither_rng = rng.child("calibration");
    for (int pass = 0; pass < 2; ++pass)
    for (const auto& cal : calibrations) {
        const int v = ds.schema.variable_index(cal.name);
        const bool whole = cal.name[0] == 'W';  // week numbers stay integral
        double mean = 0.0;
        for (std::size_t i = 0; i < ds.row_count(); ++i) {
            mean += ds.values(i, static_cast<std::size_t>(v));
        }
        mean /= static_cast<double>(ds.row_count());
        const double delta = cal.target - mean;
        for (std::size_t i = 0; i < ds.row_count(); ++i) {
            double& cell = ds.values(i, static_cast<std::size_t>(v));
            if (whole) {
                // Randomized rounding keeps sub-unit shifts unbiased.
                cell = std::round(cell + delta + dither_rng.uniform() - 0.5);
            } else {
                cell += delta;
            }
            cell = std::clamp(cell, cal.lo, cal.hi);
        }
    }
    return ds;
}

}  // namespace bsid
