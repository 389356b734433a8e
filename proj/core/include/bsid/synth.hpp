#pragma once

#include "bsid/dataset.hpp"

namespace bsid {

// The canonical 35-variable schema (plus the binary target) used by the BSNG
// benchmark. Category vocabularies are fixed here so the one-hot layout is
// stable; their block widths total 687.
Schema canonical_schema();

// Synthetic stand-in generator for the published dataset. Accidents cluster
// on a fixed pool of locations; road-geometry variables are properties of the
// location, incident variables of the accident. Labels mark every accident at
// a "black spot" location, chosen by a noisy risk score over the geometry, so
// the label signal is weak, distributed, and partially ambiguous -- the same
// regime the published benchmark numbers describe.
struct SynthConfig {
    std::size_t rows = 1811;
    std::size_t positives = 142;
    std::size_t locations = 735;
    std::uint64_t seed = 2014;

    // Locations share geometry drawn from this many archetypes, so geometry
    // alone cannot identify a location (mixed labels per archetype).
    std::size_t archetypes = 48;
    // Strength of the diffuse geometry risk score relative to its noise.
    double geometry_signal = 1.0;
    // A handful of archetypes carry extra risk; this scales that bump.
    double pocket_signal = 1.0;
    // How strongly accident-level marginals shift at black-spot locations.
    double incident_signal = 1.0;
    // Black-spot accidents couple certain feature pairs (night with heavy
    // weather, old vehicles with failed inspections) while the per-feature
    // marginals stay put, so only interaction-aware models benefit.
    double interaction_signal = 1.0;
    // Share of the positive budget assigned to unremarkable locations: black
    // spots whose profile carries no signal, capping attainable recall.
    double clean_positive_share = 0.06;
};

Dataset generate_synthetic(const SynthConfig& cfg);

}  // namespace bsid
