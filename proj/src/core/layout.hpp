#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "graph.hpp"

namespace gridplot {

enum class LayoutAlgorithm { KamadaKawai, Spring, Sfdp, Spectral, Shell, Grid };

std::optional<LayoutAlgorithm> parse_algorithm(const std::string& name);
const char* algorithm_name(LayoutAlgorithm a);

struct LayoutConfig {
    LayoutAlgorithm algorithm = LayoutAlgorithm::KamadaKawai;
    int iterations = 100;      // Spring / SFDP
    double repulsion_c = 0.2;  // SFDP C
    double edge_length_k = 1.0; // SFDP K
    double spring_k = 0.0;     // 0 => sqrt(area / n), area = 1
    std::uint64_t seed = 1;
    bool fixed = false;
    double tol = 1e-6;         // Kamada-Kawai relative stress change
    int max_sweeps = 500;      // Kamada-Kawai majorization cap

    void check() const;
};

struct LayoutStats {
    double elapsed_seconds = 0.0;
    int iterations_run = 0;
    double final_stress = 0.0;              // Kamada-Kawai only
    std::vector<double> stress_trace;       // stress after each sweep
};

using Point = std::array<double, 2>;

struct LayoutResult {
    std::vector<Point> coords; // one per graph node
    LayoutStats stats;
};

/// Pinned coordinates per node; nodes with a value never move.
using PinnedCoords = std::vector<std::optional<Point>>;

LayoutResult kamada_kawai(const PowerGraph& g, const LayoutConfig& cfg = {},
                          const PinnedCoords& pinned = {});
LayoutResult spring_layout(const PowerGraph& g, const LayoutConfig& cfg = {},
                           const PinnedCoords& pinned = {});
LayoutResult sfdp_layout(const PowerGraph& g, const LayoutConfig& cfg = {},
                         const PinnedCoords& pinned = {});
LayoutResult spectral_layout(const PowerGraph& g);
LayoutResult shell_layout(const PowerGraph& g);
LayoutResult grid_layout(const PowerGraph& g);

/// Dispatch on cfg.algorithm. Disconnected graphs are laid out per connected
/// component and packed left to right; components containing pinned nodes
/// keep their absolute positions.
LayoutResult compute_layout(const PowerGraph& g, const LayoutConfig& cfg,
                            const PinnedCoords& pinned = {});

/// Stress of an embedding under hop-distance targets (Kamada-Kawai
/// objective): sum over reachable pairs of (|xi-xj| - dij)^2 / dij^2.
double embedding_stress(const PowerGraph& g, const std::vector<Point>& coords);

/// Copy of net where every plotted component carries "xcoord_1"/"ycoord_1".
/// With cfg.fixed, existing coordinates are pinned and SFDP fills the rest.
Network layout_network(const Network& net, const LayoutConfig& cfg,
                       const GraphConfig& gcfg = {},
                       LayoutStats* stats_out = nullptr);

/// Deterministic seeded PRNG (splitmix64).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform(); // [0, 1)
    Point unit_disk();

private:
    std::uint64_t state_;
};

} // namespace gridplot
