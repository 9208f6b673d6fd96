#pragma once

#include "flatdyn/lattice.hpp"
#include "flatdyn/lll.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace flatdyn::simulate {

// 1/e. A transcendental step cannot satisfy an integer relation with the
// entries of an algebraic direction, so sampling at multiples of it
// equidistributes exactly when the continuous flow does. (1/phi fails this:
// with direction (-sqrt3, -sqrt5, 1, -sqrt2) two coordinates sum to 2.)
inline constexpr double kDefaultStep = 0.36787944117144233;

/// Discrete sampling of a straight-line flow on the unit torus R^2n / Z^2n
/// (lattice coordinates): x_j = start + j * step * direction mod 1.
struct OrbitSpec {
    RealMatrix lattice;              // float copy of g, echoed in reports only
    std::vector<double> direction;   // lattice coordinates, nonzero
    std::vector<double> start;       // in [0, 1)^2n
    double step = kDefaultStep;
    std::uint64_t steps = 0;         // number of samples N
};

struct DiscrepancyReport {
    int k = 0;                          // boxes per axis
    std::uint64_t samples = 0;
    std::vector<std::uint64_t> counts;  // fine cells, row-major over axes
    double max_deviation = 0.0;         // over all dyadic boxes
    double frequency_sum = 0.0;         // compensated sum of counts / N
    bool degenerate = false;            // orbit is exactly periodic or sits on cell boundaries
    std::vector<int> worst_level;       // per axis: intervals at this level (1, 2, 4, ..., k)
    std::vector<int> worst_index;       // per axis: interval index at that level
};

/**
 * Visit counts on the k^2n grid and the largest deviation between empirical
 * frequency and volume over every product of dyadic intervals
 * [a/m, (a+1)/m), m in {1, 2, 4, ..., k}, taken independently on each axis.
 * k must be a power of two >= 2 and N >= 1 (DomainError otherwise).
 */
DiscrepancyReport orbit_discrepancy(const OrbitSpec& spec, int k);

/// Axis-aligned box prod [lo_i, hi_i) inside the unit cube.
struct TestBox {
    std::vector<double> lo;
    std::vector<double> hi;
    bool contains(const std::vector<double>& x) const;
};

// |frequency of the box along the orbit from x - the same from y|.
double pair_comparison(const OrbitSpec& spec, const std::vector<double>& x, const std::vector<double>& y,
                       const TestBox& box);

/**
 * Median of max_deviation over orbits from each start, run concurrently.
 * Each orbit has its own accumulator; the result does not depend on the
 * schedule.
 */
double median_discrepancy(const OrbitSpec& spec, const std::vector<std::vector<double>>& starts, int k);

// Lattice coordinates of an ambient vector v, rounded once: c with c * g = v.
std::vector<double> lattice_direction(const lattice::TorusLattice& lattice, const AlgVector& v);

// CSV rows "box_index,count,frequency,deviation" for the fine cells.
std::string to_csv(const DiscrepancyReport& report, const std::string& header_comment = {});

// k x k heat map of the marginal frequency on two axes, relative to uniform.
std::string heatmap_svg(const DiscrepancyReport& report, std::size_t dims, std::size_t axis_a,
                        std::size_t axis_b);

}  // namespace flatdyn::simulate
