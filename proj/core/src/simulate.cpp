#include "flatdyn/simulate.hpp"

#include "flatdyn/errors.hpp"
#include "flatdyn/exact_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace flatdyn::simulate {

namespace {

void validate(const OrbitSpec& spec) {
    const std::size_t d = spec.direction.size();
    if (d == 0 || d % 2 != 0)
        throw DomainError("direction must have even positive length");
    if (spec.start.size() != d)
        throw DomainError("start point dimension differs from direction");
    if (std::all_of(spec.direction.begin(), spec.direction.end(), [](double v) { return v == 0.0; }))
        throw DomainError("direction must be nonzero");
    if (!(spec.step > 0.0) || !std::isfinite(spec.step))
        throw DomainError("step must be positive and finite");
    if (spec.steps == 0)
        throw DomainError("orbit needs at least one sample");
}

// Walks the orbit, calling visit(point) for each of the N samples. Returns
// true when the orbit came back to its start exactly.
template <class Visit>
bool walk(const OrbitSpec& spec, const std::vector<double>& start, Visit&& visit) {
    const std::size_t d = spec.direction.size();
    std::vector<double> inc(d);
    for (std::size_t i = 0; i < d; ++i)
        inc[i] = spec.step * spec.direction[i];
    std::vector<double> x = start;
    for (auto& v : x)
        v -= std::floor(v);
    const std::vector<double> origin = x;
    bool periodic = false;
    for (std::uint64_t j = 0; j < spec.steps; ++j) {
        visit(x);
        for (std::size_t i = 0; i < d; ++i) {
            double v = x[i] + inc[i];
            v -= std::floor(v);
            x[i] = v;
        }
        if (!periodic && x == origin)
            periodic = true;
    }
    return periodic;
}

bool is_power_of_two(int k) { return k > 0 && (k & (k - 1)) == 0; }

}  // namespace

bool TestBox::contains(const std::vector<double>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < lo[i] || x[i] >= hi[i])
            return false;
    return true;
}

DiscrepancyReport orbit_discrepancy(const OrbitSpec& spec, int k) {
    validate(spec);
    if (k < 2 || !is_power_of_two(k))
        throw DomainError("boxes per axis must be a power of two >= 2");
    const std::size_t d = spec.direction.size();
    const auto uk = static_cast<std::size_t>(k);
    std::size_t cells = 1;
    for (std::size_t i = 0; i < d; ++i)
        cells *= uk;

    DiscrepancyReport r;
    r.k = k;
    r.samples = spec.steps;
    r.counts.assign(cells, 0);
    std::uint64_t on_boundary = 0;
    const auto kd = static_cast<double>(k);
    bool periodic = walk(spec, spec.start, [&](const std::vector<double>& x) {
        std::size_t idx = 0;
        bool boundary = false;
        for (std::size_t i = 0; i < d; ++i) {
            double scaled = x[i] * kd;
            auto c = std::min(static_cast<std::size_t>(scaled), uk - 1);
            if (spec.direction[i] != 0.0 && scaled == std::floor(scaled))
                boundary = true;
            idx = idx * uk + c;
        }
        if (boundary)
            ++on_boundary;
        ++r.counts[idx];
    });
    r.degenerate = periodic || 2 * on_boundary > spec.steps;

    // Compensated sum of frequencies.
    const auto n = static_cast<double>(spec.steps);
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t c : r.counts) {
        double y = static_cast<double>(c) / n - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    r.frequency_sum = sum;

    // Intervals per axis: level m = 1, 2, 4, ..., k; interval a covers fine
    // cells [a k/m, (a+1) k/m).
    struct Interval {
        int level, index;
        std::size_t first, last;
    };
    std::vector<Interval> intervals;
    for (int m = 1; m <= k; m *= 2)
        for (int a = 0; a < m; ++a) {
            std::size_t w = uk / static_cast<std::size_t>(m);
            intervals.push_back({m, a, static_cast<std::size_t>(a) * w, static_cast<std::size_t>(a + 1) * w});
        }
    const std::size_t ni = intervals.size();

    // Separable aggregation, one axis at a time: dims before `axis` are
    // already in interval space, dims after are still fine cells.
    std::vector<std::uint64_t> cur = r.counts;
    for (std::size_t axis = 0; axis < d; ++axis) {
        std::size_t outer = 1, inner = 1;
        for (std::size_t i = 0; i < axis; ++i)
            outer *= ni;
        for (std::size_t i = axis + 1; i < d; ++i)
            inner *= uk;
        std::vector<std::uint64_t> next(outer * ni * inner, 0);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t iv = 0; iv < ni; ++iv)
                for (std::size_t c = intervals[iv].first; c < intervals[iv].last; ++c)
                    for (std::size_t in = 0; in < inner; ++in)
                        next[(o * ni + iv) * inner + in] += cur[(o * uk + c) * inner + in];
        cur = std::move(next);
    }

    std::vector<std::size_t> digit(d, 0);
    r.max_deviation = 0.0;
    for (std::size_t box = 0; box < cur.size(); ++box) {
        std::size_t rest = box;
        double volume = 1.0;
        for (std::size_t i = d; i-- > 0;) {
            digit[i] = rest % ni;
            rest /= ni;
            volume /= intervals[digit[i]].level;
        }
        double dev = std::abs(static_cast<double>(cur[box]) / n - volume);
        if (dev > r.max_deviation) {
            r.max_deviation = dev;
            r.worst_level.assign(d, 0);
            r.worst_index.assign(d, 0);
            for (std::size_t i = 0; i < d; ++i) {
                r.worst_level[i] = intervals[digit[i]].level;
                r.worst_index[i] = intervals[digit[i]].index;
            }
        }
    }
    return r;
}

double pair_comparison(const OrbitSpec& spec, const std::vector<double>& x, const std::vector<double>& y,
                       const TestBox& box) {
    validate(spec);
    const std::size_t d = spec.direction.size();
    if (x.size() != d || y.size() != d || box.lo.size() != d || box.hi.size() != d)
        throw DomainError("pair comparison dimensions differ");
    auto frequency = [&](const std::vector<double>& from) {
        std::uint64_t hits = 0;
        walk(spec, from, [&](const std::vector<double>& p) { hits += box.contains(p) ? 1 : 0; });
        return static_cast<double>(hits) / static_cast<double>(spec.steps);
    };
    if (x == y)
        return 0.0;
    return std::abs(frequency(x) - frequency(y));
}

double median_discrepancy(const OrbitSpec& spec, const std::vector<std::vector<double>>& starts, int k) {
    if (starts.empty())
        throw DomainError("median needs at least one start");
    std::vector<std::future<double>> jobs;
    jobs.reserve(starts.size());
    for (const auto& s : starts) {
        OrbitSpec local = spec;
        local.start = s;
        jobs.push_back(std::async(std::launch::async, [local, k] { return orbit_discrepancy(local, k).max_deviation; }));
    }
    std::vector<double> devs;
    for (auto& j : jobs)
        devs.push_back(j.get());
    std::sort(devs.begin(), devs.end());
    std::size_t m = devs.size() / 2;
    return devs.size() % 2 ? devs[m] : 0.5 * (devs[m - 1] + devs[m]);
}

std::vector<double> lattice_direction(const lattice::TorusLattice& lattice, const AlgVector& v) {
    if (v.size() != lattice.dim())
        throw DomainError("vector and lattice dimensions differ");
    AlgVector c = row_times(std::span<const AlgNum>(v), inverse(lattice.rows()));
    std::vector<double> out;
    out.reserve(c.size());
    for (const auto& x : c)
        out.push_back(x.to_double());
    return out;
}

std::string to_csv(const DiscrepancyReport& report, const std::string& header_comment) {
    std::ostringstream os;
    os.precision(17);
    if (!header_comment.empty())
        os << "# " << header_comment << '\n';
    os << "box_index,count,frequency,deviation\n";
    const auto n = static_cast<double>(report.samples);
    const double uniform = 1.0 / static_cast<double>(report.counts.size());
    for (std::size_t i = 0; i < report.counts.size(); ++i) {
        double f = static_cast<double>(report.counts[i]) / n;
        os << i << ',' << report.counts[i] << ',' << f << ',' << (f - uniform) << '\n';
    }
    return os.str();
}

std::string heatmap_svg(const DiscrepancyReport& report, std::size_t dims, std::size_t axis_a, std::size_t axis_b) {
    if (axis_a >= dims || axis_b >= dims || axis_a == axis_b)
        throw DomainError("heat map axes must be distinct and in range");
    const auto k = static_cast<std::size_t>(report.k);
    std::vector<double> marginal(k * k, 0.0);
    for (std::size_t idx = 0; idx < report.counts.size(); ++idx) {
        std::size_t rest = idx;
        std::size_t ca = 0, cb = 0;
        for (std::size_t i = dims; i-- > 0;) {
            std::size_t c = rest % k;
            rest /= k;
            if (i == axis_a)
                ca = c;
            if (i == axis_b)
                cb = c;
        }
        marginal[ca * k + cb] += static_cast<double>(report.counts[idx]);
    }
    const double expected = static_cast<double>(report.samples) / static_cast<double>(k * k);
    const int cell = 32;
    const auto side = static_cast<int>(k) * cell;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side << "\">\n";
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            // ratio 0 -> blue, 1 -> white, 2+ -> red
            double ratio = std::clamp(marginal[a * k + b] / expected, 0.0, 2.0);
            int red = ratio < 1 ? static_cast<int>(255 * ratio) : 255;
            int blue = ratio > 1 ? static_cast<int>(255 * (2 - ratio)) : 255;
            int green = std::min(red, blue);
            os << "  <rect x=\"" << static_cast<int>(a) * cell << "\" y=\""
               << (static_cast<int>(k - 1 - b)) * cell << "\" width=\"" << cell << "\" height=\"" << cell
               << "\" fill=\"rgb(" << red << ',' << green << ',' << blue << ")\"/>\n";
        }
    os << "</svg>\n";
    return os.str();
}

}  // namespace flatdyn::simulate
