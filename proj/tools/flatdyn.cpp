// flatdyn: command-line front end for the flat torus dynamics library.
//
// Exit codes: 0 success, 1 domain error (or missing bundled data), 2 usage or
// parse error.

#include "flatdyn/errors.hpp"
#include "flatdyn/foliation.hpp"
#include "flatdyn/kummer.hpp"
#include "flatdyn/lattice.hpp"
#include "flatdyn/matrix_io.hpp"
#include "flatdyn/parser.hpp"
#include "flatdyn/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace flatdyn;

namespace {

constexpr const char* kVersion = FLATDYN_VERSION;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- helpers

bool g_verbose = false;
auto g_started = std::chrono::steady_clock::now();

void log(const std::string& msg) {
    if (!g_verbose)
        return;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - g_started);
    std::cerr << "[" << std::setw(7) << ms.count() << " ms] " << msg << '\n';
}

json exact(const AlgNum& v) { return v.to_string(); }

json approx(const AlgNum& v, int digits) { return v.approx(digits).to_string(); }

json integer(const Integer& z) {
    if (z.fits_slong_p())
        return z.get_si();
    return z.get_str();
}

json int_rows(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (const auto& z : m.row(i))
            r.push_back(integer(z));
        rows.push_back(r);
    }
    return rows;
}

json alg_rows(const AlgMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (const auto& v : m.row(i))
            r.push_back(exact(v));
        rows.push_back(r);
    }
    return rows;
}

json alg_vector(const AlgVector& v) {
    json out = json::array();
    for (const auto& x : v)
        out.push_back(exact(x));
    return out;
}

json int_vector(const IntVector& v) {
    json out = json::array();
    for (const auto& x : v)
        out.push_back(integer(x));
    return out;
}

std::string join_ints(const IntVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + v[i].get_str();
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

json header(const std::string& command, json config) {
    return json{{"tool", "flatdyn"}, {"version", kVersion}, {"command", command}, {"config", std::move(config)}};
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + out_path);
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

lattice::TorusLattice load_lattice(const std::string& path, bool normalize) {
    log("reading " + path);
    return lattice::lattice_from_rows(read_matrix_file(path), normalize);
}

// "2", "1/2", "s=sqrt(2)".
AlgNum parse_flow_value(std::string text) {
    auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text.compare(first, 2, "s=") == 0)
        text = text.substr(first + 2);
    return parse_algnum(text);
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (text.find_first_not_of(" \t", used) != std::string::npos)
            throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw UsageError(what + ": not a decimal number: '" + text + "'");
    }
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(text);
    while (in >> token) {
        std::istringstream parts(token);
        std::string piece;
        while (std::getline(parts, piece, ','))
            if (!piece.empty())
                out.push_back(parse_double(piece, what));
    }
    return out;
}

AlgVector parse_exact_vector(const std::string& text) {
    AlgMatrix m = parse_matrix_text(text);
    if (m.rows() != 1)
        throw UsageError("expected a single row of exact entries: '" + text + "'");
    return AlgVector(m.row(0).begin(), m.row(0).end());
}

// ---------------------------------------------------------------- flow times

struct FlowArgs {
    std::vector<std::string> exact;  // --flow
    std::vector<std::string> t;      // --t (approximate)

    struct Sample {
        lattice::FlowTime time;
        std::string label;
        bool approximate;
    };

    std::vector<Sample> resolve(bool default_identity) const {
        std::vector<Sample> out;
        for (const auto& e : exact)
            out.push_back({lattice::FlowTime(parse_flow_value(e)), e, false});
        for (const auto& s : t) {
            double tv = parse_double(s, "--t");
            double sv = std::exp(tv);
            if (!std::isfinite(sv) || sv <= 0)
                throw DomainError("e^t is not a positive finite double for t = " + s);
            out.push_back({lattice::FlowTime(AlgNum(Rational(sv))), "t=" + s, true});
        }
        if (out.empty() && default_identity)
            out.push_back({lattice::FlowTime(AlgNum(1L)), "1", false});
        return out;
    }

    json config() const { return json{{"flow", exact}, {"t", t}}; }

    void add_to(CLI::App* cmd) {
        cmd->add_option("--flow", exact, "Flow time s = e^t as an exact expression, e.g. 2, 1/2, s=sqrt(2)")
            ->take_all();
        cmd->add_option("--t", t,
                        "Flow time as a decimal t; s = e^t is rounded to a double, so results are approximate");
    }
};

// ---------------------------------------------------------------- commands

struct Common {
    std::string format = "json";
    std::string output;
    int digits = 12;
};

void add_common(CLI::App* cmd, Common& c, std::vector<std::string> formats) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
    cmd->add_option("-o,--output", c.output, "Write output to this file instead of stdout");
    cmd->add_option("--digits", c.digits, "Decimal digits for approximations")
        ->check(CLI::Range(1, 200))
        ->capture_default_str();
}

json common_config(const Common& c) { return json{{"format", c.format}, {"output", c.output}, {"digits", c.digits}}; }

struct SystoleCmd {
    Common common;
    std::string matrix;
    bool normalize = false;
    FlowArgs flow;

    void run() const {
        auto base = load_lattice(matrix, normalize);
        auto samples = flow.resolve(true);
        std::vector<lattice::FlowTime> times;
        for (const auto& s : samples)
            times.push_back(s.time);
        log("computing " + std::to_string(times.size()) + " systole sample(s)");
        lattice::ProbeResult r = lattice::divergence_probe(base, times, common.digits);

        if (common.format == "csv") {
            std::string out = "s,approximate,norm_sq,norm_sq_lo,norm_sq_hi,vector\n";
            for (std::size_t i = 0; i < r.samples.size(); ++i) {
                const auto& p = r.samples[i];
                out += csv_field(p.s.to_string()) + "," + (samples[i].approximate ? "true" : "false") + "," +
                       csv_field(p.systole.norm_sq.to_string()) + "," + p.norm_sq.lo_string() + "," +
                       p.norm_sq.hi_string() + "," + join_ints(p.systole.vector) + "\n";
            }
            emit(out, common.output);
            return;
        }
        json cfg = common_config(common);
        cfg["matrix"] = matrix;
        cfg["normalize"] = normalize;
        cfg.update(flow.config());
        json doc{{"header", header("systole", cfg)}};
        json arr = json::array();
        for (std::size_t i = 0; i < r.samples.size(); ++i) {
            const auto& p = r.samples[i];
            arr.push_back({{"label", samples[i].label},
                           {"approximate", samples[i].approximate},
                           {"s", exact(p.s)},
                           {"norm_sq", exact(p.systole.norm_sq)},
                           {"norm_sq_approx", p.norm_sq.to_string()},
                           {"vector", int_vector(p.systole.vector)},
                           {"realization", alg_vector(p.systole.realization)}});
        }
        doc["samples"] = arr;
        doc["strictly_decreasing"] = r.strictly_decreasing;
        emit(dump(doc), common.output);
    }
};

struct FlowCmd {
    Common common;
    std::string matrix;
    bool normalize = false;
    FlowArgs flow;

    void run() const {
        auto base = load_lattice(matrix, normalize);
        auto samples = flow.resolve(false);
        if (samples.size() != 1)
            throw UsageError("flow needs exactly one of --flow or --t");
        auto moved = lattice::apply_geodesic(base, samples[0].time);
        if (common.format == "matrix") {
            emit("# s = " + samples[0].time.s().to_string() + (samples[0].approximate ? " (approximate)" : "") +
                     "\n" + format_matrix(moved.rows()),
                 common.output);
            return;
        }
        if (common.format == "csv") {
            std::string out;
            for (std::size_t i = 0; i < moved.rows().rows(); ++i)
                for (std::size_t j = 0; j < moved.rows().cols(); ++j)
                    out += csv_field(moved.rows()(i, j).to_string()) + (j + 1 < moved.rows().cols() ? "," : "\n");
            emit(out, common.output);
            return;
        }
        json cfg = common_config(common);
        cfg["matrix"] = matrix;
        cfg["normalize"] = normalize;
        cfg.update(flow.config());
        json doc{{"header", header("flow", cfg)},
                 {"s", exact(samples[0].time.s())},
                 {"approximate", samples[0].approximate},
                 {"rows", alg_rows(moved.rows())},
                 {"det", exact(moved.det())}};
        emit(dump(doc), common.output);
    }
};

struct PlaneArgs {
    std::string file;
    bool horizontal = false;
    bool vertical = false;
    std::vector<std::string> slag;

    foliation::Plane resolve(std::size_t n) const {
        int chosen = (file.empty() ? 0 : 1) + (horizontal ? 1 : 0) + (vertical ? 1 : 0) + (slag.empty() ? 0 : 1);
        if (chosen > 1)
            throw UsageError("choose one of a plane file, --horizontal, --vertical, --slag");
        if (!file.empty())
            return foliation::Plane::from_basis(read_matrix_file(file));
        if (vertical)
            return foliation::vertical_plane(n);
        if (!slag.empty()) {
            if (n != 2)
                throw DomainError("--slag needs a 4 x 4 lattice");
            return foliation::slag_plane(parse_algnum(slag[0]), parse_algnum(slag[1]));
        }
        return foliation::horizontal_plane(n);
    }

    std::string describe() const {
        if (!file.empty())
            return "file:" + file;
        if (vertical)
            return "vertical";
        if (!slag.empty())
            return "slag(" + slag[0] + ", " + slag[1] + ")";
        return "horizontal";
    }

    void add_to(CLI::App* cmd) {
        cmd->add_option("plane", file, "Plane basis file (n rows x 2n columns)");
        cmd->add_flag("--horizontal", horizontal, "Leaves y = const (default)");
        cmd->add_flag("--vertical", vertical, "Leaves x = const");
        cmd->add_option("--slag", slag, "Special Lagrangian plane y1 = a x1 + b x2, y2 = b x1 - a x2")
            ->expected(2);
    }
};

struct UeCmd {
    Common common;
    std::string matrix;
    bool normalize = false;
    PlaneArgs plane;

    void run() const {
        auto l = load_lattice(matrix, normalize);
        auto p = plane.resolve(l.n());
        log("deciding unique ergodicity");
        auto d = foliation::unique_ergodicity(l, p);
        bool verified = foliation::certificate_annihilates(d.certificate, d.lattice_coords);
        if (common.format == "csv") {
            std::string out = "verdict,rational_span_rank,certificate_row\n";
            if (d.certificate.rows() == 0)
                out += foliation::to_string(d.verdict) + "," + std::to_string(d.rational_span_rank) + ",\n";
            for (std::size_t i = 0; i < d.certificate.rows(); ++i) {
                IntVector row(d.certificate.row(i).begin(), d.certificate.row(i).end());
                out += foliation::to_string(d.verdict) + "," + std::to_string(d.rational_span_rank) + "," +
                       join_ints(row) + "\n";
            }
            emit(out, common.output);
            return;
        }
        json cfg = common_config(common);
        cfg["matrix"] = matrix;
        cfg["normalize"] = normalize;
        cfg["plane"] = plane.describe();
        json doc{{"header", header("ue", cfg)},
                 {"verdict", foliation::to_string(d.verdict)},
                 {"certificate", int_rows(d.certificate)},
                 {"certificate_verified", verified},
                 {"rational_span_rank", d.rational_span_rank},
                 {"plane_basis", alg_rows(p.basis())},
                 {"lattice_coords", alg_rows(d.lattice_coords)}};
        emit(dump(doc), common.output);
    }
};

struct SlagCmd {
    Common common;
    PlaneArgs plane;

    void run() const {
        auto p = plane.resolve(2);
        auto c = foliation::check_special_lagrangian(p);
        if (common.format == "csv") {
            emit("lagrangian,special,re_omega,im_omega,reversed\n" + std::string(c.lagrangian ? "true" : "false") +
                     "," + (c.special ? "true" : "false") + "," + csv_field(c.re_omega.to_string()) + "," +
                     csv_field(c.im_omega.to_string()) + "," + (c.reversed ? "true" : "false") + "\n",
                 common.output);
            return;
        }
        json cfg = common_config(common);
        cfg["plane"] = plane.describe();
        json doc{{"header", header("slag-check", cfg)},
                 {"plane_basis", alg_rows(p.basis())},
                 {"lagrangian", c.lagrangian},
                 {"special_lagrangian", c.special},
                 {"re_omega", exact(c.re_omega)},
                 {"im_omega", exact(c.im_omega)},
                 {"reversed", c.reversed}};
        emit(dump(doc), common.output);
    }
};

struct SimulateCmd {
    Common common;
    std::string matrix;
    std::string direction;          // ambient, exact
    std::string lattice_direction;  // lattice coordinates, floats
    std::string start;
    std::uint64_t seed = 1;
    std::uint64_t steps = 1000000;
    int k = 8;
    double step = simulate::kDefaultStep;
    double threshold = 0.05;
    std::vector<std::string> pair;
    std::vector<std::string> box;
    std::string svg;
    std::vector<std::size_t> svg_axes{0, 1};

    void run() const {
        if (k < 2 || (k & (k - 1)) != 0)
            throw UsageError("-k must be a power of two >= 2, got " + std::to_string(k));
        if (steps == 0)
            throw UsageError("--steps must be positive");
        if (!direction.empty() && !lattice_direction.empty())
            throw UsageError("choose one of --direction and --lattice-direction");
        auto l = load_lattice(matrix, false);
        const std::size_t d = l.dim();

        simulate::OrbitSpec spec;
        spec.lattice = lattice::to_real(l.rows());
        spec.step = step;
        spec.steps = steps;
        std::string dir_label;
        if (!lattice_direction.empty()) {
            spec.direction = parse_double_list(lattice_direction, "--lattice-direction");
            dir_label = "lattice:" + lattice_direction;
        } else {
            AlgVector v;
            if (direction.empty()) {
                AlgMatrix h = foliation::horizontal_plane(l.n()).basis();
                v.assign(h.row(l.n() - 1).begin(), h.row(l.n() - 1).end());
            } else {
                v = parse_exact_vector(direction);
            }
            if (v.size() != d)
                throw UsageError("direction has " + std::to_string(v.size()) + " entries, lattice needs " +
                                 std::to_string(d));
            spec.direction = simulate::lattice_direction(l, v);
            dir_label = "ambient:" + (direction.empty() ? std::string("last horizontal axis") : direction);
        }
        if (spec.direction.size() != d)
            throw UsageError("direction needs " + std::to_string(d) + " entries");

        if (!start.empty()) {
            spec.start = parse_double_list(start, "--start");
            if (spec.start.size() != d)
                throw UsageError("--start needs " + std::to_string(d) + " entries");
        } else {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> u(0.0, 1.0);
            for (std::size_t i = 0; i < d; ++i)
                spec.start.push_back(u(rng));
        }

        json cfg = common_config(common);
        cfg["matrix"] = matrix;
        cfg["direction"] = dir_label;
        cfg["direction_lattice_coords"] = spec.direction;
        cfg["start"] = spec.start;
        cfg["seed"] = seed;
        cfg["steps"] = steps;
        cfg["k"] = k;
        cfg["step"] = step;
        cfg["threshold"] = threshold;

        if (!pair.empty()) {
            run_pair(spec, cfg);
            return;
        }
        log("simulating " + std::to_string(steps) + " steps");
        auto r = simulate::orbit_discrepancy(spec, k);
        if (!svg.empty()) {
            if (svg_axes.size() != 2)
                throw UsageError("--svg-axes takes two axis indices");
            emit(simulate::heatmap_svg(r, d, svg_axes[0], svg_axes[1]), svg);
            cfg["svg"] = svg;
        }
        if (common.format == "csv") {
            emit(simulate::to_csv(r, header("simulate", cfg).dump()), common.output);
            return;
        }
        json doc{{"header", header("simulate", cfg)},
                 {"max_deviation", r.max_deviation},
                 {"below_threshold", r.max_deviation < threshold},
                 {"worst_box", {{"level", r.worst_level}, {"index", r.worst_index}}},
                 {"degenerate", r.degenerate},
                 {"frequency_sum", r.frequency_sum},
                 {"cells", r.counts.size()}};
        emit(dump(doc), common.output);
    }

    void run_pair(const simulate::OrbitSpec& spec, json cfg) const {
        const std::size_t d = spec.direction.size();
        auto x = parse_double_list(pair[0], "--pair");
        auto y = parse_double_list(pair[1], "--pair");
        if (x.size() != d || y.size() != d)
            throw UsageError("--pair points need " + std::to_string(d) + " entries each");
        simulate::TestBox tb;
        if (box.empty()) {
            tb.lo.assign(d, 0.0);
            tb.hi.assign(d, 0.5);
        } else {
            tb.lo = parse_double_list(box[0], "--box");
            tb.hi = parse_double_list(box[1], "--box");
            if (tb.lo.size() != d || tb.hi.size() != d)
                throw UsageError("--box corners need " + std::to_string(d) + " entries each");
        }
        cfg["pair"] = {x, y};
        cfg["box"] = {tb.lo, tb.hi};
        log("comparing two orbits of " + std::to_string(spec.steps) + " steps");
        double delta = simulate::pair_comparison(spec, x, y, tb);
        if (common.format == "csv") {
            std::ostringstream os;
            os.precision(17);
            os << "delta\n" << delta << "\n";
            emit(os.str(), common.output);
            return;
        }
        json doc{{"header", header("simulate", cfg)}, {"delta", delta}, {"below_threshold", delta < threshold}};
        emit(dump(doc), common.output);
    }
};

json period_json(const kummer::PeriodVector& v, int digits) {
    json ex = json::array(), ap = json::array();
    for (std::size_t i = 0; i < kummer::kRank; ++i) {
        ex.push_back(exact(v.coordinate(i)));
        ap.push_back(approx(v.coordinate(i), digits));
    }
    return json{{"exact", ex}, {"approx", ap}};
}

struct KummerCmd {
    Common common;
    std::string action;
    std::string matrix;
    bool normalize = false;
    FlowArgs flow;

    void run() const {
        auto l = load_lattice(matrix, normalize);
        json cfg = common_config(common);
        cfg["action"] = action;
        cfg["matrix"] = matrix;
        cfg["normalize"] = normalize;
        cfg.update(flow.config());
        json doc{{"header", header("kummer " + action, cfg)}};
        std::string csv;
        if (action == "periods") {
            auto p = kummer::periods_from_lattice(l);
            json basis = json::array();
            for (std::size_t i = 0; i < kummer::kTorusClasses; ++i)
                basis.push_back(kummer::torus_class_name(i));
            for (std::size_t i = 0; i < kummer::kExceptionalClasses; ++i)
                basis.push_back("C" + std::to_string(i + 1));
            doc["basis"] = basis;
            doc["eta1"] = period_json(p.eta1, common.digits);
            doc["eta2"] = period_json(p.eta2, common.digits);
            doc["eta3"] = period_json(p.eta3, common.digits);
            doc["omega"] = period_json(p.omega, common.digits);
            csv = "class,eta1,eta2,eta3,omega\n";
            for (std::size_t i = 0; i < kummer::kRank; ++i)
                csv += basis[i].get<std::string>() + "," + csv_field(p.eta1.coordinate(i).to_string()) + "," +
                       csv_field(p.eta2.coordinate(i).to_string()) + "," +
                       csv_field(p.eta3.coordinate(i).to_string()) + "," +
                       csv_field(p.omega.coordinate(i).to_string()) + "\n";
            json flowed = json::array();
            for (const auto& s : flow.resolve(false)) {
                auto c = kummer::geodesic_period(l, s.time);
                flowed.push_back({{"label", s.label},
                                  {"approximate", s.approximate},
                                  {"s", exact(s.time.s())},
                                  {"real", period_json(c.real, common.digits)},
                                  {"imag", period_json(c.imag, common.digits)},
                                  {"factorization_checked", true}});
            }
            if (!flowed.empty())
                doc["geodesic_periods"] = flowed;
        } else if (action == "rank") {
            auto r = kummer::rank_criterion_report(l);
            doc["eta2_rank"] = r.rank;
            doc["horizontal_verdict"] = foliation::to_string(r.verdict);
            doc["implication_holds"] = r.implication_holds;
            doc["converse_flag"] = r.converse_flag;
            csv = "eta2_rank,horizontal_verdict,implication_holds,converse_flag\n" + std::to_string(r.rank) + "," +
                  foliation::to_string(r.verdict) + "," + (r.implication_holds ? "true" : "false") + "," +
                  (r.converse_flag ? "true" : "false") + "\n";
        } else {
            auto periods = kummer::periods_from_lattice(l);
            std::vector<std::pair<std::string, kummer::KummerPeriods>> runs{{"1", periods}};
            for (const auto& s : flow.resolve(false)) {
                auto moved = lattice::apply_geodesic(l, s.time);
                runs.push_back({s.label, kummer::periods_from_lattice(moved)});
            }
            json all = json::array();
            bool ok = true;
            csv = "s,relation,residual,pass\n";
            for (const auto& [label, p] : runs) {
                auto r = kummer::verify_period_relations(p);
                json checks = json::array();
                for (const auto& c : r.checks) {
                    checks.push_back({{"relation", c.name}, {"residual", exact(c.residual)}, {"pass", c.pass}});
                    csv += csv_field(label) + "," + csv_field(c.name) + "," + csv_field(c.residual.to_string()) + "," +
                           (c.pass ? "pass" : "fail") + "\n";
                }
                ok = ok && r.all_pass();
                all.push_back({{"s", label}, {"orientation", r.orientation}, {"checks", checks},
                               {"all_pass", r.all_pass()}});
            }
            doc["runs"] = all;
            doc["all_pass"] = ok;
        }
        emit(common.format == "csv" ? csv : dump(doc), common.output);
    }
};

// ---------------------------------------------------------------- repro

struct ReproCmd {
    Common common;
    std::string data_dir;

    fs::path resolve_dir() const {
        if (!data_dir.empty())
            return data_dir;
        if (const char* env = std::getenv("FLATDYN_DATA"))
            return env;
        return FLATDYN_DATA_DIR;
    }

    void run() const {
        fs::path dir = resolve_dir();
        const std::vector<std::pair<std::string, std::string>> inputs{{"identity", "identity.txt"},
                                                                      {"divergent_ue", "divergent_ue.txt"},
                                                                      {"pair_g", "pair_g.txt"},
                                                                      {"pair_h", "pair_h.txt"}};
        for (const auto& [name, file] : inputs)
            if (!fs::is_regular_file(dir / file))
                throw MissingData("bundled example " + (dir / file).string() +
                                  " not found; pass --data DIR or set FLATDYN_DATA to the repository's data/ directory");

        const std::vector<std::string> s_grid{"1/8", "1/4", "1/2", "1", "2", "4", "8"};
        json cfg = common_config(common);
        cfg["data"] = dir.string();
        cfg["s_grid"] = s_grid;
        json doc{{"header", header("repro", cfg)}};
        json rows = json::array();
        std::map<std::string, lattice::TorusLattice> loaded;
        for (const auto& [name, file] : inputs) {
            log("reproducing " + name);
            auto l = lattice::lattice_from_rows(read_matrix_file(dir / file));
            loaded.emplace(name, l);
            auto hz = foliation::unique_ergodicity(l, foliation::horizontal_plane(2));
            auto vt = foliation::unique_ergodicity(l, foliation::vertical_plane(2));
            auto rank = kummer::rank_criterion_report(l);
            auto rel = kummer::verify_period_relations(kummer::periods_from_lattice(l));
            json curve = json::array();
            std::vector<lattice::FlowTime> times;
            for (const auto& s : s_grid)
                times.emplace_back(parse_algnum(s));
            auto probe = lattice::divergence_probe(l, times, common.digits);
            for (std::size_t i = 0; i < s_grid.size(); ++i)
                curve.push_back({{"s", s_grid[i]},
                                 {"norm_sq", exact(probe.samples[i].systole.norm_sq)},
                                 {"norm_sq_approx", probe.samples[i].norm_sq.to_string()},
                                 {"vector", int_vector(probe.samples[i].systole.vector)}});
            auto closed = lattice::closed_direction_certificate(l, foliation::horizontal_plane(2));
            json flags = json::array();
            if (rank.converse_flag)
                flags.push_back("uniquely ergodic with eta2 rank >= 19");
            if (!rank.implication_holds)
                flags.push_back("not uniquely ergodic with eta2 rank < 19");
            if (closed && hz.verdict == foliation::Verdict::UniquelyErgodic)
                flags.push_back("horizontal lattice vector present, foliation still uniquely ergodic");
            rows.push_back({{"name", name},
                            {"file", file},
                            {"det", exact(l.det())},
                            {"horizontal", foliation::to_string(hz.verdict)},
                            {"horizontal_certificate", int_rows(hz.certificate)},
                            {"vertical", foliation::to_string(vt.verdict)},
                            {"eta2_rank", rank.rank},
                            {"relations_pass", rel.all_pass()},
                            {"systole_curve", curve},
                            {"flags", flags}});
        }
        doc["examples"] = rows;
        auto swap = kummer::compare_eta2_by_swap(loaded.at("pair_g"), loaded.at("pair_h"));
        doc["pair_eta2"] = {{"swap_T14_T23_is_isometry", swap.swap_is_isometry},
                            {"related_by_swap", swap.related_by_swap},
                            {"eta2_pair_g", period_json(swap.eta2_first, common.digits)["exact"]},
                            {"eta2_pair_h", period_json(swap.eta2_second, common.digits)["exact"]}};

        if (common.format == "json") {
            emit(dump(doc), common.output);
            return;
        }
        std::ostringstream os;
        os << "flatdyn " << kVersion << " repro (data: " << dir.string() << ")\n\n";
        os << std::left << std::setw(14) << "example" << std::setw(22) << "horizontal" << std::setw(22) << "vertical"
           << std::setw(11) << "eta2_rank" << std::setw(11) << "relations" << "certificate\n";
        for (const auto& r : rows) {
            std::string cert;
            for (const auto& row : r["horizontal_certificate"]) {
                cert += cert.empty() ? "" : "; ";
                cert += "(";
                for (std::size_t i = 0; i < row.size(); ++i)
                    cert += (i ? "," : "") + row[i].dump();
                cert += ")";
            }
            os << std::setw(14) << r["name"].get<std::string>() << std::setw(22)
               << r["horizontal"].get<std::string>() << std::setw(22) << r["vertical"].get<std::string>()
               << std::setw(11) << r["eta2_rank"].get<int>() << std::setw(11)
               << (r["relations_pass"].get<bool>() ? "pass" : "FAIL") << (cert.empty() ? "-" : cert) << "\n";
        }
        os << "\nsystole^2 along s = e^t (decimal, exact values in --format json):\n" << std::setw(14) << "example";
        for (const auto& s : s_grid)
            os << std::setw(12) << ("s=" + s);
        os << "\n";
        for (const auto& r : rows) {
            os << std::setw(14) << r["name"].get<std::string>();
            for (const auto& c : r["systole_curve"])
                {
                    std::ostringstream cell;
                    cell << std::setprecision(6) << parse_algnum(c["norm_sq"].get<std::string>()).to_double();
                    os << std::setw(12) << cell.str();
                }
            os << "\n";
        }
        os << "\nflags:\n";
        for (const auto& r : rows)
            for (const auto& f : r["flags"])
                os << "  " << r["name"].get<std::string>() << ": " << f.get<std::string>() << "\n";
        os << "  pair_g/pair_h: eta2 related by T14<->T23 swap: " << (swap.related_by_swap ? "yes" : "no")
           << " (swap preserves the form: " << (swap.swap_is_isometry ? "yes" : "no") << ")\n";
        emit(os.str(), common.output);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact dynamics on flat tori: systoles, geodesic flow, unique ergodicity, Kummer periods"};
    app.set_version_flag("--version", std::string("flatdyn ") + kVersion);
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", g_verbose, "Progress log with elapsed times on stderr");

    std::function<void()> action;

    SystoleCmd systole;
    auto* c_sys = app.add_subcommand("systole", "Exact systole, optionally along the geodesic flow");
    c_sys->add_option("matrix", systole.matrix, "Lattice matrix file")->required();
    c_sys->add_flag("--normalize", systole.normalize, "Scale to unit covolume (exact scalars only)");
    systole.flow.add_to(c_sys);
    add_common(c_sys, systole.common, {"json", "csv"});
    c_sys->callback([&] { action = [&] { systole.run(); }; });

    FlowCmd flow;
    auto* c_flow = app.add_subcommand("flow", "Apply the geodesic flow diag(1/s, s, ...) to a lattice");
    c_flow->add_option("matrix", flow.matrix, "Lattice matrix file")->required();
    c_flow->add_flag("--normalize", flow.normalize, "Scale to unit covolume (exact scalars only)");
    flow.flow.add_to(c_flow);
    add_common(c_flow, flow.common, {"json", "csv", "matrix"});
    c_flow->callback([&] { action = [&] { flow.run(); }; });

    UeCmd ue;
    auto* c_ue = app.add_subcommand("ue", "Decide unique ergodicity of a linear foliation");
    c_ue->add_option("matrix", ue.matrix, "Lattice matrix file")->required();
    ue.plane.add_to(c_ue);
    c_ue->add_flag("--normalize", ue.normalize, "Scale to unit covolume (exact scalars only)");
    add_common(c_ue, ue.common, {"json", "csv"});
    c_ue->callback([&] { action = [&] { ue.run(); }; });

    SlagCmd slag;
    auto* c_slag = app.add_subcommand("slag-check", "Lagrangian and special Lagrangian tests for a plane in C^2");
    slag.plane.add_to(c_slag);
    add_common(c_slag, slag.common, {"json", "csv"});
    c_slag->callback([&] { action = [&] { slag.run(); }; });

    SimulateCmd sim;
    auto* c_sim = app.add_subcommand("simulate", "Sampled straight-line flow and box discrepancy");
    c_sim->add_option("matrix", sim.matrix, "Lattice matrix file")->required();
    c_sim->add_option("--direction", sim.direction,
                      "Ambient direction as exact entries, e.g. \"0 0 1 0\" (default: last horizontal axis)");
    c_sim->add_option("--lattice-direction", sim.lattice_direction, "Direction in lattice coordinates (decimals)");
    c_sim->add_option("--start", sim.start, "Start point in [0,1)^2n, lattice coordinates");
    c_sim->add_option("--seed", sim.seed, "Seed for the start point when --start is absent")->capture_default_str();
    c_sim->add_option("-N,--steps", sim.steps, "Number of samples")->capture_default_str();
    c_sim->add_option("-k", sim.k, "Boxes per axis (power of two >= 2)")->capture_default_str();
    c_sim->add_option("--step", sim.step, "Time between samples")->capture_default_str();
    c_sim->add_option("--threshold", sim.threshold, "Equidistribution threshold for the report")
        ->capture_default_str();
    c_sim->add_option("--pair", sim.pair, "Compare orbits from two start points X Y")->expected(2);
    c_sim->add_option("--box", sim.box, "Test box corners LO HI for --pair (default [0, 1/2)^2n)")->expected(2);
    c_sim->add_option("--svg", sim.svg, "Write a heat map of two axes to this file");
    c_sim->add_option("--svg-axes", sim.svg_axes, "Axes for the heat map")->expected(2);
    add_common(c_sim, sim.common, {"json", "csv"});
    c_sim->callback([&] { action = [&] { sim.run(); }; });

    KummerCmd kum;
    auto* c_kum = app.add_subcommand("kummer", "Kummer period invariants");
    c_kum->require_subcommand(1);
    for (const char* name : {"periods", "rank", "verify"}) {
        auto* sub = c_kum->add_subcommand(name, std::string("kummer ") + name);
        sub->add_option("matrix", kum.matrix, "4 x 4 lattice matrix file")->required();
        sub->add_flag("--normalize", kum.normalize, "Scale to unit covolume (exact scalars only)");
        kum.flow.add_to(sub);
        add_common(sub, kum.common, {"json", "csv"});
        sub->callback([&, name] {
            kum.action = name;
            action = [&] { kum.run(); };
        });
    }

    ReproCmd repro;
    auto* c_rep = app.add_subcommand("repro", "Run the bundled example suite and print a summary");
    c_rep->add_option("--data", repro.data_dir, "Directory holding the bundled example matrices");
    repro.common.format = "text";
    add_common(c_rep, repro.common, {"text", "json"});
    c_rep->callback([&] { action = [&] { repro.run(); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (action)
            action();
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "flatdyn: parse error: " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        std::cerr << "flatdyn: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "flatdyn: " << e.what() << '\n';
        return 2;
    } catch (const MissingData& e) {
        std::cerr << "flatdyn: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "flatdyn: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "flatdyn: internal error: " << e.what() << '\n';
        return 1;
    }
}
