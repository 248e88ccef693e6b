#include "convrest/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "convrest/chart.hpp"
#include "convrest/measure.hpp"
#include "convrest/rect_cover.hpp"
#include "convrest/restriction.hpp"

namespace convrest {

namespace {

constexpr const char* kVersion = "0.1.0";

// J0 by power series for small arguments, Hankel expansion beyond.
double bessel_j0(double x) {
    x = std::fabs(x);
    if (x < 13.0) {
        long double term = 1.0L, sum = 1.0L;
        long double q = (long double)(x) * x / 4.0L;
        for (int k = 1; k <= 64; ++k) {
            term *= -q / ((long double)k * k);
            sum += term;
            if (std::fabs((double)term) < 1e-19) break;
        }
        return (double)sum;
    }
    double z = 8.0 / x, z2 = z * z;
    double p = 1.0 + z2 * (-0.1098628627e-2 +
                           z2 * (0.2734510407e-4 + z2 * (-0.2073370639e-5 + z2 * 0.2093887211e-6)));
    double q = z * (-0.1562499995e-1 +
                    z2 * (0.1430488765e-3 +
                          z2 * (-0.6911147651e-5 + z2 * (0.7621095161e-6 - z2 * 0.934935152e-7))));
    double chi = x - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

SymMat2 rotated_diag(double l1, double l2, double angle) {
    Mat2 r = Mat2::rotation(angle);
    SymMat2 d{l1, 0.0, l2};
    return d.congruence(r);
}

Vec2 json_vec(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

void expect_keys(const nlohmann::json& j, std::initializer_list<const char*> keys,
                 const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : keys) ok = ok || it.key() == k;
        if (!ok) throw std::invalid_argument("unknown key \"" + it.key() + "\" in " + where);
    }
}

}  // namespace

std::vector<double> DeltaSchedule::resolve(double diam) const {
    if (k_min > k_max) throw std::invalid_argument("delta schedule: k_min > k_max");
    std::vector<double> out;
    for (int k = k_min; k <= k_max; ++k) out.push_back(diam * std::exp2(-k));
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig c;
    // The finest default delta is diam * 2^-10; 2^14 nodes keep several chart
    // nodes inside every covering rectangle at that scale.
    c.deltas = {2, 10};
    c.curves = {
        {.kind = "circle", .name = "circle", .radius = 1.0, .nodes = 1 << 14},
        {.kind = "ellipse", .name = "ellipse2x1", .a = 2.0, .b = 1.0, .nodes = 1 << 14},
        {.kind = "superellipse", .name = "superellipse4", .a = 1.0, .b = 1.0,
         .exponent = 4.0, .nodes = 1 << 14},
        {.kind = "regular_ngon", .name = "ngon64", .radius = 1.0, .ngon = 64},
        {.kind = "stadium", .name = "stadium", .radius = 1.0, .flat = 2.0, .nodes = 1 << 14},
    };
    // Wide transforms (inv_cov eigenvalues 7..15 give fhat decay scales of a
    // few units) keep restriction norms comparable across unit-scale curves.
    int idx = 0;
    for (double lam : {9.0, 12.0, 15.0}) {
        for (int aniso = 0; aniso < 2; ++aniso) {
            for (int mod = 0; mod < 2; ++mod) {
                GaussianWave g;
                std::ostringstream nm;
                nm << "g" << idx;
                g.name = nm.str();
                g.inv_cov = aniso ? rotated_diag(lam, 0.75 * lam, kPi / 6.0)
                                  : SymMat2::isotropic(lam);
                g.modulation = mod ? Vec2{0.5, 0.25} : Vec2{0.0, 0.0};
                g.center = (idx % 3 == 1) ? Vec2{0.4, -0.3} : Vec2{0.0, 0.0};
                g.amplitude = 1.0;
                c.gaussians.push_back(g);
                ++idx;
            }
        }
    }
    return c;
}

void ExperimentConfig::validate() const {
    if (curves.empty()) throw std::invalid_argument("no curves");
    if (gaussians.empty()) throw std::invalid_argument("no test functions");
    if (partition_pieces < 1) throw std::invalid_argument("partition_pieces must be >= 1");
    if (probe.k_min > probe.k_max) throw std::invalid_argument("probe scale range is empty");
    for (const GaussianWave& g : gaussians) g.validate();
    for (double p : exponents)
        if (!(p >= 1.0)) throw std::invalid_argument("exponents must be >= 1");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    expect_keys(j,
                {"seed", "partition_pieces", "delta_k_min", "delta_k_max", "exponents",
                 "shear", "curves", "gaussians", "probe", "fields"},
                "config");
    ExperimentConfig c = defaults();
    c.curves.clear();
    c.gaussians.clear();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("partition_pieces")) c.partition_pieces = j["partition_pieces"].get<int>();
    if (j.contains("delta_k_min")) c.deltas.k_min = j["delta_k_min"].get<int>();
    if (j.contains("delta_k_max")) c.deltas.k_max = j["delta_k_max"].get<int>();
    if (j.contains("shear")) c.shear = j["shear"].get<double>();
    if (j.contains("exponents")) {
        c.exponents.clear();
        for (const auto& p : j["exponents"]) c.exponents.push_back(p.get<double>());
    }
    if (j.contains("curves")) {
        for (const auto& cj : j["curves"]) {
            expect_keys(cj,
                        {"kind", "name", "radius", "a", "b", "exponent", "flat", "halfwidth",
                         "nodes", "ngon", "points", "path"},
                        "curve spec");
            CurveFamilySpec s;
            s.kind = cj.at("kind").get<std::string>();
            if (cj.contains("name")) s.name = cj["name"].get<std::string>();
            if (cj.contains("radius")) s.radius = cj["radius"].get<double>();
            if (cj.contains("a")) s.a = cj["a"].get<double>();
            if (cj.contains("b")) s.b = cj["b"].get<double>();
            if (cj.contains("exponent")) s.exponent = cj["exponent"].get<double>();
            if (cj.contains("flat")) s.flat = cj["flat"].get<double>();
            if (cj.contains("halfwidth")) s.halfwidth = cj["halfwidth"].get<double>();
            if (cj.contains("nodes")) s.nodes = cj["nodes"].get<int>();
            if (cj.contains("ngon")) s.ngon = cj["ngon"].get<int>();
            if (cj.contains("points")) s.points = cj["points"].get<int>();
            if (cj.contains("path")) s.path = cj["path"].get<std::string>();
            c.curves.push_back(s);
        }
    }
    if (j.contains("gaussians")) {
        for (const auto& gj : j["gaussians"]) {
            expect_keys(gj, {"name", "center", "inv_cov", "modulation", "amplitude"},
                        "gaussian spec");
            GaussianWave g;
            if (gj.contains("name")) g.name = gj["name"].get<std::string>();
            if (gj.contains("center")) g.center = json_vec(gj["center"]);
            if (gj.contains("modulation")) g.modulation = json_vec(gj["modulation"]);
            if (gj.contains("amplitude")) g.amplitude = gj["amplitude"].get<double>();
            if (gj.contains("inv_cov")) {
                const auto& q = gj["inv_cov"];
                if (!q.is_array() || q.size() != 3)
                    throw std::invalid_argument("inv_cov must be [xx, xy, yy]");
                g.inv_cov = {q[0].get<double>(), q[1].get<double>(), q[2].get<double>()};
            }
            c.gaussians.push_back(g);
        }
    }
    if (j.contains("probe")) {
        const auto& pj = j["probe"];
        expect_keys(pj, {"points", "k_min", "k_max", "gaussians"}, "probe config");
        if (pj.contains("points")) c.probe.points = pj["points"].get<int>();
        if (pj.contains("k_min")) c.probe.k_min = pj["k_min"].get<int>();
        if (pj.contains("k_max")) c.probe.k_max = pj["k_max"].get<int>();
        if (pj.contains("gaussians")) c.probe.gaussians = pj["gaussians"].get<int>();
    }
    if (j.contains("fields")) {
        const auto& fj = j["fields"];
        expect_keys(fj, {"enabled", "xi_max", "grid"}, "fields config");
        if (fj.contains("enabled")) c.fields.enabled = fj["enabled"].get<bool>();
        if (fj.contains("xi_max")) c.fields.xi_max = fj["xi_max"].get<double>();
        if (fj.contains("grid")) c.fields.grid = fj["grid"].get<int>();
    }
    if (c.curves.empty()) throw std::invalid_argument("no curves");
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json_text(ss.str());
}

namespace {

struct PreparedCurve {
    std::string id;
    ConvexCurve curve;
    ArclengthChart chart;
    double nu_total = 0.0;
};

struct CsvTable {
    std::string header;
    std::vector<std::string> rows;

    std::string render() const {
        std::string out = header;
        out += '\n';
        for (const std::string& r : rows) {
            out += r;
            out += '\n';
        }
        return out;
    }
};

void write_text(const std::filesystem::path& path, const std::string& content,
                std::vector<std::string>* files) {
    std::ofstream f(path, std::ios::binary);
    f << content;
    files->push_back(path.string());
}

// Random subintervals with closed turning at most pi/2.
std::vector<Interval> sample_small_turning_intervals(const ArclengthChart& chart, int count,
                                                     std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, chart.total_length());
    std::vector<Interval> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < count && guard < count * 200) {
        ++guard;
        double a = uni(rng), b = uni(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 32.0 * chart.snap_tol()) continue;
        Interval iv{a, b};
        if (chart.turning_measure(iv, Endpoint::Closed, Endpoint::Closed) <= 0.5 * kPi)
            out.push_back(iv);
    }
    return out;
}

double smooth_param_near(const ArclengthChart& chart, double t) {
    // Nudge away from corner nodes so tangent evaluations stay single-valued.
    std::size_t idx;
    double step = 16.0 * chart.snap_tol();
    double L = chart.total_length();
    for (int k = 0; k < 64; ++k) {
        double cand = std::fmod(t + k * step, L);
        if (!chart.at_node(cand, &idx)) return cand;
        if (!chart.node_corner(idx)) return cand;
    }
    return t;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                          unsigned parts) {
    config.validate();
    RunOutcome outcome;
    std::mt19937_64 rng(config.seed);

    std::vector<PreparedCurve> prepared;
    for (const CurveFamilySpec& spec : config.curves) {
        ConvexCurve curve = generate(spec, config.seed);
        ArclengthChart chart = ArclengthChart::build(curve);
        PreparedCurve pc{spec.id(), std::move(curve), std::move(chart)};
        pc.nu_total = nu_mass(pc.chart, {0.0, pc.chart.total_length()});
        prepared.push_back(std::move(pc));
    }

    auto add_flag = [&](const std::string& id, bool pass, double value) {
        outcome.flags.push_back({id, pass, value});
    };

    // --- geometry core, nu closed forms, Jacobian identity: always evaluated ---
    {
        ArclengthChart circle = ArclengthChart::build(make_circle(1.0, 1 << 12));
        double len_err = std::fabs(circle.total_length() - kTwoPi);
        double turn_err = std::fabs(circle.total_turning() - kTwoPi);
        double kap_err = 0.0;
        for (std::size_t i = 0; i < circle.node_count(); ++i)
            kap_err = std::max(kap_err, std::fabs(circle.node_kappa(i) - 1.0));
        bool pass = len_err <= 1e-5 && turn_err <= 1e-9 && kap_err <= 1e-4;
        add_flag("geometry_core", pass, std::max({len_err, turn_err, kap_err}));

        double nu_circle = nu_mass(circle, {0.0, circle.total_length()});
        ArclengthChart square = ArclengthChart::build(make_regular_ngon(4, std::sqrt(2.0)));
        double nu_square = nu_mass(square, {0.0, square.total_length()});
        ArclengthChart ell = ArclengthChart::build(make_ellipse(2.0, 0.5, 4096));
        ArclengthChart circ2 = ArclengthChart::build(make_circle(1.0, 4096));
        double nu_ell = nu_mass(ell, {0.0, ell.total_length()});
        double nu_c2 = nu_mass(circ2, {0.0, circ2.total_length()});
        double inv_err = std::fabs(nu_ell - nu_c2) / nu_c2;  // ellipse 2 x 1/2 = sheared circle
        bool nu_pass = std::fabs(nu_circle - kTwoPi) <= 1e-4 && nu_square == 0.0 &&
                       inv_err <= 1e-3;
        add_flag("nu_closed_forms", nu_pass,
                 std::max({std::fabs(nu_circle - kTwoPi), nu_square, inv_err}));

        double worst = 0.0;
        double region_slack = 0.0;
        for (const PreparedCurve& pc : prepared) {
            std::uniform_real_distribution<double> uni(0.0, pc.chart.total_length());
            for (int k = 0; k < 500; ++k) {
                double s = smooth_param_near(pc.chart, uni(rng));
                double t = smooth_param_near(pc.chart, uni(rng));
                if (s == t) continue;
                if (t > s) std::swap(s, t);
                try {
                    double det = cs_jacobian(pc.chart, s, t);
                    double ref = std::sin(pc.chart.turning_r(t) - pc.chart.turning_r(s));
                    worst = std::max(worst, std::fabs(det - ref));
                    RegionCheck rc = region_split(pc.chart, s, t);
                    region_slack = std::min(region_slack, rc.slack());
                } catch (const SingularPoint&) {
                }
            }
        }
        add_flag("cs_identity", worst <= 1e-9 && region_slack >= -1e-12,
                 std::max(worst, -region_slack));
    }

    // --- measure part ---
    CsvTable comp_csv;
    comp_csv.header =
        "curve,interval_start,interval_end,nu,mu_upper_cost,lower_bound,ratio_upper,"
        "ratio_lower,delta,n_rects,converged";
    nlohmann::ordered_json comp_json;
    {
        const LowerConstant& lc = lower_constant();
        comp_json["constants"] = {{"A", lc.value},
                                  {"B", upper_constant()},
                                  {"holder_integral", lc.holder_integral},
                                  {"det_bound", lc.det_bound},
                                  {"area_factor", lc.area_factor}};
        comp_json["curves"] = nlohmann::ordered_json::array();
    }

    double sandwich_margin = std::numeric_limits<double>::infinity();
    bool sandwich_pass = true;
    double cover_violation = -std::numeric_limits<double>::infinity();
    bool cover_pass = true;

    if (parts & kRunMeasure) {
        for (const PreparedCurve& pc : prepared) {
            std::vector<double> schedule = config.deltas.resolve(pc.chart.diameter());
            std::vector<Interval> partition =
                partition_by_turning(pc.chart, config.partition_pieces);
            ComparabilityReport rep;
            try {
                rep = comparability_report(pc.chart, partition, schedule);
            } catch (const CurveError& e) {
                outcome.errors.push_back(pc.id + ": " + e.what());
                continue;
            }
            nlohmann::ordered_json jc;
            jc["curve"] = pc.id;
            jc["rows"] = nlohmann::ordered_json::array();
            for (const ComparabilityRow& row : rep.rows) {
                std::ostringstream os;
                os << pc.id << ',' << format_double(row.iv.lo) << ',' << format_double(row.iv.hi)
                   << ',' << format_double(row.nu) << ',' << format_double(row.mu_upper_cost)
                   << ',' << format_double(row.lower_bound) << ','
                   << format_double(row.ratio_upper) << ',' << format_double(row.ratio_lower)
                   << ',' << format_double(row.delta) << ',' << row.n_rects << ','
                   << (row.converged ? 1 : 0);
                comp_csv.rows.push_back(os.str());
                jc["rows"].push_back({{"lo", row.iv.lo},
                                      {"hi", row.iv.hi},
                                      {"nu", row.nu},
                                      {"mu_upper_cost", row.mu_upper_cost},
                                      {"lower_bound", row.lower_bound},
                                      {"delta", row.delta},
                                      {"n_rects", row.n_rects},
                                      {"converged", row.converged}});
                if (row.finest && row.converged) {
                    double lo_margin = row.mu_upper_cost - row.lower_bound;
                    double hi_margin = row.nu + 1e-6 - row.mu_upper_cost;
                    sandwich_margin = std::min({sandwich_margin, lo_margin, hi_margin});
                    if (lo_margin < 0.0 || hi_margin < 0.0) sandwich_pass = false;
                } else if (row.finest) {
                    sandwich_pass = false;
                }
            }
            // Covering rectangles at the coarsest delta, for plotting.
            try {
                Covering cov = mu_upper(pc.chart, {0.0, pc.chart.total_length()},
                                        schedule.front());
                nlohmann::ordered_json rects = nlohmann::ordered_json::array();
                for (const CoverPiece& p : cov.pieces)
                    rects.push_back({{"ax", p.rect.corner_a.x},
                                     {"ay", p.rect.corner_a.y},
                                     {"bx", p.rect.corner_b.x},
                                     {"by", p.rect.corner_b.y},
                                     {"h", p.rect.h}});
                jc["rects_at_coarsest_delta"] = std::move(rects);
            } catch (const CurveError& e) {
                outcome.errors.push_back(pc.id + ": coarse covering: " + e.what());
            }
            comp_json["curves"].push_back(std::move(jc));

            // Lemma 3.1 and Part I inequalities on random small-turning intervals.
            for (const Interval& iv : sample_small_turning_intervals(pc.chart, 200, rng)) {
                try {
                    Rect r = rect_over_interval(pc.chart, iv);
                    double sig =
                        pc.chart.turning_measure(iv, Endpoint::Closed, Endpoint::Closed);
                    double v1 = r.h / iv.length() - sig - 1e-9;
                    double v2 = sumset_area(pc.chart, iv) - 4.0 * r.area() - 1e-9;
                    cover_violation = std::max({cover_violation, v1, v2});
                    if (v1 > 0.0 || v2 > 0.0) cover_pass = false;
                } catch (const TurningTooLarge&) {
                }
            }
        }
        if (!std::isfinite(sandwich_margin)) sandwich_pass = false;
        add_flag("comparability_sandwich", sandwich_pass, sandwich_margin);
        add_flag("covering_inequalities", cover_pass, cover_violation);
    }

    // --- restrict part ---
    CsvTable ratio_csv;
    ratio_csv.header = "curve,test_function,p,q,numerator,denominator,ratio,maximal,status";
    std::vector<std::pair<std::string, std::string>> field_dumps;
    if (parts & kRunRestrict) {
        double spread_worst = 1.0;
        double shear_dev_worst = 0.0;
        bool gate_ok = false;
        try {
            norm_ratio(prepared.front().chart, config.gaussians.front(), 4.0 / 3.0);
        } catch (const ExponentOutOfRange&) {
            gate_ok = true;
        }

        Mat2 shear = Mat2::shear_x(config.shear);
        std::vector<const PreparedCurve*> curved;
        for (const PreparedCurve& pc : prepared)
            if (pc.nu_total > 1e-9) curved.push_back(&pc);

        std::vector<ArclengthChart> sheared;
        for (const PreparedCurve* pc : curved)
            sheared.push_back(ArclengthChart::build(pc->curve.transformed(shear)));

        for (double p : config.exponents) {
            for (const GaussianWave& g : config.gaussians) {
                double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
                for (std::size_t ci = 0; ci < prepared.size(); ++ci) {
                    const PreparedCurve& pc = prepared[ci];
                    std::string status = "ok";
                    NormRatioRow row;
                    row.curve_id = pc.id;
                    row.tf_id = g.name;
                    row.p = p;
                    try {
                        row = norm_ratio(pc.chart, g, p);
                        row.curve_id = pc.id;
                    } catch (const CurveError& e) {
                        status = "ExponentOutOfRange";
                        outcome.errors.push_back(pc.id + "/" + g.name + ": " + e.what());
                    }
                    std::ostringstream os;
                    os << row.curve_id << ',' << row.tf_id << ',' << format_double(p) << ','
                       << format_double(row.q) << ',' << format_double(row.numerator) << ','
                       << format_double(row.denominator) << ',' << format_double(row.ratio)
                       << ',' << (row.maximal ? 1 : 0) << ',' << status;
                    ratio_csv.rows.push_back(os.str());
                    if (status == "ok" && pc.nu_total > 1e-9 && row.ratio > 0.0) {
                        lo = std::min(lo, row.ratio);
                        hi = std::max(hi, row.ratio);
                    }
                }
                if (p == config.exponents.front() && hi > 0.0 && std::isfinite(lo))
                    spread_worst = std::max(spread_worst, hi / lo);
            }
        }

        // Shear stability at the first exponent.
        double p0 = config.exponents.front();
        if (p0 >= 1.0 && p0 < 4.0 / 3.0) {
            for (std::size_t k = 0; k < curved.size(); ++k) {
                for (const GaussianWave& g : config.gaussians) {
                    double base = norm_ratio(curved[k]->chart, g, p0).ratio;
                    double mapped = norm_ratio(sheared[k], g.companion_under(shear), p0).ratio;
                    if (base > 0.0)
                        shear_dev_worst =
                            std::max(shear_dev_worst, std::fabs(mapped / base - 1.0));
                }
            }
        }
        bool uni_pass = gate_ok && spread_worst <= 3.0 && shear_dev_worst <= 0.05;
        add_flag("uniformity_surrogate", uni_pass, spread_worst);

        // Extension self-checks and field dumps: value at xi = 0 equals the
        // total nu mass; the circle value matches the Bessel closed form.
        double ext_err = 0.0;
        for (const PreparedCurve& pc : prepared) {
            std::vector<std::complex<double>> ones(pc.chart.node_count(), {1.0, 0.0});
            ExtensionResult at0 = extension(pc.chart, ones, {Vec2{0.0, 0.0}});
            ext_err = std::max(ext_err, std::abs(at0.values[0] - pc.nu_total));
        }
        {
            const ArclengthChart& c0 = prepared.front().chart;
            if (prepared.front().nu_total > 1e-9) {
                std::vector<std::complex<double>> ones(c0.node_count(), {1.0, 0.0});
                for (double r : {0.5, 1.0, 2.0}) {
                    if (prepared.front().id.rfind("circle", 0) != 0) break;
                    ExtensionResult e = extension(c0, ones, {Vec2{r, 0.0}});
                    double ref = kTwoPi * bessel_j0(kTwoPi * r);
                    ext_err = std::max(ext_err, std::abs(e.values[0] - ref));
                }
            }
        }
        add_flag("extension_oracle", ext_err <= 1e-5, ext_err);

        if (config.fields.enabled) {
            for (const PreparedCurve& pc : prepared) {
                std::vector<std::complex<double>> ones(pc.chart.node_count(), {1.0, 0.0});
                std::vector<Vec2> grid;
                int g = std::max(2, config.fields.grid);
                for (int iy = 0; iy < g; ++iy)
                    for (int ix = 0; ix < g; ++ix)
                        grid.push_back({-config.fields.xi_max +
                                            2.0 * config.fields.xi_max * ix / (g - 1),
                                        -config.fields.xi_max +
                                            2.0 * config.fields.xi_max * iy / (g - 1)});
                ExtensionResult field = extension(pc.chart, ones, grid);
                std::ostringstream os;
                os << "# extension field: curve=" << pc.id << " xi_max=" << config.fields.xi_max
                   << " grid=" << g << "\n# columns: xi_x xi_y re im\n";
                for (std::size_t i = 0; i < grid.size(); ++i)
                    os << format_double(grid[i].x) << ' ' << format_double(grid[i].y) << ' '
                       << format_double(field.values[i].real()) << ' '
                       << format_double(field.values[i].imag()) << '\n';
                field_dumps.emplace_back("extension_" + pc.id + ".txt", os.str());
            }
        }
    }

    // --- probe part ---
    CsvTable probe_csv;
    probe_csv.header = "curve,test_function,t,scale,average_abs,error,fhat_abs";
    if (parts & kRunProbe) {
        const PreparedCurve* target = nullptr;
        for (const PreparedCurve& pc : prepared)
            if (pc.nu_total > 1e-9) { target = &pc; break; }
        double min_slope = std::numeric_limits<double>::infinity();
        bool probe_pass = target != nullptr;
        if (target) {
            std::vector<double> scales;
            for (int k = config.probe.k_min; k <= config.probe.k_max; ++k)
                scales.push_back(std::exp2(-k));
            int n_g = std::min<int>(config.probe.gaussians,
                                    static_cast<int>(config.gaussians.size()));
            for (int gi = 0; gi < n_g; ++gi) {
                const GaussianWave& g = config.gaussians[static_cast<std::size_t>(gi)];
                for (int k = 0; k < config.probe.points; ++k) {
                    double t = smooth_param_near(
                        target->chart,
                        target->chart.total_length() * (k + 0.37) / config.probe.points);
                    try {
                        LebesgueProbe pr = lebesgue_point_probe(target->chart, g, t, scales);
                        for (const ProbeRow& row : pr.rows) {
                            std::ostringstream os;
                            os << target->id << ',' << g.name << ',' << format_double(t) << ','
                               << format_double(row.scale) << ','
                               << format_double(row.average_abs) << ','
                               << format_double(row.error) << ','
                               << format_double(pr.fhat_abs);
                            probe_csv.rows.push_back(os.str());
                        }
                        if (!pr.exact) {
                            min_slope = std::min(min_slope, pr.loglog_slope);
                            if (pr.loglog_slope < 0.9) probe_pass = false;
                        }
                    } catch (const CurveError& e) {
                        outcome.errors.push_back(target->id + "/" + g.name + ": " + e.what());
                        probe_pass = false;
                    }
                }
            }
        }
        if (!std::isfinite(min_slope)) min_slope = 0.0;
        add_flag("lebesgue_probe", probe_pass, min_slope);
    }

    // --- reproducibility of the emitted bytes ---
    {
        std::string a = comp_csv.render() + ratio_csv.render() + probe_csv.render();
        std::string b = comp_csv.render() + ratio_csv.render() + probe_csv.render();
        add_flag("reproducibility", a == b, a == b ? 0.0 : 1.0);
    }

    // --- write outputs ---
    namespace fs = std::filesystem;
    fs::path dir(out_dir);
    fs::create_directories(dir);
    if (parts & kRunMeasure) {
        write_text(dir / "comparability.csv", comp_csv.render(), &outcome.files_written);
        write_text(dir / "comparability.json", comp_json.dump(2) + "\n",
                   &outcome.files_written);
    }
    if (parts & kRunRestrict) {
        write_text(dir / "norm_ratios.csv", ratio_csv.render(), &outcome.files_written);
        if (!field_dumps.empty()) {
            fs::create_directories(dir / "fields");
            for (const auto& [name, content] : field_dumps)
                write_text(dir / "fields" / name, content, &outcome.files_written);
        }
    }
    if (parts & kRunProbe)
        write_text(dir / "lebesgue_probe.csv", probe_csv.render(), &outcome.files_written);

    nlohmann::ordered_json manifest;
    manifest["version"] = kVersion;
    manifest["seed"] = config.seed;
    {
        const LowerConstant& lc = lower_constant();
        manifest["constants"] = {{"A", lc.value},
                                 {"B", upper_constant()},
                                 {"holder_integral", lc.holder_integral},
                                 {"det_bound", lc.det_bound},
                                 {"area_factor", lc.area_factor}};
    }
    manifest["partial"] = parts != kRunAll;
    manifest["criteria"] = nlohmann::ordered_json::object();
    for (const CriterionFlag& f : outcome.flags)
        manifest["criteria"][f.id] = {{"pass", f.pass}, {"value", f.value}};
    manifest["errors"] = outcome.errors;
    write_text(dir / "manifest.json", manifest.dump(2) + "\n", &outcome.files_written);

    outcome.all_pass = outcome.errors.empty() &&
                       std::all_of(outcome.flags.begin(), outcome.flags.end(),
                                   [](const CriterionFlag& f) { return f.pass; });
    return outcome;
}

}  // namespace convrest
