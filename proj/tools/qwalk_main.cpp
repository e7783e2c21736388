#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qwalk/coin.hpp"
#include "qwalk/ddim.hpp"
#include "qwalk/escape.hpp"
#include "qwalk/fit.hpp"
#include "qwalk/io.hpp"
#include "qwalk/quadrature.hpp"
#include "qwalk/walk.hpp"

namespace {

using namespace qwalk;
using nlohmann::json;

// Exit codes: 0 success, 2 config error, 3 resource refusal, 4 numerical
// non-convergence.
struct CliError : std::runtime_error {
    int code;
    CliError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError(code, msg); }

struct Options {
    std::string coin = "hadamard";
    std::string start;
    long wall = -1;
    std::string walls;
    long steps = -1;
    std::string wavepacket;
    int table = 0;
    long max_m = 5;
    std::string window;
    int d = 1;
    double quad_tol = 1e-11;
    double mem_cap = 4.0 * 1073741824.0;
    std::string out;
    std::string format = "csv";
    std::string config_path;
};

double parse_double(const std::string& s, const std::string& flag) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        fail(2, flag + " expects a number (got '" + s + "')");
    return v;
}

long parse_long(const std::string& s, const std::string& flag) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size())
        fail(2, flag + " expects an integer (got '" + s + "')");
    return v;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<double> parse_list(const std::string& s, const std::string& flag) {
    std::vector<double> vals;
    for (const std::string& p : split_commas(s)) vals.push_back(parse_double(p, flag));
    return vals;
}

// "hadamard" or a key=value list such as "rho=0.5,phi=0.3"; keys rho (required
// there), phi, psi, eta.
Coin parse_coin(const std::string& s) {
    if (s == "hadamard") return hadamard_coin();
    double rho = -1.0, phi = 0.0, psi = 0.0, eta = 0.0;
    for (const std::string& part : split_commas(s)) {
        const size_t eq = part.find('=');
        if (eq == std::string::npos)
            fail(2, "--coin must be 'hadamard' or a key=value list (got '" + s + "')");
        const std::string key = part.substr(0, eq);
        const double val = parse_double(part.substr(eq + 1), "--coin " + key);
        if (key == "rho")
            rho = val;
        else if (key == "phi")
            phi = val;
        else if (key == "psi")
            psi = val;
        else if (key == "eta")
            eta = val;
        else
            fail(2, "--coin has no key '" + key + "' (use rho, phi, psi, eta)");
    }
    if (rho < 0.0 && s.find("rho=") == std::string::npos)
        fail(2, "--coin must set rho (e.g. rho=0.5)");
    if (!(rho >= 0.0 && rho <= 1.0))
        fail(2, "--coin must satisfy 0 <= rho <= 1 (got " + fmt12(rho) + ")");
    return make_coin(rho, phi, psi, eta);
}

struct StartSpec {
    StartSpinor spinor;
    bool compensated = false;
};

StartSpec parse_start(const std::string& s) {
    StartSpec spec;
    std::string nums = s.empty() ? "1,0" : s;
    if (nums == "compensated") {
        spec.compensated = true;
        nums = "1,0";
    } else if (nums.rfind("compensated:", 0) == 0) {
        spec.compensated = true;
        nums = nums.substr(std::strlen("compensated:"));
    }
    const std::vector<double> v = parse_list(nums, "--start");
    cdouble alpha, beta;
    if (v.size() == 2) {
        alpha = {v[0], 0.0};
        beta = {v[1], 0.0};
    } else if (v.size() == 4) {
        alpha = {v[0], v[1]};
        beta = {v[2], v[3]};
    } else {
        fail(2, "--start must be 'a,b', 'are,aim,bre,bim', or 'compensated[:...]'");
    }
    if (alpha == cdouble{} && beta == cdouble{}) fail(2, "--start must be a nonzero spinor");
    spec.spinor = make_start(alpha, beta);
    return spec;
}

// 2d reals or 4d re,im pairs, normalized; empty means the uniform start.
std::vector<cdouble> parse_ddim_start(const std::string& s, int d) {
    const long twod = 2L * d;
    std::vector<cdouble> start(twod);
    if (s.empty()) {
        const double a = 1.0 / std::sqrt(static_cast<double>(twod));
        for (cdouble& c : start) c = {a, 0.0};
        return start;
    }
    if (s.rfind("compensated", 0) == 0)
        fail(2, "--start compensated applies to the 1D subcommands only");
    const std::vector<double> v = parse_list(s, "--start");
    if (static_cast<long>(v.size()) == twod) {
        for (long c = 0; c < twod; ++c) start[c] = {v[c], 0.0};
    } else if (static_cast<long>(v.size()) == 2 * twod) {
        for (long c = 0; c < twod; ++c) start[c] = {v[2 * c], v[2 * c + 1]};
    } else {
        fail(2, "--start must list 2d reals or 2d re,im pairs for dimension d=" +
                    std::to_string(d));
    }
    if (d == 1) {
        if (start[0] == cdouble{} && start[1] == cdouble{})
            fail(2, "--start must be a nonzero spinor");
        const StartSpinor sp = make_start(start[0], start[1]);
        start[0] = sp.alpha;
        start[1] = sp.beta;
        return start;
    }
    double n2 = 0.0;
    for (const cdouble& c : start) n2 += std::norm(c);
    if (n2 == 0.0) fail(2, "--start must be a nonzero amplitude vector");
    const double scale = 1.0 / std::sqrt(n2);
    for (cdouble& c : start) c *= scale;
    return start;
}

std::string json_array(const std::vector<double>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt12(v[i]);
    return s + "]";
}

std::string coin_json(const Coin& c) {
    return "{\"rho\": " + fmt12(c.rho) + ", \"phi\": " + fmt12(c.phi) +
           ", \"psi\": " + fmt12(c.psi) + ", \"eta\": " + fmt12(c.eta) + "}";
}

std::string spinor_json(const StartSpinor& s) {
    return json_array({s.alpha.real(), s.alpha.imag(), s.beta.real(), s.beta.imag()});
}

// Cumulative absorbed probability per side plus the surviving probability,
// one row per step.
TableDoc absorption_doc(const AbsorptionRecord& rec) {
    TableDoc doc;
    doc.columns = {"t", "absorbed_left", "absorbed_right", "remaining"};
    double acc_left = 0.0, acc_right = 0.0;
    for (long t = 1; t <= rec.T; ++t) {
        if (!rec.per_step_left.empty()) acc_left += rec.per_step_left[t - 1];
        acc_right += rec.per_step_right[t - 1];
        doc.rows.push_back(
            {static_cast<double>(t), acc_left, acc_right, rec.remaining[t - 1]});
    }
    return doc;
}

long require_steps(const Options& o, long min_value = 1) {
    if (o.steps < 0) fail(2, "--steps is required");
    if (o.steps < min_value)
        fail(2, "--steps must satisfy T >= " + std::to_string(min_value) + " (got " +
                    std::to_string(o.steps) + ")");
    return o.steps;
}

long require_wall(long wall) {
    if (wall < 0) fail(2, "--wall is required");
    if (wall < 1) fail(2, "--wall must satisfy M >= 1 (got " + std::to_string(wall) + ")");
    return wall;
}

std::pair<long, long> parse_walls(const std::string& s) {
    const std::vector<std::string> parts = split_commas(s);
    if (parts.size() != 2) fail(2, "--walls must be 'M_L,M_R' (got '" + s + "')");
    const long ml = parse_long(parts[0], "--walls");
    const long mr = parse_long(parts[1], "--walls");
    if (ml < 1 || mr < 1)
        fail(2, "--walls must satisfy M_L >= 1 and M_R >= 1 (got " + s + ")");
    return {ml, mr};
}

TableDoc cmd_simulate(const Options& o) {
    Coin coin = parse_coin(o.coin);
    StartSpec start = parse_start(o.start);
    if (start.compensated) {
        start.spinor = compensated_start(coin, start.spinor);
        coin = make_coin(coin.rho);
    }

    TableDoc doc;
    if (!o.wavepacket.empty()) {
        const std::vector<double> wp = parse_list(o.wavepacket, "--wavepacket");
        if (wp.size() != 2) fail(2, "--wavepacket must be 'k0,width'");
        const double k0 = wp[0], width = wp[1];
        if (width <= 0.0)
            fail(2, "--wavepacket must satisfy width > 0 (got " + fmt12(width) + ")");
        const long M = require_wall(o.wall);
        const long T = require_steps(o, 2);
        if (static_cast<double>(M) < 5.0 * width)
            fail(2, "--wall must satisfy M >= 5*width so the packet fits (got M=" +
                        std::to_string(M) + ", width=" + fmt12(width) + ")");
        const std::pair<double, double> res = wavepacket_reflection(coin, k0, width, M, T);
        doc.columns = {"speed", "reflection"};
        doc.rows.push_back({res.first, res.second});
        doc.config = {{"subcommand", json_quote("simulate")},
                      {"coin", coin_json(coin)},
                      {"wavepacket", json_array({k0, width})},
                      {"wall", std::to_string(M)},
                      {"steps", std::to_string(T)}};
        return doc;
    }

    const long T = require_steps(o);
    AbsorptionRecord rec;
    std::string boundary_key, boundary_val;
    if (!o.walls.empty()) {
        if (o.wall >= 0) fail(2, "--wall and --walls are mutually exclusive");
        const std::pair<long, long> w = parse_walls(o.walls);
        rec = run_two_wall(coin, start.spinor, w.first, w.second, T);
        boundary_key = "walls";
        boundary_val = "[" + std::to_string(w.first) + ", " + std::to_string(w.second) + "]";
    } else {
        const long M = require_wall(o.wall);
        rec = run_one_wall(coin, start.spinor, M, T);
        boundary_key = "wall";
        boundary_val = std::to_string(M);
    }
    doc = absorption_doc(rec);
    doc.config = {{"subcommand", json_quote("simulate")},
                  {"coin", coin_json(coin)},
                  {"start", spinor_json(start.spinor)},
                  {boundary_key, boundary_val},
                  {"steps", std::to_string(T)}};
    return doc;
}

TableDoc cmd_tables(const Options& o) {
    if (o.table != 1 && o.table != 2)
        fail(2, "--table must be 1 or 2 (got " + std::to_string(o.table) + ")");
    if (o.max_m < 1)
        fail(2, "--max-m must satisfy M >= 1 (got " + std::to_string(o.max_m) + ")");
    if (!(o.quad_tol > 0.0))
        fail(2, "--quad-tol must be positive (got " + fmt12(o.quad_tol) + ")");
    const StartSpinor left = make_start({1.0, 0.0}, {0.0, 0.0});
    TableDoc doc;
    if (o.table == 1) {
        doc.comment = "escape coefficients against wall distance, balanced coin";
        doc.columns = {"M", "C_l", "C_r", "C_lr"};
        for (long M = 1; M <= o.max_m; ++M) {
            const EscapeResult r = escape_prob_one_wall(0.5, left, M, o.quad_tol);
            doc.rows.push_back({static_cast<double>(M), r.C_l, r.C_r, r.C_lr});
        }
        const EscapeResult lim = escape_prob_limit(0.5, left);
        doc.rows.push_back(
            {std::numeric_limits<double>::infinity(), lim.C_l, lim.C_r, lim.C_lr});
    } else {
        doc.comment = "transmission coefficients against right-wall distance, balanced coin";
        doc.columns = {"M_R", "D_l", "D_r", "D_lr"};
        for (long M = 1; M <= o.max_m; ++M) {
            const EscapeResult r = transmission_two_wall(left, M, o.quad_tol);
            doc.rows.push_back({static_cast<double>(M), r.C_l, r.C_r, r.C_lr});
        }
    }
    doc.config = {{"subcommand", json_quote("tables")},
                  {"table", std::to_string(o.table)},
                  {"max_m", std::to_string(o.max_m)},
                  {"quad_tol", fmt12(o.quad_tol)}};
    return doc;
}

TableDoc cmd_decay(const Options& o) {
    Coin coin = parse_coin(o.coin);
    StartSpec start = parse_start(o.start);
    if (start.compensated) {
        start.spinor = compensated_start(coin, start.spinor);
        coin = make_coin(coin.rho);
    }
    const long T = require_steps(o);
    if (!(o.quad_tol > 0.0))
        fail(2, "--quad-tol must be positive (got " + fmt12(o.quad_tol) + ")");

    long t_lo = std::max(1L, T / 10), t_hi = T;
    if (!o.window.empty()) {
        const std::vector<std::string> parts = split_commas(o.window);
        if (parts.size() != 2) fail(2, "--window must be 't_lo,t_hi' (got '" + o.window + "')");
        t_lo = parse_long(parts[0], "--window");
        t_hi = parse_long(parts[1], "--window");
    }
    if (!(1 <= t_lo && t_lo < t_hi && t_hi <= T))
        fail(2, "--window must satisfy 1 <= t_lo < t_hi <= T (got " + std::to_string(t_lo) +
                    "," + std::to_string(t_hi) + " with T=" + std::to_string(T) + ")");

    AbsorptionRecord rec;
    BoundaryConfig bc;
    DecayModel model;
    double p_inf = 0.0;
    std::string boundary_key, boundary_val;
    if (!o.walls.empty()) {
        if (o.wall >= 0) fail(2, "--wall and --walls are mutually exclusive");
        const std::pair<long, long> w = parse_walls(o.walls);
        if (w.first != w.second)
            fail(2, "--walls must satisfy M_L = M_R for the decay asymptote (got " + o.walls +
                        ")");
        rec = run_two_wall(coin, start.spinor, w.first, w.second, T);
        bc.kind = BoundaryConfig::Kind::two_wall;
        bc.M_L = w.first;
        bc.M_R = w.second;
        model = DecayModel::power_law;
        boundary_key = "walls";
        boundary_val = "[" + std::to_string(w.first) + ", " + std::to_string(w.second) + "]";
    } else {
        const long M = require_wall(o.wall);
        if (!(coin.rho > 0.0 && coin.rho < 1.0))
            fail(2, "--coin must satisfy 0 < rho < 1 for decay runs (got rho=" +
                        fmt12(coin.rho) + ")");
        rec = run_one_wall(coin, start.spinor, M, T);
        bc.kind = BoundaryConfig::Kind::one_wall;
        bc.M = M;
        model = DecayModel::power_law_plus_constant;
        p_inf = escape_prob_one_wall(coin.rho, compensated_start(coin, start.spinor), M,
                                     o.quad_tol)
                    .Lambda;
        boundary_key = "wall";
        boundary_val = std::to_string(M);
    }

    TableDoc doc;
    doc.comment = bc.kind == BoundaryConfig::Kind::two_wall
                      ? "survival decay, absorbing walls at -" + std::to_string(bc.M_L) +
                            " and " + std::to_string(bc.M_R)
                      : "survival decay, single absorbing wall at " + std::to_string(bc.M);
    doc.columns = {"t", "survival", "asymptote"};
    for (long t = 1; t <= T; ++t)
        doc.rows.push_back({static_cast<double>(t), rec.remaining[t - 1],
                            survival_asymptote(bc, static_cast<double>(t), p_inf)});

    DecayFit fit;
    try {
        fit = fit_decay(rec, model, t_lo, t_hi);
    } catch (const std::domain_error& e) {
        fail(2, std::string("--window invalid: ") + e.what());
    }
    const std::string model_name = model == DecayModel::power_law
                                       ? "power_law"
                                       : "power_law_plus_constant";
    doc.fit_json = "{\"model\": " + json_quote(model_name) +
                   ", \"exponent\": " + fmt12(fit.exponent) +
                   ", \"coefficient\": " + fmt12(fit.coefficient) +
                   ", \"constant\": " + fmt12(fit.constant) + ", \"window\": [" +
                   std::to_string(t_lo) + ", " + std::to_string(t_hi) + "]}";
    doc.config = {{"subcommand", json_quote("decay")},
                  {"coin", coin_json(coin)},
                  {"start", spinor_json(start.spinor)},
                  {boundary_key, boundary_val},
                  {"steps", std::to_string(T)},
                  {"window", "[" + std::to_string(t_lo) + ", " + std::to_string(t_hi) + "]"},
                  {"quad_tol", fmt12(o.quad_tol)}};
    return doc;
}

TableDoc cmd_ddim(const Options& o) {
    if (o.d < 1 || o.d > 3)
        fail(2, "--d must be 1, 2, or 3 (got " + std::to_string(o.d) + ")");
    const long T = require_steps(o);
    const Coin coin = parse_coin(o.coin);
    if (coin.a().imag() != 0.0 || coin.b().imag() != 0.0 || coin.c().imag() != 0.0 ||
        coin.d().imag() != 0.0)
        fail(2, "--coin must have zero phases for the real block coin");
    CoinBlock block;
    block.m[0][0] = coin.a().real();
    block.m[0][1] = coin.c().real();
    block.m[1][0] = coin.b().real();
    block.m[1][1] = coin.d().real();
    const CoinBlocks blocks = make_blocks(std::vector<CoinBlock>(o.d, block));
    const std::vector<cdouble> start = parse_ddim_start(o.start, o.d);

    long M = 0;
    if (o.wall >= 0) M = require_wall(o.wall);
    const double estimate = ddim_memory_bytes(o.d, T, M);
    if (estimate > o.mem_cap)
        fail(3, "estimated memory " + fmt12(estimate) + " bytes exceeds the cap " +
                    fmt12(o.mem_cap) + " bytes; lower --steps/--d or raise --mem-cap");

    std::vector<double> start_flat;
    for (const cdouble& c : start) {
        start_flat.push_back(c.real());
        start_flat.push_back(c.imag());
    }
    TableDoc doc;
    doc.config = {{"subcommand", json_quote("ddim")},
                  {"d", std::to_string(o.d)},
                  {"coin", coin_json(coin)},
                  {"start", json_array(start_flat)},
                  {"steps", std::to_string(T)}};
    if (M >= 1) {
        const AbsorptionRecord rec = run_absorbing_hyperplane(blocks, start, M, T);
        if (o.d == 1) {
            const StartSpinor sp = make_start(start[0], start[1]);
            const AbsorptionRecord ref = run_one_wall(coin, sp, M, T);
            const bool same =
                rec.per_step_right.size() == ref.per_step_right.size() &&
                rec.remaining.size() == ref.remaining.size() &&
                std::memcmp(rec.per_step_right.data(), ref.per_step_right.data(),
                            rec.per_step_right.size() * sizeof(double)) == 0 &&
                std::memcmp(rec.remaining.data(), ref.remaining.data(),
                            rec.remaining.size() * sizeof(double)) == 0;
            if (!same) fail(4, "dimensional-reduction self-check failed: records differ");
        }
        TableDoc rows = absorption_doc(rec);
        doc.columns = std::move(rows.columns);
        doc.rows = std::move(rows.rows);
        doc.config.push_back({"wall", std::to_string(M)});
    } else {
        const FreeRun run = run_free(blocks, start, T);
        doc.columns = {"t", "norm", "front_leakage", "peak_amp"};
        for (long t = 1; t <= T; ++t)
            doc.rows.push_back({static_cast<double>(t), run.norm[t - 1],
                                run.front_leakage[t - 1], run.peak_amp[t - 1]});
    }
    doc.config.push_back({"mem_cap", fmt12(o.mem_cap)});
    return doc;
}

struct SubBinding {
    CLI::App* sub = nullptr;
    std::vector<std::function<void(const json&)>> merges;

    static void assign(const json& v, std::string& var, const std::string& key) {
        if (!v.is_string()) fail(2, "--config key '" + key + "' must be a string");
        var = v.get<std::string>();
    }
    static void assign(const json& v, long& var, const std::string& key) {
        if (!v.is_number_integer()) fail(2, "--config key '" + key + "' must be an integer");
        var = v.get<long>();
    }
    static void assign(const json& v, int& var, const std::string& key) {
        if (!v.is_number_integer()) fail(2, "--config key '" + key + "' must be an integer");
        var = v.get<int>();
    }
    static void assign(const json& v, double& var, const std::string& key) {
        if (!v.is_number()) fail(2, "--config key '" + key + "' must be a number");
        var = v.get<double>();
    }

    template <class T>
    void add(const std::string& flag, const std::string& key, T& var, const std::string& desc) {
        CLI::Option* opt = sub->add_option(flag, var, desc);
        merges.push_back([opt, key, &var](const json& j) {
            if (opt->count() > 0 || !j.contains(key)) return;
            assign(j.at(key), var, key);
        });
    }

    void apply_config(const std::string& path) const {
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) fail(2, "--config cannot open '" + path + "'");
        const json j = json::parse(in, nullptr, false);
        if (j.is_discarded()) fail(2, "--config '" + path + "' is not valid JSON");
        if (!j.is_object()) fail(2, "--config '" + path + "' must hold a JSON object");
        for (const auto& merge : merges) merge(j);
    }
};

void add_output_flags(SubBinding& b, Options& o) {
    b.add("--out", "out", o.out, "Output file path (default: stdout)");
    b.add("--format", "format", o.format, "Output format: csv or json (default csv)");
    b.sub->add_option("--config", o.config_path,
                      "JSON config file; keys mirror the long option names, explicit "
                      "flags win");
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Numerical laboratory for coined quantum walks with absorbing boundaries"};
    app.require_subcommand(1);

    SubBinding sim, tab, dec, ddm;
    sim.sub = app.add_subcommand(
        "simulate", "Exact walk evolution; cumulative absorption record or wavepacket "
                    "summary");
    sim.add("--coin", "coin", o.coin, "Coin: 'hadamard' or 'rho=..[,phi=..,psi=..,eta=..]'");
    sim.add("--start", "start", o.start,
            "Start spinor 'a,b' or 'are,aim,bre,bim'; prefix 'compensated[:..]' folds the "
            "coin phases into the start");
    sim.add("--wall", "wall", o.wall, "Single absorbing wall at site M >= 1");
    sim.add("--walls", "walls", o.walls, "Two absorbing walls 'M_L,M_R' at -M_L and M_R");
    sim.add("--steps", "steps", o.steps, "Number of steps T >= 1");
    sim.add("--wavepacket", "wavepacket", o.wavepacket,
            "Gaussian packet 'k0,width'; reports group speed and reflection");
    add_output_flags(sim, o);

    tab.sub = app.add_subcommand("tables",
                                 "Escape / transmission coefficient tables, balanced coin");
    tab.add("--table", "table", o.table, "Which table: 1 (one wall) or 2 (distant second wall)");
    tab.add("--max-m", "max_m", o.max_m, "Largest wall distance row (default 5)");
    tab.add("--quad-tol", "quad_tol", o.quad_tol, "Quadrature tolerance (default 1e-11)");
    add_output_flags(tab, o);

    dec.sub = app.add_subcommand(
        "decay", "Survival probability against the long-time asymptote, with a fitted "
                 "power law");
    dec.add("--coin", "coin", o.coin, "Coin: 'hadamard' or 'rho=..[,phi=..,psi=..,eta=..]'");
    dec.add("--start", "start", o.start, "Start spinor (as in simulate)");
    dec.add("--wall", "wall", o.wall, "Single absorbing wall at site M >= 1");
    dec.add("--walls", "walls", o.walls, "Two absorbing walls 'M,M' (equal distances)");
    dec.add("--steps", "steps", o.steps, "Number of steps T >= 1");
    dec.add("--window", "window", o.window,
            "Fit window 't_lo,t_hi' (default 'T/10,T')");
    dec.add("--quad-tol", "quad_tol", o.quad_tol,
            "Quadrature tolerance for the one-wall plateau (default 1e-11)");
    add_output_flags(dec, o);

    ddm.sub = app.add_subcommand(
        "ddim", "d-dimensional block-coin walk: free-spreading diagnostics or absorbing "
                "hyperplane");
    ddm.add("--d", "d", o.d, "Dimension, 1 to 3");
    ddm.add("--coin", "coin", o.coin, "Zero-phase coin for the per-axis blocks");
    ddm.add("--start", "start", o.start,
            "Direction amplitudes: 2d reals or 2d re,im pairs (default uniform)");
    ddm.add("--wall", "wall", o.wall,
            "Absorbing hyperplane at n1 = M; omit for a free run");
    ddm.add("--steps", "steps", o.steps, "Number of steps T >= 1");
    ddm.add("--mem-cap", "mem_cap", o.mem_cap,
            "Refuse runs whose memory estimate exceeds this many bytes (default 4 GiB)");
    add_output_flags(ddm, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const SubBinding* binding = nullptr;
        TableDoc (*dispatch)(const Options&) = nullptr;
        if (sim.sub->parsed()) {
            binding = &sim;
            dispatch = cmd_simulate;
        } else if (tab.sub->parsed()) {
            binding = &tab;
            dispatch = cmd_tables;
        } else if (dec.sub->parsed()) {
            binding = &dec;
            dispatch = cmd_decay;
        } else {
            binding = &ddm;
            dispatch = cmd_ddim;
        }
        binding->apply_config(o.config_path);
        if (o.format != "csv" && o.format != "json")
            fail(2, "--format must be csv or json (got '" + o.format + "')");
        const TableDoc doc = dispatch(o);

        std::ofstream file;
        if (!o.out.empty()) {
            file.open(o.out);
            if (!file) fail(2, "--out cannot open '" + o.out + "' for writing");
        }
        std::ostream& os = o.out.empty() ? std::cout : file;
        if (o.format == "csv")
            write_csv(os, doc);
        else
            write_json(os, doc);
        os.flush();
        if (!os) fail(2, "--out failed while writing '" + o.out + "'");
        return 0;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: quadrature did not converge: " << e.what() << "\n";
        return 4;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: invalid configuration: " << e.what() << "\n";
        return 2;
    }
}
