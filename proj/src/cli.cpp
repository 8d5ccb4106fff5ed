#include "zm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include "zm/kernel_theta2.hpp"
#include "zm/meixner.hpp"
#include "zm/oracle.hpp"

namespace zm::cli {

using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
}

template <class T>
T parse_num(const std::string& key, const std::string& v) {
    std::istringstream is(v);
    T out{};
    is >> out;
    if (!is || !(is >> std::ws).eof()) throw DomainError("config: bad value for " + key + ": '" + v + "'");
    return out;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

json cjson(cplx v) { return json::array({v.real(), v.imag()}); }

json params_json(const ZParams& p) {
    json j;
    j["z"] = cjson(p.z);
    j["zp"] = cjson(p.zp);
    j["xi"] = p.xi;
    j["theta"] = p.theta;
    return j;
}

json points_json(const std::vector<HalfInt>& pts) {
    json a = json::array();
    for (const HalfInt& x : pts) a.push_back(x.str());
    return a;
}

// CLI11 reads "-3/2" as a short flag; glue such values onto their option
std::vector<std::string> glue_negative_values(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        const bool opt = a.rfind("--", 0) == 0 && a.find('=') == std::string::npos;
        if (opt && i + 1 < argc) {
            const std::string v = argv[i + 1];
            if (v.size() > 1 && v[0] == '-' && (std::isdigit(static_cast<unsigned char>(v[1])) || v[1] == '.')) {
                args.push_back(a + "=" + v);
                ++i;
                continue;
            }
        }
        args.push_back(a);
    }
    return args;
}

struct Common {
    std::string z = "1.5+0.5i", zp;
    double xi = 0.3;
};

ZParams make_params(const Common& c) {
    ZParams p;
    p.z = parse_complex(c.z);
    p.zp = c.zp.empty() ? std::conj(p.z) : parse_complex(c.zp);
    p.xi = c.xi;
    p.theta = 2.0;
    p.validate();
    return p;
}

struct KernelRow {
    HalfInt x, y;
    KernelBlock b;
    double cross = 0.0;
};

double block_diff(const KernelBlock& a, const KernelBlock& b) {
    return std::max({std::fabs(a.s - b.s), std::fabs(a.sd_minus - b.sd_minus), std::fabs(a.d_plus_s - b.d_plus_s),
                     std::fabs(a.d_plus_s_d_minus - b.d_plus_s_d_minus)});
}

int cmd_kernel(const ZParams& p, const Config& cfg, const std::string& range, const std::string& repr,
               const std::string& cross, std::ostream& out) {
    const auto grid = parse_range(range);
    const bool degen = repr == "degenerate";
    const bool cross_degen = cross == "degenerate";
    if (degen || cross_degen) {
        if (std::abs(p.zp - (p.z - 1.0)) > 1e-12) throw DomainError("degenerate representation needs z' = z - 1");
    }
    if (!degen && !admissible(p.z, p.zp))
        throw DomainError("parameters not admissible: kernel entries would not be real (try corr)");
    const Repr r = degen ? Repr::Series : parse_repr(repr);
    const Repr rc = cross.empty() || cross_degen ? Repr::Series : parse_repr(cross);

    std::vector<KernelRow> rows;
    for (const HalfInt& x : grid)
        for (const HalfInt& y : grid) rows.push_back({x, y, {}, 0.0});
    const int nthreads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(grid.size())));
    std::vector<std::exception_ptr> errs(nthreads);
    auto work = [&](int w) {
        try {
            Theta2 eng(p, cfg.num);
            for (std::size_t i = w; i < rows.size(); i += nthreads) {
                KernelRow& row = rows[i];
                row.b = degen ? degenerate_kernel(row.x, row.y, p.z, p.xi, cfg.num) : kernel_block(eng, row.x, row.y, r);
                if (!cross.empty()) {
                    const KernelBlock c = cross_degen ? degenerate_kernel(row.x, row.y, p.z, p.xi, cfg.num)
                                                      : kernel_block(eng, row.x, row.y, rc);
                    row.cross = block_diff(row.b, c);
                }
            }
        } catch (...) {
            errs[w] = std::current_exception();
        }
    };
    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nthreads; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);

    out << "x,y,s,sd_minus,d_plus_s,d_plus_s_d_minus";
    if (!cross.empty()) out << ",cross_max_diff";
    out << "\n";
    for (const KernelRow& row : rows) {
        out << row.x.str() << ',' << row.y.str() << ',' << num(row.b.s) << ',' << num(row.b.sd_minus) << ','
            << num(row.b.d_plus_s) << ',' << num(row.b.d_plus_s_d_minus);
        if (!cross.empty()) out << ',' << num(row.cross);
        out << "\n";
    }
    return kExitOk;
}

int cmd_corr(const ZParams& p, const Config& cfg, const std::string& points, std::string method, const std::string& repr,
             bool both, std::ostream& out) {
    const auto pts = parse_points(points);
    check_distinct(pts);
    if (both) method = "both";
    if (method != "pfaffian" && method != "oracle" && method != "both")
        throw DomainError("unknown method '" + method + "'");
    json j;
    j["command"] = "corr";
    j["params"] = params_json(p);
    j["points"] = points_json(pts);
    j["method"] = method;
    double pf = 0.0;
    int code = kExitOk;
    if (method != "oracle") {
        const CorrResult c = correlation(pts, p, parse_repr(repr), cfg.num);
        pf = c.value;
        j["representation"] = repr;
        j["route"] = c.method;
        j["pfaffian"] = c.value;
        j["skew_residual"] = c.skew_residual;
        if (c.imag != 0.0) j["discarded_imag"] = c.imag;
    }
    if (method != "pfaffian") {
        const OracleResult o = corr_oracle(pts, p, cfg.oracle_cutoff);
        j["oracle"] = o.value;
        j["tail"] = o.tail;
        j["cutoff"] = o.cutoff;
        if (method == "both") {
            const double d = std::fabs(pf - o.value), tol = std::max(cfg.tolerance, o.tail);
            j["abs_diff"] = d;
            j["tolerance"] = tol;
            j["agree"] = d <= tol;
            if (d > tol) code = kExitNumeric;
        }
    }
    out << j.dump(2) << "\n";
    return code;
}

int cmd_sample(const ZParams& p, std::uint64_t seed, long count, int cap, bool histogram, std::ostream& out) {
    if (count < 0) throw DomainError("count must be non-negative");
    DiagramSampler s(p, seed, cap);
    if (histogram) {
        std::vector<long> h(cap + 1, 0);
        for (long i = 0; i < count; ++i) ++h[s.draw().size()];
        double chi2 = 0.0;
        int dof = -1;
        out << "size,count,expected\n";
        for (int n = 0; n <= cap; ++n) {
            const double e = count * layer_mass(p, n);
            out << n << ',' << h[n] << ',' << num(e) << "\n";
            if (e >= 5.0) {
                chi2 += (h[n] - e) * (h[n] - e) / e;
                ++dof;
            }
        }
        out << "# seed=" << seed << " chi2=" << num(chi2) << " dof=" << dof << "\n";
        return kExitOk;
    }
    out << "seed,draw,size,parts\n";
    for (long i = 0; i < count; ++i) {
        const YoungDiagram l = s.draw();
        out << seed << ',' << i << ',' << l.size() << ',';
        for (int r = 0; r < l.rows(); ++r) out << (r ? " " : "") << l.parts()[r];
        out << "\n";
    }
    return kExitOk;
}

std::vector<long> parse_int_list(const std::string& s) {
    std::vector<long> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        std::size_t pos = 0;
        long x = 0;
        try {
            x = std::stol(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (item.empty() || pos != item.size()) throw DomainError("bad lattice point '" + item + "'");
        if (x < 0) throw DomainError("Meixner lattice points are non-negative");
        v.push_back(x);
    }
    if (v.empty()) throw DomainError("no points given");
    return v;
}

std::pair<long, long> parse_int_range(const std::string& s) {
    const auto c = s.find(':');
    if (c == std::string::npos) throw DomainError("range must look like a:b");
    const auto a = parse_int_list(s.substr(0, c)), b = parse_int_list(s.substr(c + 1));
    if (a.size() != 1 || b.size() != 1 || b[0] < a[0]) throw DomainError("bad range '" + s + "'");
    return {a[0], b[0]};
}

int cmd_meixner(const MeixnerParams& mp, const Config& cfg, const std::string& mode, const std::string& points,
                const std::string& range, bool check_bridge, int x_max, std::ostream& out) {
    mp.validate();
    if (mode != "operator" && mode != "contour" && mode != "antisym" && mode != "ensemble")
        throw DomainError("unknown mode '" + mode + "'");
    if (mode == "ensemble" && mp.N > 3) throw DomainError("ensemble mode needs N <= 3");
    json meta;
    meta["N"] = mp.N;
    meta["beta"] = mp.beta;
    meta["xi"] = mp.xi;

    if (check_bridge) {
        const auto [lo, hi] = parse_int_range(range.empty() ? "0:5" : range);
        const ZParams zp = mp.measure_params();
        Theta2 eng(zp, cfg.num);
        double dev = 0.0, literal = 0.0;
        for (long x = lo; x <= hi; ++x)
            for (long y = lo; y <= hi; ++y) {
                const HalfInt hx(x - 2 * mp.N), hy(y - 2 * mp.N);
                const double s = eng.s(hx, hy, Repr::Series).real() * std::sqrt(mp.xi);
                const double g = std::sqrt((hx.value() + zp.z.real() + 0.5) * (hy.value() + zp.z.real() + 0.5));
                const double op = s2n_operator(x, y, mp, cfg.num);
                dev = std::max(dev, std::fabs(op - s / g));
                literal = std::max(literal, std::fabs(op - s));
            }
        json j;
        j["command"] = "meixner";
        j["check"] = "bridge";
        j["params"] = meta;
        j["grid"] = std::to_string(lo) + ":" + std::to_string(hi);
        j["max_deviation"] = dev;
        j["max_deviation_without_gauge"] = literal;
        j["tolerance"] = cfg.tolerance;
        j["agree"] = dev <= cfg.tolerance;
        out << j.dump(2) << "\n";
        return dev <= cfg.tolerance ? kExitOk : kExitNumeric;
    }

    MeixnerOps ops(mp, cfg.num.lattice_max);
    if (!points.empty()) {
        const auto pts = parse_int_list(points);
        json j;
        j["command"] = "meixner";
        j["params"] = meta;
        j["points"] = pts;
        j["mode"] = mode;
        const double pf = meixner_correlation(ops, pts, mp);
        j["pfaffian"] = pf;
        int code = kExitOk;
        if (mode == "ensemble") {
            const OracleResult o = meixner_oracle(pts, mp, x_max);
            const double d = std::fabs(pf - o.value), tol = std::max(cfg.tolerance, o.tail);
            j["ensemble"] = o.value;
            j["tail"] = o.tail;
            j["x_max"] = x_max;
            j["abs_diff"] = d;
            j["agree"] = d <= tol;
            if (d > tol) code = kExitNumeric;
        }
        out << j.dump(2) << "\n";
        return code;
    }

    const auto [lo, hi] = parse_int_range(range.empty() ? "0:6" : range);
    if (mode == "ensemble") {
        MeixnerEnsemble ens(mp, x_max);
        out << "x,y,pfaffian,ensemble,abs_diff\n";
        int code = kExitOk;
        for (long x = lo; x <= hi; ++x)
            for (long y = lo; y <= hi; ++y) {
                const std::vector<long> pts = x == y ? std::vector<long>{x} : std::vector<long>{x, y};
                const double a = meixner_correlation(ops, pts, mp), b = ens.correlation(pts);
                if (std::fabs(a - b) > std::max(cfg.tolerance, ens.tail())) code = kExitNumeric;
                out << x << ',' << y << ',' << num(a) << ',' << num(b) << ',' << num(std::fabs(a - b)) << "\n";
            }
        return code;
    }
    out << "x,y,s" << (mode == "operator" ? "" : ",diff_vs_operator") << "\n";
    for (long x = lo; x <= hi; ++x)
        for (long y = lo; y <= hi; ++y) {
            const double op = ops.s(x, y);
            out << x << ',' << y << ',';
            if (mode == "operator") {
                out << num(op) << "\n";
                continue;
            }
            const double v = mode == "contour" ? s2n_contour(x, y, mp, cfg.num) : s2n_antisym(x, y, mp, cfg.num);
            out << num(v) << ',' << num(std::fabs(v - op)) << "\n";
        }
    return kExitOk;
}

}  // namespace

void apply_config_text(const std::string& text, Config& c) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty() || line.front() == '[') continue;  // tolerate TOML section headers
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string k = trim(line.substr(0, eq));
        std::string v = trim(line.substr(eq + 1));
        if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
        NumOpts& n = c.num;
        if (k == "quad_tol") n.quad_tol = parse_num<double>(k, v);
        else if (k == "nodes_min") n.nodes_min = parse_num<int>(k, v);
        else if (k == "nodes_cap_single") n.nodes_cap_single = parse_num<int>(k, v);
        else if (k == "nodes_cap_double") n.nodes_cap_double = parse_num<int>(k, v);
        else if (k == "series_tol") n.series_tol = parse_num<double>(k, v);
        else if (k == "e_tol") n.e_tol = parse_num<double>(k, v);
        else if (k == "k_cutoff") n.k_cutoff = parse_num<int>(k, v);
        else if (k == "lattice_max") n.lattice_max = parse_num<int>(k, v);
        else if (k == "pole_guard") n.pole_guard = parse_num<double>(k, v);
        else if (k == "skew_tol") n.skew_tol = parse_num<double>(k, v);
        else if (k == "oracle_cutoff") c.oracle_cutoff = parse_num<int>(k, v);
        else if (k == "tolerance") c.tolerance = parse_num<double>(k, v);
        else if (k == "meixner_x_max") c.meixner_x_max = parse_num<int>(k, v);
        else if (k == "threads") c.threads = parse_num<int>(k, v);
        else throw DomainError("config: unknown key '" + k + "'");
    }
    if (c.oracle_cutoff < 0 || c.oracle_cutoff > kDiagramCap)
        throw DomainError("config: oracle_cutoff must lie in [0, " + std::to_string(kDiagramCap) + "]");
    if (c.num.nodes_min < 4 || (c.num.nodes_min & (c.num.nodes_min - 1)) != 0)
        throw DomainError("config: nodes_min must be a power of two >= 4");
    if (c.threads < 1) throw DomainError("config: threads must be >= 1");
}

Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    Config c;
    apply_config_text(ss.str(), c);
    return c;
}

std::string dump_config(const Config& c) {
    std::ostringstream o;
    const NumOpts& n = c.num;
    o << "quad_tol = " << num(n.quad_tol) << "\n"
      << "nodes_min = " << n.nodes_min << "\n"
      << "nodes_cap_single = " << n.nodes_cap_single << "\n"
      << "nodes_cap_double = " << n.nodes_cap_double << "\n"
      << "series_tol = " << num(n.series_tol) << "\n"
      << "e_tol = " << num(n.e_tol) << "\n"
      << "k_cutoff = " << n.k_cutoff << "\n"
      << "lattice_max = " << n.lattice_max << "\n"
      << "pole_guard = " << num(n.pole_guard) << "\n"
      << "skew_tol = " << num(n.skew_tol) << "\n"
      << "oracle_cutoff = " << c.oracle_cutoff << "\n"
      << "tolerance = " << num(c.tolerance) << "\n"
      << "meixner_x_max = " << c.meixner_x_max << "\n"
      << "threads = " << c.threads << "\n";
    return o.str();
}

cplx parse_complex(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    static const std::string n = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
    static const std::regex re_real("^([+-]?" + n + ")$");
    static const std::regex re_imag("^([+-]?)(" + n + ")?[ij]$");
    static const std::regex re_both("^([+-]?" + n + ")([+-])(" + n + ")?[ij]$");
    std::smatch m;
    if (std::regex_match(s, m, re_real)) return {std::stod(m[1]), 0.0};
    if (std::regex_match(s, m, re_imag)) {
        const double v = m[2].matched ? std::stod(m[2]) : 1.0;
        return {0.0, m[1] == "-" ? -v : v};
    }
    if (std::regex_match(s, m, re_both)) {
        const double v = m[3].matched ? std::stod(m[3]) : 1.0;
        return {std::stod(m[1]), m[2] == "-" ? -v : v};
    }
    throw DomainError("cannot parse complex number '" + raw + "'");
}

std::vector<HalfInt> parse_points(const std::string& s) {
    std::vector<HalfInt> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(HalfInt::parse(trim(item)));
    if (v.empty()) throw DomainError("no points given");
    return v;
}

std::vector<HalfInt> parse_range(const std::string& s) {
    const auto c = s.find(':');
    if (c == std::string::npos) throw DomainError("range must look like a:b");
    const HalfInt a = HalfInt::parse(trim(s.substr(0, c))), b = HalfInt::parse(trim(s.substr(c + 1)));
    if (b < a) throw DomainError("empty range '" + s + "'");
    if (b.k - a.k > 400) throw DomainError("range too long");
    std::vector<HalfInt> v;
    for (HalfInt x = a; x <= b; x = x + 1) v.push_back(x);
    return v;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"z-measure kernels and correlation functions at theta = 2", "zmk"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // global options also after the subcommand
    Common com;
    bool show_config = false;
    std::string config_path;
    int threads = 0;
    app.add_option("--config", config_path, "key = value config file (else $ZMK_CONFIG)");
    app.add_flag("--show-config", show_config, "print the effective configuration and exit");
    app.add_option("--threads", threads, "worker cap");

    auto add_params = [&](CLI::App* sc) {
        sc->add_option("--z", com.z, "z, e.g. 1.5+0.5i")->capture_default_str();
        sc->add_option("--zp", com.zp, "z' (default: conj z)");
        sc->add_option("--xi", com.xi, "xi in (0,1)")->capture_default_str();
    };

    auto* k = app.add_subcommand("kernel", "matrix kernel entries on a grid, CSV");
    add_params(k);
    std::string range = "-9/2:9/2", repr = "series", cross;
    k->add_option("--range", range, "a:b, half-integers")->capture_default_str();
    k->add_option("--representation", repr, "series|contour|iab|antisym|degenerate")->capture_default_str();
    k->add_option("--cross-check", cross, "second representation, adds a max-diff column");

    auto* c = app.add_subcommand("corr", "correlation function, JSON");
    add_params(c);
    std::string points, method = "pfaffian", crepr = "series";
    bool both = false;
    c->add_option("--points", points, "comma separated, p/2 or k+1/2")->required();
    c->add_option("--method", method, "pfaffian|oracle|both")->capture_default_str();
    c->add_flag("--both", both, "same as --method both");
    c->add_option("--representation", crepr, "series|contour|iab|antisym")->capture_default_str();

    auto* s = app.add_subcommand("sample", "exact samples of the mixed measure, CSV");
    add_params(s);
    std::uint64_t seed = 12345;
    long count = 10;
    int cap = 40;
    bool histogram = false;
    s->add_option("--seed", seed)->capture_default_str();
    s->add_option("--count", count)->capture_default_str();
    s->add_option("--cap", cap, "largest |lambda|")->capture_default_str();
    s->add_flag("--histogram", histogram, "size histogram against layer masses");

    auto* m = app.add_subcommand("meixner", "Meixner ensemble kernel and correlations");
    MeixnerParams mp;
    std::string mode = "operator", mpoints, mrange;
    bool check_bridge = false;
    int x_max = 0;
    m->add_option("--N", mp.N)->capture_default_str();
    m->add_option("--beta", mp.beta)->capture_default_str();
    m->add_option("--xi", mp.xi)->capture_default_str();
    m->add_option("--mode", mode, "operator|contour|antisym|ensemble")->capture_default_str();
    m->add_option("--points", mpoints, "non-negative integers, comma separated");
    m->add_option("--range", mrange, "a:b integer grid");
    m->add_option("--x-max", x_max, "ensemble enumeration bound");
    m->add_flag("--check-bridge", check_bridge, "compare with the theta = 2 kernel at z = 2N");

    const auto args = glue_negative_values(argc, argv);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "zmk: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        Config cfg;
        if (config_path.empty())
            if (const char* env = std::getenv("ZMK_CONFIG")) config_path = env;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (threads > 0) cfg.threads = threads;
        if (show_config) {
            out << dump_config(cfg);
            return kExitOk;
        }
        if (*k) return cmd_kernel(make_params(com), cfg, range, repr, cross, out);
        if (*c) return cmd_corr(make_params(com), cfg, points, method, crepr, both, out);
        if (*s) return cmd_sample(make_params(com), seed, count, cap, histogram, out);
        if (*m) return cmd_meixner(mp, cfg, mode, mpoints, mrange, check_bridge, x_max > 0 ? x_max : cfg.meixner_x_max, out);
        out << app.help();
        return kExitInput;
    } catch (const DomainError& e) {
        err << "zmk: invalid input: " << e.what() << "\n";
        return kExitInput;
    } catch (const ConvergenceError& e) {
        err << "zmk: convergence failure: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace zm::cli
