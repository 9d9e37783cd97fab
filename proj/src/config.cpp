#include "qtheta/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace qtheta {

namespace {

namespace pt = boost::property_tree;

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
    return s;
}

double to_real(const std::string& key, const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' is not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v))
        throw ConfigError("config: '" + key + "' is not a finite number: '" + s + "'");
    return v;
}

std::int64_t to_int(const std::string& key, const std::string& s)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' is not an integer: '" + s + "'");
    }
    if (used != s.size())
        throw ConfigError("config: '" + key + "' is not an integer: '" + s + "'");
    return v;
}

std::vector<double> to_list(const std::string& key, const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw ConfigError("config: empty entry in list '" + key + "'");
        out.push_back(to_real(key, item.substr(b, e - b + 1)));
    }
    return out;
}

// section -> key -> setter
using Setter = void (*)(RunConfig&, const std::string& key, const std::string& value);

const std::map<std::string, std::map<std::string, Setter>>& setters()
{
    static const std::map<std::string, std::map<std::string, Setter>> table = {
        {"lattice",
         {{"N", [](RunConfig& c, const std::string& k, const std::string& v) { c.lattice.N = to_int(k, v); }},
          {"ell", [](RunConfig& c, const std::string& k, const std::string& v) { c.lattice.ell = to_int(k, v); }},
          {"g_x", [](RunConfig& c, const std::string& k, const std::string& v) { c.lattice.g_x = to_real(k, v); }},
          {"g_y", [](RunConfig& c, const std::string& k, const std::string& v) { c.lattice.g_y = to_real(k, v); }},
          {"g_theta",
           [](RunConfig& c, const std::string& k, const std::string& v) { c.lattice.g_theta = to_real(k, v); }}}},
        {"window",
         {{"kind", [](RunConfig& c, const std::string&, const std::string& v) { c.window.kind = v; }},
          {"alpha", [](RunConfig& c, const std::string& k, const std::string& v) { c.window.alpha = to_real(k, v); }},
          {"T", [](RunConfig& c, const std::string& k, const std::string& v) { c.window.T = to_real(k, v); }},
          {"sigma", [](RunConfig& c, const std::string& k, const std::string& v) { c.window.sigma = to_real(k, v); }},
          {"coeffs",
           [](RunConfig& c, const std::string& k, const std::string& v) { c.window.coeffs = to_list(k, v); }},
          {"freqs", [](RunConfig& c, const std::string& k, const std::string& v) { c.window.freqs = to_list(k, v); }}}},
        {"precision",
         {{"rel_tol",
           [](RunConfig& c, const std::string& k, const std::string& v) { c.precision.rel_tol = to_real(k, v); }},
          {"working_digits",
           [](RunConfig& c, const std::string& k, const std::string& v) {
               c.precision.working_digits = static_cast<int>(to_int(k, v));
           }},
          {"abs_floor",
           [](RunConfig& c, const std::string& k, const std::string& v) { c.precision.abs_floor = to_real(k, v); }}}},
        {"grid",
         {{"n_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.grid.n_max = to_int(k, v); }},
          {"Ls", [](RunConfig& c, const std::string& k, const std::string& v) { c.grid.Ls = to_list(k, v); }},
          {"deltas", [](RunConfig& c, const std::string& k, const std::string& v) { c.grid.deltas = to_list(k, v); }},
          {"hearts", [](RunConfig& c, const std::string& k, const std::string& v) { c.grid.hearts = to_list(k, v); }}}},
        {"theta",
         {{"x", [](RunConfig& c, const std::string& k, const std::string& v) { c.theta.x = to_real(k, v); }},
          {"y", [](RunConfig& c, const std::string& k, const std::string& v) { c.theta.y = to_real(k, v); }},
          {"tol", [](RunConfig& c, const std::string& k, const std::string& v) { c.theta.tol = to_real(k, v); }},
          {"p_cut", [](RunConfig& c, const std::string& k, const std::string& v) { c.theta.p_cut = to_real(k, v); }}}},
        {"run",
         {{"jobs",
           [](RunConfig& c, const std::string& k, const std::string& v) { c.run.jobs = static_cast<int>(to_int(k, v)); }},
          {"max_candidates",
           [](RunConfig& c, const std::string& k, const std::string& v) {
               const auto n = to_int(k, v);
               if (n <= 0)
                   throw ConfigError("config: max_candidates must be positive");
               c.run.max_candidates = static_cast<std::uint64_t>(n);
           }},
          {"out_dir", [](RunConfig& c, const std::string&, const std::string& v) { c.run.out_dir = v; }},
          {"format", [](RunConfig& c, const std::string&, const std::string& v) { c.run.format = v; }}}},
    };
    return table;
}

void check_list(const char* name, const std::vector<double>& v, bool positive)
{
    for (double x : v)
        if (!std::isfinite(x) || (positive && !(x > 0.0)))
            throw ConfigError(std::string("config: ") + name + " entries must be finite" + (positive ? " and positive" : ""));
}

}  // namespace

void RunConfig::validate() const
{
    if (lattice.N < 1 || !is_squarefree(lattice.N))
        throw ConfigError("config: N must be a squarefree positive integer");
    if (lattice.ell < 1 || lattice.N % lattice.ell != 0)
        throw ConfigError("config: ell must be a positive divisor of N");
    if (!std::isfinite(lattice.g_x) || !(lattice.g_y > 0.0) || !std::isfinite(lattice.g_y)
        || !std::isfinite(lattice.g_theta))
        throw ConfigError("config: g needs finite g_x, g_theta and positive g_y");
    try {
        (void)spectral_window();
        phi_precision().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (grid.n_max < 1 || grid.n_max > 1000)
        throw ConfigError("config: n_max must lie in [1, 1000]");
    check_list("Ls", grid.Ls, true);
    check_list("deltas", grid.deltas, true);
    check_list("hearts", grid.hearts, true);
    if (!std::isfinite(theta.x) || !(theta.y > 0.0) || !std::isfinite(theta.y))
        throw ConfigError("config: theta point needs finite x and positive y");
    if (!(theta.tol > 0.0) || !(theta.p_cut > 0.0) || !std::isfinite(theta.p_cut))
        throw ConfigError("config: theta tol and p_cut must be positive");
    if (run.jobs < 1 || run.jobs > 256)
        throw ConfigError("config: jobs must lie in [1, 256]");
    if (run.format != "csv" && run.format != "json" && run.format != "both")
        throw ConfigError("config: format must be csv, json or both");
}

LatticeSpec RunConfig::lattice_spec() const
{
    return LatticeSpec(lattice.N, lattice.ell, GroupElement::iwasawa(lattice.g_x, lattice.g_y, lattice.g_theta));
}

SpectralWindow RunConfig::spectral_window() const
{
    if (window.kind == "unit")
        return SpectralWindow::unit(window.alpha);
    if (window.kind == "long")
        return SpectralWindow::long_window(window.T);
    if (window.kind == "cosine")
        return SpectralWindow::cosine_sum(window.alpha, window.coeffs, window.freqs);
    if (window.kind == "gaussian")
        return SpectralWindow::gaussian(window.alpha, window.sigma);
    throw std::invalid_argument("window kind must be unit, long, cosine or gaussian");
}

Precision RunConfig::phi_precision() const
{
    Precision p;
    p.rel_tol = precision.rel_tol;
    p.working_digits = precision.working_digits;
    p.abs_floor = precision.abs_floor;
    return p;
}

std::filesystem::path RunConfig::output_dir() const
{
    if (!run.out_dir.empty())
        return run.out_dir;
    if (const char* env = std::getenv("QTHETA_OUT_DIR"); env && *env)
        return env;
    return std::filesystem::current_path();
}

RunConfig parse_config(const std::string& text)
{
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    RunConfig cfg;
    const auto& table = setters();
    for (const auto& [section, body] : tree) {
        const auto sec = table.find(section);
        if (sec == table.end() || body.empty())
            throw ConfigError("config: unknown section or top-level key '" + section + "'");
        for (const auto& [key, node] : body) {
            const auto set = sec->second.find(key);
            if (set == sec->second.end())
                throw ConfigError("config: unknown key '" + section + "." + key + "'");
            set->second(cfg, section + "." + key, node.get_value<std::string>());
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("config: cannot read '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string to_ini(const RunConfig& c)
{
    std::ostringstream os;
    os << "[lattice]\nN=" << c.lattice.N << "\nell=" << c.lattice.ell << "\ng_x=" << fmt(c.lattice.g_x)
       << "\ng_y=" << fmt(c.lattice.g_y) << "\ng_theta=" << fmt(c.lattice.g_theta) << "\n\n";
    os << "[window]\nkind=" << c.window.kind << "\nalpha=" << fmt(c.window.alpha) << "\nT=" << fmt(c.window.T)
       << "\nsigma=" << fmt(c.window.sigma) << "\n";
    if (!c.window.coeffs.empty())
        os << "coeffs=" << fmt_list(c.window.coeffs) << "\n";
    if (!c.window.freqs.empty())
        os << "freqs=" << fmt_list(c.window.freqs) << "\n";
    os << "\n[precision]\nrel_tol=" << fmt(c.precision.rel_tol) << "\nworking_digits=" << c.precision.working_digits
       << "\nabs_floor=" << fmt(c.precision.abs_floor) << "\n\n";
    os << "[grid]\nn_max=" << c.grid.n_max << "\n";
    if (!c.grid.Ls.empty())
        os << "Ls=" << fmt_list(c.grid.Ls) << "\n";
    if (!c.grid.deltas.empty())
        os << "deltas=" << fmt_list(c.grid.deltas) << "\n";
    if (!c.grid.hearts.empty())
        os << "hearts=" << fmt_list(c.grid.hearts) << "\n";
    os << "\n[theta]\nx=" << fmt(c.theta.x) << "\ny=" << fmt(c.theta.y) << "\ntol=" << fmt(c.theta.tol)
       << "\np_cut=" << fmt(c.theta.p_cut) << "\n\n";
    os << "[run]\njobs=" << c.run.jobs << "\nmax_candidates=" << c.run.max_candidates << "\n";
    if (!c.run.out_dir.empty())
        os << "out_dir=" << c.run.out_dir << "\n";
    os << "format=" << c.run.format << "\n";
    return os.str();
}

}  // namespace qtheta
