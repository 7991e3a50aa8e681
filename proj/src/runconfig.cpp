#include "nc4/runconfig.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nc4 {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x))
        throw std::invalid_argument("config: bad number for " + key);
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    int x = std::stoi(v, &used);
    if (used != v.size())
        throw std::invalid_argument("config: bad integer for " + key);
    return x;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(to_double(key, trim(tok)));
    if (out.empty()) throw std::invalid_argument("config: empty list " + key);
    return out;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k)
        s += (k ? "," : "") + fmt(v[k]);
    return s;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig c;
    std::stringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: missing '=' on line " +
                                        std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw std::invalid_argument("config: empty key or value on line " +
                                        std::to_string(lineno));

        if (key == "lambda") c.params.lambda = to_double(key, val);
        else if (key == "lambda_cutoff") c.params.lambda_cutoff = to_double(key, val);
        else if (key == "wf_param") c.params.wf_param = to_double(key, val);
        else if (key == "grid_n") c.solver.grid_n = to_int(key, val);
        else if (key == "grid_scheme") {
            if (val == "log_uniform") c.solver.scheme = GridScheme::log_uniform;
            else if (val == "uniform") c.solver.scheme = GridScheme::uniform;
            else throw std::invalid_argument("config: unknown grid_scheme");
        }
        else if (key == "damping") c.solver.damping = to_double(key, val);
        else if (key == "tol") c.solver.tol = to_double(key, val);
        else if (key == "max_iter") c.solver.max_iter = to_int(key, val);
        else if (key == "widder_n_max") c.widder_n_max = to_int(key, val);
        else if (key == "x_max") c.x_max = to_double(key, val);
        else if (key == "a_max") c.a_max = to_double(key, val);
        else if (key == "lattice_n") c.lattice_n = to_int(key, val);
        else if (key == "r_min") c.r_min = to_double(key, val);
        else if (key == "r_max") c.r_max = to_double(key, val);
        else if (key == "r_n") c.r_n = to_int(key, val);
        else if (key == "a_fit_min") c.a_fit_min = to_double(key, val);
        else if (key == "a_fit_max") c.a_fit_max = to_double(key, val);
        else if (key == "fit_n") c.fit_n = to_int(key, val);
        else if (key == "provider") c.provider = val;
        else if (key == "gaussian_width") c.gaussian_width = to_double(key, val);
        else if (key == "table") c.table_path = val;
        else if (key == "positions") c.positions_path = val;
        else if (key == "input_table") c.input_table = val;
        else if (key == "taus") c.taus = to_list(key, val);
        else if (key == "volumes") c.volumes = to_list(key, val);
        else if (key == "output") c.output = val;
        else if (key == "cache") c.cache = val;
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    return c;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_echo(const RunConfig& c) {
    std::string s;
    s += "lambda=" + fmt(c.params.lambda) + "\n";
    s += "lambda_cutoff=" + fmt(c.params.lambda_cutoff) + "\n";
    s += "wf_param=" + fmt(c.params.wf_param) + "\n";
    s += "grid_n=" + std::to_string(c.solver.grid_n) + "\n";
    s += std::string("grid_scheme=") +
         (c.solver.scheme == GridScheme::log_uniform ? "log_uniform"
                                                     : "uniform") +
         "\n";
    s += "damping=" + fmt(c.solver.damping) + "\n";
    s += "tol=" + fmt(c.solver.tol) + "\n";
    s += "max_iter=" + std::to_string(c.solver.max_iter) + "\n";
    s += "widder_n_max=" + std::to_string(c.widder_n_max) + "\n";
    s += "x_max=" + fmt(c.x_max) + "\n";
    s += "a_max=" + fmt(c.a_max) + "\n";
    s += "lattice_n=" + std::to_string(c.lattice_n) + "\n";
    s += "r_min=" + fmt(c.r_min) + "\n";
    s += "r_max=" + fmt(c.r_max) + "\n";
    s += "r_n=" + std::to_string(c.r_n) + "\n";
    s += "a_fit_min=" + fmt(c.a_fit_min) + "\n";
    s += "a_fit_max=" + fmt(c.a_fit_max) + "\n";
    s += "fit_n=" + std::to_string(c.fit_n) + "\n";
    s += "provider=" + c.provider + "\n";
    s += "gaussian_width=" + fmt(c.gaussian_width) + "\n";
    s += "table=" + c.table_path + "\n";
    s += "positions=" + c.positions_path + "\n";
    s += "input_table=" + c.input_table + "\n";
    s += "taus=" + fmt_list(c.taus) + "\n";
    s += "volumes=" + fmt_list(c.volumes) + "\n";
    s += "output=" + c.output + "\n";
    s += "cache=" + c.cache + "\n";
    return s;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

std::string provenance_header(const RunConfig& config) {
    return "# nc4 v1 config-hash " + fnv1a_hex(config_echo(config));
}

void write_cache(const BoundarySolution& sol, const std::string& path,
                 const std::string& provenance) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cache: cannot write " + path);
    out << "# nc4-cache v1\n";
    out << (provenance.rfind("#", 0) == 0 ? "" : "# ") << provenance << "\n";
    out << "lambda " << fmt(sol.params.lambda) << "\n";
    out << "lambda_cutoff " << fmt(sol.params.lambda_cutoff) << "\n";
    out << "wf_param " << fmt(sol.params.wf_param) << "\n";
    out << "scheme "
        << (sol.g.grid().scheme == GridScheme::log_uniform ? "log_uniform"
                                                           : "uniform")
        << "\n";
    out << "iterations " << sol.iterations << "\n";
    out << "residual " << fmt(sol.residual) << "\n";
    out << "value_at_zero " << fmt(sol.g.value_at_zero()) << "\n";
    out << "tail_exponent " << fmt(sol.g.tail_exponent()) << "\n";
    const auto& grid = sol.g.grid();
    out << "rows " << grid.size() << "\n";
    for (std::size_t k = 0; k < grid.size(); ++k)
        out << fmt(grid.nodes[k]) << " " << fmt(grid.weights[k]) << " "
            << fmt(sol.g.values()[k]) << "\n";
    out << "end\n";
    if (!out) throw std::runtime_error("cache: write failed on " + path);
}

BoundarySolution read_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cache: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "# nc4-cache v1")
        throw CacheMismatch("cache: version header mismatch in " + path);

    ModelParams params;
    GridScheme scheme = GridScheme::log_uniform;
    int iterations = 0;
    double residual = 0, value_at_zero = 1, tail_exponent = 0;
    std::size_t rows = 0;
    bool have_rows = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        std::stringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "lambda") ss >> params.lambda;
        else if (key == "lambda_cutoff") ss >> params.lambda_cutoff;
        else if (key == "wf_param") ss >> params.wf_param;
        else if (key == "scheme") {
            std::string v;
            ss >> v;
            scheme = (v == "uniform") ? GridScheme::uniform
                                      : GridScheme::log_uniform;
        }
        else if (key == "iterations") ss >> iterations;
        else if (key == "residual") ss >> residual;
        else if (key == "value_at_zero") ss >> value_at_zero;
        else if (key == "tail_exponent") ss >> tail_exponent;
        else if (key == "rows") { ss >> rows; have_rows = true; break; }
        else throw CacheMismatch("cache: unknown field '" + key + "'");
        if (ss.fail()) throw CacheMismatch("cache: bad value for " + key);
    }
    if (!have_rows || rows == 0) throw CacheMismatch("cache: no data rows");

    RadialGrid grid;
    grid.scheme = scheme;
    grid.lambda_cutoff = params.lambda_cutoff;
    std::vector<double> values;
    for (std::size_t k = 0; k < rows; ++k) {
        double node, weight, value;
        if (!(in >> node >> weight >> value))
            throw CacheMismatch("cache: truncated data section");
        grid.nodes.push_back(node);
        grid.weights.push_back(weight);
        values.push_back(value);
    }
    in >> line;
    if (line != "end") throw CacheMismatch("cache: missing end marker");

    SampledFunction g(std::make_shared<const RadialGrid>(std::move(grid)),
                      std::move(values), value_at_zero, tail_exponent);
    return BoundarySolution{std::move(g), residual, iterations, params};
}

} // namespace nc4
