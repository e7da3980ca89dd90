#include "hjc/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "hjc/errors.hpp"

namespace hjc {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& msg) {
    throw config_error(origin + ":" + std::to_string(line) + ": " + msg);
}

} // namespace

RawConfig parse_config_text(const std::string& text, const std::string& origin) {
    RawConfig out;
    std::istringstream is(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(origin, lineno, "malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(origin, lineno, "empty section name");
            out[section];  // register even if empty
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(origin, lineno, "expected 'key = value', got '" + line + "'");
        if (section.empty())
            fail(origin, lineno, "key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(origin, lineno, "empty key");
        if (out[section].count(key))
            fail(origin, lineno, "duplicate key '" + key + "' in [" + section + "]");
        out[section][key] = value;
    }
    return out;
}

RawConfig parse_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path);
}

namespace {

class Schema {
public:
    using Setter = std::function<void(const std::string&)>;

    void key(const std::string& section, const std::string& name, Setter s) {
        handlers_[section][name] = std::move(s);
    }

    void apply(const RawConfig& raw) const {
        for (const auto& [section, kv] : raw) {
            const auto sit = handlers_.find(section);
            if (sit == handlers_.end())
                throw config_error("unknown config section [" + section + "]");
            for (const auto& [k, v] : kv) {
                const auto kit = sit->second.find(k);
                if (kit == sit->second.end())
                    throw config_error("unknown key '" + k + "' in section [" + section + "]");
                try {
                    kit->second(v);
                } catch (const config_error&) {
                    throw;
                } catch (const std::exception& e) {
                    throw config_error("bad value for '" + k + "' in [" + section +
                                       "]: " + e.what());
                }
            }
        }
    }

private:
    std::map<std::string, std::map<std::string, Setter>> handlers_;
};

double to_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw config_error("trailing characters in number '" + s + "'");
    return v;
}

long to_long(const std::string& s) {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw config_error("trailing characters in integer '" + s + "'");
    return v;
}

std::uint64_t to_u64(const std::string& s) {
    std::uint64_t v = 0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw config_error("bad unsigned integer '" + s + "'");
    return v;
}

bool to_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "off" || s == "no") return false;
    throw config_error("bad boolean '" + s + "' (use true/false)");
}

std::vector<double> to_list(const std::string& s) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) throw config_error("empty element in list '" + s + "'");
        out.push_back(to_double(item));
    }
    return out;
}

} // namespace

RunConfig resolve_config(const RawConfig& raw) {
    RunConfig c;
    // Schema defaults that differ from the zero-argument struct values.
    c.disorder.sigma = 0.1;
    c.disorder.n_realizations = 100;
    Schema s;

    s.key("model", "n_molecules", [&](const std::string& v) { c.model.n_molecules = static_cast<int>(to_long(v)); });
    s.key("model", "omega_v", [&](const std::string& v) { c.model.omega_v = to_double(v); });
    s.key("model", "lambda_e", [&](const std::string& v) { c.model.lambda_e = to_double(v); });
    s.key("model", "omega_rabi", [&](const std::string& v) { c.model.omega_rabi = to_double(v); });
    s.key("model", "delta_e", [&](const std::string& v) { c.model.delta_e = to_double(v); });
    s.key("model", "m_sym_max", [&](const std::string& v) { c.model.trunc.m_sym_max = static_cast<int>(to_long(v)); });
    s.key("model", "m_nonsym_max", [&](const std::string& v) { c.model.trunc.m_nonsym_max = static_cast<int>(to_long(v)); });
    s.key("model", "m_total_max", [&](const std::string& v) {
        if (v == "none" || v.empty())
            c.model.trunc.m_total_max.reset();
        else
            c.model.trunc.m_total_max = static_cast<int>(to_long(v));
    });

    s.key("solver", "tol", [&](const std::string& v) { c.solver.tol = to_double(v); });
    s.key("solver", "max_matvecs", [&](const std::string& v) { c.solver.max_matvecs = static_cast<int>(to_long(v)); });
    s.key("solver", "krylov_dim", [&](const std::string& v) { c.solver.krylov_dim = static_cast<int>(to_long(v)); });
    s.key("solver", "dense_threshold", [&](const std::string& v) { c.solver.dense_threshold = static_cast<std::size_t>(to_long(v)); });

    s.key("run", "mode", [&](const std::string& v) { c.mode = v; });
    s.key("run", "seed", [&](const std::string& v) { c.seed = to_u64(v); });
    s.key("run", "threads", [&](const std::string& v) { c.threads = static_cast<int>(to_long(v)); });
    s.key("run", "out_dir", [&](const std::string& v) { c.out_dir = v; });
    s.key("run", "label", [&](const std::string& v) { c.label = v; });
    s.key("run", "real_gauge", [&](const std::string& v) { c.real_gauge = to_bool(v); });

    s.key("spectrum", "n_pairs", [&](const std::string& v) { c.spectrum_n_pairs = static_cast<int>(to_long(v)); });

    s.key("p0_sweep", "axis", [&](const std::string& v) {
        if (v != "n_molecules" && v != "omega_rabi")
            throw config_error("axis must be n_molecules or omega_rabi");
        c.p0_axis = v;
    });
    s.key("p0_sweep", "values", [&](const std::string& v) { c.p0_values = to_list(v); });
    s.key("p0_sweep", "omega_rabi_values", [&](const std::string& v) { c.p0_rabi_values = to_list(v); });

    s.key("disorder", "sigma", [&](const std::string& v) { c.disorder.sigma = to_double(v); });
    s.key("disorder", "n_realizations", [&](const std::string& v) { c.disorder.n_realizations = static_cast<int>(to_long(v)); });
    s.key("disorder", "ratios", [&](const std::string& v) { c.disorder_ratios = to_list(v); });
    s.key("disorder", "vary", [&](const std::string& v) {
        if (v != "omega_rabi" && v != "sigma")
            throw config_error("vary must be omega_rabi or sigma");
        c.disorder_vary = v;
    });
    s.key("disorder", "keep_values", [&](const std::string& v) { c.disorder.keep_values = to_bool(v); });

    s.key("etrate", "lambda_d", [&](const std::string& v) { c.etrate.lambda_d = to_double(v); });
    s.key("etrate", "lambda_a", [&](const std::string& v) { c.etrate.lambda_a = to_double(v); });
    s.key("etrate", "gamma_v", [&](const std::string& v) { c.etrate.gamma_v = to_double(v); });
    s.key("etrate", "kbt", [&](const std::string& v) { c.etrate.kbt = to_double(v); });
    s.key("etrate", "v_coh", [&](const std::string& v) { c.etrate.v_coh = to_double(v); });
    s.key("etrate", "m_max", [&](const std::string& v) { c.etrate.m_max = static_cast<int>(to_long(v)); });
    s.key("etrate", "n_molecules", [&](const std::string& v) { c.etrate.n_molecules = to_double(v); });
    s.key("etrate", "include_stokes_shift", [&](const std::string& v) { c.etrate.include_stokes_shift = to_bool(v); });
    s.key("etrate", "axis", [&](const std::string& v) {
        if (v != "n_molecules" && v != "lambda_ratio")
            throw config_error("axis must be n_molecules or lambda_ratio");
        c.etrate_axis = v;
    });
    s.key("etrate", "values", [&](const std::string& v) { c.etrate_values = to_list(v); });
    s.key("etrate", "delta_e_values", [&](const std::string& v) { c.etrate_delta_e = to_list(v); });

    s.apply(raw);

    try {
        c.model.validate();
        if (!(c.solver.tol > 0.0)) throw param_error("solver tol must be positive");
        if (c.solver.krylov_dim < 4) throw param_error("krylov_dim must be >= 4");
        if (c.threads < 0) throw param_error("threads must be >= 0");
        c.disorder.validate();
        // etrate is validated on use (its defaults are valid).
    } catch (const param_error& e) {
        throw config_error(std::string("invalid configuration: ") + e.what());
    }
    c.etrate.omega_v = c.model.omega_v;
    return c;
}

RunConfig load_config(const std::string& path) {
    return resolve_config(parse_config_file(path));
}

} // namespace hjc
