#include "fnls/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fnls {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"", {"seed"}},
        {"symbol", {"alpha", "sign"}},
        {"grid", {"nx", "ny", "lx", "ly", "planar"}},
        {"time", {"t0", "t1", "nt", "dt", "t_end", "snapshot_stride"}},
        {"nonlinearity", {"nu", "dealias"}},
        {"data", {"kind", "amplitude", "sigma", "jmax", "nmax", "j0", "n0", "path"}},
        {"probe", {"b", "s", "delta", "nt", "kind", "members", "trunc", "k1", "k2", "max_iter",
                   "tol", "lambdas"}},
        {"scan", {"xi0", "n0", "c", "k", "trunc_n"}},
    };
    return s;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Strip a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

bool parse_number(const std::string& tok, double& out) {
    try {
        size_t pos = 0;
        out = std::stod(tok, &pos);
        return pos == tok.size();
    } catch (...) {
        return false;
    }
}

json parse_value(const std::string& raw, const std::string& where) {
    const std::string v = trim(raw);
    if (v.empty()) throw std::invalid_argument("config: empty value for " + where);
    if (v == "true") return true;
    if (v == "false") return false;
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw std::invalid_argument("config: unterminated string for " + where);
        return v.substr(1, v.size() - 2);
    }
    if (v.front() == '[') {
        if (v.back() != ']')
            throw std::invalid_argument("config: unterminated array for " + where);
        json arr = json::array();
        std::stringstream ss(v.substr(1, v.size() - 2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string t = trim(item);
            if (t.empty()) continue;
            double num;
            if (!parse_number(t, num))
                throw std::invalid_argument("config: non-numeric array entry '" + t + "' in " +
                                            where);
            arr.push_back(num);
        }
        return arr;
    }
    double num;
    if (!parse_number(v, num))
        throw std::invalid_argument("config: cannot parse value '" + v + "' for " + where);
    return num;
}

} // namespace

RunConfig::RunConfig() : values_(json::object()), resolved_(json::object()) {}

void RunConfig::check_known(const std::string& section, const std::string& key) {
    const auto& s = schema();
    auto it = s.find(section);
    if (it == s.end())
        throw std::invalid_argument("config: unknown section [" + section + "]");
    if (!it->second.count(key))
        throw std::invalid_argument("config: unknown key '" + key + "' in section [" + section +
                                    "]");
}

RunConfig RunConfig::from_string(const std::string& text) {
    RunConfig cfg;
    std::string section;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config: bad section header at line " +
                                            std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (!schema().count(section))
                throw std::invalid_argument("config: unknown section [" + section + "]");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " +
                                        std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        check_known(section, key);
        const json value = parse_value(line.substr(eq + 1), section + "." + key);
        if (section.empty())
            cfg.values_[key] = value;
        else
            cfg.values_[section][key] = value;
    }
    cfg.resolved_ = cfg.values_;
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return from_string(ss.str());
}

void RunConfig::override_value(const std::string& dotted_key, const std::string& value) {
    const size_t dot = dotted_key.find('.');
    const std::string section = dot == std::string::npos ? "" : dotted_key.substr(0, dot);
    const std::string key = dot == std::string::npos ? dotted_key : dotted_key.substr(dot + 1);
    check_known(section, key);
    const json v = parse_value(value, dotted_key);
    if (section.empty())
        values_[key] = v;
    else
        values_[section][key] = v;
    resolved_ = values_;
}

const json* RunConfig::find(const std::string& section, const std::string& key) const {
    const json* node = &values_;
    if (!section.empty()) {
        auto it = values_.find(section);
        if (it == values_.end()) return nullptr;
        node = &*it;
    }
    auto it = node->find(key);
    return it == node->end() ? nullptr : &*it;
}

namespace {
void record(json& resolved, const std::string& section, const std::string& key, json v) {
    if (section.empty())
        resolved[key] = std::move(v);
    else
        resolved[section][key] = std::move(v);
}
} // namespace

double RunConfig::get_double(const std::string& section, const std::string& key,
                             double def) const {
    check_known(section, key);
    const json* v = find(section, key);
    const double out = v && v->is_number() ? v->get<double>() : def;
    record(resolved_, section, key, out);
    return out;
}

long RunConfig::get_long(const std::string& section, const std::string& key, long def) const {
    return static_cast<long>(get_double(section, key, static_cast<double>(def)));
}

bool RunConfig::get_bool(const std::string& section, const std::string& key, bool def) const {
    check_known(section, key);
    const json* v = find(section, key);
    const bool out = v && v->is_boolean() ? v->get<bool>() : def;
    record(resolved_, section, key, out);
    return out;
}

std::string RunConfig::get_string(const std::string& section, const std::string& key,
                                  const std::string& def) const {
    check_known(section, key);
    const json* v = find(section, key);
    const std::string out = v && v->is_string() ? v->get<std::string>() : def;
    record(resolved_, section, key, out);
    return out;
}

std::vector<double> RunConfig::get_array(const std::string& section, const std::string& key,
                                         const std::vector<double>& def) const {
    check_known(section, key);
    const json* v = find(section, key);
    std::vector<double> out = def;
    if (v) {
        if (v->is_array())
            out = v->get<std::vector<double>>();
        else if (v->is_number())
            out = {v->get<double>()};
    }
    record(resolved_, section, key, out);
    return out;
}

uint64_t RunConfig::seed() const {
    const json* v = find("", "seed");
    const double out = v && v->is_number() ? v->get<double>() : 12345.0;
    record(resolved_, "", "seed", static_cast<uint64_t>(out));
    return static_cast<uint64_t>(out);
}

} // namespace fnls
