#include "qlg/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qlg {

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::free: return "free";
        case Mode::qed_limit: return "qed_limit";
        case Mode::superconducting: return "superconducting";
    }
    return "?";
}

const char* init_name(InitKind k) {
    switch (k) {
        case InitKind::vacuum: return "vacuum";
        case InitKind::plane_wave: return "plane_wave";
        case InitKind::gaussian: return "gaussian";
        case InitKind::two_packet: return "two_packet";
        case InitKind::random: return "random";
    }
    return "?";
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

class Reader {
public:
    Reader(std::string key, std::string value, int line)
        : key_(std::move(key)), value_(std::move(value)), line_(line) {}

    [[noreturn]] void fail(const std::string& why) const {
        std::ostringstream os;
        os << "line " << line_ << ": " << key_ << " = " << value_ << ": " << why;
        throw ConfigError(os.str());
    }

    double real(std::string_view tok) const {
        double v = 0.0;
        const auto* first = tok.data();
        const auto* last = tok.data() + tok.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last) fail("expected a number");
        return v;
    }
    double real() const { return real(value_); }

    long integer(std::string_view tok) const {
        long v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail("expected an integer");
        return v;
    }
    long integer() const { return integer(value_); }

    bool boolean() const {
        if (value_ == "true" || value_ == "1" || value_ == "yes") return true;
        if (value_ == "false" || value_ == "0" || value_ == "no") return false;
        fail("expected true or false");
    }

    std::array<int, 3> triple(bool is_grid) const {
        std::string v = value_;
        for (char& ch : v)
            if (ch == 'x' || ch == ',') ch = ' ';
        const auto t = tokens(v);
        if (t.empty() || t.size() > 3) fail("expected 1 to 3 integers");
        std::array<int, 3> out{is_grid ? 1 : 0, is_grid ? 1 : 0, is_grid ? 1 : 0};
        for (std::size_t i = 0; i < t.size(); ++i) out[i] = static_cast<int>(integer(t[i]));
        return out;
    }

    cplx complex_token(const std::string& tok) const {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) return {real(tok), 0.0};
        return {real(std::string_view(tok).substr(0, colon)),
                real(std::string_view(tok).substr(colon + 1))};
    }

    template <typename E>
    E choice(const std::map<std::string, E>& options) const {
        if (auto it = options.find(value_); it != options.end()) return it->second;
        std::string list;
        for (const auto& [name, _] : options) list += (list.empty() ? "" : ", ") + name;
        fail("expected one of " + list);
    }

    const std::string& value() const { return value_; }

private:
    std::string key_;
    std::string value_;
    int line_;
};

void parse_pattern(const Reader& r, FieldInit& f) {
    const auto t = tokens(r.value());
    if (t.size() == 1) {
        if (t[0] == "positive_energy") return void(f.pattern = PatternKind::positive_energy);
        if (t[0] == "negative_energy") return void(f.pattern = PatternKind::negative_energy);
        if (t[0] == "transverse") return void(f.pattern = PatternKind::transverse);
    }
    if (t.size() != 4 && t.size() != 8)
        r.fail("expected positive_energy, negative_energy, transverse, or 4/8 values re[:im]");
    f.pattern = PatternKind::explicit_values;
    f.values.clear();
    for (const auto& tok : t) f.values.push_back(r.complex_token(tok));
}

const std::map<std::string, InitKind>& init_options() {
    static const std::map<std::string, InitKind> m{{"vacuum", InitKind::vacuum},
                                                   {"plane_wave", InitKind::plane_wave},
                                                   {"gaussian", InitKind::gaussian},
                                                   {"two_packet", InitKind::two_packet},
                                                   {"random", InitKind::random}};
    return m;
}

bool apply_field_key(const std::string& key, const Reader& r, const std::string& prefix,
                     FieldInit& f) {
    if (key.rfind(prefix, 0) != 0) return false;
    const std::string sub = key.substr(prefix.size());
    if (sub == "init") f.kind = r.choice(init_options());
    else if (sub == "mode") f.mode = r.triple(false);
    else if (sub == "amplitude") f.amplitude = r.real();
    else if (sub == "sigma") f.sigma = r.real();
    else if (sub == "pattern") parse_pattern(r, f);
    else return false;
    return true;
}

std::string emit_pattern(const FieldInit& f) {
    switch (f.pattern) {
        case PatternKind::positive_energy: return "positive_energy";
        case PatternKind::negative_energy: return "negative_energy";
        case PatternKind::transverse: return "transverse";
        case PatternKind::explicit_values: break;
    }
    std::string out;
    for (const cplx& v : f.values) {
        if (!out.empty()) out += ' ';
        out += fmt_double(v.real()) + ':' + fmt_double(v.imag());
    }
    return out;
}

void emit_field(std::ostringstream& os, const std::string& prefix, const FieldInit& f) {
    os << prefix << "init = " << init_name(f.kind) << '\n';
    os << prefix << "mode = " << f.mode[0] << ' ' << f.mode[1] << ' ' << f.mode[2] << '\n';
    os << prefix << "amplitude = " << fmt_double(f.amplitude) << '\n';
    os << prefix << "sigma = " << fmt_double(f.sigma) << '\n';
    os << prefix << "pattern = " << emit_pattern(f) << '\n';
}

}  // namespace

void SimConfig::validate() const {
    auto bad = [](const std::string& msg) { throw ConfigError(msg); };
    for (int d : grid.dims)
        if (d < 1) bad("grid dims must all be >= 1");
    if (!(grid.spacing > 0.0)) bad("spacing must be > 0");
    if (!(grid.timestep > 0.0)) bad("timestep must be > 0");
    if (!(m >= 0.0)) bad("m must be >= 0");
    if (!(m_L >= 0.0)) bad("m_L must be >= 0");
    if (!(eps() <= 1.0)) bad("invariant ε = m·τ ≤ 1 violated: m·τ = " + fmt_double(eps()));
    if (!(eps_L() <= 1.0)) bad("invariant ε_L = m_L·τ ≤ 1 violated: m_L·τ = " + fmt_double(eps_L()));
    if (london_preset && m_L != 0.0) bad("london_preset fixes ε_L = 1; m_L must be left at 0");
    if (!(phi0 > 0.0)) bad("phi0 must be > 0");
    if (!std::isfinite(e)) bad("e must be finite");
    if (!std::isfinite(coupling)) bad("coupling must be finite");
    if (!(rho_floor > 0.0)) bad("rho_floor must be > 0");
    if (steps < 0) bad("steps must be >= 0");
    if (cadence < 0) bad("cadence must be >= 0");
    for (const auto* f : {&psi_init, &phi_init}) {
        const char* which = f == &psi_init ? "psi" : "phi";
        if (!(f->sigma > 0.0)) bad(std::string(which) + "_sigma must be > 0");
        if (!std::isfinite(f->amplitude)) bad(std::string(which) + "_amplitude must be finite");
    }
    if (psi_init.pattern == PatternKind::explicit_values && psi_init.values.size() != 4)
        bad("psi_pattern needs 4 values");
    if (psi_init.pattern == PatternKind::transverse)
        bad("psi_pattern = transverse is only meaningful for phi");
    if (phi_init.pattern == PatternKind::explicit_values && phi_init.values.size() != 8)
        bad("phi_pattern needs 8 values");
    if (phi_init.pattern == PatternKind::positive_energy ||
        phi_init.pattern == PatternKind::negative_energy)
        bad("phi_pattern must be transverse or explicit values");
}

SimConfig parse_config(std::string_view text) {
    SimConfig c;
    std::set<std::string> seen;
    bool saw_m_L = false;
    bool saw_lambda = false;
    double lambda_L = 0.0;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "line " << line_no << ": expected key = value, got '" << line << "'";
            throw ConfigError(os.str());
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const Reader r(key, value, line_no);
        if (value.empty()) r.fail("empty value");
        if (!seen.insert(key).second) r.fail("key given more than once");

        if (key == "grid") c.grid.dims = r.triple(true);
        else if (key == "spacing") c.grid.spacing = r.real();
        else if (key == "timestep") c.grid.timestep = r.real();
        else if (key == "m") c.m = r.real();
        else if (key == "m_L") { c.m_L = r.real(); saw_m_L = true; }
        else if (key == "lambda_L") { lambda_L = r.real(); saw_lambda = true;
            if (!(lambda_L > 0.0)) r.fail("lambda_L must be > 0"); }
        else if (key == "e") c.e = r.real();
        else if (key == "phi0") c.phi0 = r.real();
        else if (key == "mode")
            c.mode = r.choice(std::map<std::string, Mode>{{"free", Mode::free},
                                                          {"qed_limit", Mode::qed_limit},
                                                          {"superconducting", Mode::superconducting}});
        else if (key == "collide")
            c.variant = r.choice(std::map<std::string, ops::Variant>{
                {"qft_limit", ops::Variant::qft_limit}, {"high_energy", ops::Variant::high_energy}});
        else if (key == "coupling") c.coupling = r.real();
        else if (key == "rho_floor") c.rho_floor = r.real();
        else if (key == "gauge_site")
            c.gauge_site = r.choice(std::map<std::string, ops::GaugeSite>{
                {"departure", ops::GaugeSite::departure},
                {"arrival", ops::GaugeSite::arrival},
                {"midpoint", ops::GaugeSite::midpoint}});
        else if (key == "london_preset") c.london_preset = r.boolean();
        else if (key == "steps") c.steps = r.integer();
        else if (key == "cadence") c.cadence = r.integer();
        else if (key == "seed") {
            const long s = r.integer();
            if (s < 0) r.fail("seed must be >= 0");
            c.seed = static_cast<std::uint64_t>(s);
        }
        else if (apply_field_key(key, r, "psi_", c.psi_init)) {}
        else if (apply_field_key(key, r, "phi_", c.phi_init)) {}
        else r.fail("unknown key");
    }
    if (saw_m_L && saw_lambda) throw ConfigError("give either m_L or lambda_L, not both");
    if (saw_lambda) c.m_L = 1.0 / lambda_L;
    if (c.london_preset && (saw_m_L || saw_lambda))
        throw ConfigError("london_preset fixes ε_L = 1; do not also give m_L or lambda_L");
    c.validate();
    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed reading config file: " + path);
    return parse_config(ss.str());
}

std::string emit_config(const SimConfig& c) {
    std::ostringstream os;
    os << "grid = " << c.grid.dims[0] << ' ' << c.grid.dims[1] << ' ' << c.grid.dims[2] << '\n';
    os << "spacing = " << fmt_double(c.grid.spacing) << '\n';
    os << "timestep = " << fmt_double(c.grid.timestep) << '\n';
    os << "m = " << fmt_double(c.m) << '\n';
    if (c.london_preset) os << "london_preset = true\n";
    else os << "m_L = " << fmt_double(c.m_L) << '\n';
    os << "e = " << fmt_double(c.e) << '\n';
    os << "phi0 = " << fmt_double(c.phi0) << '\n';
    os << "mode = " << mode_name(c.mode) << '\n';
    os << "collide = " << ops::variant_name(c.variant) << '\n';
    os << "coupling = " << fmt_double(c.coupling) << '\n';
    os << "rho_floor = " << fmt_double(c.rho_floor) << '\n';
    os << "gauge_site = " << ops::gauge_site_name(c.gauge_site) << '\n';
    os << "steps = " << c.steps << '\n';
    os << "cadence = " << c.cadence << '\n';
    os << "seed = " << c.seed << '\n';
    emit_field(os, "psi_", c.psi_init);
    emit_field(os, "phi_", c.phi_init);
    return os.str();
}

}  // namespace qlg
