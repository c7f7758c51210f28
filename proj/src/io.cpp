#include "safeccc/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "safeccc/errors.hpp"

namespace safeccc {

namespace {

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

bool parse_double(const std::string& text, double& out) {
    if (text.empty()) {
        return false;
    }
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (*begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

// Column of the dataset header: 't', 'v<k>' or 's<k>'.
struct Column {
    char kind;
    std::size_t index; // 1-based vehicle index for v / s
};

Column classify(const std::string& name, const std::string& source) {
    if (name == "t") {
        return {'t', 0};
    }
    if (name.size() >= 2 && (name[0] == 'v' || name[0] == 's')) {
        std::size_t index = 0;
        const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
        if (ec == std::errc() && ptr == name.data() + name.size() && index >= 1) {
            return {name[0], index};
        }
    }
    throw DatasetError(source, 1, "unexpected column '" + name + "'");
}

} // namespace

// ---------------------------------------------------------------------------
// Dataset

TrafficDataset parse_dataset(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t header_line = 0;
    std::vector<Column> columns;
    std::vector<double> times;
    std::vector<std::size_t> time_rows;
    std::vector<std::vector<double>> speeds;
    std::vector<std::vector<double>> positions;
    std::size_t vehicles = 0;
    std::size_t position_count = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string content = trim(line);
        if (content.empty() || content.front() == '#') {
            continue;
        }
        const auto cells = split(content, ',');
        if (columns.empty()) {
            header_line = line_no;
            std::vector<bool> seen_v, seen_s;
            bool seen_t = false;
            for (const auto& name : cells) {
                const Column c = classify(name, source);
                columns.push_back(c);
                auto& seen = c.kind == 'v' ? seen_v : seen_s;
                if (c.kind == 't') {
                    if (seen_t) {
                        throw DatasetError(source, line_no, "duplicate column 't'");
                    }
                    seen_t = true;
                    continue;
                }
                if (seen.size() < c.index) {
                    seen.resize(c.index, false);
                }
                if (seen[c.index - 1]) {
                    throw DatasetError(source, line_no, "duplicate column '" + name + "'");
                }
                seen[c.index - 1] = true;
            }
            if (!seen_t) {
                throw DatasetError(source, line_no, "missing column 't'");
            }
            if (seen_v.empty()) {
                throw DatasetError(source, line_no, "missing column 'v1'");
            }
            for (std::size_t i = 0; i < seen_v.size(); ++i) {
                if (!seen_v[i]) {
                    throw DatasetError(source, line_no,
                                       "missing column 'v" + std::to_string(i + 1) + "'");
                }
            }
            vehicles = seen_v.size();
            if (!seen_s.empty()) {
                if (seen_s.size() > vehicles) {
                    throw DatasetError(source, line_no,
                                       "column 's" + std::to_string(seen_s.size()) +
                                           "' has no matching speed column");
                }
                for (std::size_t i = 0; i < vehicles; ++i) {
                    if (i >= seen_s.size() || !seen_s[i]) {
                        throw DatasetError(source, line_no,
                                           "missing column 's" + std::to_string(i + 1) + "'");
                    }
                }
                position_count = vehicles;
            }
            speeds.assign(vehicles, {});
            positions.assign(position_count, {});
            continue;
        }

        if (cells.size() != columns.size()) {
            throw DatasetError(source, line_no,
                               "expected " + std::to_string(columns.size()) + " cells, found " +
                                   std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double value = 0.0;
            if (!parse_double(cells[c], value) || std::isnan(value)) {
                throw DatasetError(source, line_no,
                                   "cell " + std::to_string(c + 1) + " is empty or not a number");
            }
            if (!std::isfinite(value)) {
                throw DatasetError(source, line_no,
                                   "cell " + std::to_string(c + 1) + " is not finite");
            }
            const Column& col = columns[c];
            if (col.kind == 't') {
                times.push_back(value);
                time_rows.push_back(line_no);
            } else if (col.kind == 'v') {
                if (value < 0.0) {
                    throw DatasetError(source, line_no,
                                       "negative speed in column 'v" + std::to_string(col.index) +
                                           "'");
                }
                speeds[col.index - 1].push_back(value);
            } else {
                positions[col.index - 1].push_back(value);
            }
        }
    }

    if (columns.empty()) {
        throw DatasetError(source, 0, "missing header row");
    }
    if (times.size() < 2) {
        throw DatasetError(source, header_line, "at least two samples are required");
    }

    const std::size_t n = times.size();
    const double dt = (times.back() - times.front()) / static_cast<double>(n - 1);
    if (!(dt > 0.0)) {
        throw DatasetError(source, time_rows[1], "time column must be increasing");
    }
    for (std::size_t k = 1; k < n; ++k) {
        const double step = times[k] - times[k - 1];
        if (std::abs(step - dt) > 1e-6 * dt) {
            throw DatasetError(source, time_rows[k], "non-uniform time grid (step " +
                                                         format_number(step) + " vs " +
                                                         format_number(dt) + ")");
        }
    }

    TrafficDataset ds;
    ds.t0 = times.front();
    ds.dt = dt;
    ds.speeds = std::move(speeds);
    ds.positions = std::move(positions);
    return ds;
}

TrafficDataset load_dataset(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_dataset(in, path.string());
}

void write_dataset(std::ostream& out, const TrafficDataset& ds) {
    out << 't';
    for (std::size_t i = 1; i <= ds.vehicles(); ++i) {
        out << ",v" << i;
    }
    for (std::size_t i = 1; i <= ds.positions.size(); ++i) {
        out << ",s" << i;
    }
    out << '\n';
    for (std::size_t k = 0; k < ds.samples(); ++k) {
        out << format_number(ds.time(k));
        for (const auto& series : ds.speeds) {
            out << ',' << format_number(series[k]);
        }
        for (const auto& series : ds.positions) {
            out << ',' << format_number(series[k]);
        }
        out << '\n';
    }
}

void save_dataset(const std::filesystem::path& path, const TrafficDataset& ds) {
    auto out = open_output(path);
    write_dataset(out, ds);
}

// ---------------------------------------------------------------------------
// Numbers

std::string format_number(double value) {
    std::array<char, 64> buffer{};
    const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return ec == std::errc() ? std::string(buffer.data(), ptr) : std::string("nan");
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += format_number(values[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

struct Field {
    const char* key;
    std::function<void(RunConfig&, const std::string&)> set; // throws std::invalid_argument
    std::function<std::string(const RunConfig&)> get;
};

double to_double(const std::string& text) {
    double value = 0.0;
    if (!parse_double(text, value) || !std::isfinite(value)) {
        throw std::invalid_argument("expected a finite number, got '" + text + "'");
    }
    return value;
}

bool to_bool(const std::string& text) {
    if (text == "true" || text == "on" || text == "yes" || text == "1") {
        return true;
    }
    if (text == "false" || text == "off" || text == "no" || text == "0") {
        return false;
    }
    throw std::invalid_argument("expected true|false, got '" + text + "'");
}

std::size_t to_count(const std::string& text) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("expected a non-negative integer, got '" + text + "'");
    }
    return value;
}

std::vector<double> to_list(const std::string& text) {
    std::vector<double> values;
    for (const auto& part : split(text, ',')) {
        values.push_back(to_double(part));
    }
    return values;
}

#define SAFECCC_NUMBER(KEY, MEMBER)                                                            \
    Field {                                                                                    \
        KEY, [](RunConfig& c, const std::string& v) { c.MEMBER = to_double(v); },              \
            [](const RunConfig& c) { return format_number(c.MEMBER); }                         \
    }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        SAFECCC_NUMBER("vehicle.mass", vehicle.mass),
        SAFECCC_NUMBER("vehicle.effective_mass", vehicle.effective_mass),
        SAFECCC_NUMBER("vehicle.rolling_resistance", vehicle.rolling_resistance),
        SAFECCC_NUMBER("vehicle.air_drag", vehicle.air_drag),
        SAFECCC_NUMBER("vehicle.gravity", vehicle.gravity),
        SAFECCC_NUMBER("vehicle.brake_min", vehicle.brake_min),
        SAFECCC_NUMBER("vehicle.accel_max", vehicle.accel_max),
        SAFECCC_NUMBER("vehicle.power_slope1", vehicle.power_slope1),
        SAFECCC_NUMBER("vehicle.power_intercept1", vehicle.power_intercept1),
        SAFECCC_NUMBER("vehicle.power_slope2", vehicle.power_slope2),
        SAFECCC_NUMBER("vehicle.power_intercept2", vehicle.power_intercept2),
        SAFECCC_NUMBER("vehicle.length", vehicle.length),

        SAFECCC_NUMBER("gains.alpha", gains.alpha),
        SAFECCC_NUMBER("gains.kappa", gains.kappa),
        {"gains.betas", [](RunConfig& c, const std::string& v) { c.gains.betas = to_list(v); },
         [](const RunConfig& c) { return format_list(c.gains.betas); }},
        SAFECCC_NUMBER("gains.v_max", gains.v_max),
        SAFECCC_NUMBER("gains.d_st", gains.d_st),

        SAFECCC_NUMBER("safety.tau", safety.tau),
        SAFECCC_NUMBER("safety.ego_decel", safety.ego_decel),
        SAFECCC_NUMBER("safety.lead_decel", safety.lead_decel),
        SAFECCC_NUMBER("safety.gamma", safety.gamma),
        {"safety.check_brake_authority",
         [](RunConfig& c, const std::string& v) { c.check_brake_authority = to_bool(v); },
         [](const RunConfig& c) { return std::string(c.check_brake_authority ? "true" : "false"); }},

        SAFECCC_NUMBER("sim.dt", sim.dt),
        {"sim.integrator",
         [](RunConfig& c, const std::string& v) {
             try {
                 c.sim.integrator = parse_integrator(v);
             } catch (const ContractError& e) {
                 throw std::invalid_argument(e.what());
             }
         },
         [](const RunConfig& c) { return to_string(c.sim.integrator); }},
        {"sim.initial",
         [](RunConfig& c, const std::string& v) {
             if (v != "equilibrium" && v != "explicit") {
                 throw std::invalid_argument("expected equilibrium|explicit, got '" + v + "'");
             }
             c.sim.equilibrium_start = v == "equilibrium";
         },
         [](const RunConfig& c) {
             return std::string(c.sim.equilibrium_start ? "equilibrium" : "explicit");
         }},
        SAFECCC_NUMBER("sim.initial_headway", sim.initial_headway),
        SAFECCC_NUMBER("sim.initial_speed", sim.initial_speed),
        {"sim.filter", [](RunConfig& c, const std::string& v) { c.sim.filter_enabled = to_bool(v); },
         [](const RunConfig& c) { return std::string(c.sim.filter_enabled ? "true" : "false"); }},
        SAFECCC_NUMBER("sim.mismatch", sim.mismatch),
        {"sim.accel_estimator",
         [](RunConfig& c, const std::string& v) {
             try {
                 c.sim.accel_estimator = parse_accel_estimator(v);
             } catch (const ContractError& e) {
                 throw std::invalid_argument(e.what());
             }
         },
         [](const RunConfig& c) { return to_string(c.sim.accel_estimator); }},
        {"sim.smoothing_window",
         [](RunConfig& c, const std::string& v) { c.sim.smoothing_window = to_count(v); },
         [](const RunConfig& c) { return std::to_string(c.sim.smoothing_window); }},

        {"optimizer.method",
         [](RunConfig& c, const std::string& v) {
             try {
                 c.optimizer.method = parse_optimizer_method(v);
             } catch (const ContractError& e) {
                 throw std::invalid_argument(e.what());
             }
         },
         [](const RunConfig& c) { return to_string(c.optimizer.method); }},
        SAFECCC_NUMBER("optimizer.beta_min", optimizer.box.lower),
        SAFECCC_NUMBER("optimizer.beta_max", optimizer.box.upper),
        SAFECCC_NUMBER("optimizer.beta_step", optimizer.box.step),
        {"optimizer.components",
         [](RunConfig& c, const std::string& v) { c.optimizer.components = to_count(v); },
         [](const RunConfig& c) { return std::to_string(c.optimizer.components); }},
        SAFECCC_NUMBER("optimizer.energy_fraction", optimizer.energy_fraction),
    };
    return table;
}

#undef SAFECCC_NUMBER

const Field* find_field(const std::string& key) {
    for (const Field& f : fields()) {
        if (key == f.key) {
            return &f;
        }
    }
    return nullptr;
}

} // namespace

void RunConfig::validate() const {
    vehicle.validate(gains.v_max);
    if (!(gains.v_max > 0.0) || !(gains.d_st > 0.0)) {
        throw ContractError("gains: v_max and d_st must be positive");
    }
    if (gains.betas.empty()) {
        throw ContractError("gains: at least one beta is required");
    }
    if (!is_plant_stable(gains)) {
        throw ContractError("gains: require alpha > 0, kappa > 0 and alpha + sum(beta) > 0");
    }
    safety.validate();
    if (check_brake_authority) {
        safety.validate_brake_authority(vehicle, gains.v_max);
    }
    sim.validate();
    if (!(optimizer.box.step > 0.0) || !(optimizer.box.upper >= optimizer.box.lower)) {
        throw ContractError("optimizer: require beta_step > 0 and beta_max >= beta_min");
    }
    if (!(optimizer.energy_fraction >= 0.0 && optimizer.energy_fraction <= 1.0)) {
        throw ContractError("optimizer: energy_fraction must lie in [0, 1]");
    }
}

KeyValueMap parse_key_values(std::istream& in, const std::string& source) {
    KeyValueMap values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string content = trim(std::string_view(line).substr(0, hash));
        if (content.empty()) {
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source, line_no, "", "expected 'key = value'");
        }
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(source, line_no, "", "empty key");
        }
        if (values.count(key) != 0) {
            throw ConfigError(source, line_no, key,
                              "duplicate key (first set on line " +
                                  std::to_string(values[key].line) + ")");
        }
        values[key] = {value, line_no};
    }
    return values;
}

KeyValueMap load_key_values(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_key_values(in, path.string());
}

void apply_key_values(const KeyValueMap& values, const std::string& source, RunConfig& config,
                      bool strict) {
    for (const auto& [key, entry] : values) {
        const Field* field = find_field(key);
        if (field == nullptr) {
            if (strict) {
                throw ConfigError(source, entry.line, key, "unknown key");
            }
            continue;
        }
        try {
            field->set(config, entry.value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(source, entry.line, key, e.what());
        }
    }
}

RunConfig parse_config(std::istream& in, const std::string& source) {
    RunConfig config;
    const KeyValueMap values = parse_key_values(in, source);
    apply_key_values(values, source, config, true);
    try {
        config.validate();
    } catch (const ContractError& e) {
        throw ConfigError(source, 0, "", e.what());
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_config(in, path.string());
}

std::string format_config(const RunConfig& config) {
    std::string out;
    std::string section;
    for (const Field& f : fields()) {
        const std::string key = f.key;
        const std::string prefix = key.substr(0, key.find('.'));
        if (prefix != section) {
            if (!section.empty()) {
                out += '\n';
            }
            out += "# " + prefix + "\n";
            section = prefix;
        }
        out += key + " = " + f.get(config) + "\n";
    }
    return out;
}

std::string config_hash(const RunConfig& config) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : format_config(config)) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string text(16, '0');
    for (int i = 15; i >= 0; --i) {
        text[static_cast<std::size_t>(i)] = kHex[hash & 0xf];
        hash >>= 4;
    }
    return text;
}

ControllerGains load_gains(const std::filesystem::path& path, const ControllerGains& base,
                           std::string* hash) {
    const KeyValueMap values = load_key_values(path);
    RunConfig config;
    config.gains = base;
    KeyValueMap gain_values;
    for (const auto& [key, entry] : values) {
        if (key.rfind("gains.", 0) == 0) {
            gain_values[key] = entry;
        }
    }
    apply_key_values(gain_values, path.string(), config, true);
    if (!is_plant_stable(config.gains)) {
        throw ConfigError(path.string(), 0, "", "gains are outside the plant-stable set");
    }
    if (hash != nullptr) {
        const auto it = values.find("config_hash");
        *hash = it == values.end() ? std::string() : it->second.value;
    }
    return config.gains;
}

// ---------------------------------------------------------------------------
// Reports

void write_spectrum(std::ostream& out, const SpectralDecomposition& spec,
                    const std::string& hash) {
    out << "# config_hash: " << hash << '\n'
        << "# v_star: " << format_number(spec.v_star) << '\n'
        << "# t0: " << format_number(spec.t0) << '\n'
        << "# frequency_step: " << format_number(spec.frequency_step) << '\n'
        << "# components: " << spec.size() << '\n'
        << "vehicle,j,omega,rho,phi\n";
    for (std::size_t i = 0; i < spec.vehicles(); ++i) {
        // j = 0 carries the zero-frequency offset as rho sin(phi).
        const double offset = spec.offsets[i];
        out << i + 1 << ",0,0," << format_number(std::abs(offset)) << ','
            << format_number(offset < 0.0 ? -std::numbers::pi / 2 : std::numbers::pi / 2) << '\n';
        for (std::size_t j = 0; j < spec.size(); ++j) {
            out << i + 1 << ',' << j + 1 << ',' << format_number(spec.omega[j]) << ','
                << format_number(spec.amplitude(i, j)) << ',' << format_number(spec.phase(i, j))
                << '\n';
        }
    }
}

void write_optimization_report(std::ostream& out, const OptimizationReport& report,
                               const std::string& dataset, const std::string& hash) {
    double min_cost = std::numeric_limits<double>::infinity();
    double max_cost = -std::numeric_limits<double>::infinity();
    for (const auto& point : report.grid) {
        if (point.feasible) {
            min_cost = std::min(min_cost, point.cost);
            max_cost = std::max(max_cost, point.cost);
        }
    }
    out << "# gains optimized on the spectral cost J [m^2/s^4]\n"
        << "config_hash = " << hash << '\n'
        << "dataset = " << dataset << '\n'
        << "method = " << to_string(report.method) << '\n'
        << "gains.alpha = " << format_number(report.gains.alpha) << '\n'
        << "gains.kappa = " << format_number(report.gains.kappa) << '\n'
        << "gains.betas = " << format_list(report.gains.betas) << '\n'
        << "gains.v_max = " << format_number(report.gains.v_max) << '\n'
        << "gains.d_st = " << format_number(report.gains.d_st) << '\n'
        << "cost.J = " << format_number(report.cost) << '\n'
        << "grid.betas = " << format_list(report.grid_gains.betas) << '\n'
        << "grid.J = " << format_number(report.grid_cost) << '\n'
        << "grid.lattice_size = " << report.lattice_size << '\n'
        << "grid.feasible = " << report.feasible_count << '\n'
        << "grid.min_J = " << format_number(min_cost) << '\n'
        << "grid.max_J = " << format_number(max_cost) << '\n'
        << "refine.iterations = " << report.refine_iterations << '\n';
}

void write_grid(std::ostream& out, const OptimizationReport& report, const std::string& hash) {
    out << "# config_hash: " << hash << '\n' << "index";
    const std::size_t dims = report.gains.vehicles();
    for (std::size_t d = 1; d <= dims; ++d) {
        out << ",beta" << d;
    }
    out << ",feasible,J\n";
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        const GridPoint& p = report.grid[i];
        out << i;
        for (double b : p.betas) {
            out << ',' << format_number(b);
        }
        out << ',' << (p.feasible ? 1 : 0) << ',' << (p.feasible ? format_number(p.cost) : "")
            << '\n';
    }
}

void write_trace(std::ostream& out, const SimTrace& trace, const std::string& hash) {
    out << "# config_hash: " << hash << '\n' << "t,D,v";
    for (std::size_t i = 1; i <= trace.lead_speeds.size(); ++i) {
        out << ",v" << i;
    }
    out << ",a1,a_nominal,a_safe,u,vdot,f,h,filter_active,saturation_active,cbf_truncated,"
           "speed_clamped\n";
    for (std::size_t k = 0; k < trace.size(); ++k) {
        out << format_number(trace.time[k]) << ',' << format_number(trace.headway[k]) << ','
            << format_number(trace.speed[k]);
        for (const auto& lead : trace.lead_speeds) {
            out << ',' << format_number(lead[k]);
        }
        out << ',' << format_number(trace.lead_accel[k]) << ','
            << format_number(trace.a_nominal[k]) << ',' << format_number(trace.a_safe[k]) << ','
            << format_number(trace.command[k]) << ',' << format_number(trace.accel[k]) << ','
            << format_number(trace.resistance[k]) << ',' << format_number(trace.barrier[k]) << ','
            << int(trace.filter_active[k]) << ',' << int(trace.saturation_active[k]) << ','
            << int(trace.cbf_truncated[k]) << ',' << int(trace.speed_clamped[k]) << '\n';
    }
}

void write_metrics(std::ostream& out, const Metrics& m, const ControllerGains& gains,
                   bool filter_enabled, const std::string& dataset, const std::string& hash) {
    out << "config_hash = " << hash << '\n'
        << "dataset = " << dataset << '\n'
        << "gains.betas = " << format_list(gains.betas) << '\n'
        << "filter = " << (filter_enabled ? "on" : "off") << '\n'
        << "w_kJ_per_kg = " << format_number(m.w / 1000.0) << '\n'
        << "w_brake_kJ_per_kg = " << format_number(m.w_brake / 1000.0) << '\n'
        << "h_neg_pct = " << format_number(m.h_neg_pct) << '\n'
        << "# integral of max(B - D, 0) dt\n"
        << "h_margin_m_s = " << format_number(m.h_margin) << '\n'
        << "crash = " << (m.crash ? "true" : "false") << '\n'
        << "min_h_m = " << format_number(m.min_barrier) << '\n'
        << "filter_active_pct = " << format_number(m.filter_active_pct) << '\n'
        << "cbf_truncated_steps = " << m.cbf_truncated_steps << '\n'
        << "speed_clamped_steps = " << m.speed_clamped_steps << '\n';
}

void write_sweep(std::ostream& out, const SweepResult& sweep, const std::string& hash) {
    out << "# config_hash: " << hash << '\n'
        << "# objective: " << to_string(sweep.objective) << '\n'
        << "# lattice_size: " << sweep.lattice_size << '\n'
        << "rank,index";
    const std::size_t dims = sweep.best.vehicles();
    for (std::size_t d = 1; d <= dims; ++d) {
        out << ",beta" << d;
    }
    out << ",score,J,w_kJ_per_kg,w_brake_kJ_per_kg,h_neg_pct,h_margin_m_s,crash\n";
    for (std::size_t r = 0; r < sweep.rows.size(); ++r) {
        const SweepRow& row = sweep.rows[r];
        out << r + 1 << ',' << row.lattice_index;
        for (double b : row.betas) {
            out << ',' << format_number(b);
        }
        out << ',' << format_number(row.score) << ',' << format_number(row.spectral_cost);
        if (row.metrics) {
            out << ',' << format_number(row.metrics->w / 1000.0) << ','
                << format_number(row.metrics->w_brake / 1000.0) << ','
                << format_number(row.metrics->h_neg_pct) << ','
                << format_number(row.metrics->h_margin) << ','
                << (row.metrics->crash ? "true" : "false");
        } else {
            out << ",,,,,";
        }
        out << '\n';
    }
}

void write_comparison(std::ostream& out, const Comparison& c, const std::string& hash) {
    out << "# config_hash: " << hash << '\n'
        << "# acc.betas: " << format_list(c.acc.betas) << '\n'
        << "# ccc.betas: " << format_list(c.ccc.betas) << '\n'
        << "# acc.train_J: " << format_number(c.acc_cost) << '\n'
        << "# ccc.train_J: " << format_number(c.ccc_cost) << '\n'
        << "dataset,w_acc_kJ_per_kg,w_ccc_kJ_per_kg,reduction_pct,w_brake_acc,w_brake_ccc,"
           "h_neg_pct_acc,h_neg_pct_ccc,h_margin_acc,h_margin_ccc,crash_acc,crash_ccc,"
           "w_acc_opt,w_ccc_opt,acc_opt_betas,ccc_opt_betas\n";
    for (const auto& row : c.rows) {
        out << row.dataset << ',' << format_number(row.acc.w / 1000.0) << ','
            << format_number(row.ccc.w / 1000.0) << ',' << format_number(row.reduction_pct)
            << ',' << format_number(row.acc.w_brake / 1000.0) << ','
            << format_number(row.ccc.w_brake / 1000.0) << ',' << format_number(row.acc.h_neg_pct)
            << ',' << format_number(row.ccc.h_neg_pct) << ',' << format_number(row.acc.h_margin)
            << ',' << format_number(row.ccc.h_margin) << ',' << (row.acc.crash ? 1 : 0) << ','
            << (row.ccc.crash ? 1 : 0) << ',';
        if (row.acc_optimal && row.ccc_optimal) {
            auto betas = [](const SweepResult& s) {
                std::string text;
                for (double b : s.best.betas) {
                    text += (text.empty() ? "" : " ") + format_number(b);
                }
                return text;
            };
            out << format_number(row.acc_optimal->rows.front().score / 1000.0) << ','
                << format_number(row.ccc_optimal->rows.front().score / 1000.0) << ','
                << betas(*row.acc_optimal) << ',' << betas(*row.ccc_optimal);
        } else {
            out << ",,,";
        }
        out << '\n';
    }
}

} // namespace safeccc
