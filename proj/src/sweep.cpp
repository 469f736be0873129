#include "cellrate/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "cellrate/errors.hpp"
#include "cellrate/mcp_rate.hpp"
#include "cellrate/rng.hpp"
#include "cellrate/scp_rate.hpp"

namespace cellrate {

namespace {

constexpr std::uint64_t kScpFallbackSamples = 1000000;
constexpr std::uint64_t kDefaultSeed = 0x1d872b41;

// Parameters of one grid point after applying the swept value.
struct Point {
    ChannelProfile profile;
    int K;
    double q;
    double power;  // linear
};

Point resolve_point(const SweepSpec& spec, double value) {
    Point point{spec.profile, spec.K, spec.q, db_to_linear(spec.power_db)};
    switch (spec.param) {
        case SweptParam::PowerDb:
            point.power = db_to_linear(value);
            break;
        case SweptParam::Q:
            point.q = value;
            break;
        case SweptParam::K: {
            const double rounded = std::round(value);
            if (std::fabs(value - rounded) > 1e-9 || rounded < 1.0)
                throw ConfigError("sweep over K requires positive integer grid values");
            point.K = static_cast<int>(rounded);
            break;
        }
        case SweptParam::Alpha1:
            point.profile = ChannelProfile::sho(spec.profile.tap(0), value);
            break;
    }
    return point;
}

double mcp_point_rate(const Point& point, Scheme scheme, const VirtualGainDistribution& dist) {
    // The soft-handoff APC case has the dedicated erasure path; all other
    // combinations use the general fixed point with the power folded into
    // the gain law.
    if (scheme == Scheme::APC && point.profile.is_sho()) {
        const double q_cell = std::pow(point.q, point.K);
        return mcp_rate_erasure(point.profile, q_cell, point.power);
    }
    return mcp_rate_general(point.profile, dist, 1.0);
}

double scp_point_rate(const Point& point, const VirtualGainDistribution& dist,
                      std::uint64_t fallback_seed) {
    try {
        return scp_rate_exact(point.profile, dist);
    } catch (const SupportTooLargeError&) {
        return scp_rate_mc(point.profile, dist, kScpFallbackSamples, fallback_seed).mean;
    }
}

std::uint64_t row_seed(std::uint64_t base, std::size_t row_index) {
    std::uint64_t state = base ^ (0xa076bc93ULL + row_index * 0x9e3779b97f4a7c15ULL);
    return splitmix64(state);
}

std::string format_g12(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

void validate_spec(const SweepSpec& spec) {
    if (spec.grid.empty()) throw ConfigError("sweep grid must be nonempty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i] > spec.grid[i - 1]))
            throw ConfigError("sweep grid must be strictly increasing");
    if (spec.schemes.empty()) throw ConfigError("at least one scheme required");
    if (spec.processing.empty()) throw ConfigError("at least one processing kind required");
    if (spec.K < 1) throw ConfigError("K must be >= 1");
    if (!(spec.q >= 0.0 && spec.q <= 1.0)) throw ConfigError("q must lie in [0,1]");
    if (!std::isfinite(spec.power_db)) throw ConfigError("power_db must be finite");
    if (spec.param == SweptParam::Q)
        for (double v : spec.grid)
            if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("q grid values must lie in [0,1]");
    if (spec.param == SweptParam::K)
        for (double v : spec.grid)
            if (std::fabs(v - std::round(v)) > 1e-9 || std::round(v) < 1.0)
                throw ConfigError("sweep over K requires positive integer grid values");
    if (spec.param == SweptParam::Alpha1) {
        if (!spec.profile.is_sho())
            throw ConfigError("sweep over alpha1 requires a soft-handoff profile");
        for (double v : spec.grid)
            if (!(v >= 0.0)) throw ConfigError("alpha1 grid values must be >= 0");
    }
}

std::vector<SweepRow> evaluate_grid_point(const SweepSpec& spec, std::size_t grid_index) {
    const double value = spec.grid[grid_index];
    std::vector<SweepRow> rows;
    rows.reserve(spec.schemes.size() * spec.processing.size());

    const std::size_t rows_per_point = spec.schemes.size() * spec.processing.size();
    std::size_t row_index = grid_index * rows_per_point;

    Point point{spec.profile, spec.K, spec.q, 1.0};
    bool point_ok = true;
    std::string point_error;
    try {
        point = resolve_point(spec, value);
    } catch (const Error& e) {
        point_ok = false;
        point_error = e.what();
    }

    for (Scheme scheme : spec.schemes) {
        for (Processing processing : spec.processing) {
            SweepRow row;
            row.sweep_value = value;
            row.scheme = scheme;
            row.processing = processing;
            const std::uint64_t seed_base =
                spec.validate ? spec.validate->seed : kDefaultSeed;
            const std::uint64_t seed = row_seed(seed_base, row_index++);
            if (!point_ok) {
                row.ok = false;
                row.error = point_error;
                rows.push_back(std::move(row));
                continue;
            }
            try {
                const ActivityModel model(point.K, point.q, point.power);
                const VirtualGainDistribution dist = scheme_distribution(scheme, model);
                if (processing == Processing::MCP) {
                    row.rate_bits = mcp_point_rate(point, scheme, dist);
                    if (spec.validate) {
                        SimConfig cfg(spec.validate->M, spec.validate->trials, seed);
                        row.oracle = estimate_throughput(point.profile, dist, cfg);
                    }
                } else {
                    row.rate_bits = scp_point_rate(point, dist, seed);
                    if (spec.validate) {
                        const std::uint64_t samples =
                            static_cast<std::uint64_t>(spec.validate->M) *
                            static_cast<std::uint64_t>(spec.validate->trials);
                        row.oracle = scp_rate_mc(point.profile, dist, std::max<std::uint64_t>(samples, 1), seed);
                    }
                }
                if (spec.per_active_user)
                    row.per_active_user_rate = per_active_user(row.rate_bits, point.K, point.q);
            } catch (const Error& e) {
                row.ok = false;
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::NPC: return "npc";
        case Scheme::APC: return "apc";
        case Scheme::CPC: return "cpc";
    }
    return "npc";
}

std::string to_string(Processing processing) {
    return processing == Processing::MCP ? "mcp" : "scp";
}

std::string to_string(SweptParam param) {
    switch (param) {
        case SweptParam::PowerDb: return "power_db";
        case SweptParam::Q: return "q";
        case SweptParam::K: return "K";
        case SweptParam::Alpha1: return "alpha1";
    }
    return "power_db";
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "npc") return Scheme::NPC;
    if (name == "apc") return Scheme::APC;
    if (name == "cpc") return Scheme::CPC;
    throw ConfigError("unknown scheme: " + name);
}

Processing processing_from_string(const std::string& name) {
    if (name == "mcp") return Processing::MCP;
    if (name == "scp") return Processing::SCP;
    throw ConfigError("unknown processing kind: " + name);
}

SweptParam swept_param_from_string(const std::string& name) {
    if (name == "power_db") return SweptParam::PowerDb;
    if (name == "q") return SweptParam::Q;
    if (name == "K") return SweptParam::K;
    if (name == "alpha1") return SweptParam::Alpha1;
    throw ConfigError("unknown sweep parameter: " + name);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

VirtualGainDistribution scheme_distribution(Scheme scheme, const ActivityModel& model) {
    switch (scheme) {
        case Scheme::NPC: return npc_distribution(model);
        case Scheme::APC: return apc_distribution(model);
        case Scheme::CPC: return cpc_distribution(model);
    }
    throw ConfigError("unknown scheme");
}

double per_active_user(double rate, int K, double q) {
    if (K < 1) throw std::invalid_argument("per_active_user: K must be >= 1");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("per_active_user: q must lie in [0,1]");
    if (q == 1.0) throw DivisionByZeroError("per_active_user: q = 1 leaves no active users");
    return rate / ((1.0 - q) * K);
}

SweepResult run_sweep(const SweepSpec& spec) {
    validate_spec(spec);

    SweepResult result;
    result.param = spec.param;

    // Grid points are independent; evaluate them on a bounded pool and
    // splice the row blocks back in grid order.
    const std::size_t n_points = spec.grid.size();
    std::vector<std::future<std::vector<SweepRow>>> futures(n_points);
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::size_t launched = 0;
    std::vector<std::vector<SweepRow>> blocks(n_points);
    while (launched < n_points) {
        const std::size_t batch = std::min<std::size_t>(workers, n_points - launched);
        for (std::size_t i = 0; i < batch; ++i) {
            const std::size_t index = launched + i;
            futures[index] = std::async(std::launch::async,
                                        [&spec, index] { return evaluate_grid_point(spec, index); });
        }
        for (std::size_t i = 0; i < batch; ++i) blocks[launched + i] = futures[launched + i].get();
        launched += batch;
    }
    for (auto& block : blocks)
        for (auto& row : block) result.rows.push_back(std::move(row));
    return result;
}

std::vector<std::string> ordering_violations(const SweepResult& result) {
    constexpr double kSlack = 1e-9;
    std::vector<std::string> violations;

    // index rows by (value, scheme, processing)
    std::map<std::tuple<double, int, int>, const SweepRow*> by_key;
    for (const auto& row : result.rows) {
        if (!row.ok) continue;
        by_key[{row.sweep_value, static_cast<int>(row.scheme), static_cast<int>(row.processing)}] =
            &row;
    }
    const auto find = [&](double value, Scheme s, Processing p) -> const SweepRow* {
        auto it = by_key.find({value, static_cast<int>(s), static_cast<int>(p)});
        return it == by_key.end() ? nullptr : it->second;
    };

    std::ostringstream msg;
    for (const auto& row : result.rows) {
        if (!row.ok || row.processing != Processing::MCP) continue;
        const SweepRow* scp = find(row.sweep_value, row.scheme, Processing::SCP);
        if (scp && row.rate_bits < scp->rate_bits - kSlack) {
            msg.str("");
            msg << "mcp < scp for scheme " << to_string(row.scheme) << " at "
                << to_string(result.param) << " = " << format_g12(row.sweep_value) << " ("
                << format_g12(row.rate_bits) << " vs " << format_g12(scp->rate_bits) << ")";
            violations.push_back(msg.str());
        }
    }
    for (const auto& row : result.rows) {
        if (!row.ok || row.processing != Processing::MCP) continue;
        if (row.scheme != Scheme::CPC) continue;
        const SweepRow* apc = find(row.sweep_value, Scheme::APC, Processing::MCP);
        const SweepRow* npc = find(row.sweep_value, Scheme::NPC, Processing::MCP);
        if (apc && row.rate_bits < apc->rate_bits - 1e-9) {
            msg.str("");
            msg << "mcp cpc < apc at " << to_string(result.param) << " = "
                << format_g12(row.sweep_value);
            violations.push_back(msg.str());
        }
        if (apc && npc && apc->rate_bits < npc->rate_bits - 1e-9) {
            msg.str("");
            msg << "mcp apc < npc at " << to_string(result.param) << " = "
                << format_g12(row.sweep_value);
            violations.push_back(msg.str());
        }
    }
    return violations;
}

void emit_csv(const SweepResult& result, std::ostream& out) {
    out << "sweep_param,sweep_value,scheme,processing,rate_bits,oracle_mean,oracle_stderr,"
           "per_active_user_rate\n";
    const std::string param = to_string(result.param);
    for (const auto& row : result.rows) {
        out << param << ',' << format_g12(row.sweep_value) << ',' << to_string(row.scheme) << ','
            << to_string(row.processing) << ',';
        if (row.ok) out << format_g12(row.rate_bits);
        out << ',';
        if (row.ok && row.oracle) out << format_g12(row.oracle->mean);
        out << ',';
        if (row.ok && row.oracle) out << format_g12(row.oracle->std_error);
        out << ',';
        if (row.ok && row.per_active_user_rate) out << format_g12(*row.per_active_user_rate);
        out << '\n';
    }
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    emit_csv(result, out);
    if (!out) throw ConfigError("write failed: " + path);
}

namespace {

std::vector<double> linspace_inclusive(double lo, double hi, int count) {
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    return grid;
}

}  // namespace

SweepSpec fig3_spec() {
    SweepSpec spec;
    spec.param = SweptParam::PowerDb;
    spec.grid = linspace_inclusive(0.0, 20.0, 21);
    spec.K = 5;
    spec.q = 0.3;
    return spec;
}

SweepSpec fig4_spec() {
    SweepSpec spec;
    spec.param = SweptParam::Q;
    spec.grid = linspace_inclusive(0.0, 0.95, 20);
    spec.K = 5;
    spec.power_db = 5.0;
    spec.per_active_user = true;
    return spec;
}

SweepSpec fig5_spec() {
    SweepSpec spec;
    spec.param = SweptParam::K;
    spec.grid.clear();
    for (int k = 1; k <= 30; ++k) spec.grid.push_back(k);
    spec.q = 0.3;
    spec.power_db = 5.0;
    return spec;
}

SweepSpec fig6_spec() {
    SweepSpec spec;
    spec.param = SweptParam::Alpha1;
    spec.grid = linspace_inclusive(0.0, 1.0, 21);
    spec.K = 5;
    spec.q = 0.3;
    spec.power_db = 5.0;
    return spec;
}

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string current;
    int depth = 0;  // commas inside (re,im) tokens are not separators
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            items.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    items.push_back(trim(current));
    return items;
}

double parse_double(const std::string& text, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double value = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for '" + key + "': " + text);
    }
}

std::complex<double> parse_complex(const std::string& text, const std::string& key) {
    if (!text.empty() && text.front() == '(') {
        std::istringstream in(text);
        std::complex<double> value;
        in >> value;
        if (!in) throw ConfigError("invalid complex value for '" + key + "': " + text);
        return value;
    }
    return {parse_double(text, key), 0.0};
}

bool parse_bool(const std::string& text, const std::string& key) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("invalid boolean value for '" + key + "': " + text);
}

}  // namespace

SweepSpec parse_sweep_config(std::istream& in) {
    SweepSpec spec;
    spec.grid.clear();

    std::optional<std::complex<double>> alpha0;
    std::optional<std::complex<double>> alpha1;
    std::optional<std::vector<std::complex<double>>> taps;
    std::optional<int> l1;
    bool saw_sweep = false;

    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_number) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty())
            throw ConfigError("line " + std::to_string(line_number) + ": empty value for '" + key + "'");

        if (key == "sweep") {
            spec.param = swept_param_from_string(value);
            saw_sweep = true;
        } else if (key == "grid") {
            spec.grid.clear();
            for (const auto& item : split_list(value)) spec.grid.push_back(parse_double(item, key));
        } else if (key == "alpha0") {
            alpha0 = parse_complex(value, key);
        } else if (key == "alpha1") {
            alpha1 = parse_complex(value, key);
        } else if (key == "taps") {
            std::vector<std::complex<double>> parsed;
            for (const auto& item : split_list(value)) parsed.push_back(parse_complex(item, key));
            taps = std::move(parsed);
        } else if (key == "l1") {
            l1 = static_cast<int>(parse_double(value, key));
        } else if (key == "K") {
            spec.K = static_cast<int>(parse_double(value, key));
        } else if (key == "q") {
            spec.q = parse_double(value, key);
        } else if (key == "power_db") {
            spec.power_db = parse_double(value, key);
        } else if (key == "schemes") {
            spec.schemes.clear();
            for (const auto& item : split_list(value)) spec.schemes.push_back(scheme_from_string(item));
        } else if (key == "processing") {
            spec.processing.clear();
            for (const auto& item : split_list(value))
                spec.processing.push_back(processing_from_string(item));
        } else if (key == "per_active_user") {
            spec.per_active_user = parse_bool(value, key);
        } else if (key == "validate") {
            const auto parts = split_list(value);
            if (parts.size() != 3) throw ConfigError("validate expects 'M,trials,seed'");
            spec.validate = SimConfig(static_cast<int>(parse_double(parts[0], key)),
                                      static_cast<int>(parse_double(parts[1], key)),
                                      static_cast<std::uint64_t>(parse_double(parts[2], key)));
        } else {
            throw ConfigError("unknown configuration key: " + key);
        }
    }

    if (!saw_sweep) throw ConfigError("missing required key 'sweep'");
    if (spec.grid.empty()) throw ConfigError("missing required key 'grid'");

    if (taps) {
        if (alpha0 || alpha1) throw ConfigError("give either taps or alpha0/alpha1, not both");
        const int left = l1.value_or(0);
        const int right = static_cast<int>(taps->size()) - left - 1;
        if (right < 0) throw ConfigError("l1 exceeds the tap count");
        spec.profile = ChannelProfile(left, right, *taps);
    } else {
        const std::complex<double> a0 = alpha0.value_or(std::complex<double>(1.0, 0.0));
        const std::complex<double> a1 = alpha1.value_or(std::complex<double>(0.5, 0.0));
        spec.profile = ChannelProfile::sho(a0, a1);
    }
    return spec;
}

SweepSpec parse_sweep_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_sweep_config(in);
}

}  // namespace cellrate
