#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cellrate/channel.hpp"
#include "cellrate/mc_oracle.hpp"
#include "cellrate/power_control.hpp"

namespace cellrate {

enum class Scheme { NPC, APC, CPC };
enum class Processing { MCP, SCP };
enum class SweptParam { PowerDb, Q, K, Alpha1 };

std::string to_string(Scheme scheme);
std::string to_string(Processing processing);
std::string to_string(SweptParam param);

Scheme scheme_from_string(const std::string& name);
Processing processing_from_string(const std::string& name);
SweptParam swept_param_from_string(const std::string& name);

/// dB -> linear power ratio (10^(db/10)).
double db_to_linear(double db);

/// Builds the scheme's squared-virtual-gain law for one parameter point.
VirtualGainDistribution scheme_distribution(Scheme scheme, const ActivityModel& model);

/// Per-cell rate divided by the average number of active users, (1-q)K.
/// Throws DivisionByZeroError at q = 1.
double per_active_user(double rate, int K, double q);

/// One parameter sweep: which parameter moves, over which grid, what stays
/// fixed, and what gets evaluated.
struct SweepSpec {
    SweptParam param = SweptParam::PowerDb;
    std::vector<double> grid;
    ChannelProfile profile = ChannelProfile::sho(1.0, 0.5);
    int K = 5;
    double q = 0.3;
    double power_db = 5.0;
    std::vector<Scheme> schemes = {Scheme::NPC, Scheme::APC, Scheme::CPC};
    std::vector<Processing> processing = {Processing::MCP, Processing::SCP};
    std::optional<SimConfig> validate;
    bool per_active_user = false;
};

/// One output row: grid point x scheme x processing.
struct SweepRow {
    double sweep_value = 0.0;
    Scheme scheme = Scheme::NPC;
    Processing processing = Processing::MCP;
    bool ok = true;
    std::string error;  // set when !ok
    double rate_bits = 0.0;
    std::optional<McEstimate> oracle;
    std::optional<double> per_active_user_rate;
};

struct SweepResult {
    SweptParam param = SweptParam::PowerDb;
    std::vector<SweepRow> rows;
};

/// Evaluates every (grid point, scheme, processing) cell. MCP goes through
/// the erasure specialization for APC on soft-handoff profiles and through
/// the general fixed point otherwise; SCP uses exact enumeration with an MC
/// fallback at 1e6 samples. Rows that fail are marked, not fatal. Grid points
/// run on a bounded worker pool; row order is by grid index regardless of
/// completion order.
SweepResult run_sweep(const SweepSpec& spec);

/// Ordering diagnostics over the rows (MCP >= SCP and, under MCP,
/// CPC >= APC >= NPC, each with 1e-9 slack). Returns human-readable
/// violation descriptions; empty when all orderings hold.
std::vector<std::string> ordering_violations(const SweepResult& result);

/// CSV with the fixed header
///   sweep_param,sweep_value,scheme,processing,rate_bits,oracle_mean,oracle_stderr,per_active_user_rate
/// Numbers carry 12 significant digits; absent optionals are empty fields.
/// Byte output is deterministic for identical inputs.
void emit_csv(const SweepResult& result, std::ostream& out);
void emit_csv(const SweepResult& result, const std::string& path);

// Figure presets: sweep configurations of the four reference plots
// (soft-handoff profile, alpha0 = 1, alpha1 = 0.5 unless swept).
SweepSpec fig3_spec();  // rate vs total cell power, 0..20 dB; K=5, q=0.3
SweepSpec fig4_spec();  // per-active-user rate vs q, 0..0.95; K=5, P=5 dB
SweepSpec fig5_spec();  // rate vs users per cell K, 1..30; q=0.3, P=5 dB
SweepSpec fig6_spec();  // rate vs interference factor alpha, 0..1; K=5, q=0.3, P=5 dB

/// Parses the flat key = value sweep configuration format (see README).
/// Throws ConfigError on unknown keys or malformed values.
SweepSpec parse_sweep_config(std::istream& in);
SweepSpec parse_sweep_config_file(const std::string& path);

/// Runs the built-in invariant suite, printing one line per check.
/// Returns the number of failed checks.
int run_selftest(std::ostream& out);

}  // namespace cellrate
