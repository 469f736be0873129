#include "cellrate/power_control.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cellrate {

namespace {

constexpr double kProbSumTol = 1e-12;
constexpr double kPruneMass = 1e-15;

// log C(K,L); lgamma keeps this finite up to K ~ 1000 and beyond.
double log_binomial_coeff(int K, int L) {
    return std::lgamma(K + 1.0) - std::lgamma(L + 1.0) - std::lgamma(K - L + 1.0);
}

// Binomial(K, 1-q) pmf at L, evaluated in the log domain.
std::vector<double> binomial_pmf(int K, double q) {
    std::vector<double> pmf(static_cast<std::size_t>(K) + 1, 0.0);
    if (q <= 0.0) {
        pmf[static_cast<std::size_t>(K)] = 1.0;
        return pmf;
    }
    if (q >= 1.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    const double log_p = std::log1p(-q);  // log(1-q)
    const double log_q = std::log(q);
    for (int L = 0; L <= K; ++L) {
        pmf[static_cast<std::size_t>(L)] =
            std::exp(log_binomial_coeff(K, L) + L * log_p + (K - L) * log_q);
    }
    return pmf;
}

}  // namespace

ActivityModel::ActivityModel(int K_, double q_, double P_) : K(K_), q(q_), P(P_) {
    if (K < 1) throw std::invalid_argument("ActivityModel: K must be >= 1");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("ActivityModel: q must lie in [0,1]");
    if (!(P >= 0.0) || !std::isfinite(P)) throw std::invalid_argument("ActivityModel: P must be finite and >= 0");
}

std::string to_string(SchemeTag tag) {
    switch (tag) {
        case SchemeTag::NPC: return "npc";
        case SchemeTag::APC: return "apc";
        case SchemeTag::CPC: return "cpc";
        case SchemeTag::CUSTOM: return "custom";
    }
    return "custom";
}

VirtualGainDistribution::VirtualGainDistribution(std::vector<Atom> atoms, SchemeTag tag)
    : tag_(tag) {
    if (atoms.empty()) throw std::invalid_argument("VirtualGainDistribution: no atoms");
    double total = 0.0;
    for (const auto& atom : atoms) {
        if (!(atom.gain_sq >= 0.0) || !std::isfinite(atom.gain_sq))
            throw std::invalid_argument("VirtualGainDistribution: gains must be finite and >= 0");
        if (!(atom.prob >= 0.0) || !std::isfinite(atom.prob))
            throw std::invalid_argument("VirtualGainDistribution: probabilities must be finite and >= 0");
        total += atom.prob;
    }
    if (std::fabs(total - 1.0) > kProbSumTol)
        throw std::invalid_argument("VirtualGainDistribution: probabilities must sum to 1");

    // merge equal gains, prune negligible masses, renormalize
    std::map<double, double> merged;
    for (const auto& atom : atoms) merged[atom.gain_sq] += atom.prob;
    double kept = 0.0;
    for (const auto& [gain, prob] : merged) {
        if (prob < kPruneMass) continue;
        atoms_.push_back({gain, prob});
        kept += prob;
    }
    if (atoms_.empty() || kept <= 0.0)
        throw std::invalid_argument("VirtualGainDistribution: all mass pruned");
    for (auto& atom : atoms_) atom.prob /= kept;
}

double VirtualGainDistribution::zero_mass() const {
    return atoms_.front().gain_sq == 0.0 ? atoms_.front().prob : 0.0;
}

bool VirtualGainDistribution::is_deterministic() const { return atoms_.size() == 1; }

double VirtualGainDistribution::mean_gain() const {
    return expect([](double g) { return g; });
}

double VirtualGainDistribution::variance_gain() const {
    const double mean = mean_gain();
    return expect([mean](double g) { return (g - mean) * (g - mean); });
}

VirtualGainDistribution npc_distribution(const ActivityModel& model) {
    const std::vector<double> pmf = binomial_pmf(model.K, model.q);
    std::vector<VirtualGainDistribution::Atom> atoms;
    atoms.reserve(pmf.size());
    for (int L = 0; L <= model.K; ++L)
        atoms.push_back({L * model.P / model.K, pmf[static_cast<std::size_t>(L)]});
    return VirtualGainDistribution(std::move(atoms), SchemeTag::NPC);
}

VirtualGainDistribution apc_distribution(const ActivityModel& model) {
    const double q_cell = std::pow(model.q, model.K);  // whole cell silent
    std::vector<VirtualGainDistribution::Atom> atoms;
    if (q_cell > 0.0) atoms.push_back({0.0, q_cell});
    atoms.push_back({model.P, 1.0 - q_cell});
    return VirtualGainDistribution(std::move(atoms), SchemeTag::APC);
}

VirtualGainDistribution cpc_distribution(const ActivityModel& model) {
    const std::vector<double> pmf = binomial_pmf(model.K, model.q);
    std::vector<VirtualGainDistribution::Atom> atoms;
    atoms.reserve(pmf.size());
    atoms.push_back({0.0, pmf[0]});
    for (int L = 1; L <= model.K; ++L)
        atoms.push_back({(model.K - L + 1.0) * model.P, pmf[static_cast<std::size_t>(L)]});
    return VirtualGainDistribution(std::move(atoms), SchemeTag::CPC);
}

double mean_gain(const VirtualGainDistribution& dist) { return dist.mean_gain(); }

}  // namespace cellrate
