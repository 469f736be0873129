#pragma once

#include <string>
#include <vector>

namespace cellrate {

/// Per-cell user population: K users, each silent with probability q per
/// slot, under a total cell power budget P (linear scale).
struct ActivityModel {
    int K;
    double q;
    double P;

    ActivityModel(int K_, double q_, double P_);
};

enum class SchemeTag { NPC, APC, CPC, CUSTOM };

std::string to_string(SchemeTag tag);

/// Finite discrete law of the squared virtual fading gain: the cell's K users
/// collapse into one virtual user whose squared amplitude is
/// sum_k e_k * p_k (activity indicator times transmit power).
class VirtualGainDistribution {
  public:
    struct Atom {
        double gain_sq;
        double prob;
    };

    // Atoms are merged by gain, masses below 1e-15 dropped, and the result
    // renormalized; probabilities must sum to 1 within 1e-12 beforehand.
    VirtualGainDistribution(std::vector<Atom> atoms, SchemeTag tag = SchemeTag::CUSTOM);

    const std::vector<Atom>& atoms() const { return atoms_; }
    SchemeTag scheme_tag() const { return tag_; }

    std::size_t size() const { return atoms_.size(); }

    // Mass at gain zero (an entirely silent cell).
    double zero_mass() const;

    // True when exactly one atom carries all mass.
    bool is_deterministic() const;

    double mean_gain() const;
    double variance_gain() const;

    // sum_i prob_i * f(gain_sq_i)
    template <typename F>
    double expect(F&& f) const {
        double sum = 0.0;
        for (const auto& atom : atoms_) sum += atom.prob * f(atom.gain_sq);
        return sum;
    }

  private:
    std::vector<Atom> atoms_;
    SchemeTag tag_;
};

/// No power control: every active user transmits at P/K, so the virtual gain
/// is L*P/K with L ~ Binomial(K, 1-q).
VirtualGainDistribution npc_distribution(const ActivityModel& model);

/// Adaptive power control: the L active users split P evenly, so the virtual
/// gain is P whenever the cell is non-silent: atoms {(0, q^K), (P, 1-q^K)}.
VirtualGainDistribution apc_distribution(const ActivityModel& model);

/// Cognitive power control: silent users coherently relay the active users'
/// messages; the virtual power is (K-L+1)*P for L >= 1 active users, 0 for a
/// silent cell, with L ~ Binomial(K, 1-q).
VirtualGainDistribution cpc_distribution(const ActivityModel& model);

/// Convenience: mean of the squared virtual gain (the effective average
/// power). Equals P(1-q), P(1-q^K) and P(1+Kq-(K+1)q^K) for NPC, APC and CPC.
double mean_gain(const VirtualGainDistribution& dist);

}  // namespace cellrate
