#ifndef ENVRISK_SCENARIO_HPP
#define ENVRISK_SCENARIO_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "envrisk/distribution.hpp"

namespace envrisk {

// Weighted scenario rows: loss x and environment state z per row, optional
// second loss column y. Column vectors share the row index.
struct ScenarioTable {
    std::vector<double> weight;
    std::vector<double> x;
    std::vector<double> z;
    std::vector<double> y; // empty unless has_y
    bool has_y = false;

    std::size_t rows() const { return weight.size(); }
};

// Validates finiteness, non-negative weights, positive total weight.
void validate(const ScenarioTable& t);

// How scenario rows are grouped into environment states.
struct Binning {
    enum class Mode { distinct_values, equiprobable };

    Mode mode = Mode::distinct_values;
    int k = 1;

    static Binning distinct() { return Binning{}; }
    static Binning equiprobable(int k);
};

// Environment model: states sorted strictly increasing, state_probs a law on
// exactly those states, conditionals[i] the loss law given state i. Mixing
// the conditionals by state_probs reproduces the marginal loss law.
struct ConditionalModel {
    std::vector<double> states;
    DiscreteDistribution state_probs;
    std::vector<DiscreteDistribution> conditionals;

    std::size_t n_states() const { return states.size(); }
};

// Groups rows by state per the binning. distinct_values keys on z merged at
// 1e-12 relative tolerance; equiprobable cuts the sorted distinct states into
// k bins of near-equal weight (infeasible when k exceeds the distinct count)
// and labels each bin with its weighted mean state.
ConditionalModel build_conditional_model(const ScenarioTable& t, const Binning& b);

// Same grouping, different loss column. Lets callers evaluate several losses
// over one shared scenario set.
ConditionalModel conditional_model_over(const ScenarioTable& t, const Binning& b,
                                        std::span<const double> loss);

// True iff (a_i - a_j)(b_i - b_j) >= 0 for all pairs, checked via one shared
// sort permutation rather than the quadratic scan.
bool check_comonotone(std::span<const double> a, std::span<const double> b);

// CSV with header "weight,x,z" or "weight,x,z,y". Parse failures cite the
// 1-based row number.
ScenarioTable read_scenario_csv(std::istream& in);
ScenarioTable read_scenario_csv_file(const std::string& path);

} // namespace envrisk

#endif
