#include "envrisk/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <string>

#include "envrisk/errors.hpp"

namespace envrisk {

void validate(const ScenarioTable& t) {
    if (t.rows() == 0) fail(errc::empty_input, "scenario table has no rows");
    if (t.x.size() != t.rows() || t.z.size() != t.rows() || (t.has_y && t.y.size() != t.rows()))
        fail(errc::length_mismatch, "column lengths differ");
    double total = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        const bool finite = std::isfinite(t.weight[i]) && std::isfinite(t.x[i]) &&
                            std::isfinite(t.z[i]) && (!t.has_y || std::isfinite(t.y[i]));
        if (!finite) fail(errc::non_finite_value, "row " + std::to_string(i + 1));
        if (t.weight[i] < 0.0)
            fail(errc::negative_weight, "row " + std::to_string(i + 1) + " has weight " +
                                            std::to_string(t.weight[i]));
        total += t.weight[i];
    }
    if (total <= 0.0) fail(errc::zero_total_weight, "weights sum to " + std::to_string(total));
}

Binning Binning::equiprobable(int k) {
    if (k < 1) fail(errc::domain_error, "bin count " + std::to_string(k) + " must be >= 1");
    Binning b;
    b.mode = Mode::equiprobable;
    b.k = k;
    return b;
}

namespace {

struct StateGroup {
    double z_anchor;
    double weight;
    std::vector<std::size_t> rows;
};

// Rows sorted by z and merged at 1e-12 relative tolerance, anchored at the
// first value of each run.
std::vector<StateGroup> group_by_state(const ScenarioTable& t) {
    std::vector<std::size_t> order(t.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return t.z[a] < t.z[b]; });
    std::vector<StateGroup> groups;
    for (std::size_t r : order) {
        const double z = t.z[r];
        if (groups.empty() ||
            z - groups.back().z_anchor > 1e-12 * std::max(1.0, std::abs(z))) {
            groups.push_back(StateGroup{z, 0.0, {}});
        }
        groups.back().weight += t.weight[r];
        groups.back().rows.push_back(r);
    }
    return groups;
}

} // namespace

ConditionalModel conditional_model_over(const ScenarioTable& t, const Binning& b,
                                        std::span<const double> loss) {
    validate(t);
    if (loss.size() != t.rows())
        fail(errc::length_mismatch, "loss column has " + std::to_string(loss.size()) +
                                        " entries for " + std::to_string(t.rows()) + " rows");

    const std::vector<StateGroup> groups = group_by_state(t);
    std::vector<std::vector<std::size_t>> bins;
    if (b.mode == Binning::Mode::distinct_values) {
        bins.reserve(groups.size());
        for (std::size_t gi = 0; gi < groups.size(); ++gi) bins.push_back({gi});
    } else {
        const std::size_t k = static_cast<std::size_t>(b.k);
        if (k > groups.size())
            fail(errc::binning_infeasible, std::to_string(b.k) + " bins for " +
                                               std::to_string(groups.size()) +
                                               " distinct states");
        double total = 0.0;
        for (const auto& g : groups) total += g.weight;
        double cum = 0.0;
        std::size_t g = 0;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<std::size_t> bin;
            const double target = total * static_cast<double>(i + 1) / static_cast<double>(k);
            while (g < groups.size()) {
                if (!bin.empty()) {
                    // Keep one group available for each bin still to fill.
                    if (groups.size() - g <= k - 1 - i) break;
                    if (cum >= target - 1e-9 * total) break;
                }
                cum += groups[g].weight;
                bin.push_back(g++);
            }
            bins.push_back(std::move(bin));
        }
    }

    ConditionalModel m;
    std::vector<double> state_values, state_weights;
    for (const auto& bin : bins) {
        double w_sum = 0.0, zw_sum = 0.0;
        std::vector<double> bx, bw;
        for (std::size_t gi : bin) {
            for (std::size_t r : groups[gi].rows) {
                bx.push_back(loss[r]);
                bw.push_back(t.weight[r]);
                zw_sum += t.weight[r] * t.z[r];
            }
            w_sum += groups[gi].weight;
        }
        state_values.push_back(b.mode == Binning::Mode::distinct_values
                                   ? groups[bin.front()].z_anchor
                                   : zw_sum / w_sum);
        state_weights.push_back(w_sum);
        m.conditionals.push_back(build_distribution(std::move(bx), std::move(bw)));
    }
    m.state_probs = build_distribution(state_values, state_weights);
    if (m.state_probs.size() != bins.size())
        fail(errc::binning_infeasible, "bin labels collide"); // equiprobable means too close
    m.states = m.state_probs.values;
    return m;
}

ConditionalModel build_conditional_model(const ScenarioTable& t, const Binning& b) {
    return conditional_model_over(t, b, t.x);
}

bool check_comonotone(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) fail(errc::length_mismatch, "vectors differ in length");
    std::vector<std::size_t> order(a.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (a[i] != a[j]) return a[i] < a[j];
        return b[i] < b[j];
    });
    // Lexicographic order makes a non-decreasing; the pair is comonotone iff
    // b is non-decreasing along the same permutation.
    for (std::size_t k = 1; k < order.size(); ++k)
        if (b[order[k]] < b[order[k - 1]]) return false;
    return true;
}

namespace {

double parse_field(std::string field, std::size_t row, const std::string& name) {
    const auto l = field.find_first_not_of(" \t\r");
    const auto r = field.find_last_not_of(" \t\r");
    if (l == std::string::npos)
        fail(errc::parse_error, "row " + std::to_string(row) + ": empty " + name + " field");
    field = field.substr(l, r - l + 1);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        fail(errc::parse_error,
             "row " + std::to_string(row) + ": cannot parse " + name + " value '" + field + "'");
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string strip_line(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

} // namespace

ScenarioTable read_scenario_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail(errc::empty_input, "missing header line");
    std::string header = strip_line(line);
    header.erase(std::remove_if(header.begin(), header.end(),
                                [](unsigned char c) { return std::isspace(c); }),
                 header.end());
    ScenarioTable t;
    if (header == "weight,x,z") t.has_y = false;
    else if (header == "weight,x,z,y") t.has_y = true;
    else fail(errc::parse_error, "header must be 'weight,x,z' or 'weight,x,z,y', got '" + header + "'");

    const std::size_t want = t.has_y ? 4 : 3;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        line = strip_line(line);
        if (line.empty()) continue;
        ++row;
        const auto fields = split_csv_line(line);
        if (fields.size() != want)
            fail(errc::parse_error, "row " + std::to_string(row) + ": expected " +
                                        std::to_string(want) + " fields, got " +
                                        std::to_string(fields.size()));
        t.weight.push_back(parse_field(fields[0], row, "weight"));
        t.x.push_back(parse_field(fields[1], row, "x"));
        t.z.push_back(parse_field(fields[2], row, "z"));
        if (t.has_y) t.y.push_back(parse_field(fields[3], row, "y"));
    }
    validate(t);
    return t;
}

ScenarioTable read_scenario_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
    return read_scenario_csv(in);
}

} // namespace envrisk
