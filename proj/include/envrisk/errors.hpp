#ifndef ENVRISK_ERRORS_HPP
#define ENVRISK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace envrisk {

// Error kinds surfaced by the library. Each throw site attaches a message
// with enough context to locate the offending input (row index, state value,
// level, ...). CLI layers map these to process exit codes.
enum class errc {
    empty_input,
    negative_weight,
    zero_total_weight,
    non_finite_value,
    binning_infeasible,
    length_mismatch,
    domain_error,
    too_large,
    invalid_probability,
    index_out_of_range,
    grid_not_attainable,
    level_not_attainable,
    non_concave_spec,
    non_concave,
    not_dominated,
    state_not_in_support,
    parse_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::empty_input: return "EmptyInput";
        case errc::negative_weight: return "NegativeWeight";
        case errc::zero_total_weight: return "ZeroTotalWeight";
        case errc::non_finite_value: return "NonFiniteValue";
        case errc::binning_infeasible: return "BinningInfeasible";
        case errc::length_mismatch: return "LengthMismatch";
        case errc::domain_error: return "DomainError";
        case errc::too_large: return "TooLarge";
        case errc::invalid_probability: return "InvalidProbability";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::grid_not_attainable: return "GridNotAttainable";
        case errc::level_not_attainable: return "LevelNotAttainable";
        case errc::non_concave_spec: return "NonConcaveSpec";
        case errc::non_concave: return "NonConcave";
        case errc::not_dominated: return "NotDominated";
        case errc::state_not_in_support: return "StateNotInSupport";
        case errc::parse_error: return "ParseError";
    }
    return "Error";
}

} // namespace envrisk

#endif
