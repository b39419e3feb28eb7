#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cptx::cli {

inline constexpr const char* kCsvVersion = "cptx-sweep/1";

/// Shortest text that parses back to the same double; infinities as "inf"/"-inf".
std::string format_number(double x);
/// As format_number but writes +inf with an explicit sign.
std::string format_theta(double x);
double parse_number(const std::string& text);

struct SweepRow {
    double value = 0.0;
    std::optional<double> K1;
    std::optional<double> K2;
    /// theta1/theta2 for power utility, theta3/theta4 in the binomial market.
    std::optional<double> candidate_long;
    std::optional<double> candidate_short;
    std::optional<double> theta_star;
    std::string case_id;
    std::optional<double> J_star;
    bool boundary = false;
    std::string error;
};

/// Column names; the candidate columns depend on the market.
std::vector<std::string> sweep_header(bool binomial);

void write_sweep_csv(std::ostream& out, const std::string& axis, bool binomial,
                     const std::vector<SweepRow>& rows);

struct ParsedCsv {
    std::string comment;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

ParsedCsv read_csv(std::istream& in);

}  // namespace cptx::cli
