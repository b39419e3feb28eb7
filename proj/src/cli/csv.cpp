#include "cptx/cli/csv.hpp"

#include "cptx/error.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace cptx::cli {
namespace {

std::string cell(const std::optional<double>& x, bool theta = false) {
    if (!x) return "";
    return theta ? format_theta(*x) : format_number(*x);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string format_theta(double x) {
    if (std::isinf(x) && x > 0) return "+inf";
    return format_number(x);
}

double parse_number(const std::string& text) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (text == "inf" || text == "+inf") return inf;
    if (text == "-inf") return -inf;
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    double x = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, x);
    require(ec == std::errc() && ptr == end, "csv: not a number: '" + text + "'");
    return x;
}

std::vector<std::string> sweep_header(bool binomial) {
    return {"value",
            "K1",
            "K2",
            binomial ? "theta3" : "theta1",
            binomial ? "theta4" : "theta2",
            "theta_star",
            "case_id",
            "J_star",
            "boundary",
            "error"};
}

void write_sweep_csv(std::ostream& out, const std::string& axis, bool binomial,
                     const std::vector<SweepRow>& rows) {
    out << "# " << kCsvVersion << " axis=" << axis << "\n";
    const auto header = sweep_header(binomial);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& r : rows) {
        std::string error = r.error;
        for (char& ch : error) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        out << format_number(r.value) << ',' << cell(r.K1) << ',' << cell(r.K2) << ','
            << cell(r.candidate_long, true) << ',' << cell(r.candidate_short, true) << ','
            << cell(r.theta_star, true) << ',' << r.case_id << ',' << cell(r.J_star) << ','
            << (r.boundary ? 1 : 0) << ',' << error << "\n";
    }
}

ParsedCsv read_csv(std::istream& in) {
    ParsedCsv out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (out.comment.empty()) out.comment = line.substr(1);
            continue;
        }
        if (out.header.empty()) {
            out.header = split(line);
        } else {
            auto row = split(line);
            require(row.size() == out.header.size(), "csv: row width differs from header");
            out.rows.push_back(std::move(row));
        }
    }
    require(!out.header.empty(), "csv: missing header");
    return out;
}

}  // namespace cptx::cli
