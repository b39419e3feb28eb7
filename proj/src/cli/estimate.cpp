#include "cptx/cli/estimate.hpp"

#include "cptx/error.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <string>

namespace cptx::cli {
namespace {

using namespace std::chrono;

sys_days parse_date(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    const char* s = text.data();
    const char* end = s + text.size();
    auto next = [&](auto& out, int width) {
        auto [ptr, ec] = std::from_chars(s, s + width, out);
        require(ec == std::errc() && ptr == s + width, "prices: bad date '" + text + "'");
        s = ptr;
    };
    require(text.size() == 10 && text[4] == '-' && text[7] == '-',
            "prices: date must be YYYY-MM-DD, got '" + text + "'");
    next(y, 4);
    ++s;
    next(m, 2);
    ++s;
    next(d, 2);
    require(s == end, "prices: bad date '" + text + "'");
    const year_month_day ymd{year{y}, month{m}, day{d}};
    require(ymd.ok(), "prices: invalid calendar date '" + text + "'");
    return sys_days{ymd};
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Monday of the ISO week containing the date.
sys_days week_start(sys_days date) {
    const weekday wd{date};
    return date - days{wd.iso_encoding() - 1};
}

}  // namespace

std::vector<PriceObservation> read_prices(std::istream& in) {
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "prices: empty input");
    require(trim(line) == "date,close", "prices: header must be 'date,close'");
    std::vector<PriceObservation> out;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        require(comma != std::string::npos, "prices: malformed line '" + line + "'");
        const std::string close_text = trim(line.substr(comma + 1));
        double close = 0.0;
        auto [ptr, ec] =
            std::from_chars(close_text.data(), close_text.data() + close_text.size(), close);
        require(ec == std::errc() && ptr == close_text.data() + close_text.size(),
                "prices: bad close '" + close_text + "'");
        out.push_back({parse_date(trim(line.substr(0, comma))), close});
    }
    return out;
}

std::vector<PriceObservation> weekly_last(const std::vector<PriceObservation>& daily) {
    std::vector<PriceObservation> out;
    for (const auto& obs : daily) {
        if (!out.empty() && week_start(out.back().date) == week_start(obs.date)) {
            out.back() = obs;
        } else {
            out.push_back(obs);
        }
    }
    return out;
}

LognormalEstimate estimate_lognormal(const std::vector<PriceObservation>& prices) {
    require(prices.size() >= 3, "estimate: at least 3 observations required");
    for (std::size_t i = 0; i < prices.size(); ++i) {
        require(prices[i].close > 0.0 && std::isfinite(prices[i].close),
                "estimate: closes must be positive");
        if (i > 0) {
            require(prices[i].date > prices[i - 1].date, "estimate: dates must be increasing");
        }
    }
    const std::size_t n = prices.size() - 1;
    double mean = 0.0;
    std::vector<double> returns(n);
    for (std::size_t i = 0; i < n; ++i) {
        returns[i] = std::log(prices[i + 1].close / prices[i].close);
        mean += returns[i];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : returns) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(n - 1)), static_cast<int>(n)};
}

double annualized_rate_to_period(double annual_rate, double periods_per_year) {
    require(annual_rate > -1.0, "rate: annual rate must be > -1");
    require(periods_per_year >= 1.0, "rate: periods per year must be >= 1");
    return std::expm1(std::log1p(annual_rate) / periods_per_year);
}

}  // namespace cptx::cli
