#include "cptx/cli/config.hpp"

#include "cptx/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace cptx::cli {
namespace {

namespace pt = boost::property_tree;

double parse_double(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    require(ec == std::errc() && ptr == end, "config: '" + key + "' is not a number: " + text);
    return value;
}

int parse_int(const std::string& key, const std::string& text) {
    int value = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    require(ec == std::errc() && ptr == end, "config: '" + key + "' is not an integer: " + text);
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "on" || text == "true" || text == "1" || text == "yes") return true;
    if (text == "off" || text == "false" || text == "0" || text == "no") return false;
    throw InvalidArgument("config: '" + key + "' must be on/off: " + text);
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) continue;
        out.push_back(parse_double(key, item.substr(first, last - first + 1)));
    }
    return out;
}

std::string fmt(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

SolveMode parse_mode(const std::string& text) {
    if (text == "continuous") return SolveMode::Continuous;
    if (text == "binomial") return SolveMode::Binomial;
    if (text == "zero-initial") return SolveMode::ZeroInitial;
    throw InvalidArgument("config: unknown solve mode: " + text);
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

Setter number(double RunConfig::*field, std::string key) {
    return [field, key](RunConfig& c, const std::string& v) { c.*field = parse_double(key, v); };
}

Setter text(std::string RunConfig::*field) {
    return [field](RunConfig& c, const std::string& v) { c.*field = v; };
}

const std::map<std::string, std::map<std::string, Setter>>& setters() {
    static const std::map<std::string, std::map<std::string, Setter>> table = {
        {"market",
         {{"r", number(&RunConfig::r, "r")},
          {"lambda", number(&RunConfig::lambda, "lambda")},
          {"law", text(&RunConfig::law)},
          {"mu", number(&RunConfig::mu, "mu")},
          {"sigma", number(&RunConfig::sigma, "sigma")},
          {"nu", number(&RunConfig::nu, "nu")},
          {"loc", number(&RunConfig::loc, "loc")},
          {"scale", number(&RunConfig::scale, "scale")},
          {"lo", number(&RunConfig::lo, "lo")},
          {"hi", number(&RunConfig::hi, "hi")},
          {"u", number(&RunConfig::u, "u")},
          {"d", number(&RunConfig::d, "d")},
          {"p", number(&RunConfig::p, "p")},
          {"drift", number(&RunConfig::drift, "drift")},
          {"volatility", number(&RunConfig::volatility, "volatility")},
          {"horizon", number(&RunConfig::horizon, "horizon")},
          {"gross", [](RunConfig& c, const std::string& v) { c.gross = parse_list("gross", v); }}}},
        {"preference",
         {{"utility", text(&RunConfig::utility)},
          {"alpha", number(&RunConfig::alpha, "alpha")},
          {"beta", number(&RunConfig::beta, "beta")},
          {"k", number(&RunConfig::k, "k")},
          {"eta",
           [](RunConfig& c, const std::string& v) {
               c.eta_plus = c.eta_minus = parse_double("eta", v);
           }},
          {"eta_plus", number(&RunConfig::eta_plus, "eta_plus")},
          {"eta_minus", number(&RunConfig::eta_minus, "eta_minus")},
          {"zeta", number(&RunConfig::zeta, "zeta")},
          {"weighting", text(&RunConfig::weighting)},
          {"gamma", number(&RunConfig::gamma, "gamma")},
          {"delta", number(&RunConfig::delta, "delta")},
          {"delta_plus", number(&RunConfig::delta_plus, "delta_plus")},
          {"delta_minus", number(&RunConfig::delta_minus, "delta_minus")}}},
        {"portfolio", {{"x0", number(&RunConfig::x0, "x0")}, {"y0", number(&RunConfig::y0, "y0")}}},
        {"solve",
         {{"mode", [](RunConfig& c, const std::string& v) { c.mode = parse_mode(v); }},
          {"oracle", [](RunConfig& c, const std::string& v) { c.oracle = parse_bool("oracle", v); }},
          {"grid_points",
           [](RunConfig& c, const std::string& v) { c.grid_points = parse_int("grid_points", v); }},
          {"refinement_rounds",
           [](RunConfig& c, const std::string& v) {
               c.refinement_rounds = parse_int("refinement_rounds", v);
           }},
          {"grid_lo", [](RunConfig& c, const std::string& v) { c.grid_lo = parse_double("grid_lo", v); }},
          {"grid_hi", [](RunConfig& c, const std::string& v) { c.grid_hi = parse_double("grid_hi", v); }}}},
        {"sweep", {{"axis", [](RunConfig& c, const std::string& v) { c.sweep = parse_sweep_axis(v); }}}},
        {"output", {{"out", text(&RunConfig::out)}, {"format", text(&RunConfig::format)}}},
    };
    return table;
}

}  // namespace

std::string to_string(SolveMode mode) {
    switch (mode) {
        case SolveMode::Continuous: return "continuous";
        case SolveMode::Binomial: return "binomial";
        case SolveMode::ZeroInitial: return "zero-initial";
    }
    return "unknown";
}

std::vector<double> SweepAxis::values() const {
    std::vector<double> out;
    if (count == 1) return {start};
    for (int i = 0; i < count; ++i) {
        out.push_back(i == count - 1 ? stop : start + (stop - start) * i / (count - 1));
    }
    return out;
}

SweepAxis parse_sweep_axis(const std::string& text) {
    const auto eq = text.find('=');
    require(eq != std::string::npos, "sweep: expected name=start:stop:count, got " + text);
    SweepAxis axis;
    axis.name = text.substr(0, eq);
    const std::string rest = text.substr(eq + 1);
    const auto c1 = rest.find(':');
    const auto c2 = rest.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    require(c1 != std::string::npos && c2 != std::string::npos,
            "sweep: expected name=start:stop:count, got " + text);
    axis.start = parse_double("sweep start", rest.substr(0, c1));
    axis.stop = parse_double("sweep stop", rest.substr(c1 + 1, c2 - c1 - 1));
    axis.count = parse_int("sweep count", rest.substr(c2 + 1));
    require(axis.count >= 1, "sweep: count must be >= 1");
    return axis;
}

RunConfig parse_config(const std::string& content) {
    pt::ptree tree;
    std::istringstream in(content);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
    RunConfig cfg;
    const auto& table = setters();
    for (const auto& [section, body] : tree) {
        const auto s = table.find(section);
        require(s != table.end(), "config: unknown section [" + section + "]");
        require(body.data().empty(), "config: top-level key '" + section + "' outside a section");
        for (const auto& [key, node] : body) {
            const auto k = s->second.find(key);
            require(k != s->second.end(), "config: unknown key '" + key + "' in [" + section + "]");
            k->second(cfg, node.data());
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    require(static_cast<bool>(f), "config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize(const RunConfig& c) {
    std::ostringstream o;
    o << "[market]\n"
      << "r = " << fmt(c.r) << "\nlambda = " << fmt(c.lambda) << "\nlaw = " << c.law << "\n"
      << "mu = " << fmt(c.mu) << "\nsigma = " << fmt(c.sigma) << "\nnu = " << fmt(c.nu) << "\n"
      << "loc = " << fmt(c.loc) << "\nscale = " << fmt(c.scale) << "\nlo = " << fmt(c.lo) << "\n"
      << "hi = " << fmt(c.hi) << "\nu = " << fmt(c.u) << "\nd = " << fmt(c.d) << "\n"
      << "p = " << fmt(c.p) << "\ndrift = " << fmt(c.drift) << "\nvolatility = "
      << fmt(c.volatility) << "\nhorizon = " << fmt(c.horizon) << "\n";
    if (!c.gross.empty()) {
        o << "gross = ";
        for (std::size_t i = 0; i < c.gross.size(); ++i) o << (i ? ", " : "") << fmt(c.gross[i]);
        o << "\n";
    }
    o << "\n[preference]\n"
      << "utility = " << c.utility << "\nalpha = " << fmt(c.alpha) << "\nbeta = " << fmt(c.beta)
      << "\nk = " << fmt(c.k) << "\neta_plus = " << fmt(c.eta_plus) << "\neta_minus = "
      << fmt(c.eta_minus) << "\nzeta = " << fmt(c.zeta) << "\nweighting = " << c.weighting
      << "\ngamma = " << fmt(c.gamma) << "\ndelta = " << fmt(c.delta) << "\ndelta_plus = "
      << fmt(c.delta_plus) << "\ndelta_minus = " << fmt(c.delta_minus) << "\n";
    o << "\n[portfolio]\nx0 = " << fmt(c.x0) << "\ny0 = " << fmt(c.y0) << "\n";
    o << "\n[solve]\nmode = " << to_string(c.mode) << "\noracle = " << (c.oracle ? "on" : "off")
      << "\ngrid_points = " << c.grid_points << "\nrefinement_rounds = " << c.refinement_rounds
      << "\n";
    if (c.grid_lo) o << "grid_lo = " << fmt(*c.grid_lo) << "\n";
    if (c.grid_hi) o << "grid_hi = " << fmt(*c.grid_hi) << "\n";
    if (c.sweep) {
        o << "\n[sweep]\naxis = " << c.sweep->name << "=" << fmt(c.sweep->start) << ":"
          << fmt(c.sweep->stop) << ":" << c.sweep->count << "\n";
    }
    o << "\n[output]\n";
    if (!c.out.empty()) o << "out = " << c.out << "\n";
    o << "format = " << c.format << "\n";
    return o.str();
}

void set_parameter(RunConfig& cfg, const std::string& name, double value) {
    if (name == "lambda") cfg.lambda = value;
    else if (name == "alpha") cfg.alpha = value;
    else if (name == "beta") cfg.beta = value;
    else if (name == "eta") cfg.eta_plus = cfg.eta_minus = value;
    else if (name == "zeta") cfg.zeta = value;
    else throw InvalidArgument("sweep: unsupported axis '" + name +
                               "' (use lambda, alpha, beta, eta or zeta)");
}

MarketModel build_market(const RunConfig& c) {
    auto law = [&]() -> ReturnLaw {
        if (c.law == "lognormal") return ReturnLaw::lognormal(c.mu, c.sigma);
        if (c.law == "normal") return ReturnLaw::normal(c.mu, c.sigma);
        if (c.law == "student_t") return ReturnLaw::student_t(c.nu, c.loc, c.scale);
        if (c.law == "uniform") return ReturnLaw::uniform(c.lo, c.hi);
        if (c.law == "binomial") return ReturnLaw::binomial(c.u, c.d, c.p);
        if (c.law == "empirical") return ReturnLaw::empirical(c.gross);
        if (c.law == "gbm") return ReturnLaw::gbm(c.drift, c.volatility, c.horizon);
        throw InvalidArgument("config: unknown law '" + c.law + "'");
    }();
    return MarketModel::make(c.r, c.lambda, std::move(law), c.horizon);
}

CptPreference build_preference(const RunConfig& c) {
    auto utility = [&] {
        if (c.utility == "power") return UtilityPair::power(c.alpha, c.beta, c.k);
        if (c.utility == "exponential") {
            return UtilityPair::exponential(c.eta_plus, c.eta_minus, c.zeta);
        }
        throw InvalidArgument("config: unknown utility '" + c.utility + "'");
    }();
    auto weighting = [&] {
        if (c.weighting == "tk") return WeightingPair::tversky_kahneman(c.gamma, c.delta);
        if (c.weighting == "prelec") {
            return WeightingPair::prelec(c.gamma, c.delta_plus, c.delta_minus);
        }
        if (c.weighting == "identity") return WeightingPair::identity();
        throw InvalidArgument("config: unknown weighting '" + c.weighting + "'");
    }();
    return {utility, weighting};
}

Portfolio build_portfolio(const RunConfig& c) { return {c.x0, c.y0}; }

GridSpec build_grid(const RunConfig& c, const GridSpec& fallback) {
    GridSpec g = fallback;
    g.n_points = c.grid_points;
    g.refinement_rounds = c.refinement_rounds;
    if (c.grid_lo) g.lo = *c.grid_lo;
    if (c.grid_hi) g.hi = *c.grid_hi;
    return g;
}

std::vector<std::string> validation_errors(const RunConfig& c) {
    std::vector<std::string> errors;
    auto attempt = [&](auto&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            errors.emplace_back(e.what());
        }
    };
    std::optional<MarketModel> market;
    attempt([&] { market = build_market(c); });
    attempt([&] { build_preference(c); });
    if (market) {
        const auto arb = check_no_arbitrage(*market);
        if (!arb.ok) errors.push_back("market admits arbitrage: " + arb.violation);
    }
    if (!std::isfinite(c.x0) || !std::isfinite(c.y0)) errors.emplace_back("portfolio: non-finite");
    switch (c.mode) {
        case SolveMode::Continuous:
            if (c.utility != "power") errors.emplace_back("continuous mode needs power utility");
            if (!(c.y0 > 0.0)) errors.emplace_back("continuous mode needs y0 > 0");
            break;
        case SolveMode::ZeroInitial:
            if (c.utility != "power") errors.emplace_back("zero-initial mode needs power utility");
            if (c.y0 != 0.0) errors.emplace_back("zero-initial mode needs y0 = 0");
            break;
        case SolveMode::Binomial:
            if (c.law != "binomial") errors.emplace_back("binomial mode needs law = binomial");
            if (c.utility != "exponential") {
                errors.emplace_back("binomial mode needs exponential utility");
            }
            if (c.eta_plus != c.eta_minus) {
                errors.emplace_back("binomial mode needs eta_plus == eta_minus");
            }
            if (c.y0 != 0.0) errors.emplace_back("binomial mode needs y0 = 0");
            break;
    }
    if (c.grid_points < 3) errors.emplace_back("solve: grid_points must be >= 3");
    if (c.refinement_rounds < 0) errors.emplace_back("solve: refinement_rounds must be >= 0");
    if (c.grid_lo && c.grid_hi && !(*c.grid_lo < *c.grid_hi)) {
        errors.emplace_back("solve: grid_lo < grid_hi required");
    }
    if (c.format != "csv" && c.format != "summary") {
        errors.emplace_back("output: format must be csv or summary");
    }
    if (c.sweep) {
        const auto& n = c.sweep->name;
        if (n != "lambda" && n != "alpha" && n != "beta" && n != "eta" && n != "zeta") {
            errors.push_back("sweep: unsupported axis '" + n + "'");
        }
        if (c.sweep->count < 1) errors.emplace_back("sweep: count must be >= 1");
    }
    return errors;
}

void validate(const RunConfig& cfg) {
    const auto errors = validation_errors(cfg);
    if (errors.empty()) return;
    std::string message = "invalid configuration:";
    for (const auto& e : errors) message += "\n  - " + e;
    throw InvalidArgument(message);
}

}  // namespace cptx::cli
