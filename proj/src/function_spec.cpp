#include "hml/function_spec.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "hml/errors.hpp"
#include "hml/special_functions.hpp"

namespace hml {

void FunctionSpec::validate() const {
    switch (kind) {
        case FunctionKind::Power:
            if (!(beta > 0.0))
                throw DomainError("power: exponent must satisfy beta > 0");
            break;
        case FunctionKind::LogPower:
            if (!(base > 0.0))
                throw DomainError("logpow: base must satisfy a > 0");
            if (!(c > -1.0))
                throw DomainError("logpow: exponent must satisfy c > -1");
            break;
        case FunctionKind::Sin:
        case FunctionKind::Exp:
            break;
        case FunctionKind::AlphaExp:
            if (!(alpha > -1.0))
                throw DomainError("alexp: order must satisfy alpha > -1");
            break;
        case FunctionKind::ML:
            MLParams{alpha, nu, gamma}.validate();
            if (!(gamma > 0.0))
                throw DomainError("ml: requires gamma > 0");
            break;
    }
}

double FunctionSpec::evaluate(double x, const SeriesConfig& cfg) const {
    switch (kind) {
        case FunctionKind::Power:
            return std::pow(x, beta);
        case FunctionKind::LogPower: {
            if (!(x > base))
                throw DomainError("logpow: evaluation requires x > a");
            return std::pow(std::log(x / base), c);
        }
        case FunctionKind::Sin:
            return std::sin(x);
        case FunctionKind::Exp:
            return std::exp(rate * x);
        case FunctionKind::AlphaExp:
            return alpha_l_exponential(alpha, lambda * x, cfg).value;
        case FunctionKind::ML:
            return alpha_mittag_leffler({alpha, nu, gamma},
                                        lambda * std::pow(x, nu), cfg)
                .value;
    }
    return 0.0;
}

std::function<double(double)> FunctionSpec::as_function(SeriesConfig cfg) const {
    FunctionSpec self = *this;
    return [self, cfg](double x) { return self.evaluate(x, cfg); };
}

namespace {
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace

std::string FunctionSpec::describe() const {
    switch (kind) {
        case FunctionKind::Power:
            return "power:" + num(beta);
        case FunctionKind::LogPower:
            return "logpow:" + num(c) + "," + num(base);
        case FunctionKind::Sin:
            return "sin";
        case FunctionKind::Exp:
            return "exp:" + num(rate);
        case FunctionKind::AlphaExp:
            return "alexp:" + num(alpha) + "," + num(lambda);
        case FunctionKind::ML:
            return "ml:" + num(alpha) + "," + num(nu) + "," + num(gamma) + "," +
                   num(lambda);
    }
    return "";
}

FunctionSpec FunctionSpec::power(double beta) {
    FunctionSpec s;
    s.kind = FunctionKind::Power;
    s.beta = beta;
    s.validate();
    return s;
}

FunctionSpec FunctionSpec::log_power(double c, double base) {
    FunctionSpec s;
    s.kind = FunctionKind::LogPower;
    s.c = c;
    s.base = base;
    s.validate();
    return s;
}

FunctionSpec FunctionSpec::sin_spec() {
    FunctionSpec s;
    s.kind = FunctionKind::Sin;
    return s;
}

FunctionSpec FunctionSpec::exp_spec(double rate) {
    FunctionSpec s;
    s.kind = FunctionKind::Exp;
    s.rate = rate;
    return s;
}

FunctionSpec FunctionSpec::alpha_exp(double alpha, double lambda) {
    FunctionSpec s;
    s.kind = FunctionKind::AlphaExp;
    s.alpha = alpha;
    s.lambda = lambda;
    s.validate();
    return s;
}

FunctionSpec FunctionSpec::ml(double alpha, double nu, double gamma,
                              double lambda) {
    FunctionSpec s;
    s.kind = FunctionKind::ML;
    s.alpha = alpha;
    s.nu = nu;
    s.gamma = gamma;
    s.lambda = lambda;
    s.validate();
    return s;
}

namespace {

std::vector<double> parse_args(const std::string& text, const std::string& head,
                               std::size_t want_min, std::size_t want_max) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw UsageError("function spec '" + head + "': '" + tok +
                             "' is not a number");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos])))
            ++pos;
        if (pos != tok.size())
            throw UsageError("function spec '" + head + "': '" + tok +
                             "' is not a number");
        out.push_back(v);
    }
    if (out.size() < want_min || out.size() > want_max) {
        std::string expect = want_min == want_max
                                 ? std::to_string(want_min)
                                 : std::to_string(want_min) + ".." +
                                       std::to_string(want_max);
        throw UsageError("function spec '" + head + "': expected " + expect +
                         " comma-separated parameter(s), got " +
                         std::to_string(out.size()));
    }
    return out;
}

}  // namespace

FunctionSpec parse_function_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string rest =
        colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
        if (head == "power") {
            auto a = parse_args(rest, head, 1, 1);
            return FunctionSpec::power(a[0]);
        }
        if (head == "logpow") {
            auto a = parse_args(rest, head, 1, 2);
            return FunctionSpec::log_power(a[0], a.size() == 2 ? a[1] : 1.0);
        }
        if (head == "sin") {
            if (!rest.empty())
                throw UsageError("function spec 'sin' takes no parameters");
            return FunctionSpec::sin_spec();
        }
        if (head == "exp") {
            if (rest.empty() && colon == std::string::npos)
                return FunctionSpec::exp_spec();
            auto a = parse_args(rest, head, 1, 1);
            return FunctionSpec::exp_spec(a[0]);
        }
        if (head == "alexp") {
            auto a = parse_args(rest, head, 2, 2);
            return FunctionSpec::alpha_exp(a[0], a[1]);
        }
        if (head == "ml") {
            auto a = parse_args(rest, head, 4, 4);
            return FunctionSpec::ml(a[0], a[1], a[2], a[3]);
        }
    } catch (const DomainError& e) {
        throw UsageError(std::string("function spec '") + text +
                         "': " + e.what());
    }
    throw UsageError(
        "unknown function spec '" + text +
        "'; expected power:b | logpow:c[,a] | sin | exp[:rate] | "
        "alexp:alpha,lambda | ml:alpha,nu,gamma,lambda");
}

}  // namespace hml
