#include "hml/figures.hpp"

#include <cstdio>

#include "hml/errors.hpp"
#include "hml/special_functions.hpp"

namespace hml {

FigureId parse_figure_id(const std::string& name) {
    if (name == "fig1") return FigureId::Fig1;
    if (name == "fig2") return FigureId::Fig2;
    throw UsageError("unknown figure '" + name + "'; expected fig1 or fig2");
}

const std::vector<double>& figure_alphas(FigureId id) {
    static const std::vector<double> fig1{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    static const std::vector<double> fig2{0.0, -0.1, -0.2, -0.3};
    return id == FigureId::Fig1 ? fig1 : fig2;
}

std::string figure_csv(FigureId id, double x_max, int points,
                       const SeriesConfig& cfg) {
    if (!(x_max > 0.0)) throw DomainError("figure data: requires x_max > 0");
    if (points < 2) throw DomainError("figure data: requires points >= 2");
    std::string out = "x,alpha,value\n";
    char buf[96];
    for (double alpha : figure_alphas(id)) {
        for (int j = 0; j < points; ++j) {
            const double x = x_max * static_cast<double>(j) /
                             static_cast<double>(points - 1);
            const double v = alpha_l_exponential(alpha, x, cfg).value;
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", x, alpha, v);
            out += buf;
        }
    }
    return out;
}

}  // namespace hml
