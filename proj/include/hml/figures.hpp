#pragma once

#include <string>
#include <vector>

#include "hml/series.hpp"

namespace hml {

/// The two shipped curve families of the alphaL-exponential:
///   Fig1: alpha in {0, 0.2, 0.4, 0.6, 0.8, 1}   (0 = classical exponential,
///         1 = 0th-order Bessel-Tricomi function)
///   Fig2: alpha in {0, -0.1, -0.2, -0.3}
/// both sampled on x in [0, x_max].
enum class FigureId { Fig1, Fig2 };

FigureId parse_figure_id(const std::string& name);  // "fig1" | "fig2"

const std::vector<double>& figure_alphas(FigureId id);

/// CSV with header `x,alpha,value`, rows alpha-major with x ascending,
/// every number printed with 17 significant digits, LF line endings.
/// Identical inputs produce byte-identical output.
std::string figure_csv(FigureId id, double x_max, int points,
                       const SeriesConfig& cfg = {});

}  // namespace hml
