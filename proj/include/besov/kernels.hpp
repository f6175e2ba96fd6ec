#pragma once

#include "besov/grid.hpp"
#include "besov/params.hpp"
#include "besov/quark.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace besov::kernels {

// A grid-aligned shift, in grid steps per axis.
using Shift = std::vector<std::int64_t>;

// max over shifts of the Riemann-sum L^p norm (cell weight 2^{-JN}) of Delta^M_h f over
// the nodes x with x, x+h, ..., x+Mh all in the box. nullopt if no shift has a
// nonempty domain.
//
// serial:: is the dense reference. omp:: runs shifts in parallel and, in one
// dimension, visits only nodes whose stencil meets the support of f; it adds the same
// nonzero terms in the same order, so both return identical values.
namespace serial {
std::optional<double> shell_sup(const GridFunction& f, std::span<const Shift> shifts, int M, double p);
GridFunction synthesize(const QuarkCoeffs& coeffs, const BumpFn& bump, const BesovParams& params, const Box& box,
                        int level);
} // namespace serial

namespace omp {
std::optional<double> shell_sup(const GridFunction& f, std::span<const Shift> shifts, int M, double p);
GridFunction synthesize(const QuarkCoeffs& coeffs, const BumpFn& bump, const BesovParams& params, const Box& box,
                        int level);
} // namespace omp

std::vector<double> binomial_weights(int M);

} // namespace besov::kernels
