#pragma once

#include <string>

#include "twocat/homgroupoid.hpp"
#include "twocat/interval.hpp"
#include "twocat/rng.hpp"

// Random well-formed instances of the core structures, shared by the CLI
// generators, the selftest battery and the acceptance suite.  Everything is
// driven by the caller's Rng so runs are reproducible from the seed alone.

namespace twocat::gen {

exact::Scalar random_scalar(const exact::FieldDesc& f, Rng& rng);
alg::Unit random_unit(const alg::AlgebraRef& a, Rng& rng);

// sigma_b . phi . sigma_a^{-1}: the hom admitting (a, b) as a 2-cell from phi.
alg::AlgHomRef shift_hom(const alg::AlgHomRef& phi, const alg::Unit& a, const alg::Unit& b,
                         const std::string& name);

// Conjugation x -> u^-1 x u read as a hom between two (equal-sized) full
// matrix algebras held by distinct handles.
alg::AlgHomRef conjugation_hom(const std::string& name, const alg::AlgebraRef& src,
                               const alg::AlgebraRef& dst, const alg::Unit& u);

// Five-point interior diffeo bending the midpoint, collar length/8.
ivl::InteriorDiffeo random_interior(const ivl::Interval& I, Rng& rng);

// Dense matrix with small Gaussian-integer entries.
exact::Matrix random_gauss_matrix(std::size_t n, Rng& rng);
// Hermitian positive-definite trace-one matrix over Q(i).
exact::Matrix random_state(std::size_t n, Rng& rng);

}  // namespace twocat::gen
