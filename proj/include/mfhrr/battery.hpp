#ifndef MFHRR_BATTERY_HPP
#define MFHRR_BATTERY_HPP

#include <vector>

#include "mfhrr/problem.hpp"

namespace mfhrr {

// Built-in verification suite: A_k chains, x*y, Fermat cubics, quadric
// (Knoerrer) chains, D4, shift/sum/contractible variants, plus Cardy cases
// with non-identity closed endomorphisms. Every case is quasi-homogeneous
// with an isolated critical point at the origin.
std::vector<ProblemFile> builtin_battery();

}  // namespace mfhrr

#endif
