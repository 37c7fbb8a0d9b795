#ifndef MOMENT_FORGE_MOMENT_FORGE_HPP
#define MOMENT_FORGE_MOMENT_FORGE_HPP

#include "moment_forge/conditions.hpp"
#include "moment_forge/groebner.hpp"
#include "moment_forge/grid.hpp"
#include "moment_forge/moment.hpp"
#include "moment_forge/poly_text.hpp"
#include "moment_forge/polynomial.hpp"
#include "moment_forge/problem_file.hpp"
#include "moment_forge/realify.hpp"
#include "moment_forge/resultant.hpp"
#include "moment_forge/roots.hpp"
#include "moment_forge/solver.hpp"
#include "moment_forge/variety.hpp"

#endif  // MOMENT_FORGE_MOMENT_FORGE_HPP
