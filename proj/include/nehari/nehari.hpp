#ifndef NEHARI_NEHARI_HPP
#define NEHARI_NEHARI_HPP

// Everything: trigonometric polynomials, Blaschke products, Hankel
// matrices, grid minimax, BMO norms, Pick problems, model spaces and
// Carleson constants, plus the symbol language, I/O and the acceptance suite.

#include "acceptance.hpp"
#include "blaschke.hpp"
#include "bmo.hpp"
#include "carleson.hpp"
#include "errors.hpp"
#include "fourier.hpp"
#include "hankel.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "minimax.hpp"
#include "model.hpp"
#include "optimize.hpp"
#include "pick.hpp"
#include "random.hpp"
#include "separable.hpp"
#include "symbol_parser.hpp"

#endif
