#pragma once

// Exact-arithmetic engine for truncated derivation series on exterior
// algebras: characteristic coefficients without determinants, graded
// annihilation checks, and matrix exponentials over the rationals.

#include "wedgehs/errors.hpp"
#include "wedgehs/rational.hpp"
#include "wedgehs/matrix.hpp"
#include "wedgehs/exterior.hpp"
#include "wedgehs/endoseries.hpp"
#include "wedgehs/cayley.hpp"
#include "wedgehs/expode.hpp"
