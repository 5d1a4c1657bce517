#pragma once

#include "radpoly/errors.hpp"
#include "radpoly/rational.hpp"
#include "radpoly/multi_index.hpp"
#include "radpoly/polynomial.hpp"
#include "radpoly/linalg.hpp"
#include "radpoly/functional.hpp"
#include "radpoly/graded_basis.hpp"
#include "radpoly/interpolants.hpp"
