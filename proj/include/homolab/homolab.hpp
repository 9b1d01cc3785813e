#pragma once

#include "error.hpp"
#include "budget.hpp"
#include "field.hpp"
#include "monomial.hpp"
#include "polynomial.hpp"
#include "matrix.hpp"
#include "groebner.hpp"
#include "quotient_ring.hpp"
#include "module.hpp"
#include "complex.hpp"
#include "resolution.hpp"
#include "invariants.hpp"
#include "dualities.hpp"
#include "instance.hpp"
#include "instance_file.hpp"
#include "verify.hpp"
